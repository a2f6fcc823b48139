use std::process::{Command, Output};
use trinomial::dispatch::SolveReport;

fn trinomial(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trinomial")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn solve_table_row() {
    let o = trinomial(&["solve", "x^4+2*x*y+y^3=0"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("status: Complete"), "{s}");
    let s = stdout(&trinomial(&["solve", "x^4+2*x*y+y^3=0", "--backend", "none"]));
    assert!(s.contains("status: SearchedToBound(10000)"), "{s}");
    assert!(s.contains("(x, y) = (-1, 1)") && s.contains("(x, y) = (2, -2)"), "{s}");
}

#[test]
fn json_round_trips() {
    let o = trinomial(&["solve", "x^2+y^3=z^5", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "Complete");
    assert!(v["path"].as_array().unwrap().iter().any(|p| p == "direct-formula"));
    for key in ["input", "canonical", "finite", "families", "reduced", "citations", "elapsed_ms"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let report: SolveReport = serde_json::from_slice(&o.stdout).unwrap();
    let again: SolveReport = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(report, again);
    assert_eq!(serde_json::to_value(&report).unwrap(), v);
}

#[test]
fn elliptic_case_is_reduced_only() {
    let s = stdout(&trinomial(&["solve", "3*x^3+4*y^3+5*z^3=0"]));
    assert!(s.contains("status: ReducedOnly"), "{s}");
    assert!(s.contains("reduced: 3·w³ + 4·v³ + 5·u³ = 0"), "{s}");
}

#[test]
fn oracle_box() {
    let o = trinomial(&["oracle", "x^4+x*y+2*y^3=0", "-B", "50"]);
    assert_eq!(stdout(&o).lines().take(2).collect::<Vec<_>>(), vec!["(-1, -1)", "(0, 0)"]);
}

#[test]
fn reduce_prints_reduced_equation() {
    let s = stdout(&trinomial(&["reduce", "x+x^2*y-y*z^2=0"]));
    assert!(s.starts_with("1 + e·v_y²·v_z² − e·u_z² = 0"), "{s}");
}

#[test]
fn exit_codes() {
    assert_eq!(trinomial(&["solve", "x^^2"]).status.code(), Some(2));
    assert_eq!(trinomial(&["oracle", "x+y+z+t+s", "-B", "10000"]).status.code(), Some(3));
    assert_eq!(trinomial(&["verify", "y*z*t=x^2+1", "-B", "8"]).status.code(), Some(0));
}

#[test]
fn classify_degree_three() {
    let s = stdout(&trinomial(&["classify", "--degree", "3"]));
    assert!(s.contains("expected: total 96, with certificate 88, without 8"), "{s}");
    assert!(s.contains("refined: total 108, prop4 100"), "{s}");
    let s = stdout(&trinomial(&["classify", "a x^2 y + b y = c z^2"]));
    assert!(s.contains("z = [0, 1, 1]"), "{s}");
}

#[test]
fn repro_tables() {
    for t in ["2", "3", "4", "5"] {
        let o = trinomial(&["repro", t]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
    assert!(stdout(&trinomial(&["repro", "2"])).contains("27/27"));
}

#[test]
fn experiment_is_reproducible() {
    let a = stdout(&trinomial(&["experiment", "--n", "6", "--d", "1000", "--samples", "200", "--seed", "3"]));
    let b = stdout(&trinomial(&["experiment", "--n", "6", "--d", "1000", "--samples", "200", "--seed", "3", "--threads", "1"]));
    assert_eq!(a.split(',').next(), b.split(',').next());
}
