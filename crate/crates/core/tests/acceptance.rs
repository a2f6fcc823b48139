//! One line per acceptance criterion; exits nonzero when any fails.

mod common;

use common::*;
use std::time::{Duration, Instant};
use trinomial::basesolve::SolveOptions;
use trinomial::eqparse::parse_equation;
use trinomial::multivar::classify::degree3_report;
use trinomial::fixtures::{TABLE4, TABLE5};
use trinomial::repro::{shape_table, table1, table2, table3, table6, ReproOptions};
use trinomial::twovar::solve_two_var;

struct Outcome {
    ok: bool,
    detail: String,
    notes: Vec<String>,
}

fn from_check(c: Check, detail: &str) -> Outcome {
    match c {
        Ok(()) => Outcome { ok: true, detail: detail.to_string(), notes: vec![] },
        Err(e) => Outcome { ok: false, detail: e, notes: vec![] },
    }
}

fn within(limit: Duration, start: Instant, mut o: Outcome) -> Outcome {
    let t = start.elapsed();
    if t > limit {
        o.ok = false;
        o.detail = format!("{}; took {:.1?}, limit {:?}", o.detail, t, limit);
    }
    o
}

fn criterion1() -> Outcome {
    let r = table1(&SolveOptions::default());
    Outcome { ok: r.ok(), detail: format!("{} (general and gcd solvers, all Complete)", r.summary()), notes: r.lines }
}

fn criterion2() -> Outcome {
    let p = parse_equation("x^4 + x*y + 2*y^3 = 0").unwrap();
    let out = solve_two_var(&p, &SolveOptions::default());
    let mut pts: Vec<Vec<i64>> =
        out.set.finite.iter().map(|x| x.iter().map(|v| v.try_into().unwrap()).collect()).collect();
    pts.sort();
    let traces = [("v^5 + 2*u^5 = -1", "{(-1,0), (1,-1)}"), ("8*v^5 + u^5 = -1", "{(0,-1)}")];
    let traced = traces.iter().all(|(eq, sols)| out.set.trace.iter().any(|t| t.starts_with(&format!("{eq} -> {sols}"))));
    let ok = pts == vec![vec![-1, -1], vec![0, 0]] && out.set.families.is_empty() && traced;
    Outcome { ok, detail: format!("solutions {pts:?}, both base equations traced: {traced}"), notes: out.set.trace }
}

fn criterion3() -> Outcome {
    let r = table2(&SolveOptions::default(), 100);
    Outcome { ok: r.ok(), detail: format!("{} at B = 100, 8 parametric rows regenerated", r.summary()), notes: r.lines }
}

fn criterion4() -> Outcome {
    let mut eqs: Vec<Eligible> = ["x^2 + y^3 = z^5", "x^3 - y^2*z - z"].iter().filter_map(|e| eligible(e)).collect();
    if eqs.len() != 2 {
        return Outcome { ok: false, detail: "named equations lack the direct formula".into(), notes: vec![] };
    }
    eqs.extend(random_eligible(10, 11));
    let notes: Vec<String> = eqs.iter().map(|e| e.poly.to_string()).collect();
    for (i, e) in eqs.iter().enumerate() {
        if let Err(err) = direct_formula_check(e, 1000, 50, i as u64) {
            return Outcome { ok: false, detail: err, notes };
        }
    }
    Outcome { ok: true, detail: format!("{} equations, 1000 draws each, witnesses cover B = 50", eqs.len()), notes }
}

fn criterion5() -> Outcome {
    let eqs = [("x^3 - y^2*z - y", 20), ("y*z*t = x^2 + 1", 10), ("x^2*y = z^2 + 1", 20), ("x*y - z*t = 1", 10)];
    for (eq, b) in eqs {
        if let Err(e) = box_equivalent(eq, b) {
            return Outcome { ok: false, detail: e, notes: vec![] };
        }
    }
    Outcome { ok: true, detail: "4 equations box-equivalent to the oracle".into(), notes: vec![] }
}

fn criterion6() -> Outcome {
    let budget = 1_000_000;
    let reports = [table3(budget), shape_table(4, TABLE4, budget), shape_table(5, TABLE5, budget)];
    let census = degree3_report(budget);
    let mut notes: Vec<String> = reports.iter().flat_map(|r| r.lines.clone()).collect();
    notes.extend(census.lines());
    let ok = reports.iter().all(|r| r.ok()) && census.missing.is_empty();
    let summaries: Vec<String> = reports.iter().map(|r| r.summary()).collect();
    let detail = format!(
        "{}; census {} families ({} with certificate, {} without) vs 96/88/8, diff listed below",
        summaries.join(", "),
        census.refined.total,
        census.refined.prop4,
        census.refined.others.len()
    );
    Outcome { ok, detail, notes }
}

fn criterion7() -> Outcome {
    let r = table6(&ReproOptions { samples: 1000, seed: 7, ..ReproOptions::default() });
    let ok = r.ok();
    let mut notes = r.lines;
    if !ok {
        let wide = table6(&ReproOptions { samples: 20_000, seed: 7, tolerance: 0.0, ..ReproOptions::default() });
        notes.push("reference run at 20000 samples:".into());
        notes.extend(wide.lines.into_iter().skip(1).take(8));
    }
    Outcome { ok, detail: format!("{}/40 cells within ±0.03 at 1000 samples, seed 7", r.matched), notes }
}

fn criterion8() -> Outcome {
    let checks: Vec<(&str, Check)> = vec![
        ("valuations", valuation_triples(100_000)),
        ("two-term", two_term_exhaustive()),
        ("minimal solutions", hilbert_completeness(200)),
        ("divisibility sets", minimal_sets_exhaustive()),
        ("two-monomial", two_monomial_vs_oracle(50)),
        ("strict-case identity", strict_case_identity(2000)),
    ];
    let failed: Vec<String> = checks.iter().filter_map(|(n, c)| c.as_ref().err().map(|e| format!("{n}: {e}"))).collect();
    from_check(if failed.is_empty() { Ok(()) } else { Err(failed.join("; ")) }, "6 suites")
}

fn main() {
    let crits: [(u32, Duration, fn() -> Outcome); 8] = [
        (1, Duration::from_secs(300), criterion1),
        (2, Duration::from_secs(60), criterion2),
        (3, Duration::from_secs(120), criterion3),
        (4, Duration::from_secs(300), criterion4),
        (5, Duration::from_secs(300), criterion5),
        (6, Duration::from_secs(300), criterion6),
        (7, Duration::from_secs(600), criterion7),
        (8, Duration::from_secs(180), criterion8),
    ];
    let mut failed = 0;
    for (n, limit, f) in crits {
        let start = Instant::now();
        let o = within(limit, start, f());
        println!("criterion {n}: {} ({}) [{:.1?}]", if o.ok { "PASS" } else { "FAIL" }, o.detail, start.elapsed());
        if !o.ok || n == 6 || std::env::var_os("ACCEPTANCE_VERBOSE").is_some() {
            for l in &o.notes {
                println!("    {l}");
            }
        }
        failed += !o.ok as usize;
    }
    println!("{} of 8 criteria pass", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
