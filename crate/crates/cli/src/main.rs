use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::json;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;
use trinomial::backend::Backend;
use trinomial::basesolve::SolveOptions;
use trinomial::dispatch::{solve, SolveReport};
use trinomial::eqparse::{canonicalize, parse_equation, Poly};
use trinomial::multivar::classify::{classify_family, degree3_report, parse_family, shape_string, Classification};
use trinomial::multivar::{display_reduction, monte_carlo_prop4, reduce_to_independent};
use trinomial::oracle::{brute_force, compare};
use trinomial::repro::{repro, ReproOptions};

const OK: u8 = 0;
const PARSE_ERROR: u8 = 2;
const RESOURCE_LIMIT: u8 = 3;
const MISMATCH: u8 = 4;

/// Integer solutions of three-monomial Diophantine equations.
#[derive(Parser)]
#[command(name = "trinomial", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Search bound for base equations.
    #[arg(short = 'B', long = "bound", global = true, default_value_t = 10_000)]
    bound: u64,
    /// Print JSON.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1000)]
    samples: usize,
    /// Node budget for feasibility and completion searches.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget: usize,
    /// External base-equation solver command, or "none".
    #[arg(long, global = true)]
    backend: Option<String>,
    /// Worker threads; defaults to the machine's parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve an equation.
    Solve { equation: String },
    /// List all solutions in the box [-B, B]^n by exhaustive search.
    Oracle { equation: String },
    /// Compare the solver with the exhaustive search on [-B, B]^n.
    Verify { equation: String },
    /// Print the reduction to independent monomials.
    Reduce { equation: String },
    /// Classify a family such as "a x^3 + b y^3 = c z^3", or count a degree.
    Classify {
        family: Option<String>,
        #[arg(long, default_value_t = 3)]
        degree: u32,
    },
    /// Estimate how often random exponents admit the certificate.
    Experiment {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        d: u64,
    },
    /// Reproduce a published table (1 to 6).
    Repro { table: u8 },
}

impl Common {
    fn options(&self) -> SolveOptions {
        let backend = match self.backend.as_deref() {
            Some("none") => None,
            Some(cmd) => Backend::from_command(cmd).map(Arc::new),
            None => Backend::auto(),
        };
        SolveOptions { bound: self.bound, backend, budget: self.budget }
    }
}

fn parse(text: &str) -> Result<Poly, ExitCode> {
    parse_equation(text).map_err(|e| {
        eprintln!("parse error: {e}");
        ExitCode::from(PARSE_ERROR)
    })
}

fn points_json(pts: &[Vec<BigInt>]) -> serde_json::Value {
    json!(pts.iter().map(|x| x.iter().map(|v| v.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn fmt_point(x: &[BigInt]) -> String {
    format!("({})", x.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "))
}

fn run(cli: Cli) -> Result<u8, ExitCode> {
    let c = &cli.common;
    match &cli.cmd {
        Cmd::Solve { equation } => {
            let start = Instant::now();
            let p = parse(equation)?;
            let out = solve(&p, &c.options());
            let report = SolveReport::new(equation, &out, start.elapsed().as_millis() as u64);
            if c.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            } else {
                print!("{}", report.to_text(&out));
            }
            Ok(if report.status == "Unknown" { RESOURCE_LIMIT } else { OK })
        }
        Cmd::Oracle { equation } => {
            let p = parse(equation)?;
            let run = match brute_force(&p, c.bound) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("{e}");
                    return Ok(RESOURCE_LIMIT);
                }
            };
            if c.json {
                println!("{}", json!({ "bound": c.bound, "solutions": points_json(&run.solutions) }));
            } else {
                for x in &run.solutions {
                    println!("{}", fmt_point(x));
                }
                println!("{} solutions with |x_i| <= {}", run.solutions.len(), c.bound);
            }
            Ok(OK)
        }
        Cmd::Verify { equation } => {
            let p = parse(equation)?;
            let out = solve(&p, &c.options());
            let run = match brute_force(&p, c.bound) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("{e}");
                    return Ok(RESOURCE_LIMIT);
                }
            };
            let rep = compare(&out.set, &run);
            if c.json {
                println!(
                    "{}",
                    json!({
                        "bound": c.bound,
                        "status": out.set.status.to_string(),
                        "sound": rep.sound,
                        "complete_in_box": rep.complete_in_box,
                        "missing": points_json(&rep.missing),
                        "spurious": points_json(&rep.spurious),
                        "heuristic": rep.heuristic,
                    })
                );
            } else {
                println!("status: {}", out.set.status);
                println!("sound: {}", rep.sound);
                println!("complete in box {}: {}", c.bound, rep.complete_in_box);
                for x in &rep.missing {
                    println!("missing {}", fmt_point(x));
                }
                for x in &rep.spurious {
                    println!("spurious {}", fmt_point(x));
                }
            }
            Ok(if rep.sound && rep.complete_in_box { OK } else { MISMATCH })
        }
        Cmd::Reduce { equation } => {
            let p = parse(equation)?;
            let t = canonicalize(&p).map_err(|e| {
                eprintln!("parse error: {e}");
                ExitCode::from(PARSE_ERROR)
            })?;
            match reduce_to_independent(&t, c.budget) {
                Ok(r) => {
                    let lines = display_reduction(&r);
                    if c.json {
                        println!("{}", json!({ "canonical": t.to_poly().to_string(), "reduced": lines }));
                    } else {
                        for l in lines {
                            println!("{l}");
                        }
                    }
                    Ok(OK)
                }
                Err(e) => {
                    eprintln!("{e}");
                    Ok(RESOURCE_LIMIT)
                }
            }
        }
        Cmd::Classify { family: Some(f), .. } => {
            let fam = parse_family(f).map_err(|e| {
                eprintln!("parse error: {e}");
                ExitCode::from(PARSE_ERROR)
            })?;
            let cl = classify_family(&fam, c.budget);
            if c.json {
                println!("{}", serde_json::to_string(&cl).expect("serializable"));
            } else {
                match &cl {
                    Classification::Prop4 { z, direct, .. } => {
                        println!("certificate z = {z:?}{}", if *direct { ", direct formula applies" } else { "" })
                    }
                    Classification::Reduced { shapes } => {
                        println!("no certificate; reduced shapes:");
                        for s in shapes {
                            println!("  {}", shape_string(s));
                        }
                    }
                    Classification::Unknown => println!("undecided within the budget"),
                }
            }
            Ok(if cl == Classification::Unknown { RESOURCE_LIMIT } else { OK })
        }
        Cmd::Classify { family: None, degree } => {
            if *degree != 3 {
                eprintln!("only degree 3 is tabulated; see the census function for others");
                return Ok(RESOURCE_LIMIT);
            }
            let r = degree3_report(c.budget);
            if c.json {
                println!("{}", serde_json::to_string_pretty(&r).expect("serializable"));
            } else {
                println!("expected: total 96, with certificate 88, without 8");
                for l in r.lines() {
                    println!("{l}");
                }
            }
            Ok(OK)
        }
        Cmd::Experiment { n, d } => {
            let start = Instant::now();
            let r = monte_carlo_prop4(*n, *d, c.samples, c.seed, c.budget);
            if c.json {
                println!("{}", serde_json::to_string(&r).expect("serializable"));
            } else {
                println!(
                    "n = {n}, d = {d}: {}/{} feasible ({:.3}), {} undecided, {} ms",
                    r.feasible,
                    r.samples,
                    r.proportion(),
                    r.unknown,
                    start.elapsed().as_millis()
                );
            }
            Ok(if r.unknown * 100 >= r.samples { RESOURCE_LIMIT } else { OK })
        }
        Cmd::Repro { table } => {
            let opts = ReproOptions { solve: c.options(), samples: c.samples, seed: c.seed, tolerance: 0.03 };
            let Some(r) = repro(*table, &opts) else {
                eprintln!("no table {table}; choose 1 to 6");
                return Err(ExitCode::from(PARSE_ERROR));
            };
            if c.json {
                println!("{}", serde_json::to_string_pretty(&r).expect("serializable"));
            } else {
                println!("{}", r.summary());
                for l in &r.lines {
                    println!("  {l}");
                }
            }
            Ok(if r.ok() { OK } else { MISMATCH })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.common.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().expect("thread pool");
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(code) => code,
    }
}
