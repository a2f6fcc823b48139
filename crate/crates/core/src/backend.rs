//! External base-equation solver speaking a line protocol over stdio.
//!
//! Request `SOLVE a b c n m` for `a*y^m = b*x^n + c`; the reply is a list of
//! `SOL x y` lines closed by `END COMPLETE` or `END BOUNDED`.

use num_bigint::BigInt;
use std::collections::HashMap;
use std::io::{BufRead, BufReader, Write};
use std::process::{Child, ChildStdin, Command, Stdio};
use std::sync::mpsc::{channel, Receiver};
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Duration;

pub const PARI_SCRIPT: &str = include_str!("../scripts/thue_backend.py");

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BackendAnswer {
    Complete(Vec<(BigInt, BigInt)>),
    Bounded,
}

struct Proc {
    child: Child,
    stdin: ChildStdin,
    lines: Receiver<String>,
}

impl Drop for Proc {
    fn drop(&mut self) {
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

pub struct Backend {
    argv: Vec<String>,
    proc: Mutex<Option<Proc>>,
    cache: Mutex<HashMap<String, BackendAnswer>>,
    pub timeout: Duration,
}

impl std::fmt::Debug for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Backend({})", self.argv.join(" "))
    }
}

fn spawn(argv: &[String]) -> Option<Proc> {
    let mut child = Command::new(&argv[0])
        .args(&argv[1..])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .ok()?;
    let stdin = child.stdin.take()?;
    let stdout = child.stdout.take()?;
    let (tx, rx) = channel();
    std::thread::spawn(move || {
        for line in BufReader::new(stdout).lines() {
            let Ok(line) = line else { break };
            if tx.send(line).is_err() {
                break;
            }
        }
    });
    let p = Proc { child, stdin, lines: rx };
    // banner lines may precede READY
    loop {
        match p.lines.recv_timeout(Duration::from_secs(60)) {
            Ok(l) if l.trim() == "READY" => return Some(p),
            Ok(l) if l.trim() == "UNAVAILABLE" => return None,
            Ok(_) => continue,
            Err(_) => return None,
        }
    }
}

impl Backend {
    /// Start a backend command; `None` when it does not answer READY.
    pub fn from_command(cmd: &str) -> Option<Backend> {
        let argv: Vec<String> = cmd.split_whitespace().map(String::from).collect();
        if argv.is_empty() {
            return None;
        }
        let p = spawn(&argv)?;
        Some(Backend {
            argv,
            proc: Mutex::new(Some(p)),
            cache: Mutex::new(HashMap::new()),
            timeout: Duration::from_secs(120),
        })
    }

    /// The bundled PARI/GP script run with python3.
    pub fn pari() -> Option<Backend> {
        let path = std::env::temp_dir().join(format!("trinomial-thue-{}.py", std::process::id()));
        std::fs::write(&path, PARI_SCRIPT).ok()?;
        Backend::from_command(&format!("python3 {}", path.display()))
    }

    /// Process-wide backend: `TRINOMIAL_BACKEND` names a command, `none`
    /// disables, unset tries the bundled PARI script.
    pub fn auto() -> Option<Arc<Backend>> {
        static AUTO: OnceLock<Option<Arc<Backend>>> = OnceLock::new();
        AUTO.get_or_init(|| match std::env::var("TRINOMIAL_BACKEND") {
            Ok(s) if s == "none" => None,
            Ok(s) if !s.is_empty() => Backend::from_command(&s).map(Arc::new),
            _ => Backend::pari().map(Arc::new),
        })
        .clone()
    }

    pub fn solve(&self, a: &BigInt, b: &BigInt, c: &BigInt, n: u32, m: u32) -> BackendAnswer {
        let req = format!("SOLVE {a} {b} {c} {n} {m}");
        if let Some(ans) = self.cache.lock().unwrap().get(&req) {
            return ans.clone();
        }
        let ans = self.request(&req);
        self.cache.lock().unwrap().insert(req, ans.clone());
        ans
    }

    fn request(&self, req: &str) -> BackendAnswer {
        let mut guard = self.proc.lock().unwrap();
        if guard.is_none() {
            *guard = spawn(&self.argv);
        }
        let Some(p) = guard.as_mut() else { return BackendAnswer::Bounded };
        if writeln!(p.stdin, "{req}").and_then(|_| p.stdin.flush()).is_err() {
            *guard = None;
            return BackendAnswer::Bounded;
        }
        let mut sols = Vec::new();
        loop {
            let line = match p.lines.recv_timeout(self.timeout) {
                Ok(l) => l,
                Err(_) => {
                    // a stuck solver is restarted on the next request
                    *guard = None;
                    return BackendAnswer::Bounded;
                }
            };
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts.as_slice() {
                ["SOL", x, y] => match (x.parse::<BigInt>(), y.parse::<BigInt>()) {
                    (Ok(x), Ok(y)) => sols.push((x, y)),
                    _ => return BackendAnswer::Bounded,
                },
                ["END", "COMPLETE"] => return BackendAnswer::Complete(sols),
                ["END", _] => return BackendAnswer::Bounded,
                _ => {}
            }
        }
    }
}
