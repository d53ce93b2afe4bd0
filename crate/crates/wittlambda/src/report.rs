//! Structured check reports: a human table plus a machine-readable
//! key=value block, byte-identical across runs for fixed inputs.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckStatus::Pass => write!(f, "pass"),
            CheckStatus::Fail => write!(f, "fail"),
            CheckStatus::Skip => write!(f, "skip"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    /// Counterexample or context; every failing check carries one.
    pub witness: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report { command: command.into(), checks: Vec::new() }
    }

    pub fn pass(&mut self, name: impl Into<String>, note: impl Into<String>) {
        let note = note.into();
        self.checks.push(Check {
            name: name.into(),
            status: CheckStatus::Pass,
            witness: if note.is_empty() { None } else { Some(note) },
        });
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            status: CheckStatus::Fail,
            witness: Some(witness.into()),
        });
    }

    pub fn skip(&mut self, name: impl Into<String>, reason: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            status: CheckStatus::Skip,
            witness: Some(reason.into()),
        });
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        if ok {
            self.pass(name, detail);
        } else {
            self.fail(name, detail);
        }
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let mut p = 0;
        let mut f = 0;
        let mut s = 0;
        for c in &self.checks {
            match c.status {
                CheckStatus::Pass => p += 1,
                CheckStatus::Fail => f += 1,
                CheckStatus::Skip => s += 1,
            }
        }
        (p, f, s)
    }

    /// 0 when no check failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(!self.ok())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for (i, c) in self.checks.iter().enumerate() {
            let tag = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skip => "SKIP",
            };
            out.push_str(&format!("[{:>3}] {} {}\n", i + 1, tag, c.name));
            if let Some(w) = &c.witness {
                if c.status != CheckStatus::Pass || !w.is_empty() {
                    out.push_str(&format!("      {}\n", escape(w)));
                }
            }
        }
        let (p, f, s) = self.counts();
        out.push_str(&format!(
            "summary: {} checks, {p} passed, {f} failed, {s} skipped\n",
            self.checks.len()
        ));
        out.push_str("--- machine ---\n");
        out.push_str(&format!("command={}\n", escape(&self.command)));
        for (i, c) in self.checks.iter().enumerate() {
            out.push_str(&format!("check.{}.name={}\n", i + 1, escape(&c.name)));
            out.push_str(&format!("check.{}.status={}\n", i + 1, c.status));
            if let Some(w) = &c.witness {
                out.push_str(&format!("check.{}.witness={}\n", i + 1, escape(w)));
            }
        }
        out.push_str(&format!("summary.total={}\n", self.checks.len()));
        out.push_str(&format!("summary.passed={p}\n"));
        out.push_str(&format!("summary.failed={f}\n"));
        out.push_str(&format!("summary.skipped={s}\n"));
        out.push_str("--- end ---\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\n', "\\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_is_stable_and_exit_codes_follow_failures() {
        let mut r = Report::new("demo cmd");
        r.pass("alpha", "ok");
        r.fail("beta", "counterexample: x=3");
        r.skip("gamma", "not requested");
        assert!(!r.ok());
        assert_eq!(r.exit_code(), 1);
        let a = r.render();
        let b = r.render();
        assert_eq!(a, b);
        assert!(a.contains("check.2.status=fail"));
        assert!(a.contains("summary.failed=1"));
    }
}
