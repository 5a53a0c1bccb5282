//! Pass/fail bookkeeping shared by the verification routines.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), checks: Vec::new() }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
        passed
    }

    /// Compares two values, recording both on mismatch.
    pub fn expect_eq<T: PartialEq + fmt::Debug>(&mut self, name: impl Into<String>, got: &T, want: &T) -> bool {
        let ok = got == want;
        let detail = if ok { format!("{got:?}") } else { format!("got {got:?}, expected {want:?}") };
        self.check(name, ok, detail)
    }

    pub fn merge(&mut self, other: Report) {
        let prefix = other.title;
        self.checks.extend(other.checks.into_iter().map(|mut c| {
            c.name = format!("{prefix}: {}", c.name);
            c
        }));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.title)?;
        for c in &self.checks {
            let tag = if c.passed { "ok  " } else { "FAIL" };
            writeln!(f, "[{tag}] {}: {}", c.name, c.detail)?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}
