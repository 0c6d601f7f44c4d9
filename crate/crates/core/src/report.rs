//! Pass/fail reports produced by the law suites and invariant checks.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub struct LawCheck {
    pub name: String,
    pub passed: bool,
    /// Counterexample data when the check failed.
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct LawReport {
    pub checks: Vec<LawCheck>,
}

impl LawReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a check; `detail` is only evaluated on failure.
    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl FnOnce() -> String) {
        self.checks.push(LawCheck {
            name: name.into(),
            passed,
            detail: (!passed).then(detail),
        });
    }

    pub fn extend(&mut self, other: LawReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            write!(f, "{mark} {}", c.name)?;
            if let Some(d) = &c.detail {
                write!(f, ": {d}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
