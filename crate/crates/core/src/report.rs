use serde::Serialize;

/// Outcome of checking one identity over a family of inputs. Only the first
/// failing input is kept.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub identity: String,
    pub checked: usize,
    pub passed: bool,
    pub counterexample: Option<String>,
}

impl CheckReport {
    pub fn new(identity: impl Into<String>) -> Self {
        CheckReport {
            identity: identity.into(),
            checked: 0,
            passed: true,
            counterexample: None,
        }
    }

    /// Records one instance; `describe` runs only for the first failure.
    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.passed {
            self.passed = false;
            self.counterexample = Some(describe());
        }
    }

    pub fn absorb(&mut self, other: CheckReport) {
        self.checked += other.checked;
        if !other.passed && self.passed {
            self.passed = false;
            self.counterexample = other.counterexample;
        }
    }
}

/// A named list of checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, checks: Vec<CheckReport>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        SuiteReport {
            suite: suite.into(),
            passed,
            checks,
        }
    }

    pub fn first_failure(&self) -> Option<&CheckReport> {
        self.checks.iter().find(|c| !c.passed)
    }
}
