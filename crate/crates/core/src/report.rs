//! Verification outcomes shared by every checker.

use std::fmt;

/// Overall verdict of a check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    /// Correct up to an overall sign.
    PassUpToSign,
    /// Both sides agree up to a rational constant (recorded alongside).
    ConstantRatio,
    Fail,
    /// The computation could not be represented; a diagnostic is attached.
    Unsupported,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::PassUpToSign => "pass-up-to-sign",
            Status::ConstantRatio => "constant-ratio",
            Status::Fail => "fail",
            Status::Unsupported => "unsupported",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A batch of exact identity checks: how many ran, which ones failed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdentityReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn merge(&mut self, other: IdentityReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn status(&self) -> Status {
        if self.passed() {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}
