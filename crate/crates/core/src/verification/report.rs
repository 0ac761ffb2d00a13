use std::fmt;

use crate::meantail::Value;
use crate::numerics::{CertifiedReal, Rational, Sign};

/// Denominator size above which critical values are shown as enclosures.
const EXACT_DISPLAY_BITS: u64 = 256;
const DISPLAY_PRECISION_BITS: u32 = 192;

/// Exact when the denominator is small, otherwise a 192-bit enclosure.
pub(crate) fn compact(q: Rational) -> Value {
    if q.denom().bits() <= EXACT_DISPLAY_BITS {
        Value::Exact(q)
    } else {
        Value::Certified(CertifiedReal::from_rational(&q, DISPLAY_PRECISION_BITS))
    }
}

/// Overall verdict of a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Passed,
    /// A counterexample was found.
    Failed,
    /// Some sign decision stayed undecided at the precision budget.
    Undecided,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Passed => "passed",
            Status::Failed => "failed",
            Status::Undecided => "undecided",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Input at which a checked relation fails, with the values involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub input: String,
    pub expected_relation: String,
    pub actual: Vec<(String, Value)>,
}

/// Result of one named check.
///
/// The status is derived: failed iff a counterexample is recorded,
/// otherwise undecided iff an undecided sign was recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub check_name: String,
    pub parameters: Vec<(String, String)>,
    pub range_scanned: String,
    pub counterexample: Option<Counterexample>,
    /// First relation whose sign could not be decided.
    pub undecided: Option<String>,
    pub critical_values: Vec<(String, Value)>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(check_name: impl Into<String>, range_scanned: impl Into<String>) -> Self {
        Self {
            check_name: check_name.into(),
            parameters: Vec::new(),
            range_scanned: range_scanned.into(),
            counterexample: None,
            undecided: None,
            critical_values: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.parameters.push((key.into(), value.to_string()));
        self
    }

    pub fn status(&self) -> Status {
        if self.counterexample.is_some() {
            Status::Failed
        } else if self.undecided.is_some() {
            Status::Undecided
        } else {
            Status::Passed
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Passed
    }

    pub fn critical(&mut self, label: impl Into<String>, value: impl Into<Value>) {
        self.critical_values.push((label.into(), value.into()));
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Keeps only the first counterexample.
    pub fn fail(&mut self, counterexample: Counterexample) {
        if self.counterexample.is_none() {
            self.counterexample = Some(counterexample);
        }
    }

    /// Keeps only the first undecided relation.
    pub fn mark_undecided(&mut self, what: impl Into<String>) {
        if self.undecided.is_none() {
            self.undecided = Some(what.into());
        }
    }

    /// Folds per-item outcomes in order; stops at the first counterexample.
    pub(crate) fn absorb(&mut self, outcomes: impl IntoIterator<Item = Outcome>) {
        for outcome in outcomes {
            match outcome {
                Outcome::Holds => {}
                Outcome::Undecided(what) => self.mark_undecided(what),
                Outcome::Violated(cx) => {
                    self.fail(cx);
                    return;
                }
            }
        }
    }
}

/// Verdict for a single checked relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Outcome {
    Holds,
    Violated(Counterexample),
    Undecided(String),
}

impl Outcome {
    /// Exact check: holds when `ok`, otherwise a counterexample built lazily.
    pub(crate) fn check(ok: bool, cx: impl FnOnce() -> Counterexample) -> Self {
        if ok {
            Outcome::Holds
        } else {
            Outcome::Violated(cx())
        }
    }

    /// Certified check: holds when `sign == expected`.
    pub(crate) fn from_sign(sign: Sign, expected: Sign, cx: impl FnOnce() -> Counterexample) -> Self {
        match sign {
            Sign::Undecided => {
                let c = cx();
                Outcome::Undecided(format!("{}: {}", c.input, c.expected_relation))
            }
            s if s == expected => Outcome::Holds,
            _ => Outcome::Violated(cx()),
        }
    }
}

impl Counterexample {
    pub fn new(input: impl Into<String>, expected_relation: impl Into<String>) -> Self {
        Self { input: input.into(), expected_relation: expected_relation.into(), actual: Vec::new() }
    }

    pub fn with(mut self, label: impl Into<String>, value: impl Into<Value>) -> Self {
        self.actual.push((label.into(), value.into()));
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ratio;

    #[test]
    fn status_follows_recorded_outcomes() {
        let mut r = VerificationReport::new("x", "none");
        assert!(r.passed());
        r.absorb([Outcome::Holds, Outcome::Undecided("a".into())]);
        assert_eq!(r.status(), Status::Undecided);
        r.absorb([Outcome::Violated(Counterexample::new("n=3", "a < b").with("a", ratio(1, 2)))]);
        assert_eq!(r.status(), Status::Failed);
        r.fail(Counterexample::new("n=4", "later"));
        assert_eq!(r.counterexample.as_ref().unwrap().input, "n=3");
    }
}
