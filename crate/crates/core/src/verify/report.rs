use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// The search budget ran out before the check could be decided.
    Inconclusive,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Inconclusive => "inconclusive: budget exhausted",
            Status::Fail => "FAIL",
        })
    }
}

/// A concrete counterexample: what went wrong and the simplices involved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub summary: String,
    pub simplices: Vec<String>,
}

impl Witness {
    pub fn new(summary: impl Into<String>, simplices: Vec<String>) -> Self {
        Self { summary: summary.into(), simplices }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub status: Status,
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckOutcome {
    pub fn pass(name: impl Into<String>, cases: u64) -> Self {
        Self { name: name.into(), status: Status::Pass, cases, witness: None, note: None }
    }

    pub fn fail(name: impl Into<String>, cases: u64, witness: Witness) -> Self {
        Self { name: name.into(), status: Status::Fail, cases, witness: Some(witness), note: None }
    }

    pub fn inconclusive(name: impl Into<String>, cases: u64, note: impl Into<String>) -> Self {
        Self { name: name.into(), status: Status::Inconclusive, cases, witness: None, note: Some(note.into()) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub subject: String,
    pub bound: usize,
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>, bound: usize) -> Self {
        Self { subject: subject.into(), bound, checks: Vec::new() }
    }

    pub fn push(&mut self, outcome: CheckOutcome) {
        self.checks.push(outcome);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    /// Fail dominates inconclusive, which dominates pass.
    pub fn status(&self) -> Status {
        self.checks.iter().map(|c| c.status).max().unwrap_or(Status::Pass)
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (up to dimension {})", self.subject, self.bound)?;
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Inconclusive => "????",
            };
            let plural = if c.cases == 1 { "" } else { "s" };
            writeln!(f, "  [{tag}] {} ({} case{plural})", c.name, c.cases)?;
            if let Some(w) = &c.witness {
                writeln!(f, "         counterexample: {}", w.summary)?;
                for s in &w.simplices {
                    writeln!(f, "           {s}")?;
                }
            }
            if let Some(note) = &c.note {
                writeln!(f, "         {note}")?;
            }
        }
        write!(f, "status: {}", self.status())
    }
}
