//! Outcome types produced by proof checking.

use logic_core::{Formula, SortDiagnostic};
use std::fmt;

/// Overall outcome of checking one proof.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accepted => write!(f, "accepted"),
            Verdict::Rejected => write!(f, "rejected"),
        }
    }
}

/// An accepted proof is classical when it rests on reductio ad absurdum,
/// either directly or through a cited lemma or proven schema.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Constructive,
    Classical,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Constructive => write!(f, "constructive"),
            Classification::Classical => write!(f, "classical"),
        }
    }
}

/// Broad kind of a failure, independent of its details.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FailureClass {
    UnknownLabel,
    ScopeViolation,
    RuleMismatch,
    EigenvariableViolation,
    SortError,
    OpenHypothesisAtGoal,
    GoalMismatch,
}

impl fmt::Display for FailureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            FailureClass::UnknownLabel => "unknown label",
            FailureClass::ScopeViolation => "scope violation",
            FailureClass::RuleMismatch => "rule mismatch",
            FailureClass::EigenvariableViolation => "eigenvariable violation",
            FailureClass::SortError => "sort error",
            FailureClass::OpenHypothesisAtGoal => "open hypothesis at goal",
            FailureClass::GoalMismatch => "goal mismatch",
        };
        write!(f, "{name}")
    }
}

/// One reason a proof was rejected. `at` fields name the offending line
/// or block label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    UnknownLabel {
        at: String,
        label: String,
    },
    ScopeViolation {
        at: String,
        label: String,
        detail: String,
    },
    RuleMismatch {
        at: String,
        rule: &'static str,
        detail: String,
    },
    EigenvariableViolation {
        at: String,
        var: String,
        detail: String,
    },
    SortError {
        at: String,
        diagnostics: Vec<SortDiagnostic>,
    },
    OpenHypothesisAtGoal {
        detail: String,
    },
    GoalMismatch {
        stated: Formula,
        goal: Formula,
    },
}

impl Failure {
    pub fn class(&self) -> FailureClass {
        match self {
            Failure::UnknownLabel { .. } => FailureClass::UnknownLabel,
            Failure::ScopeViolation { .. } => FailureClass::ScopeViolation,
            Failure::RuleMismatch { .. } => FailureClass::RuleMismatch,
            Failure::EigenvariableViolation { .. } => FailureClass::EigenvariableViolation,
            Failure::SortError { .. } => FailureClass::SortError,
            Failure::OpenHypothesisAtGoal { .. } => FailureClass::OpenHypothesisAtGoal,
            Failure::GoalMismatch { .. } => FailureClass::GoalMismatch,
        }
    }

    /// Label of the line or block the failure is anchored to, when it has one.
    pub fn at(&self) -> Option<&str> {
        match self {
            Failure::UnknownLabel { at, .. }
            | Failure::ScopeViolation { at, .. }
            | Failure::RuleMismatch { at, .. }
            | Failure::EigenvariableViolation { at, .. }
            | Failure::SortError { at, .. } => Some(at),
            Failure::OpenHypothesisAtGoal { .. } | Failure::GoalMismatch { .. } => None,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::UnknownLabel { at, label } => {
                write!(f, "{at}: unknown label '{label}'")
            }
            Failure::ScopeViolation { at, label, detail } => {
                write!(f, "{at}: scope violation on '{label}': {detail}")
            }
            Failure::RuleMismatch { at, rule, detail } => {
                write!(f, "{at}: rule mismatch in {rule}: {detail}")
            }
            Failure::EigenvariableViolation { at, var, detail } => {
                write!(f, "{at}: eigenvariable violation on '{var}': {detail}")
            }
            Failure::SortError { at, diagnostics } => {
                write!(f, "{at}: sort error")?;
                for d in diagnostics {
                    write!(f, "; {d}")?;
                }
                Ok(())
            }
            Failure::OpenHypothesisAtGoal { detail } => {
                write!(f, "open hypothesis at goal: {detail}")
            }
            Failure::GoalMismatch { stated, goal } => {
                write!(
                    f,
                    "goal mismatch: proof concludes {stated} but the goal is {goal}"
                )
            }
        }
    }
}

/// Per-line record kept for rendering and diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineReport {
    pub label: String,
    pub formula: Formula,
    pub rule: &'static str,
    pub depth: usize,
    pub ok: bool,
}

/// Full result of checking a proof. `failures` lists every problem found,
/// in source order; checking continues past the first failure by trusting
/// each stated formula, so one mistake does not drown the rest of the proof
/// in noise.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub classification: Option<Classification>,
    pub failures: Vec<Failure>,
    pub lines: Vec<LineReport>,
}

impl CheckReport {
    pub fn accepted(&self) -> bool {
        self.verdict == Verdict::Accepted
    }

    /// The first failure in source order, which is the one to show a user.
    pub fn primary_failure(&self) -> Option<&Failure> {
        self.failures.first()
    }
}
