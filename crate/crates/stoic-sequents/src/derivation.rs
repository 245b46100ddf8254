//! Checking sequent derivations built from bases, indemonstrables,
//! and cut.
//!
//! Cut is the only composition rule: given a target step proving
//! G |- C and a source step proving D |- A, where the chosen premise
//! occurrence of the target equals A, the result replaces exactly that
//! occurrence of A inside G by all of D. Premise counts are conserved:
//! the result has |G| - 1 + |D| premises, so nothing can be smuggled
//! in (weakening) or merged away (contraction). Stated results are
//! compared to computed ones as multisets.

use std::fmt;

use proof_kernel::Verdict;

use crate::schema::{match_schema, SequentSchema};
use crate::sequent::{multiset_eq, Sequent};

/// One derivation step: the claimed sequent plus how it is obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub label: String,
    pub sequent: Sequent,
    pub rule: StepRule,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepRule {
    /// Restates a named base sequent.
    Base(String),
    /// Instance of some schema in the configured indemonstrable set.
    Indemonstrable,
    /// Splices the source step's premises into the target step's
    /// premise list at the given occurrence. `position` is 1-based
    /// into the target's premises.
    Cut {
        target: String,
        source: String,
        position: usize,
    },
}

impl StepRule {
    pub fn rule_name(&self) -> &'static str {
        match self {
            StepRule::Base(_) => "base",
            StepRule::Indemonstrable => "indem",
            StepRule::Cut { .. } => "cut",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SequentDerivation {
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StoicFailure {
    UnknownBase {
        at: String,
        name: String,
    },
    /// Cited label missing or not strictly earlier in the step list.
    UnknownStep {
        at: String,
        label: String,
    },
    DuplicateLabel {
        at: String,
    },
    NonPropositional {
        at: String,
    },
    /// Stated sequent differs from the named base.
    BaseMismatch {
        at: String,
        name: String,
    },
    /// No configured indemonstrable matches the stated sequent.
    SchemaMismatch {
        at: String,
    },
    CutPositionOutOfRange {
        at: String,
        position: usize,
        len: usize,
    },
    /// Target premise at the position differs from the source's
    /// conclusion.
    CutPremiseMismatch {
        at: String,
    },
    /// Stated sequent is not the spliced result, as a multiset.
    CutResultMismatch {
        at: String,
    },
    EmptyDerivation,
}

impl StoicFailure {
    pub fn at(&self) -> Option<&str> {
        match self {
            StoicFailure::UnknownBase { at, .. }
            | StoicFailure::UnknownStep { at, .. }
            | StoicFailure::DuplicateLabel { at }
            | StoicFailure::NonPropositional { at }
            | StoicFailure::BaseMismatch { at, .. }
            | StoicFailure::SchemaMismatch { at }
            | StoicFailure::CutPositionOutOfRange { at, .. }
            | StoicFailure::CutPremiseMismatch { at }
            | StoicFailure::CutResultMismatch { at } => Some(at),
            StoicFailure::EmptyDerivation => None,
        }
    }
}

impl fmt::Display for StoicFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StoicFailure::UnknownBase { at, name } => {
                write!(f, "{at}: unknown base sequent {name}")
            }
            StoicFailure::UnknownStep { at, label } => {
                write!(f, "{at}: cited step {label} does not precede")
            }
            StoicFailure::DuplicateLabel { at } => write!(f, "{at}: duplicate step label"),
            StoicFailure::NonPropositional { at } => {
                write!(f, "{at}: formula leaves the propositional fragment")
            }
            StoicFailure::BaseMismatch { at, name } => {
                write!(f, "{at}: stated sequent differs from base {name}")
            }
            StoicFailure::SchemaMismatch { at } => {
                write!(f, "{at}: no indemonstrable schema matches")
            }
            StoicFailure::CutPositionOutOfRange { at, position, len } => {
                write!(f, "{at}: cut position {position} exceeds {len} premises")
            }
            StoicFailure::CutPremiseMismatch { at } => write!(
                f,
                "{at}: premise at the cut position differs from the source conclusion"
            ),
            StoicFailure::CutResultMismatch { at } => {
                write!(f, "{at}: stated sequent is not the spliced cut result")
            }
            StoicFailure::EmptyDerivation => write!(f, "derivation has no steps"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepReport {
    pub label: String,
    pub sequent: String,
    pub rule: &'static str,
    /// Name of the matched indemonstrable, for `indem` steps.
    pub schema: Option<String>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationReport {
    pub verdict: Verdict,
    pub failures: Vec<StoicFailure>,
    pub steps: Vec<StepReport>,
}

impl DerivationReport {
    pub fn accepted(&self) -> bool {
        self.verdict == Verdict::Accepted
    }

    pub fn primary_failure(&self) -> Option<&StoicFailure> {
        self.failures.first()
    }
}

/// Checks every step against the named bases and the given schema set.
/// A failed step is reported but its stated sequent is still trusted
/// afterwards, so one mistake yields one failure, not a cascade.
pub fn check_derivation(
    base: &[(String, Sequent)],
    schemata: &[SequentSchema],
    derivation: &SequentDerivation,
) -> DerivationReport {
    let mut failures = Vec::new();
    let mut steps = Vec::new();

    for (name, sequent) in base {
        if !sequent.is_propositional() {
            failures.push(StoicFailure::NonPropositional {
                at: format!("base {name}"),
            });
        }
    }
    if derivation.steps.is_empty() {
        failures.push(StoicFailure::EmptyDerivation);
    }

    let mut seen: Vec<(&str, &Sequent)> = Vec::new();
    for step in &derivation.steps {
        let at = step.label.clone();
        let mut ok = true;
        let mut matched_schema = None;
        let fail = |failures: &mut Vec<StoicFailure>, ok: &mut bool, f: StoicFailure| {
            failures.push(f);
            *ok = false;
        };

        if seen.iter().any(|(l, _)| *l == step.label) {
            fail(
                &mut failures,
                &mut ok,
                StoicFailure::DuplicateLabel { at: at.clone() },
            );
        }
        if !step.sequent.is_propositional() {
            fail(
                &mut failures,
                &mut ok,
                StoicFailure::NonPropositional { at: at.clone() },
            );
        }

        match &step.rule {
            StepRule::Base(name) => match base.iter().find(|(n, _)| n == name) {
                None => fail(
                    &mut failures,
                    &mut ok,
                    StoicFailure::UnknownBase {
                        at: at.clone(),
                        name: name.clone(),
                    },
                ),
                Some((_, registered)) => {
                    let same = multiset_eq(&step.sequent.premises, &registered.premises)
                        && step.sequent.conclusion == registered.conclusion;
                    if !same {
                        fail(
                            &mut failures,
                            &mut ok,
                            StoicFailure::BaseMismatch {
                                at: at.clone(),
                                name: name.clone(),
                            },
                        );
                    }
                }
            },
            StepRule::Indemonstrable => {
                match schemata
                    .iter()
                    .find(|s| match_schema(s, &step.sequent).is_some())
                {
                    Some(s) => matched_schema = Some(s.name.clone()),
                    None => fail(
                        &mut failures,
                        &mut ok,
                        StoicFailure::SchemaMismatch { at: at.clone() },
                    ),
                }
            }
            StepRule::Cut {
                target,
                source,
                position,
            } => {
                let target_seq = seen.iter().find(|(l, _)| l == target).map(|(_, s)| *s);
                let source_seq = seen.iter().find(|(l, _)| l == source).map(|(_, s)| *s);
                for (label, found) in [(target, &target_seq), (source, &source_seq)] {
                    if found.is_none() {
                        fail(
                            &mut failures,
                            &mut ok,
                            StoicFailure::UnknownStep {
                                at: at.clone(),
                                label: label.clone(),
                            },
                        );
                    }
                }
                if let (Some(t), Some(s)) = (target_seq, source_seq) {
                    if *position == 0 || *position > t.premises.len() {
                        fail(
                            &mut failures,
                            &mut ok,
                            StoicFailure::CutPositionOutOfRange {
                                at: at.clone(),
                                position: *position,
                                len: t.premises.len(),
                            },
                        );
                    } else if t.premises[*position - 1] != s.conclusion {
                        fail(
                            &mut failures,
                            &mut ok,
                            StoicFailure::CutPremiseMismatch { at: at.clone() },
                        );
                    } else {
                        let mut computed =
                            Vec::with_capacity(t.premises.len() - 1 + s.premises.len());
                        computed.extend_from_slice(&t.premises[..*position - 1]);
                        computed.extend_from_slice(&s.premises);
                        computed.extend_from_slice(&t.premises[*position..]);
                        let same = multiset_eq(&step.sequent.premises, &computed)
                            && step.sequent.conclusion == t.conclusion;
                        if !same {
                            fail(
                                &mut failures,
                                &mut ok,
                                StoicFailure::CutResultMismatch { at: at.clone() },
                            );
                        }
                    }
                }
            }
        }

        steps.push(StepReport {
            label: step.label.clone(),
            sequent: step.sequent.to_string(),
            rule: step.rule.rule_name(),
            schema: matched_schema,
            ok,
        });
        seen.push((&step.label, &step.sequent));
    }

    let verdict = if failures.is_empty() {
        Verdict::Accepted
    } else {
        Verdict::Rejected
    };
    DerivationReport {
        verdict,
        failures,
        steps,
    }
}
