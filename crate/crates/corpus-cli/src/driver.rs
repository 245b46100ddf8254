//! Runs an elaborated document through the kernel, the sequent
//! checker, and optionally the finite-model oracle, declaration by
//! declaration in source order.

use logic_core::Formula;
use model_oracle::{entails_theory, EntailmentVerdict, OracleConfig, OracleError};
use proof_kernel::{check_proof, Classification, Theory, TheoryError};
use script_parser::{Decl, DeclKind, Document};
use stoic_sequents::{check_derivation, default_indemonstrables, Sequent};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ItemKind {
    Schema,
    Lemma,
    Proof,
    Derivation,
}

impl ItemKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ItemKind::Schema => "schema",
            ItemKind::Lemma => "lemma",
            ItemKind::Proof => "proof",
            ItemKind::Derivation => "derivation",
        }
    }
}

/// What the oracle said about one goal formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    Valid { up_to: usize },
    Countermodel { display: String },
    BudgetExceeded { verified_up_to: usize },
    Error { message: String },
}

impl std::fmt::Display for OracleOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OracleOutcome::Valid { up_to } => write!(f, "valid up to size {up_to}"),
            OracleOutcome::Countermodel { .. } => write!(f, "countermodel found"),
            OracleOutcome::BudgetExceeded { verified_up_to } => {
                write!(f, "budget exceeded, verified up to size {verified_up_to}")
            }
            OracleOutcome::Error { message } => write!(f, "oracle error: {message}"),
        }
    }
}

/// Result of checking one named item of a document.
#[derive(Clone, Debug)]
pub struct ItemResult {
    pub name: String,
    pub kind: ItemKind,
    pub accepted: bool,
    pub classification: Option<Classification>,
    pub failures: Vec<String>,
    pub oracle: Option<OracleOutcome>,
}

/// Results for a whole document. `errors` holds registration problems
/// outside any single item, which a parsed document never produces.
#[derive(Clone, Debug, Default)]
pub struct DocOutcome {
    pub items: Vec<ItemResult>,
    pub errors: Vec<String>,
}

impl DocOutcome {
    /// Everything checked out: every item accepted, no stray errors.
    pub fn accepted(&self) -> bool {
        self.errors.is_empty() && self.items.iter().all(|i| i.accepted)
    }
}

/// Downgrades accepted classical items to failures, for
/// constructive-only mode.
pub fn reject_classical(outcome: &mut DocOutcome) {
    for item in &mut outcome.items {
        if item.accepted && item.classification == Some(Classification::Classical) {
            item.accepted = false;
            item.failures
                .push("classical reasoning is not allowed in constructive-only mode".to_string());
        }
    }
}

fn run_oracle(theory: &Theory, goal: &Formula, config: OracleConfig) -> OracleOutcome {
    match entails_theory(theory, goal, config) {
        Ok(EntailmentVerdict::ValidUpTo(n)) => OracleOutcome::Valid { up_to: n },
        Ok(EntailmentVerdict::Countermodel(m)) => OracleOutcome::Countermodel {
            display: m.to_string(),
        },
        Err(OracleError::BudgetExceeded { verified_up_to, .. }) => {
            OracleOutcome::BudgetExceeded { verified_up_to }
        }
        Err(e) => OracleOutcome::Error {
            message: e.to_string(),
        },
    }
}

/// Checks every declaration of `doc` in order. With `oracle` set, each
/// lemma and proof goal is also tested semantically against the
/// axioms and unproven schemata registered so far.
pub fn run_document(doc: &Document, oracle: Option<OracleConfig>) -> DocOutcome {
    let mut out = DocOutcome::default();
    let mut theory = Theory::new(doc.signature.clone());
    let mut bases: Vec<(String, Sequent)> = Vec::new();
    let indemonstrables = default_indemonstrables();

    for Decl { kind, .. } in &doc.decls {
        match kind {
            DeclKind::Sort { .. }
            | DeclKind::Pred { .. }
            | DeclKind::Fn { .. }
            | DeclKind::Const { .. } => {}
            DeclKind::Axiom { name, formula } => {
                if let Err(e) = theory.register_axiom(name, formula.clone()) {
                    out.errors.push(format!("axiom {name}: {e}"));
                }
            }
            DeclKind::Schema {
                name,
                params,
                template,
                proof,
            } => {
                match theory.register_schema(name, params.clone(), template.clone(), proof.as_ref())
                {
                    Ok(None) => {}
                    Ok(Some(report)) => out.items.push(ItemResult {
                        name: name.clone(),
                        kind: ItemKind::Schema,
                        accepted: true,
                        classification: report.classification,
                        failures: Vec::new(),
                        oracle: None,
                    }),
                    Err(TheoryError::RejectedProof { report, .. }) => out.items.push(ItemResult {
                        name: name.clone(),
                        kind: ItemKind::Schema,
                        accepted: false,
                        classification: None,
                        failures: report.failures.iter().map(|f| f.to_string()).collect(),
                        oracle: None,
                    }),
                    Err(e) => out.errors.push(format!("schema {name}: {e}")),
                }
            }
            DeclKind::Lemma { name, proof } => {
                let oracle_outcome = oracle.map(|cfg| run_oracle(&theory, &proof.goal, cfg));
                match theory.register_lemma(name, proof) {
                    Ok(report) => out.items.push(ItemResult {
                        name: name.clone(),
                        kind: ItemKind::Lemma,
                        accepted: true,
                        classification: report.classification,
                        failures: Vec::new(),
                        oracle: oracle_outcome,
                    }),
                    Err(TheoryError::RejectedProof { report, .. }) => out.items.push(ItemResult {
                        name: name.clone(),
                        kind: ItemKind::Lemma,
                        accepted: false,
                        classification: None,
                        failures: report.failures.iter().map(|f| f.to_string()).collect(),
                        oracle: oracle_outcome,
                    }),
                    Err(e) => out.errors.push(format!("lemma {name}: {e}")),
                }
            }
            DeclKind::Proof { name, proof } => {
                let report = check_proof(&theory, proof);
                out.items.push(ItemResult {
                    name: name.clone(),
                    kind: ItemKind::Proof,
                    accepted: report.accepted(),
                    classification: report.classification,
                    failures: report.failures.iter().map(|f| f.to_string()).collect(),
                    oracle: oracle.map(|cfg| run_oracle(&theory, &proof.goal, cfg)),
                });
            }
            DeclKind::Sequent { name, sequent } => {
                bases.push((name.clone(), sequent.clone()));
            }
            DeclKind::Derive { name, derivation } => {
                let report = check_derivation(&bases, &indemonstrables, derivation);
                out.items.push(ItemResult {
                    name: name.clone(),
                    kind: ItemKind::Derivation,
                    accepted: report.accepted(),
                    classification: None,
                    failures: report.failures.iter().map(|f| f.to_string()).collect(),
                    oracle: None,
                });
            }
        }
    }
    out
}
