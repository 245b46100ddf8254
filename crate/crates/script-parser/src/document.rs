//! The elaborated form of a script: declarations resolved against a
//! signature, ready to hand to the proof kernel and sequent checker.

use crate::diag::SourceSpan;
use logic_core::{Formula, Signature};
use proof_kernel::{MetaKind, Proof, TemplateFormula};
use stoic_sequents::{Sequent, SequentDerivation};

#[derive(Clone, Debug)]
pub struct Document {
    /// Every symbol the declarations introduced, including an `eq`
    /// predicate auto-declared on first use of `=`.
    pub signature: Signature,
    pub decls: Vec<Decl>,
}

#[derive(Clone, Debug)]
pub struct Decl {
    pub kind: DeclKind,
    pub span: SourceSpan,
}

#[derive(Clone, Debug, PartialEq)]
pub enum DeclKind {
    Sort {
        name: String,
    },
    Pred {
        name: String,
        args: Vec<String>,
    },
    Fn {
        name: String,
        args: Vec<String>,
        result: String,
    },
    Const {
        name: String,
        sort: String,
    },
    Axiom {
        name: String,
        formula: Formula,
    },
    Schema {
        name: String,
        params: Vec<(String, MetaKind)>,
        template: TemplateFormula,
        /// Generic proof of the template, when the declaration carried one.
        proof: Option<Proof>,
    },
    Lemma {
        name: String,
        proof: Proof,
    },
    Proof {
        name: String,
        proof: Proof,
    },
    Sequent {
        name: String,
        sequent: Sequent,
    },
    Derive {
        name: String,
        derivation: SequentDerivation,
    },
}

impl DeclKind {
    /// The declared name, for every kind of declaration.
    pub fn name(&self) -> &str {
        match self {
            DeclKind::Sort { name }
            | DeclKind::Pred { name, .. }
            | DeclKind::Fn { name, .. }
            | DeclKind::Const { name, .. }
            | DeclKind::Axiom { name, .. }
            | DeclKind::Schema { name, .. }
            | DeclKind::Lemma { name, .. }
            | DeclKind::Proof { name, .. }
            | DeclKind::Sequent { name, .. }
            | DeclKind::Derive { name, .. } => name,
        }
    }
}

impl Document {
    /// Equality of content: same declarations in the same order and the
    /// same signature, ignoring source positions.
    pub fn structurally_equal(&self, other: &Document) -> bool {
        self.signature == other.signature
            && self.decls.len() == other.decls.len()
            && self
                .decls
                .iter()
                .zip(&other.decls)
                .all(|(a, b)| a.kind == b.kind)
    }
}
