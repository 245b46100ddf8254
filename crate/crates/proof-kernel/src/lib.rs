//! Proof checking for block-structured natural deduction over a
//! many-sorted first-order language.
//!
//! The rule inventory is deliberately small: introduction and
//! elimination for each connective and quantifier, reiteration, and
//! reductio ad absurdum as the only classical rule. Accepted proofs are
//! classified as constructive or classical by whether reductio is
//! reachable from them, including through cited lemmas and proven
//! schemata.

mod checker;
mod proof;
mod report;
mod schema;
mod theory;

pub use checker::check_proof;
pub use proof::{assume, fix, fix_assume, line, Block, BlockItem, Justification, Line, Proof};
pub use report::{CheckReport, Classification, Failure, FailureClass, LineReport, Verdict};
pub use schema::{MetaKind, Schema, SchemaArg, SchemaError, TemplateFormula, TemplateTerm};
pub use theory::{Lemma, Theory, TheoryError};
