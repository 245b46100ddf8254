//! Substructural sequent checking for the reconstructed Stoic
//! fragment: named base sequents, a configurable set of indemonstrable
//! schemata, composition by cut with exact premise-multiset
//! accounting, and a relevance pass that flags unused hypotheses and
//! classical steps in kernel proofs.

mod derivation;
mod relevance;
mod schema;
mod sequent;

pub use derivation::{
    check_derivation, DerivationReport, SequentDerivation, Step, StepReport, StepRule, StoicFailure,
};
pub use relevance::{relevance_check, RelevanceError, RelevanceReport};
pub use schema::{
    classical_complement, default_indemonstrables, indemonstrables_with_complement, match_schema,
    Bindings, SequentSchema,
};
pub use sequent::{multiset_eq, propositional, Sequent};
