//! Many-sorted first-order logic: signatures, terms, formulas, and the
//! operations the proof kernel builds on (capture-avoiding substitution,
//! alpha-equivalence, sort checking, Skolemization).
//!
//! Negation is not a connective here: `~A` is kept as `A -> false` and only
//! re-sugared when formulas are displayed.

mod signature;
mod skolem;
mod sorts;
mod subst;
mod syntax;

pub mod display;

pub use signature::{Signature, SignatureError};
pub use skolem::{skolemize, SkolemDecl, Skolemization, SkolemizeError};
pub use sorts::{term_sort, well_sorted, SortDiagnostic};
pub use subst::{fresh_symbol, fresh_var, SubstError, Substitution};
pub use syntax::{alpha_eq, connective_counts, free_names, Formula, FreeName, Term};
