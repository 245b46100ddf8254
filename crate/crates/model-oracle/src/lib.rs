//! Semantic oracle over finite models.
//!
//! Exhaustively enumerates interpretations of a signature with small
//! domains, per sort, and decides whether a goal follows from premises
//! up to a size bound. A refuted goal comes back with an explicit
//! countermodel whose tables can be printed and independently rechecked.

mod compile;
mod entail;
mod model;

pub use compile::Atlas;
pub use entail::{
    candidate_count, entails, entails_theory, semantic_premises, EntailmentVerdict, OracleConfig,
    OracleError,
};
pub use model::{FunctionTable, Model, RelationTable};
