//! Parsing and rendering of proof script documents.
//!
//! A script is a sequence of declarations: sorts, predicates,
//! functions, constants, axioms, schemata, lemmas, proofs, sequents,
//! and sequent derivations. [`parse_document`] takes source text all
//! the way to kernel-ready values, resolving every name against the
//! signature the document itself builds up; [`render_document`] prints
//! a document back as script text that parses to a structurally equal
//! result.

mod diag;
mod document;
mod elaborate;
mod lexer;
mod parser;
mod render;
mod surface;

pub use diag::{Diagnostic, Severity, SourceSpan};
pub use document::{Decl, DeclKind, Document};
pub use render::render_document;

use logic_core::{Formula, Signature};

/// Parses and elaborates a whole script. `file` is the name used in
/// diagnostic spans. Returns every diagnostic found, not just the
/// first; the document is only produced when there are no errors.
pub fn parse_document(text: &str, file: &str) -> Result<Document, Vec<Diagnostic>> {
    let (tokens, mut diags) = lexer::lex(text, file);
    let mut p = parser::Parser::new(&tokens);
    let decls = p.document();
    diags.extend(p.diags);
    if diags.iter().any(|d| d.severity == Severity::Error) {
        return Err(diags);
    }
    match elaborate::elaborate(&decls) {
        Ok(doc) => Ok(doc),
        Err(errors) => {
            diags.extend(errors);
            Err(diags)
        }
    }
}

/// Parses one formula against an existing signature, for goals given
/// directly on a command line.
pub fn parse_formula(text: &str, file: &str, sig: &Signature) -> Result<Formula, Vec<Diagnostic>> {
    let (tokens, mut diags) = lexer::lex(text, file);
    let mut p = parser::Parser::new(&tokens);
    let parsed = p.formula();
    p.expect_eof();
    diags.extend(p.diags);
    let sf = match parsed {
        Ok(sf) if !diags.iter().any(|d| d.severity == Severity::Error) => sf,
        _ => return Err(diags),
    };
    match elaborate::formula_in(sig, &sf) {
        Ok(f) => Ok(f),
        Err(errors) => {
            diags.extend(errors);
            Err(diags)
        }
    }
}
