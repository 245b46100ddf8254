//! Canonical text rendering for terms and formulas.
//!
//! Output re-sugars `A -> false` to `~A`, binary `eq` atoms to `a = b`
//! (and their negations to `a != b`), and inserts the minimal parentheses
//! needed to reparse at the precedence `~  >  &  >  |  >  ->` with
//! right-associative `->` and maximal quantifier scope.

use std::fmt;

use crate::syntax::{Formula, Term};

pub fn term(t: &Term) -> String {
    t.to_string()
}

pub fn formula(f: &Formula) -> String {
    f.to_string()
}

impl fmt::Display for Term {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var { name, .. } => write!(out, "{name}"),
            Term::Const { name } => write!(out, "{name}"),
            Term::App { func, args } => {
                write!(out, "{func}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(out, ", ")?;
                    }
                    write!(out, "{a}")?;
                }
                write!(out, ")")
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write(out, self, 1, true)
    }
}

const PREC_IMP: u8 = 1;
const PREC_OR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_UNARY: u8 = 4;
const PREC_ATOM: u8 = 5;

/// Shape classification for rendering. `NeqAtom` is a negated binary `eq`
/// atom (printed `a != b`), `Negation` any other `X -> false`.
enum Shape<'a> {
    EqAtom(&'a Term, &'a Term),
    NeqAtom(&'a Term, &'a Term),
    Negation(&'a Formula),
    Other,
}

fn shape(f: &Formula) -> Shape<'_> {
    if let Formula::Atom { pred, args } = f {
        if pred == "eq" && args.len() == 2 {
            return Shape::EqAtom(&args[0], &args[1]);
        }
    }
    if let Some(inner) = f.as_negation() {
        if let Formula::Atom { pred, args } = inner {
            if pred == "eq" && args.len() == 2 {
                return Shape::NeqAtom(&args[0], &args[1]);
            }
        }
        return Shape::Negation(inner);
    }
    Shape::Other
}

fn prec(f: &Formula) -> u8 {
    match shape(f) {
        Shape::EqAtom(..) | Shape::NeqAtom(..) => PREC_ATOM,
        Shape::Negation(_) => PREC_UNARY,
        Shape::Other => match f {
            Formula::Atom { .. } | Formula::Falsum => PREC_ATOM,
            Formula::And(..) => PREC_AND,
            Formula::Or(..) => PREC_OR,
            Formula::Implies(..) => PREC_IMP,
            Formula::Forall { .. } | Formula::Exists { .. } => PREC_UNARY,
        },
    }
}

/// Whether the rendered form of `f` ends in an open quantifier body, which
/// would swallow any operator that follows it textually.
fn open_quantifier_spine(f: &Formula) -> bool {
    match shape(f) {
        Shape::EqAtom(..) | Shape::NeqAtom(..) | Shape::Negation(_) => false,
        Shape::Other => match f {
            Formula::Forall { .. } | Formula::Exists { .. } => true,
            Formula::And(_, b) | Formula::Or(_, b) | Formula::Implies(_, b) => {
                open_quantifier_spine(b)
            }
            _ => false,
        },
    }
}

fn write(out: &mut fmt::Formatter<'_>, f: &Formula, min_prec: u8, tail: bool) -> fmt::Result {
    let wrap = prec(f) < min_prec || (!tail && open_quantifier_spine(f));
    if wrap {
        write!(out, "(")?;
        write(out, f, 1, true)?;
        return write!(out, ")");
    }
    match shape(f) {
        Shape::EqAtom(a, b) => return write!(out, "{a} = {b}"),
        Shape::NeqAtom(a, b) => return write!(out, "{a} != {b}"),
        Shape::Negation(inner) => {
            write!(out, "~")?;
            return write(out, inner, PREC_UNARY, false);
        }
        Shape::Other => {}
    }
    match f {
        Formula::Atom { pred, args } => {
            write!(out, "{pred}")?;
            if !args.is_empty() {
                write!(out, "(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(out, ", ")?;
                    }
                    write!(out, "{a}")?;
                }
                write!(out, ")")?;
            }
            Ok(())
        }
        Formula::Falsum => write!(out, "false"),
        Formula::And(a, b) => {
            write(out, a, PREC_AND, false)?;
            write!(out, " & ")?;
            write(out, b, PREC_AND + 1, tail)
        }
        Formula::Or(a, b) => {
            write(out, a, PREC_OR, false)?;
            write!(out, " | ")?;
            write(out, b, PREC_OR + 1, tail)
        }
        Formula::Implies(a, b) => {
            write(out, a, PREC_IMP + 1, false)?;
            write!(out, " -> ")?;
            write(out, b, PREC_IMP, tail)
        }
        Formula::Forall { var, sort, body } => {
            write!(out, "all {var}:{sort}. ")?;
            write(out, body, 1, true)
        }
        Formula::Exists { var, sort, body } => {
            write!(out, "ex {var}:{sort}. ")?;
            write(out, body, 1, true)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq(a: &str, b: &str) -> Formula {
        Formula::atom("eq", vec![Term::constant(a), Term::constant(b)])
    }

    fn at(n: &str) -> Formula {
        Formula::atom(n, vec![])
    }

    #[test]
    fn equality_sugar() {
        let f = Formula::implies(
            Formula::and(eq("a", "c"), Formula::not(eq("a", "b"))),
            Formula::not(eq("c", "b")),
        );
        assert_eq!(f.to_string(), "a = c & a != b -> c != b");
    }

    #[test]
    fn precedence_ladder() {
        let f = Formula::implies(
            Formula::and(Formula::not(at("A")), at("B")),
            Formula::or(at("C"), at("D")),
        );
        assert_eq!(f.to_string(), "~A & B -> C | D");
    }

    #[test]
    fn implication_is_right_associative() {
        let f = Formula::implies(at("A"), Formula::implies(at("B"), at("C")));
        assert_eq!(f.to_string(), "A -> B -> C");
        let g = Formula::implies(Formula::implies(at("A"), at("B")), at("C"));
        assert_eq!(g.to_string(), "(A -> B) -> C");
    }

    #[test]
    fn left_associative_chains_stay_flat() {
        let f = Formula::and(Formula::and(at("A"), at("B")), at("C"));
        assert_eq!(f.to_string(), "A & B & C");
        let g = Formula::and(at("A"), Formula::and(at("B"), at("C")));
        assert_eq!(g.to_string(), "A & (B & C)");
    }

    #[test]
    fn quantifier_scope_parenthesization() {
        let px = Formula::atom("P", vec![Term::var("x", "u")]);
        let all = Formula::forall("x", "u", px);
        assert_eq!(
            Formula::and(all.clone(), at("Q")).to_string(),
            "(all x:u. P(x)) & Q"
        );
        assert_eq!(
            Formula::and(at("Q"), all.clone()).to_string(),
            "Q & all x:u. P(x)"
        );
        assert_eq!(
            Formula::implies(Formula::and(at("Q"), all.clone()), at("R")).to_string(),
            "(Q & all x:u. P(x)) -> R"
        );
        assert_eq!(Formula::not(all).to_string(), "~(all x:u. P(x))");
    }

    #[test]
    fn negation_stacking() {
        assert_eq!(Formula::not(Formula::not(at("A"))).to_string(), "~~A");
        assert_eq!(
            Formula::not(Formula::and(at("A"), at("B"))).to_string(),
            "~(A & B)"
        );
    }

    #[test]
    fn falsum_and_nullary_atoms() {
        assert_eq!(Formula::Falsum.to_string(), "false");
        assert_eq!(at("P1").to_string(), "P1");
    }
}
