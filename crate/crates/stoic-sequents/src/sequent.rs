//! Sequents over the propositional fragment.

use logic_core::Formula;
use std::fmt;

/// Premises form an ordered multiset: duplicates carry weight, and the
/// checker compares premise lists by element counts, never by set
/// membership. There is no contraction and no weakening.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequent {
    pub premises: Vec<Formula>,
    pub conclusion: Formula,
}

impl Sequent {
    pub fn new(premises: Vec<Formula>, conclusion: Formula) -> Sequent {
        Sequent {
            premises,
            conclusion,
        }
    }

    /// True when every formula is quantifier free.
    pub fn is_propositional(&self) -> bool {
        self.premises.iter().all(propositional) && propositional(&self.conclusion)
    }
}

/// Quantifier freeness; atoms may still mention ground terms.
pub fn propositional(f: &Formula) -> bool {
    match f {
        Formula::Atom { .. } | Formula::Falsum => true,
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            propositional(a) && propositional(b)
        }
        Formula::Forall { .. } | Formula::Exists { .. } => false,
    }
}

/// Equality of premise lists as multisets: same formulas, same counts,
/// any order. Exchange is the one structural liberty the checker takes.
pub fn multiset_eq(a: &[Formula], b: &[Formula]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut remaining: Vec<&Formula> = b.iter().collect();
    for f in a {
        match remaining.iter().position(|g| *g == f) {
            Some(i) => {
                remaining.swap_remove(i);
            }
            None => return false,
        }
    }
    true
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.premises.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        if self.premises.is_empty() {
            write!(f, "|- {}", self.conclusion)
        } else {
            write!(f, " |- {}", self.conclusion)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: &str) -> Formula {
        Formula::atom(n, vec![])
    }

    #[test]
    fn multisets_count_duplicates() {
        let a = [p("A"), p("A"), p("B")];
        let b = [p("A"), p("B"), p("A")];
        let c = [p("A"), p("B"), p("B")];
        let d = [p("A"), p("B")];
        assert!(multiset_eq(&a, &b));
        assert!(!multiset_eq(&a, &c));
        assert!(!multiset_eq(&a, &d));
    }

    #[test]
    fn quantifiers_leave_the_fragment() {
        let s = Sequent::new(vec![p("A")], Formula::forall("x", "u", p("A")));
        assert!(!s.is_propositional());
        let t = Sequent::new(vec![Formula::and(p("A"), Formula::not(p("B")))], p("A"));
        assert!(t.is_propositional());
    }

    #[test]
    fn renders_with_turnstile() {
        let s = Sequent::new(vec![p("A"), p("B")], p("C"));
        assert_eq!(s.to_string(), "A, B |- C");
        let t = Sequent::new(vec![], p("C"));
        assert_eq!(t.to_string(), "|- C");
    }
}
