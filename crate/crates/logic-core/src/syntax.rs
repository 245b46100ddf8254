use std::collections::BTreeSet;

/// First-order terms. Variable occurrences carry their sort so that term
/// sorts can be computed without an environment; constants are resolved
/// against the signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var { name: String, sort: String },
    Const { name: String },
    App { func: String, args: Vec<Term> },
}

impl Term {
    pub fn var(name: &str, sort: &str) -> Term {
        Term::Var {
            name: name.to_string(),
            sort: sort.to_string(),
        }
    }

    pub fn constant(name: &str) -> Term {
        Term::Const {
            name: name.to_string(),
        }
    }

    pub fn app(func: &str, args: Vec<Term>) -> Term {
        Term::App {
            func: func.to_string(),
            args,
        }
    }
}

/// Formulas of many-sorted first-order logic. There is no negation node:
/// `~A` is represented as `Implies(A, Falsum)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom {
        pred: String,
        args: Vec<Term>,
    },
    Falsum,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall {
        var: String,
        sort: String,
        body: Box<Formula>,
    },
    Exists {
        var: String,
        sort: String,
        body: Box<Formula>,
    },
}

impl Formula {
    pub fn atom(pred: &str, args: Vec<Term>) -> Formula {
        Formula::Atom {
            pred: pred.to_string(),
            args,
        }
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn not(a: Formula) -> Formula {
        Formula::implies(a, Formula::Falsum)
    }

    pub fn forall(var: &str, sort: &str, body: Formula) -> Formula {
        Formula::Forall {
            var: var.to_string(),
            sort: sort.to_string(),
            body: Box::new(body),
        }
    }

    pub fn exists(var: &str, sort: &str, body: Formula) -> Formula {
        Formula::Exists {
            var: var.to_string(),
            sort: sort.to_string(),
            body: Box::new(body),
        }
    }

    /// `Some(a)` when the formula has the shape `a -> false`.
    pub fn as_negation(&self) -> Option<&Formula> {
        match self {
            Formula::Implies(a, b) if **b == Formula::Falsum => Some(a),
            _ => None,
        }
    }
}

/// A name occurring free in a formula: either a free variable (with its
/// sort) or a constant. Function and predicate symbols are not included.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FreeName {
    Var { name: String, sort: String },
    Const(String),
}

pub fn free_names(f: &Formula) -> BTreeSet<FreeName> {
    let mut out = BTreeSet::new();
    let mut bound: Vec<(String, String)> = Vec::new();
    collect_formula(f, &mut bound, &mut out);
    out
}

fn collect_formula(f: &Formula, bound: &mut Vec<(String, String)>, out: &mut BTreeSet<FreeName>) {
    match f {
        Formula::Atom { args, .. } => {
            for t in args {
                collect_term(t, bound, out);
            }
        }
        Formula::Falsum => {}
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            collect_formula(a, bound, out);
            collect_formula(b, bound, out);
        }
        Formula::Forall { var, sort, body } | Formula::Exists { var, sort, body } => {
            bound.push((var.clone(), sort.clone()));
            collect_formula(body, bound, out);
            bound.pop();
        }
    }
}

fn collect_term(t: &Term, bound: &[(String, String)], out: &mut BTreeSet<FreeName>) {
    match t {
        Term::Var { name, sort } => {
            let is_bound = bound.iter().rev().any(|(n, s)| n == name && s == sort);
            if !is_bound {
                out.insert(FreeName::Var {
                    name: name.clone(),
                    sort: sort.clone(),
                });
            }
        }
        Term::Const { name } => {
            out.insert(FreeName::Const(name.clone()));
        }
        Term::App { args, .. } => {
            for a in args {
                collect_term(a, bound, out);
            }
        }
    }
}

/// Alpha-equivalence: equality up to consistent renaming of bound variables.
/// Binder sorts must agree; free names must match exactly.
pub fn alpha_eq(f: &Formula, g: &Formula) -> bool {
    alpha_formula(f, g, &mut Vec::new(), &mut Vec::new())
}

fn alpha_formula(
    f: &Formula,
    g: &Formula,
    lb: &mut Vec<(String, String)>,
    rb: &mut Vec<(String, String)>,
) -> bool {
    match (f, g) {
        (Formula::Atom { pred: p1, args: a1 }, Formula::Atom { pred: p2, args: a2 }) => {
            p1 == p2
                && a1.len() == a2.len()
                && a1.iter().zip(a2).all(|(t, u)| alpha_term(t, u, lb, rb))
        }
        (Formula::Falsum, Formula::Falsum) => true,
        (Formula::And(a1, b1), Formula::And(a2, b2))
        | (Formula::Or(a1, b1), Formula::Or(a2, b2))
        | (Formula::Implies(a1, b1), Formula::Implies(a2, b2)) => {
            alpha_formula(a1, a2, lb, rb) && alpha_formula(b1, b2, lb, rb)
        }
        (
            Formula::Forall {
                var: v1,
                sort: s1,
                body: b1,
            },
            Formula::Forall {
                var: v2,
                sort: s2,
                body: b2,
            },
        )
        | (
            Formula::Exists {
                var: v1,
                sort: s1,
                body: b1,
            },
            Formula::Exists {
                var: v2,
                sort: s2,
                body: b2,
            },
        ) => {
            if s1 != s2 {
                return false;
            }
            lb.push((v1.clone(), s1.clone()));
            rb.push((v2.clone(), s2.clone()));
            let r = alpha_formula(b1, b2, lb, rb);
            lb.pop();
            rb.pop();
            r
        }
        _ => false,
    }
}

fn alpha_term(t: &Term, u: &Term, lb: &[(String, String)], rb: &[(String, String)]) -> bool {
    match (t, u) {
        (Term::Var { name: n1, sort: s1 }, Term::Var { name: n2, sort: s2 }) => {
            let li = lb.iter().rposition(|(n, s)| n == n1 && s == s1);
            let ri = rb.iter().rposition(|(n, s)| n == n2 && s == s2);
            match (li, ri) {
                (Some(i), Some(j)) => i == j && s1 == s2,
                (None, None) => n1 == n2 && s1 == s2,
                _ => false,
            }
        }
        (Term::Const { name: n1 }, Term::Const { name: n2 }) => n1 == n2,
        (Term::App { func: f1, args: a1 }, Term::App { func: f2, args: a2 }) => {
            f1 == f2
                && a1.len() == a2.len()
                && a1.iter().zip(a2).all(|(x, y)| alpha_term(x, y, lb, rb))
        }
        _ => false,
    }
}

/// Counts of (and, or, implies, forall, exists, falsum) nodes, used to check
/// that substitution preserves the connective structure of a formula.
pub fn connective_counts(f: &Formula) -> [usize; 6] {
    let mut c = [0; 6];
    count(f, &mut c);
    c
}

fn count(f: &Formula, c: &mut [usize; 6]) {
    match f {
        Formula::Atom { .. } => {}
        Formula::Falsum => c[5] += 1,
        Formula::And(a, b) => {
            c[0] += 1;
            count(a, c);
            count(b, c);
        }
        Formula::Or(a, b) => {
            c[1] += 1;
            count(a, c);
            count(b, c);
        }
        Formula::Implies(a, b) => {
            c[2] += 1;
            count(a, c);
            count(b, c);
        }
        Formula::Forall { body, .. } => {
            c[3] += 1;
            count(body, c);
        }
        Formula::Exists { body, .. } => {
            c[4] += 1;
            count(body, c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn px(v: &str) -> Formula {
        Formula::atom("P", vec![Term::var(v, "u")])
    }

    #[test]
    fn negation_is_implication_to_falsum() {
        let n = Formula::not(px("x"));
        assert_eq!(n, Formula::implies(px("x"), Formula::Falsum));
        assert_eq!(n.as_negation(), Some(&px("x")));
    }

    #[test]
    fn alpha_eq_renames_binders() {
        let f = Formula::forall("x", "u", px("x"));
        let g = Formula::forall("y", "u", px("y"));
        assert!(alpha_eq(&f, &g));
    }

    #[test]
    fn alpha_eq_distinguishes_free_variables() {
        assert!(!alpha_eq(&px("x"), &px("y")));
    }

    #[test]
    fn alpha_eq_respects_binding_structure() {
        // all x. all y. P(x)  vs  all x. all y. P(y)
        let f = Formula::forall("x", "u", Formula::forall("y", "u", px("x")));
        let g = Formula::forall("x", "u", Formula::forall("y", "u", px("y")));
        assert!(!alpha_eq(&f, &g));
    }

    #[test]
    fn alpha_eq_requires_same_binder_sort() {
        let f = Formula::forall("x", "u", Formula::Falsum);
        let g = Formula::forall("x", "v", Formula::Falsum);
        assert!(!alpha_eq(&f, &g));
    }

    #[test]
    fn shadowing_binds_to_nearest() {
        // all x. ex x. P(x): the occurrence belongs to the inner binder.
        let f = Formula::forall("x", "u", Formula::exists("x", "u", px("x")));
        let g = Formula::forall("y", "u", Formula::exists("z", "u", px("z")));
        assert!(alpha_eq(&f, &g));
    }

    #[test]
    fn free_names_sees_through_binders() {
        let f = Formula::forall(
            "x",
            "u",
            Formula::atom(
                "R",
                vec![
                    Term::var("x", "u"),
                    Term::app("g", vec![Term::constant("k")]),
                ],
            ),
        );
        let names = free_names(&f);
        assert!(names.contains(&FreeName::Const("k".into())));
        assert!(!names.iter().any(|n| matches!(n, FreeName::Var { .. })));
    }
}
