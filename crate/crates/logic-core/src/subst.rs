use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::signature::Signature;
use crate::sorts::term_sort;
use crate::syntax::{free_names, Formula, FreeName, Term};

/// A sort-preserving map from variables to terms. Keys are (name, sort)
/// pairs, so two variables that share a name but not a sort are distinct.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<(String, String), Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubstError {
    SortMismatch {
        var: String,
        var_sort: String,
        term_sort: String,
    },
    IllSortedImage {
        var: String,
        detail: String,
    },
}

impl fmt::Display for SubstError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubstError::SortMismatch {
                var,
                var_sort,
                term_sort,
            } => write!(
                f,
                "cannot map `{var}:{var_sort}` to a term of sort `{term_sort}`"
            ),
            SubstError::IllSortedImage { var, detail } => {
                write!(f, "image term for `{var}` is ill-sorted: {detail}")
            }
        }
    }
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    /// Binds `var:sort` to `term` without checking sorts. Used internally
    /// for variable-to-variable renamings, and by callers that have already
    /// validated the image.
    pub fn insert(&mut self, var: &str, sort: &str, term: Term) {
        self.map.insert((var.to_string(), sort.to_string()), term);
    }

    /// Binds `var:sort` to `term` after verifying against the signature
    /// that the image has exactly the variable's sort.
    pub fn insert_checked(
        &mut self,
        sig: &Signature,
        var: &str,
        sort: &str,
        term: Term,
    ) -> Result<(), SubstError> {
        let ts = term_sort(sig, &term).map_err(|d| SubstError::IllSortedImage {
            var: var.to_string(),
            detail: d.to_string(),
        })?;
        if ts != sort {
            return Err(SubstError::SortMismatch {
                var: var.to_string(),
                var_sort: sort.to_string(),
                term_sort: ts,
            });
        }
        self.insert(var, sort, term);
        Ok(())
    }

    pub fn single(var: &str, sort: &str, term: Term) -> Self {
        let mut s = Substitution::new();
        s.insert(var, sort, term);
        s
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, var: &str, sort: &str) -> Option<&Term> {
        self.map.get(&(var.to_string(), sort.to_string()))
    }

    pub fn domain(&self) -> impl Iterator<Item = (&str, &str)> {
        self.map.keys().map(|(n, s)| (n.as_str(), s.as_str()))
    }

    /// Applies the substitution to every free occurrence of a domain
    /// variable, renaming bound variables where they would capture a
    /// variable free in an image term.
    pub fn apply(&self, f: &Formula) -> Formula {
        if self.map.is_empty() {
            return f.clone();
        }
        self.apply_formula(f)
    }

    pub fn apply_term(&self, t: &Term) -> Term {
        match t {
            Term::Var { name, sort } => match self.get(name, sort) {
                Some(image) => image.clone(),
                None => t.clone(),
            },
            Term::Const { .. } => t.clone(),
            Term::App { func, args } => Term::App {
                func: func.clone(),
                args: args.iter().map(|a| self.apply_term(a)).collect(),
            },
        }
    }

    fn apply_formula(&self, f: &Formula) -> Formula {
        match f {
            Formula::Atom { pred, args } => Formula::Atom {
                pred: pred.clone(),
                args: args.iter().map(|a| self.apply_term(a)).collect(),
            },
            Formula::Falsum => Formula::Falsum,
            Formula::And(a, b) => Formula::and(self.apply_formula(a), self.apply_formula(b)),
            Formula::Or(a, b) => Formula::or(self.apply_formula(a), self.apply_formula(b)),
            Formula::Implies(a, b) => {
                Formula::implies(self.apply_formula(a), self.apply_formula(b))
            }
            Formula::Forall { var, sort, body } => {
                let (var, sort, body) = self.descend_binder(var, sort, body);
                Formula::Forall {
                    var,
                    sort,
                    body: Box::new(body),
                }
            }
            Formula::Exists { var, sort, body } => {
                let (var, sort, body) = self.descend_binder(var, sort, body);
                Formula::Exists {
                    var,
                    sort,
                    body: Box::new(body),
                }
            }
        }
    }

    fn descend_binder(&self, var: &str, sort: &str, body: &Formula) -> (String, String, Formula) {
        // Drop any binding for the bound variable itself; its occurrences
        // in the body refer to the binder, not to the substitution domain.
        let mut inner = self.clone();
        inner.map.remove(&(var.to_string(), sort.to_string()));
        if inner.map.is_empty() {
            return (var.to_string(), sort.to_string(), body.clone());
        }

        // Capture check: does any image of a variable actually free in the
        // body mention the binder's name?
        let body_free = free_names(body);
        let captured = inner.map.iter().any(|((n, s), image)| {
            let used = body_free
                .iter()
                .any(|fv| matches!(fv, FreeName::Var { name, sort: vs } if name == n && vs == s));
            used && term_mentions_var(image, var)
        });

        if !captured {
            return (var.to_string(), sort.to_string(), inner.apply_formula(body));
        }

        // Rename the binder to a fresh variable before substituting.
        let mut avoid: BTreeSet<String> = body_free
            .iter()
            .map(|fv| match fv {
                FreeName::Var { name, .. } => name.clone(),
                FreeName::Const(name) => name.clone(),
            })
            .collect();
        for image in inner.map.values() {
            collect_term_names(image, &mut avoid);
        }
        let fresh = fresh_var(var, |cand| !avoid.contains(cand));
        let renamed = Substitution::single(var, sort, Term::var(&fresh, sort)).apply_formula(body);
        (fresh, sort.to_string(), inner.apply_formula(&renamed))
    }
}

fn term_mentions_var(t: &Term, name: &str) -> bool {
    match t {
        Term::Var { name: n, .. } => n == name,
        Term::Const { .. } => false,
        Term::App { args, .. } => args.iter().any(|a| term_mentions_var(a, name)),
    }
}

fn collect_term_names(t: &Term, out: &mut BTreeSet<String>) {
    match t {
        Term::Var { name, .. } | Term::Const { name } => {
            out.insert(name.clone());
        }
        Term::App { func, args } => {
            out.insert(func.clone());
            for a in args {
                collect_term_names(a, out);
            }
        }
    }
}

/// Picks a fresh variable name by priming: `y` becomes `y'`, then `y''`,
/// stopping at the first candidate `ok` accepts.
pub fn fresh_var(base: &str, ok: impl Fn(&str) -> bool) -> String {
    let mut cand = format!("{base}'");
    while !ok(&cand) {
        cand.push('\'');
    }
    cand
}

/// Picks a fresh symbol name by numeric suffix: `f`, then `f1`, `f2`, ...
/// taking the smallest unused one.
pub fn fresh_symbol(base: &str, ok: impl Fn(&str) -> bool) -> String {
    if ok(base) {
        return base.to_string();
    }
    let mut i = 1u64;
    loop {
        let cand = format!("{base}{i}");
        if ok(&cand) {
            return cand;
        }
        i += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::alpha_eq;

    fn x() -> Term {
        Term::var("x", "u")
    }

    #[test]
    fn replaces_free_occurrences_only() {
        // P(x) & all x. P(x), with x := k
        let f = Formula::and(
            Formula::atom("P", vec![x()]),
            Formula::forall("x", "u", Formula::atom("P", vec![x()])),
        );
        let s = Substitution::single("x", "u", Term::constant("k"));
        let g = s.apply(&f);
        assert_eq!(
            g,
            Formula::and(
                Formula::atom("P", vec![Term::constant("k")]),
                Formula::forall("x", "u", Formula::atom("P", vec![x()])),
            )
        );
    }

    #[test]
    fn renames_binder_to_avoid_capture() {
        // all y. R(x, y), with x := y  must not capture the image.
        let f = Formula::forall("y", "u", Formula::atom("R", vec![x(), Term::var("y", "u")]));
        let s = Substitution::single("x", "u", Term::var("y", "u"));
        let g = s.apply(&f);
        let expected = Formula::forall(
            "y'",
            "u",
            Formula::atom("R", vec![Term::var("y", "u"), Term::var("y'", "u")]),
        );
        assert_eq!(g, expected);
        // And the result is alpha-equal to substituting in an alpha-variant.
        let variant = Formula::forall(
            "z",
            "u",
            Formula::atom("R", vec![Term::var("y", "u"), Term::var("z", "u")]),
        );
        assert!(alpha_eq(&g, &variant));
    }

    #[test]
    fn sort_distinguishes_domain_keys() {
        let f = Formula::atom("P", vec![Term::var("x", "v")]);
        let s = Substitution::single("x", "u", Term::constant("k"));
        assert_eq!(s.apply(&f), f);
    }

    #[test]
    fn identity_on_formulas_without_domain_variables() {
        let f = Formula::forall("x", "u", Formula::atom("P", vec![x()]));
        let s = Substitution::single("z", "u", Term::constant("k"));
        assert_eq!(s.apply(&f), f);
    }

    #[test]
    fn checked_insert_rejects_sort_mismatch() {
        let mut sig = Signature::new();
        sig.declare_sort("u").unwrap();
        sig.declare_sort("v").unwrap();
        sig.declare_constant("k", "v").unwrap();
        let mut s = Substitution::new();
        let err = s
            .insert_checked(&sig, "x", "u", Term::constant("k"))
            .unwrap_err();
        assert!(matches!(err, SubstError::SortMismatch { .. }));
    }

    #[test]
    fn fresh_names() {
        assert_eq!(fresh_var("y", |c| c != "y'"), "y''");
        assert_eq!(fresh_symbol("f", |_| true), "f");
        assert_eq!(fresh_symbol("f", |c| c != "f" && c != "f1"), "f2");
    }
}
