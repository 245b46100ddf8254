use std::collections::BTreeSet;
use std::fmt;

use crate::signature::Signature;
use crate::subst::{fresh_symbol, Substitution};
use crate::syntax::{free_names, Formula, Term};

/// A symbol introduced by Skolemization. Existentials under at least one
/// universal become functions of the preceding universal variables; an
/// existential with no preceding universals becomes a constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkolemDecl {
    Function {
        name: String,
        args: Vec<String>,
        result: String,
    },
    Constant {
        name: String,
        sort: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skolemization {
    pub formula: Formula,
    pub decls: Vec<SkolemDecl>,
}

impl Skolemization {
    /// Extends a signature with the fresh declarations.
    pub fn extend(&self, sig: &mut Signature) -> Result<(), crate::SignatureError> {
        for d in &self.decls {
            match d {
                SkolemDecl::Function { name, args, result } => {
                    sig.declare_function(name, args, result)?
                }
                SkolemDecl::Constant { name, sort } => sig.declare_constant(name, sort)?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkolemizeError {
    NotPrenex { offender: String },
    NotClosed { var: String },
}

impl fmt::Display for SkolemizeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkolemizeError::NotPrenex { offender } => {
                write!(
                    f,
                    "formula is not in prenex form: quantifier inside `{offender}`"
                )
            }
            SkolemizeError::NotClosed { var } => {
                write!(f, "formula has free variable `{var}`")
            }
        }
    }
}

/// Skolemizes a closed prenex formula: strips each existential quantifier,
/// replacing its variable with a fresh function applied to the universally
/// quantified variables that precede it. Fresh functions are named `f`,
/// `f1`, `f2`, ... and fresh constants `c`, `c1`, ... choosing the smallest
/// suffix not already taken by the signature or by this run.
pub fn skolemize(sig: &Signature, f: &Formula) -> Result<Skolemization, SkolemizeError> {
    if let Some(v) = free_names(f).iter().find_map(|n| match n {
        crate::FreeName::Var { name, .. } => Some(name.clone()),
        _ => None,
    }) {
        return Err(SkolemizeError::NotClosed { var: v });
    }

    let mut taken: BTreeSet<String> = BTreeSet::new();
    let mut decls = Vec::new();
    let formula = go(sig, f.clone(), &mut Vec::new(), &mut taken, &mut decls)?;
    Ok(Skolemization { formula, decls })
}

fn go(
    sig: &Signature,
    f: Formula,
    universals: &mut Vec<(String, String)>,
    taken: &mut BTreeSet<String>,
    decls: &mut Vec<SkolemDecl>,
) -> Result<Formula, SkolemizeError> {
    match f {
        Formula::Forall { var, sort, body } => {
            universals.push((var.clone(), sort.clone()));
            let body = go(sig, *body, universals, taken, decls)?;
            universals.pop();
            Ok(Formula::Forall {
                var,
                sort,
                body: Box::new(body),
            })
        }
        Formula::Exists { var, sort, body } => {
            let image = if universals.is_empty() {
                let name = fresh_symbol("c", |c| !sig.has_symbol(c) && !taken.contains(c));
                taken.insert(name.clone());
                decls.push(SkolemDecl::Constant {
                    name: name.clone(),
                    sort: sort.clone(),
                });
                Term::constant(&name)
            } else {
                let name = fresh_symbol("f", |c| !sig.has_symbol(c) && !taken.contains(c));
                taken.insert(name.clone());
                decls.push(SkolemDecl::Function {
                    name: name.clone(),
                    args: universals.iter().map(|(_, s)| s.clone()).collect(),
                    result: sort.clone(),
                });
                Term::app(
                    &name,
                    universals.iter().map(|(v, s)| Term::var(v, s)).collect(),
                )
            };
            // Substitute immediately: the capture-avoiding apply keeps any
            // later binder that shadows a universal out of the image.
            let body = Substitution::single(&var, &sort, image).apply(&body);
            go(sig, body, universals, taken, decls)
        }
        matrix => {
            ensure_quantifier_free(&matrix)?;
            Ok(matrix)
        }
    }
}

fn ensure_quantifier_free(f: &Formula) -> Result<(), SkolemizeError> {
    match f {
        Formula::Atom { .. } | Formula::Falsum => Ok(()),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            ensure_quantifier_free(a)?;
            ensure_quantifier_free(b)
        }
        Formula::Forall { .. } | Formula::Exists { .. } => Err(SkolemizeError::NotPrenex {
            offender: crate::display::formula(f),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        let mut s = Signature::new();
        s.declare_sort("u").unwrap();
        s.declare_predicate("T", &["u".into(), "u".into()]).unwrap();
        s.declare_predicate("P", &["u".into()]).unwrap();
        s
    }

    #[test]
    fn forall_exists_becomes_function_of_the_universal() {
        // all x. ex y. T(x,y)  =>  all x. T(x, f(x))
        let f = Formula::forall(
            "x",
            "u",
            Formula::exists(
                "y",
                "u",
                Formula::atom("T", vec![Term::var("x", "u"), Term::var("y", "u")]),
            ),
        );
        let sk = skolemize(&sig(), &f).unwrap();
        let expected = Formula::forall(
            "x",
            "u",
            Formula::atom(
                "T",
                vec![
                    Term::var("x", "u"),
                    Term::app("f", vec![Term::var("x", "u")]),
                ],
            ),
        );
        assert_eq!(sk.formula, expected);
        assert_eq!(
            sk.decls,
            vec![SkolemDecl::Function {
                name: "f".into(),
                args: vec!["u".into()],
                result: "u".into()
            }]
        );
    }

    #[test]
    fn leading_existential_becomes_constant() {
        let f = Formula::exists("y", "u", Formula::atom("P", vec![Term::var("y", "u")]));
        let sk = skolemize(&sig(), &f).unwrap();
        assert_eq!(sk.formula, Formula::atom("P", vec![Term::constant("c")]));
        assert_eq!(
            sk.decls,
            vec![SkolemDecl::Constant {
                name: "c".into(),
                sort: "u".into()
            }]
        );
    }

    #[test]
    fn fresh_names_avoid_signature_and_earlier_picks() {
        let mut s = sig();
        s.declare_function("f", &["u".into()], "u").unwrap();
        // all x. ex y. ex z. T(y,z): both Skolem functions take x.
        let f = Formula::forall(
            "x",
            "u",
            Formula::exists(
                "y",
                "u",
                Formula::exists(
                    "z",
                    "u",
                    Formula::atom("T", vec![Term::var("y", "u"), Term::var("z", "u")]),
                ),
            ),
        );
        let sk = skolemize(&s, &f).unwrap();
        let names: Vec<&str> = sk
            .decls
            .iter()
            .map(|d| match d {
                SkolemDecl::Function { name, .. } => name.as_str(),
                SkolemDecl::Constant { name, .. } => name.as_str(),
            })
            .collect();
        assert_eq!(names, vec!["f1", "f2"]);
    }

    #[test]
    fn rejects_non_prenex() {
        // (ex y. P(y)) -> P(y) is not prenex.
        let f = Formula::implies(
            Formula::exists("y", "u", Formula::atom("P", vec![Term::var("y", "u")])),
            Formula::Falsum,
        );
        assert!(matches!(
            skolemize(&sig(), &f),
            Err(SkolemizeError::NotPrenex { .. })
        ));
    }

    #[test]
    fn rejects_open_formulas() {
        let f = Formula::atom("P", vec![Term::var("x", "u")]);
        assert!(matches!(
            skolemize(&sig(), &f),
            Err(SkolemizeError::NotClosed { .. })
        ));
    }

    #[test]
    fn no_existentials_survive() {
        let f = Formula::forall(
            "x",
            "u",
            Formula::exists(
                "y",
                "u",
                Formula::and(
                    Formula::atom("T", vec![Term::var("x", "u"), Term::var("y", "u")]),
                    Formula::exists("z", "u", Formula::atom("P", vec![Term::var("z", "u")])),
                ),
            ),
        );
        // The inner existential is inside the matrix: not prenex.
        assert!(skolemize(&sig(), &f).is_err());
    }
}
