use std::fmt;

use crate::display;
use crate::signature::Signature;
use crate::syntax::{Formula, Term};

/// A sort-checking complaint. Carries a rendering of the offending
/// subterm or subformula so reports can point at the exact culprit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortDiagnostic {
    pub offender: String,
    pub message: String,
}

impl fmt::Display for SortDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (in `{}`)", self.message, self.offender)
    }
}

fn diag(offender: impl fmt::Display, message: String) -> SortDiagnostic {
    SortDiagnostic {
        offender: offender.to_string(),
        message,
    }
}

/// Computes the sort of a term under a signature. Bound variables are
/// expected to carry their binder's sort; this only validates symbols.
pub fn term_sort(sig: &Signature, t: &Term) -> Result<String, SortDiagnostic> {
    match t {
        Term::Var { name, sort } => {
            if !sig.has_sort(sort) {
                return Err(diag(
                    t,
                    format!("variable `{name}` has undeclared sort `{sort}`"),
                ));
            }
            Ok(sort.clone())
        }
        Term::Const { name } => match sig.constant(name) {
            Some(s) => Ok(s.to_string()),
            None => Err(diag(t, format!("unknown constant `{name}`"))),
        },
        Term::App { func, args } => {
            let (arg_sorts, result) = match sig.function(func) {
                Some(f) => (f.0.to_vec(), f.1.to_string()),
                None => return Err(diag(t, format!("unknown function `{func}`"))),
            };
            if arg_sorts.len() != args.len() {
                return Err(diag(
                    t,
                    format!(
                        "function `{func}` expects {} argument(s), got {}",
                        arg_sorts.len(),
                        args.len()
                    ),
                ));
            }
            for (a, want) in args.iter().zip(&arg_sorts) {
                let got = term_sort(sig, a)?;
                if &got != want {
                    return Err(diag(
                        t,
                        format!(
                            "argument `{}` has sort `{got}`, expected `{want}`",
                            display::term(a)
                        ),
                    ));
                }
            }
            Ok(result)
        }
    }
}

/// Checks a formula against a signature, reporting every problem found
/// rather than stopping at the first. An empty error list means the
/// formula is well-sorted; free variables are permitted as long as their
/// sorts are declared.
pub fn well_sorted(sig: &Signature, f: &Formula) -> Result<(), Vec<SortDiagnostic>> {
    let mut errs = Vec::new();
    let mut bound: Vec<(String, String)> = Vec::new();
    check_formula(sig, f, &mut bound, &mut errs);
    if errs.is_empty() {
        Ok(())
    } else {
        Err(errs)
    }
}

fn check_formula(
    sig: &Signature,
    f: &Formula,
    bound: &mut Vec<(String, String)>,
    errs: &mut Vec<SortDiagnostic>,
) {
    match f {
        Formula::Atom { pred, args } => {
            let arg_sorts = match sig.predicate(pred) {
                Some(s) => s.to_vec(),
                None => {
                    errs.push(diag(
                        display::formula(f),
                        format!("unknown predicate `{pred}`"),
                    ));
                    return;
                }
            };
            if arg_sorts.len() != args.len() {
                errs.push(diag(
                    display::formula(f),
                    format!(
                        "predicate `{pred}` expects {} argument(s), got {}",
                        arg_sorts.len(),
                        args.len()
                    ),
                ));
                return;
            }
            for (a, want) in args.iter().zip(&arg_sorts) {
                check_term(sig, a, want, bound, errs);
            }
        }
        Formula::Falsum => {}
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            check_formula(sig, a, bound, errs);
            check_formula(sig, b, bound, errs);
        }
        Formula::Forall { var, sort, body } | Formula::Exists { var, sort, body } => {
            if !sig.has_sort(sort) {
                errs.push(diag(
                    display::formula(f),
                    format!("binder `{var}` has undeclared sort `{sort}`"),
                ));
            }
            bound.push((var.clone(), sort.clone()));
            check_formula(sig, body, bound, errs);
            bound.pop();
        }
    }
}

fn check_term(
    sig: &Signature,
    t: &Term,
    want: &str,
    bound: &[(String, String)],
    errs: &mut Vec<SortDiagnostic>,
) {
    match t {
        Term::Var { name, sort } => {
            // An occurrence must agree with the nearest enclosing binder of
            // the same name; free occurrences just need a declared sort.
            if let Some((_, bsort)) = bound.iter().rev().find(|(n, _)| n == name) {
                if bsort != sort {
                    errs.push(diag(
                        t,
                        format!(
                            "occurrence of `{name}` has sort `{sort}`, but its binder declares `{bsort}`"
                        ),
                    ));
                    return;
                }
            } else if !sig.has_sort(sort) {
                errs.push(diag(
                    t,
                    format!("free variable `{name}` has undeclared sort `{sort}`"),
                ));
                return;
            }
            if sort != want {
                errs.push(diag(
                    t,
                    format!("`{name}` has sort `{sort}`, expected `{want}`"),
                ));
            }
        }
        _ => match term_sort(sig, t) {
            Ok(got) => {
                if got != want {
                    errs.push(diag(t, format!("term has sort `{got}`, expected `{want}`")));
                }
            }
            Err(e) => errs.push(e),
        },
    }
}
