//! Finite models over explicit element tables.
//!
//! Every sort gets the domain {0, .., size-1} for its own size. The
//! equality predicate is interpreted as identity of elements and never
//! carries a table. Evaluation here is the slow, direct reading of the
//! definitions; the search path in this crate uses a compiled form, and
//! any countermodel it finds is re-checked against this one.

use logic_core::{Formula, Signature, Term};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionTable {
    /// Domain sizes of the argument sorts, in argument order.
    pub arg_sizes: Vec<usize>,
    /// Row-major: the first argument varies slowest.
    pub values: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTable {
    pub arg_sizes: Vec<usize>,
    pub values: Vec<bool>,
}

fn flatten(arg_sizes: &[usize], args: &[usize]) -> usize {
    let mut idx = 0;
    for (a, s) in args.iter().zip(arg_sizes) {
        idx = idx * s + a;
    }
    idx
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    pub sizes: BTreeMap<String, usize>,
    pub constants: BTreeMap<String, usize>,
    pub functions: BTreeMap<String, FunctionTable>,
    pub relations: BTreeMap<String, RelationTable>,
}

impl Model {
    /// Evaluates a closed formula.
    pub fn eval(&self, sig: &Signature, f: &Formula) -> bool {
        self.eval_with_env(sig, f, &mut Vec::new())
    }

    /// Evaluates under an environment binding free variables, given as
    /// (name, sort, element) triples; inner bindings shadow outer ones.
    pub fn eval_with_env(
        &self,
        sig: &Signature,
        f: &Formula,
        env: &mut Vec<(String, String, usize)>,
    ) -> bool {
        match f {
            Formula::Atom { pred, args } => {
                let vals: Vec<usize> = args.iter().map(|t| self.eval_term(t, env)).collect();
                if sig.is_equality_predicate(pred) {
                    return vals[0] == vals[1];
                }
                let table = self
                    .relations
                    .get(pred)
                    .unwrap_or_else(|| panic!("model has no relation {pred}"));
                table.values[flatten(&table.arg_sizes, &vals)]
            }
            Formula::Falsum => false,
            Formula::And(a, b) => {
                self.eval_with_env(sig, a, env) && self.eval_with_env(sig, b, env)
            }
            Formula::Or(a, b) => self.eval_with_env(sig, a, env) || self.eval_with_env(sig, b, env),
            Formula::Implies(a, b) => {
                !self.eval_with_env(sig, a, env) || self.eval_with_env(sig, b, env)
            }
            Formula::Forall { var, sort, body } => {
                let n = self.sizes[sort];
                (0..n).all(|e| {
                    env.push((var.clone(), sort.clone(), e));
                    let v = self.eval_with_env(sig, body, env);
                    env.pop();
                    v
                })
            }
            Formula::Exists { var, sort, body } => {
                let n = self.sizes[sort];
                (0..n).any(|e| {
                    env.push((var.clone(), sort.clone(), e));
                    let v = self.eval_with_env(sig, body, env);
                    env.pop();
                    v
                })
            }
        }
    }

    pub fn eval_term(&self, t: &Term, env: &[(String, String, usize)]) -> usize {
        match t {
            Term::Var { name, sort } => {
                env.iter()
                    .rev()
                    .find(|(n, s, _)| n == name && s == sort)
                    .unwrap_or_else(|| panic!("unbound variable {name}:{sort}"))
                    .2
            }
            Term::Const { name } => self.constants[name],
            Term::App { func, args } => {
                let vals: Vec<usize> = args.iter().map(|a| self.eval_term(a, env)).collect();
                let table = &self.functions[func];
                table.values[flatten(&table.arg_sizes, &vals)]
            }
        }
    }
}

/// Unflattens `idx` into argument values, row-major.
fn tuple_at(arg_sizes: &[usize], mut idx: usize) -> Vec<usize> {
    let mut out = vec![0; arg_sizes.len()];
    for (slot, s) in out.iter_mut().zip(arg_sizes).rev() {
        *slot = idx % s;
        idx /= s;
    }
    out
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (sort, n) in &self.sizes {
            writeln!(f, "|{sort}| = {n}")?;
        }
        for (name, v) in &self.constants {
            writeln!(f, "{name} = {v}")?;
        }
        for (name, table) in &self.functions {
            for (idx, v) in table.values.iter().enumerate() {
                let args = tuple_at(&table.arg_sizes, idx);
                let args: Vec<String> = args.iter().map(usize::to_string).collect();
                writeln!(f, "{name}({}) = {v}", args.join(", "))?;
            }
        }
        for (name, table) in &self.relations {
            if table.arg_sizes.is_empty() {
                writeln!(f, "{name} = {}", table.values[0])?;
                continue;
            }
            let mut members = Vec::new();
            for (idx, v) in table.values.iter().enumerate() {
                if !v {
                    continue;
                }
                let args = tuple_at(&table.arg_sizes, idx);
                let args: Vec<String> = args.iter().map(usize::to_string).collect();
                if table.arg_sizes.len() == 1 {
                    members.push(args.join(""));
                } else {
                    members.push(format!("({})", args.join(", ")));
                }
            }
            writeln!(f, "{name} = {{{}}}", members.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        let mut s = Signature::new();
        s.declare_sort("u").unwrap();
        s.declare_predicate("P", &["u".into()]).unwrap();
        s.declare_predicate("T", &["u".into(), "u".into()]).unwrap();
        s.declare_predicate("eq", &["u".into(), "u".into()])
            .unwrap();
        s.declare_constant("c", "u").unwrap();
        s.declare_function("f", &["u".into()], "u").unwrap();
        s
    }

    fn two_element_model() -> Model {
        let mut sizes = BTreeMap::new();
        sizes.insert("u".to_string(), 2);
        let mut constants = BTreeMap::new();
        constants.insert("c".to_string(), 1);
        let mut functions = BTreeMap::new();
        functions.insert(
            "f".to_string(),
            FunctionTable {
                arg_sizes: vec![2],
                values: vec![1, 0],
            },
        );
        let mut relations = BTreeMap::new();
        relations.insert(
            "P".to_string(),
            RelationTable {
                arg_sizes: vec![2],
                values: vec![true, false],
            },
        );
        relations.insert(
            "T".to_string(),
            RelationTable {
                arg_sizes: vec![2, 2],
                values: vec![false, true, false, false],
            },
        );
        Model {
            sizes,
            constants,
            functions,
            relations,
        }
    }

    #[test]
    fn evaluates_terms_and_atoms() {
        let m = two_element_model();
        let s = sig();
        // f(c) = f(1) = 0, and P(0) holds.
        let f = Formula::atom("P", vec![Term::app("f", vec![Term::constant("c")])]);
        assert!(m.eval(&s, &f));
        // T(0, 1) holds, T(1, 1) does not.
        assert!(m.eval(
            &s,
            &Formula::atom(
                "T",
                vec![
                    Term::app("f", vec![Term::constant("c")]),
                    Term::constant("c")
                ]
            )
        ));
        assert!(!m.eval(
            &s,
            &Formula::atom("T", vec![Term::constant("c"), Term::constant("c")])
        ));
    }

    #[test]
    fn equality_is_identity() {
        let m = two_element_model();
        let s = sig();
        let refl = Formula::forall(
            "x",
            "u",
            Formula::atom("eq", vec![Term::var("x", "u"), Term::var("x", "u")]),
        );
        assert!(m.eval(&s, &refl));
        let all_equal = Formula::forall(
            "x",
            "u",
            Formula::forall(
                "y",
                "u",
                Formula::atom("eq", vec![Term::var("x", "u"), Term::var("y", "u")]),
            ),
        );
        assert!(!m.eval(&s, &all_equal));
    }

    #[test]
    fn quantifiers_range_over_the_domain() {
        let m = two_element_model();
        let s = sig();
        let some_p = Formula::exists("x", "u", Formula::atom("P", vec![Term::var("x", "u")]));
        let all_p = Formula::forall("x", "u", Formula::atom("P", vec![Term::var("x", "u")]));
        assert!(m.eval(&s, &some_p));
        assert!(!m.eval(&s, &all_p));
    }

    #[test]
    fn display_lists_every_table() {
        let m = two_element_model();
        let text = m.to_string();
        assert_eq!(
            text,
            "|u| = 2\nc = 1\nf(0) = 1\nf(1) = 0\nP = {0}\nT = {(0, 1)}\n"
        );
    }
}
