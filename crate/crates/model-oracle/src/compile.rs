//! Compiled formulas for the search loop.
//!
//! Symbols are resolved to dense indices once per query, and candidate
//! interpretations live in a single flat digit array, so evaluating a
//! formula against a candidate allocates nothing and touches no string.

use logic_core::{Formula, Signature, Term};

/// Dense index of the signature's symbols. Orderings follow the
/// signature's own map order, so they are stable for a given signature.
pub struct Atlas {
    pub sorts: Vec<String>,
    /// (name, sort index) per constant.
    pub consts: Vec<(String, usize)>,
    /// (name, argument sort indices, result sort index) per function.
    pub funs: Vec<(String, Vec<usize>, usize)>,
    /// (name, argument sort indices) per relation; equality is omitted.
    pub rels: Vec<(String, Vec<usize>)>,
}

impl Atlas {
    pub fn new(sig: &Signature) -> Atlas {
        let sorts: Vec<String> = sig.sorts().map(str::to_string).collect();
        let sort_idx = |name: &str| sorts.iter().position(|s| s == name).expect("declared sort");
        let consts = sig
            .constants()
            .map(|(n, s)| (n.to_string(), sort_idx(s)))
            .collect();
        let funs = sig
            .functions()
            .map(|(n, args, res)| {
                let args = args.iter().map(|s| sort_idx(s)).collect();
                (n.to_string(), args, sort_idx(res))
            })
            .collect();
        let rels = sig
            .predicates()
            .filter(|(n, _)| !sig.is_equality_predicate(n))
            .map(|(n, args)| {
                let args = args.iter().map(|s| sort_idx(s)).collect();
                (n.to_string(), args)
            })
            .collect();
        Atlas {
            sorts,
            consts,
            funs,
            rels,
        }
    }

    fn const_index(&self, name: &str) -> usize {
        self.consts
            .iter()
            .position(|(n, _)| n == name)
            .expect("declared constant")
    }

    fn fun_index(&self, name: &str) -> usize {
        self.funs
            .iter()
            .position(|(n, _, _)| n == name)
            .expect("declared function")
    }

    fn rel_index(&self, name: &str) -> usize {
        self.rels
            .iter()
            .position(|(n, _)| n == name)
            .expect("declared relation")
    }

    fn sort_index(&self, name: &str) -> usize {
        self.sorts
            .iter()
            .position(|s| s == name)
            .expect("declared sort")
    }
}

pub enum CTerm {
    /// De Bruijn level: index into the quantifier environment from the
    /// bottom.
    Slot(usize),
    Const(usize),
    App {
        fun: usize,
        args: Vec<CTerm>,
    },
}

pub enum CFormula {
    Atom { rel: usize, args: Vec<CTerm> },
    Eq(Box<CTerm>, Box<CTerm>),
    Falsum,
    And(Box<CFormula>, Box<CFormula>),
    Or(Box<CFormula>, Box<CFormula>),
    Implies(Box<CFormula>, Box<CFormula>),
    Forall { sort: usize, body: Box<CFormula> },
    Exists { sort: usize, body: Box<CFormula> },
}

/// Compiles a formula already known to be well sorted and closed.
pub fn compile(atlas: &Atlas, sig: &Signature, f: &Formula) -> CFormula {
    let mut binders = Vec::new();
    go(atlas, sig, f, &mut binders)
}

fn go(
    atlas: &Atlas,
    sig: &Signature,
    f: &Formula,
    binders: &mut Vec<(String, String)>,
) -> CFormula {
    match f {
        Formula::Atom { pred, args } => {
            let cargs: Vec<CTerm> = args.iter().map(|t| go_term(atlas, t, binders)).collect();
            if sig.is_equality_predicate(pred) {
                let mut it = cargs.into_iter();
                let a = it.next().expect("binary equality");
                let b = it.next().expect("binary equality");
                CFormula::Eq(Box::new(a), Box::new(b))
            } else {
                CFormula::Atom {
                    rel: atlas.rel_index(pred),
                    args: cargs,
                }
            }
        }
        Formula::Falsum => CFormula::Falsum,
        Formula::And(a, b) => CFormula::And(
            Box::new(go(atlas, sig, a, binders)),
            Box::new(go(atlas, sig, b, binders)),
        ),
        Formula::Or(a, b) => CFormula::Or(
            Box::new(go(atlas, sig, a, binders)),
            Box::new(go(atlas, sig, b, binders)),
        ),
        Formula::Implies(a, b) => CFormula::Implies(
            Box::new(go(atlas, sig, a, binders)),
            Box::new(go(atlas, sig, b, binders)),
        ),
        Formula::Forall { var, sort, body } => {
            binders.push((var.clone(), sort.clone()));
            let body = go(atlas, sig, body, binders);
            binders.pop();
            CFormula::Forall {
                sort: atlas.sort_index(sort),
                body: Box::new(body),
            }
        }
        Formula::Exists { var, sort, body } => {
            binders.push((var.clone(), sort.clone()));
            let body = go(atlas, sig, body, binders);
            binders.pop();
            CFormula::Exists {
                sort: atlas.sort_index(sort),
                body: Box::new(body),
            }
        }
    }
}

fn go_term(atlas: &Atlas, t: &Term, binders: &[(String, String)]) -> CTerm {
    match t {
        Term::Var { name, sort } => {
            let slot = binders
                .iter()
                .rposition(|(n, s)| n == name && s == sort)
                .expect("closed formula");
            CTerm::Slot(slot)
        }
        Term::Const { name } => CTerm::Const(atlas.const_index(name)),
        Term::App { func, args } => CTerm::App {
            fun: atlas.fun_index(func),
            args: args.iter().map(|a| go_term(atlas, a, binders)).collect(),
        },
    }
}

/// Cell layout of one candidate interpretation for given sort sizes:
/// first a digit per constant, then every function cell, then every
/// relation cell, each group in atlas order and row-major within a
/// table. `radices[i]` bounds `digits[i]`.
pub struct Layout {
    pub sizes: Vec<usize>,
    pub radices: Vec<usize>,
    const_off: usize,
    fun_offs: Vec<usize>,
    fun_arg_sizes: Vec<Vec<usize>>,
    rel_offs: Vec<usize>,
    rel_arg_sizes: Vec<Vec<usize>>,
}

impl Layout {
    pub fn new(atlas: &Atlas, sizes: &[usize]) -> Layout {
        let mut radices = Vec::new();
        let const_off = 0;
        for (_, sort) in &atlas.consts {
            radices.push(sizes[*sort]);
        }
        let mut fun_offs = Vec::new();
        let mut fun_arg_sizes = Vec::new();
        for (_, args, res) in &atlas.funs {
            fun_offs.push(radices.len());
            let arg_sizes: Vec<usize> = args.iter().map(|s| sizes[*s]).collect();
            let cells: usize = arg_sizes.iter().product();
            radices.extend(std::iter::repeat(sizes[*res]).take(cells));
            fun_arg_sizes.push(arg_sizes);
        }
        let mut rel_offs = Vec::new();
        let mut rel_arg_sizes = Vec::new();
        for (_, args) in &atlas.rels {
            rel_offs.push(radices.len());
            let arg_sizes: Vec<usize> = args.iter().map(|s| sizes[*s]).collect();
            let cells: usize = arg_sizes.iter().product();
            radices.extend(std::iter::repeat(2).take(cells));
            rel_arg_sizes.push(arg_sizes);
        }
        Layout {
            sizes: sizes.to_vec(),
            radices,
            const_off,
            fun_offs,
            fun_arg_sizes,
            rel_offs,
            rel_arg_sizes,
        }
    }

    fn flatten(arg_sizes: &[usize], args: &[usize]) -> usize {
        let mut idx = 0;
        for (a, s) in args.iter().zip(arg_sizes) {
            idx = idx * s + a;
        }
        idx
    }

    pub fn constant(&self, digits: &[usize], c: usize) -> usize {
        digits[self.const_off + c]
    }

    pub fn apply(&self, digits: &[usize], fun: usize, args: &[usize]) -> usize {
        digits[self.fun_offs[fun] + Self::flatten(&self.fun_arg_sizes[fun], args)]
    }

    pub fn holds(&self, digits: &[usize], rel: usize, args: &[usize]) -> bool {
        digits[self.rel_offs[rel] + Self::flatten(&self.rel_arg_sizes[rel], args)] == 1
    }
}

pub fn eval(layout: &Layout, digits: &[usize], f: &CFormula, env: &mut Vec<usize>) -> bool {
    match f {
        CFormula::Atom { rel, args } => {
            let vals: Vec<usize> = args
                .iter()
                .map(|t| eval_term(layout, digits, t, env))
                .collect();
            layout.holds(digits, *rel, &vals)
        }
        CFormula::Eq(a, b) => {
            eval_term(layout, digits, a, env) == eval_term(layout, digits, b, env)
        }
        CFormula::Falsum => false,
        CFormula::And(a, b) => eval(layout, digits, a, env) && eval(layout, digits, b, env),
        CFormula::Or(a, b) => eval(layout, digits, a, env) || eval(layout, digits, b, env),
        CFormula::Implies(a, b) => !eval(layout, digits, a, env) || eval(layout, digits, b, env),
        CFormula::Forall { sort, body } => {
            let n = layout.sizes[*sort];
            for e in 0..n {
                env.push(e);
                let v = eval(layout, digits, body, env);
                env.pop();
                if !v {
                    return false;
                }
            }
            true
        }
        CFormula::Exists { sort, body } => {
            let n = layout.sizes[*sort];
            for e in 0..n {
                env.push(e);
                let v = eval(layout, digits, body, env);
                env.pop();
                if v {
                    return true;
                }
            }
            false
        }
    }
}

fn eval_term(layout: &Layout, digits: &[usize], t: &CTerm, env: &mut Vec<usize>) -> usize {
    match t {
        CTerm::Slot(i) => env[*i],
        CTerm::Const(c) => layout.constant(digits, *c),
        CTerm::App { fun, args } => {
            let vals: Vec<usize> = args
                .iter()
                .map(|a| eval_term(layout, digits, a, env))
                .collect();
            layout.apply(digits, *fun, &vals)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        let mut s = Signature::new();
        s.declare_sort("u").unwrap();
        s.declare_predicate("P", &["u".into()]).unwrap();
        s.declare_predicate("eq", &["u".into(), "u".into()])
            .unwrap();
        s.declare_constant("c", "u").unwrap();
        s.declare_function("f", &["u".into()], "u").unwrap();
        s
    }

    #[test]
    fn layout_packs_constants_functions_then_relations() {
        let s = sig();
        let atlas = Atlas::new(&s);
        let layout = Layout::new(&atlas, &[2]);
        // c, f(0), f(1), P(0), P(1); eq has no cells.
        assert_eq!(layout.radices, vec![2, 2, 2, 2, 2]);
    }

    #[test]
    fn compiled_and_direct_views_agree_on_a_candidate() {
        let s = sig();
        let atlas = Atlas::new(&s);
        let layout = Layout::new(&atlas, &[2]);
        // c = 1, f = swap, P = {0}.
        let digits = vec![1, 1, 0, 1, 0];
        let f = Formula::forall(
            "x",
            "u",
            Formula::implies(
                Formula::atom("P", vec![Term::var("x", "u")]),
                Formula::not(Formula::atom(
                    "eq",
                    vec![
                        Term::app("f", vec![Term::var("x", "u")]),
                        Term::var("x", "u"),
                    ],
                )),
            ),
        );
        let c = compile(&atlas, &s, &f);
        assert!(eval(&layout, &digits, &c, &mut Vec::new()));
        // P(c) is false since c = 1.
        let pc = Formula::atom("P", vec![Term::constant("c")]);
        let c = compile(&atlas, &s, &pc);
        assert!(!eval(&layout, &digits, &c, &mut Vec::new()));
    }
}
