//! Randomized semantic properties: the substitution lemma, alpha
//! invariance of the search, and satisfiability preservation under
//! skolemization at bounded size.

use std::collections::BTreeMap;

use logic_core::{skolemize, Formula, Signature, SkolemDecl, Substitution, Term};
use model_oracle::{entails, EntailmentVerdict, FunctionTable, Model, OracleConfig, RelationTable};
use proptest::prelude::*;

fn full_sig() -> Signature {
    let mut s = Signature::new();
    s.declare_sort("u").unwrap();
    s.declare_predicate("P", &["u".into()]).unwrap();
    s.declare_predicate("R", &["u".into(), "u".into()]).unwrap();
    s.declare_predicate("Q", &[]).unwrap();
    s.declare_predicate("eq", &["u".into(), "u".into()])
        .unwrap();
    s.declare_constant("k1", "u").unwrap();
    s.declare_constant("k2", "u").unwrap();
    s.declare_function("g", &["u".into()], "u").unwrap();
    s
}

/// Same symbols minus the function, so skolem searches stay small.
fn lean_sig() -> Signature {
    let mut s = Signature::new();
    s.declare_sort("u").unwrap();
    s.declare_predicate("P", &["u".into()]).unwrap();
    s.declare_predicate("R", &["u".into(), "u".into()]).unwrap();
    s.declare_predicate("Q", &[]).unwrap();
    s.declare_predicate("eq", &["u".into(), "u".into()])
        .unwrap();
    s.declare_constant("k1", "u").unwrap();
    s.declare_constant("k2", "u").unwrap();
    s
}

fn ground_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![Just(Term::constant("k1")), Just(Term::constant("k2"))];
    leaf.prop_recursive(3, 8, 1, |inner| inner.prop_map(|t| Term::app("g", vec![t])))
}

fn var_name() -> impl Strategy<Value = &'static str> {
    prop_oneof![Just("x"), Just("y"), Just("z")]
}

fn term() -> impl Strategy<Value = Term> {
    prop_oneof![
        3 => var_name().prop_map(|v| Term::var(v, "u")),
        2 => ground_term(),
    ]
}

fn formula() -> impl Strategy<Value = Formula> {
    let atom = prop_oneof![
        term().prop_map(|t| Formula::atom("P", vec![t])),
        (term(), term()).prop_map(|(a, b)| Formula::atom("R", vec![a, b])),
        (term(), term()).prop_map(|(a, b)| Formula::atom("eq", vec![a, b])),
        Just(Formula::atom("Q", vec![])),
        Just(Formula::Falsum),
    ];
    atom.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (var_name(), inner.clone()).prop_map(|(v, b)| Formula::forall(v, "u", b)),
            (var_name(), inner).prop_map(|(v, b)| Formula::exists(v, "u", b)),
        ]
    })
}

/// Variable-free matrix building blocks for the skolem test: every term
/// is one of the three prefix variables or a constant.
fn lean_term() -> impl Strategy<Value = Term> {
    prop_oneof![
        3 => var_name().prop_map(|v| Term::var(v, "u")),
        1 => Just(Term::constant("k1")),
        1 => Just(Term::constant("k2")),
    ]
}

fn matrix() -> impl Strategy<Value = Formula> {
    let atom = prop_oneof![
        lean_term().prop_map(|t| Formula::atom("P", vec![t])),
        (lean_term(), lean_term()).prop_map(|(a, b)| Formula::atom("R", vec![a, b])),
        (lean_term(), lean_term()).prop_map(|(a, b)| Formula::atom("eq", vec![a, b])),
        Just(Formula::atom("Q", vec![])),
    ];
    atom.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
        ]
    })
}

/// Closed prenex formulas: a three-quantifier prefix over x, y, z.
fn prenex() -> impl Strategy<Value = Formula> {
    (any::<bool>(), any::<bool>(), any::<bool>(), matrix()).prop_map(|(qx, qy, qz, m)| {
        let quantify = |e: bool, v: &str, body: Formula| {
            if e {
                Formula::exists(v, "u", body)
            } else {
                Formula::forall(v, "u", body)
            }
        };
        quantify(qx, "x", quantify(qy, "y", quantify(qz, "z", m)))
    })
}

/// Arbitrary interpretations of the full signature with |u| = 1..=3.
fn model() -> impl Strategy<Value = Model> {
    (1..=3usize).prop_flat_map(|n| {
        (
            0..n,
            0..n,
            proptest::collection::vec(0..n, n),
            proptest::collection::vec(any::<bool>(), n),
            proptest::collection::vec(any::<bool>(), n * n),
            any::<bool>(),
        )
            .prop_map(move |(k1, k2, g, p, r, q)| {
                let mut constants = BTreeMap::new();
                constants.insert("k1".to_string(), k1);
                constants.insert("k2".to_string(), k2);
                let mut functions = BTreeMap::new();
                functions.insert(
                    "g".to_string(),
                    FunctionTable {
                        arg_sizes: vec![n],
                        values: g,
                    },
                );
                let mut relations = BTreeMap::new();
                relations.insert(
                    "P".to_string(),
                    RelationTable {
                        arg_sizes: vec![n],
                        values: p,
                    },
                );
                relations.insert(
                    "R".to_string(),
                    RelationTable {
                        arg_sizes: vec![n, n],
                        values: r,
                    },
                );
                relations.insert(
                    "Q".to_string(),
                    RelationTable {
                        arg_sizes: vec![],
                        values: vec![q],
                    },
                );
                Model {
                    sizes: BTreeMap::from([("u".to_string(), n)]),
                    constants,
                    functions,
                    relations,
                }
            })
    })
}

fn rename_bound(f: &Formula, counter: &mut usize) -> Formula {
    match f {
        Formula::Atom { .. } | Formula::Falsum => f.clone(),
        Formula::And(a, b) => Formula::and(rename_bound(a, counter), rename_bound(b, counter)),
        Formula::Or(a, b) => Formula::or(rename_bound(a, counter), rename_bound(b, counter)),
        Formula::Implies(a, b) => {
            Formula::implies(rename_bound(a, counter), rename_bound(b, counter))
        }
        Formula::Forall { var, sort, body } | Formula::Exists { var, sort, body } => {
            *counter += 1;
            let fresh = format!("v{counter}");
            let renamed = Substitution::single(var, sort, Term::var(&fresh, sort)).apply(body);
            let inner = rename_bound(&renamed, counter);
            match f {
                Formula::Forall { .. } => Formula::forall(&fresh, sort, inner),
                _ => Formula::exists(&fresh, sort, inner),
            }
        }
    }
}

fn is_sat(sig: &Signature, f: &Formula) -> bool {
    let config = OracleConfig {
        max_size: 2,
        budget: 20_000_000,
    };
    match entails(sig, std::slice::from_ref(f), &Formula::Falsum, config).unwrap() {
        EntailmentVerdict::Countermodel(_) => true,
        EntailmentVerdict::ValidUpTo(_) => false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    /// eval(phi[x := t]) agrees with eval(phi) under x bound to eval(t).
    #[test]
    fn substitution_lemma(f in formula(), t in ground_term(), m in model(), ey in 0..3usize, ez in 0..3usize) {
        let sig = full_sig();
        let n = m.sizes["u"];
        let base = vec![
            ("y".to_string(), "u".to_string(), ey % n),
            ("z".to_string(), "u".to_string(), ez % n),
        ];
        let substituted = Substitution::single("x", "u", t.clone()).apply(&f);
        let lhs = m.eval_with_env(&sig, &substituted, &mut base.clone());
        let mut env = base;
        env.push(("x".to_string(), "u".to_string(), m.eval_term(&t, &[])));
        let rhs = m.eval_with_env(&sig, &f, &mut env);
        prop_assert_eq!(lhs, rhs);
    }

    /// Verdicts depend only on the formula up to renaming of binders.
    #[test]
    fn search_is_alpha_invariant(f in formula()) {
        let sig = full_sig();
        let close = |g: Formula| {
            Formula::forall("x", "u", Formula::forall("y", "u", Formula::forall("z", "u", g)))
        };
        let a = close(f.clone());
        let b = close(rename_bound(&f, &mut 0));
        let config = OracleConfig { max_size: 2, budget: 20_000_000 };
        let va = entails(&sig, &[], &a, config).unwrap();
        let vb = entails(&sig, &[], &b, config).unwrap();
        prop_assert_eq!(va, vb);
    }

    /// Skolemization neither creates nor destroys small models.
    #[test]
    fn skolemization_preserves_bounded_satisfiability(f in prenex()) {
        let sig = lean_sig();
        let sk = skolemize(&sig, &f).unwrap();
        let mut extended = sig.clone();
        for decl in &sk.decls {
            match decl {
                SkolemDecl::Function { name, args, result } => {
                    extended.declare_function(name, args, result).unwrap();
                }
                SkolemDecl::Constant { name, sort } => {
                    extended.declare_constant(name, sort).unwrap();
                }
            }
        }
        prop_assert_eq!(is_sat(&sig, &f), is_sat(&extended, &sk.formula));
    }
}
