//! The display grammar and the parser agree: printing any well-sorted
//! closed formula and parsing it back yields the same tree, and no
//! input text, however mangled, can make the parser panic.

use logic_core::{Formula, Signature, Term};
use proptest::prelude::*;
use script_parser::{parse_document, parse_formula};

fn sig() -> Signature {
    let mut s = Signature::new();
    s.declare_sort("u").unwrap();
    s.declare_predicate("A", &[]).unwrap();
    s.declare_predicate("B", &[]).unwrap();
    s.declare_predicate("P", &["u".to_string()]).unwrap();
    s.declare_predicate("R", &["u".to_string(), "u".to_string()])
        .unwrap();
    s.declare_constant("c", "u").unwrap();
    s.declare_constant("d", "u").unwrap();
    s.declare_function("f", &["u".to_string()], "u").unwrap();
    s
}

fn term_strategy(vars: Vec<String>) -> BoxedStrategy<Term> {
    let mut leaves: Vec<Term> = vec![Term::constant("c"), Term::constant("d")];
    for v in vars {
        leaves.push(Term::var(&v, "u"));
    }
    proptest::sample::select(leaves)
        .prop_recursive(3, 6, 1, |inner| {
            inner
                .prop_map(|t| Term::App {
                    func: "f".to_string(),
                    args: vec![t],
                })
                .boxed()
        })
        .boxed()
}

fn formula_strategy(depth: u32, vars: Vec<String>) -> BoxedStrategy<Formula> {
    let t = || term_strategy(vars.clone());
    let leaves = prop_oneof![
        Just(Formula::atom("A", vec![])),
        Just(Formula::atom("B", vec![])),
        Just(Formula::Falsum),
        t().prop_map(|x| Formula::atom("P", vec![x])),
        (t(), t()).prop_map(|(x, y)| Formula::atom("R", vec![x, y])),
        (t(), t()).prop_map(|(x, y)| Formula::atom("eq", vec![x, y])),
    ]
    .boxed();
    if depth == 0 {
        return leaves;
    }
    let sub = || formula_strategy(depth - 1, vars.clone());
    let quantified = {
        let vars = vars.clone();
        proptest::sample::select(vec!["x", "y", "z"])
            .prop_flat_map(move |v| {
                let mut inner = vars.clone();
                inner.push(v.to_string());
                (any::<bool>(), formula_strategy(depth - 1, inner)).prop_map(move |(ex, body)| {
                    if ex {
                        Formula::exists(v, "u", body)
                    } else {
                        Formula::forall(v, "u", body)
                    }
                })
            })
            .boxed()
    };
    prop_oneof![
        3 => leaves,
        1 => (sub(), sub()).prop_map(|(a, b)| Formula::and(a, b)),
        1 => (sub(), sub()).prop_map(|(a, b)| Formula::or(a, b)),
        1 => (sub(), sub()).prop_map(|(a, b)| Formula::implies(a, b)),
        1 => sub().prop_map(Formula::not),
        2 => quantified,
    ]
    .boxed()
}

proptest! {
    #[test]
    fn printed_formulas_parse_back_unchanged(f in formula_strategy(4, vec![])) {
        let sig = sig();
        let text = f.to_string();
        let parsed = parse_formula(&text, "prop.anc", &sig);
        prop_assert_eq!(parsed, Ok(f), "round-tripping {}", text);
    }

    #[test]
    fn arbitrary_text_never_panics_the_parser(s in "\\PC{0,200}") {
        let _ = parse_document(&s, "fuzz.anc");
    }
}

#[test]
fn deep_parens_are_rejected_not_overflowed() {
    let deep = format!(
        "pred A;\naxiom a1 : {}A{};",
        "(".repeat(600),
        ")".repeat(600)
    );
    let errs = parse_document(&deep, "deep.anc").unwrap_err();
    assert!(errs.iter().any(|d| d.code == "nesting"));
}

#[test]
fn deep_negation_is_rejected_not_overflowed() {
    let tildes = format!("pred A;\naxiom a1 : {}A;", "~".repeat(600));
    let errs = parse_document(&tildes, "deep.anc").unwrap_err();
    assert!(errs.iter().any(|d| d.code == "nesting"));
}

#[test]
fn deep_blocks_are_rejected_not_overflowed() {
    let blocks = format!(
        "pred A;\nproof p : A {}{}",
        "{\n".repeat(600),
        "}\n".repeat(600)
    );
    let _ = parse_document(&blocks, "deep.anc");
}

#[test]
fn garbage_fragments_do_not_panic() {
    for s in [
        "",
        ";;;",
        "sort ; pred ( ) ;",
        "proof : { by ; }",
        "axiom a : = ;",
        "derive d { t1: |- by cut; }",
        "lemma l : A { l1: A by schema [; }",
        "∀∀∀→→→⊥⊥",
        "pred A; axiom b : A |- A;",
    ] {
        let _ = parse_document(s, "g.anc");
    }
}
