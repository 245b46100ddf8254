//! Indemonstrable sequent schemata and instance matching.
//!
//! The base inference shapes are configuration data, not code: a
//! schema is a list of premise templates and a conclusion template
//! over metavariables, and callers may pass any set they like to the
//! derivation checker. The default set ships the shapes that are sound
//! for exclusive disjunction read as "if one then not the other".

use std::collections::BTreeMap;

use logic_core::{alpha_eq, Formula, Term};
use proof_kernel::{TemplateFormula, TemplateTerm};

use crate::sequent::Sequent;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequentSchema {
    pub name: String,
    pub premises: Vec<TemplateFormula>,
    pub conclusion: TemplateFormula,
}

impl SequentSchema {
    pub fn new(
        name: &str,
        premises: Vec<TemplateFormula>,
        conclusion: TemplateFormula,
    ) -> SequentSchema {
        SequentSchema {
            name: name.to_string(),
            premises,
            conclusion,
        }
    }
}

/// Metavariable assignment produced by a successful match.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bindings {
    pub formulas: BTreeMap<String, Formula>,
    pub terms: BTreeMap<String, Term>,
}

/// Matches an instance sequent against a schema, trying instance
/// premises in every order: premise lists are multisets, so only the
/// counts have to line up with the templates.
pub fn match_schema(schema: &SequentSchema, instance: &Sequent) -> Option<Bindings> {
    if schema.premises.len() != instance.premises.len() {
        return None;
    }
    let mut used = vec![false; instance.premises.len()];
    let mut bindings = Bindings::default();
    if assign_premises(schema, instance, 0, &mut used, &mut bindings) {
        Some(bindings)
    } else {
        None
    }
}

/// Backtracking assignment of instance premises to premise templates.
/// Bindings are snapshotted around each trial so a failed branch leaves
/// no residue; the sets involved are tiny.
fn assign_premises(
    schema: &SequentSchema,
    instance: &Sequent,
    next: usize,
    used: &mut [bool],
    bindings: &mut Bindings,
) -> bool {
    if next == schema.premises.len() {
        let mut trial = bindings.clone();
        if match_formula(&schema.conclusion, &instance.conclusion, &mut trial) {
            *bindings = trial;
            return true;
        }
        return false;
    }
    for i in 0..instance.premises.len() {
        if used[i] {
            continue;
        }
        let mut trial = bindings.clone();
        if !match_formula(&schema.premises[next], &instance.premises[i], &mut trial) {
            continue;
        }
        used[i] = true;
        let saved = std::mem::replace(bindings, trial);
        if assign_premises(schema, instance, next + 1, used, bindings) {
            return true;
        }
        *bindings = saved;
        used[i] = false;
    }
    false
}

fn match_formula(t: &TemplateFormula, f: &Formula, b: &mut Bindings) -> bool {
    match (t, f) {
        (TemplateFormula::Hole(h), _) => match b.formulas.get(h) {
            Some(prev) => alpha_eq(prev, f),
            None => {
                b.formulas.insert(h.clone(), f.clone());
                true
            }
        },
        (TemplateFormula::Atom { pred, args }, Formula::Atom { pred: p, args: a }) => {
            pred == p
                && args.len() == a.len()
                && args.iter().zip(a).all(|(ta, fa)| match_term(ta, fa, b))
        }
        (TemplateFormula::Falsum, Formula::Falsum) => true,
        (TemplateFormula::And(x, y), Formula::And(u, v))
        | (TemplateFormula::Or(x, y), Formula::Or(u, v))
        | (TemplateFormula::Implies(x, y), Formula::Implies(u, v)) => {
            match_formula(x, u, b) && match_formula(y, v, b)
        }
        (
            TemplateFormula::Forall { var, sort, body },
            Formula::Forall {
                var: v,
                sort: s,
                body: g,
            },
        )
        | (
            TemplateFormula::Exists { var, sort, body },
            Formula::Exists {
                var: v,
                sort: s,
                body: g,
            },
        ) => var == v && sort == s && match_formula(body, g, b),
        _ => false,
    }
}

fn match_term(t: &TemplateTerm, u: &Term, b: &mut Bindings) -> bool {
    match (t, u) {
        (TemplateTerm::Hole(h), _) => match b.terms.get(h) {
            Some(prev) => prev == u,
            None => {
                b.terms.insert(h.clone(), u.clone());
                true
            }
        },
        (TemplateTerm::Var { name, sort }, Term::Var { name: n, sort: s }) => {
            name == n && sort == s
        }
        (TemplateTerm::Const(c), Term::Const { name }) => c == name,
        (TemplateTerm::App { func, args }, Term::App { func: g, args: a }) => {
            func == g
                && args.len() == a.len()
                && args.iter().zip(a).all(|(ta, fa)| match_term(ta, fa, b))
        }
        _ => false,
    }
}

fn hole(n: &str) -> TemplateFormula {
    TemplateFormula::hole(n)
}

/// Modus ponens, modus tollens, and the two sound exclusion shapes,
/// with "A xor B" carried by its encoding "A -> ~B": affirming either
/// side denies the other.
pub fn default_indemonstrables() -> Vec<SequentSchema> {
    vec![
        SequentSchema::new(
            "mp",
            vec![TemplateFormula::implies(hole("A"), hole("B")), hole("A")],
            hole("B"),
        ),
        SequentSchema::new(
            "mt",
            vec![
                TemplateFormula::implies(hole("A"), hole("B")),
                TemplateFormula::not(hole("B")),
            ],
            TemplateFormula::not(hole("A")),
        ),
        SequentSchema::new(
            "xor_left",
            vec![
                TemplateFormula::implies(hole("A"), TemplateFormula::not(hole("B"))),
                hole("A"),
            ],
            TemplateFormula::not(hole("B")),
        ),
        SequentSchema::new(
            "xor_right",
            vec![
                TemplateFormula::implies(hole("A"), TemplateFormula::not(hole("B"))),
                hole("B"),
            ],
            TemplateFormula::not(hole("A")),
        ),
    ]
}

/// Denying one side to affirm the other is unsound for the bare
/// exclusion encoding, which never says at least one side holds. This
/// opt-in shape carries the missing half as an extra premise, keeping
/// every derivable sequent classically valid.
pub fn classical_complement() -> SequentSchema {
    SequentSchema::new(
        "xor_complement",
        vec![
            TemplateFormula::implies(hole("A"), TemplateFormula::not(hole("B"))),
            TemplateFormula::implies(TemplateFormula::not(hole("A")), hole("B")),
            TemplateFormula::not(hole("A")),
        ],
        hole("B"),
    )
}

/// The default set extended with the complemented denial shape.
pub fn indemonstrables_with_complement() -> Vec<SequentSchema> {
    let mut set = default_indemonstrables();
    set.push(classical_complement());
    set
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: &str) -> Formula {
        Formula::atom(n, vec![])
    }

    fn find(name: &str) -> SequentSchema {
        indemonstrables_with_complement()
            .into_iter()
            .find(|s| s.name == name)
            .unwrap()
    }

    #[test]
    fn modus_ponens_matches_and_binds() {
        let inst = Sequent::new(vec![Formula::implies(p("P"), p("Q")), p("P")], p("Q"));
        let b = match_schema(&find("mp"), &inst).unwrap();
        assert_eq!(b.formulas["A"], p("P"));
        assert_eq!(b.formulas["B"], p("Q"));
    }

    #[test]
    fn premise_order_is_immaterial() {
        let inst = Sequent::new(vec![p("P"), Formula::implies(p("P"), p("Q"))], p("Q"));
        assert!(match_schema(&find("mp"), &inst).is_some());
    }

    #[test]
    fn inconsistent_hole_reuse_fails() {
        // A -> B with A := P forces the second premise to be P.
        let inst = Sequent::new(vec![Formula::implies(p("P"), p("Q")), p("Q")], p("Q"));
        assert!(match_schema(&find("mp"), &inst).is_none());
    }

    #[test]
    fn affirming_the_consequent_matches_nothing() {
        let inst = Sequent::new(vec![Formula::implies(p("P"), p("Q")), p("Q")], p("P"));
        for schema in indemonstrables_with_complement() {
            assert!(match_schema(&schema, &inst).is_none(), "{}", schema.name);
        }
    }

    #[test]
    fn exclusion_shapes_deny_the_other_side() {
        let xor = Formula::implies(p("P"), Formula::not(p("Q")));
        let left = Sequent::new(vec![xor.clone(), p("P")], Formula::not(p("Q")));
        let right = Sequent::new(vec![xor.clone(), p("Q")], Formula::not(p("P")));
        assert!(match_schema(&find("xor_left"), &left).is_some());
        assert!(match_schema(&find("xor_right"), &right).is_some());
        // The bare denial shape is not among the defaults.
        let denial = Sequent::new(vec![xor, Formula::not(p("P"))], p("Q"));
        for schema in default_indemonstrables() {
            assert!(match_schema(&schema, &denial).is_none(), "{}", schema.name);
        }
    }

    #[test]
    fn complement_shape_needs_all_three_premises() {
        let xor = Formula::implies(p("P"), Formula::not(p("Q")));
        let comp = Formula::implies(Formula::not(p("P")), p("Q"));
        let inst = Sequent::new(vec![xor, comp, Formula::not(p("P"))], p("Q"));
        assert!(match_schema(&find("xor_complement"), &inst).is_some());
    }
}
