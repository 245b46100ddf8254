//! End-to-end checker tests: two full syllogistic derivations built by
//! hand, one negative case per failure class, and the bookkeeping rules
//! around scope, discharge, and classification.

use logic_core::{Formula, Signature, Term};
use proof_kernel::{
    assume, check_proof, fix, fix_assume, line, BlockItem, Classification, FailureClass,
    Justification as J, MetaKind, Proof, SchemaArg, TemplateFormula, TemplateTerm, Theory,
    TheoryError, Verdict,
};

fn sig() -> Signature {
    let mut s = Signature::new();
    s.declare_sort("ind").unwrap();
    for p in ["A", "B", "S", "P", "R"] {
        s.declare_predicate(p, &["ind".into()]).unwrap();
    }
    for p in ["P1", "P2", "Q"] {
        s.declare_predicate(p, &[]).unwrap();
    }
    s.declare_constant("a", "ind").unwrap();
    s
}

fn at1(p: &str, t: Term) -> Formula {
    Formula::atom(p, vec![t])
}

fn at0(p: &str) -> Formula {
    Formula::atom(p, vec![])
}

fn v(x: &str) -> Term {
    Term::var(x, "ind")
}

/// all x:ind. p(x) -> ~q(x)
fn no_p_is_q(p: &str, q: &str) -> Formula {
    Formula::forall(
        "x",
        "ind",
        Formula::implies(at1(p, v("x")), Formula::not(at1(q, v("x")))),
    )
}

/// ex x:ind. p(x) & q(x)
fn some_p_is_q(p: &str, q: &str) -> Formula {
    Formula::exists("x", "ind", Formula::and(at1(p, v("x")), at1(q, v("x"))))
}

fn and_i(l: &str, r: &str) -> J {
    J::AndI {
        left: l.into(),
        right: r.into(),
    }
}
fn and_e1(f: &str) -> J {
    J::AndE1 { from: f.into() }
}
fn and_e2(f: &str) -> J {
    J::AndE2 { from: f.into() }
}
fn imp_i(b: &str) -> J {
    J::ImpI { block: b.into() }
}
fn imp_e(i: &str, a: &str) -> J {
    J::ImpE {
        implication: i.into(),
        antecedent: a.into(),
    }
}
fn raa(b: &str) -> J {
    J::Raa { block: b.into() }
}
fn all_i(b: &str) -> J {
    J::AllI { block: b.into() }
}
fn all_e(f: &str, t: Term) -> J {
    J::AllE {
        from: f.into(),
        term: t,
    }
}
fn ex_i(f: &str, t: Term) -> J {
    J::ExI {
        from: f.into(),
        witness: t,
    }
}
fn ex_e(e: &str, b: &str) -> J {
    J::ExE {
        existential: e.into(),
        block: b.into(),
    }
}
fn reit(f: &str) -> J {
    J::Reit { from: f.into() }
}
fn axiom(n: &str) -> J {
    J::Axiom(n.into())
}
fn lemma(n: &str) -> J {
    J::Lemma(n.into())
}

/// ~(all x. A(x) -> ~B(x)) -> ex x. A(x) & B(x), by reductio.
fn negated_universal_to_existential() -> Proof {
    let goal = Formula::implies(Formula::not(no_p_is_q("A", "B")), some_p_is_q("A", "B"));
    Proof {
        goal: goal.clone(),
        body: vec![
            assume(
                "h1",
                Formula::not(no_p_is_q("A", "B")),
                vec![
                    assume(
                        "h2",
                        Formula::not(some_p_is_q("A", "B")),
                        vec![
                            fix(
                                "y",
                                "ind",
                                vec![
                                    assume(
                                        "h3",
                                        at1("A", v("y")),
                                        vec![
                                            assume(
                                                "h4",
                                                at1("B", v("y")),
                                                vec![
                                                    line(
                                                        "m1",
                                                        Formula::and(
                                                            at1("A", v("y")),
                                                            at1("B", v("y")),
                                                        ),
                                                        and_i("h3", "h4"),
                                                    ),
                                                    line(
                                                        "m2",
                                                        some_p_is_q("A", "B"),
                                                        ex_i("m1", v("y")),
                                                    ),
                                                    line("m3", Formula::Falsum, imp_e("h2", "m2")),
                                                ],
                                            ),
                                            line("m4", Formula::not(at1("B", v("y"))), imp_i("h4")),
                                        ],
                                    ),
                                    line(
                                        "m5",
                                        Formula::implies(
                                            at1("A", v("y")),
                                            Formula::not(at1("B", v("y"))),
                                        ),
                                        imp_i("h3"),
                                    ),
                                ],
                            ),
                            line("m6", no_p_is_q("A", "B"), all_i("y")),
                            line("m7", Formula::Falsum, imp_e("h1", "m6")),
                        ],
                    ),
                    line("m8", some_p_is_q("A", "B"), raa("h2")),
                ],
            ),
            line("m9", goal, imp_i("h1")),
        ],
    }
}

/// No B is A -> no A is B, using the lemma above for the classical step.
fn e_conversion() -> Proof {
    let goal = Formula::implies(no_p_is_q("B", "A"), no_p_is_q("A", "B"));
    Proof {
        goal: goal.clone(),
        body: vec![
            assume(
                "l1",
                no_p_is_q("B", "A"),
                vec![
                    assume(
                        "l2",
                        Formula::not(no_p_is_q("A", "B")),
                        vec![
                            line(
                                "l3",
                                Formula::implies(
                                    Formula::not(no_p_is_q("A", "B")),
                                    some_p_is_q("A", "B"),
                                ),
                                lemma("negall_ab"),
                            ),
                            line("l4", some_p_is_q("A", "B"), imp_e("l3", "l2")),
                            fix_assume(
                                "c",
                                "ind",
                                "l5",
                                Formula::and(at1("A", v("c")), at1("B", v("c"))),
                                vec![
                                    line(
                                        "m10",
                                        Formula::implies(
                                            at1("B", v("c")),
                                            Formula::not(at1("A", v("c"))),
                                        ),
                                        all_e("l1", v("c")),
                                    ),
                                    line("m11", at1("B", v("c")), and_e2("l5")),
                                    line(
                                        "m12",
                                        Formula::not(at1("A", v("c"))),
                                        imp_e("m10", "m11"),
                                    ),
                                    line("m13", at1("A", v("c")), and_e1("l5")),
                                    line("m14", Formula::Falsum, imp_e("m12", "m13")),
                                ],
                            ),
                            line("l6", Formula::Falsum, ex_e("l4", "l5")),
                        ],
                    ),
                    line("l7", no_p_is_q("A", "B"), raa("l2")),
                ],
            ),
            line("l8", goal, imp_i("l1")),
        ],
    }
}

#[test]
fn e_conversion_checks_and_is_classical() {
    let mut theory = Theory::new(sig());
    let report = theory
        .register_lemma("negall_ab", &negated_universal_to_existential())
        .unwrap();
    assert_eq!(report.classification, Some(Classification::Classical));

    let report = check_proof(&theory, &e_conversion());
    assert!(report.accepted(), "failures: {:?}", report.failures);
    assert_eq!(report.classification, Some(Classification::Classical));
}

/// All S is P, all S is R, and something is S; so some P is R. The
/// witness is set out with ex_e, and nothing classical is needed.
fn darapti() -> Proof {
    let all_sp = Formula::forall(
        "x",
        "ind",
        Formula::implies(at1("S", v("x")), at1("P", v("x"))),
    );
    let all_sr = Formula::forall(
        "x",
        "ind",
        Formula::implies(at1("S", v("x")), at1("R", v("x"))),
    );
    let some_s = Formula::exists("x", "ind", at1("S", v("x")));
    let some_pr = some_p_is_q("P", "R");
    let goal = Formula::implies(
        some_s.clone(),
        Formula::implies(
            all_sp.clone(),
            Formula::implies(all_sr.clone(), some_pr.clone()),
        ),
    );
    Proof {
        goal: goal.clone(),
        body: vec![
            assume(
                "l1",
                some_s,
                vec![
                    assume(
                        "l2",
                        all_sp,
                        vec![
                            assume(
                                "l3",
                                all_sr.clone(),
                                vec![
                                    fix_assume(
                                        "n",
                                        "ind",
                                        "l4",
                                        at1("S", v("n")),
                                        vec![
                                            line(
                                                "m1",
                                                Formula::implies(
                                                    at1("S", v("n")),
                                                    at1("P", v("n")),
                                                ),
                                                all_e("l2", v("n")),
                                            ),
                                            line("m2", at1("P", v("n")), imp_e("m1", "l4")),
                                            line(
                                                "m3",
                                                Formula::implies(
                                                    at1("S", v("n")),
                                                    at1("R", v("n")),
                                                ),
                                                all_e("l3", v("n")),
                                            ),
                                            line("m4", at1("R", v("n")), imp_e("m3", "l4")),
                                            line(
                                                "m5",
                                                Formula::and(at1("P", v("n")), at1("R", v("n"))),
                                                and_i("m2", "m4"),
                                            ),
                                            line("m6", some_p_is_q("P", "R"), ex_i("m5", v("n"))),
                                        ],
                                    ),
                                    line("m7", some_p_is_q("P", "R"), ex_e("l1", "l4")),
                                ],
                            ),
                            line(
                                "m8",
                                Formula::implies(all_sr.clone(), some_p_is_q("P", "R")),
                                imp_i("l3"),
                            ),
                        ],
                    ),
                    line(
                        "m9",
                        Formula::implies(
                            Formula::forall(
                                "x",
                                "ind",
                                Formula::implies(at1("S", v("x")), at1("P", v("x"))),
                            ),
                            Formula::implies(all_sr, some_p_is_q("P", "R")),
                        ),
                        imp_i("l2"),
                    ),
                ],
            ),
            line("m10", goal, imp_i("l1")),
        ],
    }
}

#[test]
fn darapti_checks_and_is_constructive() {
    let theory = Theory::new(sig());
    let report = check_proof(&theory, &darapti());
    assert!(report.accepted(), "failures: {:?}", report.failures);
    assert_eq!(report.classification, Some(Classification::Constructive));
}

#[test]
fn disjunction_elimination_uses_each_case_once() {
    let mut theory = Theory::new(sig());
    theory
        .register_axiom("d", Formula::or(at0("P1"), at0("P2")))
        .unwrap();
    theory
        .register_axiom("i1", Formula::implies(at0("P1"), at0("Q")))
        .unwrap();
    theory
        .register_axiom("i2", Formula::implies(at0("P2"), at0("Q")))
        .unwrap();
    let proof = Proof {
        goal: at0("Q"),
        body: vec![
            line("l1", Formula::or(at0("P1"), at0("P2")), axiom("d")),
            assume(
                "c1",
                at0("P1"),
                vec![
                    line("m1", Formula::implies(at0("P1"), at0("Q")), axiom("i1")),
                    line("m2", at0("Q"), imp_e("m1", "c1")),
                ],
            ),
            assume(
                "c2",
                at0("P2"),
                vec![
                    line("m3", Formula::implies(at0("P2"), at0("Q")), axiom("i2")),
                    line("m4", at0("Q"), imp_e("m3", "c2")),
                ],
            ),
            line(
                "l2",
                at0("Q"),
                J::OrE {
                    disjunction: "l1".into(),
                    left: "c1".into(),
                    right: "c2".into(),
                },
            ),
        ],
    };
    let report = check_proof(&theory, &proof);
    assert!(report.accepted(), "failures: {:?}", report.failures);
    assert_eq!(report.classification, Some(Classification::Constructive));
}

#[test]
fn or_introduction_widens_either_side() {
    let mut theory = Theory::new(sig());
    theory.register_axiom("p1", at0("P1")).unwrap();
    let proof = Proof {
        goal: Formula::or(at0("Q"), at0("P1")),
        body: vec![
            line("l1", at0("P1"), axiom("p1")),
            line(
                "l2",
                Formula::or(at0("Q"), at0("P1")),
                J::OrI2 { from: "l1".into() },
            ),
        ],
    };
    assert!(check_proof(&theory, &proof).accepted());
}

#[test]
fn unknown_label_is_reported() {
    let theory = Theory::new(sig());
    let proof = Proof {
        goal: at1("A", Term::constant("a")),
        body: vec![line("l1", at1("A", Term::constant("a")), reit("nope"))],
    };
    let report = check_proof(&theory, &proof);
    assert_eq!(report.verdict, Verdict::Rejected);
    assert_eq!(
        report.primary_failure().unwrap().class(),
        FailureClass::UnknownLabel
    );
}

#[test]
fn citing_into_a_closed_block_is_a_scope_violation() {
    let theory = Theory::new(sig());
    let a = at1("A", Term::constant("a"));
    let proof = Proof {
        goal: a.clone(),
        body: vec![
            assume("h", a.clone(), vec![line("m1", a.clone(), reit("h"))]),
            line("l1", Formula::implies(a.clone(), a.clone()), imp_i("h")),
            line("l2", a, reit("m1")),
        ],
    };
    let report = check_proof(&theory, &proof);
    assert_eq!(
        report.primary_failure().unwrap().class(),
        FailureClass::ScopeViolation
    );
}

#[test]
fn a_block_is_discharged_at_most_once() {
    let theory = Theory::new(sig());
    let a = at1("A", Term::constant("a"));
    let imp = Formula::implies(a.clone(), a.clone());
    let proof = Proof {
        goal: imp.clone(),
        body: vec![
            assume("h", a.clone(), vec![line("m1", a, reit("h"))]),
            line("l1", imp.clone(), imp_i("h")),
            line("l2", imp, imp_i("h")),
        ],
    };
    let report = check_proof(&theory, &proof);
    assert_eq!(
        report.primary_failure().unwrap().class(),
        FailureClass::ScopeViolation
    );
}

#[test]
fn duplicate_labels_are_rejected() {
    let mut theory = Theory::new(sig());
    theory.register_axiom("p1", at0("P1")).unwrap();
    let proof = Proof {
        goal: at0("P1"),
        body: vec![
            line("l1", at0("P1"), axiom("p1")),
            line("l1", at0("P1"), axiom("p1")),
        ],
    };
    let report = check_proof(&theory, &proof);
    assert_eq!(
        report.primary_failure().unwrap().class(),
        FailureClass::ScopeViolation
    );
}

#[test]
fn forward_citation_is_a_scope_violation() {
    let mut theory = Theory::new(sig());
    theory.register_axiom("p1", at0("P1")).unwrap();
    let proof = Proof {
        goal: at0("P1"),
        body: vec![
            line("l1", at0("P1"), reit("l2")),
            line("l2", at0("P1"), axiom("p1")),
        ],
    };
    let report = check_proof(&theory, &proof);
    assert_eq!(
        report.primary_failure().unwrap().class(),
        FailureClass::ScopeViolation
    );
}

#[test]
fn wrong_conjunct_is_a_rule_mismatch() {
    let mut theory = Theory::new(sig());
    theory
        .register_axiom("c", Formula::and(at0("P1"), at0("P2")))
        .unwrap();
    let proof = Proof {
        goal: at0("P2"),
        body: vec![
            line("l1", Formula::and(at0("P1"), at0("P2")), axiom("c")),
            line("l2", at0("P2"), and_e1("l1")),
        ],
    };
    let report = check_proof(&theory, &proof);
    assert_eq!(
        report.primary_failure().unwrap().class(),
        FailureClass::RuleMismatch
    );
}

#[test]
fn raa_needs_a_negated_hypothesis() {
    let mut theory = Theory::new(sig());
    theory
        .register_axiom("np", Formula::not(at0("P1")))
        .unwrap();
    let proof = Proof {
        goal: at0("Q"),
        body: vec![
            assume(
                "h",
                at0("P1"),
                vec![
                    line("m1", Formula::not(at0("P1")), axiom("np")),
                    line("m2", Formula::Falsum, imp_e("m1", "h")),
                ],
            ),
            line("l1", at0("Q"), raa("h")),
        ],
    };
    let report = check_proof(&theory, &proof);
    assert_eq!(
        report.primary_failure().unwrap().class(),
        FailureClass::RuleMismatch
    );
}

#[test]
fn fixing_a_declared_symbol_is_an_eigenvariable_violation() {
    let mut theory = Theory::new(sig());
    theory
        .register_axiom("all_a", Formula::forall("x", "ind", at1("A", v("x"))))
        .unwrap();
    let goal = Formula::forall("x", "ind", at1("A", v("x")));
    let proof = Proof {
        goal: goal.clone(),
        body: vec![
            fix(
                "a",
                "ind",
                vec![
                    line(
                        "m1",
                        Formula::forall("x", "ind", at1("A", v("x"))),
                        axiom("all_a"),
                    ),
                    line("m2", at1("A", v("a")), all_e("m1", v("a"))),
                ],
            ),
            line("l1", goal, all_i("a")),
        ],
    };
    let report = check_proof(&theory, &proof);
    assert_eq!(
        report.primary_failure().unwrap().class(),
        FailureClass::EigenvariableViolation
    );
}

#[test]
fn an_escaping_witness_is_an_eigenvariable_violation() {
    let mut theory = Theory::new(sig());
    theory
        .register_axiom("some_a", Formula::exists("x", "ind", at1("A", v("x"))))
        .unwrap();
    let proof = Proof {
        goal: Formula::exists("x", "ind", at1("A", v("x"))),
        body: vec![
            line(
                "l1",
                Formula::exists("x", "ind", at1("A", v("x"))),
                axiom("some_a"),
            ),
            fix_assume(
                "c",
                "ind",
                "h",
                at1("A", v("c")),
                vec![line("m1", at1("A", v("c")), reit("h"))],
            ),
            line("l2", at1("A", v("c")), ex_e("l1", "h")),
        ],
    };
    let report = check_proof(&theory, &proof);
    assert_eq!(
        report.primary_failure().unwrap().class(),
        FailureClass::EigenvariableViolation
    );
}

#[test]
fn shadowing_a_fixed_variable_is_rejected() {
    let mut theory = Theory::new(sig());
    theory
        .register_axiom("all_a", Formula::forall("x", "ind", at1("A", v("x"))))
        .unwrap();
    let inner_goal = Formula::forall("y", "ind", at1("A", v("y")));
    let proof = Proof {
        goal: Formula::forall("x", "ind", inner_goal.clone()),
        body: vec![
            fix(
                "y",
                "ind",
                vec![
                    fix(
                        "y",
                        "ind",
                        vec![
                            line(
                                "m1",
                                Formula::forall("x", "ind", at1("A", v("x"))),
                                axiom("all_a"),
                            ),
                            line("m2", at1("A", v("y")), all_e("m1", v("y"))),
                        ],
                    ),
                    line("m3", inner_goal.clone(), all_i("y")),
                ],
            ),
            line("l1", Formula::forall("x", "ind", inner_goal), all_i("y")),
        ],
    };
    let report = check_proof(&theory, &proof);
    assert_eq!(
        report.primary_failure().unwrap().class(),
        FailureClass::EigenvariableViolation
    );
}

#[test]
fn sort_clashes_are_reported_on_the_line() {
    let mut s = sig();
    s.declare_sort("qty").unwrap();
    s.declare_constant("n", "qty").unwrap();
    let mut theory = Theory::new(s);
    theory
        .register_axiom("all_a", Formula::forall("x", "ind", at1("A", v("x"))))
        .unwrap();
    let proof = Proof {
        goal: at1("A", Term::constant("a")),
        body: vec![
            line(
                "l1",
                Formula::forall("x", "ind", at1("A", v("x"))),
                axiom("all_a"),
            ),
            line(
                "l2",
                at1("A", Term::constant("n")),
                all_e("l1", Term::constant("n")),
            ),
        ],
    };
    let report = check_proof(&theory, &proof);
    assert_eq!(
        report.primary_failure().unwrap().class(),
        FailureClass::SortError
    );
}

#[test]
fn a_proof_ending_inside_a_block_leaves_the_hypothesis_open() {
    let theory = Theory::new(sig());
    let a = at1("A", Term::constant("a"));
    let proof = Proof {
        goal: Formula::implies(a.clone(), a.clone()),
        body: vec![assume("h", a.clone(), vec![line("m1", a, reit("h"))])],
    };
    let report = check_proof(&theory, &proof);
    assert_eq!(
        report.primary_failure().unwrap().class(),
        FailureClass::OpenHypothesisAtGoal
    );
}

#[test]
fn concluding_something_else_is_a_goal_mismatch() {
    let mut theory = Theory::new(sig());
    theory.register_axiom("p1", at0("P1")).unwrap();
    let proof = Proof {
        goal: at0("P2"),
        body: vec![line("l1", at0("P1"), axiom("p1"))],
    };
    let report = check_proof(&theory, &proof);
    assert_eq!(
        report.primary_failure().unwrap().class(),
        FailureClass::GoalMismatch
    );
}

#[test]
fn extra_unused_material_does_not_break_a_proof() {
    let mut theory = Theory::new(sig());
    theory.register_axiom("p1", at0("P1")).unwrap();
    theory.register_axiom("p2", at0("P2")).unwrap();
    let proof = Proof {
        goal: at0("P1"),
        body: vec![
            line("j1", at0("P2"), axiom("p2")),
            assume("j2", at0("Q"), vec![line("j3", at0("P2"), axiom("p2"))]),
            line("l1", at0("P1"), axiom("p1")),
        ],
    };
    let report = check_proof(&theory, &proof);
    assert!(report.accepted(), "failures: {:?}", report.failures);
}

#[test]
fn stated_formulas_are_compared_up_to_bound_renaming() {
    let mut theory = Theory::new(sig());
    theory
        .register_axiom("all_a", Formula::forall("x", "ind", at1("A", v("x"))))
        .unwrap();
    let proof = Proof {
        goal: Formula::forall("x", "ind", at1("A", v("x"))),
        body: vec![line(
            "l1",
            Formula::forall("z", "ind", at1("A", v("z"))),
            axiom("all_a"),
        )],
    };
    let report = check_proof(&theory, &proof);
    assert!(report.accepted(), "failures: {:?}", report.failures);
}

#[test]
fn checking_continues_past_the_first_failure() {
    let mut theory = Theory::new(sig());
    theory.register_axiom("p1", at0("P1")).unwrap();
    let proof = Proof {
        goal: Formula::and(at0("P1"), at0("P1")),
        body: vec![
            line("l1", at0("P1"), axiom("nope")),
            line("l2", at0("P1"), axiom("p1")),
            line("l3", Formula::and(at0("P1"), at0("P1")), and_i("l1", "l2")),
        ],
    };
    let report = check_proof(&theory, &proof);
    assert_eq!(
        report.primary_failure().unwrap().class(),
        FailureClass::UnknownLabel
    );
    assert_eq!(report.failures.len(), 1);
    let l3 = report.lines.iter().find(|l| l.label == "l3").unwrap();
    assert!(l3.ok, "the and_i over the stated l1 still checks");
}

#[test]
fn lemma_registration_rejects_bad_proofs_and_keeps_them_out() {
    let mut theory = Theory::new(sig());
    let bad = Proof {
        goal: at0("P1"),
        body: vec![line("l1", at0("P1"), reit("nope"))],
    };
    let err = theory.register_lemma("bad", &bad).unwrap_err();
    assert!(matches!(err, TheoryError::RejectedProof { .. }));

    let uses_bad = Proof {
        goal: at0("P1"),
        body: vec![line("l1", at0("P1"), lemma("bad"))],
    };
    let report = check_proof(&theory, &uses_bad);
    assert_eq!(
        report.primary_failure().unwrap().class(),
        FailureClass::UnknownLabel
    );
}

#[test]
fn theory_names_are_one_namespace() {
    let mut theory = Theory::new(sig());
    theory.register_axiom("p1", at0("P1")).unwrap();
    let err = theory.register_axiom("p1", at0("P2")).unwrap_err();
    assert!(matches!(err, TheoryError::DuplicateName(_)));
    let err = theory
        .register_schema("p1", vec![], TemplateFormula::Falsum, None)
        .unwrap_err();
    assert!(matches!(err, TheoryError::DuplicateName(_)));
}

#[test]
fn axioms_must_be_closed_and_well_sorted() {
    let mut theory = Theory::new(sig());
    let err = theory.register_axiom("open", at1("A", v("x"))).unwrap_err();
    assert!(matches!(err, TheoryError::OpenFormula { .. }));
    let err = theory
        .register_axiom("bad", Formula::atom("Nope", vec![]))
        .unwrap_err();
    assert!(matches!(err, TheoryError::IllSorted { .. }));
}

/// (A -> B) -> ~B -> ~A, proved once over generic nullary atoms.
fn modus_tollens_generic_proof() -> Proof {
    let a = at0("MA");
    let b = at0("MB");
    let goal = Formula::implies(
        Formula::implies(a.clone(), b.clone()),
        Formula::implies(Formula::not(b.clone()), Formula::not(a.clone())),
    );
    Proof {
        goal,
        body: vec![
            assume(
                "h1",
                Formula::implies(a.clone(), b.clone()),
                vec![
                    assume(
                        "h2",
                        Formula::not(b.clone()),
                        vec![
                            assume(
                                "h3",
                                a.clone(),
                                vec![
                                    line("m1", b.clone(), imp_e("h1", "h3")),
                                    line("m2", Formula::Falsum, imp_e("h2", "m1")),
                                ],
                            ),
                            line("m3", Formula::not(a.clone()), imp_i("h3")),
                        ],
                    ),
                    line(
                        "m4",
                        Formula::implies(Formula::not(b.clone()), Formula::not(a.clone())),
                        imp_i("h2"),
                    ),
                ],
            ),
            line(
                "m5",
                Formula::implies(
                    Formula::implies(a.clone(), b),
                    Formula::implies(Formula::not(at0("MB")), Formula::not(a)),
                ),
                imp_i("h1"),
            ),
        ],
    }
}

fn modus_tollens_template() -> (Vec<(String, MetaKind)>, TemplateFormula) {
    let a = TemplateFormula::hole("MA");
    let b = TemplateFormula::hole("MB");
    let template = TemplateFormula::implies(
        TemplateFormula::implies(a.clone(), b.clone()),
        TemplateFormula::implies(TemplateFormula::not(b), TemplateFormula::not(a)),
    );
    (
        vec![
            ("MA".into(), MetaKind::Formula),
            ("MB".into(), MetaKind::Formula),
        ],
        template,
    )
}

#[test]
fn a_schema_with_a_generic_proof_counts_as_derived() {
    let mut theory = Theory::new(sig());
    let (params, template) = modus_tollens_template();
    let report = theory
        .register_schema("mt", params, template, Some(&modus_tollens_generic_proof()))
        .unwrap()
        .unwrap();
    assert_eq!(report.classification, Some(Classification::Constructive));

    theory
        .register_axiom("i1", Formula::implies(at0("P1"), at0("Q")))
        .unwrap();
    theory.register_axiom("nq", Formula::not(at0("Q"))).unwrap();
    let proof = Proof {
        goal: Formula::not(at0("P1")),
        body: vec![
            line(
                "l1",
                Formula::implies(
                    Formula::implies(at0("P1"), at0("Q")),
                    Formula::implies(Formula::not(at0("Q")), Formula::not(at0("P1"))),
                ),
                J::SchemaUse {
                    name: "mt".into(),
                    args: vec![SchemaArg::Formula(at0("P1")), SchemaArg::Formula(at0("Q"))],
                },
            ),
            line("l2", Formula::implies(at0("P1"), at0("Q")), axiom("i1")),
            line(
                "l3",
                Formula::implies(Formula::not(at0("Q")), Formula::not(at0("P1"))),
                imp_e("l1", "l2"),
            ),
            line("l4", Formula::not(at0("Q")), axiom("nq")),
            line("l5", Formula::not(at0("P1")), imp_e("l3", "l4")),
        ],
    };
    let report = check_proof(&theory, &proof);
    assert!(report.accepted(), "failures: {:?}", report.failures);
    assert_eq!(report.classification, Some(Classification::Constructive));
}

#[test]
fn schema_generic_proofs_must_prove_the_template() {
    let mut theory = Theory::new(sig());
    let (params, template) = modus_tollens_template();
    let wrong = Proof {
        goal: at0("P1"),
        body: vec![line("l1", at0("P1"), reit("l1"))],
    };
    let err = theory
        .register_schema("mt", params, template, Some(&wrong))
        .unwrap_err();
    assert!(matches!(err, TheoryError::SchemaGoalMismatch { .. }));
}

#[test]
fn unproven_schema_instances_still_check() {
    let mut s = sig();
    s.declare_predicate("eq", &["ind".into(), "ind".into()])
        .unwrap();
    s.declare_constant("b", "ind").unwrap();
    let mut theory = Theory::new(s);
    let hx = || TemplateTerm::Hole("hx".into());
    let hy = || TemplateTerm::Hole("hy".into());
    theory
        .register_schema(
            "eqsym",
            vec![
                ("hx".into(), MetaKind::Term("ind".into())),
                ("hy".into(), MetaKind::Term("ind".into())),
            ],
            TemplateFormula::implies(
                TemplateFormula::atom("eq", vec![hx(), hy()]),
                TemplateFormula::atom("eq", vec![hy(), hx()]),
            ),
            None,
        )
        .unwrap();
    let eq = |l: Term, r: Term| Formula::atom("eq", vec![l, r]);
    let proof = Proof {
        goal: Formula::implies(
            eq(Term::constant("a"), Term::constant("b")),
            eq(Term::constant("b"), Term::constant("a")),
        ),
        body: vec![line(
            "l1",
            Formula::implies(
                eq(Term::constant("a"), Term::constant("b")),
                eq(Term::constant("b"), Term::constant("a")),
            ),
            J::SchemaUse {
                name: "eqsym".into(),
                args: vec![
                    SchemaArg::Term(Term::constant("a")),
                    SchemaArg::Term(Term::constant("b")),
                ],
            },
        )],
    };
    let report = check_proof(&theory, &proof);
    assert!(report.accepted(), "failures: {:?}", report.failures);
}

#[test]
fn classical_lemmas_infect_their_users() {
    let mut theory = Theory::new(sig());
    // P1 | ~P1, by reductio.
    let lem = Formula::or(at0("P1"), Formula::not(at0("P1")));
    let proof = Proof {
        goal: lem.clone(),
        body: vec![
            assume(
                "h1",
                Formula::not(lem.clone()),
                vec![
                    assume(
                        "h2",
                        at0("P1"),
                        vec![
                            line("m1", lem.clone(), J::OrI1 { from: "h2".into() }),
                            line("m2", Formula::Falsum, imp_e("h1", "m1")),
                        ],
                    ),
                    line("m3", Formula::not(at0("P1")), imp_i("h2")),
                    line("m4", lem.clone(), J::OrI2 { from: "m3".into() }),
                    line("m5", Formula::Falsum, imp_e("h1", "m4")),
                ],
            ),
            line("l1", lem.clone(), raa("h1")),
        ],
    };
    let report = theory.register_lemma("excl", &proof).unwrap();
    assert_eq!(report.classification, Some(Classification::Classical));

    let user = Proof {
        goal: lem.clone(),
        body: vec![line("l1", lem, lemma("excl"))],
    };
    let report = check_proof(&theory, &user);
    assert!(report.accepted());
    assert_eq!(report.classification, Some(Classification::Classical));
}
