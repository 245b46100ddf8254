//! Relevance verdicts over kernel proofs: hypotheses must feed the
//! goal and the classical absurdity rule is outside the fragment.

use logic_core::{Formula, Signature};
use proof_kernel::{assume, line, Justification, Proof, Theory};
use stoic_sequents::{relevance_check, RelevanceError};

fn theory() -> Theory {
    let mut sig = Signature::new();
    sig.declare_predicate("A", &[]).unwrap();
    sig.declare_predicate("B", &[]).unwrap();
    Theory::new(sig)
}

fn a() -> Formula {
    Formula::atom("A", vec![])
}

fn b() -> Formula {
    Formula::atom("B", vec![])
}

#[test]
fn detachment_proof_uses_its_hypothesis() {
    let hyp = Formula::and(Formula::implies(a(), b()), a());
    let goal = Formula::implies(hyp.clone(), b());
    let proof = Proof {
        goal: goal.clone(),
        body: vec![
            assume(
                "h",
                hyp,
                vec![
                    line(
                        "m1",
                        Formula::implies(a(), b()),
                        Justification::AndE1 { from: "h".into() },
                    ),
                    line("m2", a(), Justification::AndE2 { from: "h".into() }),
                    line(
                        "m3",
                        b(),
                        Justification::ImpE {
                            implication: "m1".into(),
                            antecedent: "m2".into(),
                        },
                    ),
                ],
            ),
            line("m4", goal, Justification::ImpI { block: "h".into() }),
        ],
    };
    let report = relevance_check(&theory(), &proof).unwrap();
    assert!(report.used());
    assert!(report.constructive);
    assert!(report.unused_hypotheses.is_empty());
    assert!(report.classical_lines.is_empty());
}

#[test]
fn weakening_witness_reports_the_idle_hypothesis() {
    // A -> (B -> A): the inner hypothesis B is opened and discharged
    // without ever being cited, which is weakening in kernel clothing.
    let goal = Formula::implies(a(), Formula::implies(b(), a()));
    let proof = Proof {
        goal: goal.clone(),
        body: vec![
            assume(
                "h1",
                a(),
                vec![
                    assume(
                        "h2",
                        b(),
                        vec![line("m1", a(), Justification::Reit { from: "h1".into() })],
                    ),
                    line(
                        "m2",
                        Formula::implies(b(), a()),
                        Justification::ImpI { block: "h2".into() },
                    ),
                ],
            ),
            line("m3", goal, Justification::ImpI { block: "h1".into() }),
        ],
    };
    let report = relevance_check(&theory(), &proof).unwrap();
    assert!(!report.used());
    assert!(report.constructive);
    assert_eq!(report.unused_hypotheses, vec!["h2".to_string()]);
}

#[test]
fn classical_absurdity_leaves_the_fragment() {
    // ~~A -> A uses every hypothesis, but the absurdity step alone
    // expels it from the fragment.
    let goal = Formula::implies(Formula::not(Formula::not(a())), a());
    let proof = Proof {
        goal: goal.clone(),
        body: vec![
            assume(
                "h1",
                Formula::not(Formula::not(a())),
                vec![
                    assume(
                        "h2",
                        Formula::not(a()),
                        vec![line(
                            "m1",
                            Formula::Falsum,
                            Justification::ImpE {
                                implication: "h1".into(),
                                antecedent: "h2".into(),
                            },
                        )],
                    ),
                    line("m2", a(), Justification::Raa { block: "h2".into() }),
                ],
            ),
            line("m3", goal, Justification::ImpI { block: "h1".into() }),
        ],
    };
    let report = relevance_check(&theory(), &proof).unwrap();
    assert!(!report.used());
    assert!(!report.constructive);
    assert_eq!(report.classical_lines, vec!["m2".to_string()]);
    assert!(report.unused_hypotheses.is_empty());
}

#[test]
fn dead_code_hypotheses_are_also_unused() {
    // An uncited side block never reaches the goal, so its hypothesis
    // cannot count as used even though a line inside cites it.
    let goal = Formula::implies(a(), a());
    let proof = Proof {
        goal: goal.clone(),
        body: vec![
            assume(
                "h3",
                b(),
                vec![line("d1", b(), Justification::Reit { from: "h3".into() })],
            ),
            line(
                "d2",
                Formula::implies(b(), b()),
                Justification::ImpI { block: "h3".into() },
            ),
            assume(
                "h1",
                a(),
                vec![line("m1", a(), Justification::Reit { from: "h1".into() })],
            ),
            line("m2", goal, Justification::ImpI { block: "h1".into() }),
        ],
    };
    let report = relevance_check(&theory(), &proof).unwrap();
    assert!(!report.used());
    assert_eq!(report.unused_hypotheses, vec!["h3".to_string()]);
}

#[test]
fn rejected_proofs_are_refused() {
    let proof = Proof {
        goal: a(),
        body: vec![line("m1", a(), Justification::Axiom("missing".into()))],
    };
    match relevance_check(&theory(), &proof) {
        Err(RelevanceError::NotAccepted(report)) => assert!(!report.accepted()),
        Ok(_) => panic!("expected rejection"),
    }
}
