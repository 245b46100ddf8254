//! The proof checker.
//!
//! Checking walks the proof once, front to back. Scope is a stack of
//! frames, one per open block; a line may cite any earlier line in an
//! open frame, and may discharge any completed block registered in an
//! open frame, each block at most once. Every recorded failure names
//! the line it occurred on, and checking continues past failures by
//! trusting each stated formula, so the first failure is the real one
//! and later reports are still meaningful.

use crate::proof::{Block, BlockItem, Justification, Line, Proof};
use crate::report::{CheckReport, Classification, Failure, LineReport, Verdict};
use crate::schema::{SchemaArg, SchemaError};
use crate::theory::Theory;
use indexmap::IndexMap;
use logic_core::{
    alpha_eq, free_names, term_sort, well_sorted, Formula, FreeName, SortDiagnostic, Substitution,
    Term,
};
use std::collections::BTreeSet;

pub fn check_proof(theory: &Theory, proof: &Proof) -> CheckReport {
    let mut ck = Checker {
        theory,
        frames: vec![Frame::new(None)],
        failures: Vec::new(),
        lines: Vec::new(),
        classical: false,
        all_labels: collect_labels(&proof.body),
    };

    if let Err(diags) = well_sorted(theory.signature(), &proof.goal) {
        ck.fail(Failure::SortError {
            at: "<goal>".into(),
            diagnostics: diags,
        });
    }
    for (name, sort) in free_vars(&proof.goal) {
        ck.fail(Failure::EigenvariableViolation {
            at: "<goal>".into(),
            var: name,
            detail: format!("goal has a free variable of sort {sort}"),
        });
    }

    match ck.check_items(&proof.body) {
        None => {
            let detail = match proof.body.last() {
                Some(BlockItem::Block(b)) => match b.citation_key() {
                    Some(k) => format!("the proof ends inside block '{k}'"),
                    None => "the proof ends inside a block".to_string(),
                },
                _ => "the proof has no concluding line".to_string(),
            };
            ck.fail(Failure::OpenHypothesisAtGoal { detail });
        }
        Some(conclusion) => {
            if !alpha_eq(&conclusion, &proof.goal) {
                ck.fail(Failure::GoalMismatch {
                    stated: conclusion,
                    goal: proof.goal.clone(),
                });
            }
        }
    }

    let verdict = if ck.failures.is_empty() {
        Verdict::Accepted
    } else {
        Verdict::Rejected
    };
    let classification = match verdict {
        Verdict::Accepted => Some(if ck.classical {
            Classification::Classical
        } else {
            Classification::Constructive
        }),
        Verdict::Rejected => None,
    };
    CheckReport {
        verdict,
        classification,
        failures: ck.failures,
        lines: ck.lines,
    }
}

struct BlockRecord {
    eigen: Option<(String, String)>,
    hypothesis: Option<(String, Formula)>,
    conclusion: Option<Formula>,
    used: bool,
}

struct Frame {
    labels: IndexMap<String, Formula>,
    blocks: IndexMap<String, BlockRecord>,
    eigen: Option<(String, String)>,
}

impl Frame {
    fn new(eigen: Option<(String, String)>) -> Self {
        Frame {
            labels: IndexMap::new(),
            blocks: IndexMap::new(),
            eigen,
        }
    }
}

struct Checker<'a> {
    theory: &'a Theory,
    frames: Vec<Frame>,
    failures: Vec<Failure>,
    lines: Vec<LineReport>,
    classical: bool,
    /// Every label defined anywhere in the proof, used to tell a cite of
    /// something out of scope from a cite of something that never exists.
    all_labels: BTreeSet<String>,
}

fn collect_labels(items: &[BlockItem]) -> BTreeSet<String> {
    fn walk(items: &[BlockItem], out: &mut BTreeSet<String>) {
        for item in items {
            match item {
                BlockItem::Line(l) => {
                    out.insert(l.label.clone());
                }
                BlockItem::Block(b) => {
                    if let Some((l, _)) = &b.hypothesis {
                        out.insert(l.clone());
                    }
                    if let Some((n, _)) = &b.eigen {
                        out.insert(n.clone());
                    }
                    walk(&b.items, out);
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    walk(items, &mut out);
    out
}

fn free_vars(f: &Formula) -> Vec<(String, String)> {
    free_names(f)
        .into_iter()
        .filter_map(|n| match n {
            FreeName::Var { name, sort } => Some((name, sort)),
            FreeName::Const(_) => None,
        })
        .collect()
}

fn term_free_vars(t: &Term) -> Vec<(String, String)> {
    free_vars(&Formula::atom("__probe", vec![t.clone()]))
}

impl<'a> Checker<'a> {
    fn fail(&mut self, f: Failure) {
        self.failures.push(f);
    }

    /// Checks items in order; returns the final item's formula when that
    /// item is a line.
    fn check_items(&mut self, items: &[BlockItem]) -> Option<Formula> {
        let mut last: Option<Formula> = None;
        for item in items {
            match item {
                BlockItem::Line(l) => {
                    self.check_line(l);
                    last = Some(l.formula.clone());
                }
                BlockItem::Block(b) => {
                    self.check_block(b);
                    last = None;
                }
            }
        }
        last
    }

    fn check_line(&mut self, line: &Line) {
        let before = self.failures.len();
        let at = line.label.clone();

        if self.visible_label(&line.label) || self.visible_block_key(&line.label) {
            self.fail(Failure::ScopeViolation {
                at: at.clone(),
                label: line.label.clone(),
                detail: "this label is already in scope".into(),
            });
        }
        if let Err(diags) = well_sorted(self.theory.signature(), &line.formula) {
            self.fail(Failure::SortError {
                at: at.clone(),
                diagnostics: diags,
            });
        }
        self.check_closed(&at, &line.formula);
        self.check_rule(line);

        let ok = self.failures.len() == before;
        self.lines.push(LineReport {
            label: line.label.clone(),
            formula: line.formula.clone(),
            rule: line.rule.rule_name(),
            depth: self.frames.len() - 1,
            ok,
        });
        self.frames
            .last_mut()
            .expect("frame stack never empty")
            .labels
            .insert(line.label.clone(), line.formula.clone());
    }

    fn check_block(&mut self, block: &Block) {
        let key = block.citation_key().map(str::to_string);
        let at = key.clone().unwrap_or_else(|| "<block>".to_string());

        if key.is_none() {
            self.fail(Failure::RuleMismatch {
                at: at.clone(),
                rule: "block",
                detail: "a block needs a hypothesis or a fixed variable".into(),
            });
        }
        if let Some(k) = &key {
            if self.visible_label(k) || self.visible_block_key(k) {
                self.fail(Failure::ScopeViolation {
                    at: at.clone(),
                    label: k.clone(),
                    detail: "this label is already in scope".into(),
                });
            }
        }
        if let Some((x, s)) = &block.eigen {
            if self.theory.signature().has_symbol(x) {
                self.fail(Failure::EigenvariableViolation {
                    at: at.clone(),
                    var: x.clone(),
                    detail: "the fixed name is already a declared symbol".into(),
                });
            }
            if self
                .frames
                .iter()
                .any(|f| matches!(&f.eigen, Some((n, _)) if n == x))
            {
                self.fail(Failure::EigenvariableViolation {
                    at: at.clone(),
                    var: x.clone(),
                    detail: "the fixed name shadows an enclosing fixed variable".into(),
                });
            }
            if !self.theory.signature().has_sort(s) {
                self.fail(Failure::SortError {
                    at: at.clone(),
                    diagnostics: vec![SortDiagnostic {
                        offender: x.clone(),
                        message: format!("fixed variable has undeclared sort {s}"),
                    }],
                });
            }
        }

        self.frames.push(Frame::new(block.eigen.clone()));
        if let Some((label, hyp)) = &block.hypothesis {
            if let Err(diags) = well_sorted(self.theory.signature(), hyp) {
                self.fail(Failure::SortError {
                    at: label.clone(),
                    diagnostics: diags,
                });
            }
            self.check_closed(label, hyp);
            self.lines.push(LineReport {
                label: label.clone(),
                formula: hyp.clone(),
                rule: "hyp",
                depth: self.frames.len() - 1,
                ok: true,
            });
            self.frames
                .last_mut()
                .expect("frame stack never empty")
                .labels
                .insert(label.clone(), hyp.clone());
        }
        let conclusion = self.check_items(&block.items);
        self.frames.pop();

        if let Some(k) = key {
            let record = BlockRecord {
                eigen: block.eigen.clone(),
                hypothesis: block.hypothesis.clone(),
                conclusion,
                used: false,
            };
            self.frames
                .last_mut()
                .expect("frame stack never empty")
                .blocks
                .insert(k, record);
        }
    }

    /// Free variables of a stated formula must be fixed by an enclosing block.
    fn check_closed(&mut self, at: &str, f: &Formula) {
        for (name, sort) in free_vars(f) {
            if !self.eigen_in_scope(&name, &sort) {
                self.fail(Failure::EigenvariableViolation {
                    at: at.to_string(),
                    var: name.clone(),
                    detail: format!("variable of sort {sort} is not fixed by an enclosing block"),
                });
            }
        }
    }

    fn check_closed_term(&mut self, at: &str, t: &Term) {
        for (name, sort) in term_free_vars(t) {
            if !self.eigen_in_scope(&name, &sort) {
                self.fail(Failure::EigenvariableViolation {
                    at: at.to_string(),
                    var: name.clone(),
                    detail: format!("variable of sort {sort} is not fixed by an enclosing block"),
                });
            }
        }
    }

    fn eigen_in_scope(&self, name: &str, sort: &str) -> bool {
        self.frames
            .iter()
            .any(|f| matches!(&f.eigen, Some((n, s)) if n == name && s == sort))
    }

    fn visible_label(&self, label: &str) -> bool {
        self.frames.iter().any(|f| f.labels.contains_key(label))
    }

    fn visible_block_key(&self, key: &str) -> bool {
        self.frames.iter().any(|f| f.blocks.contains_key(key))
    }

    /// Resolves a cited line label to its formula.
    fn cite(&mut self, at: &str, label: &str) -> Option<Formula> {
        for frame in self.frames.iter().rev() {
            if let Some(f) = frame.labels.get(label) {
                return Some(f.clone());
            }
        }
        if self.all_labels.contains(label) || self.visible_block_key(label) {
            self.fail(Failure::ScopeViolation {
                at: at.to_string(),
                label: label.to_string(),
                detail: "the cited line is not visible from here".into(),
            });
        } else {
            self.fail(Failure::UnknownLabel {
                at: at.to_string(),
                label: label.to_string(),
            });
        }
        None
    }

    /// Resolves a cited block and marks it discharged. A block may be
    /// discharged at most once.
    fn discharge(
        &mut self,
        at: &str,
        key: &str,
    ) -> Option<(
        Option<(String, String)>,
        Option<(String, Formula)>,
        Option<Formula>,
    )> {
        let mut outcome = None;
        for frame in self.frames.iter_mut().rev() {
            if let Some(rec) = frame.blocks.get_mut(key) {
                if rec.used {
                    outcome = Some(None);
                } else {
                    rec.used = true;
                    outcome = Some(Some((
                        rec.eigen.clone(),
                        rec.hypothesis.clone(),
                        rec.conclusion.clone(),
                    )));
                }
                break;
            }
        }
        match outcome {
            Some(Some(block)) => Some(block),
            Some(None) => {
                self.fail(Failure::ScopeViolation {
                    at: at.to_string(),
                    label: key.to_string(),
                    detail: "this block was already discharged".into(),
                });
                None
            }
            None => {
                if self.all_labels.contains(key) {
                    self.fail(Failure::ScopeViolation {
                        at: at.to_string(),
                        label: key.to_string(),
                        detail: "this is not a completed block visible from here".into(),
                    });
                } else {
                    self.fail(Failure::UnknownLabel {
                        at: at.to_string(),
                        label: key.to_string(),
                    });
                }
                None
            }
        }
    }

    fn mismatch(&mut self, at: &str, rule: &'static str, detail: impl Into<String>) {
        self.fail(Failure::RuleMismatch {
            at: at.to_string(),
            rule,
            detail: detail.into(),
        });
    }

    /// Checks the cited term: well sorted, of the expected sort, and
    /// closed up to fixed variables.
    fn check_term(&mut self, at: &str, rule: &'static str, t: &Term, expected: &str) {
        match term_sort(self.theory.signature(), t) {
            Ok(s) if s == expected => {}
            Ok(s) => self.fail(Failure::SortError {
                at: at.to_string(),
                diagnostics: vec![SortDiagnostic {
                    offender: t.to_string(),
                    message: format!(
                        "{rule} needs a term of sort {expected}, this one has sort {s}"
                    ),
                }],
            }),
            Err(d) => self.fail(Failure::SortError {
                at: at.to_string(),
                diagnostics: vec![d],
            }),
        }
        self.check_closed_term(at, t);
    }

    fn check_rule(&mut self, l: &Line) {
        let at = &l.label;
        let stated = &l.formula;
        match &l.rule {
            Justification::Axiom(name) => match self.theory.axiom(name) {
                None => self.fail(Failure::UnknownLabel {
                    at: at.clone(),
                    label: name.clone(),
                }),
                Some(ax) => {
                    if !alpha_eq(stated, ax) {
                        self.mismatch(at, "axiom", format!("axiom {name} states {ax}"));
                    }
                }
            },
            Justification::Lemma(name) => match self.theory.lemma(name) {
                None => self.fail(Failure::UnknownLabel {
                    at: at.clone(),
                    label: name.clone(),
                }),
                Some(lem) => {
                    if lem.classification == Classification::Classical {
                        self.classical = true;
                    }
                    if !alpha_eq(stated, &lem.formula) {
                        self.mismatch(at, "lemma", format!("lemma {name} states {}", lem.formula));
                    }
                }
            },
            Justification::SchemaUse { name, args } => {
                self.check_schema_use(at, stated, name, args)
            }
            Justification::AndI { left, right } => {
                let lf = self.cite(at, left);
                let rf = self.cite(at, right);
                if let (Some(lf), Some(rf)) = (lf, rf) {
                    match stated {
                        Formula::And(a, b) if alpha_eq(a, &lf) && alpha_eq(b, &rf) => {}
                        _ => self.mismatch(
                            at,
                            "and_i",
                            "the stated formula is not the conjunction of the cited lines",
                        ),
                    }
                }
            }
            Justification::AndE1 { from } => {
                if let Some(f) = self.cite(at, from) {
                    match f {
                        Formula::And(a, _) => {
                            if !alpha_eq(stated, &a) {
                                self.mismatch(
                                    at,
                                    "and_e1",
                                    "the stated formula is not the left conjunct",
                                );
                            }
                        }
                        _ => self.mismatch(at, "and_e1", "the cited line is not a conjunction"),
                    }
                }
            }
            Justification::AndE2 { from } => {
                if let Some(f) = self.cite(at, from) {
                    match f {
                        Formula::And(_, b) => {
                            if !alpha_eq(stated, &b) {
                                self.mismatch(
                                    at,
                                    "and_e2",
                                    "the stated formula is not the right conjunct",
                                );
                            }
                        }
                        _ => self.mismatch(at, "and_e2", "the cited line is not a conjunction"),
                    }
                }
            }
            Justification::OrI1 { from } => {
                if let Some(f) = self.cite(at, from) {
                    match stated {
                        Formula::Or(a, _) if alpha_eq(a, &f) => {}
                        Formula::Or(..) => self.mismatch(
                            at,
                            "or_i1",
                            "the cited line is not the left disjunct of the stated formula",
                        ),
                        _ => self.mismatch(at, "or_i1", "the stated formula is not a disjunction"),
                    }
                }
            }
            Justification::OrI2 { from } => {
                if let Some(f) = self.cite(at, from) {
                    match stated {
                        Formula::Or(_, b) if alpha_eq(b, &f) => {}
                        Formula::Or(..) => self.mismatch(
                            at,
                            "or_i2",
                            "the cited line is not the right disjunct of the stated formula",
                        ),
                        _ => self.mismatch(at, "or_i2", "the stated formula is not a disjunction"),
                    }
                }
            }
            Justification::OrE {
                disjunction,
                left,
                right,
            } => {
                let d = self.cite(at, disjunction);
                let lb = self.discharge(at, left);
                let rb = self.discharge(at, right);
                let (d, lb, rb) = match (d, lb, rb) {
                    (Some(d), Some(lb), Some(rb)) => (d, lb, rb),
                    _ => return,
                };
                let (da, db) = match d {
                    Formula::Or(a, b) => (*a, *b),
                    _ => {
                        self.mismatch(at, "or_e", "the cited line is not a disjunction");
                        return;
                    }
                };
                for (arm, block, disjunct) in [("left", &lb, &da), ("right", &rb, &db)] {
                    let (eigen, hyp, conclusion) = block;
                    if eigen.is_some() {
                        self.mismatch(at, "or_e", format!("the {arm} case block fixes a variable"));
                        continue;
                    }
                    match hyp {
                        None => self.mismatch(
                            at,
                            "or_e",
                            format!("the {arm} case block has no hypothesis"),
                        ),
                        Some((_, h)) => {
                            if !alpha_eq(h, disjunct) {
                                self.mismatch(
                                    at,
                                    "or_e",
                                    format!("the {arm} case block does not assume its disjunct"),
                                );
                            }
                        }
                    }
                    match conclusion {
                        None => self.mismatch(
                            at,
                            "or_e",
                            format!("the {arm} case block has no concluding line"),
                        ),
                        Some(c) => {
                            if !alpha_eq(c, stated) {
                                self.mismatch(
                                    at,
                                    "or_e",
                                    format!(
                                        "the {arm} case block does not conclude the stated formula"
                                    ),
                                );
                            }
                        }
                    }
                }
            }
            Justification::ImpI { block } => {
                let (eigen, hyp, conclusion) = match self.discharge(at, block) {
                    Some(b) => b,
                    None => return,
                };
                if eigen.is_some() {
                    self.mismatch(at, "imp_i", "the cited block fixes a variable");
                    return;
                }
                let h = match hyp {
                    Some((_, h)) => h,
                    None => {
                        self.mismatch(at, "imp_i", "the cited block has no hypothesis");
                        return;
                    }
                };
                let c = match conclusion {
                    Some(c) => c,
                    None => {
                        self.mismatch(at, "imp_i", "the cited block has no concluding line");
                        return;
                    }
                };
                if !alpha_eq(stated, &Formula::implies(h, c)) {
                    self.mismatch(
                        at,
                        "imp_i",
                        "the stated formula is not hypothesis -> conclusion for the cited block",
                    );
                }
            }
            Justification::ImpE {
                implication,
                antecedent,
            } => {
                let i = self.cite(at, implication);
                let a = self.cite(at, antecedent);
                let (i, a) = match (i, a) {
                    (Some(i), Some(a)) => (i, a),
                    _ => return,
                };
                match i {
                    Formula::Implies(p, q) => {
                        if !alpha_eq(&a, &p) {
                            self.mismatch(
                                at,
                                "imp_e",
                                "the second cited line is not the antecedent of the first",
                            );
                        } else if !alpha_eq(stated, &q) {
                            self.mismatch(
                                at,
                                "imp_e",
                                "the stated formula is not the consequent of the cited implication",
                            );
                        }
                    }
                    _ => self.mismatch(at, "imp_e", "the first cited line is not an implication"),
                }
            }
            Justification::Raa { block } => {
                self.classical = true;
                let (eigen, hyp, conclusion) = match self.discharge(at, block) {
                    Some(b) => b,
                    None => return,
                };
                if eigen.is_some() {
                    self.mismatch(at, "raa", "the cited block fixes a variable");
                    return;
                }
                let h = match hyp {
                    Some((_, h)) => h,
                    None => {
                        self.mismatch(at, "raa", "the cited block has no hypothesis");
                        return;
                    }
                };
                let inner = match h.as_negation() {
                    Some(inner) => inner.clone(),
                    None => {
                        self.mismatch(
                            at,
                            "raa",
                            "the hypothesis of the cited block is not a negation",
                        );
                        return;
                    }
                };
                match conclusion {
                    Some(Formula::Falsum) => {}
                    _ => {
                        self.mismatch(at, "raa", "the cited block does not conclude falsity");
                        return;
                    }
                }
                if !alpha_eq(stated, &inner) {
                    self.mismatch(
                        at,
                        "raa",
                        "the stated formula is not what the cited block denied",
                    );
                }
            }
            Justification::AllI { block } => {
                let (eigen, hyp, conclusion) = match self.discharge(at, block) {
                    Some(b) => b,
                    None => return,
                };
                if hyp.is_some() {
                    self.mismatch(at, "all_i", "the cited block carries a hypothesis");
                    return;
                }
                let (x, xs) = match eigen {
                    Some(e) => e,
                    None => {
                        self.mismatch(at, "all_i", "the cited block fixes no variable");
                        return;
                    }
                };
                let c = match conclusion {
                    Some(c) => c,
                    None => {
                        self.mismatch(at, "all_i", "the cited block has no concluding line");
                        return;
                    }
                };
                match stated {
                    Formula::Forall { var, sort, body } if *sort == xs => {
                        let expected =
                            Substitution::single(var, sort, Term::var(&x, &xs)).apply(body);
                        if !alpha_eq(&expected, &c) {
                            self.mismatch(
                                at,
                                "all_i",
                                "the cited block does not conclude the stated body at the fixed variable",
                            );
                        }
                    }
                    Formula::Forall { .. } => self.mismatch(
                        at,
                        "all_i",
                        format!("the stated quantifier does not range over sort {xs}"),
                    ),
                    _ => self.mismatch(at, "all_i", "the stated formula is not universal"),
                }
            }
            Justification::AllE { from, term } => {
                let f = match self.cite(at, from) {
                    Some(f) => f,
                    None => return,
                };
                match f {
                    Formula::Forall { var, sort, body } => {
                        self.check_term(at, "all_e", term, &sort);
                        let expected = Substitution::single(&var, &sort, term.clone()).apply(&body);
                        if !alpha_eq(stated, &expected) {
                            self.mismatch(
                                at,
                                "all_e",
                                "the stated formula is not the cited universal at that term",
                            );
                        }
                    }
                    _ => self.mismatch(at, "all_e", "the cited line is not universal"),
                }
            }
            Justification::ExI { from, witness } => {
                let f = match self.cite(at, from) {
                    Some(f) => f,
                    None => return,
                };
                match stated {
                    Formula::Exists { var, sort, body } => {
                        self.check_term(at, "ex_i", witness, sort);
                        let expected = Substitution::single(var, sort, witness.clone()).apply(body);
                        if !alpha_eq(&f, &expected) {
                            self.mismatch(
                                at,
                                "ex_i",
                                "the cited line is not the stated body at the witness term",
                            );
                        }
                    }
                    _ => self.mismatch(at, "ex_i", "the stated formula is not existential"),
                }
            }
            Justification::ExE { existential, block } => {
                let e = self.cite(at, existential);
                let b = self.discharge(at, block);
                let (e, (eigen, hyp, conclusion)) = match (e, b) {
                    (Some(e), Some(b)) => (e, b),
                    _ => return,
                };
                let (v, vs, body) = match e {
                    Formula::Exists { var, sort, body } => (var, sort, *body),
                    _ => {
                        self.mismatch(at, "ex_e", "the cited line is not existential");
                        return;
                    }
                };
                let (x, xs) = match eigen {
                    Some(e) => e,
                    None => {
                        self.mismatch(at, "ex_e", "the cited block fixes no variable");
                        return;
                    }
                };
                let h = match hyp {
                    Some((_, h)) => h,
                    None => {
                        self.mismatch(at, "ex_e", "the cited block has no hypothesis");
                        return;
                    }
                };
                if xs != vs {
                    self.mismatch(
                        at,
                        "ex_e",
                        format!(
                            "the fixed variable has sort {xs} but the existential ranges over {vs}"
                        ),
                    );
                    return;
                }
                let expected_hyp = Substitution::single(&v, &vs, Term::var(&x, &xs)).apply(&body);
                if !alpha_eq(&h, &expected_hyp) {
                    self.mismatch(
                        at,
                        "ex_e",
                        "the block hypothesis is not the cited existential at the fixed variable",
                    );
                }
                let c = match conclusion {
                    Some(c) => c,
                    None => {
                        self.mismatch(at, "ex_e", "the cited block has no concluding line");
                        return;
                    }
                };
                if free_vars(&c).iter().any(|(n, s)| *n == x && *s == xs) {
                    self.fail(Failure::EigenvariableViolation {
                        at: at.clone(),
                        var: x.clone(),
                        detail: "the fixed variable escapes through the block's conclusion".into(),
                    });
                    return;
                }
                if !alpha_eq(stated, &c) {
                    self.mismatch(
                        at,
                        "ex_e",
                        "the stated formula is not the block's conclusion",
                    );
                }
            }
            Justification::Reit { from } => {
                if let Some(f) = self.cite(at, from) {
                    if !alpha_eq(stated, &f) {
                        self.mismatch(at, "reit", "the stated formula differs from the cited line");
                    }
                }
            }
        }
    }

    fn check_schema_use(&mut self, at: &str, stated: &Formula, name: &str, args: &[SchemaArg]) {
        let schema = match self.theory.schema(name) {
            None => {
                self.fail(Failure::UnknownLabel {
                    at: at.to_string(),
                    label: name.to_string(),
                });
                return;
            }
            Some(s) => s,
        };
        if schema.proven == Some(Classification::Classical) {
            self.classical = true;
        }
        match schema.instantiate(self.theory.signature(), args) {
            Ok(f) => {
                if !alpha_eq(stated, &f) {
                    self.mismatch(at, "schema", format!("schema {name} instantiates to {f}"));
                }
            }
            Err(e @ SchemaError::ArgSort { .. }) => {
                self.fail(Failure::SortError {
                    at: at.to_string(),
                    diagnostics: vec![SortDiagnostic {
                        offender: name.to_string(),
                        message: e.to_string(),
                    }],
                });
            }
            Err(e) => self.mismatch(at, "schema", e.to_string()),
        }
        for arg in args {
            match arg {
                SchemaArg::Term(t) => self.check_closed_term(at, t),
                SchemaArg::Formula(f) => {
                    if let Err(diags) = well_sorted(self.theory.signature(), f) {
                        self.fail(Failure::SortError {
                            at: at.to_string(),
                            diagnostics: diags,
                        });
                    }
                    self.check_closed(at, f);
                }
            }
        }
    }
}
