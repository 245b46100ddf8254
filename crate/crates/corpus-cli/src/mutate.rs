//! Seeded mutation testing over the bundled corpus.
//!
//! Each mutation damages one accepted script in a way a sound checker
//! must notice: citations swapped, a witness leaked out of its block,
//! one rule traded for a lookalike, a connective flipped, a brace
//! deleted, a cut retargeted. A mutant that still checks (a survivor)
//! means the pipeline let a broken argument through.

use logic_core::Formula;
use proof_kernel::{BlockItem, Justification, Line, Proof};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use script_parser::{parse_document, DeclKind, Document};
use stoic_sequents::StepRule;

use crate::corpus::ENTRIES;
use crate::driver::run_document;

#[derive(Clone, Debug)]
pub struct Mutant {
    pub entry: &'static str,
    pub description: String,
    pub rejected: bool,
}

/// How many distinct sites each mutation kind hits per entry.
const SITES_PER_KIND: usize = 2;

/// Generates and evaluates the whole mutant population for `seed`.
/// Every mutant is checked with the kernel alone; the result records
/// whether the damage was caught.
pub fn mutate_corpus(seed: u64) -> Vec<Mutant> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut mutants = Vec::new();

    for entry in ENTRIES {
        let Ok(doc) = parse_document(entry.embedded, entry.file) else {
            continue;
        };

        for kind in MutationKind::ALL {
            let total = count_sites(&doc, kind);
            let mut picks: Vec<usize> = (0..total).collect();
            picks.shuffle(&mut rng);
            picks.truncate(SITES_PER_KIND);
            picks.sort_unstable();
            for site in picks {
                let mut mutated = doc.clone();
                let Some(description) = apply(&mut mutated, kind, site, &mut rng) else {
                    continue;
                };
                if mutated.structurally_equal(&doc) {
                    continue;
                }
                let rejected = !run_document(&mutated, None).accepted();
                mutants.push(Mutant {
                    entry: entry.name,
                    description,
                    rejected,
                });
            }
        }

        if let Some(site) = pick_brace(entry.embedded, &mut rng) {
            let mut text = entry.embedded.to_string();
            text.remove(site);
            let rejected = match parse_document(&text, entry.file) {
                Err(_) => true,
                Ok(doc) => !run_document(&doc, None).accepted(),
            };
            mutants.push(Mutant {
                entry: entry.name,
                description: "delete one closing brace".to_string(),
                rejected,
            });
        }
    }
    mutants
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum MutationKind {
    /// Swap the two citations of a two-premise rule.
    SwapCitations,
    /// Restate an `ex_e` conclusion as the opened hypothesis, carrying
    /// the fixed variable out of its block.
    EigenLeak,
    /// Trade a rule for another of the same citation shape.
    ReplaceRule,
    /// Flip one `&` to `|` (or vice versa) in a stated formula.
    FlipConnective,
    /// Swap a cut's target and source, bump its position, or rename a
    /// cited base sequent.
    TamperDerivation,
}

impl MutationKind {
    const ALL: [MutationKind; 5] = [
        MutationKind::SwapCitations,
        MutationKind::EigenLeak,
        MutationKind::ReplaceRule,
        MutationKind::FlipConnective,
        MutationKind::TamperDerivation,
    ];
}

/// Walks every line of every proof and lemma in the document, in
/// source order, feeding each to `f` together with its enclosing item
/// list and position. Returns after `f` says stop.
fn walk_proofs(doc: &mut Document, f: &mut impl FnMut(&mut Proof) -> bool) {
    for decl in &mut doc.decls {
        match &mut decl.kind {
            DeclKind::Lemma { proof, .. } | DeclKind::Proof { proof, .. } => {
                if f(proof) {
                    return;
                }
            }
            _ => {}
        }
    }
}

fn walk_lines(items: &mut [BlockItem], f: &mut impl FnMut(&mut Line) -> bool) -> bool {
    for item in items {
        let stop = match item {
            BlockItem::Line(line) => f(line),
            BlockItem::Block(block) => walk_lines(&mut block.items, f),
        };
        if stop {
            return true;
        }
    }
    false
}

/// Finds the hypothesis formula of the sibling block `key` cites, for
/// the eigen-leak mutation. Only same-list blocks can be cited.
fn sibling_hypothesis(items: &[BlockItem], key: &str) -> Option<Formula> {
    for item in items {
        if let BlockItem::Block(block) = item {
            if block.citation_key() == Some(key) {
                return block.hypothesis.as_ref().map(|(_, f)| f.clone());
            }
            if let Some(found) = sibling_hypothesis(&block.items, key) {
                return Some(found);
            }
        }
    }
    None
}

fn swap_citation_sites(line: &Line) -> bool {
    match &line.rule {
        Justification::AndI { left, right } => left != right,
        Justification::ImpE {
            implication,
            antecedent,
        } => implication != antecedent,
        Justification::ExE { existential, block } => existential != block,
        _ => false,
    }
}

fn swap_citations(rule: &mut Justification) {
    match rule {
        Justification::AndI { left, right } => std::mem::swap(left, right),
        Justification::ImpE {
            implication,
            antecedent,
        } => std::mem::swap(implication, antecedent),
        Justification::ExE { existential, block } => std::mem::swap(existential, block),
        _ => {}
    }
}

/// Rules that cite one earlier line.
const LINE_RULES: [&str; 5] = ["and_e1", "and_e2", "or_i1", "or_i2", "reit"];
/// Rules that discharge one block.
const BLOCK_RULES: [&str; 3] = ["imp_i", "raa", "all_i"];

fn replacement(rule: &Justification, rng: &mut StdRng) -> Option<Justification> {
    let make_line = |name: &str, from: &str| -> Justification {
        let from = from.to_string();
        match name {
            "and_e1" => Justification::AndE1 { from },
            "and_e2" => Justification::AndE2 { from },
            "or_i1" => Justification::OrI1 { from },
            "or_i2" => Justification::OrI2 { from },
            _ => Justification::Reit { from },
        }
    };
    let make_block = |name: &str, block: &str| -> Justification {
        let block = block.to_string();
        match name {
            "imp_i" => Justification::ImpI { block },
            "raa" => Justification::Raa { block },
            _ => Justification::AllI { block },
        }
    };
    let pick = |rng: &mut StdRng, options: &[&str], current: &str| -> String {
        let others: Vec<&str> = options.iter().copied().filter(|o| *o != current).collect();
        others[rng.gen_range(0..others.len())].to_string()
    };
    match rule {
        Justification::AndE1 { from }
        | Justification::AndE2 { from }
        | Justification::OrI1 { from }
        | Justification::OrI2 { from }
        | Justification::Reit { from } => {
            let name = pick(rng, &LINE_RULES, rule.rule_name());
            Some(make_line(&name, from))
        }
        Justification::ImpI { block }
        | Justification::Raa { block }
        | Justification::AllI { block } => {
            let name = pick(rng, &BLOCK_RULES, rule.rule_name());
            Some(make_block(&name, block))
        }
        Justification::ImpE {
            implication,
            antecedent,
        } => Some(Justification::AndI {
            left: implication.clone(),
            right: antecedent.clone(),
        }),
        Justification::AndI { left, right } => Some(Justification::ImpE {
            implication: left.clone(),
            antecedent: right.clone(),
        }),
        Justification::ExE { existential, block } => Some(Justification::ImpE {
            implication: existential.clone(),
            antecedent: block.clone(),
        }),
        _ => None,
    }
}

fn replaceable(rule: &Justification) -> bool {
    matches!(
        rule,
        Justification::AndE1 { .. }
            | Justification::AndE2 { .. }
            | Justification::OrI1 { .. }
            | Justification::OrI2 { .. }
            | Justification::Reit { .. }
            | Justification::ImpI { .. }
            | Justification::Raa { .. }
            | Justification::AllI { .. }
            | Justification::ImpE { .. }
            | Justification::AndI { .. }
            | Justification::ExE { .. }
    )
}

/// Turns the first `&` into `|` (or the reverse) in a pre-order walk.
fn flip_first(f: &mut Formula) -> bool {
    match f {
        Formula::And(a, b) => {
            *f = Formula::Or(a.clone(), b.clone());
            true
        }
        Formula::Or(a, b) => {
            *f = Formula::And(a.clone(), b.clone());
            true
        }
        Formula::Implies(a, b) => flip_first(a) || flip_first(b),
        Formula::Forall { body, .. } | Formula::Exists { body, .. } => flip_first(body),
        Formula::Atom { .. } | Formula::Falsum => false,
    }
}

fn flippable(f: &Formula) -> bool {
    match f {
        Formula::And(..) | Formula::Or(..) => true,
        Formula::Implies(a, b) => flippable(a) || flippable(b),
        Formula::Forall { body, .. } | Formula::Exists { body, .. } => flippable(body),
        Formula::Atom { .. } | Formula::Falsum => false,
    }
}

/// Counts how many places `kind` can strike in `doc`.
fn count_sites(doc: &Document, kind: MutationKind) -> usize {
    let mut doc = doc.clone();
    let mut n = 0;
    match kind {
        MutationKind::SwapCitations => walk_proofs(&mut doc, &mut |proof| {
            walk_lines(&mut proof.body, &mut |line| {
                if swap_citation_sites(line) {
                    n += 1;
                }
                false
            })
        }),
        MutationKind::EigenLeak => walk_proofs(&mut doc, &mut |proof| {
            n += eigen_leak_sites(&proof.body);
            false
        }),
        MutationKind::ReplaceRule => walk_proofs(&mut doc, &mut |proof| {
            walk_lines(&mut proof.body, &mut |line| {
                if replaceable(&line.rule) {
                    n += 1;
                }
                false
            })
        }),
        MutationKind::FlipConnective => walk_proofs(&mut doc, &mut |proof| {
            if flippable(&proof.goal) {
                n += 1;
            }
            walk_lines(&mut proof.body, &mut |line| {
                if flippable(&line.formula) {
                    n += 1;
                }
                false
            })
        }),
        MutationKind::TamperDerivation => {
            for decl in &doc.decls {
                if let DeclKind::Derive { derivation, .. } = &decl.kind {
                    for step in &derivation.steps {
                        match &step.rule {
                            StepRule::Cut { .. } => n += 3,
                            StepRule::Base(_) => n += 1,
                            StepRule::Indemonstrable => {}
                        }
                    }
                }
            }
        }
    }
    n
}

fn eigen_leak_sites(items: &[BlockItem]) -> usize {
    let mut n = 0;
    for (i, item) in items.iter().enumerate() {
        match item {
            BlockItem::Line(line) => {
                if let Justification::ExE { block, .. } = &line.rule {
                    if let Some(h) = sibling_hypothesis(&items[..i], block) {
                        if h != line.formula {
                            n += 1;
                        }
                    }
                }
            }
            BlockItem::Block(block) => n += eigen_leak_sites(&block.items),
        }
    }
    n
}

fn apply_eigen_leak(items: &mut Vec<BlockItem>, site: &mut usize) -> Option<String> {
    for i in 0..items.len() {
        if let BlockItem::Line(line) = &items[i] {
            if let Justification::ExE { block, .. } = &line.rule {
                if let Some(h) = sibling_hypothesis(&items[..i], block) {
                    if h != line.formula {
                        if *site == 0 {
                            let label = line.label.clone();
                            let key = block.clone();
                            if let BlockItem::Line(line) = &mut items[i] {
                                line.formula = h;
                            }
                            return Some(format!(
                                "restate line {label} as the hypothesis of block {key}"
                            ));
                        }
                        *site -= 1;
                    }
                }
            }
        }
        if let BlockItem::Block(block) = &mut items[i] {
            if let Some(desc) = apply_eigen_leak(&mut block.items, site) {
                return Some(desc);
            }
        }
    }
    None
}

/// Applies the `site`-th strike of `kind` to `doc`, returning a
/// human-readable description, or `None` when the site is gone.
fn apply(doc: &mut Document, kind: MutationKind, site: usize, rng: &mut StdRng) -> Option<String> {
    let mut remaining = site;
    let mut desc = None;
    match kind {
        MutationKind::SwapCitations => walk_proofs(doc, &mut |proof| {
            walk_lines(&mut proof.body, &mut |line| {
                if swap_citation_sites(line) {
                    if remaining == 0 {
                        swap_citations(&mut line.rule);
                        desc = Some(format!("swap the citations of line {}", line.label));
                        return true;
                    }
                    remaining -= 1;
                }
                false
            })
        }),
        MutationKind::EigenLeak => walk_proofs(doc, &mut |proof| {
            desc = apply_eigen_leak(&mut proof.body, &mut remaining);
            desc.is_some()
        }),
        MutationKind::ReplaceRule => walk_proofs(doc, &mut |proof| {
            walk_lines(&mut proof.body, &mut |line| {
                if replaceable(&line.rule) {
                    if remaining == 0 {
                        let old = line.rule.rule_name();
                        if let Some(new_rule) = replacement(&line.rule, rng) {
                            desc = Some(format!(
                                "justify line {} by {} instead of {}",
                                line.label,
                                new_rule.rule_name(),
                                old
                            ));
                            line.rule = new_rule;
                        }
                        return true;
                    }
                    remaining -= 1;
                }
                false
            })
        }),
        MutationKind::FlipConnective => walk_proofs(doc, &mut |proof| {
            if flippable(&proof.goal) {
                if remaining == 0 {
                    flip_first(&mut proof.goal);
                    desc = Some("flip a connective in the stated goal".to_string());
                    return true;
                }
                remaining -= 1;
            }
            walk_lines(&mut proof.body, &mut |line| {
                if flippable(&line.formula) {
                    if remaining == 0 {
                        flip_first(&mut line.formula);
                        desc = Some(format!(
                            "flip a connective in the formula of line {}",
                            line.label
                        ));
                        return true;
                    }
                    remaining -= 1;
                }
                false
            })
        }),
        MutationKind::TamperDerivation => {
            for decl in &mut doc.decls {
                if let DeclKind::Derive { derivation, .. } = &mut decl.kind {
                    for step in &mut derivation.steps {
                        match &mut step.rule {
                            StepRule::Cut {
                                target,
                                source,
                                position,
                            } => {
                                if remaining < 3 {
                                    let label = step.label.clone();
                                    desc = Some(match remaining {
                                        0 => {
                                            std::mem::swap(target, source);
                                            format!("swap the cut operands of step {label}")
                                        }
                                        1 => {
                                            *position += 1;
                                            format!("shift the cut position of step {label}")
                                        }
                                        _ => {
                                            *source = format!("{source}_missing");
                                            format!("repoint the cut source of step {label}")
                                        }
                                    });
                                    return desc;
                                }
                                remaining -= 3;
                            }
                            StepRule::Base(name) => {
                                if remaining == 0 {
                                    *name = format!("{name}_missing");
                                    desc =
                                        Some(format!("cite a missing base in step {}", step.label));
                                    return desc;
                                }
                                remaining -= 1;
                            }
                            StepRule::Indemonstrable => {}
                        }
                    }
                }
            }
            return desc;
        }
    }
    desc
}

/// Chooses one closing brace of the raw text to delete.
fn pick_brace(text: &str, rng: &mut StdRng) -> Option<usize> {
    let braces: Vec<usize> = text
        .char_indices()
        .filter(|(_, c)| *c == '}')
        .map(|(i, _)| i)
        .collect();
    if braces.is_empty() {
        return None;
    }
    Some(braces[rng.gen_range(0..braces.len())])
}
