//! Relevance discipline over kernel proofs.
//!
//! A proof sits in the substructural fragment when every hypothesis it
//! opens really feeds the goal and no classical absurdity rule occurs.
//! Feeding the goal is read off the citation graph: starting from the
//! final line, follow citations; citing a block reaches that block's
//! concluding line, but a hypothesis is only reached by a line that
//! cites its label directly. An hypothesis nobody cites is exactly a
//! weakening, which the fragment refuses.
//!
//! The classical absurdity rule is a known member of the reconstructed
//! rule set, yet it breaks the fragment's strictness; this checker
//! keeps it outside the fragment and reports its uses, leaving the
//! tension visible rather than resolving it.

use std::fmt;

use proof_kernel::{
    check_proof, BlockItem, CheckReport, Classification, Justification, Proof, Theory,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelevanceReport {
    /// No classical steps anywhere, own lines or cited material.
    pub constructive: bool,
    /// Labels of this proof's own classical absurdity lines.
    pub classical_lines: Vec<String>,
    /// Hypothesis labels unreachable from the goal.
    pub unused_hypotheses: Vec<String>,
}

impl RelevanceReport {
    /// The fragment's verdict: every hypothesis used, nothing classical.
    pub fn used(&self) -> bool {
        self.constructive && self.unused_hypotheses.is_empty()
    }
}

#[derive(Clone, Debug)]
pub enum RelevanceError {
    /// Relevance is only defined over kernel-accepted proofs.
    NotAccepted(Box<CheckReport>),
}

impl fmt::Display for RelevanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelevanceError::NotAccepted(_) => {
                write!(f, "proof is not kernel-accepted")
            }
        }
    }
}

impl std::error::Error for RelevanceError {}

pub fn relevance_check(theory: &Theory, proof: &Proof) -> Result<RelevanceReport, RelevanceError> {
    let report = check_proof(theory, proof);
    if !report.accepted() {
        return Err(RelevanceError::NotAccepted(Box::new(report)));
    }

    let mut builder = Builder::default();
    let mut frames = vec![Frame::default()];
    let root = walk(&mut builder, &mut frames, &proof.body)
        .expect("an accepted proof concludes with a line");

    let mut reached = vec![false; builder.edges.len()];
    let mut stack = vec![root];
    while let Some(n) = stack.pop() {
        if reached[n] {
            continue;
        }
        reached[n] = true;
        stack.extend(builder.edges[n].iter().copied());
    }

    let unused_hypotheses = builder
        .hypotheses
        .iter()
        .filter(|(id, _)| !reached[*id])
        .map(|(_, label)| label.clone())
        .collect();

    Ok(RelevanceReport {
        constructive: report.classification == Some(Classification::Constructive),
        classical_lines: builder.classical_lines,
        unused_hypotheses,
    })
}

/// Citation graph under construction. Nodes are lines, hypotheses, and
/// blocks; an edge points from a node to what it depends on.
#[derive(Default)]
struct Builder {
    edges: Vec<Vec<usize>>,
    /// Hypothesis nodes in proof order.
    hypotheses: Vec<(usize, String)>,
    classical_lines: Vec<String>,
}

impl Builder {
    fn node(&mut self) -> usize {
        self.edges.push(Vec::new());
        self.edges.len() - 1
    }
}

/// One lexical scope: labels citable as lines (including hypotheses)
/// and keys citable as blocks. The same text can name a hypothesis and
/// its block; the justification's slot decides which map applies.
#[derive(Default)]
struct Frame {
    lines: Vec<(String, usize)>,
    blocks: Vec<(String, usize)>,
}

fn resolve(
    frames: &[Frame],
    pick: impl Fn(&Frame) -> &[(String, usize)],
    name: &str,
) -> Option<usize> {
    for frame in frames.iter().rev() {
        if let Some((_, id)) = pick(frame).iter().rev().find(|(l, _)| l == name) {
            return Some(*id);
        }
    }
    None
}

/// Builds nodes and edges for a block body; returns the node of the
/// final item when that item is a line.
fn walk(builder: &mut Builder, frames: &mut Vec<Frame>, items: &[BlockItem]) -> Option<usize> {
    let mut last_line = None;
    for item in items {
        match item {
            BlockItem::Line(line) => {
                let id = builder.node();
                for cited in line_citations(&line.rule) {
                    if let Some(t) = resolve(frames, |f| &f.lines, cited) {
                        builder.edges[id].push(t);
                    }
                }
                for cited in block_citations(&line.rule) {
                    if let Some(t) = resolve(frames, |f| &f.blocks, cited) {
                        builder.edges[id].push(t);
                    }
                }
                if matches!(line.rule, Justification::Raa { .. }) {
                    builder.classical_lines.push(line.label.clone());
                }
                frames
                    .last_mut()
                    .expect("frame")
                    .lines
                    .push((line.label.clone(), id));
                last_line = Some(id);
            }
            BlockItem::Block(block) => {
                let block_id = builder.node();
                let mut frame = Frame::default();
                if let Some((label, _)) = &block.hypothesis {
                    let hyp_id = builder.node();
                    builder.hypotheses.push((hyp_id, label.clone()));
                    frame.lines.push((label.clone(), hyp_id));
                }
                frames.push(frame);
                let conclusion = walk(builder, frames, &block.items);
                frames.pop();
                if let Some(c) = conclusion {
                    builder.edges[block_id].push(c);
                }
                if let Some(key) = block.citation_key() {
                    frames
                        .last_mut()
                        .expect("frame")
                        .blocks
                        .push((key.to_string(), block_id));
                }
                last_line = None;
            }
        }
    }
    last_line
}

fn line_citations(j: &Justification) -> Vec<&str> {
    match j {
        Justification::Axiom(_)
        | Justification::Lemma(_)
        | Justification::SchemaUse { .. }
        | Justification::ImpI { .. }
        | Justification::Raa { .. }
        | Justification::AllI { .. } => vec![],
        Justification::AndI { left, right } => vec![left, right],
        Justification::AndE1 { from }
        | Justification::AndE2 { from }
        | Justification::OrI1 { from }
        | Justification::OrI2 { from }
        | Justification::AllE { from, .. }
        | Justification::ExI { from, .. }
        | Justification::Reit { from } => vec![from],
        Justification::OrE { disjunction, .. } => vec![disjunction],
        Justification::ImpE {
            implication,
            antecedent,
        } => vec![implication, antecedent],
        Justification::ExE { existential, .. } => vec![existential],
    }
}

fn block_citations(j: &Justification) -> Vec<&str> {
    match j {
        Justification::OrE { left, right, .. } => vec![left, right],
        Justification::ImpI { block }
        | Justification::Raa { block }
        | Justification::AllI { block }
        | Justification::ExE { block, .. } => vec![block],
        _ => vec![],
    }
}
