//! Abstract syntax of block-structured proofs.
//!
//! A proof is a sequence of lines and blocks. A block opens with a
//! hypothesis (`assume`), a fixed variable (`fix`), or both, and is
//! later discharged by the rule that cites it: `imp_i`, `raa`, or one
//! arm of `or_e` for a hypothesis block, `all_i` for a fixed-variable
//! block, `ex_e` for a block with both.

use crate::schema::SchemaArg;
use logic_core::{Formula, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub goal: Formula,
    pub body: Vec<BlockItem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockItem {
    Line(Line),
    Block(Block),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub label: String,
    pub formula: Formula,
    pub rule: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// Fixed eigenvariable, as (name, sort).
    pub eigen: Option<(String, String)>,
    /// Hypothesis, as (label, formula).
    pub hypothesis: Option<(String, Formula)>,
    pub items: Vec<BlockItem>,
}

impl Block {
    /// The label a discharging rule cites this block by: the hypothesis
    /// label when there is one, otherwise the fixed variable's name.
    pub fn citation_key(&self) -> Option<&str> {
        self.hypothesis
            .as_ref()
            .map(|(l, _)| l.as_str())
            .or_else(|| self.eigen.as_ref().map(|(n, _)| n.as_str()))
    }
}

/// How a line claims its formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Axiom(String),
    Lemma(String),
    SchemaUse {
        name: String,
        args: Vec<SchemaArg>,
    },
    AndI {
        left: String,
        right: String,
    },
    AndE1 {
        from: String,
    },
    AndE2 {
        from: String,
    },
    OrI1 {
        from: String,
    },
    OrI2 {
        from: String,
    },
    OrE {
        disjunction: String,
        left: String,
        right: String,
    },
    ImpI {
        block: String,
    },
    ImpE {
        implication: String,
        antecedent: String,
    },
    Raa {
        block: String,
    },
    AllI {
        block: String,
    },
    AllE {
        from: String,
        term: Term,
    },
    ExI {
        from: String,
        witness: Term,
    },
    ExE {
        existential: String,
        block: String,
    },
    Reit {
        from: String,
    },
}

impl Justification {
    pub fn rule_name(&self) -> &'static str {
        match self {
            Justification::Axiom(_) => "axiom",
            Justification::Lemma(_) => "lemma",
            Justification::SchemaUse { .. } => "schema",
            Justification::AndI { .. } => "and_i",
            Justification::AndE1 { .. } => "and_e1",
            Justification::AndE2 { .. } => "and_e2",
            Justification::OrI1 { .. } => "or_i1",
            Justification::OrI2 { .. } => "or_i2",
            Justification::OrE { .. } => "or_e",
            Justification::ImpI { .. } => "imp_i",
            Justification::ImpE { .. } => "imp_e",
            Justification::Raa { .. } => "raa",
            Justification::AllI { .. } => "all_i",
            Justification::AllE { .. } => "all_e",
            Justification::ExI { .. } => "ex_i",
            Justification::ExE { .. } => "ex_e",
            Justification::Reit { .. } => "reit",
        }
    }
}

/// Convenience constructors, mainly for building proofs in tests.
pub fn line(label: &str, formula: Formula, rule: Justification) -> BlockItem {
    BlockItem::Line(Line {
        label: label.to_string(),
        formula,
        rule,
    })
}

pub fn assume(label: &str, hypothesis: Formula, items: Vec<BlockItem>) -> BlockItem {
    BlockItem::Block(Block {
        eigen: None,
        hypothesis: Some((label.to_string(), hypothesis)),
        items,
    })
}

pub fn fix(name: &str, sort: &str, items: Vec<BlockItem>) -> BlockItem {
    BlockItem::Block(Block {
        eigen: Some((name.to_string(), sort.to_string())),
        hypothesis: None,
        items,
    })
}

pub fn fix_assume(
    name: &str,
    sort: &str,
    label: &str,
    hypothesis: Formula,
    items: Vec<BlockItem>,
) -> BlockItem {
    BlockItem::Block(Block {
        eigen: Some((name.to_string(), sort.to_string())),
        hypothesis: Some((label.to_string(), hypothesis)),
        items,
    })
}
