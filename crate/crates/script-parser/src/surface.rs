//! Surface syntax tree: what the parser produces and the elaborator
//! consumes. Every node keeps the span it was read from so elaboration
//! errors can point back into the source.

use crate::diag::SourceSpan;

/// An identifier occurrence.
#[derive(Clone, Debug)]
pub(crate) struct SName {
    pub text: String,
    pub span: SourceSpan,
}

#[derive(Clone, Debug)]
pub(crate) struct SDecl {
    pub kind: SDeclKind,
    pub span: SourceSpan,
}

#[derive(Clone, Debug)]
pub(crate) enum SDeclKind {
    Sort {
        name: SName,
    },
    Pred {
        name: SName,
        args: Vec<SName>,
    },
    Fn {
        name: SName,
        args: Vec<SName>,
        result: SName,
    },
    Const {
        name: SName,
        sort: SName,
    },
    Axiom {
        name: SName,
        formula: SFormula,
    },
    Schema {
        name: SName,
        params: Vec<SParam>,
        template: SFormula,
        body: Option<SBlock>,
    },
    Lemma {
        name: SName,
        goal: SFormula,
        body: SBlock,
    },
    Proof {
        name: SName,
        goal: SFormula,
        body: SBlock,
    },
    Sequent {
        name: SName,
        premises: Vec<SFormula>,
        conclusion: SFormula,
    },
    Derive {
        name: SName,
        steps: Vec<SStep>,
    },
}

#[derive(Clone, Debug)]
pub(crate) struct SParam {
    pub name: SName,
    pub kind: SParamKind,
}

#[derive(Clone, Debug)]
pub(crate) enum SParamKind {
    Formula,
    Term(SName),
}

#[derive(Clone, Debug)]
pub(crate) struct SFormula {
    pub kind: SFormulaKind,
    pub span: SourceSpan,
}

#[derive(Clone, Debug)]
pub(crate) enum SFormulaKind {
    /// Predicate application or bare propositional name. A bare name in
    /// term position is re-read as a term by the elaborator.
    Atom {
        name: SName,
        args: Vec<STerm>,
    },
    Eq {
        left: STerm,
        right: STerm,
        negated: bool,
    },
    False,
    And(Box<SFormula>, Box<SFormula>),
    Or(Box<SFormula>, Box<SFormula>),
    Implies(Box<SFormula>, Box<SFormula>),
    Not(Box<SFormula>),
    Quant {
        exists: bool,
        var: SName,
        sort: Option<SName>,
        body: Box<SFormula>,
    },
}

#[derive(Clone, Debug)]
pub(crate) struct STerm {
    pub name: SName,
    pub args: Vec<STerm>,
    pub span: SourceSpan,
}

#[derive(Clone, Debug)]
pub(crate) struct SBlock {
    pub assume: Option<(SName, SFormula)>,
    pub fix: Option<(SName, SName)>,
    pub items: Vec<SItem>,
    pub span: SourceSpan,
}

#[derive(Clone, Debug)]
pub(crate) enum SItem {
    Line(SLine),
    Block(SBlock),
}

#[derive(Clone, Debug)]
pub(crate) struct SLine {
    pub label: SName,
    pub formula: SFormula,
    pub rule: SRule,
}

#[derive(Clone, Debug)]
pub(crate) enum SRule {
    Axiom(SName),
    Lemma(SName),
    /// Bracketed arguments are parsed as formulas; term-kinded parameters
    /// are re-read as terms during elaboration.
    Schema {
        name: SName,
        args: Vec<SFormula>,
    },
    /// Any rule whose arguments are plain citations.
    Labels {
        name: SName,
        labels: Vec<SName>,
    },
    /// `all_e` and `ex_i`: one citation plus a bracketed term.
    WithTerm {
        name: SName,
        label: SName,
        term: STerm,
    },
}

#[derive(Clone, Debug)]
pub(crate) struct SStep {
    pub label: SName,
    pub premises: Vec<SFormula>,
    pub conclusion: SFormula,
    pub rule: SStepRule,
}

#[derive(Clone, Debug)]
pub(crate) enum SStepRule {
    Base(SName),
    Indem,
    Cut {
        target: SName,
        source: SName,
        position: usize,
    },
}
