//! Elaboration: resolves the surface tree against a growing signature,
//! producing kernel-ready values. Declarations are processed in order,
//! so every reference must point at something declared earlier in the
//! file. Binders may omit their sort when it is determined by the
//! signature or by how the variable is used.

use std::collections::{BTreeMap, BTreeSet};

use crate::diag::{Diagnostic, Severity, SourceSpan};
use crate::document::{Decl, DeclKind, Document};
use crate::surface::*;
use logic_core::{Formula, Signature, Term};
use proof_kernel::{
    Block, BlockItem, Justification, Line, MetaKind, Proof, Schema, SchemaArg, TemplateFormula,
    TemplateTerm,
};
use stoic_sequents::{Sequent, SequentDerivation, Step, StepRule};

pub(crate) fn elaborate(sdecls: &[SDecl]) -> Result<Document, Vec<Diagnostic>> {
    let mut ctx = Ctx {
        sig: Signature::new(),
        axioms: BTreeSet::new(),
        lemmas: BTreeSet::new(),
        schemata: BTreeMap::new(),
        sequents: BTreeSet::new(),
        doc_names: BTreeSet::new(),
        diags: Vec::new(),
    };
    let mut decls = Vec::new();
    for sd in sdecls {
        if let Ok(kind) = ctx.decl(&sd.kind) {
            decls.push(Decl {
                kind,
                span: sd.span.clone(),
            });
        }
    }
    if ctx.diags.iter().any(|d| d.severity == Severity::Error) {
        Err(ctx.diags)
    } else {
        Ok(Document {
            signature: ctx.sig,
            decls,
        })
    }
}

/// Elaborates one formula against an existing signature, for goals given
/// on a command line rather than in a file.
pub(crate) fn formula_in(sig: &Signature, sf: &SFormula) -> Result<Formula, Vec<Diagnostic>> {
    let mut ctx = Ctx {
        sig: sig.clone(),
        axioms: BTreeSet::new(),
        lemmas: BTreeSet::new(),
        schemata: BTreeMap::new(),
        sequents: BTreeSet::new(),
        doc_names: BTreeSet::new(),
        diags: Vec::new(),
    };
    let mut binders = Vec::new();
    match ctx.formula(sf, &mut binders) {
        Ok(f) => Ok(f),
        Err(()) => Err(ctx.diags),
    }
}

struct Ctx {
    sig: Signature,
    axioms: BTreeSet<String>,
    lemmas: BTreeSet<String>,
    schemata: BTreeMap<String, Vec<(String, MetaKind)>>,
    sequents: BTreeSet<String>,
    /// Names of axioms, schemata, lemmas, proofs, sequents, and
    /// derivations, which share one namespace at the document level.
    doc_names: BTreeSet<String>,
    diags: Vec<Diagnostic>,
}

type Binders = Vec<(String, String)>;

impl Ctx {
    fn err(&mut self, span: &SourceSpan, code: &'static str, message: impl Into<String>) {
        self.diags
            .push(Diagnostic::error(span.clone(), code, message));
    }

    fn is_sort(&self, name: &str) -> bool {
        self.sig.sorts().any(|s| s == name)
    }

    fn fresh_doc_name(&mut self, name: &SName) -> Result<(), ()> {
        if !self.doc_names.insert(name.text.clone()) {
            self.err(
                &name.span,
                "duplicate-name",
                format!("the name `{}` is already declared", name.text),
            );
            return Err(());
        }
        Ok(())
    }

    /// `=` at a sort auto-declares the equality predicate on first use.
    fn ensure_eq(&mut self, sort: &str, span: &SourceSpan) -> Result<(), ()> {
        match self.sig.predicate("eq") {
            Some(args) if args.len() == 2 && args[0] == sort && args[1] == sort => Ok(()),
            Some(args) => {
                self.err(
                    span,
                    "sort",
                    format!(
                        "`=` here compares {sort}, but eq is declared at ({})",
                        args.join(", ")
                    ),
                );
                Err(())
            }
            None => match self
                .sig
                .declare_predicate("eq", &[sort.to_string(), sort.to_string()])
            {
                Ok(()) => Ok(()),
                Err(e) => {
                    self.err(span, "duplicate-name", e.to_string());
                    Err(())
                }
            },
        }
    }

    // ------------------------------------------------------------------
    // Terms and formulas

    fn term(
        &mut self,
        st: &STerm,
        binders: &Binders,
        expected: Option<&str>,
    ) -> Result<(Term, String), ()> {
        let name = &st.name.text;
        let (term, sort) = if st.args.is_empty() {
            if let Some((_, sort)) = binders.iter().rev().find(|(n, _)| n == name) {
                (Term::var(name, sort), sort.clone())
            } else if let Some(sort) = self.sig.constant(name) {
                let sort = sort.to_string();
                (Term::constant(name), sort)
            } else if self.sig.predicate(name).is_some() {
                self.err(
                    &st.span,
                    "kind",
                    format!("`{name}` names a predicate, but a term is expected here"),
                );
                return Err(());
            } else {
                self.err(
                    &st.span,
                    "unknown-name",
                    format!("`{name}` is not a bound variable or declared constant"),
                );
                return Err(());
            }
        } else if let Some((arg_sorts, result)) = self.sig.function(name) {
            let arg_sorts: Vec<String> = arg_sorts.to_vec();
            let result = result.to_string();
            if st.args.len() != arg_sorts.len() {
                self.err(
                    &st.span,
                    "arity",
                    format!(
                        "function `{name}` takes {} argument(s), got {}",
                        arg_sorts.len(),
                        st.args.len()
                    ),
                );
                return Err(());
            }
            let mut args = Vec::with_capacity(st.args.len());
            let mut failed = false;
            for (a, s) in st.args.iter().zip(&arg_sorts) {
                match self.term(a, binders, Some(s)) {
                    Ok((t, _)) => args.push(t),
                    Err(()) => failed = true,
                }
            }
            if failed {
                return Err(());
            }
            (
                Term::App {
                    func: name.clone(),
                    args,
                },
                result,
            )
        } else if self.sig.predicate(name).is_some() {
            self.err(
                &st.span,
                "kind",
                format!("`{name}` is a predicate, not a function"),
            );
            return Err(());
        } else {
            self.err(
                &st.span,
                "unknown-name",
                format!("`{name}` is not a declared function"),
            );
            return Err(());
        };
        if let Some(e) = expected {
            if sort != e {
                self.err(
                    &st.span,
                    "sort",
                    format!("`{name}` has sort {sort}, but {e} is expected here"),
                );
                return Err(());
            }
        }
        Ok((term, sort))
    }

    fn formula(&mut self, sf: &SFormula, binders: &mut Binders) -> Result<Formula, ()> {
        match &sf.kind {
            SFormulaKind::Atom { name, args } => {
                let Some(arg_sorts) = self.sig.predicate(&name.text) else {
                    self.err(
                        &name.span,
                        "unknown-name",
                        format!("`{}` is not a declared predicate", name.text),
                    );
                    return Err(());
                };
                let arg_sorts: Vec<String> = arg_sorts.to_vec();
                if args.len() != arg_sorts.len() {
                    self.err(
                        &sf.span,
                        "arity",
                        format!(
                            "predicate `{}` takes {} argument(s), got {}",
                            name.text,
                            arg_sorts.len(),
                            args.len()
                        ),
                    );
                    return Err(());
                }
                let mut out = Vec::with_capacity(args.len());
                let mut failed = false;
                for (a, s) in args.iter().zip(&arg_sorts) {
                    match self.term(a, binders, Some(s)) {
                        Ok((t, _)) => out.push(t),
                        Err(()) => failed = true,
                    }
                }
                if failed {
                    return Err(());
                }
                Ok(Formula::Atom {
                    pred: name.text.clone(),
                    args: out,
                })
            }
            SFormulaKind::Eq {
                left,
                right,
                negated,
            } => {
                let (lt, ls) = self.term(left, binders, None)?;
                self.ensure_eq(&ls, &sf.span)?;
                let (rt, _) = self.term(right, binders, Some(&ls))?;
                let atom = Formula::atom("eq", vec![lt, rt]);
                Ok(if *negated { Formula::not(atom) } else { atom })
            }
            SFormulaKind::False => Ok(Formula::Falsum),
            SFormulaKind::And(a, b) => {
                let a = self.formula(a, binders);
                let b = self.formula(b, binders);
                Ok(Formula::and(a?, b?))
            }
            SFormulaKind::Or(a, b) => {
                let a = self.formula(a, binders);
                let b = self.formula(b, binders);
                Ok(Formula::or(a?, b?))
            }
            SFormulaKind::Implies(a, b) => {
                let a = self.formula(a, binders);
                let b = self.formula(b, binders);
                Ok(Formula::implies(a?, b?))
            }
            SFormulaKind::Not(a) => Ok(Formula::not(self.formula(a, binders)?)),
            SFormulaKind::Quant {
                exists,
                var,
                sort,
                body,
            } => {
                let sort = self.binder_sort(var, sort.as_ref(), body, binders)?;
                binders.push((var.text.clone(), sort.clone()));
                let b = self.formula(body, binders);
                binders.pop();
                let b = b?;
                Ok(if *exists {
                    Formula::exists(&var.text, &sort, b)
                } else {
                    Formula::forall(&var.text, &sort, b)
                })
            }
        }
    }

    /// Resolves a binder's sort: the annotation if present, the only
    /// declared sort if there is exactly one, and otherwise the sort
    /// demanded by the variable's first use in the body.
    fn binder_sort(
        &mut self,
        var: &SName,
        annotation: Option<&SName>,
        body: &SFormula,
        binders: &Binders,
    ) -> Result<String, ()> {
        if let Some(s) = annotation {
            if !self.is_sort(&s.text) {
                self.err(
                    &s.span,
                    "unknown-name",
                    format!("`{}` is not a declared sort", s.text),
                );
                return Err(());
            }
            return Ok(s.text.clone());
        }
        let sorts: Vec<String> = self.sig.sorts().map(|s| s.to_string()).collect();
        if sorts.len() == 1 {
            return Ok(sorts[0].clone());
        }
        if let Some(s) = self.infer_sort(body, &var.text, binders) {
            return Ok(s);
        }
        self.err(
            &var.span,
            "binder",
            format!(
                "cannot infer a sort for `{0}`; annotate the binder as `{0}:SORT`",
                var.text
            ),
        );
        Err(())
    }

    fn infer_sort(&self, sf: &SFormula, var: &str, binders: &Binders) -> Option<String> {
        match &sf.kind {
            SFormulaKind::Atom { name, args } => {
                let arg_sorts = self.sig.predicate(&name.text)?;
                let arg_sorts: Vec<String> = arg_sorts.to_vec();
                for (a, s) in args.iter().zip(&arg_sorts) {
                    if let Some(found) = self.infer_in_term(a, s, var) {
                        return Some(found);
                    }
                }
                None
            }
            SFormulaKind::Eq { left, right, .. } => {
                if left.args.is_empty() && left.name.text == var {
                    if let Some(s) = self.surface_sort(right, binders) {
                        return Some(s);
                    }
                }
                if right.args.is_empty() && right.name.text == var {
                    if let Some(s) = self.surface_sort(left, binders) {
                        return Some(s);
                    }
                }
                for side in [left, right] {
                    if !side.args.is_empty() {
                        if let Some((arg_sorts, _)) = self.sig.function(&side.name.text) {
                            let arg_sorts: Vec<String> = arg_sorts.to_vec();
                            for (a, s) in side.args.iter().zip(&arg_sorts) {
                                if let Some(found) = self.infer_in_term(a, s, var) {
                                    return Some(found);
                                }
                            }
                        }
                    }
                }
                None
            }
            SFormulaKind::False => None,
            SFormulaKind::And(a, b) | SFormulaKind::Or(a, b) | SFormulaKind::Implies(a, b) => self
                .infer_sort(a, var, binders)
                .or_else(|| self.infer_sort(b, var, binders)),
            SFormulaKind::Not(a) => self.infer_sort(a, var, binders),
            SFormulaKind::Quant {
                var: inner, body, ..
            } => {
                if inner.text == var {
                    None
                } else {
                    self.infer_sort(body, var, binders)
                }
            }
        }
    }

    fn infer_in_term(&self, st: &STerm, expected: &str, var: &str) -> Option<String> {
        if st.args.is_empty() {
            return (st.name.text == var).then(|| expected.to_string());
        }
        let (arg_sorts, _) = self.sig.function(&st.name.text)?;
        let arg_sorts: Vec<String> = arg_sorts.to_vec();
        for (a, s) in st.args.iter().zip(&arg_sorts) {
            if let Some(found) = self.infer_in_term(a, s, var) {
                return Some(found);
            }
        }
        None
    }

    /// Sort of a surface term when it is determined without elaboration.
    fn surface_sort(&self, st: &STerm, binders: &Binders) -> Option<String> {
        if st.args.is_empty() {
            if let Some((_, s)) = binders.iter().rev().find(|(n, _)| n == &st.name.text) {
                return Some(s.clone());
            }
            return self.sig.constant(&st.name.text).map(|s| s.to_string());
        }
        self.sig.function(&st.name.text).map(|(_, r)| r.to_string())
    }

    // ------------------------------------------------------------------
    // Templates

    fn template(
        &mut self,
        sf: &SFormula,
        params: &BTreeMap<String, MetaKind>,
        binders: &mut Binders,
    ) -> Result<TemplateFormula, ()> {
        match &sf.kind {
            SFormulaKind::Atom { name, args } => {
                match params.get(&name.text) {
                    Some(MetaKind::Formula) if args.is_empty() => {
                        return Ok(TemplateFormula::hole(&name.text));
                    }
                    Some(MetaKind::Formula) => {
                        self.err(
                            &name.span,
                            "kind",
                            format!("formula parameter `{}` takes no arguments", name.text),
                        );
                        return Err(());
                    }
                    Some(MetaKind::Term(_)) => {
                        self.err(
                            &name.span,
                            "kind",
                            format!(
                                "`{}` is a term parameter, used here as a formula",
                                name.text
                            ),
                        );
                        return Err(());
                    }
                    None => {}
                }
                let Some(arg_sorts) = self.sig.predicate(&name.text) else {
                    self.err(
                        &name.span,
                        "unknown-name",
                        format!("`{}` is not a declared predicate or parameter", name.text),
                    );
                    return Err(());
                };
                let arg_sorts: Vec<String> = arg_sorts.to_vec();
                if args.len() != arg_sorts.len() {
                    self.err(
                        &sf.span,
                        "arity",
                        format!(
                            "predicate `{}` takes {} argument(s), got {}",
                            name.text,
                            arg_sorts.len(),
                            args.len()
                        ),
                    );
                    return Err(());
                }
                let mut out = Vec::with_capacity(args.len());
                let mut failed = false;
                for (a, s) in args.iter().zip(&arg_sorts) {
                    match self.template_term(a, params, binders, Some(s)) {
                        Ok((t, _)) => out.push(t),
                        Err(()) => failed = true,
                    }
                }
                if failed {
                    return Err(());
                }
                Ok(TemplateFormula::atom(&name.text, out))
            }
            SFormulaKind::Eq {
                left,
                right,
                negated,
            } => {
                let (lt, ls) = self.template_term(left, params, binders, None)?;
                self.ensure_eq(&ls, &sf.span)?;
                let (rt, _) = self.template_term(right, params, binders, Some(&ls))?;
                let atom = TemplateFormula::atom("eq", vec![lt, rt]);
                Ok(if *negated {
                    TemplateFormula::not(atom)
                } else {
                    atom
                })
            }
            SFormulaKind::False => Ok(TemplateFormula::Falsum),
            SFormulaKind::And(a, b) => {
                let a = self.template(a, params, binders);
                let b = self.template(b, params, binders);
                Ok(TemplateFormula::and(a?, b?))
            }
            SFormulaKind::Or(a, b) => {
                let a = self.template(a, params, binders);
                let b = self.template(b, params, binders);
                Ok(TemplateFormula::or(a?, b?))
            }
            SFormulaKind::Implies(a, b) => {
                let a = self.template(a, params, binders);
                let b = self.template(b, params, binders);
                Ok(TemplateFormula::implies(a?, b?))
            }
            SFormulaKind::Not(a) => Ok(TemplateFormula::not(self.template(a, params, binders)?)),
            SFormulaKind::Quant {
                exists,
                var,
                sort,
                body,
            } => {
                let sort = self.binder_sort(var, sort.as_ref(), body, binders)?;
                binders.push((var.text.clone(), sort.clone()));
                let b = self.template(body, params, binders);
                binders.pop();
                let b = b?;
                Ok(if *exists {
                    TemplateFormula::exists(&var.text, &sort, b)
                } else {
                    TemplateFormula::forall(&var.text, &sort, b)
                })
            }
        }
    }

    fn template_term(
        &mut self,
        st: &STerm,
        params: &BTreeMap<String, MetaKind>,
        binders: &Binders,
        expected: Option<&str>,
    ) -> Result<(TemplateTerm, String), ()> {
        let name = &st.name.text;
        let (term, sort) = if st.args.is_empty() {
            if let Some((_, sort)) = binders.iter().rev().find(|(n, _)| n == name) {
                (
                    TemplateTerm::Var {
                        name: name.clone(),
                        sort: sort.clone(),
                    },
                    sort.clone(),
                )
            } else if let Some(kind) = params.get(name) {
                match kind {
                    MetaKind::Term(sort) => (TemplateTerm::Hole(name.clone()), sort.clone()),
                    MetaKind::Formula => {
                        self.err(
                            &st.span,
                            "kind",
                            format!("`{name}` is a formula parameter, used here as a term"),
                        );
                        return Err(());
                    }
                }
            } else if let Some(sort) = self.sig.constant(name) {
                let sort = sort.to_string();
                (TemplateTerm::Const(name.clone()), sort)
            } else {
                self.err(
                    &st.span,
                    "unknown-name",
                    format!("`{name}` is not a bound variable, parameter, or constant"),
                );
                return Err(());
            }
        } else if let Some((arg_sorts, result)) = self.sig.function(name) {
            let arg_sorts: Vec<String> = arg_sorts.to_vec();
            let result = result.to_string();
            if st.args.len() != arg_sorts.len() {
                self.err(
                    &st.span,
                    "arity",
                    format!(
                        "function `{name}` takes {} argument(s), got {}",
                        arg_sorts.len(),
                        st.args.len()
                    ),
                );
                return Err(());
            }
            let mut args = Vec::with_capacity(st.args.len());
            let mut failed = false;
            for (a, s) in st.args.iter().zip(&arg_sorts) {
                match self.template_term(a, params, binders, Some(s)) {
                    Ok((t, _)) => args.push(t),
                    Err(()) => failed = true,
                }
            }
            if failed {
                return Err(());
            }
            (
                TemplateTerm::App {
                    func: name.clone(),
                    args,
                },
                result,
            )
        } else {
            self.err(
                &st.span,
                "unknown-name",
                format!("`{name}` is not a declared function"),
            );
            return Err(());
        };
        if let Some(e) = expected {
            if sort != e {
                self.err(
                    &st.span,
                    "sort",
                    format!("`{name}` has sort {sort}, but {e} is expected here"),
                );
                return Err(());
            }
        }
        Ok((term, sort))
    }

    // ------------------------------------------------------------------
    // Proofs

    /// The top of a lemma, proof, or generic schema proof: a brace block
    /// whose own assume/fix slots must be empty, since nothing could
    /// ever discharge them.
    fn proof_body(&mut self, sb: &SBlock, what: &str) -> Result<Vec<BlockItem>, ()> {
        if sb.assume.is_some() || sb.fix.is_some() {
            self.err(
                &sb.span,
                "hypothesis",
                format!(
                    "a {what} cannot open with assume or fix; put the hypothesis in a nested block"
                ),
            );
            return Err(());
        }
        let mut binders = Vec::new();
        self.items(&sb.items, &mut binders)
    }

    fn items(&mut self, sitems: &[SItem], binders: &mut Binders) -> Result<Vec<BlockItem>, ()> {
        let mut out = Vec::with_capacity(sitems.len());
        let mut failed = false;
        for item in sitems {
            let elaborated = match item {
                SItem::Line(l) => self.proof_line(l, binders).map(BlockItem::Line),
                SItem::Block(b) => self.proof_block(b, binders).map(BlockItem::Block),
            };
            match elaborated {
                Ok(i) => out.push(i),
                Err(()) => failed = true,
            }
        }
        if failed {
            return Err(());
        }
        Ok(out)
    }

    fn proof_block(&mut self, sb: &SBlock, binders: &mut Binders) -> Result<Block, ()> {
        let mut eigen = None;
        if let Some((var, sort)) = &sb.fix {
            if !self.is_sort(&sort.text) {
                self.err(
                    &sort.span,
                    "unknown-name",
                    format!("`{}` is not a declared sort", sort.text),
                );
                return Err(());
            }
            eigen = Some((var.text.clone(), sort.text.clone()));
        }
        // The fixed variable scopes over the hypothesis, as in a block
        // that picks a witness and assumes something about it.
        if let Some(e) = &eigen {
            binders.push(e.clone());
        }
        let result = (|| {
            let hypothesis = match &sb.assume {
                Some((label, f)) => Some((label.text.clone(), self.formula(f, binders)?)),
                None => None,
            };
            let items = self.items(&sb.items, binders)?;
            Ok(Block {
                eigen: eigen.clone(),
                hypothesis,
                items,
            })
        })();
        if eigen.is_some() {
            binders.pop();
        }
        result
    }

    fn proof_line(&mut self, sl: &SLine, binders: &mut Binders) -> Result<Line, ()> {
        let formula = self.formula(&sl.formula, binders);
        let rule = self.rule(&sl.rule, binders);
        Ok(Line {
            label: sl.label.text.clone(),
            formula: formula?,
            rule: rule?,
        })
    }

    fn rule(&mut self, sr: &SRule, binders: &mut Binders) -> Result<Justification, ()> {
        match sr {
            SRule::Axiom(n) => {
                if !self.axioms.contains(&n.text) {
                    self.err(
                        &n.span,
                        "unknown-name",
                        format!("`{}` is not a previously declared axiom", n.text),
                    );
                    return Err(());
                }
                Ok(Justification::Axiom(n.text.clone()))
            }
            SRule::Lemma(n) => {
                if !self.lemmas.contains(&n.text) {
                    self.err(
                        &n.span,
                        "unknown-name",
                        format!("`{}` is not a previously proven lemma", n.text),
                    );
                    return Err(());
                }
                Ok(Justification::Lemma(n.text.clone()))
            }
            SRule::Schema { name, args } => {
                let Some(params) = self.schemata.get(&name.text).cloned() else {
                    self.err(
                        &name.span,
                        "unknown-name",
                        format!("`{}` is not a previously declared schema", name.text),
                    );
                    return Err(());
                };
                if args.len() != params.len() {
                    self.err(
                        &name.span,
                        "arity",
                        format!(
                            "schema `{}` takes {} argument(s), got {}",
                            name.text,
                            params.len(),
                            args.len()
                        ),
                    );
                    return Err(());
                }
                let mut out = Vec::with_capacity(args.len());
                for (arg, (pname, kind)) in args.iter().zip(&params) {
                    match kind {
                        MetaKind::Formula => {
                            out.push(SchemaArg::Formula(self.formula(arg, binders)?));
                        }
                        MetaKind::Term(sort) => {
                            let st = self.as_term(arg, pname)?;
                            let (t, _) = self.term(&st, binders, Some(sort))?;
                            out.push(SchemaArg::Term(t));
                        }
                    }
                }
                Ok(Justification::SchemaUse {
                    name: name.text.clone(),
                    args: out,
                })
            }
            SRule::WithTerm { name, label, term } => {
                let (t, _) = self.term(term, binders, None)?;
                match name.text.as_str() {
                    "all_e" => Ok(Justification::AllE {
                        from: label.text.clone(),
                        term: t,
                    }),
                    "ex_i" => Ok(Justification::ExI {
                        from: label.text.clone(),
                        witness: t,
                    }),
                    _ => unreachable!("parser only routes all_e and ex_i here"),
                }
            }
            SRule::Labels { name, labels } => self.label_rule(name, labels),
        }
    }

    /// A schema argument for a term parameter reuses the formula grammar,
    /// so only atom-shaped arguments can be re-read as terms.
    fn as_term(&mut self, sf: &SFormula, param: &str) -> Result<STerm, ()> {
        match &sf.kind {
            SFormulaKind::Atom { name, args } => Ok(STerm {
                name: name.clone(),
                args: args.clone(),
                span: sf.span.clone(),
            }),
            _ => {
                self.err(
                    &sf.span,
                    "kind",
                    format!("parameter `{param}` needs a term, but this argument is a formula"),
                );
                Err(())
            }
        }
    }

    fn label_rule(&mut self, name: &SName, labels: &[SName]) -> Result<Justification, ()> {
        let arity: usize = match name.text.as_str() {
            "and_i" | "imp_e" | "ex_e" => 2,
            "and_e1" | "and_e2" | "or_i1" | "or_i2" | "imp_i" | "raa" | "all_i" | "reit" => 1,
            "or_e" => 3,
            other => {
                self.err(
                    &name.span,
                    "unknown-name",
                    format!("`{other}` is not a rule"),
                );
                return Err(());
            }
        };
        if labels.len() != arity {
            self.err(
                &name.span,
                "arity",
                format!(
                    "rule `{}` takes {} citation(s), got {}",
                    name.text,
                    arity,
                    labels.len()
                ),
            );
            return Err(());
        }
        let l = |i: usize| labels[i].text.clone();
        Ok(match name.text.as_str() {
            "and_i" => Justification::AndI {
                left: l(0),
                right: l(1),
            },
            "and_e1" => Justification::AndE1 { from: l(0) },
            "and_e2" => Justification::AndE2 { from: l(0) },
            "or_i1" => Justification::OrI1 { from: l(0) },
            "or_i2" => Justification::OrI2 { from: l(0) },
            "or_e" => Justification::OrE {
                disjunction: l(0),
                left: l(1),
                right: l(2),
            },
            "imp_i" => Justification::ImpI { block: l(0) },
            "imp_e" => Justification::ImpE {
                implication: l(0),
                antecedent: l(1),
            },
            "raa" => Justification::Raa { block: l(0) },
            "all_i" => Justification::AllI { block: l(0) },
            "ex_e" => Justification::ExE {
                existential: l(0),
                block: l(1),
            },
            "reit" => Justification::Reit { from: l(0) },
            _ => unreachable!(),
        })
    }

    // ------------------------------------------------------------------
    // Declarations

    fn decl(&mut self, sd: &SDeclKind) -> Result<DeclKind, ()> {
        match sd {
            SDeclKind::Sort { name } => {
                if let Err(e) = self.sig.declare_sort(&name.text) {
                    self.err(&name.span, "duplicate-name", e.to_string());
                    return Err(());
                }
                Ok(DeclKind::Sort {
                    name: name.text.clone(),
                })
            }
            SDeclKind::Pred { name, args } => {
                let arg_sorts = self.sort_args(args)?;
                if let Err(e) = self.sig.declare_predicate(&name.text, &arg_sorts) {
                    self.err(&name.span, "duplicate-name", e.to_string());
                    return Err(());
                }
                Ok(DeclKind::Pred {
                    name: name.text.clone(),
                    args: arg_sorts,
                })
            }
            SDeclKind::Fn { name, args, result } => {
                let arg_sorts = self.sort_args(args)?;
                if !self.is_sort(&result.text) {
                    self.err(
                        &result.span,
                        "unknown-name",
                        format!("`{}` is not a declared sort", result.text),
                    );
                    return Err(());
                }
                if let Err(e) = self
                    .sig
                    .declare_function(&name.text, &arg_sorts, &result.text)
                {
                    self.err(&name.span, "duplicate-name", e.to_string());
                    return Err(());
                }
                Ok(DeclKind::Fn {
                    name: name.text.clone(),
                    args: arg_sorts,
                    result: result.text.clone(),
                })
            }
            SDeclKind::Const { name, sort } => {
                if !self.is_sort(&sort.text) {
                    self.err(
                        &sort.span,
                        "unknown-name",
                        format!("`{}` is not a declared sort", sort.text),
                    );
                    return Err(());
                }
                if let Err(e) = self.sig.declare_constant(&name.text, &sort.text) {
                    self.err(&name.span, "duplicate-name", e.to_string());
                    return Err(());
                }
                Ok(DeclKind::Const {
                    name: name.text.clone(),
                    sort: sort.text.clone(),
                })
            }
            SDeclKind::Axiom { name, formula } => {
                self.fresh_doc_name(name)?;
                let mut binders = Vec::new();
                let f = self.formula(formula, &mut binders)?;
                self.axioms.insert(name.text.clone());
                Ok(DeclKind::Axiom {
                    name: name.text.clone(),
                    formula: f,
                })
            }
            SDeclKind::Schema {
                name,
                params,
                template,
                body,
            } => {
                self.fresh_doc_name(name)?;
                let params_elab = self.schema_params(name, params)?;
                let param_map: BTreeMap<String, MetaKind> = params_elab.iter().cloned().collect();
                let mut binders = Vec::new();
                let template_elab = self.template(template, &param_map, &mut binders)?;
                let proof = match body {
                    None => None,
                    Some(sb) => Some(self.generic_proof(name, &params_elab, &template_elab, sb)?),
                };
                self.schemata.insert(name.text.clone(), params_elab.clone());
                Ok(DeclKind::Schema {
                    name: name.text.clone(),
                    params: params_elab,
                    template: template_elab,
                    proof,
                })
            }
            SDeclKind::Lemma { name, goal, body } => {
                self.fresh_doc_name(name)?;
                let mut binders = Vec::new();
                let g = self.formula(goal, &mut binders)?;
                let items = self.proof_body(body, "lemma")?;
                self.lemmas.insert(name.text.clone());
                Ok(DeclKind::Lemma {
                    name: name.text.clone(),
                    proof: Proof {
                        goal: g,
                        body: items,
                    },
                })
            }
            SDeclKind::Proof { name, goal, body } => {
                self.fresh_doc_name(name)?;
                let mut binders = Vec::new();
                let g = self.formula(goal, &mut binders)?;
                let items = self.proof_body(body, "proof")?;
                Ok(DeclKind::Proof {
                    name: name.text.clone(),
                    proof: Proof {
                        goal: g,
                        body: items,
                    },
                })
            }
            SDeclKind::Sequent {
                name,
                premises,
                conclusion,
            } => {
                self.fresh_doc_name(name)?;
                let mut binders = Vec::new();
                let mut prem = Vec::with_capacity(premises.len());
                let mut failed = false;
                for p in premises {
                    match self.formula(p, &mut binders) {
                        Ok(f) => prem.push(f),
                        Err(()) => failed = true,
                    }
                }
                let conclusion = self.formula(conclusion, &mut binders);
                if failed {
                    return Err(());
                }
                let sequent = Sequent::new(prem, conclusion?);
                self.sequents.insert(name.text.clone());
                Ok(DeclKind::Sequent {
                    name: name.text.clone(),
                    sequent,
                })
            }
            SDeclKind::Derive { name, steps } => {
                self.fresh_doc_name(name)?;
                let mut out = Vec::with_capacity(steps.len());
                let mut failed = false;
                for s in steps {
                    match self.step(s) {
                        Ok(step) => out.push(step),
                        Err(()) => failed = true,
                    }
                }
                if failed {
                    return Err(());
                }
                Ok(DeclKind::Derive {
                    name: name.text.clone(),
                    derivation: SequentDerivation { steps: out },
                })
            }
        }
    }

    fn sort_args(&mut self, args: &[SName]) -> Result<Vec<String>, ()> {
        let mut out = Vec::with_capacity(args.len());
        let mut failed = false;
        for a in args {
            if self.is_sort(&a.text) {
                out.push(a.text.clone());
            } else {
                self.err(
                    &a.span,
                    "unknown-name",
                    format!("`{}` is not a declared sort", a.text),
                );
                failed = true;
            }
        }
        if failed {
            return Err(());
        }
        Ok(out)
    }

    fn schema_params(
        &mut self,
        schema: &SName,
        params: &[SParam],
    ) -> Result<Vec<(String, MetaKind)>, ()> {
        let mut out: Vec<(String, MetaKind)> = Vec::with_capacity(params.len());
        let mut failed = false;
        for p in params {
            if out.iter().any(|(n, _)| n == &p.name.text) {
                self.err(
                    &p.name.span,
                    "duplicate-name",
                    format!(
                        "schema `{}` repeats the parameter `{}`",
                        schema.text, p.name.text
                    ),
                );
                failed = true;
                continue;
            }
            let kind = match &p.kind {
                SParamKind::Formula => MetaKind::Formula,
                SParamKind::Term(sort) => {
                    if !self.is_sort(&sort.text) {
                        self.err(
                            &sort.span,
                            "unknown-name",
                            format!("`{}` is not a declared sort", sort.text),
                        );
                        failed = true;
                        continue;
                    }
                    MetaKind::Term(sort.text.clone())
                }
            };
            out.push((p.name.text.clone(), kind));
        }
        if failed {
            return Err(());
        }
        Ok(out)
    }

    /// A schema's proof body is checked at generic arguments: each
    /// formula parameter read as a fresh nullary predicate of the same
    /// name, each term parameter as a fresh constant.
    fn generic_proof(
        &mut self,
        name: &SName,
        params: &[(String, MetaKind)],
        template: &TemplateFormula,
        sb: &SBlock,
    ) -> Result<Proof, ()> {
        let mut extended = self.sig.clone();
        let mut generic_args = Vec::with_capacity(params.len());
        for (pname, kind) in params {
            let declared = match kind {
                MetaKind::Formula => extended.declare_predicate(pname, &[]).is_ok(),
                MetaKind::Term(sort) => extended.declare_constant(pname, sort).is_ok(),
            };
            if !declared {
                self.err(
                    &name.span,
                    "duplicate-name",
                    format!(
                        "parameter `{pname}` clashes with a declared symbol; \
                         a generic proof needs fresh parameter names"
                    ),
                );
                return Err(());
            }
            generic_args.push(match kind {
                MetaKind::Formula => SchemaArg::Formula(Formula::atom(pname, vec![])),
                MetaKind::Term(_) => SchemaArg::Term(Term::constant(pname)),
            });
        }
        std::mem::swap(&mut self.sig, &mut extended);
        let body = self.proof_body(sb, "schema proof");
        std::mem::swap(&mut self.sig, &mut extended);
        let body = body?;
        let candidate = Schema {
            name: name.text.clone(),
            params: params.to_vec(),
            template: template.clone(),
            proven: None,
        };
        let goal = match candidate.instantiate(&extended, &generic_args) {
            Ok(g) => g,
            Err(e) => {
                self.err(&name.span, "schema", e.to_string());
                return Err(());
            }
        };
        Ok(Proof { goal, body })
    }

    fn step(&mut self, ss: &SStep) -> Result<Step, ()> {
        let mut binders = Vec::new();
        let mut prem = Vec::with_capacity(ss.premises.len());
        let mut failed = false;
        for p in &ss.premises {
            match self.formula(p, &mut binders) {
                Ok(f) => prem.push(f),
                Err(()) => failed = true,
            }
        }
        let conclusion = self.formula(&ss.conclusion, &mut binders);
        let rule = match &ss.rule {
            SStepRule::Base(n) => {
                if !self.sequents.contains(&n.text) {
                    self.err(
                        &n.span,
                        "unknown-name",
                        format!("`{}` is not a previously declared sequent", n.text),
                    );
                    failed = true;
                }
                StepRule::Base(n.text.clone())
            }
            SStepRule::Indem => StepRule::Indemonstrable,
            SStepRule::Cut {
                target,
                source,
                position,
            } => StepRule::Cut {
                target: target.text.clone(),
                source: source.text.clone(),
                position: *position,
            },
        };
        if failed {
            return Err(());
        }
        Ok(Step {
            label: ss.label.text.clone(),
            sequent: Sequent::new(prem, conclusion?),
            rule,
        })
    }
}
