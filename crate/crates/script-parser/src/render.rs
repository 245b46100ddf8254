//! Renders a document back to script text in a canonical layout:
//! one declaration per top-level item, two-space indentation inside
//! braces, and formulas printed by the core display grammar. Rendered
//! text parses back to a structurally equal document.

use std::fmt::Write;

use crate::document::{DeclKind, Document};
use logic_core::{Formula, Term};
use proof_kernel::{
    Block, BlockItem, Justification, MetaKind, Proof, SchemaArg, TemplateFormula, TemplateTerm,
};
use stoic_sequents::{SequentDerivation, StepRule};

pub fn render_document(doc: &Document) -> String {
    let mut out = String::new();
    for (i, decl) in doc.decls.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        match &decl.kind {
            DeclKind::Sort { name } => {
                let _ = writeln!(out, "sort {name};");
            }
            DeclKind::Pred { name, args } => {
                if args.is_empty() {
                    let _ = writeln!(out, "pred {name};");
                } else {
                    let _ = writeln!(out, "pred {name}({});", args.join(", "));
                }
            }
            DeclKind::Fn { name, args, result } => {
                let _ = writeln!(out, "fn {name}({}) -> {result};", args.join(", "));
            }
            DeclKind::Const { name, sort } => {
                let _ = writeln!(out, "const {name}: {sort};");
            }
            DeclKind::Axiom { name, formula } => {
                let _ = writeln!(out, "axiom {name} : {formula};");
            }
            DeclKind::Schema {
                name,
                params,
                template,
                proof,
            } => {
                let params: Vec<String> = params
                    .iter()
                    .map(|(n, k)| match k {
                        MetaKind::Formula => format!("{n}: formula"),
                        MetaKind::Term(sort) => format!("{n}: term {sort}"),
                    })
                    .collect();
                let shown = template_formula(template);
                let _ = write!(out, "schema {name} [{}] : {shown}", params.join(", "));
                match proof {
                    None => out.push_str(";\n"),
                    Some(p) => {
                        out.push_str(" {\n");
                        push_items(&mut out, &p.body, 1);
                        out.push_str("}\n");
                    }
                }
            }
            DeclKind::Lemma { name, proof } => push_proof(&mut out, "lemma", name, proof),
            DeclKind::Proof { name, proof } => push_proof(&mut out, "proof", name, proof),
            DeclKind::Sequent { name, sequent } => {
                let _ = writeln!(out, "sequent {name} : {sequent};");
            }
            DeclKind::Derive { name, derivation } => {
                push_derivation(&mut out, name, derivation);
            }
        }
    }
    out
}

fn push_proof(out: &mut String, keyword: &str, name: &str, proof: &Proof) {
    let _ = write!(out, "{keyword} {name} : {} {{\n", proof.goal);
    push_items(out, &proof.body, 1);
    out.push_str("}\n");
}

fn indent(out: &mut String, level: usize) {
    for _ in 0..level {
        out.push_str("  ");
    }
}

fn push_items(out: &mut String, items: &[BlockItem], level: usize) {
    for item in items {
        match item {
            BlockItem::Line(l) => {
                indent(out, level);
                let _ = writeln!(out, "{}: {} by {};", l.label, l.formula, rule_text(&l.rule));
            }
            BlockItem::Block(b) => push_block(out, b, level),
        }
    }
}

fn push_block(out: &mut String, block: &Block, level: usize) {
    indent(out, level);
    out.push_str("{\n");
    if let Some((label, f)) = &block.hypothesis {
        indent(out, level + 1);
        let _ = writeln!(out, "assume {label}: {f};");
    }
    if let Some((var, sort)) = &block.eigen {
        indent(out, level + 1);
        let _ = writeln!(out, "fix {var}: {sort};");
    }
    push_items(out, &block.items, level + 1);
    indent(out, level);
    out.push_str("}\n");
}

fn rule_text(rule: &Justification) -> String {
    let name = rule.rule_name();
    match rule {
        Justification::Axiom(n) | Justification::Lemma(n) => format!("{name} {n}"),
        Justification::SchemaUse { name: schema, args } => {
            let args: Vec<String> = args
                .iter()
                .map(|a| match a {
                    SchemaArg::Formula(f) => f.to_string(),
                    SchemaArg::Term(t) => t.to_string(),
                })
                .collect();
            format!("{name} {schema} [{}]", args.join(", "))
        }
        Justification::AndI { left, right } => format!("{name} {left} {right}"),
        Justification::AndE1 { from }
        | Justification::AndE2 { from }
        | Justification::OrI1 { from }
        | Justification::OrI2 { from }
        | Justification::Reit { from } => format!("{name} {from}"),
        Justification::OrE {
            disjunction,
            left,
            right,
        } => {
            format!("{name} {disjunction} {left} {right}")
        }
        Justification::ImpI { block }
        | Justification::Raa { block }
        | Justification::AllI { block } => {
            format!("{name} {block}")
        }
        Justification::ImpE {
            implication,
            antecedent,
        } => {
            format!("{name} {implication} {antecedent}")
        }
        Justification::AllE { from, term } => format!("{name} {from} [{term}]"),
        Justification::ExI { from, witness } => format!("{name} {from} [{witness}]"),
        Justification::ExE { existential, block } => format!("{name} {existential} {block}"),
    }
}

fn push_derivation(out: &mut String, name: &str, derivation: &SequentDerivation) {
    let _ = writeln!(out, "derive {name} {{");
    for step in &derivation.steps {
        indent(out, 1);
        let rule = match &step.rule {
            StepRule::Base(n) => format!("base {n}"),
            StepRule::Indemonstrable => "indem".to_string(),
            StepRule::Cut {
                target,
                source,
                position,
            } => {
                format!("cut {target} {source} {position}")
            }
        };
        let _ = writeln!(out, "{}: {} by {};", step.label, step.sequent, rule);
    }
    out.push_str("}\n");
}

/// A template prints through the formula grammar, with each hole shown
/// as a bare name: formula holes as nullary atoms, term holes as
/// constants. This matches how the parser reads them back inside a
/// schema declaration.
fn template_formula(t: &TemplateFormula) -> Formula {
    match t {
        TemplateFormula::Hole(n) => Formula::atom(n, vec![]),
        TemplateFormula::Atom { pred, args } => Formula::Atom {
            pred: pred.clone(),
            args: args.iter().map(template_term).collect(),
        },
        TemplateFormula::Falsum => Formula::Falsum,
        TemplateFormula::And(a, b) => Formula::and(template_formula(a), template_formula(b)),
        TemplateFormula::Or(a, b) => Formula::or(template_formula(a), template_formula(b)),
        TemplateFormula::Implies(a, b) => {
            Formula::implies(template_formula(a), template_formula(b))
        }
        TemplateFormula::Forall { var, sort, body } => {
            Formula::forall(var, sort, template_formula(body))
        }
        TemplateFormula::Exists { var, sort, body } => {
            Formula::exists(var, sort, template_formula(body))
        }
    }
}

fn template_term(t: &TemplateTerm) -> Term {
    match t {
        TemplateTerm::Hole(n) => Term::constant(n),
        TemplateTerm::Var { name, sort } => Term::var(name, sort),
        TemplateTerm::Const(n) => Term::constant(n),
        TemplateTerm::App { func, args } => Term::App {
            func: func.clone(),
            args: args.iter().map(template_term).collect(),
        },
    }
}
