//! Formula schemata: templates over formula and term metavariables.
//!
//! A schema stands for the family of formulas obtained by filling its
//! holes. Instantiation is eager and refuses arguments whose free
//! variables would be captured by a binder inside the template.

use crate::report::Classification;
use logic_core::{fresh_var, term_sort, Formula, FreeName, Signature, Term};
use std::collections::BTreeMap;
use std::fmt;

/// What a metavariable ranges over.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MetaKind {
    Formula,
    /// Terms of the named sort.
    Term(String),
}

/// Term with holes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TemplateTerm {
    Hole(String),
    Var {
        name: String,
        sort: String,
    },
    Const(String),
    App {
        func: String,
        args: Vec<TemplateTerm>,
    },
}

/// Formula with holes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TemplateFormula {
    Hole(String),
    Atom {
        pred: String,
        args: Vec<TemplateTerm>,
    },
    Falsum,
    And(Box<TemplateFormula>, Box<TemplateFormula>),
    Or(Box<TemplateFormula>, Box<TemplateFormula>),
    Implies(Box<TemplateFormula>, Box<TemplateFormula>),
    Forall {
        var: String,
        sort: String,
        body: Box<TemplateFormula>,
    },
    Exists {
        var: String,
        sort: String,
        body: Box<TemplateFormula>,
    },
}

impl TemplateFormula {
    pub fn hole(name: impl Into<String>) -> Self {
        TemplateFormula::Hole(name.into())
    }

    pub fn atom(pred: impl Into<String>, args: Vec<TemplateTerm>) -> Self {
        TemplateFormula::Atom {
            pred: pred.into(),
            args,
        }
    }

    pub fn and(a: TemplateFormula, b: TemplateFormula) -> Self {
        TemplateFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: TemplateFormula, b: TemplateFormula) -> Self {
        TemplateFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: TemplateFormula, b: TemplateFormula) -> Self {
        TemplateFormula::Implies(Box::new(a), Box::new(b))
    }

    pub fn not(a: TemplateFormula) -> Self {
        TemplateFormula::implies(a, TemplateFormula::Falsum)
    }

    pub fn forall(var: impl Into<String>, sort: impl Into<String>, body: TemplateFormula) -> Self {
        TemplateFormula::Forall {
            var: var.into(),
            sort: sort.into(),
            body: Box::new(body),
        }
    }

    pub fn exists(var: impl Into<String>, sort: impl Into<String>, body: TemplateFormula) -> Self {
        TemplateFormula::Exists {
            var: var.into(),
            sort: sort.into(),
            body: Box::new(body),
        }
    }

    /// A template with no holes, from a plain formula.
    pub fn lift(f: &Formula) -> Self {
        fn lift_term(t: &Term) -> TemplateTerm {
            match t {
                Term::Var { name, sort } => TemplateTerm::Var {
                    name: name.clone(),
                    sort: sort.clone(),
                },
                Term::Const { name } => TemplateTerm::Const(name.clone()),
                Term::App { func, args } => TemplateTerm::App {
                    func: func.clone(),
                    args: args.iter().map(lift_term).collect(),
                },
            }
        }
        match f {
            Formula::Atom { pred, args } => TemplateFormula::Atom {
                pred: pred.clone(),
                args: args.iter().map(lift_term).collect(),
            },
            Formula::Falsum => TemplateFormula::Falsum,
            Formula::And(a, b) => TemplateFormula::and(Self::lift(a), Self::lift(b)),
            Formula::Or(a, b) => TemplateFormula::or(Self::lift(a), Self::lift(b)),
            Formula::Implies(a, b) => TemplateFormula::implies(Self::lift(a), Self::lift(b)),
            Formula::Forall { var, sort, body } => {
                TemplateFormula::forall(var.clone(), sort.clone(), Self::lift(body))
            }
            Formula::Exists { var, sort, body } => {
                TemplateFormula::exists(var.clone(), sort.clone(), Self::lift(body))
            }
        }
    }

    /// Names of every hole, in first-occurrence order.
    pub fn holes(&self) -> Vec<String> {
        fn term_holes(t: &TemplateTerm, out: &mut Vec<String>) {
            match t {
                TemplateTerm::Hole(h) => {
                    if !out.iter().any(|x| x == h) {
                        out.push(h.clone());
                    }
                }
                TemplateTerm::Var { .. } | TemplateTerm::Const(_) => {}
                TemplateTerm::App { args, .. } => {
                    for a in args {
                        term_holes(a, out);
                    }
                }
            }
        }
        fn walk(f: &TemplateFormula, out: &mut Vec<String>) {
            match f {
                TemplateFormula::Hole(h) => {
                    if !out.iter().any(|x| x == h) {
                        out.push(h.clone());
                    }
                }
                TemplateFormula::Atom { args, .. } => {
                    for a in args {
                        term_holes(a, out);
                    }
                }
                TemplateFormula::Falsum => {}
                TemplateFormula::And(a, b)
                | TemplateFormula::Or(a, b)
                | TemplateFormula::Implies(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                TemplateFormula::Forall { body, .. } | TemplateFormula::Exists { body, .. } => {
                    walk(body, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}

/// Actual argument supplied for a metavariable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchemaArg {
    Formula(Formula),
    Term(Term),
}

/// A named schema: ordered parameters and a template.
#[derive(Clone, Debug)]
pub struct Schema {
    pub name: String,
    pub params: Vec<(String, MetaKind)>,
    pub template: TemplateFormula,
    /// Set when a generic proof of the template was checked at
    /// registration; carries that proof's classification.
    pub proven: Option<Classification>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchemaError {
    ArityMismatch {
        schema: String,
        expected: usize,
        got: usize,
    },
    KindMismatch {
        schema: String,
        param: String,
    },
    ArgSort {
        schema: String,
        param: String,
        expected: String,
        found: String,
    },
    Capture {
        schema: String,
        param: String,
        var: String,
        sort: String,
    },
    NotFirstOrder {
        schema: String,
        param: String,
    },
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemaError::ArityMismatch {
                schema,
                expected,
                got,
            } => {
                write!(f, "schema {schema} takes {expected} arguments, got {got}")
            }
            SchemaError::KindMismatch { schema, param } => {
                write!(
                    f,
                    "argument for {param} of schema {schema} has the wrong kind"
                )
            }
            SchemaError::ArgSort {
                schema,
                param,
                expected,
                found,
            } => write!(
                f,
                "argument for {param} of schema {schema} must have sort {expected}: {found}"
            ),
            SchemaError::Capture {
                schema,
                param,
                var,
                sort,
            } => write!(
                f,
                "argument for {param} of schema {schema} would capture {var}:{sort}"
            ),
            SchemaError::NotFirstOrder { schema, param } => write!(
                f,
                "schema {schema} has formula metavariable {param} and no finite first-order reading"
            ),
        }
    }
}

/// Free variables of an argument, as (name, sort) pairs.
fn arg_free_vars(arg: &SchemaArg) -> Vec<(String, String)> {
    let f = match arg {
        SchemaArg::Formula(f) => f.clone(),
        SchemaArg::Term(t) => Formula::atom("__probe", vec![t.clone()]),
    };
    logic_core::free_names(&f)
        .into_iter()
        .filter_map(|n| match n {
            FreeName::Var { name, sort } => Some((name, sort)),
            FreeName::Const(_) => None,
        })
        .collect()
}

impl Schema {
    /// Fills the template with `args`, checking arity, kinds, term sorts,
    /// and that no free variable of an argument is captured by a binder
    /// inside the template.
    pub fn instantiate(&self, sig: &Signature, args: &[SchemaArg]) -> Result<Formula, SchemaError> {
        if args.len() != self.params.len() {
            return Err(SchemaError::ArityMismatch {
                schema: self.name.clone(),
                expected: self.params.len(),
                got: args.len(),
            });
        }
        let mut env: BTreeMap<&str, &SchemaArg> = BTreeMap::new();
        for ((pname, kind), arg) in self.params.iter().zip(args) {
            match (kind, arg) {
                (MetaKind::Formula, SchemaArg::Formula(_)) => {}
                (MetaKind::Term(sort), SchemaArg::Term(t)) => match term_sort(sig, t) {
                    Ok(s) if &s == sort => {}
                    Ok(s) => {
                        return Err(SchemaError::ArgSort {
                            schema: self.name.clone(),
                            param: pname.clone(),
                            expected: sort.clone(),
                            found: format!("has sort {s}"),
                        })
                    }
                    Err(d) => {
                        return Err(SchemaError::ArgSort {
                            schema: self.name.clone(),
                            param: pname.clone(),
                            expected: sort.clone(),
                            found: d.to_string(),
                        })
                    }
                },
                _ => {
                    return Err(SchemaError::KindMismatch {
                        schema: self.name.clone(),
                        param: pname.clone(),
                    })
                }
            }
            env.insert(pname, arg);
        }
        let mut binders = Vec::new();
        self.fill(&self.template, &env, &mut binders)
    }

    /// Universal closure over the term parameters, for semantic readings
    /// of an unproven schema. Rejects schemata with formula parameters.
    pub fn universal_closure(&self) -> Result<Formula, SchemaError> {
        let mut taken: Vec<String> = Vec::new();
        collect_binder_names(&self.template, &mut taken);
        let mut vars: Vec<(String, String)> = Vec::new();
        let mut args: Vec<SchemaArg> = Vec::new();
        for (pname, kind) in &self.params {
            match kind {
                MetaKind::Formula => {
                    return Err(SchemaError::NotFirstOrder {
                        schema: self.name.clone(),
                        param: pname.clone(),
                    })
                }
                MetaKind::Term(sort) => {
                    let v = if taken.iter().any(|t| t == pname) {
                        fresh_var(pname, |n| !taken.iter().any(|t| t == n))
                    } else {
                        pname.clone()
                    };
                    taken.push(v.clone());
                    vars.push((v.clone(), sort.clone()));
                    args.push(SchemaArg::Term(Term::var(&v, sort)));
                }
            }
        }
        let mut env: BTreeMap<&str, &SchemaArg> = BTreeMap::new();
        for ((pname, _), arg) in self.params.iter().zip(&args) {
            env.insert(pname, arg);
        }
        let mut binders = Vec::new();
        let mut body = self.fill(&self.template, &env, &mut binders)?;
        for (v, s) in vars.into_iter().rev() {
            body = Formula::forall(&v, &s, body);
        }
        Ok(body)
    }

    fn fill(
        &self,
        t: &TemplateFormula,
        env: &BTreeMap<&str, &SchemaArg>,
        binders: &mut Vec<(String, String)>,
    ) -> Result<Formula, SchemaError> {
        match t {
            TemplateFormula::Hole(h) => {
                let arg =
                    env.get(h.as_str())
                        .copied()
                        .ok_or_else(|| SchemaError::ArityMismatch {
                            schema: self.name.clone(),
                            expected: self.params.len(),
                            got: env.len(),
                        })?;
                self.check_capture(h, arg, binders)?;
                match arg {
                    SchemaArg::Formula(f) => Ok(f.clone()),
                    SchemaArg::Term(_) => Err(SchemaError::KindMismatch {
                        schema: self.name.clone(),
                        param: h.clone(),
                    }),
                }
            }
            TemplateFormula::Atom { pred, args } => {
                let mut out = Vec::with_capacity(args.len());
                for a in args {
                    out.push(self.fill_term(a, env, binders)?);
                }
                Ok(Formula::Atom {
                    pred: pred.clone(),
                    args: out,
                })
            }
            TemplateFormula::Falsum => Ok(Formula::Falsum),
            TemplateFormula::And(a, b) => Ok(Formula::and(
                self.fill(a, env, binders)?,
                self.fill(b, env, binders)?,
            )),
            TemplateFormula::Or(a, b) => Ok(Formula::or(
                self.fill(a, env, binders)?,
                self.fill(b, env, binders)?,
            )),
            TemplateFormula::Implies(a, b) => Ok(Formula::implies(
                self.fill(a, env, binders)?,
                self.fill(b, env, binders)?,
            )),
            TemplateFormula::Forall { var, sort, body } => {
                binders.push((var.clone(), sort.clone()));
                let body = self.fill(body, env, binders);
                binders.pop();
                Ok(Formula::forall(var, sort, body?))
            }
            TemplateFormula::Exists { var, sort, body } => {
                binders.push((var.clone(), sort.clone()));
                let body = self.fill(body, env, binders);
                binders.pop();
                Ok(Formula::exists(var, sort, body?))
            }
        }
    }

    fn fill_term(
        &self,
        t: &TemplateTerm,
        env: &BTreeMap<&str, &SchemaArg>,
        binders: &[(String, String)],
    ) -> Result<Term, SchemaError> {
        match t {
            TemplateTerm::Hole(h) => {
                let arg =
                    env.get(h.as_str())
                        .copied()
                        .ok_or_else(|| SchemaError::ArityMismatch {
                            schema: self.name.clone(),
                            expected: self.params.len(),
                            got: env.len(),
                        })?;
                self.check_capture(h, arg, binders)?;
                match arg {
                    SchemaArg::Term(t) => Ok(t.clone()),
                    SchemaArg::Formula(_) => Err(SchemaError::KindMismatch {
                        schema: self.name.clone(),
                        param: h.clone(),
                    }),
                }
            }
            TemplateTerm::Var { name, sort } => Ok(Term::var(name, sort)),
            TemplateTerm::Const(c) => Ok(Term::constant(c)),
            TemplateTerm::App { func, args } => {
                let mut out = Vec::with_capacity(args.len());
                for a in args {
                    out.push(self.fill_term(a, env, binders)?);
                }
                Ok(Term::App {
                    func: func.clone(),
                    args: out,
                })
            }
        }
    }

    fn check_capture(
        &self,
        param: &str,
        arg: &SchemaArg,
        binders: &[(String, String)],
    ) -> Result<(), SchemaError> {
        for (name, sort) in arg_free_vars(arg) {
            if binders.iter().any(|(n, s)| *n == name && *s == sort) {
                return Err(SchemaError::Capture {
                    schema: self.name.clone(),
                    param: param.to_string(),
                    var: name,
                    sort,
                });
            }
        }
        Ok(())
    }
}

fn collect_binder_names(t: &TemplateFormula, out: &mut Vec<String>) {
    match t {
        TemplateFormula::Hole(_) | TemplateFormula::Atom { .. } | TemplateFormula::Falsum => {}
        TemplateFormula::And(a, b) | TemplateFormula::Or(a, b) | TemplateFormula::Implies(a, b) => {
            collect_binder_names(a, out);
            collect_binder_names(b, out);
        }
        TemplateFormula::Forall { var, body, .. } | TemplateFormula::Exists { var, body, .. } => {
            out.push(var.clone());
            collect_binder_names(body, out);
        }
    }
}
