//! A theory: the signature plus named axioms, schemata, and lemmas.
//!
//! Registration order matters and is preserved. A lemma is only stored
//! after its proof checks against everything registered before it, so a
//! theory can never hold an unproven lemma.

use crate::checker::check_proof;
use crate::proof::Proof;
use crate::report::{CheckReport, Classification};
use crate::schema::{MetaKind, Schema, SchemaArg, TemplateFormula};
use indexmap::IndexMap;
use logic_core::{
    alpha_eq, free_names, well_sorted, Formula, FreeName, Signature, SortDiagnostic, Term,
};
use std::fmt;

#[derive(Clone, Debug)]
pub struct Lemma {
    pub formula: Formula,
    pub classification: Classification,
}

#[derive(Clone, Debug)]
pub struct Theory {
    signature: Signature,
    axioms: IndexMap<String, Formula>,
    schemata: IndexMap<String, Schema>,
    lemmas: IndexMap<String, Lemma>,
}

#[derive(Debug)]
pub enum TheoryError {
    DuplicateName(String),
    IllSorted {
        name: String,
        diagnostics: Vec<SortDiagnostic>,
    },
    OpenFormula {
        name: String,
        var: String,
    },
    DuplicateParam {
        schema: String,
        param: String,
    },
    UnknownMetaSort {
        schema: String,
        param: String,
        sort: String,
    },
    UnknownHole {
        schema: String,
        hole: String,
    },
    MetavarClash {
        schema: String,
        param: String,
    },
    SchemaGoalMismatch {
        schema: String,
    },
    RejectedProof {
        name: String,
        report: Box<CheckReport>,
    },
}

impl fmt::Display for TheoryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoryError::DuplicateName(n) => write!(f, "the name {n} is already registered"),
            TheoryError::IllSorted { name, diagnostics } => {
                write!(f, "{name} is ill-sorted")?;
                for d in diagnostics {
                    write!(f, "; {d}")?;
                }
                Ok(())
            }
            TheoryError::OpenFormula { name, var } => {
                write!(f, "{name} has a free variable {var}")
            }
            TheoryError::DuplicateParam { schema, param } => {
                write!(f, "schema {schema} repeats the parameter {param}")
            }
            TheoryError::UnknownMetaSort { schema, param, sort } => {
                write!(f, "schema {schema} gives {param} the undeclared sort {sort}")
            }
            TheoryError::UnknownHole { schema, hole } => {
                write!(f, "schema {schema} uses {hole}, which is not a parameter")
            }
            TheoryError::MetavarClash { schema, param } => write!(
                f,
                "schema {schema} cannot take a generic proof: {param} clashes with a declared symbol"
            ),
            TheoryError::SchemaGoalMismatch { schema } => {
                write!(f, "the generic proof for schema {schema} proves something else")
            }
            TheoryError::RejectedProof { name, report } => {
                write!(f, "the proof of {name} was rejected")?;
                if let Some(failure) = report.primary_failure() {
                    write!(f, ": {failure}")?;
                }
                Ok(())
            }
        }
    }
}

impl Theory {
    pub fn new(signature: Signature) -> Self {
        Theory {
            signature,
            axioms: IndexMap::new(),
            schemata: IndexMap::new(),
            lemmas: IndexMap::new(),
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn axiom(&self, name: &str) -> Option<&Formula> {
        self.axioms.get(name)
    }

    pub fn axioms(&self) -> impl Iterator<Item = (&str, &Formula)> {
        self.axioms.iter().map(|(n, f)| (n.as_str(), f))
    }

    pub fn schema(&self, name: &str) -> Option<&Schema> {
        self.schemata.get(name)
    }

    pub fn schemata(&self) -> impl Iterator<Item = &Schema> {
        self.schemata.values()
    }

    pub fn lemma(&self, name: &str) -> Option<&Lemma> {
        self.lemmas.get(name)
    }

    pub fn lemmas(&self) -> impl Iterator<Item = (&str, &Lemma)> {
        self.lemmas.iter().map(|(n, l)| (n.as_str(), l))
    }

    fn name_taken(&self, name: &str) -> bool {
        self.axioms.contains_key(name)
            || self.schemata.contains_key(name)
            || self.lemmas.contains_key(name)
    }

    pub fn register_axiom(&mut self, name: &str, formula: Formula) -> Result<(), TheoryError> {
        if self.name_taken(name) {
            return Err(TheoryError::DuplicateName(name.to_string()));
        }
        if let Err(diagnostics) = well_sorted(&self.signature, &formula) {
            return Err(TheoryError::IllSorted {
                name: name.to_string(),
                diagnostics,
            });
        }
        if let Some(var) = first_free_var(&formula) {
            return Err(TheoryError::OpenFormula {
                name: name.to_string(),
                var,
            });
        }
        self.axioms.insert(name.to_string(), formula);
        Ok(())
    }

    /// Registers a schema. With `generic_proof`, the template is proved
    /// once and for all: formula parameters become fresh nullary
    /// predicates and term parameters fresh constants, and the proof must
    /// establish the template read at those generic symbols. A schema
    /// registered this way counts as derived rather than assumed.
    pub fn register_schema(
        &mut self,
        name: &str,
        params: Vec<(String, MetaKind)>,
        template: TemplateFormula,
        generic_proof: Option<&Proof>,
    ) -> Result<Option<CheckReport>, TheoryError> {
        if self.name_taken(name) {
            return Err(TheoryError::DuplicateName(name.to_string()));
        }
        for (i, (pname, kind)) in params.iter().enumerate() {
            if params[..i].iter().any(|(q, _)| q == pname) {
                return Err(TheoryError::DuplicateParam {
                    schema: name.to_string(),
                    param: pname.clone(),
                });
            }
            if let MetaKind::Term(sort) = kind {
                if !self.signature.has_sort(sort) {
                    return Err(TheoryError::UnknownMetaSort {
                        schema: name.to_string(),
                        param: pname.clone(),
                        sort: sort.clone(),
                    });
                }
            }
        }
        for hole in template.holes() {
            if !params.iter().any(|(p, _)| *p == hole) {
                return Err(TheoryError::UnknownHole {
                    schema: name.to_string(),
                    hole,
                });
            }
        }

        let mut proven = None;
        let mut report = None;
        if let Some(proof) = generic_proof {
            let mut generic_sig = self.signature.clone();
            let mut generic_args = Vec::with_capacity(params.len());
            for (pname, kind) in &params {
                let declared = match kind {
                    MetaKind::Formula => generic_sig.declare_predicate(pname, &[]).is_ok(),
                    MetaKind::Term(sort) => generic_sig.declare_constant(pname, sort).is_ok(),
                };
                if !declared {
                    return Err(TheoryError::MetavarClash {
                        schema: name.to_string(),
                        param: pname.clone(),
                    });
                }
                generic_args.push(match kind {
                    MetaKind::Formula => SchemaArg::Formula(Formula::atom(pname, vec![])),
                    MetaKind::Term(_) => SchemaArg::Term(Term::constant(pname)),
                });
            }
            let candidate = Schema {
                name: name.to_string(),
                params: params.clone(),
                template: template.clone(),
                proven: None,
            };
            let generic_goal =
                candidate
                    .instantiate(&generic_sig, &generic_args)
                    .map_err(|_| TheoryError::SchemaGoalMismatch {
                        schema: name.to_string(),
                    })?;
            if !alpha_eq(&proof.goal, &generic_goal) {
                return Err(TheoryError::SchemaGoalMismatch {
                    schema: name.to_string(),
                });
            }
            let generic_theory = Theory {
                signature: generic_sig,
                axioms: self.axioms.clone(),
                schemata: self.schemata.clone(),
                lemmas: self.lemmas.clone(),
            };
            let checked = check_proof(&generic_theory, proof);
            if !checked.accepted() {
                return Err(TheoryError::RejectedProof {
                    name: name.to_string(),
                    report: Box::new(checked),
                });
            }
            proven = checked.classification;
            report = Some(checked);
        }

        self.schemata.insert(
            name.to_string(),
            Schema {
                name: name.to_string(),
                params,
                template,
                proven,
            },
        );
        Ok(report)
    }

    /// Checks `proof` against the current theory and, on acceptance,
    /// stores its goal under `name`.
    pub fn register_lemma(
        &mut self,
        name: &str,
        proof: &Proof,
    ) -> Result<CheckReport, TheoryError> {
        if self.name_taken(name) {
            return Err(TheoryError::DuplicateName(name.to_string()));
        }
        let report = check_proof(self, proof);
        if !report.accepted() {
            return Err(TheoryError::RejectedProof {
                name: name.to_string(),
                report: Box::new(report),
            });
        }
        let classification = report
            .classification
            .expect("accepted proofs always carry a classification");
        self.lemmas.insert(
            name.to_string(),
            Lemma {
                formula: proof.goal.clone(),
                classification,
            },
        );
        Ok(report)
    }
}

fn first_free_var(f: &Formula) -> Option<String> {
    free_names(f).into_iter().find_map(|n| match n {
        FreeName::Var { name, .. } => Some(name),
        FreeName::Const(_) => None,
    })
}
