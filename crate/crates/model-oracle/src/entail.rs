//! Exhaustive finite countermodel search.
//!
//! `entails` checks whether every interpretation with sort sizes up to a
//! bound that satisfies all premises also satisfies the goal. The search
//! is complete for the sizes it covers: either it returns a concrete
//! countermodel, or validity is certified for every domain assignment it
//! enumerated.

use std::collections::BTreeMap;
use std::fmt;

use logic_core::{well_sorted, Formula, Signature, SortDiagnostic};
use proof_kernel::{SchemaError, Theory};

use crate::compile::{compile, eval, Atlas, CFormula, Layout};
use crate::model::{FunctionTable, Model, RelationTable};

#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    /// Largest size any single sort is allowed to take.
    pub max_size: usize,
    /// Cumulative cap on the number of candidate interpretations across
    /// all size assignments of one query.
    pub budget: u128,
}

impl Default for OracleConfig {
    fn default() -> OracleConfig {
        OracleConfig {
            max_size: 3,
            budget: 20_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntailmentVerdict {
    /// No countermodel exists with any sort of size <= the bound.
    ValidUpTo(usize),
    Countermodel(Box<Model>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    IllSorted {
        what: String,
        diagnostics: Vec<SortDiagnostic>,
    },
    OpenFormula {
        what: String,
        var: String,
    },
    /// The theory keeps an unproven schema with a formula metavariable,
    /// which has no first order reading as a premise.
    HigherOrderSchema {
        schema: String,
    },
    /// Too many candidates to even count at some size assignment.
    CountOverflow {
        at_sizes: Vec<(String, usize)>,
    },
    BudgetExceeded {
        /// Every sort assignment with all sizes <= this bound was checked.
        verified_up_to: usize,
        at_sizes: Vec<(String, usize)>,
        needed: u128,
        budget: u128,
    },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::IllSorted { what, diagnostics } => {
                write!(f, "{what} is not well sorted")?;
                for d in diagnostics {
                    write!(f, "; {}", d.message)?;
                }
                Ok(())
            }
            OracleError::OpenFormula { what, var } => {
                write!(f, "{what} has free variable {var}")
            }
            OracleError::HigherOrderSchema { schema } => write!(
                f,
                "schema {schema} has a formula parameter and no proof, so it cannot be read as a first order premise"
            ),
            OracleError::CountOverflow { at_sizes } => {
                write!(f, "candidate count overflows at sizes ")?;
                write_sizes(f, at_sizes)
            }
            OracleError::BudgetExceeded { verified_up_to, at_sizes, needed, budget } => {
                write!(
                    f,
                    "search budget {budget} exhausted (next size assignment "
                )?;
                write_sizes(f, at_sizes)?;
                write!(f, " needs {needed} more candidates); verified up to size {verified_up_to}")
            }
        }
    }
}

impl std::error::Error for OracleError {}

fn write_sizes(f: &mut fmt::Formatter<'_>, sizes: &[(String, usize)]) -> fmt::Result {
    write!(f, "{{")?;
    for (i, (sort, n)) in sizes.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{sort}: {n}")?;
    }
    write!(f, "}}")
}

/// Number of candidate interpretations for the given sort sizes, or
/// `None` on overflow.
pub fn candidate_count(atlas: &Atlas, sizes: &[usize]) -> Option<u128> {
    let mut total: u128 = 1;
    let mut raise = |base: usize, exp: usize| -> Option<()> {
        let base = base as u128;
        for _ in 0..exp {
            total = total.checked_mul(base)?;
        }
        Some(())
    };
    for (_, sort) in &atlas.consts {
        raise(sizes[*sort], 1)?;
    }
    for (_, args, res) in &atlas.funs {
        let mut cells: usize = 1;
        for a in args {
            cells = cells.checked_mul(sizes[*a])?;
        }
        raise(sizes[*res], cells)?;
    }
    for (_, args) in &atlas.rels {
        let mut cells: usize = 1;
        for a in args {
            cells = cells.checked_mul(sizes[*a])?;
        }
        raise(2, cells)?;
    }
    Some(total)
}

/// Checks that premises semantically entail the goal over all
/// interpretations whose sort sizes range over 1..=max_size.
pub fn entails(
    sig: &Signature,
    premises: &[Formula],
    goal: &Formula,
    config: OracleConfig,
) -> Result<EntailmentVerdict, OracleError> {
    validate(sig, "goal", goal)?;
    for (i, p) in premises.iter().enumerate() {
        validate(sig, &format!("premise {}", i + 1), p)?;
    }

    let atlas = Atlas::new(sig);
    // Cheap premises first: rejecting a candidate on a small formula
    // skips evaluating the expensive ones.
    let mut order: Vec<&Formula> = premises.iter().collect();
    order.sort_by_key(|f| connective_weight(f));
    let cpremises: Vec<CFormula> = order.iter().map(|p| compile(&atlas, sig, p)).collect();
    let cgoal = compile(&atlas, sig, goal);

    let mut spent: u128 = 0;
    for k in 1..=config.max_size {
        for sizes in SizeVectors::new(atlas.sorts.len(), k) {
            let Some(count) = candidate_count(&atlas, &sizes) else {
                return Err(OracleError::CountOverflow {
                    at_sizes: named_sizes(&atlas, &sizes),
                });
            };
            if spent + count > config.budget {
                return Err(OracleError::BudgetExceeded {
                    verified_up_to: k - 1,
                    at_sizes: named_sizes(&atlas, &sizes),
                    needed: count,
                    budget: config.budget,
                });
            }
            spent += count;
            if let Some(model) =
                search_sizes(sig, &atlas, &sizes, &cpremises, &cgoal, premises, goal)
            {
                return Ok(EntailmentVerdict::Countermodel(Box::new(model)));
            }
        }
    }
    Ok(EntailmentVerdict::ValidUpTo(config.max_size))
}

fn validate(sig: &Signature, what: &str, f: &Formula) -> Result<(), OracleError> {
    if let Err(diagnostics) = well_sorted(sig, f) {
        return Err(OracleError::IllSorted {
            what: what.to_string(),
            diagnostics,
        });
    }
    for name in logic_core::free_names(f) {
        if let logic_core::FreeName::Var { name, .. } = name {
            return Err(OracleError::OpenFormula {
                what: what.to_string(),
                var: name,
            });
        }
    }
    Ok(())
}

fn connective_weight(f: &Formula) -> usize {
    match f {
        Formula::Atom { .. } | Formula::Falsum => 1,
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            1 + connective_weight(a) + connective_weight(b)
        }
        // Quantifiers multiply work, so they weigh more than one node.
        Formula::Forall { body, .. } | Formula::Exists { body, .. } => {
            2 + 2 * connective_weight(body)
        }
    }
}

fn named_sizes(atlas: &Atlas, sizes: &[usize]) -> Vec<(String, usize)> {
    atlas
        .sorts
        .iter()
        .cloned()
        .zip(sizes.iter().copied())
        .collect()
}

/// All vectors in {1..k}^m whose maximum component is exactly k, in
/// lexicographic order. Emitting each k's fresh vectors keeps every
/// assignment visited exactly once as k grows. With no sorts the empty
/// vector appears once, at k = 1.
struct SizeVectors {
    k: usize,
    current: Option<Vec<usize>>,
}

impl SizeVectors {
    fn new(m: usize, k: usize) -> SizeVectors {
        if m == 0 {
            return SizeVectors {
                k,
                current: if k == 1 { Some(Vec::new()) } else { None },
            };
        }
        SizeVectors {
            k,
            current: Some(vec![1; m]),
        }
    }
}

impl Iterator for SizeVectors {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        loop {
            let current = self.current.as_mut()?;
            let item = current.clone();
            if current.is_empty() {
                self.current = None;
                return Some(item);
            }
            // Advance the odometer over {1..k}^m.
            let mut done = true;
            for d in current.iter_mut().rev() {
                if *d < self.k {
                    *d += 1;
                    done = false;
                    break;
                }
                *d = 1;
            }
            if done {
                self.current = None;
            }
            if item.iter().copied().max() == Some(self.k) {
                return Some(item);
            }
        }
    }
}

fn search_sizes(
    sig: &Signature,
    atlas: &Atlas,
    sizes: &[usize],
    cpremises: &[CFormula],
    cgoal: &CFormula,
    premises: &[Formula],
    goal: &Formula,
) -> Option<Model> {
    let layout = Layout::new(atlas, sizes);
    let mut digits = vec![0usize; layout.radices.len()];
    let mut env = Vec::new();
    loop {
        let holds = cpremises
            .iter()
            .all(|p| eval(&layout, &digits, p, &mut env))
            && !eval(&layout, &digits, cgoal, &mut env);
        if holds {
            let model = build_model(atlas, &layout, &digits);
            // The compiled and the name-based evaluators are independent;
            // a countermodel must be a countermodel under both.
            for p in premises {
                assert!(
                    model.eval(sig, p),
                    "compiled evaluator disagrees on a premise"
                );
            }
            assert!(
                !model.eval(sig, goal),
                "compiled evaluator disagrees on the goal"
            );
            return Some(model);
        }
        if !advance(&mut digits, &layout.radices) {
            return None;
        }
    }
}

/// Increments the digit vector with the last digit fastest. Returns
/// false once every candidate has been visited.
fn advance(digits: &mut [usize], radices: &[usize]) -> bool {
    for i in (0..digits.len()).rev() {
        if digits[i] + 1 < radices[i] {
            digits[i] += 1;
            return true;
        }
        digits[i] = 0;
    }
    false
}

fn build_model(atlas: &Atlas, layout: &Layout, digits: &[usize]) -> Model {
    let sizes: BTreeMap<String, usize> = atlas
        .sorts
        .iter()
        .cloned()
        .zip(layout.sizes.iter().copied())
        .collect();
    let constants: BTreeMap<String, usize> = atlas
        .consts
        .iter()
        .enumerate()
        .map(|(c, (name, _))| (name.clone(), layout.constant(digits, c)))
        .collect();
    let mut functions = BTreeMap::new();
    for (i, (name, args, _)) in atlas.funs.iter().enumerate() {
        let arg_sizes: Vec<usize> = args.iter().map(|s| layout.sizes[*s]).collect();
        let cells: usize = arg_sizes.iter().product();
        let mut values = Vec::with_capacity(cells);
        let mut tuple = vec![0usize; args.len()];
        for _ in 0..cells {
            values.push(layout.apply(digits, i, &tuple));
            advance_tuple(&mut tuple, &arg_sizes);
        }
        functions.insert(name.clone(), FunctionTable { arg_sizes, values });
    }
    let mut relations = BTreeMap::new();
    for (i, (name, args)) in atlas.rels.iter().enumerate() {
        let arg_sizes: Vec<usize> = args.iter().map(|s| layout.sizes[*s]).collect();
        let cells: usize = arg_sizes.iter().product();
        let mut values = Vec::with_capacity(cells);
        let mut tuple = vec![0usize; args.len()];
        for _ in 0..cells {
            values.push(layout.holds(digits, i, &tuple));
            advance_tuple(&mut tuple, &arg_sizes);
        }
        relations.insert(name.clone(), RelationTable { arg_sizes, values });
    }
    Model {
        sizes,
        constants,
        functions,
        relations,
    }
}

fn advance_tuple(tuple: &mut [usize], sizes: &[usize]) {
    for i in (0..tuple.len()).rev() {
        if tuple[i] + 1 < sizes[i] {
            tuple[i] += 1;
            return;
        }
        tuple[i] = 0;
    }
}

/// First order premises a theory supplies to the oracle: its axioms in
/// declaration order, then the universal closure of every unproven
/// schema whose parameters are all term metavariables. Proven schemata
/// are established by their generic proofs and carry no semantic debt.
pub fn semantic_premises(theory: &Theory) -> Result<Vec<Formula>, OracleError> {
    let mut premises: Vec<Formula> = theory.axioms().map(|(_, f)| f.clone()).collect();
    for schema in theory.schemata() {
        if schema.proven.is_some() {
            continue;
        }
        match schema.universal_closure() {
            Ok(f) => premises.push(f),
            Err(SchemaError::NotFirstOrder { schema, .. }) => {
                return Err(OracleError::HigherOrderSchema { schema })
            }
            Err(e) => panic!("closure of a registered schema failed: {e:?}"),
        }
    }
    Ok(premises)
}

/// `entails` against a theory's axioms and unproven term schemata.
pub fn entails_theory(
    theory: &Theory,
    goal: &Formula,
    config: OracleConfig,
) -> Result<EntailmentVerdict, OracleError> {
    let premises = semantic_premises(theory)?;
    entails(theory.signature(), &premises, goal, config)
}
