use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A many-sorted first-order signature. Predicate, function, and constant
/// names live in one shared namespace: declaring `P` as a predicate and
/// again as a constant is an error, as is redeclaring anything.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    sorts: BTreeSet<String>,
    predicates: BTreeMap<String, Vec<String>>,
    functions: BTreeMap<String, (Vec<String>, String)>,
    constants: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignatureError {
    DuplicateSort(String),
    DuplicateSymbol(String),
    UnknownSort { symbol: String, sort: String },
}

impl fmt::Display for SignatureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignatureError::DuplicateSort(s) => write!(f, "sort `{s}` is already declared"),
            SignatureError::DuplicateSymbol(s) => write!(f, "symbol `{s}` is already declared"),
            SignatureError::UnknownSort { symbol, sort } => {
                write!(f, "declaration of `{symbol}` uses undeclared sort `{sort}`")
            }
        }
    }
}

impl Signature {
    pub fn new() -> Self {
        Signature::default()
    }

    pub fn declare_sort(&mut self, name: &str) -> Result<(), SignatureError> {
        if !self.sorts.insert(name.to_string()) {
            return Err(SignatureError::DuplicateSort(name.to_string()));
        }
        Ok(())
    }

    fn check_fresh(&self, name: &str) -> Result<(), SignatureError> {
        if self.predicates.contains_key(name)
            || self.functions.contains_key(name)
            || self.constants.contains_key(name)
        {
            return Err(SignatureError::DuplicateSymbol(name.to_string()));
        }
        Ok(())
    }

    fn check_sort(&self, symbol: &str, sort: &str) -> Result<(), SignatureError> {
        if !self.sorts.contains(sort) {
            return Err(SignatureError::UnknownSort {
                symbol: symbol.to_string(),
                sort: sort.to_string(),
            });
        }
        Ok(())
    }

    pub fn declare_predicate(&mut self, name: &str, args: &[String]) -> Result<(), SignatureError> {
        self.check_fresh(name)?;
        for s in args {
            self.check_sort(name, s)?;
        }
        self.predicates.insert(name.to_string(), args.to_vec());
        Ok(())
    }

    pub fn declare_function(
        &mut self,
        name: &str,
        args: &[String],
        result: &str,
    ) -> Result<(), SignatureError> {
        self.check_fresh(name)?;
        for s in args {
            self.check_sort(name, s)?;
        }
        self.check_sort(name, result)?;
        self.functions
            .insert(name.to_string(), (args.to_vec(), result.to_string()));
        Ok(())
    }

    pub fn declare_constant(&mut self, name: &str, sort: &str) -> Result<(), SignatureError> {
        self.check_fresh(name)?;
        self.check_sort(name, sort)?;
        self.constants.insert(name.to_string(), sort.to_string());
        Ok(())
    }

    pub fn has_sort(&self, name: &str) -> bool {
        self.sorts.contains(name)
    }

    pub fn sorts(&self) -> impl Iterator<Item = &str> {
        self.sorts.iter().map(|s| s.as_str())
    }

    pub fn predicate(&self, name: &str) -> Option<&[String]> {
        self.predicates.get(name).map(|v| v.as_slice())
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&str, &[String])> {
        self.predicates
            .iter()
            .map(|(n, a)| (n.as_str(), a.as_slice()))
    }

    pub fn function(&self, name: &str) -> Option<(&[String], &str)> {
        self.functions
            .get(name)
            .map(|(a, r)| (a.as_slice(), r.as_str()))
    }

    pub fn functions(&self) -> impl Iterator<Item = (&str, &[String], &str)> {
        self.functions
            .iter()
            .map(|(n, (a, r))| (n.as_str(), a.as_slice(), r.as_str()))
    }

    pub fn constant(&self, name: &str) -> Option<&str> {
        self.constants.get(name).map(|s| s.as_str())
    }

    pub fn constants(&self) -> impl Iterator<Item = (&str, &str)> {
        self.constants.iter().map(|(n, s)| (n.as_str(), s.as_str()))
    }

    pub fn has_symbol(&self, name: &str) -> bool {
        self.predicates.contains_key(name)
            || self.functions.contains_key(name)
            || self.constants.contains_key(name)
    }

    /// A binary predicate named `eq` over a single sort is the designated
    /// equality predicate; the model oracle interprets it as identity.
    pub fn is_equality_predicate(&self, name: &str) -> bool {
        name == "eq"
            && matches!(self.predicates.get(name), Some(args) if args.len() == 2 && args[0] == args[1])
    }
}
