//! Machine-readable reports. Everything here is deterministic for a
//! given input except `generated_at`, which records when the report
//! was produced.

use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::corpus::ENTRIES;
use crate::driver::{DocOutcome, ItemResult, OracleOutcome};

pub const SCHEMA_VERSION: u32 = 1;

fn now_unix() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

#[derive(Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub generated_at: u64,
    pub command: String,
    pub ok: bool,
    pub files: Vec<FileReport>,
}

impl Report {
    pub fn new(command: &str, files: Vec<FileReport>) -> Self {
        let ok = files.iter().all(|f| f.ok);
        Report {
            schema_version: SCHEMA_VERSION,
            generated_at: now_unix(),
            command: command.to_string(),
            ok,
            files,
        }
    }
}

#[derive(Serialize)]
pub struct FileReport {
    pub file: String,
    pub ok: bool,
    /// Parse diagnostics, IO errors, or expectation mismatches.
    pub errors: Vec<String>,
    pub items: Vec<ItemJson>,
}

impl FileReport {
    pub fn failed(file: &str, errors: Vec<String>) -> Self {
        FileReport {
            file: file.to_string(),
            ok: false,
            errors,
            items: Vec::new(),
        }
    }

    pub fn from_outcome(file: &str, outcome: &DocOutcome) -> Self {
        FileReport {
            file: file.to_string(),
            ok: outcome.accepted(),
            errors: outcome.errors.clone(),
            items: outcome.items.iter().map(ItemJson::from_item).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct ItemJson {
    pub name: String,
    pub kind: &'static str,
    pub accepted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<String>,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleJson>,
}

impl ItemJson {
    pub fn from_item(item: &ItemResult) -> Self {
        ItemJson {
            name: item.name.clone(),
            kind: item.kind.as_str(),
            accepted: item.accepted,
            classification: item.classification.map(|c| c.to_string()),
            failures: item.failures.clone(),
            oracle: item.oracle.as_ref().map(OracleJson::from_outcome),
        }
    }
}

#[derive(Serialize)]
pub struct OracleJson {
    pub outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub up_to: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified_up_to: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl OracleJson {
    pub fn from_outcome(o: &OracleOutcome) -> Self {
        match o {
            OracleOutcome::Valid { up_to } => OracleJson {
                outcome: "valid",
                up_to: Some(*up_to),
                verified_up_to: None,
                detail: None,
            },
            OracleOutcome::Countermodel { display } => OracleJson {
                outcome: "countermodel",
                up_to: None,
                verified_up_to: None,
                detail: Some(display.clone()),
            },
            OracleOutcome::BudgetExceeded { verified_up_to } => OracleJson {
                outcome: "budget_exceeded",
                up_to: None,
                verified_up_to: Some(*verified_up_to),
                detail: None,
            },
            OracleOutcome::Error { message } => OracleJson {
                outcome: "error",
                up_to: None,
                verified_up_to: None,
                detail: Some(message.clone()),
            },
        }
    }
}

#[derive(Serialize)]
pub struct MutationReport {
    pub schema_version: u32,
    pub generated_at: u64,
    pub command: String,
    pub ok: bool,
    pub seed: u64,
    pub mutants: usize,
    pub rejected: usize,
    pub survivors: Vec<MutantJson>,
}

#[derive(Serialize)]
pub struct MutantJson {
    pub entry: String,
    pub description: String,
}

impl MutationReport {
    pub fn new(seed: u64, mutants: usize, survivors: Vec<MutantJson>) -> Self {
        MutationReport {
            schema_version: SCHEMA_VERSION,
            generated_at: now_unix(),
            command: "mutate".to_string(),
            ok: mutants > 0 && survivors.is_empty(),
            seed,
            mutants,
            rejected: mutants - survivors.len(),
            survivors,
        }
    }
}

#[derive(Serialize)]
pub struct CorpusListing {
    pub schema_version: u32,
    pub generated_at: u64,
    pub command: String,
    pub entries: Vec<ListedEntry>,
}

#[derive(Serialize)]
pub struct ListedEntry {
    pub name: &'static str,
    pub file: &'static str,
    pub items: Vec<ListedItem>,
}

#[derive(Serialize)]
pub struct ListedItem {
    pub name: &'static str,
    pub kind: &'static str,
}

pub fn corpus_listing() -> CorpusListing {
    CorpusListing {
        schema_version: SCHEMA_VERSION,
        generated_at: now_unix(),
        command: "corpus list".to_string(),
        entries: ENTRIES
            .iter()
            .map(|e| ListedEntry {
                name: e.name,
                file: e.file,
                items: e
                    .items
                    .iter()
                    .map(|i| ListedItem {
                        name: i.name,
                        kind: i.kind.as_str(),
                    })
                    .collect(),
            })
            .collect(),
    }
}
