//! The bundled corpus: classical arguments from Aristotle, Galen,
//! Alexander, Euclid with Proclus, and Chrysippus, each as a checked
//! script with recorded expectations.
//!
//! Texts are embedded at compile time so `anc corpus run` works from
//! any directory. Setting `ANC_CORPUS_DIR` points an entry's relative
//! path at a directory on disk instead; entries without an override
//! file fall back to the embedded text.

use std::path::Path;

use model_oracle::OracleConfig;
use proof_kernel::Classification;
use script_parser::parse_document;

use crate::driver::{reject_classical, run_document, DocOutcome, ItemKind, OracleOutcome};

/// What a corpus entry is expected to produce when checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpectedItem {
    pub name: &'static str,
    pub kind: ItemKind,
    /// Expected classification for kernel-checked items, `None` for
    /// sequent derivations.
    pub classification: Option<Classification>,
}

/// Expected semantic status of every lemma and proof goal in an entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleExpect {
    /// Goals hold in every interpretation up to this domain size.
    ValidUpTo(usize),
    /// The signature is too large to sweep at the default budget; the
    /// goals were verified up to this size before the cap hit.
    BudgetCapped { verified_up_to: usize },
    /// Entry has no first-order goals (sequent derivations only).
    NotApplicable,
}

pub struct CorpusEntry {
    pub name: &'static str,
    /// Path relative to the corpus root, also the override key.
    pub file: &'static str,
    pub embedded: &'static str,
    pub items: &'static [ExpectedItem],
    pub oracle: OracleExpect,
}

impl CorpusEntry {
    /// The script text, honoring an `ANC_CORPUS_DIR` override.
    pub fn text(&self) -> String {
        if let Ok(dir) = std::env::var("ANC_CORPUS_DIR") {
            let path = Path::new(&dir).join(self.file);
            if let Ok(text) = std::fs::read_to_string(&path) {
                return text;
            }
        }
        self.embedded.to_string()
    }
}

const fn item(
    name: &'static str,
    kind: ItemKind,
    classification: Option<Classification>,
) -> ExpectedItem {
    ExpectedItem {
        name,
        kind,
        classification,
    }
}

use Classification::{Classical, Constructive};
use ItemKind::{Derivation, Lemma, Proof, Schema};

pub const ENTRIES: &[CorpusEntry] = &[
    CorpusEntry {
        name: "barbara",
        file: "moods/barbara.anc",
        embedded: include_str!("../corpus/moods/barbara.anc"),
        items: &[item("barbara", Proof, Some(Constructive))],
        oracle: OracleExpect::ValidUpTo(3),
    },
    CorpusEntry {
        name: "celarent",
        file: "moods/celarent.anc",
        embedded: include_str!("../corpus/moods/celarent.anc"),
        items: &[item("celarent", Proof, Some(Constructive))],
        oracle: OracleExpect::ValidUpTo(3),
    },
    CorpusEntry {
        name: "darii",
        file: "moods/darii.anc",
        embedded: include_str!("../corpus/moods/darii.anc"),
        items: &[item("darii", Proof, Some(Constructive))],
        oracle: OracleExpect::ValidUpTo(3),
    },
    CorpusEntry {
        name: "ferio",
        file: "moods/ferio.anc",
        embedded: include_str!("../corpus/moods/ferio.anc"),
        items: &[item("ferio", Proof, Some(Constructive))],
        oracle: OracleExpect::ValidUpTo(3),
    },
    CorpusEntry {
        name: "darapti",
        file: "moods/darapti.anc",
        embedded: include_str!("../corpus/moods/darapti.anc"),
        items: &[item("darapti", Proof, Some(Constructive))],
        oracle: OracleExpect::ValidUpTo(3),
    },
    CorpusEntry {
        name: "baroco",
        file: "moods/baroco.anc",
        embedded: include_str!("../corpus/moods/baroco.anc"),
        items: &[item("baroco", Proof, Some(Classical))],
        oracle: OracleExpect::ValidUpTo(3),
    },
    CorpusEntry {
        name: "e_conversion",
        file: "conversion/e_conversion.anc",
        embedded: include_str!("../corpus/conversion/e_conversion.anc"),
        items: &[
            item("negall_ab", Lemma, Some(Classical)),
            item("e_conversion", Proof, Some(Classical)),
        ],
        oracle: OracleExpect::ValidUpTo(3),
    },
    CorpusEntry {
        name: "darapti_ekthesis",
        file: "ekthesis/darapti_ekthesis.anc",
        embedded: include_str!("../corpus/ekthesis/darapti_ekthesis.anc"),
        items: &[item("darapti_ekthesis", Proof, Some(Constructive))],
        oracle: OracleExpect::ValidUpTo(3),
    },
    CorpusEntry {
        name: "equals_to_same",
        file: "topics/equals_to_same.anc",
        embedded: include_str!("../corpus/topics/equals_to_same.anc"),
        items: &[
            item("mt", Schema, Some(Constructive)),
            item("h1_equals", Proof, Some(Constructive)),
        ],
        oracle: OracleExpect::ValidUpTo(3),
    },
    CorpusEntry {
        name: "genus_species",
        file: "topics/genus_species.anc",
        embedded: include_str!("../corpus/topics/genus_species.anc"),
        items: &[
            item("species_cases", Proof, Some(Constructive)),
            item("species_intro", Proof, Some(Constructive)),
        ],
        oracle: OracleExpect::ValidUpTo(3),
    },
    CorpusEntry {
        name: "quadruple",
        file: "galen/quadruple.anc",
        embedded: include_str!("../corpus/galen/quadruple.anc"),
        items: &[item("quadruple_8_2", Proof, Some(Constructive))],
        oracle: OracleExpect::ValidUpTo(3),
    },
    CorpusEntry {
        name: "quantities",
        file: "galen/quantities.anc",
        embedded: include_str!("../corpus/galen/quantities.anc"),
        items: &[item("sub_equals", Proof, Some(Constructive))],
        oracle: OracleExpect::ValidUpTo(3),
    },
    CorpusEntry {
        name: "mover_moved",
        file: "physics/mover_moved.anc",
        embedded: include_str!("../corpus/physics/mover_moved.anc"),
        items: &[item("mover_moved", Proof, Some(Constructive))],
        oracle: OracleExpect::BudgetCapped { verified_up_to: 2 },
    },
    CorpusEntry {
        name: "grandfather",
        file: "relational/grandfather.anc",
        embedded: include_str!("../corpus/relational/grandfather.anc"),
        items: &[item("grandfather", Proof, Some(Constructive))],
        oracle: OracleExpect::ValidUpTo(3),
    },
    CorpusEntry {
        name: "triangle_construction",
        file: "euclid/triangle_construction.anc",
        embedded: include_str!("../corpus/euclid/triangle_construction.anc"),
        items: &[item("triangle_exists", Proof, Some(Constructive))],
        oracle: OracleExpect::ValidUpTo(3),
    },
    CorpusEntry {
        name: "second_thema",
        file: "stoic/second_thema.anc",
        embedded: include_str!("../corpus/stoic/second_thema.anc"),
        items: &[
            item("chrysippus", Derivation, None),
            item("detach", Derivation, None),
        ],
        oracle: OracleExpect::NotApplicable,
    },
];

/// Looks an entry up by its short name.
pub fn entry(name: &str) -> Option<&'static CorpusEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}

/// One corpus entry checked against its recorded expectations.
pub struct EntryCheck {
    pub entry: &'static CorpusEntry,
    pub parse_errors: Vec<String>,
    pub outcome: Option<DocOutcome>,
    /// Ways the observed results diverge from the expectations.
    pub mismatches: Vec<String>,
}

impl EntryCheck {
    pub fn ok(&self) -> bool {
        self.parse_errors.is_empty() && self.mismatches.is_empty()
    }
}

/// Parses, checks, and oracle-sweeps one entry, then compares the
/// results to the manifest.
pub fn check_entry(entry: &'static CorpusEntry, constructive_only: bool) -> EntryCheck {
    let text = entry.text();
    match parse_document(&text, entry.file) {
        Err(diags) => EntryCheck {
            entry,
            parse_errors: diags.iter().map(|d| d.to_string()).collect(),
            outcome: None,
            mismatches: vec!["the script does not parse".to_string()],
        },
        Ok(doc) => {
            let mut outcome = run_document(&doc, Some(OracleConfig::default()));
            if constructive_only {
                reject_classical(&mut outcome);
            }
            let mismatches = expectation_mismatches(entry, &outcome);
            EntryCheck {
                entry,
                parse_errors: Vec::new(),
                outcome: Some(outcome),
                mismatches,
            }
        }
    }
}

fn show_classification(c: Option<Classification>) -> String {
    c.map(|c| c.to_string())
        .unwrap_or_else(|| "unclassified".to_string())
}

fn expectation_mismatches(entry: &CorpusEntry, outcome: &DocOutcome) -> Vec<String> {
    let mut mismatches: Vec<String> = outcome.errors.clone();
    for expected in entry.items {
        let Some(got) = outcome.items.iter().find(|i| i.name == expected.name) else {
            mismatches.push(format!(
                "{} {} was never checked",
                expected.kind.as_str(),
                expected.name
            ));
            continue;
        };
        if got.kind != expected.kind {
            mismatches.push(format!(
                "{} is a {}, expected a {}",
                expected.name,
                got.kind.as_str(),
                expected.kind.as_str()
            ));
        }
        if !got.accepted {
            let why = got.failures.first().cloned().unwrap_or_default();
            mismatches.push(format!("{} was rejected: {why}", expected.name));
        } else if got.classification != expected.classification {
            mismatches.push(format!(
                "{} is {}, expected {}",
                expected.name,
                show_classification(got.classification),
                show_classification(expected.classification)
            ));
        }
        match &got.oracle {
            Some(o) => {
                let matches = match (entry.oracle, o) {
                    (OracleExpect::ValidUpTo(n), OracleOutcome::Valid { up_to }) => *up_to == n,
                    (
                        OracleExpect::BudgetCapped { verified_up_to },
                        OracleOutcome::BudgetExceeded {
                            verified_up_to: got,
                        },
                    ) => *got == verified_up_to,
                    _ => false,
                };
                if !matches {
                    mismatches.push(format!("oracle disagrees on {}: {o}", expected.name));
                }
            }
            None => {
                let needs_oracle = matches!(expected.kind, ItemKind::Lemma | ItemKind::Proof);
                if needs_oracle && entry.oracle != OracleExpect::NotApplicable {
                    mismatches.push(format!("no oracle outcome for {}", expected.name));
                }
            }
        }
    }
    for got in &outcome.items {
        if !entry.items.iter().any(|e| e.name == got.name) {
            mismatches.push(format!("unexpected item {}", got.name));
        }
    }
    mismatches
}
