//! `anc`: a command-line checker for proof scripts written against
//! the ancient-logic rule inventory, bundled with a corpus of
//! arguments from Aristotle, Galen, Alexander, Euclid with Proclus,
//! and Chrysippus.
//!
//! Exit codes: 0 everything checked out, 1 something was rejected or
//! refuted, 2 usage or file trouble, 3 the oracle ran out of budget
//! before reaching its size bound.

mod cli;
pub mod corpus;
pub mod driver;
pub mod mutate;
pub mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::Parser;
use model_oracle::OracleConfig;
use script_parser::{parse_document, Decl, DeclKind, Document};
use stoic_sequents::{check_derivation, default_indemonstrables};

use cli::{Cli, Command, CorpusAction};
use corpus::{check_entry, EntryCheck, ENTRIES};
use driver::{reject_classical, run_document, DocOutcome, OracleOutcome};
use report::{FileReport, ItemJson, MutantJson, MutationReport, Report};

/// Runs the whole CLI against explicit writers, so tests can capture
/// output without spawning a process. Returns the exit code.
pub fn run_cli(args: &[String], out: &mut impl Write, err: &mut impl Write) -> i32 {
    let mut argv = vec!["anc".to_string()];
    argv.extend(args.iter().cloned());
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    let Cli {
        json,
        constructive_only,
        command,
    } = cli;
    match command {
        Command::Check { files } => cmd_check(&files, json, constructive_only, out, err),
        Command::Corpus {
            action: CorpusAction::Run,
        } => cmd_corpus_run(json, constructive_only, out),
        Command::Corpus {
            action: CorpusAction::List,
        } => cmd_corpus_list(json, out),
        Command::Mutate { seed, verbose } => cmd_mutate(seed, verbose, json, out),
        Command::Oracle { files, max } => cmd_oracle(&files, max, json, out, err),
        Command::Stoic { files } => cmd_stoic(&files, json, out, err),
    }
}

/// Later codes only replace earlier ones when they are more severe:
/// usage and file trouble outrank rejections, which outrank an
/// inconclusive oracle.
fn worse(current: i32, new: i32) -> i32 {
    let rank = |c: i32| match c {
        2 => 3,
        1 => 2,
        3 => 1,
        _ => 0,
    };
    if rank(new) > rank(current) {
        new
    } else {
        current
    }
}

/// Reads and parses one input file, reporting trouble on `err`.
fn load(path: &PathBuf, err: &mut impl Write) -> Result<(String, Document), (FileReport, i32)> {
    let name = path.display().to_string();
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "{name}: {e}");
            return Err((FileReport::failed(&name, vec![e.to_string()]), 2));
        }
    };
    match parse_document(&text, &name) {
        Ok(doc) => Ok((name, doc)),
        Err(diags) => {
            for d in &diags {
                let _ = writeln!(err, "{d}");
            }
            Err((
                FileReport::failed(&name, diags.iter().map(|d| d.to_string()).collect()),
                1,
            ))
        }
    }
}

fn emit_json(out: &mut impl Write, value: &impl serde::Serialize) {
    let _ = writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(value).expect("report serializes")
    );
}

fn print_outcome(out: &mut impl Write, name: &str, outcome: &DocOutcome) {
    let verdict = if outcome.accepted() { "ok" } else { "FAILED" };
    let _ = writeln!(out, "{name}: {verdict}");
    for e in &outcome.errors {
        let _ = writeln!(out, "  error: {e}");
    }
    for item in &outcome.items {
        if item.accepted {
            let cls = item
                .classification
                .map(|c| format!(" ({c})"))
                .unwrap_or_default();
            let _ = writeln!(out, "  {} {}: accepted{cls}", item.kind.as_str(), item.name);
        } else {
            let _ = writeln!(out, "  {} {}: rejected", item.kind.as_str(), item.name);
            for f in &item.failures {
                let _ = writeln!(out, "    {f}");
            }
        }
    }
}

fn cmd_check(
    files: &[PathBuf],
    json: bool,
    constructive_only: bool,
    out: &mut impl Write,
    err: &mut impl Write,
) -> i32 {
    let mut reports = Vec::new();
    let mut code = 0;
    for path in files {
        match load(path, err) {
            Err((report, c)) => {
                reports.push(report);
                code = worse(code, c);
            }
            Ok((name, doc)) => {
                let mut outcome = run_document(&doc, None);
                if constructive_only {
                    reject_classical(&mut outcome);
                }
                if !json {
                    print_outcome(out, &name, &outcome);
                }
                if !outcome.accepted() {
                    code = worse(code, 1);
                }
                reports.push(FileReport::from_outcome(&name, &outcome));
            }
        }
    }
    if json {
        emit_json(out, &Report::new("check", reports));
    }
    code
}

/// Joins the per-item results of one corpus entry into a single line.
fn summarize(outcome: &DocOutcome) -> String {
    let parts: Vec<String> = outcome
        .items
        .iter()
        .map(|i| {
            let mut notes = Vec::new();
            if let Some(c) = i.classification {
                notes.push(c.to_string());
            }
            if let Some(o) = &i.oracle {
                notes.push(o.to_string());
            }
            if notes.is_empty() {
                format!("{} {}", i.kind.as_str(), i.name)
            } else {
                format!("{} {} ({})", i.kind.as_str(), i.name, notes.join("; "))
            }
        })
        .collect();
    parts.join("; ")
}

fn cmd_corpus_run(json: bool, constructive_only: bool, out: &mut impl Write) -> i32 {
    let mut reports = Vec::new();
    let mut failing = 0usize;
    for entry in ENTRIES {
        let check: EntryCheck = check_entry(entry, constructive_only);
        let ok = check.ok();
        if !ok {
            failing += 1;
        }
        if !json {
            match &check.outcome {
                Some(outcome) if ok => {
                    let _ = writeln!(out, "ok   {:<22} {}", entry.name, summarize(outcome));
                }
                _ => {
                    let _ = writeln!(out, "FAIL {}", entry.name);
                    for e in &check.parse_errors {
                        let _ = writeln!(out, "     {e}");
                    }
                    for m in &check.mismatches {
                        let _ = writeln!(out, "     {m}");
                    }
                }
            }
        }
        let mut file_report = match &check.outcome {
            Some(outcome) => FileReport::from_outcome(entry.file, outcome),
            None => FileReport::failed(entry.file, check.parse_errors.clone()),
        };
        file_report.ok = ok;
        file_report.errors.extend(check.mismatches.clone());
        reports.push(file_report);
    }
    if json {
        emit_json(out, &Report::new("corpus run", reports));
    } else {
        let _ = writeln!(
            out,
            "{} entries, {} ok, {} failing",
            ENTRIES.len(),
            ENTRIES.len() - failing,
            failing
        );
    }
    if failing == 0 {
        0
    } else {
        1
    }
}

fn cmd_corpus_list(json: bool, out: &mut impl Write) -> i32 {
    if json {
        emit_json(out, &report::corpus_listing());
    } else {
        for entry in ENTRIES {
            let items: Vec<String> = entry
                .items
                .iter()
                .map(|i| format!("{} {}", i.kind.as_str(), i.name))
                .collect();
            let _ = writeln!(
                out,
                "{:<22} {:<38} {}",
                entry.name,
                entry.file,
                items.join(", ")
            );
        }
    }
    0
}

fn cmd_mutate(seed: u64, verbose: bool, json: bool, out: &mut impl Write) -> i32 {
    let mutants = mutate::mutate_corpus(seed);
    let survivors: Vec<&mutate::Mutant> = mutants.iter().filter(|m| !m.rejected).collect();
    if json {
        let listed = survivors
            .iter()
            .map(|m| MutantJson {
                entry: m.entry.to_string(),
                description: m.description.clone(),
            })
            .collect();
        emit_json(out, &MutationReport::new(seed, mutants.len(), listed));
    } else {
        for m in &mutants {
            if !m.rejected {
                let _ = writeln!(out, "SURVIVOR {}: {}", m.entry, m.description);
            } else if verbose {
                let _ = writeln!(out, "rejected {}: {}", m.entry, m.description);
            }
        }
        let _ = writeln!(
            out,
            "seed {seed}: {} mutants, {} rejected, {} survivors",
            mutants.len(),
            mutants.len() - survivors.len(),
            survivors.len()
        );
    }
    if !mutants.is_empty() && survivors.is_empty() {
        0
    } else {
        1
    }
}

fn cmd_oracle(
    files: &[PathBuf],
    max: usize,
    json: bool,
    out: &mut impl Write,
    err: &mut impl Write,
) -> i32 {
    let config = OracleConfig {
        max_size: max.clamp(1, 4),
        ..OracleConfig::default()
    };
    let mut reports = Vec::new();
    let mut code = 0;
    for path in files {
        match load(path, err) {
            Err((report, c)) => {
                reports.push(report);
                code = worse(code, c);
            }
            Ok((name, doc)) => {
                let outcome = run_document(&doc, Some(config));
                let mut file_ok = true;
                if !json {
                    let _ = writeln!(out, "{name}:");
                }
                for item in &outcome.items {
                    let Some(o) = &item.oracle else { continue };
                    if !json {
                        let _ = writeln!(out, "  {} {}: {o}", item.kind.as_str(), item.name);
                        if let OracleOutcome::Countermodel { display } = o {
                            for line in display.lines() {
                                let _ = writeln!(out, "    {line}");
                            }
                        }
                    }
                    match o {
                        OracleOutcome::Valid { .. } => {}
                        OracleOutcome::BudgetExceeded { .. } => {
                            file_ok = false;
                            code = worse(code, 3);
                        }
                        OracleOutcome::Countermodel { .. } | OracleOutcome::Error { .. } => {
                            file_ok = false;
                            code = worse(code, 1);
                        }
                    }
                }
                let mut file_report = FileReport::from_outcome(&name, &outcome);
                file_report.ok = file_ok;
                reports.push(file_report);
            }
        }
    }
    if json {
        emit_json(out, &Report::new("oracle", reports));
    }
    code
}

fn cmd_stoic(files: &[PathBuf], json: bool, out: &mut impl Write, err: &mut impl Write) -> i32 {
    let indemonstrables = default_indemonstrables();
    let mut reports = Vec::new();
    let mut code = 0;
    for path in files {
        match load(path, err) {
            Err((report, c)) => {
                reports.push(report);
                code = worse(code, c);
            }
            Ok((name, doc)) => {
                let mut bases = Vec::new();
                let mut items = Vec::new();
                let mut file_ok = true;
                let mut seen = false;
                for Decl { kind, .. } in &doc.decls {
                    match kind {
                        DeclKind::Sequent { name, sequent } => {
                            bases.push((name.clone(), sequent.clone()));
                        }
                        DeclKind::Derive {
                            name: dname,
                            derivation,
                        } => {
                            seen = true;
                            let report = check_derivation(&bases, &indemonstrables, derivation);
                            let accepted = report.accepted();
                            if !accepted {
                                file_ok = false;
                                code = worse(code, 1);
                            }
                            if !json {
                                let verdict = if accepted { "accepted" } else { "rejected" };
                                let _ = writeln!(out, "{dname}: {verdict}");
                                for step in &report.steps {
                                    let mark = if step.ok { "ok  " } else { "FAIL" };
                                    let rule = match &step.schema {
                                        Some(s) => format!("{} ({s})", step.rule),
                                        None => step.rule.to_string(),
                                    };
                                    let _ = writeln!(
                                        out,
                                        "  {mark} {}: {}   [{rule}]",
                                        step.label, step.sequent
                                    );
                                }
                                for failure in &report.failures {
                                    let _ = writeln!(out, "  {failure}");
                                }
                            }
                            items.push(ItemJson {
                                name: dname.clone(),
                                kind: "derivation",
                                accepted,
                                classification: None,
                                failures: report.failures.iter().map(|f| f.to_string()).collect(),
                                oracle: None,
                            });
                        }
                        _ => {}
                    }
                }
                if !seen && !json {
                    let _ = writeln!(out, "{name}: no derivations");
                }
                reports.push(FileReport {
                    file: name,
                    ok: file_ok,
                    errors: Vec::new(),
                    items,
                });
            }
        }
    }
    if json {
        emit_json(out, &Report::new("stoic", reports));
    }
    code
}
