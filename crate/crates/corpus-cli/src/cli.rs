//! Command-line surface of `anc`.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "anc",
    version,
    about = "Check natural-deduction scripts against the ancient-logic rule inventory",
    disable_help_subcommand = true
)]
pub struct Cli {
    /// Emit a machine-readable JSON report on stdout.
    #[arg(long, global = true)]
    pub json: bool,

    /// Treat any classical (reductio-using) item as a failure.
    #[arg(long, global = true)]
    pub constructive_only: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and kernel-check one or more script files.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Work with the bundled corpus of classical arguments.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Damage corpus scripts in seeded ways and confirm every mutant
    /// is rejected.
    Mutate {
        /// Seed for the mutation generator.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print one line per mutant instead of only survivors.
        #[arg(long)]
        verbose: bool,
    },
    /// Sweep finite models over every lemma and proof goal.
    Oracle {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Largest domain size per sort (clamped to 1..=4).
        #[arg(long, default_value_t = 3)]
        max: usize,
    },
    /// Check only the sequent derivations in the files.
    Stoic {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CorpusAction {
    /// Check every bundled entry against its recorded expectations.
    Run,
    /// List the bundled entries.
    List,
}
