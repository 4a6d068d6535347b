use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use koalign_cli::{commands, failure, serve};

#[derive(Parser)]
#[command(
    name = "koalign",
    version,
    about = "XPOS-to-UPOS alignment for Korean UD treebanks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count eojeol constructions and report threshold coverage.
    Mine {
        input: PathBuf,
        /// Construction table TSV.
        #[arg(short, long)]
        output: PathBuf,
        /// Constructions seen more than this many times count as reviewed.
        #[arg(long, default_value_t = koalign::miner::DEFAULT_THRESHOLD)]
        threshold: u64,
        /// Examples kept per construction.
        #[arg(long, default_value_t = koalign::miner::DEFAULT_EXAMPLE_CAP)]
        examples: usize,
        /// Coverage report TSV; printed to stdout when omitted.
        #[arg(long)]
        coverage: Option<PathBuf>,
    },
    /// Re-tag UPOS from XPOS and write the change log and delta report.
    Align {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Mapping table TSV; the built-in seed table when omitted.
        #[arg(long)]
        table: Option<PathBuf>,
        /// Rule configuration TOML.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Change log TSV [default: <output>.changes.tsv].
        #[arg(long)]
        changes: Option<PathBuf>,
        /// Delta report TSV [default: <output>.delta.tsv].
        #[arg(long)]
        delta: Option<PathBuf>,
    },
    /// Score a system file against gold.
    Eval {
        gold: PathBuf,
        system: PathBuf,
        /// Print JSON instead of TSV.
        #[arg(long)]
        json: bool,
    },
    /// Seeded train/dev/test split.
    Split {
        input: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "8:1:1")]
        ratios: String,
    },
    /// UPOS delta report between two versions of a corpus.
    Report {
        before: PathBuf,
        after: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the built-in seed mapping table.
    SeedTable { output: PathBuf },
    /// Serve the review API over the changes of one alignment run.
    ReviewServe {
        corpus: PathBuf,
        /// Mapping table TSV; adjudicated decisions are saved back into it.
        #[arg(long)]
        table: PathBuf,
        /// Holds the session snapshot and the decision log.
        #[arg(long)]
        state_dir: PathBuf,
        #[arg(long, default_value = "127.0.0.1:8080")]
        bind: SocketAddr,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Fraction of change records to sample, e.g. 1/10; 1 lists all.
        #[arg(long, default_value = "1/10")]
        sample: String,
        #[arg(long, default_value_t = 1)]
        round: u32,
        /// Static files for the review UI, served at /.
        #[arg(long)]
        ui_dir: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Mine {
            input,
            output,
            threshold,
            examples,
            coverage,
        } => commands::mine(&input, &output, threshold, examples, coverage.as_deref()),
        Command::Align {
            input,
            output,
            table,
            config,
            changes,
            delta,
        } => commands::align(&commands::AlignPaths {
            input,
            changes: changes.unwrap_or_else(|| commands::sibling(&output, "changes.tsv")),
            delta: delta.unwrap_or_else(|| commands::sibling(&output, "delta.tsv")),
            output,
            table,
            config,
        }),
        Command::Eval { gold, system, json } => commands::eval(&gold, &system, json),
        Command::Split {
            input,
            out_dir,
            seed,
            ratios,
        } => commands::split(&input, &out_dir, seed, &ratios),
        Command::Report {
            before,
            after,
            output,
        } => commands::report(&before, &after, output.as_deref()),
        Command::SeedTable { output } => commands::seed_table(&output),
        Command::ReviewServe {
            corpus,
            table,
            state_dir,
            bind,
            config,
            seed,
            sample,
            round,
            ui_dir,
        } => serve::run(serve::Options {
            corpus,
            table,
            state_dir,
            config,
            seed,
            sample: commands::parse_fraction(&sample)?,
            round,
            bind,
            ui_dir,
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => failure::report(&e),
    }
}
