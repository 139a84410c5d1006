use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use tridist::search::{MinimizeOptions, SearchOptions};
use tridist::PaletteMode;
use tridist_cli::commands::{self, ConstructionKind, ExportArgs, ExportFormat, Exit, SearchArgs};

/// Edge colorings of K_n that give every triangle its own palette.
///
/// Exit codes: 0 success or distinguishing, 1 not distinguishing, UNSAT or
/// a failed conjecture row,
/// 2 usage error, 3 search limit hit.
#[derive(Parser, Debug)]
#[command(name = "tridist", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Rainbow,
    Set,
    Multiset,
}

impl From<Mode> for PaletteMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Rainbow => PaletteMode::RainbowProper,
            Mode::Set => PaletteMode::Set,
            Mode::Multiset => PaletteMode::Multiset,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Modular,
    Even,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Dot,
    Csv,
    Dimacs,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an explicit coloring (modular for odd n, even for even n).
    Construct {
        kind: Kind,
        n: usize,
        /// Write the document here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check whether a coloring document distinguishes all triangles.
    Verify {
        file: PathBuf,
        /// Palette mode; defaults to the document's mode.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
    /// Decide whether k colors suffice, or find the minimum with --minimize.
    Search {
        n: usize,
        /// Number of colors (required without --minimize).
        #[arg(short)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "multiset")]
        mode: Mode,
        /// Require a proper coloring.
        #[arg(long)]
        proper: bool,
        #[arg(long)]
        minimize: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        node_limit: Option<u64>,
        /// Seconds per decision run.
        #[arg(long)]
        time_limit: Option<f64>,
        /// Write the witness coloring document to this file.
        #[arg(long)]
        emit_witness: Option<PathBuf>,
        /// Print progress lines to standard error.
        #[arg(long)]
        progress: bool,
        /// With --minimize, also run the search below the multiset lower bound.
        #[arg(long)]
        search_below_bound: bool,
    },
    /// Check tau(n) = n - 1 for n = 4..=n_max by exact search.
    Conjecture {
        n_max: usize,
        #[arg(long, value_enum, default_value = "multiset")]
        mode: Mode,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        node_limit: Option<u64>,
        #[arg(long)]
        time_limit: Option<f64>,
        #[arg(long)]
        search_below_bound: bool,
    },
    /// Palette capacity of k colors in every mode.
    Capacity { k: usize },
    /// Known bounds on the three indices for K_n.
    Bounds { n: usize },
    /// Export a coloring (dot, csv census) or a CNF instance (dimacs).
    Export {
        file: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(short)]
        n: Option<usize>,
        #[arg(short)]
        k: Option<usize>,
        #[arg(long)]
        proper: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn seconds(s: Option<f64>) -> Option<Duration> {
    s.map(Duration::from_secs_f64)
}

fn sink(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(std::fs::File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn run(cli: Cli) -> Result<Exit> {
    let mut stderr = io::stderr().lock();
    match cli.command {
        Command::Construct { kind, n, output } => {
            let kind = match kind {
                Kind::Modular => ConstructionKind::Modular,
                Kind::Even => ConstructionKind::Even,
            };
            commands::construct(kind, n, &mut sink(&output)?, &mut stderr)
        }
        Command::Verify { file, mode } => {
            let doc = commands::load_document(&file)?;
            commands::verify(&doc, mode.map(Into::into), &mut io::stdout().lock())
        }
        Command::Search {
            n,
            k,
            mode,
            proper,
            minimize,
            jobs,
            node_limit,
            time_limit,
            emit_witness,
            progress,
            search_below_bound,
        } => {
            let args = SearchArgs {
                n,
                k,
                mode: Some(mode.into()),
                proper,
                minimize,
                jobs,
                node_limit,
                time_limit: seconds(time_limit),
                emit_witness,
                progress,
                search_below_bound,
            };
            commands::search(&args, &mut io::stdout().lock(), &mut stderr)
        }
        Command::Conjecture {
            n_max,
            mode,
            jobs,
            node_limit,
            time_limit,
            search_below_bound,
        } => {
            let opts = MinimizeOptions {
                node_limit,
                time_limit: seconds(time_limit),
                search: SearchOptions {
                    jobs,
                    ..Default::default()
                },
                search_below_bound,
            };
            commands::conjecture(n_max, mode.into(), &opts, &mut io::stdout().lock())
        }
        Command::Capacity { k } => commands::capacity(k, &mut io::stdout().lock()),
        Command::Bounds { n } => commands::bounds(n, &mut io::stdout().lock()),
        Command::Export {
            file,
            format,
            mode,
            n,
            k,
            proper,
            output,
        } => {
            let format = match format {
                Format::Dot => ExportFormat::Dot,
                Format::Csv => ExportFormat::Csv,
                Format::Dimacs => ExportFormat::Dimacs,
            };
            let args = ExportArgs {
                file,
                mode: mode.map(Into::into),
                n,
                k,
                proper,
            };
            commands::export(format, &args, &mut sink(&output)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(exit) => ExitCode::from(exit as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(Exit::Usage as u8)
        }
    }
}
