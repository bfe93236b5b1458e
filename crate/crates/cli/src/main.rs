use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod config;
mod suites;

use config::SourceArgs;

#[derive(Debug, Parser)]
#[command(
    name = "cbent",
    version,
    about = "c-differential bentness of p-ary functions over small fields"
)]
struct Cli {
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Walsh1,
    Walsh2,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate predicates for every c in a c-set.
    Check {
        #[command(flatten)]
        src: SourceArgs,
        /// "all", "all-but-1", "subfield:m" or a comma list of constants.
        #[arg(long, default_value = "all-but-1")]
        c: String,
        /// Comma list of predicates, or "all".
        #[arg(long, default_value = "all")]
        pred: String,
        /// definition, balance, profile or counting.
        #[arg(long)]
        method: Option<String>,
        /// Exit 1 unless every verdict equals this.
        #[arg(long)]
        expect: Option<bool>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Accepted for interface symmetry; checks draw no randomness.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report elapsed_ms as 0 so runs compare byte for byte.
        #[arg(long)]
        deterministic: bool,
    },
    /// Catalog x^d over a range of exponents.
    ScanMonomials {
        #[arg(long)]
        field: String,
        /// "lo..hi" (inclusive), a single d, or "all".
        #[arg(long, default_value = "all")]
        d: String,
        #[arg(long, default_value = "0")]
        c: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run a property suite over the corpus and seeded random functions.
    Verify {
        /// lemma1, lemma2, equiv1, equiv2, mm, gold, do or profiles.
        suite: String,
        #[arg(long)]
        field: Option<String>,
        /// Codomain subfield for the random functions.
        #[arg(long)]
        cod: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random functions per field.
        #[arg(long, default_value_t = 20)]
        count: u64,
        /// Half-degree for the mm suite.
        #[arg(long)]
        m: Option<u32>,
    },
    /// Dump a full Walsh spectrum with exact coefficients.
    Spectrum {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long, value_enum, default_value_t = Kind::Walsh1)]
        kind: Kind,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Dump the c-differential distribution table.
    Ddt {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long, default_value = "1")]
        c: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Instantiate a family and write its table file.
    Family {
        #[arg(long)]
        field: String,
        #[arg(long)]
        family: String,
    },
}

/// Outcome of a command that ran to completion.
pub enum Outcome {
    Ok,
    Mismatch,
}

fn run(cli: Cli, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    if let Some(w) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build_global()?;
    }
    match cli.cmd {
        Command::Check {
            src,
            c,
            pred,
            method,
            expect,
            format,
            seed: _,
            deterministic,
        } => commands::check(
            out,
            &src,
            &c,
            &pred,
            method.as_deref(),
            expect,
            format,
            deterministic,
        ),
        Command::ScanMonomials {
            field,
            d,
            c,
            format,
        } => commands::scan_monomials(out, &field, &d, &c, format),
        Command::Verify {
            suite,
            field,
            cod,
            seed,
            count,
            m,
        } => {
            let opts = suites::SuiteOpts {
                field,
                cod,
                seed,
                count,
                m,
            };
            suites::run(out, &suite, &opts)
        }
        Command::Spectrum { src, kind, format } => commands::spectrum(out, &src, kind, format),
        Command::Ddt { src, c, format } => commands::ddt(out, &src, &c, format),
        Command::Family { field, family } => commands::family(out, &field, &family),
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain()
        .filter_map(|c| c.downcast_ref::<std::io::Error>())
        .any(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.out.clone() {
        Some(path) => match std::fs::File::create(&path) {
            Ok(file) => {
                let mut w = std::io::BufWriter::new(file);
                run(cli, &mut w).and_then(|o| w.flush().map(|_| o).map_err(Into::into))
            }
            Err(e) => Err(anyhow::anyhow!("cannot create {}: {e}", path.display())),
        },
        None => {
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            run(cli, &mut w)
        }
    };
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
