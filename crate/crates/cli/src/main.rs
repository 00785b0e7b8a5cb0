mod commands;
mod input;
mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use opkls::poset::Caps;
use opkls::Error;

use crate::report::Format;

#[derive(Parser, Debug)]
#[command(name = "opkls", version, about = "Operadic Kazhdan–Lusztig–Stanley computations on geometric lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Builtin lattice: boolean:N, uniform:K,N, partition:N, complete:N, cycle:N
    #[arg(long, global = true, value_name = "NAME")]
    builtin: Option<String>,

    /// JSON lattice description
    #[arg(long, global = true, value_name = "PATH")]
    input: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Restrict to one weight
    #[arg(long, global = true)]
    weight: Option<usize>,

    #[arg(long, global = true, value_enum)]
    variant: Option<VariantArg>,

    #[arg(long, global = true, default_value_t = Caps::default().max_elements)]
    max_elements: usize,

    #[arg(long, global = true, default_value_t = Caps::default().max_chains)]
    max_chains: usize,

    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Run a single verification check
    #[arg(long, global = true, value_name = "NAME")]
    check: Option<String>,

    /// Print timings to stderr
    #[arg(short, long, global = true)]
    verbose: bool,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Elements, atoms, Möbius function and characteristic polynomial
    Lattice,
    /// KL and inverse KL polynomials from the recursion and from complexes
    Kl,
    /// Run the invariant suite
    Verify,
    /// Bigraded Gerst dimensions, Whitney numbers and normal monomial counts
    Dims,
    /// Betti numbers of bar, Koszul or KLS complexes
    Betti,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VariantArg {
    Rkls,
    Lkls,
    RklsHat,
    LklsHat,
    Bar,
    Kos,
}

/// Validated settings for one invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub source: input::Source,
    pub format: Format,
    pub weight: Option<usize>,
    pub variant: Option<VariantArg>,
    pub caps: Caps,
    pub check: Option<String>,
    pub verbose: bool,
}

impl RunConfig {
    fn from_cli(cli: &Cli) -> Result<Self, Error> {
        let source = match (&cli.builtin, &cli.input) {
            (Some(name), None) => input::Source::Builtin(name.clone()),
            (None, Some(path)) => input::Source::File(path.clone()),
            _ => return Err(Error::InvalidInput("give exactly one of --builtin and --input".into())),
        };
        if cli.max_elements == 0 || cli.max_chains == 0 {
            return Err(Error::InvalidInput("size caps must be positive".into()));
        }
        Ok(RunConfig {
            source,
            format: cli.format,
            weight: cli.weight,
            variant: cli.variant,
            caps: Caps {
                max_elements: cli.max_elements,
                max_chains: cli.max_chains,
            },
            check: cli.check.clone(),
            verbose: cli.verbose,
        })
    }
}

/// 2 for input errors, 3 for size guards, 1 for everything else.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SizeGuardExceeded { .. } => 3,
        Error::InvalidInput(_)
        | Error::NotALattice(..)
        | Error::NotGraded(_)
        | Error::NotGeometric { .. }
        | Error::MatroidAxiom(_)
        | Error::Json(_)
        | Error::Io(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let run = || -> Result<bool, Error> {
        let cfg = RunConfig::from_cli(&cli)?;
        let report = match cli.command {
            Command::Lattice => commands::lattice(&cfg)?,
            Command::Kl => commands::kl(&cfg)?,
            Command::Dims => commands::dims(&cfg)?,
            Command::Betti => commands::betti(&cfg)?,
            Command::Verify => verify::run(&cfg)?,
        };
        report.emit(cfg.format)?;
        Ok(report.ok)
    };
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
