use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use supertriv_cli::commands::{self, Failure, Op, Outcome, VerifyArgs, EXIT_INTERNAL, EXIT_OK, EXIT_USAGE};
use supertriv_cli::ModuleFile;

/// Supermodules over detecting Lie superalgebras: syzygies, stripping,
/// endotrivial classification and theorem verification.
#[derive(Parser, Debug)]
#[command(name = "supertriv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a module file parses and satisfies the bracket relations.
    Validate { path: PathBuf },
    /// Print dimensions, rank, socle dimension, projectivity and weights.
    Info { path: PathBuf },
    /// Apply a module operation and write the result.
    Op {
        #[arg(value_enum)]
        op: OpArg,
        /// One input for dual, pi and restrict; two otherwise.
        #[arg(required = true, num_args = 1..=2)]
        paths: Vec<PathBuf>,
        /// Odd vector for restrict, as comma-separated rationals; repeat for each.
        #[arg(long = "v", allow_hyphen_values = true)]
        vectors: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the stripped syzygy Ω^n of the principal block.
    Syzygy {
        path: PathBuf,
        #[arg(short = 'n', allow_hyphen_values = true)]
        n: i64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Remove projective summands; writes the core and prints multiplicities.
    Strip {
        path: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the class (n, parity) of an endotrivial module.
    Classify { path: PathBuf },
    /// Run verification suites; exit 0 iff every check passes.
    Verify {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 6)]
        range: i64,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// Overridden by SUPERTRIV_SEED.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// A suite name or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OpArg {
    Tensor,
    Dual,
    Hom,
    Sum,
    Outer,
    Pi,
    Restrict,
}

impl From<OpArg> for Op {
    fn from(o: OpArg) -> Op {
        match o {
            OpArg::Tensor => Op::Tensor,
            OpArg::Dual => Op::Dual,
            OpArg::Hom => Op::Hom,
            OpArg::Sum => Op::Sum,
            OpArg::Outer => Op::Outer,
            OpArg::Pi => Op::Pi,
            OpArg::Restrict => Op::Restrict,
        }
    }
}

fn seed_override(seed: u64) -> Result<u64, Failure> {
    match std::env::var("SUPERTRIV_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .with_context(|| format!("SUPERTRIV_SEED={s:?} is not an unsigned integer"))
            .map_err(Failure::usage),
        Err(_) => Ok(seed),
    }
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let (outcome, output) = match cli.command {
        Command::Validate { path } => (commands::validate(&path)?, None),
        Command::Info { path } => (commands::info(&path)?, None),
        Command::Op { op, paths, vectors, output } => {
            let refs: Vec<&std::path::Path> = paths.iter().map(PathBuf::as_path).collect();
            (commands::op(op.into(), &refs, &vectors)?, output)
        }
        Command::Syzygy { path, n, output } => (commands::syzygy(&path, n)?, output),
        Command::Strip { path, output } => (commands::strip(&path)?, output),
        Command::Classify { path } => (commands::classify(&path)?, None),
        Command::Verify { rank, range, samples, seed, suite, json } => {
            let args = VerifyArgs { rank, range, samples, seed: seed_override(seed)?, suite, json };
            (commands::verify(&args)?, None)
        }
    };
    let Outcome { mut stdout, module, code } = outcome;
    if let Some(m) = module {
        let text = ModuleFile::from_module(&m).to_json();
        match output {
            Some(p) => fs::write(&p, text)
                .with_context(|| format!("cannot write {}", p.display()))
                .map_err(Failure::usage)?,
            // Module on stdout; any summary goes to stderr.
            None => {
                eprint!("{stdout}");
                stdout = text;
            }
        }
    }
    Ok(Outcome { stdout, module: None, code })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let result = std::panic::catch_unwind(|| run(cli));
    match result {
        Ok(Ok(out)) => {
            print!("{}", out.stdout);
            let _ = std::io::stdout().flush();
            ExitCode::from(out.code as u8)
        }
        Ok(Err(f)) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code as u8)
        }
        Err(_) => ExitCode::from(EXIT_INTERNAL as u8),
    }
}
