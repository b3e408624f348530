use std::path::PathBuf;
use std::process::ExitCode;

use abelcheck::bounds_cmd::{self, BoundsArgs, BoundsKind};
use abelcheck::covers_cmd::{self, CoversArgs};
use abelcheck::verify_cmd::{self, Format, VerifyArgs};
use abelcheck::{acceptance, exit, output_dir, CliError, Outcome};
use clap::{Parser, Subcommand};

/// Exact checks of lattice-point lemmas, abelian cover enumerations and
/// automorphism-group bounds.
#[derive(Parser)]
#[command(name = "abelcheck", version)]
struct Cli {
    /// Output directory (default: $ABELCHECK_OUT, else ./abelcheck-out).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run seeded triples through one counting lemma.
    VerifyLemmas {
        /// 2.4, 2.5, 2.6 or 2.7.
        #[arg(long)]
        lemma: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        min_size: Option<usize>,
        #[arg(long)]
        max_size: Option<usize>,
        /// Instances tried per trial before reporting it inadmissible.
        #[arg(long)]
        attempts: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Enumerate abelian covers whose group order exceeds a linear bound.
    EnumerateCovers {
        /// Linear bound in g, e.g. 3g+6.
        #[arg(long)]
        bound: String,
        #[arg(long, default_value_t = 2)]
        gmin: u64,
        #[arg(long, default_value_t = 8)]
        gmax: u64,
        /// Genus of the quotient curve.
        #[arg(long)]
        gamma: Option<u64>,
        /// Minimum number of branch points.
        #[arg(long)]
        kmin: Option<usize>,
        #[arg(long)]
        kmax: Option<usize>,
        /// Drop covers with an involution whose quotient is rational.
        #[arg(long)]
        no_hyperelliptic: bool,
        #[arg(long)]
        cyclic: bool,
        /// Compare with the shipped expected list; exit 2 on mismatch.
        #[arg(long)]
        golden: bool,
    },
    /// Bounds from key=value invariants, e.g. `bounds surface K2=4 chi=3`.
    Bounds {
        #[arg(value_enum)]
        kind: BoundsKind,
        /// Invariants and flags as key=value.
        pairs: Vec<String>,
        /// Surface bound table over --k2 x --chi as CSV.
        #[arg(long)]
        table: bool,
        #[arg(long, default_value = "1..=100")]
        k2: String,
        #[arg(long, default_value = "1..=30")]
        chi: String,
    },
    /// Run all acceptance criteria.
    ReproducePaper,
}

fn dispatch(cli: Cli) -> Result<Outcome, CliError> {
    let out = output_dir(cli.out);
    match cli.command {
        Command::VerifyLemmas { lemma, trials, dim, seed, min_size, max_size, attempts, format } => {
            verify_cmd::run(&VerifyArgs { lemma, trials, dim, seed, min_size, max_size, attempts, format, out })
        }
        Command::EnumerateCovers { bound, gmin, gmax, gamma, kmin, kmax, no_hyperelliptic, cyclic, golden } => {
            covers_cmd::run(&CoversArgs { bound, gmin, gmax, gamma, kmin, kmax, no_hyperelliptic, cyclic, golden, out })
        }
        Command::Bounds { kind, pairs, table, k2, chi } => {
            bounds_cmd::run(&BoundsArgs { kind, pairs, table, k2_range: k2, chi_range: chi, out })
        }
        Command::ReproducePaper => {
            let results = acceptance::run_all(&out.join("acceptance"));
            let code = if results.iter().all(|r| r.passed) { exit::OK } else { exit::VIOLATION };
            Ok(Outcome { code, lines: results.iter().map(|r| r.report()).collect() })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match dispatch(cli) {
        Ok(o) => {
            for l in &o.lines {
                println!("{l}");
            }
            ExitCode::from(o.code as u8)
        }
        Err(e) => {
            eprintln!("abelcheck: {e}");
            ExitCode::from(e.code() as u8)
        }
    }
}
