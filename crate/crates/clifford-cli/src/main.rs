//! Command-line front end: verify, construct, analyze, equiv, tangent,
//! census, solve.

mod commands;
mod json;
mod manifest;
mod parallel;

use clap::{Parser, Subcommand};

/// Error with the exit code it maps to: 64 for usage/schema problems, 1 for
/// operational failures.
#[derive(Debug)]
pub struct CliError {
    message: String,
    code: i32,
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError { message: msg.into(), code: 64 }
    }

    pub fn failed(msg: impl std::fmt::Display) -> Self {
        CliError { message: msg.to_string(), code: 1 }
    }

    pub fn exit_code(&self) -> i32 {
        self.code
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Parser)]
#[command(
    name = "clifford",
    version,
    about = "Exact toolkit for matrix representations of Clifford algebras of binary forms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Re-verify a representation document: Clifford identity and d | m.
    Verify {
        #[arg(long)]
        rep: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Build a representation: clock-shift, gl2-pullback, direct-sum,
    /// conjugate, or random-equivalent.
    Construct {
        /// clock-shift | gl2-pullback | direct-sum | conjugate | random-equivalent
        #[arg(long)]
        kind: String,
        /// Degree for clock-shift.
        #[arg(long)]
        d: Option<usize>,
        /// Field for clock-shift: JSON spec or shorthand (q, gfQ, zetaN).
        #[arg(long)]
        field: Option<String>,
        /// Input representation (gl2-pullback, conjugate, random-equivalent).
        #[arg(long)]
        rep: Option<String>,
        /// Left/right inputs for direct-sum.
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        /// Seed for random-equivalent.
        #[arg(long)]
        seed: Option<u64>,
        /// 2x2 matrix "p,q;r,s" for gl2-pullback (element grammar).
        #[arg(long)]
        g: Option<String>,
        /// m x m matrix, rows ';'-separated, for conjugate.
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Bundle invariants, fiber profile, characteristic-polynomial identity
    /// and the stability verdict of a representation.
    Analyze {
        #[arg(long)]
        rep: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Decide equivalence of two representations of the same form.
    /// Exits 0 equivalent / 1 inequivalent / 2 undecided.
    Equiv {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Seed for the randomized fallback when both sides are reducible.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Randomized-search budget.
        #[arg(long, default_value_t = 200)]
        tries: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Tangent-space dimension of the representation variety and the local
    /// moduli dimension against the r²(g−1)+1 prediction.
    Tangent {
        #[arg(long)]
        rep: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Exhaustive census over a small finite field.
    /// Exits 3 when a class-count prediction exists and does not match.
    Census {
        /// Form document (its coefficients are re-read in --field if given).
        #[arg(long)]
        form: String,
        /// Census field: JSON spec or shorthand such as gf2, gf4.
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        m: usize,
        /// Lift the 2^30 stage-1 guard.
        #[arg(long)]
        force_large: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Include wall-clock timing in the JSON (breaks byte-reproducibility).
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        out: Option<String>,
    },
    /// Numeric (complex double) solver for the defining identities.
    Solve {
        /// Form document; coefficients are read as complex literals.
        #[arg(long)]
        form: String,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Restart budget (default 12).
        #[arg(long)]
        restarts: Option<usize>,
        /// Residual tolerance (default 1e-10).
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        out: Option<String>,
    },
}

fn run(cli: Cli, argv: &[String]) -> Result<i32, CliError> {
    match cli.command {
        Command::Verify { rep, out } => commands::verify(&rep, argv, &out),
        Command::Construct { kind, d, field, rep, a, b, seed, g, x, out } => commands::construct(
            commands::ConstructArgs { kind, d, field, rep, a, b, seed, g, x },
            argv,
            &out,
        ),
        Command::Analyze { rep, out } => commands::analyze(&rep, argv, &out),
        Command::Equiv { a, b, seed, tries, out } => {
            commands::equiv(&a, &b, seed, tries, argv, &out)
        }
        Command::Tangent { rep, out } => commands::tangent(&rep, argv, &out),
        Command::Census { form, field, m, force_large, jobs, timings, out } => commands::census_cmd(
            commands::CensusArgs { form, field, m, force_large, jobs, timings },
            argv,
            &out,
        ),
        Command::Solve { form, m, seed, restarts, tol, jobs, timings, out } => commands::solve_cmd(
            commands::SolveArgs { form, m, seed, restarts, tol, jobs, timings },
            argv,
            &out,
        ),
    }
}

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            // help/version requests are not usage errors
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            eprint!("{e}");
            std::process::exit(64);
        }
    };
    match run(cli, &argv) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}
