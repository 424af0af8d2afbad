use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod cache;
mod commands;
mod expr;
mod numeric;

/// Exact characters, Hecke algebra products and spherical Whittaker values
/// for split adjoint groups.
#[derive(Parser, Debug)]
#[command(name = "hecke-whittaker", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The character a_λ and its dominant weight multiplicities.
    Character(CharacterArgs),
    /// Dominant weight multiplicities of V_λ.
    Weights(CharacterArgs),
    /// Hecke algebra arithmetic.
    Hecke {
        #[command(subcommand)]
        op: HeckeOp,
    },
    /// Whittaker values W(t_(λ+ρ)) for all dominant λ up to a bound.
    Whittaker(WhittakerArgs),
    /// Run every verification suite.
    Verify(VerifyArgs),
    /// Weight multiplicities for all dominant λ up to a bound.
    Export(ExportArgs),
}

#[derive(Subcommand, Debug)]
enum HeckeOp {
    /// Product of the given expressions, in normal form Σ c t_w θ_μ.
    Mul(HeckeArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Args, Debug)]
struct Common {
    /// Cartan type such as A2, B3 or G2.
    #[arg(value_name = "TYPE", required_unless_present = "cartan_type")]
    type_pos: Option<String>,
    #[arg(long = "type", value_name = "TYPE", conflicts_with = "type_pos")]
    cartan_type: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Directory of the weight multiplicity cache.
    #[arg(long, value_name = "DIR")]
    cache: Option<PathBuf>,
    /// Refuse types whose Weyl group is larger than this.
    #[arg(long, default_value_t = 60_000)]
    max_weyl_order: u64,
}

#[derive(Args, Debug)]
struct Bounded {
    /// Bound on the coordinate sum of λ.
    #[arg(long, default_value_t = 3)]
    bound: u32,
    /// Largest accepted --bound.
    #[arg(long, default_value_t = 8)]
    max_bound: u32,
}

#[derive(Args, Debug)]
struct CharacterArgs {
    #[command(flatten)]
    common: Common,
    /// Dominant coweight in fundamental coordinates, e.g. 1,0.
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
}

#[derive(Args, Debug)]
struct HeckeArgs {
    #[command(flatten)]
    common: Common,
    /// Expressions such as "T0*theta(1,0) + q"; their product is printed.
    #[arg(long = "expr", required = true, allow_hyphen_values = true)]
    exprs: Vec<String>,
}

#[derive(Args, Debug)]
struct WhittakerArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    bounded: Bounded,
    /// Satake coordinates on the fundamental coweights: rationals such as
    /// 3/2, or complex numbers such as 1+2i.
    #[arg(long, allow_hyphen_values = true)]
    gamma: String,
    /// "formal", or a rational square such as 9 or 9/4.
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    /// Explicit square root of q.
    #[arg(long, allow_hyphen_values = true)]
    v: Option<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    bounded: Bounded,
    /// Random instances per suite and simple reflection.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

#[derive(Args, Debug)]
struct ExportArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    bounded: Bounded,
    /// Write to this file instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(hecke_whittaker::Error),
    Io(std::io::Error),
    VerificationFailed(String),
}

impl CliError {
    /// Parse failures of user input become usage errors.
    pub fn from_core(e: hecke_whittaker::Error) -> Self {
        use hecke_whittaker::Error as E;
        match e {
            E::Parse(_) | E::InvalidCartanType { .. } | E::RankMismatch { .. } | E::IndexOutOfRange { .. } => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Domain(other),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::VerificationFailed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Domain(_) | CliError::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "I/O error: {e}"),
            CliError::VerificationFailed(m) => write!(f, "{m}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Character(a) => commands::character(&a.common, &a.lambda, true),
        Command::Weights(a) => commands::character(&a.common, &a.lambda, false),
        Command::Hecke { op: HeckeOp::Mul(a) } => commands::hecke_mul(&a.common, &a.exprs),
        Command::Whittaker(a) => commands::whittaker(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Export(a) => commands::export(&a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::VerificationFailed(report)) => {
            print!("{report}");
            eprintln!("error: verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
