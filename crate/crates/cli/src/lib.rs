//! Command-line front end for `commdet-core`.
//!
//! [`run`] parses arguments and returns the exit code with both output
//! streams, so the binary and the tests share one code path.
//!
//! Exit codes: 0 success, 1 mathematical failure, 2 usage error.

mod commands;
mod examples;
mod render;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use commdet_core::IdentityId;
use num_bigint::BigInt;

pub use examples::{ledger, ExampleEntry};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MATH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "commdet",
    version,
    about = "Exact determinants of 2x2 commutators"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Prove catalogued identities over generic polynomial rings.
    Verify(VerifyArgs),
    /// Search for a representation of c by a binary quadratic form.
    Represent(RepresentArgs),
    /// Build commutator factors for a point of p r^2 + q s^2 = c.
    Factor(FactorArgs),
    /// Map a conic point to the plane/quadric intersection.
    Curve(CurveArgs),
    /// Find all conic points mapping to a given surface point.
    Preimage(PreimageArgs),
    /// Extract a norm-form witness from a pair of integer matrices.
    NormWitness(NormWitnessArgs),
    /// Enumerate the values of s r1^2 + t r1 r2 + delta r2^2 modulo n.
    ValuesMod(ValuesModArgs),
    /// Replay the worked numeric examples and compare with expected values.
    Examples,
}

fn parse_int(s: &str) -> Result<BigInt, String> {
    s.replace('_', "")
        .parse()
        .map_err(|_| format!("invalid integer `{s}`"))
}

fn parse_identity(s: &str) -> Result<IdentityId, String> {
    s.parse().map_err(|e: commdet_core::Error| e.to_string())
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("which").required(true).args(["identity", "all"])))]
pub struct VerifyArgs {
    /// Identity tag such as I_4_3.
    #[arg(long, value_parser = parse_identity)]
    pub identity: Option<IdentityId>,
    /// Prove every catalogued identity.
    #[arg(long)]
    pub all: bool,
}

#[derive(Debug, Args)]
pub struct RepresentArgs {
    /// Coefficient of r1^2.
    #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
    pub p: BigInt,
    /// Coefficient of r2^2 (alias of --delta).
    #[arg(long, value_parser = parse_int, allow_hyphen_values = true,
          conflicts_with = "delta", required_unless_present = "delta")]
    pub q: Option<BigInt>,
    /// Target value.
    #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
    pub c: BigInt,
    /// Largest |r1|, |r2| scanned.
    #[arg(long)]
    pub bound: u64,
    /// Coefficient of r1 r2.
    #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
    pub t: Option<BigInt>,
    /// Coefficient of r2^2.
    #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
    pub delta: Option<BigInt>,
}

#[derive(Debug, Args)]
pub struct FactorArgs {
    #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
    pub p: BigInt,
    #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
    pub q: BigInt,
    #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
    pub c: BigInt,
    /// Conic point; searched for when omitted.
    #[arg(long, value_parser = parse_int, allow_hyphen_values = true, requires = "s")]
    pub r: Option<BigInt>,
    #[arg(long, value_parser = parse_int, allow_hyphen_values = true, requires = "r")]
    pub s: Option<BigInt>,
    /// Search box for the conic point when --r/--s are omitted.
    #[arg(long, default_value_t = 100, conflicts_with = "r")]
    pub bound: u64,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
    pub p: BigInt,
    #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
    pub q: BigInt,
    #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
    pub c: BigInt,
    #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
    pub r: BigInt,
    #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
    pub s: BigInt,
}

#[derive(Debug, Args)]
pub struct PreimageArgs {
    #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
    pub p: BigInt,
    #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
    pub q: BigInt,
    #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
    pub c: BigInt,
    #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
    pub x: BigInt,
    #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
    pub y: BigInt,
    #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
    pub z: BigInt,
}

#[derive(Debug, Args)]
pub struct NormWitnessArgs {
    /// Integer matrix "[[a,b],[c,d]]".
    #[arg(long = "X", allow_hyphen_values = true)]
    pub x: String,
    #[arg(long = "Y", allow_hyphen_values = true)]
    pub y: String,
}

#[derive(Debug, Args)]
pub struct ValuesModArgs {
    #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
    pub s: BigInt,
    #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
    pub t: BigInt,
    #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
    pub delta: BigInt,
    /// Modulus, at most 16.
    #[arg(long)]
    pub n: u64,
}

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }
}

/// Parses `args` (program name first) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    commands::dispatch(&cli.command, cli.format)
}
