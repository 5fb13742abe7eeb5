//! Command-line grammar.

use std::path::PathBuf;
use std::str::FromStr;

use buchi_core::{BigInt, Rat};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "buchi",
    version,
    about = "Exact tools for Buchi's n-squares problem",
    propagate_version = true
)]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Buchi sequences over the integers.
    #[command(subcommand)]
    Seq(SeqCommand),
    /// Buchi surfaces and the point/quadratic correspondence.
    #[command(subcommand)]
    Surface(SurfaceCommand),
    /// p-adic Nevanlinna functions of rational functions.
    #[command(subcommand)]
    Padic(PadicCommand),
    /// Compile a polynomial system into a diagonal quadratic system.
    Compile(CompileArgs),
    /// Check a compiled system against the source on a box of integers.
    Check(CheckArgs),
    /// Print the formulas F, G, H or Psi.
    Formulas(FormulasArgs),
}

#[derive(Debug, Subcommand)]
pub enum SeqCommand {
    /// List nontrivial sequences whose first two terms lie in [0, bound].
    Search {
        #[arg(long, value_name = "M")]
        length: usize,
        #[arg(long, value_name = "B")]
        bound: u64,
    },
    /// Decide whether a comma-separated list is a Buchi sequence.
    Verify {
        #[arg(value_name = "X1,X2,...", allow_hyphen_values = true)]
        values: IntList,
    },
}

#[derive(Debug, Subcommand)]
pub enum SurfaceCommand {
    /// Membership, Jacobian rank and trivial line of a point.
    Check {
        #[arg(long, allow_hyphen_values = true)]
        deltas: RatList,
        #[arg(long, allow_hyphen_values = true)]
        point: RatList,
    },
    /// Non-square monic quadratics of bounded height with square values at
    /// every node.
    Scan {
        #[arg(long, allow_hyphen_values = true)]
        nodes: RatList,
        #[arg(long)]
        height: u64,
        #[arg(long)]
        integers_only: bool,
    },
    /// The quadratic x^2 - 4(2N)! with N nodes where it takes square values.
    Family {
        #[arg(long = "N", short = 'N', value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    /// A point of the trivial line with parameter nu, or the trivial line
    /// through a given point.
    Line {
        #[arg(long, allow_hyphen_values = true)]
        deltas: RatList,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "point", required_unless_present = "point", value_parser = parse_rat)]
        nu: Option<Rat>,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<RatList>,
    },
}

#[derive(Debug, Args)]
pub struct PrimeArg {
    /// The prime p.
    #[arg(long)]
    pub p: u64,
}

#[derive(Debug, Subcommand)]
pub enum PadicCommand {
    /// log_p of the Gauss norm at r = p^rho.
    Norm {
        #[command(flatten)]
        prime: PrimeArg,
        /// Polynomial or rational function in z.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
        rho: Rat,
    },
    /// Zeros in the closed disc of radius p^rho and the Newton polygon.
    Zeros {
        #[command(flatten)]
        prime: PrimeArg,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
        rho: Rat,
    },
    /// Poisson-Jensen constant of num/den over a grid of radii.
    Pjf {
        #[command(flatten)]
        prime: PrimeArg,
        #[arg(long, allow_hyphen_values = true)]
        num: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        den: String,
        #[arg(long, allow_hyphen_values = true)]
        rhos: RatList,
    },
    /// Logarithmic derivative bound |f^(n)/f|_r <= r^-n.
    Ldl {
        #[command(flatten)]
        prime: PrimeArg,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
        rho: Rat,
    },
    /// First main theorem defect for the value a over a grid of radii.
    Fmt {
        #[command(flatten)]
        prime: PrimeArg,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
        a: Rat,
        #[arg(long, allow_hyphen_values = true)]
        rhos: RatList,
    },
    /// Second main theorem sum over targets and a grid of radii.
    Smt {
        #[command(flatten)]
        prime: PrimeArg,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        targets: RatList,
        #[arg(long, allow_hyphen_values = true)]
        rhos: RatList,
    },
    /// The derivative identity for g = (a+f)^2 - u^2 and, with --b, the
    /// difference identity between h_a^2 and h_b^2.
    Delta {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
        a: Rat,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
        b: Option<Rat>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct CompileArgs {
    /// Source system: equations separated by ';' or newlines, '#' comments.
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// Gadget length.
    #[arg(long, default_value_t = 5)]
    pub m: usize,
    #[arg(long, value_enum)]
    pub emit: Option<Emit>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// Half-width of the box of source assignments.
    #[arg(long = "box", value_name = "B")]
    pub box_size: u64,
    #[arg(long, default_value_t = 5)]
    pub m: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    #[value(name = "F")]
    F,
    #[value(name = "G")]
    G,
    #[value(name = "H")]
    H,
    #[value(name = "Psi", alias = "psi")]
    Psi,
}

#[derive(Debug, Args)]
pub struct FormulasArgs {
    #[arg(long, value_enum)]
    pub mode: Mode,
    /// Gadget length; 35 for F, G and H, 5 for Psi when omitted.
    #[arg(long)]
    pub m: Option<usize>,
    /// Deltas for Psi; defaults to 1,2,...,M-1.
    #[arg(long, allow_hyphen_values = true)]
    pub deltas: Option<RatList>,
}

/// Comma-separated integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntList(pub Vec<BigInt>);

/// Comma-separated rationals, each `n` or `n/d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatList(pub Vec<Rat>);

fn split<T: FromStr>(s: &str, what: &str) -> Result<Vec<T>, String> {
    s.split(',')
        .map(|part| {
            let part = part.trim();
            part.parse::<T>()
                .map_err(|_| format!("'{part}' is not {what}"))
        })
        .collect()
}

impl FromStr for IntList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        split(s, "an integer").map(IntList)
    }
}

impl FromStr for RatList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        split(s, "a rational").map(RatList)
    }
}

pub fn parse_rat(s: &str) -> Result<Rat, String> {
    s.trim()
        .parse::<Rat>()
        .map_err(|_| format!("'{s}' is not a rational"))
}
