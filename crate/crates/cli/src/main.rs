//! `massforge`: exact total masses from the command line.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use massforge::MassError;

#[derive(Parser, Debug)]
#[command(
    name = "massforge",
    version,
    about = "Exact total masses of local Galois representations"
)]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,

    /// Add a decimal approximation next to exact rationals.
    #[arg(long, global = true)]
    pub decimal: bool,

    /// `key = value` file with `cap`, `max_order`, `allow_e6`, `z3_gl1`.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Allow the E6 Weyl group (order 51840).
    #[arg(long, global = true)]
    pub allow_e6: bool,

    /// Read `Z3` as cube roots of unity in GL_1 rather than a rotation of
    /// the A2 lattice.
    #[arg(long, global = true)]
    pub z3_gl1: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tame mass quasi-polynomial of a group.
    TameMass {
        #[arg(long)]
        group: String,
        /// Also evaluate at this residue field size.
        #[arg(long)]
        q: Option<u64>,
    },
    /// Whether the tame mass is uniform, and whether the group is rational.
    Uniformity {
        #[arg(long)]
        group: String,
    },
    /// Coefficients of a Weyl-series generating function.
    Genfun {
        #[arg(long, value_enum)]
        series: Series,
        #[arg(long)]
        order: usize,
    },
    /// Reproduce a stated value; exits 0 iff it is reproduced exactly.
    Verify {
        #[arg(value_enum, required_unless_present = "census")]
        check: Option<Check>,
        /// Evaluate a census file instead.
        #[arg(long, value_name = "FILE", conflicts_with = "check", requires = "q")]
        census: Option<PathBuf>,
        #[arg(long)]
        q: Option<u64>,
        /// Expected census mass, as `a/b`.
        #[arg(long, requires = "census")]
        expect: Option<String>,
    },
    /// The W(D4) mass over Q2 from quadratic towers.
    AuditD4 {
        /// Directory of `*.jsonl` field records.
        #[arg(long, env = "MASSFORGE_FIXTURES", value_name = "DIR")]
        fixtures: Option<PathBuf>,
        /// Enumerate the towers from Eisenstein polynomials instead.
        #[arg(long)]
        derive: bool,
        /// Print the log series for a, b, c, d.
        #[arg(long)]
        emit_series: bool,
    },
    /// Conjugate counts c1, c2, c3 for each length-2 orbit of H.
    C123 {
        /// Generators of G, one per line in cycle notation.
        #[arg(long, value_name = "FILE")]
        group: PathBuf,
        /// Generators of H.
        #[arg(long, value_name = "FILE")]
        subgroup: PathBuf,
        #[arg(long)]
        max_order: Option<usize>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Series {
    #[value(name = "an")]
    An,
    #[value(name = "bn")]
    Bn,
    #[value(name = "dn-odd")]
    DnOdd,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    #[value(name = "z2")]
    Z2,
    #[value(name = "z2-doubled")]
    Z2Doubled,
    #[value(name = "f2t")]
    F2t,
    #[value(name = "g2-q2")]
    G2Q2,
    #[value(name = "g2-char3")]
    G2Char3,
    #[value(name = "d2-d3-isos")]
    D2D3Isos,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(report) => {
            print!("{report}");
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                MassError::Parse { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
