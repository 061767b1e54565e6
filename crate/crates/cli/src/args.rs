use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use monodromy_core::monodromy::Orientation;

/// Exact normal forms of monodromy matrices and numerical checks that the
/// Maslov vector is a monodromy eigenvector.
#[derive(Debug, Parser)]
#[command(name = "monodromy", version, after_help = EXIT_CODES)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

pub const EXIT_CODES: &str = "Exit status:
  0  success (simulate, theorem-check: verdict holds or vacuous)
  1  parse or usage error
  2  classify: matrix has no eigenvalue 1
  3  simulate: a loop sample is near-critical or unresolved (failing s on stderr)
  4  simulate, theorem-check: verdict fails (M mu != mu)";

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigen signature and normal form of a matrix in SL(2,Z) or SL(3,Z).
    Classify(MatrixInput),
    /// A matrix in SL(n,Z) whose first column is the given primitive vector.
    Complete {
        /// Integer entries, e.g. `2,3` or `"2 3"`.
        #[arg(allow_hyphen_values = true)]
        vector: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Tries to remove the top row of `[[1, a], [0, A]]` by conjugation.
    Blockdiag(MatrixInput),
    /// Continues cycles, actions and Maslov windings around a loop of regular
    /// values and reports the monodromy.
    Simulate(SimulateArgs),
    /// Checks `M mu = mu` for a given matrix and Maslov vector.
    TheoremCheck {
        #[command(flatten)]
        input: MatrixInput,
        /// Maslov vector, e.g. `0,2`.
        #[arg(long, allow_hyphen_values = true)]
        maslov: String,
    },
}

#[derive(Debug, Args)]
pub struct MatrixInput {
    /// Matrix document (text or JSON); `-` or omitted reads stdin.
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OrientationArg {
    Ccw,
    Cw,
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::Ccw => Orientation::Ccw,
            OrientationArg::Cw => Orientation::Cw,
        }
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Potential coefficients `a,b` of `V = a r^4 + b r^2`.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true, default_value = "1,-1")]
    pub system: [f64; 2],
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true, default_value = "0,0")]
    pub loop_center: [f64; 2],
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true, default_value = "0.1,0.1")]
    pub loop_radii: [f64; 2],
    #[arg(long, default_value_t = 64)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = OrientationArg::Ccw)]
    pub orientation: OrientationArg,
    /// Integration tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Also write per-sample data for plotting.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

pub fn parse_pair(s: &str) -> Result<[f64; 2], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b] = parts.as_slice() else {
        return Err(format!("expected two comma-separated numbers, got {s:?}"));
    };
    let parse = |x: &str| x.parse::<f64>().map_err(|_| format!("not a number: {x:?}"));
    let pair = [parse(a)?, parse(b)?];
    if pair.iter().all(|x| x.is_finite()) {
        Ok(pair)
    } else {
        Err(format!("values must be finite: {s:?}"))
    }
}
