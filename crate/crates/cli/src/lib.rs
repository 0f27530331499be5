//! Command line front end: spec files in, reports out.

use std::fmt;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

mod commands;
pub mod report;
pub mod spec;

pub use report::Report;
pub use spec::{build_spec, parse_spec, Built, SpecFile};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Syntax { line: usize, col: usize, msg: String },
    Input(String),
    Core(nctwist::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Syntax { line, col, msg } => write!(f, "line {line}, column {col}: {msg}"),
            CliError::Input(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<nctwist::Error> for CliError {
    fn from(e: nctwist::Error) -> Self {
        CliError::Core(e)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// dim A_d for d up to --max-degree
    Hilbert,
    /// det of the sigma matrix, with coordinate-line factors split off
    PointScheme,
    /// σ at --point
    SigmaAt,
    /// Zhang twist by the degree-one map in --matrix
    Twist,
    /// check the twisting system in --system
    TwistCheck,
    /// all M₂ completing M₁ = --matrix to a twisting step
    SolveStep,
    /// relations of the algebra of (E, --emap ∘ σ)
    Reconstruct,
    /// whether --emap (default σ) extends to projective space
    Extends,
    /// Mori criterion for --family against --family2 starting at --rho0
    Mori,
    /// O_Q(P²) twist equivalence for --Q and --Q2
    OqEquiv,
    /// the Λ₀ table of O_Q(P²) at --Q
    Localize,
    /// Heisenberg symmetries of a Sklyanin algebra
    SklyaninSymmetries,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

#[derive(Parser, Debug, Clone)]
#[command(
    name = "nctwist",
    version,
    about = "Twists, point schemes and twist equivalence of quadratic algebras"
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Family constructor, e.g. "Oq(n=2, q)" or "OQ(alpha,beta,gamma)"
    #[arg(long)]
    pub family: Option<String>,
    /// Algebra spec file
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Second family for mori and comparisons
    #[arg(long)]
    pub family2: Option<String>,
    /// Extra parameters for matrix and map files, comma separated
    #[arg(long)]
    pub params: Option<String>,
    #[arg(long = "max-degree")]
    pub max_degree: Option<usize>,
    /// "c0:c1:...:cn"
    #[arg(long)]
    pub point: Option<String>,
    /// Matrix file, one row per line
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Twisting system file, matrices separated by blank lines
    #[arg(long)]
    pub system: Option<PathBuf>,
    /// Map on the line model, as a file or "perm:1,0,2"
    #[arg(long)]
    pub rho0: Option<String>,
    /// Map on the line model (file)
    #[arg(long)]
    pub emap: Option<PathBuf>,
    /// "alpha,beta,gamma"
    #[arg(long = "Q")]
    pub q: Option<String>,
    #[arg(long = "Q2")]
    pub q2: Option<String>,
    #[arg(long, default_value_t = 12)]
    pub bound: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also write the JSON report here ("-" prints it instead of the text)
    #[arg(long)]
    pub json: Option<PathBuf>,
}

/// Exit status with captured output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { 2 } else { 0 };
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match commands::dispatch(&cli) {
        Ok(report) => {
            let code = if report.negative { 1 } else { 0 };
            let mut stdout = report.to_text();
            if let Some(path) = &cli.json {
                let json = report.to_json_string();
                if path.as_os_str() == "-" {
                    stdout = json;
                } else if let Err(e) = std::fs::write(path, json) {
                    return Outcome {
                        code: 2,
                        stdout,
                        stderr: format!("error: cannot write {}: {e}\n", path.display()),
                    };
                }
            }
            Outcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
