//! `artinian`: Hilbert functions, apolar ideals, commuting tuples and ray
//! degenerations from the command line.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use artinian::ideals::DEFAULT_TRUNCATION_CAP;
use artinian::random::DEFAULT_SEED;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod error;
mod input;

use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "artinian", version, about = "Exact computations with finite algebras and commuting matrices")]
struct Cli {
    /// Number of variables; defaults to the largest index used.
    #[arg(long, global = true)]
    vars: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Largest degree tried when certifying finite colength.
    #[arg(long, global = true, default_value_t = DEFAULT_TRUNCATION_CAP)]
    truncation_cap: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// A polynomial list given inline or in a file; the file wins.
#[derive(Args, Debug, Clone)]
struct PolyInput {
    /// Comma-separated polynomials in x1..xn (inverse system) or a1..an (ideal).
    polys: Option<String>,
    /// Read the polynomial list from a file.
    #[arg(long)]
    file: Option<PathBuf>,
}

/// A matrix tuple from a file, or the algebra of a polynomial list.
#[derive(Args, Debug, Clone)]
struct TupleInput {
    /// Matrix tuple JSON: a catalog fixture or `{"n", "d", "matrices"}`.
    #[arg(long)]
    tuple: Option<PathBuf>,
    #[command(flatten)]
    polys: PolyInput,
    /// Parameter of a recipe tuple.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Move along the tuple's deformation direction by this amount.
    #[arg(long, allow_hyphen_values = true)]
    deform: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hilbert function of an inverse system, or local Hilbert function of an ideal.
    Hf(PolyInput),
    /// Apolar ideal of an inverse system, by degree.
    Apolar {
        #[command(flatten)]
        input: PolyInput,
        /// Only this degree.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Socle dimension of the quotient algebra.
    Socle(PolyInput),
    /// Quotient algebra: standard monomials, generators and multiplication matrices.
    Algebra(PolyInput),
    /// Tangent space dimension of the commuting variety.
    Tangent {
        #[command(flatten)]
        input: TupleInput,
        /// Named shape from the tuple file constraining the tangent directions.
        #[arg(long)]
        shape: Option<String>,
    },
    /// Whether a vector generates the space under the tuple; searches one when none is given.
    Stable {
        #[command(flatten)]
        input: TupleInput,
        /// Comma-separated vector entries.
        #[arg(long, allow_hyphen_values = true)]
        vector: Option<String>,
    },
    /// Ray order, ray decomposition and fiber colengths.
    Ray {
        #[command(flatten)]
        input: PolyInput,
        /// Ray direction, 1-based.
        #[arg(long, default_value_t = 1)]
        direction: usize,
        /// Fiber parameters to report in full, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// Initial ideal for a weight vector.
    InitIdeal {
        #[command(flatten)]
        input: PolyInput,
        /// Comma-separated integer weights, all positive or all negative.
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Intersection of inverse-system, ideal and point components.
    Intersect {
        /// Inverse system component (repeatable).
        #[arg(long)]
        system: Vec<String>,
        /// Ideal component (repeatable).
        #[arg(long)]
        ideal: Vec<String>,
        /// Point component, comma-separated coordinates (repeatable).
        #[arg(long, allow_hyphen_values = true)]
        point: Vec<String>,
        /// Scheme JSON `{"vars", "components"}`; overrides the flags above.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Runs the fixture catalog and prints the verification report.
    VerifyPaper {
        /// Fixture files to run instead of the built-in catalog.
        fixtures: Vec<PathBuf>,
    },
}

/// What a subcommand produced.
pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
    pub success: bool,
}

/// Settings shared by all subcommands.
pub struct Settings {
    pub vars: Option<usize>,
    pub seed: u64,
    pub cap: u32,
}

fn dispatch(cli: Cli) -> Result<Output, CliError> {
    let s = Settings { vars: cli.vars, seed: cli.seed, cap: cli.truncation_cap };
    match cli.command {
        Command::Hf(i) => commands::hf(&s, &i),
        Command::Apolar { input, degree } => commands::apolar(&s, &input, degree),
        Command::Socle(i) => commands::socle(&s, &i),
        Command::Algebra(i) => commands::algebra(&s, &i),
        Command::Tangent { input, shape } => commands::tangent(&s, &input, shape.as_deref()),
        Command::Stable { input, vector } => commands::stable(&s, &input, vector.as_deref()),
        Command::Ray { input, direction, lambda } => commands::ray(&s, &input, direction, lambda.as_deref()),
        Command::InitIdeal { input, weight } => commands::init_ideal(&s, &input, &weight),
        Command::Intersect { system, ideal, point, file } => {
            commands::intersect(&s, &system, &ideal, &point, file.as_deref())
        }
        Command::VerifyPaper { fixtures } => commands::verify_paper(&fixtures),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let mut stdout = std::io::stdout().lock();
    match dispatch(cli) {
        Ok(out) => {
            let written = match format {
                Format::Text => write!(stdout, "{}", out.text),
                Format::Json => writeln!(stdout, "{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
            };
            if written.is_err() {
                return ExitCode::from(1);
            }
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            match format {
                Format::Text => eprintln!("{}", e.message()),
                Format::Json => eprintln!("{}", serde_json::to_string_pretty(&e.to_json()).expect("serializable")),
            }
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use clap::CommandFactory;

    use super::*;

    #[test]
    fn argument_definitions_are_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn global_flags_follow_the_subcommand() {
        let cli = Cli::try_parse_from(["artinian", "hf", "--vars", "4", "x1*x2", "--format", "json"]).unwrap();
        assert_eq!(cli.vars, Some(4));
        assert_eq!(cli.format, Format::Json);
        assert_eq!(cli.seed, DEFAULT_SEED);
    }

    #[test]
    fn negative_weights_parse() {
        let cli = Cli::try_parse_from(["artinian", "init-ideal", "a1^2", "--weight", "-1,-2"]).unwrap();
        assert!(matches!(cli.command, Command::InitIdeal { ref weight, .. } if weight == "-1,-2"));
    }
}
