use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pdiag_core::oracles::DEFAULT_BUDGET;
use pdiag_core::poly::parse_list;
use pdiag_core::{
    DenseMatrix, DiagonalInput, FieldElement, FieldSpec, MonicPoly, StructuredMatrix,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::CliError;

/// Builds companion-type matrices with a prescribed diagonal and
/// characteristic polynomial, and checks them.
///
/// Polynomials are given low-to-high without the leading 1:
/// `--poly "-1,0"` is t^2 - 1.
#[derive(Debug, Parser)]
#[command(name = "pdiag", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,
}

#[derive(Debug, Subcommand)]
pub enum CommandArgs {
    /// Construct A from the polynomial and diagonal and run every check.
    Construct(JobArgs),
    /// Check a given companion-type matrix against the polynomial.
    Verify(JobArgs),
    /// Characteristic polynomial of A by the structured and generic routes.
    Charpoly(JobArgs),
    /// Frobenius companion matrix of the polynomial.
    Companion(JobArgs),
    /// Solve for b by back-substitution through the minor-sum system.
    SolveBacksub(JobArgs),
    /// Count every b over GF(p) that yields the polynomial.
    Uniqueness(JobArgs),
    /// Evaluate the principal-minor-sum system on A.
    Minors(JobArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct JobArgs {
    /// `Q` or `GF:p`.
    #[arg(long, default_value = "Q")]
    pub field: String,

    /// Coefficients c0,c1,...,c_{n-1}, monic leader implicit.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,

    /// All n diagonal entries d1,...,dn (trace is checked).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "diag_head")]
    pub diag: Option<String>,

    /// The first n-1 diagonal entries; dn is derived.
    #[arg(long, allow_hyphen_values = true)]
    pub diag_head: Option<String>,

    /// Last-column entries b1,...,b_{n-1} of a matrix to check.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,

    /// JSON report from an earlier run; its field, polynomial and A are used.
    #[arg(long, conflicts_with_all = ["poly", "diag", "diag_head", "b", "degree"])]
    pub input: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,

    /// Candidate cap for `uniqueness`.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,

    /// Seed for random instances (used when --poly is absent).
    #[arg(long)]
    pub seed: Option<u64>,

    /// Degree of the random instance drawn with --seed.
    #[arg(long, requires = "seed")]
    pub degree: Option<usize>,

    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Report elapsed_ms as 0 so output is byte-reproducible.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Construct,
    Verify,
    Charpoly,
    Companion,
    SolveBacksub,
    Uniqueness,
    Minors,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Construct => "construct",
            Command::Verify => "verify",
            Command::Charpoly => "charpoly",
            Command::Companion => "companion",
            Command::SolveBacksub => "solve-backsub",
            Command::Uniqueness => "uniqueness",
            Command::Minors => "minors",
        }
    }
}

/// A fully resolved and validated job.
#[derive(Debug, Clone)]
pub struct JobConfig {
    pub command: Command,
    pub field: FieldSpec,
    pub poly: MonicPoly,
    pub diagonal: Option<DiagonalInput>,
    /// A matrix to inspect rather than construct (from `--b` or `--input`).
    pub matrix: Option<StructuredMatrix>,
    pub input_file: Option<PathBuf>,
    pub format: Format,
    pub seed: Option<u64>,
    pub degree: Option<usize>,
    pub budget: u64,
    pub out: Option<PathBuf>,
    pub timing: bool,
}

fn usage(flag: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("invalid value for {flag}: {msg}"))
}

fn list(field: FieldSpec, flag: &str, text: &str) -> Result<Vec<FieldElement>, CliError> {
    parse_list(field, text).map_err(|e| usage(flag, e))
}

/// Parses the command line. Clap's own errors are returned as-is so the
/// caller can print them with clap's formatting.
pub fn parse_args<I, T>(argv: I) -> Result<Result<JobConfig, CliError>, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    Ok(resolve(cli))
}

fn resolve(cli: Cli) -> Result<JobConfig, CliError> {
    let (command, args) = match cli.command {
        CommandArgs::Construct(a) => (Command::Construct, a),
        CommandArgs::Verify(a) => (Command::Verify, a),
        CommandArgs::Charpoly(a) => (Command::Charpoly, a),
        CommandArgs::Companion(a) => (Command::Companion, a),
        CommandArgs::SolveBacksub(a) => (Command::SolveBacksub, a),
        CommandArgs::Uniqueness(a) => (Command::Uniqueness, a),
        CommandArgs::Minors(a) => (Command::Minors, a),
    };
    if args.budget == 0 {
        return Err(usage("--budget", "must be positive"));
    }
    if let Some(path) = &args.input {
        return from_input_file(command, path.clone(), &args);
    }

    let field: FieldSpec = args.field.parse().map_err(|e| usage("--field", e))?;
    let mut rng = args.seed.map(ChaCha8Rng::seed_from_u64);

    let poly = match (&args.poly, args.degree, rng.as_mut()) {
        (Some(text), _, _) => MonicPoly::parse(field, text).map_err(|e| usage("--poly", e))?,
        (None, Some(n), Some(rng)) => {
            if n == 0 {
                return Err(usage("--degree", "must be at least 1"));
            }
            let coeffs = (0..n).map(|_| field.sample(rng, 9)).collect();
            MonicPoly::new(field, coeffs).expect("sampled in one field")
        }
        (None, _, _) => {
            return Err(CliError::Usage(
                "missing --poly (or --seed with --degree for a random instance)".into(),
            ))
        }
    };
    let n = poly.degree();

    let mut diagonal = match (&args.diag, &args.diag_head) {
        (Some(text), None) => Some(DiagonalInput::Full(list(field, "--diag", text)?)),
        (None, Some(text)) => Some(DiagonalInput::Head(list(field, "--diag-head", text)?)),
        _ => None,
    };
    match &diagonal {
        Some(DiagonalInput::Full(d)) if d.len() != n => {
            return Err(usage("--diag", format!("expected {n} entries for degree {n}, got {}", d.len())))
        }
        Some(DiagonalInput::Head(d)) if d.len() + 1 != n => {
            return Err(usage(
                "--diag-head",
                format!("expected {} entries for degree {n}, got {}", n - 1, d.len()),
            ))
        }
        _ => {}
    }

    let needs_diagonal = !matches!(command, Command::Companion);
    if diagonal.is_none() && needs_diagonal {
        match rng.as_mut() {
            Some(rng) if args.poly.is_none() => {
                let head = (0..n - 1).map(|_| field.sample(rng, 9)).collect();
                diagonal = Some(DiagonalInput::Head(head));
            }
            _ => return Err(CliError::Usage("missing --diag or --diag-head".into())),
        }
    }

    let matrix = match &args.b {
        None => None,
        Some(text) => {
            let b = list(field, "--b", text)?;
            if b.len() + 1 != n {
                return Err(usage("--b", format!("expected {} entries for degree {n}, got {}", n - 1, b.len())));
            }
            let diag = match diagonal.as_ref().expect("checked above") {
                DiagonalInput::Full(d) => d.clone(),
                DiagonalInput::Head(h) => pdiag_core::derive_last_diagonal(&poly, h)
                    .map_err(|e| usage("--diag-head", e))?
                    .entries()
                    .to_vec(),
            };
            Some(StructuredMatrix::new(field, diag, b).map_err(|e| usage("--b", e))?)
        }
    };
    if command == Command::Verify && matrix.is_none() {
        return Err(CliError::Usage("verify needs a matrix: --b with --diag, or --input".into()));
    }

    Ok(JobConfig {
        command,
        field,
        poly,
        diagonal,
        matrix,
        input_file: None,
        format: args.format,
        seed: args.seed,
        degree: args.degree,
        budget: args.budget,
        out: args.out.clone(),
        timing: !args.no_timing,
    })
}

fn from_input_file(command: Command, path: PathBuf, args: &JobArgs) -> Result<JobConfig, CliError> {
    let text = fs::read_to_string(&path).map_err(|e| usage("--input", format!("{}: {e}", path.display())))?;
    let json: Value = serde_json::from_str(&text).map_err(|e| usage("--input", e))?;
    let bad = |what: &str| usage("--input", format!("missing or malformed `{what}`"));

    let field: FieldSpec = json
        .get("field")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("field"))?
        .parse()
        .map_err(|e| usage("--input", e))?;
    let strings = |v: &Value, what: &str| -> Result<Vec<FieldElement>, CliError> {
        v.as_array()
            .ok_or_else(|| bad(what))?
            .iter()
            .map(|x| {
                let s = x.as_str().ok_or_else(|| bad(what))?;
                field.parse_element(s).map_err(|e| usage("--input", format!("{what}: {e}")))
            })
            .collect()
    };
    let coeffs = strings(json.pointer("/input/poly").ok_or_else(|| bad("input.poly"))?, "input.poly")?;
    let poly = MonicPoly::new(field, coeffs).map_err(|e| usage("--input", e))?;
    let rows = json
        .get("A")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("A"))?
        .iter()
        .map(|r| strings(r, "A"))
        .collect::<Result<Vec<_>, _>>()?;
    let dense = DenseMatrix::from_rows(field, rows).map_err(|e| usage("--input", e))?;
    let matrix = StructuredMatrix::from_dense(&dense).map_err(|e| usage("--input", e))?;
    if matrix.n() != poly.degree() {
        return Err(usage(
            "--input",
            format!("A has order {} but the polynomial has degree {}", matrix.n(), poly.degree()),
        ));
    }
    let diagonal = Some(DiagonalInput::Full(matrix.diag().to_vec()));
    Ok(JobConfig {
        command,
        field,
        poly,
        diagonal,
        matrix: Some(matrix),
        input_file: Some(path),
        format: args.format,
        seed: args.seed,
        degree: None,
        budget: args.budget,
        out: args.out.clone(),
        timing: !args.no_timing,
    })
}
