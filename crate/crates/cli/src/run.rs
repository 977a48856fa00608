use std::fs;
use std::time::Instant;

use pdiag_core::{
    charpoly_generic, charpoly_structured, check_minor_system, companion, construct_b,
    construct_full, resolve_diagonal, solve_b_backsub, uniqueness_exhaustive, verify_matrix,
    Checks, ConstructOptions, DenseMatrix, DiagonalInput, FieldElement, MonicPoly,
    StructuredMatrix,
};
use serde_json::{json, Map, Value};

use crate::args::{Command, Format, JobConfig};
use crate::render::render_text;
use crate::CliError;

/// What a successful run produced. `passed` is false when a mathematical
/// check failed (exit code 1).
#[derive(Debug, Clone)]
pub struct Outcome {
    pub passed: bool,
    pub report: Value,
    pub rendered: String,
}

fn strs(items: &[FieldElement]) -> Value {
    items.iter().map(|x| Value::String(x.to_string())).collect()
}

fn matrix(m: &DenseMatrix) -> Value {
    m.rows().map(strs).collect()
}

fn echo(job: &JobConfig) -> Value {
    let mut m = Map::new();
    m.insert("command".into(), json!(job.command.name()));
    m.insert("field".into(), json!(job.field.to_string()));
    m.insert("poly".into(), strs(job.poly.coeffs()));
    if let Some(path) = &job.input_file {
        m.insert("input_file".into(), json!(path.display().to_string()));
    } else {
        match &job.diagonal {
            Some(DiagonalInput::Full(d)) => {
                m.insert("diag".into(), strs(d));
            }
            Some(DiagonalInput::Head(h)) => {
                m.insert("diag_head".into(), strs(h));
            }
            None => {}
        }
        if let Some(a) = &job.matrix {
            m.insert("b".into(), strs(a.last_col()));
        }
    }
    if let Some(seed) = job.seed {
        m.insert("seed".into(), json!(seed));
    }
    if let Some(degree) = job.degree {
        m.insert("degree".into(), json!(degree));
    }
    if job.command == Command::Uniqueness {
        m.insert("budget".into(), json!(job.budget));
    }
    Value::Object(m)
}

fn checks_json(c: &Checks) -> Value {
    json!({
        "charpoly_roundtrip": c.charpoly_roundtrip,
        "similarity_ATTC": c.similarity.holds,
        "minor_system": c.minor_system.as_ref().map(|m| m.all_satisfied()),
    })
}

fn failed_checks(c: &Checks) -> Vec<&'static str> {
    let mut out = Vec::new();
    if !c.charpoly_roundtrip {
        out.push("charpoly_roundtrip");
    }
    if !c.similarity.holds {
        out.push("similarity_ATTC");
    }
    if c.minor_system.as_ref().is_some_and(|m| !m.all_satisfied()) {
        out.push("minor_system");
    }
    out
}

fn matrix_keys(r: &mut Map<String, Value>, job: &JobConfig, a: &StructuredMatrix) {
    r.insert("n".into(), json!(a.n()));
    r.insert("field".into(), json!(job.field.to_string()));
    r.insert("d".into(), strs(a.diag()));
    r.insert("b".into(), strs(a.last_col()));
    r.insert("A".into(), matrix(&a.to_dense()));
}

/// The matrix under inspection: the given one, or the constructed one.
fn subject(job: &JobConfig) -> Result<StructuredMatrix, CliError> {
    if let Some(a) = &job.matrix {
        return Ok(a.clone());
    }
    let diagonal = job.diagonal.as_ref().expect("resolved by parse_args");
    Ok(construct_full(&job.poly, diagonal)?.a)
}

fn diagonal(job: &JobConfig) -> Result<pdiag_core::DiagonalSpec, CliError> {
    let input = job.diagonal.as_ref().expect("resolved by parse_args");
    Ok(resolve_diagonal(&job.poly, input)?)
}

fn poly_json(p: &MonicPoly) -> Value {
    json!({ "coeffs": strs(p.coeffs()), "pretty": p.to_string() })
}

pub fn run(job: &JobConfig) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let mut r = Map::new();
    r.insert("input".into(), echo(job));
    let passed = match job.command {
        Command::Construct => {
            let c = construct_full(&job.poly, job.diagonal.as_ref().expect("resolved by parse_args"))?;
            r.insert("n".into(), json!(c.a.n()));
            r.insert("field".into(), json!(job.field.to_string()));
            r.insert("poly".into(), json!(job.poly.to_string()));
            r.insert("d".into(), strs(c.diagonal.entries()));
            if let Some(dn) = &c.derived_last {
                r.insert("d_n_derived".into(), json!(dn.to_string()));
            }
            r.insert("b".into(), strs(&c.b));
            r.insert("A".into(), matrix(&c.a.to_dense()));
            r.insert("T".into(), matrix(&c.t));
            r.insert("C".into(), matrix(&c.companion));
            r.insert("checks".into(), checks_json(&c.checks));
            c.checks.all_passed()
        }
        Command::Verify => {
            let a = job.matrix.as_ref().expect("resolved by parse_args");
            let checks = verify_matrix(a, &job.poly, &ConstructOptions::default())?;
            matrix_keys(&mut r, job, a);
            r.insert("poly".into(), json!(job.poly.to_string()));
            r.insert("checks".into(), checks_json(&checks));
            r.insert("failed".into(), json!(failed_checks(&checks)));
            r.insert(
                "similarity_first_mismatch".into(),
                json!(checks.similarity.first_mismatch.map(|(i, j)| [i, j])),
            );
            r.insert("charpoly_of_A".into(), json!(charpoly_structured(a).to_string()));
            checks.all_passed()
        }
        Command::Charpoly => {
            let a = subject(job)?;
            matrix_keys(&mut r, job, &a);
            let structured = charpoly_structured(&a);
            let generic = charpoly_generic(&a.to_dense())?;
            let agree = structured == generic;
            r.insert(
                "charpoly".into(),
                json!({
                    "structured": poly_json(&structured),
                    "generic": poly_json(&generic),
                    "agree": agree,
                    "matches_poly": structured == job.poly,
                }),
            );
            agree
        }
        Command::Companion => {
            let c = companion(&job.poly);
            let back = charpoly_generic(&c)?;
            r.insert("n".into(), json!(c.n()));
            r.insert("field".into(), json!(job.field.to_string()));
            r.insert("poly".into(), json!(job.poly.to_string()));
            r.insert("C".into(), matrix(&c));
            r.insert("charpoly_generic".into(), poly_json(&back));
            let roundtrip = back == job.poly;
            r.insert("checks".into(), json!({ "charpoly_roundtrip": roundtrip }));
            roundtrip
        }
        Command::SolveBacksub => {
            let d = diagonal(job)?;
            let backsub = solve_b_backsub(&job.poly, &d)?;
            let closed = construct_b(&job.poly, &d)?;
            let a = pdiag_core::assemble(&d, &backsub)?;
            matrix_keys(&mut r, job, &a);
            r.insert("b_closed_form".into(), strs(&closed));
            let agree = backsub == closed;
            r.insert("agree".into(), json!(agree));
            agree
        }
        Command::Uniqueness => {
            let d = diagonal(job)?;
            let report = uniqueness_exhaustive(&job.poly, &d, job.budget)?;
            r.insert("n".into(), json!(d.n()));
            r.insert("field".into(), json!(job.field.to_string()));
            r.insert("d".into(), strs(d.entries()));
            r.insert("candidates".into(), json!(report.candidates));
            r.insert("solutions".into(), json!(report.solutions));
            r.insert("witness".into(), report.witness.as_deref().map_or(Value::Null, strs));
            r.insert("b_closed_form".into(), strs(&construct_b(&job.poly, &d)?));
            report.solutions == 1
        }
        Command::Minors => {
            let a = subject(job)?;
            let report = check_minor_system(&a, &job.poly)?;
            matrix_keys(&mut r, job, &a);
            let eqs: Vec<Value> = report
                .equations
                .iter()
                .map(|e| {
                    json!({
                        "k": e.k,
                        "minor_size": e.minor_size,
                        "lhs": e.lhs.to_string(),
                        "rhs": e.rhs.to_string(),
                        "satisfied": e.satisfied,
                    })
                })
                .collect();
            r.insert("minor_system".into(), Value::Array(eqs));
            r.insert("all_satisfied".into(), json!(report.all_satisfied()));
            report.all_satisfied()
        }
    };
    let elapsed = if job.timing {
        start.elapsed().as_secs_f64() * 1e3
    } else {
        0.0
    };
    r.insert("elapsed_ms".into(), json!((elapsed * 1e3).round() / 1e3));
    let report = Value::Object(r);
    let rendered = match job.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("values serialize"),
        Format::Text => render_text(&report),
    };
    Ok(Outcome {
        passed,
        report,
        rendered,
    })
}

/// Writes the rendered report to `--out` or standard output.
pub fn emit(job: &JobConfig, outcome: &Outcome) -> Result<(), CliError> {
    match &job.out {
        Some(path) => fs::write(path, format!("{}\n", outcome.rendered))
            .map_err(|e| CliError::Usage(format!("cannot write --out {}: {e}", path.display()))),
        None => {
            println!("{}", outcome.rendered);
            Ok(())
        }
    }
}
