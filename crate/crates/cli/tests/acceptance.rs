//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any fails.

use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use pdiag_core::{
    charpoly_generic, charpoly_structured, check_minor_system, companion, construct_b,
    construct_full, construct_full_with, derive_last_diagonal, occurrence_pattern,
    principal_minor_sum, solve_b_backsub, uniqueness_exhaustive, ConstructOptions, DenseMatrix,
    DiagonalInput, FieldElement, FieldSpec, MonicPoly,
};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PRIMES: [u64; 5] = [2, 3, 5, 7, 101];
/// Numerators and denominators of random rationals lie in [-9, 9].
const Q_BOUND: i64 = 9;

const C1_INSTANCES_PER_FIELD: usize = 200;
const C1_MAX_N: usize = 12;
const C1_TIME_LIMIT: Duration = Duration::from_secs(5);
const C3_INSTANCES_PER_FIELD: usize = 50;
const C3_MAX_N: usize = 8;
const C3_TIME_LIMIT: Duration = Duration::from_secs(30);
const C4_RANDOM_INSTANCES: usize = 20;
const C5_INSTANCES_PER_FIELD: usize = 50;
const C6_POINTS_GF101: usize = 25;
const C6_POINTS_Q: usize = 10;
const C7_MATRICES_PER_FIELD: usize = 30;
const C7_MAX_N: usize = 7;

fn fields() -> Vec<FieldSpec> {
    std::iter::once(FieldSpec::Rationals)
        .chain(PRIMES.iter().map(|&p| FieldSpec::prime(p).unwrap()))
        .collect()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn elems(field: FieldSpec, rng: &mut ChaCha8Rng, len: usize) -> Vec<FieldElement> {
    (0..len).map(|_| field.sample(rng, Q_BOUND)).collect()
}

fn random_poly(field: FieldSpec, rng: &mut ChaCha8Rng, n: usize) -> MonicPoly {
    MonicPoly::new(field, elems(field, rng, n)).unwrap()
}

type Verdict = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Shared instances for criteria 1 and 2.
fn c1_instances() -> Vec<(MonicPoly, Vec<FieldElement>)> {
    let mut out = Vec::new();
    for (fi, field) in fields().into_iter().enumerate() {
        let mut r = rng(100 + fi as u64);
        for _ in 0..C1_INSTANCES_PER_FIELD {
            let n = r.random_range(1..=C1_MAX_N);
            let f = random_poly(field, &mut r, n);
            let head = elems(field, &mut r, n - 1);
            out.push((f, head));
        }
    }
    out
}

fn criterion_1_and_2() -> (Verdict, Verdict) {
    let instances = c1_instances();
    let opts = ConstructOptions { minor_system_max_n: 0 };
    let start = Instant::now();
    let mut roundtrip = Ok(());
    let mut similarity = Ok(());
    for (f, head) in &instances {
        let c = construct_full_with(f, &DiagonalInput::Head(head.clone()), &opts).unwrap();
        if roundtrip.is_ok() && charpoly_structured(&c.a) != *f {
            roundtrip = Err(format!("charpoly mismatch for f = {f} over {}", f.field()));
        }
        if similarity.is_ok() && !c.checks.similarity.holds {
            similarity = Err(format!(
                "AT != TC at {:?} for f = {f} over {}",
                c.checks.similarity.first_mismatch,
                f.field()
            ));
        }
    }
    let elapsed = start.elapsed();
    let total = instances.len();
    let c1 = roundtrip.and_then(|_| {
        check(elapsed < C1_TIME_LIMIT, || {
            format!("took {elapsed:.2?}, limit {C1_TIME_LIMIT:?}")
        })
    });
    (
        c1.map(|_| format!("{total} instances, n <= {C1_MAX_N}, {elapsed:.2?}")),
        similarity.map(|_| format!("{total} instances")),
    )
}

fn criterion_3() -> Verdict {
    let start = Instant::now();
    let mut count = 0;
    for (fi, field) in fields().into_iter().enumerate() {
        let mut r = rng(300 + fi as u64);
        for _ in 0..C3_INSTANCES_PER_FIELD {
            let n = r.random_range(1..=C3_MAX_N);
            let f = random_poly(field, &mut r, n);
            let d = derive_last_diagonal(&f, &elems(field, &mut r, n - 1)).unwrap();
            let back = solve_b_backsub(&f, &d).unwrap();
            let closed = construct_b(&f, &d).unwrap();
            check(back == closed, || format!("mismatch over {field} for f = {f}"))?;
            count += 1;
        }
    }
    let elapsed = start.elapsed();
    check(elapsed < C3_TIME_LIMIT, || format!("took {elapsed:.2?}, limit {C3_TIME_LIMIT:?}"))?;
    Ok(format!("{count} instances, n <= {C3_MAX_N}, {elapsed:.2?}"))
}

fn criterion_4() -> Verdict {
    let gf2 = FieldSpec::prime(2).unwrap();
    let mut exhaustive = 0;
    for n in 1..=4usize {
        for cbits in 0..1u32 << n {
            let coeffs = (0..n).map(|i| gf2.from_u64(u64::from(cbits >> i & 1))).collect();
            let f = MonicPoly::new(gf2, coeffs).unwrap();
            for hbits in 0..1u32 << (n - 1) {
                let head: Vec<_> = (0..n - 1).map(|i| gf2.from_u64(u64::from(hbits >> i & 1))).collect();
                let d = derive_last_diagonal(&f, &head).unwrap();
                let r = uniqueness_exhaustive(&f, &d, 1_000_000).unwrap();
                check(r.solutions == 1, || format!("GF(2) f = {f}, d = {:?}: {} solutions", d.entries(), r.solutions))?;
                exhaustive += 1;
            }
        }
    }
    let mut sampled = 0;
    for (p, max_n, seed) in [(3u64, 4usize, 401u64), (5, 3, 402)] {
        let field = FieldSpec::prime(p).unwrap();
        let mut r = rng(seed);
        for _ in 0..C4_RANDOM_INSTANCES {
            let n = r.random_range(1..=max_n);
            let f = random_poly(field, &mut r, n);
            let d = derive_last_diagonal(&f, &elems(field, &mut r, n - 1)).unwrap();
            let u = uniqueness_exhaustive(&f, &d, 1_000_000).unwrap();
            check(u.solutions == 1, || format!("GF({p}) f = {f}: {} solutions", u.solutions))?;
            sampled += 1;
        }
    }
    Ok(format!("{exhaustive} exhaustive GF(2) cases, {sampled} sampled GF(3)/GF(5) cases"))
}

fn criterion_5() -> Verdict {
    let mut count = 0;
    for (fi, field) in fields().into_iter().enumerate() {
        let mut r = rng(500 + fi as u64);
        for _ in 0..C5_INSTANCES_PER_FIELD {
            let n = r.random_range(1..=C1_MAX_N);
            let f = random_poly(field, &mut r, n);
            let c = construct_full(&f, &DiagonalInput::Head(vec![field.zero(); n - 1])).unwrap();
            check(c.a.to_dense() == companion(&f), || format!("A != C for f = {f} over {field}"))?;
            check(c.t == DenseMatrix::identity(field, n), || format!("T != I for f = {f} over {field}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} instances"))
}

/// The n = 4 expansions of b_1, b_2, b_3, typed out monomial by monomial.
fn golden_b(c: &[FieldElement], d: &[FieldElement]) -> Vec<FieldElement> {
    let (c0, c1, c2, c3) = (&c[0], &c[1], &c[2], &c[3]);
    let (d1, d2, d3) = (&d[0], &d[1], &d[2]);
    let b1 = -c0.clone() - c1 * d1 - c2 * d1.pow(2) - c3 * d1.pow(3) - d1.pow(4);
    let b2 = -c1.clone()
        - c2 * (d1 + d2)
        - c3 * (d1.pow(2) + d1 * d2 + d2.pow(2))
        - (d1.pow(3) + d1.pow(2) * d2 + d1 * d2.pow(2) + d2.pow(3));
    let b3 = -c2.clone()
        - c3 * (d1 + d2 + d3)
        - (d1.pow(2) + d2.pow(2) + d3.pow(2) + d1 * d2 + d1 * d3 + d2 * d3);
    vec![b1, b2, b3]
}

fn criterion_6() -> Verdict {
    let gf101 = FieldSpec::prime(101).unwrap();
    let mut r = rng(600);
    for (field, points) in [(gf101, C6_POINTS_GF101), (FieldSpec::Rationals, C6_POINTS_Q)] {
        for _ in 0..points {
            let f = random_poly(field, &mut r, 4);
            let d = derive_last_diagonal(&f, &elems(field, &mut r, 3)).unwrap();
            let b = construct_b(&f, &d).unwrap();
            check(b == golden_b(f.coeffs(), d.entries()), || format!("mismatch over {field} at f = {f}"))?;
        }
    }
    Ok(format!("{C6_POINTS_GF101} points over GF(101), {C6_POINTS_Q} over Q"))
}

fn criterion_7() -> Verdict {
    let mut matrices = 0;
    let mut systems = 0;
    for (fi, field) in fields().into_iter().enumerate() {
        let mut r = rng(700 + fi as u64);
        for _ in 0..C7_MATRICES_PER_FIELD {
            let n = r.random_range(1..=C7_MAX_N);
            let rows = (0..n).map(|_| elems(field, &mut r, n)).collect();
            let m = DenseMatrix::from_rows(field, rows).unwrap();
            let p = charpoly_generic(&m).unwrap();
            for size in 1..=n {
                let coeff = p.coeff(n - size);
                let expected = if size % 2 == 0 { coeff } else { -coeff };
                check(principal_minor_sum(&m, size).unwrap() == expected, || {
                    format!("identity fails over {field}, n = {n}, m = {size}")
                })?;
            }
            matrices += 1;

            let f = random_poly(field, &mut r, n);
            let c = construct_full(&f, &DiagonalInput::Head(elems(field, &mut r, n - 1))).unwrap();
            let report = check_minor_system(&c.a, &f).unwrap();
            check(report.all_satisfied(), || format!("minor system unsatisfied over {field} for f = {f}"))?;
            systems += 1;
        }
    }
    Ok(format!("{matrices} dense matrices, {systems} constructed systems"))
}

fn criterion_8() -> Verdict {
    let mut r = rng(800);
    for n in 2..=7 {
        let pat = occurrence_pattern(n, &mut r).unwrap();
        check(pat.matches_claim(), || {
            let detail: Vec<_> = (1..n).map(|k| (k, pat.sensitive_subsets(k))).collect();
            format!("n = {n}: sensitive subsets {detail:?}")
        })?;
    }
    Ok("n = 2..7, GF(101), 3 probes per cell".into())
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn pdiag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdiag"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(golden_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn expect_run(args: &[&str], code: i32, stdout_file: Option<&str>, stderr_file: Option<&str>) -> Result<(), String> {
    let out = pdiag(args);
    check(out.status.code() == Some(code), || {
        format!("{args:?}: exit {:?}, expected {code}", out.status.code())
    })?;
    if let Some(f) = stdout_file {
        check(String::from_utf8_lossy(&out.stdout) == golden(f), || format!("{args:?}: stdout differs from {f}"))?;
    }
    if let Some(f) = stderr_file {
        check(String::from_utf8_lossy(&out.stderr) == golden(f), || format!("{args:?}: stderr differs from {f}"))?;
    }
    Ok(())
}

fn criterion_9() -> Verdict {
    expect_run(
        &["construct", "--field", "Q", "--poly", " -1,0", "--diag-head", "2", "--no-timing"],
        0,
        Some("construct_q.json"),
        None,
    )?;
    expect_run(
        &["verify", "--field", "Q", "--poly", " -1,0", "--diag", "2,-2", "--b", "-2", "--no-timing"],
        1,
        Some("verify_wrong_b1.json"),
        Some("verify_wrong_b1.stderr"),
    )?;
    expect_run(
        &["construct", "--field", "GF:7", "--poly", "1,2,0", "--diag", "0,0,5"],
        2,
        Some("empty.txt"),
        Some("trace_mismatch.stderr"),
    )?;
    expect_run(&["construct", "--polynomial", "1"], 2, Some("empty.txt"), Some("unknown_flag.stderr"))?;
    expect_run(
        &["uniqueness", "--field", "GF:7", "--poly", "1,1,1,1,1", "--diag-head", "1,1,1,1", "--budget", "100"],
        3,
        Some("empty.txt"),
        Some("budget_exceeded.stderr"),
    )?;
    let seeded = ["construct", "--field", "GF:101", "--seed", "7", "--degree", "6", "--no-timing"];
    let first = pdiag(&seeded);
    let second = pdiag(&seeded);
    check(first.status.success(), || "seeded construct failed".into())?;
    check(first.stdout == second.stdout, || "seeded JSON differs between runs".into())?;
    Ok("construct golden, exit codes 1/2/3, seeded JSON byte-identical".into())
}

fn guarded<T>(f: impl FnOnce() -> Result<T, String>) -> Result<T, String> {
    panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    })
}

fn main() {
    let (c1, c2) = guarded(|| Ok(criterion_1_and_2())).unwrap_or_else(|e| (Err(e.clone()), Err(e)));
    let results: Vec<(&str, Verdict)> = vec![
        ("1 round-trip: charpoly(A) = f", c1),
        ("2 similarity: AT = TC", c2),
        ("3 back-substitution = closed form", guarded(criterion_3)),
        ("4 uniqueness by exhaustive search", guarded(criterion_4)),
        ("5 companion degeneration", guarded(criterion_5)),
        ("6 n = 4 displayed expansions", guarded(criterion_6)),
        ("7 minor-coefficient identity and minor system", guarded(criterion_7)),
        ("8 occurrence pattern", guarded(criterion_8)),
        ("9 CLI contract", guarded(criterion_9)),
    ];
    let mut failed = 0;
    for (name, verdict) in &results {
        match verdict {
            Ok(detail) => println!("[PASS] {name} ({detail})"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
