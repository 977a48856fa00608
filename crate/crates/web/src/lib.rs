//! Browser bindings for the demo page in `www/`.
//!
//! Every export takes plain strings and returns a JSON string, or throws the
//! error message. The `*_json` functions hold the logic so they can be tested
//! natively.

use pdiag_core::{
    construct_b, construct_full, occurrence_pattern, resolve_diagonal, uniqueness_exhaustive,
    DenseMatrix, DiagonalInput, FieldElement, FieldSpec, MonicPoly,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest degree the page will construct; keeps T and C readable.
pub const MAX_DEGREE: usize = 12;
pub const MAX_BUDGET: u64 = 200_000;

fn strs(items: &[FieldElement]) -> Value {
    items.iter().map(|x| Value::String(x.to_string())).collect()
}

fn matrix(m: &DenseMatrix) -> Value {
    m.rows().map(strs).collect()
}

fn parse_inputs(field: &str, poly: &str, head: &str) -> Result<(MonicPoly, DiagonalInput), String> {
    let field: FieldSpec = field.trim().parse().map_err(|e| format!("field: {e}"))?;
    let f = MonicPoly::parse(field, poly.trim()).map_err(|e| format!("poly: {e}"))?;
    if f.degree() > MAX_DEGREE {
        return Err(format!("poly: degree {} is above the demo limit {MAX_DEGREE}", f.degree()));
    }
    let head = pdiag_core::poly::parse_list(field, head.trim()).map_err(|e| format!("diagonal: {e}"))?;
    Ok((f, DiagonalInput::Head(head)))
}

/// Constructs A, T and C for the given coefficients and leading diagonal.
pub fn construct_json(field: &str, poly: &str, head: &str) -> Result<String, String> {
    let (f, input) = parse_inputs(field, poly, head)?;
    let c = construct_full(&f, &input).map_err(|e| e.to_string())?;
    let out = json!({
        "n": c.a.n(),
        "poly": f.to_string(),
        "d": strs(c.diagonal.entries()),
        "d_n_derived": c.derived_last.as_ref().map(|x| x.to_string()),
        "b": strs(&c.b),
        "A": matrix(&c.a.to_dense()),
        "T": matrix(&c.t),
        "C": matrix(&c.companion),
        "checks": {
            "charpoly_roundtrip": c.checks.charpoly_roundtrip,
            "similarity_ATTC": c.checks.similarity.holds,
            "minor_system": c.checks.minor_system.as_ref().map(|m| m.all_satisfied()),
        },
    });
    Ok(out.to_string())
}

/// Brute-force search over every last column in GF(p)^(n-1).
pub fn uniqueness_json(field: &str, poly: &str, head: &str, budget: u64) -> Result<String, String> {
    let (f, input) = parse_inputs(field, poly, head)?;
    let d = resolve_diagonal(&f, &input).map_err(|e| e.to_string())?;
    let report = uniqueness_exhaustive(&f, &d, budget.min(MAX_BUDGET)).map_err(|e| e.to_string())?;
    let closed = construct_b(&f, &d).map_err(|e| e.to_string())?;
    let out = json!({
        "n": d.n(),
        "d": strs(d.entries()),
        "candidates": report.candidates,
        "solutions": report.solutions,
        "witness": report.witness.as_deref().map_or(Value::Null, strs),
        "b_closed_form": strs(&closed),
    });
    Ok(out.to_string())
}

/// Which diagonal subsets move each b_k, probed over GF(101).
pub fn occurrence_json(n: usize, seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pattern = occurrence_pattern(n, &mut rng).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = (1..n)
        .map(|k| {
            json!({
                "k": k,
                "probed": pattern.cells(k).count(),
                "sensitive": pattern.sensitive_subsets(k),
            })
        })
        .collect();
    Ok(json!({ "n": n, "rows": rows, "matches_claim": pattern.matches_claim() }).to_string())
}

#[wasm_bindgen]
pub fn construct(field: &str, poly: &str, head: &str) -> Result<String, JsValue> {
    construct_json(field, poly, head).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn uniqueness(field: &str, poly: &str, head: &str, budget: u32) -> Result<String, JsValue> {
    uniqueness_json(field, poly, head, budget.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn occurrence(n: u32, seed: u32) -> Result<String, JsValue> {
    occurrence_json(n as usize, seed.into()).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn construct_worked_example() {
        let v = parse(&construct_json("Q", "-1,0", "2").unwrap());
        assert_eq!(v["A"], json!([["2", "-3"], ["1", "-2"]]));
        assert_eq!(v["d_n_derived"], "-2");
        assert_eq!(v["checks"]["similarity_ATTC"], true);
    }

    #[test]
    fn construct_reports_bad_input() {
        assert!(construct_json("GF:9", "1", "").unwrap_err().starts_with("field:"));
        assert!(construct_json("Q", "1,x", "0").unwrap_err().starts_with("poly:"));
        assert!(construct_json("Q", "1,2", "").unwrap_err().contains("diagonal"));
        let big = vec!["1"; MAX_DEGREE + 1].join(",");
        assert!(construct_json("Q", &big, "").unwrap_err().contains("demo limit"));
    }

    #[test]
    fn uniqueness_finds_the_closed_form() {
        let v = parse(&uniqueness_json("GF:3", "1,2,0,1", "1,2,0", 1000).unwrap());
        assert_eq!(v["candidates"], 27);
        assert_eq!(v["solutions"], 1);
        assert_eq!(v["witness"], v["b_closed_form"]);
        assert!(uniqueness_json("Q", "1,2", "0", 10).is_err());
        assert!(uniqueness_json("GF:7", "1,1,1,1,1", "1,1,1,1", 100).unwrap_err().contains("budget"));
    }

    #[test]
    fn occurrence_rows_are_tails() {
        let v = parse(&occurrence_json(4, 1).unwrap());
        assert_eq!(v["matches_claim"], true);
        assert_eq!(v["rows"][0]["sensitive"], json!([[1, 2, 3, 4]]));
        assert_eq!(v["rows"][2]["sensitive"], json!([[3, 4]]));
        assert!(occurrence_json(11, 0).is_err());
    }
}
