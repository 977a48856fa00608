//! Complete homogeneous symmetric sums `h_r(d_1, ..., d_k)`: the sum of all
//! monomials of degree `r` in the first `k` entries of `d`.
//!
//! Values come from the recurrence
//! `h_r(d_1..d_k) = h_r(d_1..d_{k-1}) + d_k * h_{r-1}(d_1..d_k)`
//! with `h_0 = 1` and `h_r() = 0` for `r >= 1`.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// `h_r(d_1..d_k)` for all `k <= k_max`, `r <= r_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HTable {
    r_max: usize,
    rows: Vec<Vec<FieldElement>>,
}

impl HTable {
    /// Builds the table with `O(k_max * r_max)` field operations.
    pub fn new(field: FieldSpec, d: &[FieldElement], k_max: usize, r_max: usize) -> Result<Self> {
        if k_max > d.len() {
            return Err(Error::InvalidArgument(format!(
                "k = {k_max} exceeds the {} available variables",
                d.len()
            )));
        }
        field.check_all(d)?;
        let mut rows = Vec::with_capacity(k_max + 1);
        let mut first = vec![field.zero(); r_max + 1];
        first[0] = field.one();
        rows.push(first);
        for (k, dk) in d.iter().enumerate().take(k_max) {
            let prev = &rows[k];
            let mut row = Vec::with_capacity(r_max + 1);
            row.push(field.one());
            for r in 1..=r_max {
                let v = &prev[r] + dk * &row[r - 1];
                row.push(v);
            }
            rows.push(row);
        }
        Ok(HTable { r_max, rows })
    }

    pub fn k_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn r_max(&self) -> usize {
        self.r_max
    }

    /// `h_r(d_1..d_k)`. Panics outside the table bounds.
    pub fn get(&self, k: usize, r: usize) -> &FieldElement {
        &self.rows[k][r]
    }
}

/// A single value `h_r(d_1..d_k)`, computed by the same recurrence.
pub fn h_eval(field: FieldSpec, d: &[FieldElement], k: usize, r: usize) -> Result<FieldElement> {
    Ok(HTable::new(field, d, k, r)?.get(k, r).clone())
}
