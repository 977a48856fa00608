//! The construction itself: given a monic `f` and a diagonal whose sum is
//! `-c_{n-1}`, produce the unique last column `b_1..b_{n-1}` making the
//! companion-type matrix `A` have characteristic polynomial `f`.
//!
//! The closed form is
//! `b_k = -sum_{i=k-1}^{n} c_i h_{i-k+1}(d_1..d_k)` (with `c_n = 1`), and
//! `A T = T C` holds for the unit upper triangular
//! `T = [h_{j-i}(d_1..d_i)]` and the Frobenius companion matrix `C` of `f`.

use crate::error::{Error, Result};
use crate::field::{self, FieldElement, FieldSpec};
use crate::matrix::{DenseMatrix, StructuredMatrix};
use crate::oracles::{charpoly_structured, check_minor_system, MinorSystemReport};
use crate::poly::MonicPoly;
use crate::symfunc::HTable;

/// A prescribed diagonal `d_1..d_n`. The trace condition is a property of
/// the pair with a polynomial; see [`validate_diagonal`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalSpec {
    field: FieldSpec,
    entries: Vec<FieldElement>,
}

impl DiagonalSpec {
    pub fn new(field: FieldSpec, entries: Vec<FieldElement>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidArgument("diagonal must have at least one entry".into()));
        }
        field.check_all(&entries)?;
        Ok(DiagonalSpec { field, entries })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }
}

/// How the caller prescribes the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagonalInput {
    /// All `n` entries; the trace condition is checked.
    Full(Vec<FieldElement>),
    /// The first `n - 1` entries; `d_n` is derived from the trace condition.
    Head(Vec<FieldElement>),
}

/// `d_n = -c_{n-1} - d_1 - ... - d_{n-1}`.
pub fn derive_last_diagonal(f: &MonicPoly, head: &[FieldElement]) -> Result<DiagonalSpec> {
    let n = f.degree();
    if head.len() + 1 != n {
        return Err(Error::DimensionMismatch {
            context: "diagonal head (d_1..d_(n-1))",
            expected: n - 1,
            found: head.len(),
        });
    }
    let field = f.field();
    field.check_all(head)?;
    let last = -(&f.coeffs()[n - 1] + field::sum(field, head));
    let mut entries = head.to_vec();
    entries.push(last);
    DiagonalSpec::new(field, entries)
}

/// Checks `d_1 + ... + d_n = -c_{n-1}` exactly.
pub fn validate_diagonal(f: &MonicPoly, d: &DiagonalSpec) -> Result<()> {
    let n = f.degree();
    if d.n() != n {
        return Err(Error::DimensionMismatch {
            context: "diagonal length vs polynomial degree",
            expected: n,
            found: d.n(),
        });
    }
    if d.field() != f.field() {
        return Err(Error::FieldMismatch {
            left: f.field(),
            right: d.field(),
        });
    }
    let residual = field::sum(d.field(), d.entries()) + &f.coeffs()[n - 1];
    if residual.is_zero() {
        Ok(())
    } else {
        Err(Error::TraceMismatch { residual })
    }
}

/// Resolves either input mode into a validated diagonal.
pub fn resolve_diagonal(f: &MonicPoly, input: &DiagonalInput) -> Result<DiagonalSpec> {
    match input {
        DiagonalInput::Head(head) => derive_last_diagonal(f, head),
        DiagonalInput::Full(entries) => {
            let d = DiagonalSpec::new(f.field(), entries.clone())?;
            validate_diagonal(f, &d)?;
            Ok(d)
        }
    }
}

/// `h_r(d_1..d_k)` for `k, r <= n`: everything the closed form and `T` need.
fn shared_table(d: &DiagonalSpec) -> HTable {
    HTable::new(d.field(), d.entries(), d.n(), d.n()).expect("table bounds follow the diagonal")
}

fn b_from_table(f: &MonicPoly, h: &HTable) -> Vec<FieldElement> {
    let n = f.degree();
    let field = f.field();
    (1..n)
        .map(|k| {
            let s = (k - 1..=n).fold(field.zero(), |acc, i| acc + f.coeff(i) * h.get(k, i + 1 - k));
            -s
        })
        .collect()
}

/// `[b_1, ..., b_{n-1}]` from the closed form; empty for `n = 1`.
pub fn construct_b(f: &MonicPoly, d: &DiagonalSpec) -> Result<Vec<FieldElement>> {
    validate_diagonal(f, d)?;
    Ok(b_from_table(f, &shared_table(d)))
}

pub fn assemble(d: &DiagonalSpec, b: &[FieldElement]) -> Result<StructuredMatrix> {
    StructuredMatrix::new(d.field(), d.entries().to_vec(), b.to_vec())
}

/// Frobenius companion matrix: ones on the subdiagonal, last column
/// `(-c_0, ..., -c_{n-1})`.
pub fn companion(f: &MonicPoly) -> DenseMatrix {
    let n = f.degree();
    let field = f.field();
    let mut c = DenseMatrix::zeros(field, n);
    for i in 0..n {
        if i + 1 < n {
            c.set(i + 1, i, field.one());
        }
        c.set(i, n - 1, -&f.coeffs()[i]);
    }
    c
}

fn t_from_table(field: FieldSpec, n: usize, h: &HTable) -> DenseMatrix {
    let mut t = DenseMatrix::zeros(field, n);
    for i in 0..n {
        for j in i..n {
            // 1-based t_{i+1, j+1} = h_{j-i}(d_1..d_{i+1})
            t.set(i, j, h.get(i + 1, j - i).clone());
        }
    }
    t
}

/// The unit upper triangular `T` with `t_ij = h_{j-i}(d_1..d_i)`.
pub fn similarity_t(d: &DiagonalSpec) -> DenseMatrix {
    t_from_table(d.field(), d.n(), &shared_table(d))
}

/// Outcome of comparing `A T` with `T C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimilarityReport {
    pub holds: bool,
    /// First differing entry of `A T` vs `T C`, 1-based `(row, col)`.
    pub first_mismatch: Option<(usize, usize)>,
}

/// Computes both products in full and compares them entrywise.
pub fn check_similarity(a: &StructuredMatrix, t: &DenseMatrix, c: &DenseMatrix) -> Result<SimilarityReport> {
    let n = a.n();
    for (what, m) in [("T", t), ("C", c)] {
        if m.n() != n {
            return Err(Error::DimensionMismatch {
                context: if what == "T" { "similarity matrix T" } else { "companion matrix C" },
                expected: n,
                found: m.n(),
            });
        }
    }
    let at = a.mul_dense(t)?;
    let tc = t.mul(c)?;
    let first_mismatch = at.first_difference(&tc);
    Ok(SimilarityReport {
        holds: first_mismatch.is_none(),
        first_mismatch,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructOptions {
    /// Largest `n` for which the exponential minor-sum system is evaluated.
    pub minor_system_max_n: usize,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        ConstructOptions {
            minor_system_max_n: 12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checks {
    pub charpoly_roundtrip: bool,
    pub similarity: SimilarityReport,
    /// `None` when `n` exceeds [`ConstructOptions::minor_system_max_n`].
    pub minor_system: Option<MinorSystemReport>,
}

impl Checks {
    pub fn all_passed(&self) -> bool {
        self.charpoly_roundtrip
            && self.similarity.holds
            && self.minor_system.as_ref().is_none_or(MinorSystemReport::all_satisfied)
    }
}

/// Every intermediate of one construction, plus its verification results.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub poly: MonicPoly,
    pub diagonal: DiagonalSpec,
    /// `d_n`, when it was derived rather than given.
    pub derived_last: Option<FieldElement>,
    pub b: Vec<FieldElement>,
    pub a: StructuredMatrix,
    pub companion: DenseMatrix,
    pub t: DenseMatrix,
    pub checks: Checks,
}

/// Runs the whole pipeline with default options.
pub fn construct_full(f: &MonicPoly, input: &DiagonalInput) -> Result<Construction> {
    construct_full_with(f, input, &ConstructOptions::default())
}

pub fn construct_full_with(f: &MonicPoly, input: &DiagonalInput, opts: &ConstructOptions) -> Result<Construction> {
    let diagonal = resolve_diagonal(f, input)?;
    let derived_last = match input {
        DiagonalInput::Head(_) => diagonal.entries().last().cloned(),
        DiagonalInput::Full(_) => None,
    };
    let n = diagonal.n();
    let h = shared_table(&diagonal);
    let b = b_from_table(f, &h);
    let a = assemble(&diagonal, &b)?;
    let c = companion(f);
    let t = t_from_table(f.field(), n, &h);
    let checks = verify(&a, f, &t, &c, opts)?;
    Ok(Construction {
        poly: f.clone(),
        diagonal,
        derived_last,
        b,
        a,
        companion: c,
        t,
        checks,
    })
}

/// Runs all checks on a given companion-type matrix against `f`.
pub fn verify_matrix(a: &StructuredMatrix, f: &MonicPoly, opts: &ConstructOptions) -> Result<Checks> {
    let d = DiagonalSpec::new(a.field(), a.diag().to_vec())?;
    if d.n() != f.degree() {
        return Err(Error::DimensionMismatch {
            context: "matrix order vs polynomial degree",
            expected: f.degree(),
            found: d.n(),
        });
    }
    verify(a, f, &similarity_t(&d), &companion(f), opts)
}

fn verify(
    a: &StructuredMatrix,
    f: &MonicPoly,
    t: &DenseMatrix,
    c: &DenseMatrix,
    opts: &ConstructOptions,
) -> Result<Checks> {
    let charpoly_roundtrip = charpoly_structured(a).poly_equal(f)?;
    let similarity = check_similarity(a, t, c)?;
    let minor_system = if a.n() <= opts.minor_system_max_n {
        Some(check_minor_system(a, f)?)
    } else {
        None
    };
    Ok(Checks {
        charpoly_roundtrip,
        similarity,
        minor_system,
    })
}
