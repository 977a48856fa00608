//! Independent checks on the construction.
//!
//! Two characteristic polynomial routes (the structured recurrence and a
//! division-free Berkowitz scheme for arbitrary matrices), principal minor
//! sums by subset enumeration, the triangular minor-sum system solved by
//! back-substitution, and brute-force searches over small prime fields.

use rand::Rng;

use crate::construct::{validate_diagonal, DiagonalSpec};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::{DenseMatrix, StructuredMatrix};
use crate::poly::MonicPoly;

/// Largest order accepted by the subset-enumerating oracles.
pub const MAX_ENUMERATION_ORDER: usize = 24;

/// Default cap on the number of candidates [`uniqueness_exhaustive`] may visit.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// `det(tI - A)` for the companion-type matrix, by cofactor expansion along
/// the first row: `q_n = t - d_n`, `q_j = (t - d_j) q_{j+1} - b_j`.
pub fn charpoly_structured(a: &StructuredMatrix) -> MonicPoly {
    let n = a.n();
    let d = a.diag();
    let b = a.last_col();
    let step = |q: MonicPoly, j: usize| -> Result<MonicPoly> {
        let q = q.mul_linear(&d[j])?;
        match b.get(j) {
            Some(bj) => q.add_constant(&-bj),
            None => Ok(q),
        }
    };
    (0..n)
        .rev()
        .try_fold(MonicPoly::unit(a.field()), step)
        .expect("entries share the matrix field")
}

/// `det(tI - M)` for any square matrix, using only ring operations
/// (Samuelson-Berkowitz), so no pivot or leading minor needs to be
/// invertible.
pub fn charpoly_generic(m: &DenseMatrix) -> Result<MonicPoly> {
    let n = m.n();
    if n == 0 {
        return Err(Error::InvalidArgument(
            "characteristic polynomial of an empty matrix has degree 0".into(),
        ));
    }
    let field = m.field();
    // p holds det(tI - A_k) high-to-low, A_k the leading k x k block.
    let mut p = vec![field.one()];
    for k in 0..n {
        let a = m.get(k, k);
        // s_j = r A_k^j c for j < k, r = row k and c = column k restricted to 0..k.
        let mut s = Vec::with_capacity(k);
        let mut v: Vec<FieldElement> = (0..k).map(|i| m.get(i, k).clone()).collect();
        for _ in 0..k {
            let rv = (0..k).fold(field.zero(), |acc, i| acc + m.get(k, i) * &v[i]);
            s.push(rv);
            v = (0..k)
                .map(|i| (0..k).fold(field.zero(), |acc, j| acc + m.get(i, j) * &v[j]))
                .collect();
        }
        // (t - a) p
        let mut next = Vec::with_capacity(k + 2);
        for i in 0..=k + 1 {
            let hi = if i <= k { p[i].clone() } else { field.zero() };
            let lo = if i >= 1 { a * &p[i - 1] } else { field.zero() };
            next.push(hi - lo);
        }
        // minus sum_j t^{k-1-j} sum_{i<=j} p_i s_{j-i}
        for j in 0..k {
            let corr = (0..=j).fold(field.zero(), |acc, i| acc + &p[i] * &s[j - i]);
            let idx = j + 2;
            next[idx] = &next[idx] - corr;
        }
        p = next;
    }
    let coeffs = p.into_iter().skip(1).rev().collect();
    MonicPoly::new(field, coeffs)
}

/// All `m`-element subsets of `0..n`, each ascending, in lexicographic order
/// of their bitmasks.
pub fn subsets_of_size(n: usize, m: usize) -> Vec<Vec<usize>> {
    assert!(n <= MAX_ENUMERATION_ORDER);
    if m > n {
        return Vec::new();
    }
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let limit = 1u32 << n;
    let mut mask: u32 = (1 << m) - 1;
    while mask < limit {
        out.push((0..n).filter(|&i| mask >> i & 1 == 1).collect());
        // Gosper's hack: next mask with the same popcount.
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    out
}

/// `sum over |S| = m of det(M_S)`, by enumerating every subset.
pub fn principal_minor_sum(m: &DenseMatrix, size: usize) -> Result<FieldElement> {
    let n = m.n();
    if size == 0 || size > n {
        return Err(Error::InvalidArgument(format!(
            "minor size {size} outside 1..={n}"
        )));
    }
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::InvalidArgument(format!(
            "order {n} too large for subset enumeration (max {MAX_ENUMERATION_ORDER})"
        )));
    }
    Ok(subsets_of_size(n, size)
        .iter()
        .fold(m.field().zero(), |acc, s| acc + m.principal_submatrix(s).det()))
}

/// `(-1)^e * x`.
fn signed(x: &FieldElement, e: usize) -> FieldElement {
    if e.is_multiple_of(2) {
        x.clone()
    } else {
        -x
    }
}

/// One equation of the minor-sum system for index `k` (1-based):
/// the sum of the principal minors of size `n - k + 1` against
/// `(-1)^(n-k+1) c_{k-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorEquation {
    pub k: usize,
    pub minor_size: usize,
    pub lhs: FieldElement,
    pub rhs: FieldElement,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorSystemReport {
    pub equations: Vec<MinorEquation>,
}

impl MinorSystemReport {
    /// Vacuously true for `n = 1`.
    pub fn all_satisfied(&self) -> bool {
        self.equations.iter().all(|e| e.satisfied)
    }
}

pub fn check_minor_system(a: &StructuredMatrix, f: &MonicPoly) -> Result<MinorSystemReport> {
    let n = a.n();
    if f.degree() != n {
        return Err(Error::DimensionMismatch {
            context: "polynomial degree vs matrix order",
            expected: n,
            found: f.degree(),
        });
    }
    if f.field() != a.field() {
        return Err(Error::FieldMismatch {
            left: a.field(),
            right: f.field(),
        });
    }
    let dense = a.to_dense();
    let equations = (1..n)
        .map(|k| {
            let size = n - k + 1;
            let lhs = principal_minor_sum(&dense, size)?;
            let rhs = signed(&f.coeffs()[k - 1], size);
            let satisfied = lhs == rhs;
            Ok(MinorEquation {
                k,
                minor_size: size,
                lhs,
                rhs,
                satisfied,
            })
        })
        .collect::<Result<_>>()?;
    Ok(MinorSystemReport { equations })
}

/// Solves the minor-sum system for `b_{n-1}, ..., b_1` in that order.
///
/// With `b_{k+1}..b_{n-1}` fixed and `b_1..b_k` still zero, the minor sum of
/// size `n - k + 1` equals `g_k` (no minor of that size involves `b_j` for
/// `j < k`, and the one involving `b_k` is linear in it with sign
/// `(-1)^(n-k)`). Exponential in `n`.
pub fn solve_b_backsub(f: &MonicPoly, d: &DiagonalSpec) -> Result<Vec<FieldElement>> {
    validate_diagonal(f, d)?;
    let n = d.n();
    let field = f.field();
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::InvalidArgument(format!(
            "order {n} too large for subset enumeration (max {MAX_ENUMERATION_ORDER})"
        )));
    }
    let mut b = vec![field.zero(); n.saturating_sub(1)];
    for k in (1..n).rev() {
        let a = StructuredMatrix::new(field, d.entries().to_vec(), b.clone())?;
        let g = principal_minor_sum(&a.to_dense(), n - k + 1)?;
        let rhs = signed(&f.coeffs()[k - 1], n - k + 1);
        b[k - 1] = signed(&(rhs - g), n - k);
    }
    Ok(b)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniquenessReport {
    pub candidates: u64,
    pub solutions: u64,
    /// The first solution found, in enumeration order.
    pub witness: Option<Vec<FieldElement>>,
}

/// Counts every `b` in `GF(p)^(n-1)` whose companion-type matrix has
/// characteristic polynomial `f`. The budget is checked before any work.
pub fn uniqueness_exhaustive(f: &MonicPoly, d: &DiagonalSpec, budget: u64) -> Result<UniquenessReport> {
    let field = f.field();
    let Some(p) = field.modulus() else {
        return Err(Error::WrongField(field));
    };
    validate_diagonal(f, d)?;
    let n = d.n();
    let unknowns = n - 1;
    let candidates = u32::try_from(unknowns)
        .ok()
        .and_then(|e| (p as u128).checked_pow(e));
    let candidates = match candidates {
        Some(c) if c <= budget as u128 => c as u64,
        Some(c) => {
            return Err(Error::BudgetExceeded {
                candidates: c.to_string(),
                budget,
            })
        }
        None => {
            return Err(Error::BudgetExceeded {
                candidates: format!("{p}^{unknowns}"),
                budget,
            })
        }
    };

    let mut digits = vec![0u64; unknowns];
    let mut solutions = 0;
    let mut witness = None;
    for _ in 0..candidates {
        let b: Vec<FieldElement> = digits.iter().map(|&x| field.from_u64(x)).collect();
        let a = StructuredMatrix::new(field, d.entries().to_vec(), b)?;
        if charpoly_structured(&a) == *f {
            solutions += 1;
            if witness.is_none() {
                witness = Some(a.last_col().to_vec());
            }
        }
        for digit in digits.iter_mut() {
            *digit += 1;
            if *digit < p {
                break;
            }
            *digit = 0;
        }
    }
    Ok(UniquenessReport {
        candidates,
        solutions,
        witness,
    })
}

/// Field used by [`occurrence_pattern`] for its random probes.
pub const PROBE_MODULUS: u64 = 101;
/// Probes per `(k, S)` cell.
pub const PROBE_REPETITIONS: usize = 3;

/// Which principal minors `M_S` of the companion-type matrix depend on `b_k`,
/// restricted to `|S| <= n - k + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccurrencePattern {
    n: usize,
    /// `rows[k - 1]` lists `(mask, sensitive)` over subsets of `0..n`.
    rows: Vec<Vec<(u32, bool)>>,
}

impl OccurrencePattern {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Subsets (1-based, ascending) found sensitive to `b_k`.
    pub fn sensitive_subsets(&self, k: usize) -> Vec<Vec<usize>> {
        self.rows[k - 1]
            .iter()
            .filter(|(_, s)| *s)
            .map(|&(mask, _)| mask_to_one_based(mask, self.n))
            .collect()
    }

    /// Every probed `(S, sensitive)` pair for `b_k`, subsets 1-based.
    pub fn cells(&self, k: usize) -> impl Iterator<Item = (Vec<usize>, bool)> + '_ {
        self.rows[k - 1]
            .iter()
            .map(move |&(mask, s)| (mask_to_one_based(mask, self.n), s))
    }

    /// True iff for every `k` the only sensitive subset is `{k, ..., n}`.
    pub fn matches_claim(&self) -> bool {
        (1..self.n).all(|k| self.sensitive_subsets(k) == vec![(k..=self.n).collect::<Vec<_>>()])
    }
}

fn mask_to_one_based(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

/// Probes each `(k, S)` with `|S| <= n - k + 1` by evaluating `M_S` at
/// random points of GF(101) that differ only in `b_k`.
pub fn occurrence_pattern<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<OccurrencePattern> {
    if n == 0 || n > 10 {
        return Err(Error::InvalidArgument(format!(
            "occurrence probing supports 1 <= n <= 10, got {n}"
        )));
    }
    let field = FieldSpec::prime(PROBE_MODULUS)?;
    let mut rows = Vec::with_capacity(n - 1);
    for k in 1..n {
        let mut row = Vec::new();
        for size in 1..=n - k + 1 {
            for subset in subsets_of_size(n, size) {
                let mask = subset.iter().fold(0u32, |m, &i| m | 1 << i);
                let mut sensitive = false;
                for _ in 0..PROBE_REPETITIONS {
                    let diag: Vec<_> = (0..n).map(|_| field.sample(rng, 0)).collect();
                    let b: Vec<_> = (0..n - 1).map(|_| field.sample(rng, 0)).collect();
                    let mut b2 = b.clone();
                    let shift = loop {
                        let s = field.sample(rng, 0);
                        if !s.is_zero() {
                            break s;
                        }
                    };
                    b2[k - 1] = &b2[k - 1] + shift;
                    let m1 = StructuredMatrix::new(field, diag.clone(), b)?.to_dense();
                    let m2 = StructuredMatrix::new(field, diag, b2)?.to_dense();
                    if m1.principal_submatrix(&subset).det() != m2.principal_submatrix(&subset).det() {
                        sensitive = true;
                        break;
                    }
                }
                row.push((mask, sensitive));
            }
        }
        rows.push(row);
    }
    Ok(OccurrencePattern { n, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn dense(field: FieldSpec, rows: &[&[i64]]) -> DenseMatrix {
        DenseMatrix::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn poly(field: FieldSpec, s: &str) -> MonicPoly {
        MonicPoly::parse(field, s).unwrap()
    }

    #[test]
    fn generic_charpoly_examples() {
        assert_eq!(
            charpoly_generic(&DenseMatrix::identity(Q, 2)).unwrap(),
            poly(Q, "1,-2")
        );
        assert_eq!(
            charpoly_generic(&DenseMatrix::zeros(Q, 3)).unwrap(),
            poly(Q, "0,0,0")
        );
        assert_eq!(
            charpoly_generic(&dense(Q, &[&[0, -2], &[1, -3]])).unwrap(),
            poly(Q, "2,3")
        );
        assert!(charpoly_generic(&DenseMatrix::zeros(Q, 0)).is_err());
    }

    #[test]
    fn generic_charpoly_singular_leading_minor_gf2() {
        // leading 1x1 and 2x2 blocks are singular; det(tI - P) = t^3 - 1 for this 3-cycle
        let gf2 = FieldSpec::prime(2).unwrap();
        let p = dense(gf2, &[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        assert_eq!(charpoly_generic(&p).unwrap(), poly(gf2, "1,0,0"));
    }

    #[test]
    fn structured_charpoly_examples() {
        let a = StructuredMatrix::new(Q, vec![Q.from_i64(2), Q.from_i64(-2)], vec![Q.from_i64(-3)]).unwrap();
        assert_eq!(charpoly_structured(&a), poly(Q, "-1,0"));
        let one = StructuredMatrix::new(Q, vec![Q.from_i64(4)], vec![]).unwrap();
        assert_eq!(charpoly_structured(&one), poly(Q, "-4"));
    }

    #[test]
    fn subsets_enumerate_binomially() {
        assert_eq!(subsets_of_size(4, 2).len(), 6);
        assert_eq!(subsets_of_size(5, 0), vec![Vec::<usize>::new()]);
        assert_eq!(subsets_of_size(3, 3), vec![vec![0, 1, 2]]);
        assert!(subsets_of_size(2, 3).is_empty());
        let all: usize = (0..=10).map(|m| subsets_of_size(10, m).len()).sum();
        assert_eq!(all, 1024);
    }

    #[test]
    fn minor_sum_ends() {
        let m = dense(Q, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        assert_eq!(principal_minor_sum(&m, 1).unwrap(), m.trace());
        assert_eq!(principal_minor_sum(&m, 3).unwrap(), m.det());
        assert!(principal_minor_sum(&m, 0).is_err());
        assert!(principal_minor_sum(&m, 4).is_err());
    }

    #[test]
    fn minor_system_wrong_shape() {
        let a = StructuredMatrix::new(Q, vec![Q.one(), Q.one()], vec![Q.one()]).unwrap();
        assert!(matches!(
            check_minor_system(&a, &poly(Q, "1")),
            Err(Error::DimensionMismatch { .. })
        ));
        let one = StructuredMatrix::new(Q, vec![Q.one()], vec![]).unwrap();
        let r = check_minor_system(&one, &poly(Q, "-1")).unwrap();
        assert!(r.equations.is_empty() && r.all_satisfied());
    }

    #[test]
    fn uniqueness_rejects_rationals_and_big_spaces() {
        let f = poly(Q, "-1,0");
        let d = DiagonalSpec::new(Q, vec![Q.from_i64(2), Q.from_i64(-2)]).unwrap();
        assert!(matches!(uniqueness_exhaustive(&f, &d, 10), Err(Error::WrongField(_))));

        let gf7 = FieldSpec::prime(7).unwrap();
        let f = MonicPoly::new(gf7, vec![gf7.zero(); 5]).unwrap();
        let d = DiagonalSpec::new(gf7, vec![gf7.zero(); 5]).unwrap();
        let err = uniqueness_exhaustive(&f, &d, 2400).unwrap_err();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                candidates: "2401".into(),
                budget: 2400
            }
        );
        assert_eq!(uniqueness_exhaustive(&f, &d, 2401).unwrap().solutions, 1);
    }

    #[test]
    fn occurrence_bounds() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        assert!(occurrence_pattern(0, &mut rng).is_err());
        assert!(occurrence_pattern(11, &mut rng).is_err());
        let p1 = occurrence_pattern(1, &mut rng).unwrap();
        assert!(p1.matches_claim());
    }

    use rand::SeedableRng;
}
