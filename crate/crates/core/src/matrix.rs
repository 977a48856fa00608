use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// A square matrix over one field, stored row-major. Indices are 0-based
/// in the API; messages shown to users are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    field: FieldSpec,
    n: usize,
    data: Vec<FieldElement>,
}

impl DenseMatrix {
    pub fn zeros(field: FieldSpec, n: usize) -> Self {
        DenseMatrix {
            field,
            n,
            data: vec![field.zero(); n * n],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    context: "square matrix row",
                    expected: n,
                    found: row.len(),
                });
            }
            field.check_all(&row)?;
            data.extend(row);
        }
        Ok(DenseMatrix { field, n, data })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[FieldElement]> {
        (0..self.n).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        self.rows().map(<[_]>::to_vec).collect()
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                context: "matrix product",
                expected: self.n,
                found: other.n,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        let n = self.n;
        let mut out = DenseMatrix::zeros(self.field, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + a * b;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// The submatrix on rows and columns `indices` (0-based, ascending).
    pub fn principal_submatrix(&self, indices: &[usize]) -> DenseMatrix {
        let m = indices.len();
        let mut data = Vec::with_capacity(m * m);
        for &i in indices {
            for &j in indices {
                data.push(self.get(i, j).clone());
            }
        }
        DenseMatrix {
            field: self.field,
            n: m,
            data,
        }
    }

    /// Determinant by Gaussian elimination with nonzero pivot search. The
    /// empty matrix has determinant one.
    pub fn det(&self) -> FieldElement {
        let n = self.n;
        let mut a = self.clone();
        let mut det = self.field.one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return self.field.zero();
            };
            if pivot != col {
                for j in col..n {
                    a.data.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a.get(col, col).clone();
            det = &det * &p;
            let p_inv = p.inv().expect("pivot is nonzero");
            for r in col + 1..n {
                if a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col) * &p_inv;
                for j in col..n {
                    let v = a.get(r, j) - &factor * a.get(col, j);
                    a.set(r, j, v);
                }
            }
        }
        det
    }

    pub fn trace(&self) -> FieldElement {
        (0..self.n).fold(self.field.zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_unit_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| match i.cmp(&j) {
                std::cmp::Ordering::Greater => self.get(i, j).is_zero(),
                std::cmp::Ordering::Equal => self.get(i, j).is_one(),
                std::cmp::Ordering::Less => true,
            })
        })
    }

    /// First entry where `self` and `other` differ, as 1-based `(row, col)`.
    pub fn first_difference(&self, other: &DenseMatrix) -> Option<(usize, usize)> {
        if self.n != other.n {
            return Some((1, 1));
        }
        (0..self.n * self.n)
            .find(|&idx| self.data[idx] != other.data[idx])
            .map(|idx| (idx / self.n + 1, idx % self.n + 1))
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .rows()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            f.write_str("[")?;
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{c:>width$}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

/// The companion-type matrix
///
/// ```text
/// d_1  0   ...  0        b_1
/// 1    d_2 ...  0        b_2
/// ...
/// 0    ... 1    d_{n-1}  b_{n-1}
/// 0    ... 0    1        d_n
/// ```
///
/// stored as its diagonal and the first `n - 1` entries of the last column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredMatrix {
    field: FieldSpec,
    diag: Vec<FieldElement>,
    last_col: Vec<FieldElement>,
}

impl StructuredMatrix {
    pub fn new(field: FieldSpec, diag: Vec<FieldElement>, last_col: Vec<FieldElement>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::InvalidArgument("matrix order must be at least 1".into()));
        }
        if last_col.len() + 1 != diag.len() {
            return Err(Error::DimensionMismatch {
                context: "last column (b_1..b_(n-1))",
                expected: diag.len() - 1,
                found: last_col.len(),
            });
        }
        field.check_all(&diag)?;
        field.check_all(&last_col)?;
        Ok(StructuredMatrix {
            field,
            diag,
            last_col,
        })
    }

    /// Reads a dense matrix back into structured form, rejecting anything
    /// outside the companion-type sparsity pattern.
    pub fn from_dense(m: &DenseMatrix) -> Result<Self> {
        let n = m.n();
        if n == 0 {
            return Err(Error::InvalidArgument("matrix order must be at least 1".into()));
        }
        let field = m.field();
        for i in 0..n {
            for j in 0..n {
                if i == j || j == n - 1 {
                    continue;
                }
                let want_one = i == j + 1;
                let v = m.get(i, j);
                let ok = if want_one { v.is_one() } else { v.is_zero() };
                if !ok {
                    return Err(Error::InvalidArgument(format!(
                        "entry ({}, {}) is {v}, expected {} for a companion-type matrix",
                        i + 1,
                        j + 1,
                        if want_one { 1 } else { 0 }
                    )));
                }
            }
        }
        let diag = (0..n).map(|i| m.get(i, i).clone()).collect();
        let last_col = (0..n - 1).map(|i| m.get(i, n - 1).clone()).collect();
        Ok(StructuredMatrix {
            field,
            diag,
            last_col,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[FieldElement] {
        &self.diag
    }

    /// `[b_1, ..., b_{n-1}]`.
    pub fn last_col(&self) -> &[FieldElement] {
        &self.last_col
    }

    /// Entry `(i, j)`, 0-based.
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        let n = self.n();
        if i == j {
            self.diag[i].clone()
        } else if j == n - 1 {
            self.last_col[i].clone()
        } else if i == j + 1 {
            self.field.one()
        } else {
            self.field.zero()
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.n();
        let mut m = DenseMatrix::zeros(self.field, n);
        for i in 0..n {
            m.set(i, i, self.diag[i].clone());
            if i + 1 < n {
                m.set(i + 1, i, self.field.one());
                m.set(i, n - 1, self.last_col[i].clone());
            }
        }
        m
    }

    /// `self * rhs` using the sparsity pattern: `O(n^2)` products.
    pub fn mul_dense(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        let n = self.n();
        if rhs.n() != n {
            return Err(Error::DimensionMismatch {
                context: "structured product",
                expected: n,
                found: rhs.n(),
            });
        }
        if rhs.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: rhs.field(),
            });
        }
        let mut out = DenseMatrix::zeros(self.field, n);
        for i in 0..n {
            for j in 0..n {
                // row i of A: d_i at i, 1 at i-1 (i > 0), b_i at n-1 (i < n-1)
                let mut v = &self.diag[i] * rhs.get(i, j);
                if i > 0 {
                    v = v + rhs.get(i - 1, j);
                }
                if i + 1 < n {
                    v = v + &self.last_col[i] * rhs.get(n - 1, j);
                }
                out.set(i, j, v);
            }
        }
        Ok(out)
    }
}
