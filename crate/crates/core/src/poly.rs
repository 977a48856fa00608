//! Monic univariate polynomials `t^n + c_{n-1} t^{n-1} + ... + c_0`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// A monic polynomial stored as `[c_0, c_1, ..., c_{n-1}]`; the leading
/// coefficient `c_n = 1` is implicit.
///
/// Public constructors require degree at least one. Degree zero (the unit
/// polynomial `1`) exists only as the seed of [`MonicPoly::mul_linear`]
/// chains inside the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonicPoly {
    field: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl MonicPoly {
    pub fn new(field: FieldSpec, coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "a monic polynomial needs degree at least 1".into(),
            ));
        }
        field.check_all(&coeffs)?;
        Ok(MonicPoly { field, coeffs })
    }

    pub(crate) fn unit(field: FieldSpec) -> Self {
        MonicPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    /// `t - root`.
    pub fn linear(root: &FieldElement) -> Self {
        MonicPoly {
            field: root.field(),
            coeffs: vec![-root],
        }
    }

    /// Parses a low-to-high coefficient list `"c0,c1,...,c_{n-1}"`.
    pub fn parse(field: FieldSpec, text: &str) -> Result<Self> {
        let coeffs = parse_list(field, text)?;
        MonicPoly::new(field, coeffs)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `[c_0, ..., c_{n-1}]`.
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// `c_i`, with `c_n = 1` and zero above the degree.
    pub fn coeff(&self, i: usize) -> FieldElement {
        match i.cmp(&self.degree()) {
            std::cmp::Ordering::Less => self.coeffs[i].clone(),
            std::cmp::Ordering::Equal => self.field.one(),
            std::cmp::Ordering::Greater => self.field.zero(),
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &FieldElement) -> Result<FieldElement> {
        self.field.check(t)?;
        Ok(self
            .coeffs
            .iter()
            .rev()
            .fold(self.field.one(), |acc, c| acc * t + c))
    }

    /// Exact comparison; polynomials over different fields are an error,
    /// not merely unequal.
    pub fn poly_equal(&self, other: &MonicPoly) -> Result<bool> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        Ok(self.coeffs == other.coeffs)
    }

    /// `(t - shift) * self`.
    pub fn mul_linear(&self, shift: &FieldElement) -> Result<MonicPoly> {
        self.field.check(shift)?;
        let n = self.degree();
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let lower = if i == 0 {
                self.field.zero()
            } else {
                self.coeff(i - 1)
            };
            out.push(lower - shift * self.coeff(i));
        }
        Ok(MonicPoly {
            field: self.field,
            coeffs: out,
        })
    }

    /// Adds `k` to the constant term.
    pub fn add_constant(&self, k: &FieldElement) -> Result<MonicPoly> {
        self.field.check(k)?;
        if self.coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "cannot add a constant to the unit polynomial".into(),
            ));
        }
        let mut coeffs = self.coeffs.clone();
        coeffs[0] = &coeffs[0] + k;
        Ok(MonicPoly {
            field: self.field,
            coeffs,
        })
    }

    /// The machine form `c0,c1,...` accepted by [`MonicPoly::parse`].
    pub fn to_coeff_list(&self) -> String {
        join(&self.coeffs)
    }
}

/// Human-readable form, e.g. `t^3 - 2*t + 5`.
impl fmt::Display for MonicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        if n == 0 {
            return f.write_str("1");
        }
        write_monomial(f, n)?;
        for i in (0..n).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                (" - ", -c)
            } else {
                (" + ", c.clone())
            };
            f.write_str(sign)?;
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, i)?;
            }
        }
        Ok(())
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, i: usize) -> fmt::Result {
    match i {
        1 => f.write_str("t"),
        _ => write!(f, "t^{i}"),
    }
}

/// Parses a comma-separated list of field elements. An empty (or
/// whitespace-only) string is the empty list. Errors carry the 1-based
/// item position.
pub fn parse_list(field: FieldSpec, text: &str) -> Result<Vec<FieldElement>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .enumerate()
        .map(|(i, item)| {
            field.parse_element(item).map_err(|e| match e {
                Error::Parse { message, .. } => Error::Parse {
                    position: i + 1,
                    message,
                },
                other => other,
            })
        })
        .collect()
}

pub(crate) fn join(items: &[FieldElement]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}
