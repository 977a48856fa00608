//! Exact scalar arithmetic over the rationals and over prime fields GF(p).
//!
//! Every [`FieldElement`] carries the [`FieldSpec`] it belongs to. The
//! `try_*` methods check that both operands come from the same field and
//! return [`Error::FieldMismatch`] otherwise. The arithmetic operators
//! (`+`, `-`, `*`, unary `-`) skip the error path and panic on mixed
//! operands; the algorithm modules validate their inputs once at entry and
//! then use the operators.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, RngExt};

use crate::error::{Error, Result};

/// A prime modulus, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(PrimeModulus(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }
}

/// Deterministic Miller-Rabin; the witness set is exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// The field all scalars of one computation live in.
///
/// Text form is `Q` for the rationals and `GF:p` for the prime field of
/// order `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(PrimeModulus),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        PrimeModulus::new(p).map(FieldSpec::Prime)
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(p.get()),
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> FieldElement {
        match *self {
            FieldSpec::Rationals => FieldElement(Repr::Rational(BigRational::from_integer(v.clone()))),
            FieldSpec::Prime(p) => {
                let m = BigInt::from(p.get());
                let r = v.mod_floor(&m).to_u64().expect("residue fits in u64");
                FieldElement(Repr::Residue { value: r, modulus: p })
            }
        }
    }

    /// The element `num / den`. Fails when `den` is zero in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<FieldElement> {
        let den = self.from_bigint(den);
        self.from_bigint(num).try_div(&den)
    }

    /// Residue `value mod p`, or the integer `value` over Q.
    pub fn from_u64(&self, value: u64) -> FieldElement {
        self.from_bigint(&BigInt::from(value))
    }

    /// Parses `a`, `-a` or `a/b` (decimal, arbitrary length).
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        let bad = |message: String| Error::Parse { position: 1, message };
        let parse_int = |t: &str| {
            let t = t.trim();
            BigInt::from_str(t).map_err(|_| bad(format!("`{t}` is not an integer")))
        };
        if s.is_empty() {
            return Err(bad("empty field element".into()));
        }
        match s.split_once('/') {
            None => Ok(self.from_bigint(&parse_int(s)?)),
            Some((n, d)) => {
                let num = parse_int(n)?;
                let den = parse_int(d)?;
                self.from_ratio(&num, &den)
                    .map_err(|_| bad(format!("denominator in `{s}` is zero in {self}")))
            }
        }
    }

    /// Uniform residue over GF(p); over Q a fraction `a/b` with
    /// `a` in `[-bound, bound]` and `b` in `[1, bound]`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> FieldElement {
        match *self {
            FieldSpec::Rationals => {
                let bound = bound.max(1);
                let num = rng.random_range(-bound..=bound);
                let den = rng.random_range(1..=bound);
                FieldElement(Repr::Rational(BigRational::new(num.into(), den.into())))
            }
            FieldSpec::Prime(p) => {
                let value = rng.random_range(0..p.get());
                FieldElement(Repr::Residue { value, modulus: p })
            }
        }
    }

    /// Checks that `e` belongs to this field.
    pub fn check(&self, e: &FieldElement) -> Result<()> {
        let other = e.field();
        if other == *self {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: *self,
                right: other,
            })
        }
    }

    pub fn check_all<'a>(&self, items: impl IntoIterator<Item = &'a FieldElement>) -> Result<()> {
        items.into_iter().try_for_each(|e| self.check(e))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("Q"),
            FieldSpec::Prime(p) => write!(f, "GF:{}", p.get()),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let bad = || Error::Parse {
            position: 1,
            message: format!("unknown field `{s}`, expected `Q` or `GF:p`"),
        };
        let p = s.strip_prefix("GF:").ok_or_else(bad)?;
        let p: u64 = p.parse().map_err(|_| bad())?;
        FieldSpec::prime(p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    /// Always in lowest terms with positive denominator (kept so by `BigRational`).
    Rational(BigRational),
    /// `value < modulus`.
    Residue { value: u64, modulus: PrimeModulus },
}

/// A scalar in canonical form. Equality is structural: equal values have
/// identical representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement(Repr);

impl FieldElement {
    pub fn field(&self) -> FieldSpec {
        match &self.0 {
            Repr::Rational(_) => FieldSpec::Rationals,
            Repr::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rational(q) => q.is_zero(),
            Repr::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rational(q) => q.is_one(),
            Repr::Residue { value, .. } => *value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(q) => Some(q),
            Repr::Residue { .. } => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Rational(_) => None,
            Repr::Residue { value, .. } => Some(*value),
        }
    }

    /// True for negative rationals. Residues have no sign.
    pub fn is_negative(&self) -> bool {
        matches!(&self.0, Repr::Rational(q) if q.is_negative())
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        self.field().check(other).map_err(|_| Error::FieldMismatch {
            left: self.field(),
            right: other.field(),
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.add_unchecked(&other.neg_ref()))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    pub fn try_eq(&self, other: &Self) -> Result<bool> {
        self.same_field(other)?;
        Ok(self == other)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Rational(q) => FieldElement(Repr::Rational(q.recip())),
            Repr::Residue { value, modulus } => FieldElement(Repr::Residue {
                value: pow_mod(*value, modulus.get() - 2, modulus.get()),
                modulus: *modulus,
            }),
        })
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    fn neg_ref(&self) -> Self {
        match &self.0 {
            Repr::Rational(q) => FieldElement(Repr::Rational(-q)),
            Repr::Residue { value, modulus } => FieldElement(Repr::Residue {
                value: if *value == 0 { 0 } else { modulus.get() - value },
                modulus: *modulus,
            }),
        }
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => FieldElement(Repr::Rational(a + b)),
            (Repr::Residue { value: a, modulus }, Repr::Residue { value: b, .. }) => {
                let p = modulus.get();
                let s = (*a as u128 + *b as u128) % p as u128;
                FieldElement(Repr::Residue {
                    value: s as u64,
                    modulus: *modulus,
                })
            }
            _ => mismatch_panic(self, other),
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => FieldElement(Repr::Rational(a * b)),
            (Repr::Residue { value: a, modulus }, Repr::Residue { value: b, .. }) => {
                FieldElement(Repr::Residue {
                    value: mul_mod(*a, *b, modulus.get()),
                    modulus: *modulus,
                })
            }
            _ => mismatch_panic(self, other),
        }
    }
}

#[cold]
fn mismatch_panic(a: &FieldElement, b: &FieldElement) -> ! {
    panic!("field mismatch: {} and {}", a.field(), b.field())
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Repr::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Repr::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

// Operators panic on mixed fields; see the module docs.
macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                if self.field() != rhs.field() {
                    mismatch_panic(self, rhs);
                }
                $body(self, rhs)
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a: &FieldElement, b: &FieldElement| a.add_unchecked(b));
binop!(Sub, sub, |a: &FieldElement, b: &FieldElement| a.add_unchecked(&b.neg_ref()));
binop!(Mul, mul, |a: &FieldElement, b: &FieldElement| a.mul_unchecked(b));

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

/// Sums `items` in `field`; the empty sum is zero.
pub fn sum<'a>(field: FieldSpec, items: impl IntoIterator<Item = &'a FieldElement>) -> FieldElement {
    items.into_iter().fold(field.zero(), |acc, x| acc + x)
}
