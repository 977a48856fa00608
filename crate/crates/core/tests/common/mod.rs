#![allow(dead_code)]

use pdiag_core::{DenseMatrix, FieldElement, FieldSpec, MonicPoly};
use proptest::prelude::*;
use rand::Rng;

pub const PRIMES: [u64; 5] = [2, 3, 5, 7, 101];

pub fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

pub fn all_fields() -> Vec<FieldSpec> {
    std::iter::once(FieldSpec::Rationals)
        .chain(PRIMES.iter().map(|&p| gf(p)))
        .collect()
}

pub fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop::sample::select(all_fields())
}

pub fn elem(field: FieldSpec) -> BoxedStrategy<FieldElement> {
    match field {
        FieldSpec::Rationals => (-9i64..=9, 1i64..=9)
            .prop_map(move |(a, b)| field.from_ratio(&a.into(), &b.into()).unwrap())
            .boxed(),
        FieldSpec::Prime(p) => (0..p.get()).prop_map(move |v| field.from_u64(v)).boxed(),
    }
}

pub fn elems(field: FieldSpec, len: usize) -> BoxedStrategy<Vec<FieldElement>> {
    prop::collection::vec(elem(field), len).boxed()
}

pub fn random_elems<R: Rng>(field: FieldSpec, rng: &mut R, len: usize) -> Vec<FieldElement> {
    (0..len).map(|_| field.sample(rng, 9)).collect()
}

pub fn random_poly<R: Rng>(field: FieldSpec, rng: &mut R, n: usize) -> MonicPoly {
    MonicPoly::new(field, random_elems(field, rng, n)).unwrap()
}

pub fn random_dense<R: Rng>(field: FieldSpec, rng: &mut R, n: usize) -> DenseMatrix {
    let rows = (0..n).map(|_| random_elems(field, rng, n)).collect();
    DenseMatrix::from_rows(field, rows).unwrap()
}

/// Sum over all multisets of size `r` drawn from `d[..k]` of the product of
/// their members, by explicit enumeration of nondecreasing index sequences.
pub fn h_brute(field: FieldSpec, d: &[FieldElement], k: usize, r: usize) -> FieldElement {
    fn go(field: FieldSpec, d: &[FieldElement], k: usize, start: usize, left: usize, acc: FieldElement) -> FieldElement {
        if left == 0 {
            return acc;
        }
        let mut total = field.zero();
        for i in start..k {
            total = total + go(field, d, k, i, left - 1, &acc * &d[i]);
        }
        total
    }
    go(field, d, k, 0, r, field.one())
}

/// Determinant by Leibniz expansion over all permutations.
pub fn det_leibniz(m: &DenseMatrix) -> FieldElement {
    let n = m.n();
    let field = m.field();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = field.zero();
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let prod = (0..n).fold(field.one(), |acc, i| acc * m.get(i, p[i]));
        total = if inversions % 2 == 0 {
            &total + prod
        } else {
            &total - prod
        };
    });
    total
}

fn permute(p: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
    if i == p.len() {
        f(p);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permute(p, i + 1, f);
        p.swap(i, j);
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
