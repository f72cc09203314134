//! Polynomial generators shared by the property suites.
#![allow(dead_code)]

use orbipencil::polyalg::{rat, Monomial, Poly, Rational};
use proptest::prelude::*;

pub type P = Poly<Rational>;

/// Monomials of total degree `d` in x, y, z.
pub fn monomials(d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|i| (0..=d - i).map(move |j| Monomial([i, j, d - i - j]))).collect()
}

pub fn coeff() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_filter_map("nonzero", |(n, d)| (n != 0).then(|| rat(n, d)))
}

/// Homogeneous, nonzero, degree exactly `d`.
pub fn homogeneous(d: u32, max_terms: usize) -> impl Strategy<Value = P> {
    let ms = monomials(d);
    let n = ms.len();
    proptest::collection::vec((0..n, coeff()), 1..=max_terms)
        .prop_map(move |ts| P::from_terms(ts.into_iter().map(|(i, c)| (ms[i], c))))
        .prop_filter("nonzero", |p| !p.is_zero())
}

/// Linear or quadratic form.
pub fn small_form() -> BoxedStrategy<P> {
    homogeneous(1, 3).boxed().prop_union(homogeneous(2, 3).boxed()).boxed()
}

pub fn any_poly() -> impl Strategy<Value = P> {
    proptest::collection::vec(((0u32..4, 0u32..4, 0u32..4), coeff()), 0..6)
        .prop_map(|ts| P::from_terms(ts.into_iter().map(|((a, b, c), k)| (Monomial([a, b, c]), k))))
}

/// Up to three factors with exponents at most 4, times a unit.
pub fn factored() -> impl Strategy<Value = (Vec<(P, u32)>, Rational)> {
    (proptest::collection::vec((small_form(), 1u32..=4), 1..=3), coeff())
}

pub fn expand(fs: &[(P, u32)], unit: &Rational) -> P {
    fs.iter().fold(P::constant(unit.clone()), |acc, (f, e)| &acc * &f.pow(*e))
}

pub fn proportional(a: &P, b: &P) -> bool {
    a.normalized() == b.normalized()
}
