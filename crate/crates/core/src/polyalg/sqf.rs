//! Squarefree decomposition and k-th roots.

use std::collections::BTreeMap;

use rand::Rng;

use super::field::Field;
use super::gcd::{certified_coprime, content, gcd_nonzero};
use super::poly::{Poly, Var};
use super::PolyError;

/// `unit · Π base^exp`, bases squarefree, pairwise coprime and normalised,
/// exponents strictly increasing.
#[derive(Clone, Debug, PartialEq)]
pub struct SquarefreeDecomposition<K: Field> {
    pub unit: K,
    pub factors: Vec<(Poly<K>, u32)>,
}

impl<K: Field> SquarefreeDecomposition<K> {
    pub fn expand(&self) -> Poly<K> {
        let mut acc = Poly::constant(self.unit.clone());
        for (b, e) in &self.factors {
            acc = &acc * &b.pow(*e);
        }
        acc
    }

    /// Gcd of the exponents; 0 for a constant.
    pub fn multiplicity(&self) -> u32 {
        self.factors.iter().fold(0, |g, (_, e)| num::integer::gcd(g, *e))
    }

    pub fn is_reduced(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }

    /// The squarefree part `Π base`.
    pub fn radical(&self) -> Poly<K> {
        self.factors.iter().fold(Poly::one(), |acc, (b, _)| &acc * b)
    }
}

/// Cheap squarefreeness certificate: `f` is squarefree when it is coprime
/// to a directional derivative (a repeated factor divides every derivative).
pub fn certified_squarefree<K: Field>(f: &Poly<K>) -> bool {
    if f.degree().unwrap_or(0) <= 1 {
        return !f.is_zero();
    }
    let mut rng = crate::rng::seeded(0, "squarefree");
    (0..2).any(|_| {
        let d = Var::ALL.iter().fold(Poly::zero(), |acc, &v| {
            let c = K::from_i64(rng.gen_range(1..=97));
            &acc + &f.derivative(v).scale(&c)
        });
        !d.is_zero() && certified_coprime(f, &d)
    })
}

pub fn squarefree_decomposition<K: Field>(f: &Poly<K>) -> Result<SquarefreeDecomposition<K>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    let unit = f.leading_coeff();
    let monic = f.normalized();
    let factors = if monic.is_constant() {
        Vec::new()
    } else if certified_squarefree(&monic) {
        vec![(monic, 1)]
    } else {
        let mut by_exp: BTreeMap<u32, Poly<K>> = BTreeMap::new();
        collect(&monic, &mut by_exp);
        by_exp.into_iter().map(|(e, b)| (b.normalized(), e)).collect()
    };
    Ok(SquarefreeDecomposition { unit, factors })
}

fn push<K: Field>(by_exp: &mut BTreeMap<u32, Poly<K>>, b: Poly<K>, e: u32) {
    if b.is_constant() {
        return;
    }
    let slot = by_exp.entry(e).or_insert_with(Poly::one);
    *slot = &*slot * &b;
}

/// Splits off the content in the main variable, runs Yun on the primitive
/// part and recurses on the content. Content and primitive part are coprime,
/// so merging by exponent keeps the bases pairwise coprime.
fn collect<K: Field>(f: &Poly<K>, by_exp: &mut BTreeMap<u32, Poly<K>>) {
    if f.is_constant() {
        return;
    }
    let v = Var::ALL.into_iter().max_by_key(|&v| (f.degree_in(v), std::cmp::Reverse(v.index()))).expect("three vars");
    let c = content(f, v);
    let pp = f.div_exact(&c).expect("content divides");
    yun(&pp, v, by_exp);
    collect(&c.normalized(), by_exp);
}

fn yun<K: Field>(f: &Poly<K>, v: Var, by_exp: &mut BTreeMap<u32, Poly<K>>) {
    if f.degree_in(v) == 0 {
        return;
    }
    let df = f.derivative(v);
    let a = gcd_nonzero(f, &df);
    let mut b = f.div_exact(&a).expect("gcd divides");
    let c = df.div_exact(&a).expect("gcd divides");
    let mut d = &c - &b.derivative(v);
    let mut i = 1;
    while !b.is_constant() {
        let ai = if d.is_zero() { b.normalized() } else { gcd_nonzero(&b, &d) };
        b = b.div_exact(&ai).expect("gcd divides");
        let ci = d.div_exact(&ai).expect("gcd divides");
        d = &ci - &b.derivative(v);
        push(by_exp, ai, i);
        i += 1;
    }
}

/// `h` with `h^k` equal to `f` up to a nonzero scalar, if one exists.
pub fn kth_power_root<K: Field>(f: &Poly<K>, k: u32) -> Result<Option<Poly<K>>, PolyError> {
    assert!(k >= 2, "k must be at least 2");
    let sq = squarefree_decomposition(f)?;
    if sq.factors.iter().any(|(_, e)| e % k != 0) {
        return Ok(None);
    }
    Ok(Some(sq.factors.iter().fold(Poly::one(), |acc, (b, e)| &acc * &b.pow(e / k))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{parse_poly, rat, Polynomial};

    fn p(s: &str) -> Polynomial {
        parse_poly(s).unwrap()
    }

    #[test]
    fn cube_of_conic() {
        let sq = squarefree_decomposition(&p("y*z - x^2").pow(3)).unwrap();
        assert_eq!(sq.factors, vec![(p("x^2 - y*z"), 3)]);
        assert_eq!(sq.unit, rat(-1, 1));
        assert_eq!(sq.expand(), p("y*z - x^2").pow(3));
    }

    #[test]
    fn monomial_case() {
        let sq = squarefree_decomposition(&p("x^2*y^3")).unwrap();
        assert_eq!(sq.factors, vec![(p("x"), 2), (p("y"), 3)]);
    }

    #[test]
    fn squarefree_input() {
        let sq = squarefree_decomposition(&p("y*z - x^2")).unwrap();
        assert_eq!(sq.factors.len(), 1);
        assert!(sq.is_reduced());
        assert!(matches!(squarefree_decomposition(&Polynomial::zero()), Err(PolyError::ZeroInput)));
    }

    #[test]
    fn mixed_exponents_with_content() {
        let f = p("3*(x + y)^2 * z^3 * (y^2 - x*z)");
        let sq = squarefree_decomposition(&f).unwrap();
        assert_eq!(sq.expand(), f);
        let exps: Vec<u32> = sq.factors.iter().map(|(_, e)| *e).collect();
        assert_eq!(exps, vec![1, 2, 3]);
    }

    #[test]
    fn roots() {
        assert_eq!(kth_power_root(&p("(x + y)^2"), 2).unwrap(), Some(p("x + y")));
        assert_eq!(kth_power_root(&p("x^3 + y^3"), 3).unwrap(), None);
        let f = &p("y*z - x^2").pow(3) * &p("x^3");
        let h = kth_power_root(&f, 3).unwrap().unwrap();
        assert_eq!(h.pow(3).normalized(), f.normalized());
        assert_eq!(h, p("x^3 - x*y*z"));
    }
}
