//! Reduction of `⟨γ₁,γ₂ | γ₁^{p k_j} γ₂^{q l_j}, [γ₁,γ₂^q], [γ₂,γ₁^p]⟩`.
//!
//! `γ₁^p` and `γ₂^q` are central, so the power relators only matter through
//! the lattice `L ⊂ Z²` spanned by the pairs `(k_j, l_j)`. Its Hermite form
//! `(k, a), (0, b)` yields the relators `γ₁^{pk} γ₂^{qa}` and `γ₂^{qb}`.

use num::Integer;
use serde::Serialize;

use super::cfp::CyclicFreeProduct;
use super::presentation::Presentation;
use super::snf::AbelianInvariants;
use super::word::Word;
use super::{abelianize, GroupError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Presn0Group {
    FreeProduct(CyclicFreeProduct),
    Presented(Presentation),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presn0Reduction {
    /// `gcd(k_j)` and `gcd(l_j)`.
    pub k_gcd: i64,
    pub l_gcd: i64,
    /// Hermite basis `(k, a), (0, b)` of the exponent lattice; `0 ≤ a < b` when `b > 0`.
    pub hermite: [[i64; 2]; 2],
    /// `L = Z²`, equivalently the abelianization is `Z_pq`.
    pub is_pq: bool,
    pub abelianization: AbelianInvariants,
    #[serde(skip)]
    pub group: Presn0Group,
}

pub fn reduce_presn0(p: i64, q: i64, pairs: &[(i64, i64)]) -> Result<Presn0Reduction, GroupError> {
    if p < 1 || q < 1 || p.gcd(&q) != 1 {
        return Err(GroupError::BadInput(format!("need coprime p, q ≥ 1, got ({p}, {q})")));
    }
    let k_gcd = pairs.iter().fold(0, |g, &(k, _)| g.gcd(&k));
    let l_gcd = pairs.iter().fold(0, |g, &(_, l)| g.gcd(&l));
    let hermite = hermite(pairs);
    let [[k, a], [_, b]] = hermite;
    let is_pq = k == 1 && b == 1;
    let g1 = Word::gen(0);
    let g2 = Word::gen(1);
    let names = vec!["g1".to_string(), "g2".to_string()];
    let full = Presentation::new(
        names.clone(),
        pairs
            .iter()
            .map(|&(kj, lj)| Word::from_syllables([(0, p * kj), (1, q * lj)]))
            .chain([Word::commutator(&g1, &g2.pow(q)), Word::commutator(&g2, &g1.pow(p))])
            .collect(),
    );
    let abelianization = abelianize(&full);
    let group = if is_pq {
        Presn0Group::FreeProduct(CyclicFreeProduct::new(0, [p as u64, q as u64]))
    } else {
        let rels = [Word::from_syllables([(0, p * k), (1, q * a)]), Word::power_of(1, q * b)]
            .into_iter()
            .filter(|w| !w.is_identity())
            .chain([Word::commutator(&g1, &g2.pow(q)), Word::commutator(&g2, &g1.pow(p))])
            .collect();
        Presn0Group::Presented(Presentation::new(names, rels))
    };
    Ok(Presn0Reduction { k_gcd, l_gcd, hermite, is_pq, abelianization, group })
}

/// Row-style Hermite form of the lattice spanned by `rows`.
fn hermite(rows: &[(i64, i64)]) -> [[i64; 2]; 2] {
    let (mut k, mut a) = (0i64, 0i64);
    let mut b = 0i64;
    for &(kj, lj) in rows {
        if kj == 0 {
            b = b.gcd(&lj);
            continue;
        }
        if k == 0 {
            (k, a) = (kj, lj);
            continue;
        }
        let e = k.extended_gcd(&kj);
        let g = e.gcd;
        // unimodular: new first row and a vector with zero first coordinate
        let lost = (kj / g) * a - (k / g) * lj;
        (k, a) = (g, e.x * a + e.y * lj);
        b = b.gcd(&lost);
    }
    if k < 0 {
        (k, a) = (-k, -a);
    }
    if b > 0 {
        a = a.rem_euclid(b);
    }
    [[k, a], [0, b]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_examples() {
        let r = reduce_presn0(2, 3, &[(1, 0), (0, 1)]).unwrap();
        assert!(r.is_pq);
        assert_eq!(r.group, Presn0Group::FreeProduct(CyclicFreeProduct::new(0, [2, 3])));
        let r = reduce_presn0(2, 3, &[(1, 1), (0, 1)]).unwrap();
        assert!(r.is_pq);
        assert_eq!(r.abelianization, AbelianInvariants::new(0, vec![6]));
        let r = reduce_presn0(2, 3, &[(1, 1)]).unwrap();
        assert!(!r.is_pq);
        assert_eq!(r.abelianization, AbelianInvariants::new(1, vec![]));
        assert!(reduce_presn0(2, 4, &[(1, 0)]).is_err());
    }

    #[test]
    fn hermite_forms() {
        assert_eq!(hermite(&[(2, 1), (3, 1)]), [[1, 0], [0, 1]]);
        assert_eq!(hermite(&[(2, 0), (0, 4), (0, 6)]), [[2, 0], [0, 2]]);
        assert_eq!(hermite(&[]), [[0, 0], [0, 0]]);
        assert_eq!(hermite(&[(-3, 5)]), [[3, -5], [0, 0]]);
    }
}
