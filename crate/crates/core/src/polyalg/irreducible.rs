//! Probabilistic irreducibility over the base field.
//!
//! A restriction of a degree-`d` form to a line, reduced modulo a prime,
//! that is irreducible of degree `d` certifies irreducibility: any
//! factorisation would restrict to a factorisation of the slice.

use rand::Rng;

use super::field::Field;
use super::modp;
use super::poly::Poly;
use super::PolyError;
use crate::rng::seeded;

const SLICE_PRIMES: [u64; 24] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

/// Outcome over the coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Irreducibility {
    Irreducible,
    Unknown,
}

/// Irreducibility over the algebraic closure, decided only where degree forces it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum AbsoluteIrreducibility {
    Irreducible,
    NotDetermined,
}

/// Evidence for a successful slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceWitness {
    pub prime: u64,
    pub point: [i64; 3],
    pub direction: [i64; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityReport {
    pub verdict: Irreducibility,
    pub absolute: AbsoluteIrreducibility,
    pub witness: Option<SliceWitness>,
}

/// Tests `trials` random lines against the small primes.
pub fn is_irreducible_probabilistic<K: Field>(f: &Poly<K>, seed: u64, trials: usize) -> Result<Irreducibility, PolyError> {
    irreducibility_report(f, seed, trials).map(|r| r.verdict)
}

pub fn irreducibility_report<K: Field>(f: &Poly<K>, seed: u64, trials: usize) -> Result<IrreducibilityReport, PolyError> {
    let d = match f.degree() {
        Some(d) if d >= 1 => d as usize,
        _ => return Err(PolyError::ZeroInput),
    };
    let absolute = absolute_verdict(f);
    if d == 1 {
        return Ok(IrreducibilityReport { verdict: Irreducibility::Irreducible, absolute, witness: None });
    }
    let mut rng = seeded(seed, "irreducible");
    let mut usable = 0usize;
    // Degenerate draws are retried; the budget bounds the total draws.
    let budget = 8 * trials.max(1);
    for _ in 0..budget {
        if usable >= trials {
            break;
        }
        let pt: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-9..=9));
        let dir: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-9..=9));
        let mut slice_ok = false;
        for &p in &SLICE_PRIMES {
            let Some(ctx) = K::prime_context(p) else { continue };
            let Some(img) = modp::line_image(f, &ctx, pt, dir) else { continue };
            if modp::degree(&img) != Some(d) {
                continue;
            }
            slice_ok = true;
            if modp::is_irreducible(&img, p) {
                return Ok(IrreducibilityReport {
                    verdict: Irreducibility::Irreducible,
                    absolute,
                    witness: Some(SliceWitness { prime: p, point: pt, direction: dir }),
                });
            }
        }
        if slice_ok {
            usable += 1;
        }
    }
    if usable == 0 {
        return Err(PolyError::DegenerateSlice);
    }
    Ok(IrreducibilityReport { verdict: Irreducibility::Unknown, absolute, witness: None })
}

/// Degree 1, or a conic whose symmetric matrix is nonsingular.
pub fn absolute_verdict<K: Field>(f: &Poly<K>) -> AbsoluteIrreducibility {
    match f.degree() {
        Some(1) => AbsoluteIrreducibility::Irreducible,
        Some(2) if f.is_homogeneous() && !conic_determinant(f).is_zero() => AbsoluteIrreducibility::Irreducible,
        _ => AbsoluteIrreducibility::NotDetermined,
    }
}

/// Determinant of the symmetric matrix of a homogeneous quadratic form.
pub fn conic_determinant<K: Field>(f: &Poly<K>) -> K {
    use super::poly::Monomial;
    let c = |e: [u32; 3]| f.coeff(&Monomial(e));
    let half = K::from_i64(2).inv();
    let m = [
        [c([2, 0, 0]), c([1, 1, 0]).mul(&half), c([1, 0, 1]).mul(&half)],
        [c([1, 1, 0]).mul(&half), c([0, 2, 0]), c([0, 1, 1]).mul(&half)],
        [c([1, 0, 1]).mul(&half), c([0, 1, 1]).mul(&half), c([0, 0, 2])],
    ];
    let minor = |a: &K, b: &K, c: &K, d: &K| a.mul(d).sub(&b.mul(c));
    m[0][0]
        .mul(&minor(&m[1][1], &m[1][2], &m[2][1], &m[2][2]))
        .sub(&m[0][1].mul(&minor(&m[1][0], &m[1][2], &m[2][0], &m[2][2])))
        .add(&m[0][2].mul(&minor(&m[1][0], &m[1][1], &m[2][0], &m[2][1])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_poly;

    #[test]
    fn smooth_conic_is_irreducible_both_ways() {
        let f = parse_poly("y*z - x^2").unwrap();
        let r = irreducibility_report(&f, 0, 10).unwrap();
        assert_eq!(r.verdict, Irreducibility::Irreducible);
        assert_eq!(r.absolute, AbsoluteIrreducibility::Irreducible);
    }

    #[test]
    fn line_pair_is_unknown() {
        let f = parse_poly("x^2 - y^2").unwrap();
        assert_eq!(is_irreducible_probabilistic(&f, 0, 10).unwrap(), Irreducibility::Unknown);
        assert!(conic_determinant(&f).is_zero());
    }

    #[test]
    fn sum_of_squares_is_rationally_irreducible_only() {
        let f = parse_poly("x^2 + y^2").unwrap();
        let r = irreducibility_report(&f, 0, 10).unwrap();
        assert_eq!(r.verdict, Irreducibility::Irreducible);
        assert_eq!(r.absolute, AbsoluteIrreducibility::NotDetermined);
    }

    #[test]
    fn degenerate_slices_are_reported() {
        // vanishes identically on no line, but a constant has no slices at all
        assert!(matches!(is_irreducible_probabilistic(&parse_poly("5").unwrap(), 0, 3), Err(PolyError::ZeroInput)));
    }
}
