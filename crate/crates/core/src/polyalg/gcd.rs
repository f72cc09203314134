//! Multivariate gcd by primitive remainder sequences.

use super::field::Field;
use super::modp;
use super::poly::{Poly, Var};
use super::PolyError;

/// Primes `≡ 11 (mod 12)`, so both coefficient fields reduce modulo them.
const CHECK_PRIMES: [u64; 2] = [2_147_483_579, 2_147_483_543];

const CHECK_LINES: [([i64; 3], [i64; 3]); 2] = [([3, -7, 11], [5, 2, -9]), ([-13, 4, 6], [7, -3, 8])];

/// Greatest common divisor, normalised to graded-lex leading coefficient 1.
pub fn gcd<K: Field>(f: &Poly<K>, g: &Poly<K>) -> Result<Poly<K>, PolyError> {
    match (f.is_zero(), g.is_zero()) {
        (true, true) => Err(PolyError::BothZero),
        (true, false) => Ok(g.normalized()),
        (false, true) => Ok(f.normalized()),
        (false, false) => Ok(gcd_nonzero(f, g)),
    }
}

/// One-sided coprimality certificate: `true` means `f` and `g` share no
/// non-constant factor. Restricts both to a line modulo a large prime; if
/// neither image drops degree, any common factor would survive as a common
/// factor of the images.
pub fn certified_coprime<K: Field>(f: &Poly<K>, g: &Poly<K>) -> bool {
    let (Some(df), Some(dg)) = (f.degree(), g.degree()) else {
        return false;
    };
    for &p in &CHECK_PRIMES {
        let Some(ctx) = K::prime_context(p) else { continue };
        for &(pt, dir) in &CHECK_LINES {
            let (Some(a), Some(b)) = (modp::line_image(f, &ctx, pt, dir), modp::line_image(g, &ctx, pt, dir)) else {
                continue;
            };
            if modp::degree(&a) != Some(df as usize) || modp::degree(&b) != Some(dg as usize) {
                continue;
            }
            if modp::gcd(&a, &b, p).len() == 1 {
                return true;
            }
        }
    }
    false
}

pub(crate) fn gcd_nonzero<K: Field>(f: &Poly<K>, g: &Poly<K>) -> Poly<K> {
    if f.is_constant() || g.is_constant() {
        return Poly::one();
    }
    if f.div_exact(g).is_some() {
        return g.normalized();
    }
    if g.div_exact(f).is_some() {
        return f.normalized();
    }
    if certified_coprime(f, g) {
        return Poly::one();
    }
    let v = main_var(f, g);
    let cf = content(f, v);
    let cg = content(g, v);
    let c = gcd_nonzero(&cf, &cg);
    let pf = f.div_exact(&cf).expect("content divides");
    let pg = g.div_exact(&cg).expect("content divides");
    let h = prs_gcd(pf, pg, v);
    (&c * &h).normalized()
}

/// Variable of highest degree across both inputs; ties go to `x` first.
fn main_var<K: Field>(f: &Poly<K>, g: &Poly<K>) -> Var {
    let mut best = Var::X;
    let mut best_deg = 0;
    for v in Var::ALL {
        let d = f.degree_in(v).max(g.degree_in(v));
        if d > best_deg {
            best = v;
            best_deg = d;
        }
    }
    best
}

/// Gcd of the coefficients of `f` viewed in `K[other vars][v]`.
pub(crate) fn content<K: Field>(f: &Poly<K>, v: Var) -> Poly<K> {
    let mut coeffs: Vec<Poly<K>> = f.coeffs_in(v).into_iter().filter(|c| !c.is_zero()).collect();
    coeffs.sort_by_key(|c| (c.degree(), c.term_count()));
    let mut acc = match coeffs.first() {
        Some(c) => c.normalized(),
        None => return Poly::zero(),
    };
    for c in &coeffs[1..] {
        if acc.is_constant() {
            break;
        }
        acc = gcd_nonzero(&acc, c);
    }
    acc
}

/// Primitive part with respect to `v`, normalised.
pub(crate) fn primitive_part<K: Field>(f: &Poly<K>, v: Var) -> Poly<K> {
    let c = content(f, v);
    f.div_exact(&c).expect("content divides").normalized()
}

/// Pseudo-remainder of `a` by `b` in `v`.
fn prem<K: Field>(a: &[Poly<K>], b: &[Poly<K>]) -> Vec<Poly<K>> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Vec<Poly<K>> = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] = &r[shift + j] - &(&lr * bc);
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        while r.last().is_some_and(Poly::is_zero) {
            r.pop();
        }
    }
    r
}

fn prs_gcd<K: Field>(a: Poly<K>, b: Poly<K>, v: Var) -> Poly<K> {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) { (a, b) } else { (b, a) };
    loop {
        if b.degree_in(v) == 0 {
            return Poly::one();
        }
        let r = prem(&a.coeffs_in(v), &b.coeffs_in(v));
        if r.is_empty() {
            return b.normalized();
        }
        let r = Poly::from_coeffs_in(v, &r);
        a = b;
        b = primitive_part(&r, v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{parse_poly, Polynomial};

    fn p(s: &str) -> Polynomial {
        parse_poly(s).unwrap()
    }

    #[test]
    fn constructed_common_factor() {
        assert_eq!(gcd(&p("x^2 - y^2"), &p("(x + y)^2")).unwrap(), p("x + y"));
    }

    #[test]
    fn cpq_generators_are_coprime() {
        assert_eq!(gcd(&p("x^2 + y^2"), &p("y^3 + z^3")).unwrap(), p("1"));
        assert!(certified_coprime(&p("x^2 + y^2"), &p("y^3 + z^3")));
    }

    #[test]
    fn zero_handling() {
        assert_eq!(gcd(&p("2*x + 4*y"), &Polynomial::zero()).unwrap(), p("x + 2*y"));
        assert!(matches!(gcd(&Polynomial::zero(), &Polynomial::zero()), Err(PolyError::BothZero)));
    }

    #[test]
    fn common_factor_times_cofactors() {
        let h = p("x*y - 3*z^2 + x*z");
        let f = p("x^3 - y*z^2 + 2*y^3");
        let g = p("y^2*z - x^3 + 5*x*y*z");
        let got = gcd(&(&f * &h), &(&g * &h)).unwrap();
        assert_eq!(got, h.normalized());
    }

    #[test]
    fn non_homogeneous_inputs() {
        let f = p("(x - 1)*(y^2 + x)*(z + 2)");
        let g = p("(x - 1)*(z + 2)^2*(y - 5)");
        assert_eq!(gcd(&f, &g).unwrap(), p("(x - 1)*(z + 2)").normalized());
    }

    #[test]
    fn prs_path_finds_hidden_factor() {
        // certified_coprime must fail here, forcing the remainder sequence
        let h = p("x^2 + y*z + z^2");
        let f = &h * &p("x + y");
        let g = &h.pow(2) * &p("x - y");
        assert!(!certified_coprime(&f, &g));
        assert_eq!(gcd(&f, &g).unwrap(), h);
    }
}
