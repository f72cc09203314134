//! Exact screen for multiple fibers away from `[0:1]` and `[1:0]`.
//!
//! A multiple fiber is non-reduced, so its restriction to any line has a
//! repeated root. For a line `L`, let `E_L(a)` be the formal discriminant of
//! `(A − a·B)|_L`; every multiple fiber `[a₀:1]` is a root of every `E_L`.
//! When the gcd of a few `E_L` has no roots besides `a = 0`, no other
//! multiple fiber exists. The converse can fail, so a non-constant gcd is
//! reported as unresolved rather than as a multiple fiber.

use rand::Rng;

use super::Pencil;
use crate::polyalg::{gcd, Field, Monomial, Poly, Var};

#[derive(Clone, Debug, PartialEq)]
pub enum ScreenOutcome {
    /// No multiple fiber over `a ∉ {0, ∞}`.
    Clear { lines: usize },
    /// Candidate values remain; the gcd polynomial in `a` (written in `x`).
    Unresolved { residual: String },
}

/// Univariate polynomial over `K` as coefficients, lowest degree first.
type Uni<K> = Vec<K>;

fn restrict<K: Field>(f: &Poly<K>, pt: [i64; 3], dir: [i64; 3]) -> Uni<K> {
    let d = f.degree().unwrap_or(0) as usize;
    let mut out = vec![K::zero(); d + 1];
    let lin: Vec<[K; 2]> = (0..3).map(|i| [K::from_i64(pt[i]), K::from_i64(dir[i])]).collect();
    // powers[i][e] = (P_i + t Q_i)^e
    let powers: Vec<Vec<Uni<K>>> = lin
        .iter()
        .map(|l| {
            let mut v: Vec<Uni<K>> = vec![vec![K::one()]];
            for e in 1..=d {
                let prev = &v[e - 1];
                let mut next = vec![K::zero(); prev.len() + 1];
                for (j, c) in prev.iter().enumerate() {
                    next[j] = next[j].add(&c.mul(&l[0]));
                    next[j + 1] = next[j + 1].add(&c.mul(&l[1]));
                }
                v.push(next);
            }
            v
        })
        .collect();
    for (m, c) in f.terms() {
        let mut t: Uni<K> = vec![c.clone()];
        for i in 0..3 {
            let pw = &powers[i][m.0[i] as usize];
            let mut n = vec![K::zero(); t.len() + pw.len() - 1];
            for (j, x) in t.iter().enumerate() {
                for (k, y) in pw.iter().enumerate() {
                    n[j + k] = n[j + k].add(&x.mul(y));
                }
            }
            t = n;
        }
        for (j, x) in t.into_iter().enumerate() {
            out[j] = out[j].add(&x);
        }
    }
    out
}

/// Determinant by Gaussian elimination over the field.
fn determinant<K: Field>(mut m: Vec<Vec<K>>) -> K {
    let n = m.len();
    let mut det = K::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return K::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = det.neg();
        }
        let inv = m[col][col].inv();
        det = det.mul(&m[col][col]);
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].mul(&inv);
            for c in col..n {
                let v = m[col][c].mul(&f);
                m[r][c] = m[r][c].sub(&v);
            }
        }
    }
    det
}

/// Sylvester resultant of formal degrees `deg f = n`, `deg g = n − 1`.
fn formal_discriminant<K: Field>(f: &Uni<K>) -> K {
    let n = f.len() - 1;
    if n == 0 {
        return K::one();
    }
    let g: Uni<K> = (1..=n).map(|i| f[i].mul(&K::from_i64(i as i64))).collect();
    let size = 2 * n - 1;
    let mut rows = Vec::with_capacity(size);
    // n − 1 shifted copies of f, n shifted copies of g, highest degree first
    for s in 0..n - 1 {
        let mut row = vec![K::zero(); size];
        for (j, c) in f.iter().rev().enumerate() {
            row[s + j] = c.clone();
        }
        rows.push(row);
    }
    for s in 0..n {
        let mut row = vec![K::zero(); size];
        for (j, c) in g.iter().rev().enumerate() {
            row[s + j] = c.clone();
        }
        rows.push(row);
    }
    determinant(rows)
}

/// Newton interpolation through `(x_i, y_i)`, returned as a polynomial in `x`.
fn interpolate<K: Field>(xs: &[K], ys: &[K]) -> Poly<K> {
    let n = xs.len();
    let mut coef: Vec<K> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = coef[i].sub(&coef[i - 1]).div(&xs[i].sub(&xs[i - j]));
        }
    }
    let x = Poly::<K>::var(Var::X);
    let mut acc = Poly::constant(coef[n - 1].clone());
    for i in (0..n - 1).rev() {
        let shift = &x - &Poly::constant(xs[i].clone());
        acc = &(&acc * &shift) + &Poly::constant(coef[i].clone());
    }
    acc
}

fn discriminant_in_a<K: Field>(pencil: &Pencil<K>, pt: [i64; 3], dir: [i64; 3]) -> Poly<K> {
    let al = restrict(pencil.a(), pt, dir);
    let bl = restrict(pencil.b(), pt, dir);
    let d = pencil.degree() as usize;
    let samples = 2 * d;
    let xs: Vec<K> = (1..=samples as i64).map(K::from_i64).collect();
    let ys: Vec<K> = xs
        .iter()
        .map(|a| {
            let g: Uni<K> = al.iter().zip(&bl).map(|(x, y)| x.sub(&a.mul(y))).collect();
            formal_discriminant(&g)
        })
        .collect();
    interpolate(&xs, &ys)
}

/// Runs the screen on `lines` seeded random lines.
pub fn multiple_fiber_screen<K: Field>(pencil: &Pencil<K>, seed: u64, lines: usize) -> ScreenOutcome {
    let mut rng = crate::rng::seeded(seed, "multiple-fiber-screen");
    let mut acc: Option<Poly<K>> = None;
    for _ in 0..lines.max(1) {
        let pt: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-9..=9));
        let dir: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-9..=9));
        let e = discriminant_in_a(pencil, pt, dir);
        acc = Some(match acc {
            None => e,
            Some(prev) if prev.is_zero() => e,
            Some(prev) if e.is_zero() => prev,
            Some(prev) => gcd(&prev, &e).expect("not both zero"),
        });
        if acc.as_ref().is_some_and(Poly::is_constant) {
            return ScreenOutcome::Clear { lines: lines.max(1) };
        }
    }
    let mut residual = acc.expect("at least one line");
    if residual.is_zero() {
        return ScreenOutcome::Unresolved { residual: "0".into() };
    }
    let x = Poly::<K>::var(Var::X);
    while let Some(q) = residual.div_exact(&x) {
        residual = q;
    }
    debug_assert!(residual.terms().all(|(m, _)| *m == Monomial([m.0[0], 0, 0])));
    if residual.is_constant() {
        ScreenOutcome::Clear { lines: lines.max(1) }
    } else {
        ScreenOutcome::Unresolved { residual: residual.to_string() }
    }
}
