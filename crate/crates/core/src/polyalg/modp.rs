//! Dense univariate polynomials over a prime field `F_p`, `p < 2^32`.
//!
//! Vectors store coefficients lowest degree first with no trailing zeros;
//! the zero polynomial is the empty vector.

use super::field::{Field, PrimeContext};
use super::poly::Poly;

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a unit modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Degree, with `None` for zero.
pub fn degree(a: &[u64]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a nonzero `b`.
pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while r.len() > db {
        let top = r.len() - 1;
        let c = mul_mod(r[top], inv, p);
        if c != 0 {
            let shift = top - db;
            for (j, &y) in b.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - mul_mod(c, y, p)) % p;
            }
        }
        r.pop();
        r = trim(r);
    }
    r
}

pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => {
            let inv = inv_mod(lc, p);
            a.iter().map(|&c| mul_mod(c, inv, p)).collect()
        }
    }
}

/// Monic gcd.
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// `base^e mod m`.
pub fn pow_rem(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `f` of degree `n ≥ 1` is irreducible over `F_p` iff
/// `x^(p^n) ≡ x (mod f)` and `gcd(x^(p^(n/r)) − x, f) = 1` for every prime `r | n`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = match degree(f) {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let f = monic(f, p);
    let x = vec![0, 1];
    // frob[k] = x^(p^k) mod f
    let mut frob = vec![rem(&x, &f, p)];
    for k in 1..=n {
        let next = pow_rem(&frob[k - 1], p, &f, p);
        frob.push(next);
    }
    if !sub(&frob[n], &x, p).is_empty() {
        return false;
    }
    prime_factors(n as u64).into_iter().all(|r| {
        let h = sub(&frob[n / r as usize], &x, p);
        gcd(&f, &h, p) == vec![1]
    })
}

/// Image of `f(P + t·Q)` in `F_p[t]` for integer points `P`, `Q`. `None` when
/// a coefficient of `f` does not reduce modulo `p`.
pub fn line_image<K: Field>(f: &Poly<K>, ctx: &PrimeContext, pt: [i64; 3], dir: [i64; 3]) -> Option<Vec<u64>> {
    let p = ctx.p;
    let red = |n: i64| n.rem_euclid(p as i64) as u64;
    let d = f.degree().unwrap_or(0) as usize;
    // powers[i][e] = (P_i + t Q_i)^e
    let powers: Vec<Vec<Vec<u64>>> = (0..3)
        .map(|i| {
            let lin = trim(vec![red(pt[i]), red(dir[i])]);
            let mut v = vec![vec![1]];
            for e in 1..=d {
                let next = mul(&v[e - 1], &lin, p);
                v.push(next);
            }
            v
        })
        .collect();
    let mut acc: Vec<u64> = Vec::new();
    for (m, c) in f.terms() {
        let c = c.reduce(ctx)?;
        if c == 0 {
            continue;
        }
        let mut t = vec![c];
        for i in 0..3 {
            t = mul(&t, &powers[i][m.0[i] as usize], p);
        }
        let n = acc.len().max(t.len());
        acc.resize(n, 0);
        for (j, y) in t.into_iter().enumerate() {
            acc[j] = (acc[j] + y) % p;
        }
    }
    Some(trim(acc))
}
