//! Sparse polynomials in `x`, `y`, `z`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, Rational};

/// One of the three homogeneous coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["x", "y", "z"][self.index()]
    }

    pub fn from_name(s: &str) -> Option<Var> {
        match s {
            "x" => Some(Var::X),
            "y" => Some(Var::Y),
            "z" => Some(Var::Z),
            _ => None,
        }
    }
}

/// Exponent triple `(e_x, e_y, e_z)`, ordered graded-lexicographically with
/// `x > y > z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn var(v: Var) -> Monomial {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }

    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut e = [0; 3];
        for i in 0..3 {
            e[i] = self.0[i].checked_sub(o.0[i])?;
        }
        Some(Monomial(e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with coefficients in `K`. No zero coefficient is ever stored,
/// so structural equality is polynomial equality.
#[derive(Clone, PartialEq)]
pub struct Poly<K: Field> {
    terms: BTreeMap<Monomial, K>,
}

/// Polynomial over the rationals.
pub type Polynomial = Poly<Rational>;

impl<K: Field> Default for Poly<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Field> Poly<K> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn constant(c: K) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v), K::one())
    }

    pub fn monomial(m: Monomial, c: K) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, K)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = old.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms.contains_key(&Monomial::ONE)
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &K)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &K)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> K {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(K::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.0[v.index()]).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.0[v.index()]).min().unwrap_or(0)
    }

    pub fn uses(&self, v: Var) -> bool {
        self.degree_in(v) > 0
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, k)| (*m, k.mul(c))).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Poly { terms: self.terms.iter().map(|(t, k)| (t.mul(m), k.clone())).collect() }
    }

    /// Scalar multiple whose graded-lex leading coefficient is 1.
    pub fn normalized(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> Self {
        let i = v.index();
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut n = *m;
            n.0[i] -= 1;
            out.insert(n, c.mul(&K::from_i64(e as i64)));
        }
        Poly { terms: out }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (dm, dc) = d.leading()?;
        let (dm, dinv) = (*dm, dc.inv());
        if d.term_count() == 1 {
            let mut q = BTreeMap::new();
            for (m, c) in &self.terms {
                q.insert(m.div(&dm)?, c.mul(&dinv));
            }
            return Some(Poly { terms: q });
        }
        let mut r = self.clone();
        let mut q = Self::zero();
        while let Some((rm, rc)) = r.leading() {
            let qm = rm.div(&dm)?;
            let qc = rc.mul(&dinv);
            if rm.degree() < dm.degree() {
                return None;
            }
            for (m, c) in &d.terms {
                r.add_term(m.mul(&qm), c.mul(&qc).neg());
            }
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Coefficients with respect to `v`: entry `i` is the coefficient of `v^i`,
    /// a polynomial free of `v`.
    pub fn coeffs_in(&self, v: Var) -> Vec<Self> {
        let i = v.index();
        let mut out = vec![Self::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let mut n = *m;
            let e = n.0[i] as usize;
            n.0[i] = 0;
            out[e].terms.insert(n, c.clone());
        }
        out
    }

    /// Inverse of [`coeffs_in`](Self::coeffs_in).
    pub fn from_coeffs_in(v: Var, coeffs: &[Self]) -> Self {
        let i = v.index();
        let mut out = Self::zero();
        for (e, c) in coeffs.iter().enumerate() {
            for (m, k) in &c.terms {
                let mut n = *m;
                n.0[i] += e as u32;
                out.add_term(n, k.clone());
            }
        }
        out
    }

    /// Evaluates at a point.
    pub fn eval(&self, pt: &[K; 3]) -> K {
        let mut acc = K::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                for _ in 0..m.0[i] {
                    t = t.mul(&pt[i]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitutes `v ↦ value` and returns a polynomial free of `v`.
    pub fn substitute(&self, v: Var, value: &K) -> Self {
        let i = v.index();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut n = *m;
            let e = n.0[i];
            n.0[i] = 0;
            let mut k = c.clone();
            for _ in 0..e {
                k = k.mul(value);
            }
            out.add_term(n, k);
        }
        out
    }

    /// Homogenises with respect to `z` up to the total degree.
    pub fn homogenize(&self) -> Self {
        let d = self.degree().unwrap_or(0);
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial([m.0[0], m.0[1], m.0[2] + d - m.degree()]), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs<L: Field>(&self, f: impl Fn(&K) -> L) -> Poly<L> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Rational copy when every coefficient is rational.
    pub fn to_rational(&self) -> Option<Polynomial> {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c.as_rational()?);
        }
        Some(out)
    }

    pub fn lift(p: &Polynomial) -> Self {
        p.map_coeffs(|c| K::from_rational(c.clone()))
    }
}

impl<K: Field> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, abs) = c.split_sign();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors = Vec::new();
            if !abs.is_one() || *m == Monomial::ONE {
                factors.push(abs.render().0);
            }
            for v in Var::ALL {
                match m.0[v.index()] {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    e => factors.push(format!("{}^{e}", v.name())),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl<K: Field> fmt::Debug for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<K: Field> Add for &Poly<K> {
    type Output = Poly<K>;
    fn add(self, o: &Poly<K>) -> Poly<K> {
        let (big, small) = if self.terms.len() >= o.terms.len() { (self, o) } else { (o, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<K: Field> Sub for &Poly<K> {
    type Output = Poly<K>;
    fn sub(self, o: &Poly<K>) -> Poly<K> {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.neg());
        }
        out
    }
}

impl<K: Field> Mul for &Poly<K> {
    type Output = Poly<K>;
    fn mul(self, o: &Poly<K>) -> Poly<K> {
        let mut acc: std::collections::HashMap<Monomial, K> = std::collections::HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = m1.mul(m2);
                let t = c1.mul(c2);
                match acc.get_mut(&m) {
                    Some(old) => *old = old.add(&t),
                    None => {
                        acc.insert(m, t);
                    }
                }
            }
        }
        Poly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl<K: Field> Neg for &Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl<K: Field> $tr for Poly<K> {
            type Output = Poly<K>;
            fn $f(self, o: Poly<K>) -> Poly<K> {
                (&self).$f(&o)
            }
        }
        impl<K: Field> $tr<&Poly<K>> for Poly<K> {
            type Output = Poly<K>;
            fn $f(self, o: &Poly<K>) -> Poly<K> {
                (&self).$f(o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<K: Field> Neg for Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_poly;

    fn p(s: &str) -> Polynomial {
        parse_poly(s).unwrap()
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial([2, 0, 0]);
        let b = Monomial([1, 1, 0]);
        let c = Monomial([0, 0, 3]);
        assert!(a > b && c > a);
    }

    #[test]
    fn printing_folds_signs() {
        assert_eq!(p("y*z - x^2").to_string(), "-x^2 + y*z");
        assert_eq!(p("1 - 3/4*z + x^2*y").to_string(), "x^2*y - 3/4*z + 1");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn cube_of_conic_has_four_terms() {
        let c = p("y*z - x^2").pow(3);
        assert_eq!(c, p("y^3*z^3 - 3*x^2*y^2*z^2 + 3*x^4*y*z - x^6"));
        assert_eq!(c.term_count(), 4);
        assert_eq!(c.degree(), Some(6));
    }

    #[test]
    fn derivatives() {
        assert_eq!(p("x^2").derivative(Var::X), p("2*x"));
        assert_eq!(p("y*z - x^2").derivative(Var::Y), p("z"));
        assert!(p("7").derivative(Var::X).is_zero());
    }

    #[test]
    fn exact_division() {
        let f = p("x^2 - y^2");
        assert_eq!(f.div_exact(&p("x + y")), Some(p("x - y")));
        assert_eq!(f.div_exact(&p("x + 2*y")), None);
        assert_eq!(p("x^3*y").div_exact(&p("x*y")), Some(p("x^2")));
    }

    #[test]
    fn coefficient_view_round_trips() {
        let f = p("x^2*y + 3*x*z^2 - y^3 + 2");
        for v in Var::ALL {
            assert_eq!(Polynomial::from_coeffs_in(v, &f.coeffs_in(v)), f);
        }
    }
}
