//! Coefficient fields.
//!
//! Everything in the crate runs over [`Rational`]. A single quadratic
//! extension, [`QSqrt3`], exists so that equations carrying `√3` can be
//! stored exactly; it is written `u` in polynomial text.

use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Reduction data for one prime: the modulus and, for extension fields, the
/// image of the adjoined root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeContext {
    pub p: u64,
    pub sqrt3: Option<u64>,
}

/// A field of characteristic zero that polynomials can be built over.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
    fn from_rational(r: Rational) -> Self;
    fn from_i64(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }
    /// Symbols other than `x`, `y`, `z` that denote field constants.
    fn named_constant(name: &str) -> Option<Self>;
    /// Reduction context for the prime `p`, or `None` when this field has no
    /// degree-one prime above `p` that we know how to use.
    fn prime_context(p: u64) -> Option<PrimeContext>;
    /// Image modulo the prime; `None` when a denominator is divisible by it.
    fn reduce(&self, ctx: &PrimeContext) -> Option<u64>;
    /// Splits off a sign so that printing can fold minus signs into `-` operators.
    fn split_sign(&self) -> (bool, Self);
    /// Text for a non-negative (per `split_sign`) coefficient. The flag is
    /// true when the text must be parenthesised before a `*`.
    fn render(&self) -> (String, bool);
    fn as_rational(&self) -> Option<Rational>;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn named_constant(_name: &str) -> Option<Self> {
        None
    }
    fn prime_context(p: u64) -> Option<PrimeContext> {
        Some(PrimeContext { p, sqrt3: None })
    }
    fn reduce(&self, ctx: &PrimeContext) -> Option<u64> {
        reduce_rational(self, ctx.p)
    }
    fn split_sign(&self) -> (bool, Self) {
        (self.is_negative(), self.abs())
    }
    fn render(&self) -> (String, bool) {
        (self.to_string(), false)
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

pub(crate) fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let m = n.mod_floor(&BigInt::from(p));
    // mod_floor of a non-negative modulus is in [0, p)
    u64::try_from(m).expect("residue fits in u64")
}

pub(crate) fn reduce_rational(r: &Rational, p: u64) -> Option<u64> {
    let den = reduce_bigint(r.denom(), p);
    if den == 0 {
        return None;
    }
    let num = reduce_bigint(r.numer(), p);
    Some(crate::polyalg::modp::mul_mod(num, crate::polyalg::modp::inv_mod(den, p), p))
}

/// Element `a + b·√3` of the real quadratic field Q(√3).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSqrt3 {
    pub a: Rational,
    pub b: Rational,
}

impl QSqrt3 {
    pub fn new(a: Rational, b: Rational) -> Self {
        QSqrt3 { a, b }
    }

    /// Field norm `a² − 3b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(3.into()) * &self.b * &self.b
    }
}

impl fmt::Debug for QSqrt3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*u", self.a, self.b)
    }
}

impl Field for QSqrt3 {
    fn zero() -> Self {
        QSqrt3::new(Zero::zero(), Zero::zero())
    }
    fn one() -> Self {
        QSqrt3::new(One::one(), Zero::zero())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn is_one(&self) -> bool {
        One::is_one(&self.a) && Zero::is_zero(&self.b)
    }
    fn add(&self, o: &Self) -> Self {
        QSqrt3::new(&self.a + &o.a, &self.b + &o.b)
    }
    fn sub(&self, o: &Self) -> Self {
        QSqrt3::new(&self.a - &o.a, &self.b - &o.b)
    }
    fn mul(&self, o: &Self) -> Self {
        let three = Rational::from_integer(3.into());
        QSqrt3::new(
            &self.a * &o.a + three * &self.b * &o.b,
            &self.a * &o.b + &self.b * &o.a,
        )
    }
    fn neg(&self) -> Self {
        QSqrt3::new(-&self.a, -&self.b)
    }
    fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!Zero::is_zero(&n), "inverse of zero");
        QSqrt3::new(&self.a / &n, -&self.b / &n)
    }
    fn from_rational(r: Rational) -> Self {
        QSqrt3::new(r, Zero::zero())
    }
    fn named_constant(name: &str) -> Option<Self> {
        (name == "u").then(|| QSqrt3::new(Zero::zero(), One::one()))
    }
    fn prime_context(p: u64) -> Option<PrimeContext> {
        // p ≡ 3 (mod 4) gives the square root by a single exponentiation.
        if p < 5 || p % 4 != 3 {
            return None;
        }
        let s = crate::polyalg::modp::pow_mod(3, (p + 1) / 4, p);
        (crate::polyalg::modp::mul_mod(s, s, p) == 3 % p).then_some(PrimeContext { p, sqrt3: Some(s) })
    }
    fn reduce(&self, ctx: &PrimeContext) -> Option<u64> {
        let s = ctx.sqrt3?;
        let a = reduce_rational(&self.a, ctx.p)?;
        let b = reduce_rational(&self.b, ctx.p)?;
        Some((a + crate::polyalg::modp::mul_mod(b, s, ctx.p)) % ctx.p)
    }
    fn split_sign(&self) -> (bool, Self) {
        let neg = if Zero::is_zero(&self.a) { self.b.is_negative() } else { self.a.is_negative() };
        if neg {
            (true, Field::neg(self))
        } else {
            (false, self.clone())
        }
    }
    fn render(&self) -> (String, bool) {
        match (Zero::is_zero(&self.a), Zero::is_zero(&self.b)) {
            (_, true) => (self.a.to_string(), false),
            (true, false) => {
                if One::is_one(&self.b) {
                    ("u".to_string(), false)
                } else {
                    (format!("{}*u", self.b), false)
                }
            }
            (false, false) => {
                let sign = if self.b.is_negative() { '-' } else { '+' };
                let bb = self.b.abs();
                let bpart = if One::is_one(&bb) { "u".to_string() } else { format!("{bb}*u") };
                (format!("({} {} {})", self.a, sign, bpart), true)
            }
        }
    }
    fn as_rational(&self) -> Option<Rational> {
        Zero::is_zero(&self.b).then(|| self.a.clone())
    }
}

/// Shorthand for building small rationals in tests and tables.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
