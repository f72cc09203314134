use std::fmt;
use std::str::FromStr;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::polyalg::Rational;

/// Point `[a:b]` of the projective line, stored as `[a:1]` or `[1:0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    a: Rational,
    b: Rational,
}

impl ProjPoint {
    /// `None` when both coordinates vanish.
    pub fn new(a: Rational, b: Rational) -> Option<Self> {
        if b.is_zero() {
            (!a.is_zero()).then(|| ProjPoint { a: One::one(), b: Zero::zero() })
        } else {
            Some(ProjPoint { a: a / &b, b: One::one() })
        }
    }

    /// `[a:1]`.
    pub fn affine(a: Rational) -> Self {
        ProjPoint { a, b: One::one() }
    }

    /// `[0:1]`, the fiber `{A = 0}`.
    pub fn zero() -> Self {
        Self::affine(Zero::zero())
    }

    /// `[1:0]`, the fiber `{B = 0}`.
    pub fn infinity() -> Self {
        ProjPoint { a: One::one(), b: Zero::zero() }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_infinity(&self) -> bool {
        self.b.is_zero()
    }

    /// Affine coordinate `a/b`, `None` at infinity.
    pub fn value(&self) -> Option<&Rational> {
        (!self.is_infinity()).then_some(&self.a)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.a, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid point `{0}`: expected `a:b` with rationals not both zero")]
pub struct PointParseError(pub String);

impl FromStr for ProjPoint {
    type Err = PointParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || PointParseError(s.to_string());
        let (a, b) = s.split_once(':').ok_or_else(err)?;
        let a: Rational = a.trim().parse().map_err(|_| err())?;
        let b: Rational = b.trim().parse().map_err(|_| err())?;
        ProjPoint::new(a, b).ok_or_else(err)
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ProjPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rat;

    #[test]
    fn canonical_representatives() {
        assert_eq!(ProjPoint::new(rat(2, 1), rat(4, 1)).unwrap(), ProjPoint::affine(rat(1, 2)));
        assert_eq!(ProjPoint::new(rat(-3, 1), rat(0, 1)).unwrap(), ProjPoint::infinity());
        assert!(ProjPoint::new(rat(0, 1), rat(0, 1)).is_none());
    }

    #[test]
    fn text_round_trip() {
        let p: ProjPoint = "-2:4".parse().unwrap();
        assert_eq!(p.to_string(), "-1/2:1");
        assert_eq!(p.to_string().parse::<ProjPoint>().unwrap(), p);
        assert!("0:0".parse::<ProjPoint>().is_err());
        assert!("1".parse::<ProjPoint>().is_err());
    }
}
