//! Orbifold structures `S_{(n+1, m̄)}` on smooth projective curves.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::fpgroups::{CyclicFreeProduct, Presentation, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbifoldError {
    #[error("multiplicities must be at least 2, got {0}")]
    BadMultiplicity(u64),
    #[error("cannot parse orbifold `{0}`; expected e.g. `S(g=0; n+1=2; m=2,3)`")]
    Parse(String),
}

/// Genus `g` curve with `n+1` punctures and cone points of orders `m̄`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OrbifoldCurve {
    genus: usize,
    punctures: usize,
    multiplicities: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbGroup {
    /// At least one puncture: `F_{2g+n} * Z_{m₁} * …`.
    Open(CyclicFreeProduct),
    /// Closed curve: `⟨a, b, μ | μ_j^{m_j}, Π μ_j = Π [a_i, b_i]⟩`.
    Closed(Presentation),
}

impl OrbifoldCurve {
    pub fn new(genus: usize, punctures: usize, multiplicities: Vec<u64>) -> Result<Self, OrbifoldError> {
        if let Some(&m) = multiplicities.iter().find(|&&m| m < 2) {
            return Err(OrbifoldError::BadMultiplicity(m));
        }
        Ok(OrbifoldCurve { genus, punctures, multiplicities })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// `n + 1`, the number of points removed.
    pub fn punctures(&self) -> usize {
        self.punctures
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.multiplicities
    }

    /// `2 − 2g − (n+1) − Σ(1 − 1/m_i)`.
    pub fn euler_char(&self) -> BigRational {
        let int = |x: i64| BigRational::from_integer(BigInt::from(x));
        let base = int(2 - 2 * self.genus as i64 - self.punctures as i64);
        self.multiplicities
            .iter()
            .fold(base, |acc, &m| acc - (BigRational::one() - BigRational::new(BigInt::one(), BigInt::from(m))))
    }

    pub fn is_general_type(&self) -> bool {
        self.euler_char().is_negative()
    }

    /// Adds one puncture.
    pub fn punctured(&self) -> Self {
        OrbifoldCurve { punctures: self.punctures + 1, ..self.clone() }
    }

    pub fn orb_group(&self) -> OrbGroup {
        let g = self.genus;
        if self.punctures >= 1 {
            return OrbGroup::Open(CyclicFreeProduct::new(2 * g + self.punctures - 1, self.multiplicities.iter().copied()));
        }
        let s = self.multiplicities.len();
        let mut names: Vec<String> = (1..=g).map(|i| format!("a{i}")).collect();
        names.extend((1..=g).map(|i| format!("b{i}")));
        names.extend((1..=s).map(|j| format!("mu{j}")));
        let mut rels: Vec<Word> = self.multiplicities.iter().enumerate().map(|(j, &m)| Word::power_of(2 * g + j, m as i64)).collect();
        let mut surface = Word::from_syllables((0..s).map(|j| (2 * g + j, 1)));
        for i in (0..g).rev() {
            surface = surface.mul(&Word::commutator(&Word::gen(g + i), &Word::gen(i)));
        }
        rels.push(surface);
        OrbGroup::Closed(Presentation::new(names, rels))
    }
}

impl fmt::Display for OrbifoldCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ms: Vec<String> = self.multiplicities.iter().map(u64::to_string).collect();
        write!(f, "S(g={}; n+1={}; m={})", self.genus, self.punctures, ms.join(","))
    }
}

impl FromStr for OrbifoldCurve {
    type Err = OrbifoldError;

    /// Fields may come in any order; `m` may be omitted or empty.
    fn from_str(s: &str) -> Result<Self, OrbifoldError> {
        let err = || OrbifoldError::Parse(s.to_string());
        let inner = s.trim().strip_prefix('S').map(str::trim).and_then(|t| t.strip_prefix('(')?.strip_suffix(')')).ok_or_else(err)?;
        let (mut g, mut n, mut m) = (None, None, Vec::new());
        for field in inner.split(';').map(str::trim).filter(|f| !f.is_empty()) {
            let (key, value) = field.split_once('=').ok_or_else(err)?;
            let value = value.trim();
            match key.trim() {
                "g" => g = Some(value.parse().map_err(|_| err())?),
                "n+1" => n = Some(value.parse().map_err(|_| err())?),
                "m" => {
                    m = value
                        .split(',')
                        .map(str::trim)
                        .filter(|v| !v.is_empty())
                        .map(|v| v.parse().map_err(|_| err()))
                        .collect::<Result<_, _>>()?
                }
                _ => return Err(err()),
            }
        }
        Self::new(g.ok_or_else(err)?, n.ok_or_else(err)?, m)
    }
}

/// `1 − m·χ(S(0; 1; m̄))` with `m = lcm(m̄)`; equals the kernel rank of the
/// orbifold group onto `Z_m`.
pub fn kernel_rank_via_euler(ms: &[u64]) -> Result<BigRational, OrbifoldError> {
    let o = OrbifoldCurve::new(0, 1, ms.to_vec())?;
    let m = ms.iter().fold(1u64, |a, &b| num::integer::lcm(a, b));
    Ok(BigRational::one() - BigRational::from_integer(BigInt::from(m)) * o.euler_char())
}

impl OrbGroup {
    pub fn as_free_product(&self) -> Option<&CyclicFreeProduct> {
        match self {
            OrbGroup::Open(g) => Some(g),
            OrbGroup::Closed(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rat;

    fn orb(g: usize, n: usize, m: &[u64]) -> OrbifoldCurve {
        OrbifoldCurve::new(g, n, m.to_vec()).unwrap()
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(orb(0, 1, &[2, 3]).euler_char(), rat(-1, 6));
        assert_eq!(orb(0, 2, &[]).euler_char(), rat(0, 1));
        assert!(orb(0, 1, &[2, 3]).is_general_type());
        assert!(!orb(0, 2, &[]).is_general_type());
        assert!(!orb(0, 1, &[2, 2]).is_general_type());
    }

    #[test]
    fn groups() {
        assert_eq!(orb(0, 1, &[2, 3]).orb_group(), OrbGroup::Open(CyclicFreeProduct::new(0, [2, 3])));
        assert_eq!(orb(0, 4, &[]).orb_group(), OrbGroup::Open(CyclicFreeProduct::free(3)));
        assert_eq!(orb(1, 1, &[]).orb_group(), OrbGroup::Open(CyclicFreeProduct::free(2)));
        let OrbGroup::Closed(p) = orb(1, 0, &[3]).orb_group() else { panic!() };
        assert_eq!((p.generator_count(), p.relators.len()), (3, 2));
    }

    #[test]
    fn text_form() {
        let o: OrbifoldCurve = "S(g=0; n+1=2; m=2,3)".parse().unwrap();
        assert_eq!(o, orb(0, 2, &[2, 3]));
        assert_eq!(o.to_string().parse::<OrbifoldCurve>().unwrap(), o);
        assert_eq!("S(n+1=1; g=1)".parse::<OrbifoldCurve>().unwrap(), orb(1, 1, &[]));
        assert!("S(g=0; n+1=1; m=1)".parse::<OrbifoldCurve>().is_err());
        assert!("T(g=0)".parse::<OrbifoldCurve>().is_err());
    }

    #[test]
    fn euler_matches_kernel_rank() {
        for ms in [[2u64, 3], [2, 2], [4, 6]] {
            let k = crate::fpgroups::kernel_rank(&ms).unwrap();
            assert_eq!(kernel_rank_via_euler(&ms).unwrap(), rat(k.rho, 1));
        }
    }
}
