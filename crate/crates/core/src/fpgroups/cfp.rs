//! Free products of cyclic groups `F_r * Z_{m₁} * … * Z_{m_s}`.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, Integer, One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::presentation::Presentation;
use super::snf::AbelianInvariants;
use super::word::Word;
use super::GroupError;

/// Canonical form: torsion sorted ascending, every entry ≥ 2. Two values are
/// isomorphic exactly when they are equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicFreeProduct {
    free_rank: usize,
    torsion: Vec<u64>,
}

impl CyclicFreeProduct {
    /// Factors `Z_1` are dropped and `Z_0` counts as a free factor.
    pub fn new(free_rank: usize, torsion: impl IntoIterator<Item = u64>) -> Self {
        let mut r = free_rank;
        let mut t = Vec::new();
        for m in torsion {
            match m {
                0 => r += 1,
                1 => {}
                m => t.push(m),
            }
        }
        t.sort_unstable();
        CyclicFreeProduct { free_rank: r, torsion: t }
    }

    pub fn free(r: usize) -> Self {
        Self::new(r, [])
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// `⟨t₁..t_r, c₁..c_s | c_i^{m_i}⟩`.
    pub fn presentation(&self) -> Presentation {
        let r = self.free_rank;
        let mut names: Vec<String> = (1..=r).map(|i| format!("t{i}")).collect();
        names.extend((1..=self.torsion.len()).map(|i| format!("c{i}")));
        let rels = self.torsion.iter().enumerate().map(|(i, &m)| Word::power_of(r + i, m as i64)).collect();
        Presentation::new(names, rels)
    }

    pub fn abelianization(&self) -> AbelianInvariants {
        AbelianInvariants::from_cyclic_orders(self.free_rank, &self.torsion)
    }

    pub fn free_product(&self, other: &Self) -> Self {
        Self::new(self.free_rank + other.free_rank, self.torsion.iter().chain(&other.torsion).copied())
    }
}

impl fmt::Display for CyclicFreeProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("F{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|m| format!("Z{m}")));
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

impl FromStr for CyclicFreeProduct {
    type Err = GroupError;

    /// Factors `F<n>`, `Z<n>`, `Z` and `1` joined by `*`.
    fn from_str(s: &str) -> Result<Self, GroupError> {
        let bad = |t: &str| GroupError::BadInput(format!("bad free factor `{t}`"));
        let mut r = 0;
        let mut torsion = Vec::new();
        for tok in s.split('*').map(str::trim) {
            if tok == "1" {
                continue;
            }
            if tok == "Z" {
                r += 1;
            } else if let Some(n) = tok.strip_prefix('F') {
                r += n.parse::<usize>().map_err(|_| bad(tok))?;
            } else if let Some(n) = tok.strip_prefix('Z') {
                let n = n.trim_start_matches('_').parse::<u64>().map_err(|_| bad(tok))?;
                torsion.push(n);
            } else {
                return Err(bad(tok));
            }
        }
        Ok(Self::new(r, torsion))
    }
}

impl Serialize for CyclicFreeProduct {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CyclicFreeProduct {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelRank {
    /// Rank of the free kernel of `Z_{m₁} * … * Z_{m_s} → Z_m`.
    pub rho: i64,
    /// `m = lcm(m̄)`.
    pub m: u64,
    /// Orbifold Euler characteristic of the line with one puncture and cone points `m̄`.
    pub orbifold_euler: BigRational,
    /// `ρ = 1 − m·χ^orb`.
    pub euler_identity_holds: bool,
}

/// Kernel of `c_i ↦ m/m_i` from `Z_{m₁} * … * Z_{m_s}` onto `Z_m`.
pub fn kernel_rank(ms: &[u64]) -> Result<KernelRank, GroupError> {
    if ms.len() < 2 {
        return Err(GroupError::BadArity);
    }
    if ms.iter().any(|&m| m < 2) {
        return Err(GroupError::BadMultiplicity);
    }
    let m = ms.iter().fold(1u64, |a, &b| a.lcm(&b));
    let one = BigRational::one();
    let big_m = BigRational::from_integer(BigInt::from(m));
    let defect: BigRational = ms.iter().map(|&mi| &one - BigRational::new(1.into(), mi.into())).fold(BigRational::zero(), |a, b| a + b);
    let rho = &one - &big_m + &big_m * &defect;
    let orbifold_euler = &one - &defect;
    let via_euler = &one - &big_m * &orbifold_euler;
    assert!(rho.is_integer(), "kernel rank is an integer");
    Ok(KernelRank {
        rho: rho.to_integer().to_i64().expect("rank fits"),
        m,
        euler_identity_holds: via_euler == rho,
        orbifold_euler,
    })
}
