//! Smith normal form over the integers.

use std::fmt;

use num::{BigInt, Integer, One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

/// Invariant factors of an integer matrix given as rows.
pub fn snf(rows: &[Vec<BigInt>]) -> SnfResult {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let nr = m.len();
    let nc = m.first().map_or(0, Vec::len);
    assert!(m.iter().all(|r| r.len() == nc), "ragged matrix");
    let mut diag = Vec::new();
    for t in 0..nr.min(nc) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let Some((pr, pc)) = smallest(&m, t) else { break };
        m.swap(t, pr);
        for r in m.iter_mut() {
            r.swap(t, pc);
        }
        loop {
            let mut dirty = false;
            for r in t + 1..nr {
                if m[r][t].is_zero() {
                    continue;
                }
                let q = m[r][t].div_floor(&m[t][t]);
                for c in t..nc {
                    let v = &q * &m[t][c];
                    m[r][c] -= v;
                }
                dirty |= !m[r][t].is_zero();
            }
            for c in t + 1..nc {
                if m[t][c].is_zero() {
                    continue;
                }
                let q = m[t][c].div_floor(&m[t][t]);
                for row in m.iter_mut().skip(t) {
                    let v = &q * &row[t];
                    row[c] -= v;
                }
                dirty |= !m[t][c].is_zero();
            }
            if !dirty {
                // pivot must divide the whole trailing block
                let bad = (t + 1..nr).find(|&r| (t + 1..nc).any(|c| !m[r][c].is_multiple_of(&m[t][t])));
                match bad {
                    None => break,
                    Some(r) => {
                        for c in t..nc {
                            let v = m[r][c].clone();
                            m[t][c] += v;
                        }
                        continue;
                    }
                }
            }
            let (pr, pc) = smallest(&m, t).expect("nonzero block");
            m.swap(t, pr);
            for r in m.iter_mut() {
                r.swap(t, pc);
            }
        }
        diag.push(m[t][t].abs());
    }
    let rank = diag.len();
    SnfResult { invariant_factors: diag, rank }
}

fn smallest(m: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (r, row) in m.iter().enumerate().skip(t) {
        for (c, v) in row.iter().enumerate().skip(t) {
            if !v.is_zero() && best.is_none_or(|(br, bc)| v.abs() < m[br][bc].abs()) {
                best = Some((r, c));
            }
        }
    }
    best
}

pub fn snf_i64(rows: &[Vec<i64>]) -> SnfResult {
    let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    snf(&big)
}

/// `Z^free_rank × Z_{d₁} × … × Z_{d_k}` with `1 < d₁ | d₂ | …`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianInvariants {
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Self {
        AbelianInvariants { free_rank, torsion }
    }

    /// Cokernel of the map `Z^rows → Z^cols` whose matrix has the given rows.
    pub fn cokernel(rows: &[Vec<BigInt>], cols: usize) -> Self {
        let s = snf(rows);
        let torsion = s
            .invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .map(|d| u64::try_from(d).expect("torsion factor fits in u64"))
            .collect();
        AbelianInvariants { free_rank: cols - s.rank, torsion }
    }

    /// Invariant factors of `Z^r × Π Z_{m_i}` for arbitrary `m_i ≥ 1`.
    pub fn from_cyclic_orders(free_rank: usize, orders: &[u64]) -> Self {
        let rows: Vec<Vec<BigInt>> = (0..orders.len())
            .map(|i| (0..orders.len()).map(|j| if i == j { BigInt::from(orders[i]) } else { BigInt::zero() }).collect())
            .collect();
        let mut a = Self::cokernel(&rows, orders.len());
        a.free_rank += free_rank;
        a
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" x "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(rows: &[Vec<i64>]) -> Vec<i64> {
        snf_i64(rows).invariant_factors.iter().map(|d| i64::try_from(d).unwrap()).collect()
    }

    #[test]
    fn coprime_diagonal_merges() {
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
    }

    #[test]
    fn row_of_sixes() {
        assert_eq!(factors(&[vec![6, 6]]), vec![6]);
        let a = AbelianInvariants::cokernel(&[vec![6.into(), 6.into()]], 2);
        assert_eq!(a, AbelianInvariants::new(1, vec![6]));
        assert_eq!(a.to_string(), "Z x Z6");
    }

    #[test]
    fn base_case_matrix() {
        // (p 0 / qa qb) with p=2, q=3, a=0, b=1
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
    }

    #[test]
    fn divisibility_repair() {
        assert_eq!(factors(&[vec![2, 0, 0], vec![0, 4, 0], vec![0, 0, 6]]), vec![2, 2, 12]);
        assert_eq!(factors(&[vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
        assert_eq!(factors(&[vec![4, 6], vec![6, 9]]), vec![1]);
    }
}
