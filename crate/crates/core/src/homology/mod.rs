//! First homology of curve complements from intersection data.
//!
//! With `H₁(X) = 0`, `H₁(X ∖ D) = Z^{r+1} / im j` where `j` sends a class `C`
//! of `H₂(X)` to `Σ (C, D_i) D_i`.

use num::{BigInt, BigRational, Integer, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::fpgroups::AbelianInvariants;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("the ambient surface is not asserted to have trivial first homology")]
    HypothesisNotMet,
    #[error("empty input")]
    EmptyInput,
    #[error("every row of the pairing matrix needs {expected} entries, row {row} has {found}")]
    DimensionMismatch { row: usize, expected: usize, found: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Rows are classes `C` of `H₂(X)`, columns are components `D_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionData {
    pairing: Vec<Vec<i64>>,
    components: usize,
    h1x_is_trivial: bool,
}

impl IntersectionData {
    pub fn new(pairing: Vec<Vec<i64>>, h1x_is_trivial: bool) -> Result<Self, HomologyError> {
        let components = pairing.first().ok_or(HomologyError::EmptyInput)?.len();
        if components == 0 {
            return Err(HomologyError::EmptyInput);
        }
        for (row, r) in pairing.iter().enumerate() {
            if r.len() != components {
                return Err(HomologyError::DimensionMismatch { row, expected: components, found: r.len() });
            }
        }
        Ok(IntersectionData { pairing, components, h1x_is_trivial })
    }

    /// The projective plane: `H₂` is generated by a line, meeting `D_i` in `deg D_i` points.
    pub fn plane(degrees: &[u64]) -> Result<Self, HomologyError> {
        Self::new(vec![degrees.iter().map(|&d| d as i64).collect()], true)
    }

    /// Rows of whitespace- or comma-separated integers; `#` starts a comment.
    /// A line `h1x_trivial: false` drops the ambient hypothesis, which is
    /// otherwise assumed.
    pub fn parse(text: &str) -> Result<Self, HomologyError> {
        let mut rows = Vec::new();
        let mut trivial = true;
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(v) = line.strip_prefix("h1x_trivial:") {
                trivial = v.trim().parse().map_err(|_| HomologyError::Parse { line: i + 1, message: "expected true or false".into() })?;
                continue;
            }
            let row = line
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<i64>().map_err(|_| HomologyError::Parse { line: i + 1, message: format!("bad integer `{t}`") }))
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        Self::new(rows, trivial)
    }

    pub fn h2_rank(&self) -> usize {
        self.pairing.len()
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn pairing(&self) -> &[Vec<i64>] {
        &self.pairing
    }

    pub fn h1x_is_trivial(&self) -> bool {
        self.h1x_is_trivial
    }
}

pub fn h1_from_intersections(d: &IntersectionData) -> Result<AbelianInvariants, HomologyError> {
    if !d.h1x_is_trivial {
        return Err(HomologyError::HypothesisNotMet);
    }
    let rows: Vec<Vec<BigInt>> = d.pairing.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    Ok(AbelianInvariants::cokernel(&rows, d.components))
}

/// Rank of `H₁(X ∖ D; Q)`; only needs `H₁(X; Q) = 0`, which the caller vouches for.
pub fn h1_rational_rank(d: &IntersectionData) -> usize {
    let rows: Vec<Vec<BigInt>> = d.pairing.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    AbelianInvariants::cokernel(&rows, d.components).free_rank
}

/// `Z^{k−1} × Z_d` for `k` plane curves of the given degrees, `d` their gcd.
pub fn h1_p2(degrees: &[u64]) -> Result<AbelianInvariants, HomologyError> {
    if degrees.is_empty() {
        return Err(HomologyError::EmptyInput);
    }
    let d = degrees.iter().fold(0u64, |a, &b| a.gcd(&b));
    let torsion = if d > 1 { vec![d] } else { vec![] };
    Ok(AbelianInvariants::new(degrees.len() - 1, torsion))
}

/// Whether positive integers `m_i` exist with all columns `m_i D_i` equal,
/// i.e. the columns are positive rational multiples of one vector.
pub fn check_numequiv(d: &IntersectionData) -> bool {
    let col = |j: usize| d.pairing.iter().map(move |r| r[j]);
    let reference: Vec<i64> = col(0).collect();
    (1..d.components).all(|j| {
        let mut ratio: Option<BigRational> = None;
        for (a, b) in col(j).zip(reference.iter().copied()) {
            match (a == 0, b == 0) {
                (true, true) => continue,
                (true, false) | (false, true) => return false,
                _ => {}
            }
            let r = BigRational::new(a.into(), b.into());
            if !r.is_positive() || ratio.as_ref().is_some_and(|q| *q != r) {
                return false;
            }
            ratio = Some(r);
        }
        // all-zero columns are proportional to one another only
        ratio.is_some() || reference.iter().all(Zero::is_zero)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(rows: &[&[i64]]) -> IntersectionData {
        IntersectionData::new(rows.iter().map(|r| r.to_vec()).collect(), true).unwrap()
    }

    #[test]
    fn plane_cokernels() {
        assert_eq!(h1_from_intersections(&data(&[&[6]])).unwrap(), AbelianInvariants::new(0, vec![6]));
        assert_eq!(h1_from_intersections(&data(&[&[6, 6]])).unwrap(), AbelianInvariants::new(1, vec![6]));
        assert!(h1_from_intersections(&data(&[&[1]])).unwrap().is_trivial());
        let off = IntersectionData::new(vec![vec![6]], false).unwrap();
        assert_eq!(h1_from_intersections(&off), Err(HomologyError::HypothesisNotMet));
        assert_eq!(h1_rational_rank(&off), 0);
    }

    #[test]
    fn degree_formula() {
        assert_eq!(h1_p2(&[6]).unwrap(), AbelianInvariants::new(0, vec![6]));
        assert_eq!(h1_p2(&[2, 2, 2]).unwrap(), AbelianInvariants::new(2, vec![2]));
        assert!(h1_p2(&[1]).unwrap().is_trivial());
        assert_eq!(h1_p2(&[]), Err(HomologyError::EmptyInput));
        for degs in [vec![6, 6], vec![2, 3], vec![4, 6, 10], vec![3]] {
            assert_eq!(h1_p2(&degs).unwrap(), h1_from_intersections(&IntersectionData::plane(&degs).unwrap()).unwrap());
        }
    }

    #[test]
    fn numerical_equivalence() {
        assert!(check_numequiv(&data(&[&[6, 6]])));
        assert!(check_numequiv(&data(&[&[1], &[1]])));
        assert!(!check_numequiv(&data(&[&[1, 0], &[0, 1]])));
        assert!(check_numequiv(&data(&[&[2, 4], &[1, 2]])));
        assert!(!check_numequiv(&data(&[&[2, -4]])));
    }

    #[test]
    fn file_format() {
        let d = IntersectionData::parse("# plane\n6, 6\n").unwrap();
        assert_eq!(d.pairing(), &[vec![6, 6]]);
        let d = IntersectionData::parse("h1x_trivial: false\n1 0\n0 1\n").unwrap();
        assert!(!d.h1x_is_trivial());
        assert!(matches!(IntersectionData::parse("1 2\n3"), Err(HomologyError::DimensionMismatch { .. })));
        assert!(matches!(IntersectionData::parse("x"), Err(HomologyError::Parse { line: 1, .. })));
    }
}
