//! Finitely presented groups.

mod cfp;
mod fibration;
mod presentation;
mod presn0;
mod rewrite;
mod snf;
mod todd_coxeter;
mod word;

use num::BigInt;
use thiserror::Error;

pub use cfp::{kernel_rank, CyclicFreeProduct, KernelRank};
pub use fibration::{fibration_presentation, omega_presentation, Monodromy};
pub use presentation::Presentation;
pub use presn0::{reduce_presn0, Presn0Group, Presn0Reduction};
pub use rewrite::{reidemeister_schreier, reidemeister_schreier_raw, reidemeister_schreier_table, tietze_simplify};
pub use snf::{snf, snf_i64, AbelianInvariants, SnfResult};
pub use todd_coxeter::{todd_coxeter, CosetTable, EnumerationStatus};
pub use word::{Word, WordDisplay};

/// Default coset cap; every enumeration the library itself runs closes far below it.
pub const DEFAULT_COSET_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("the map onto the cyclic group is not surjective")]
    NotSurjective,
    #[error("at least two multiplicities are required")]
    BadArity,
    #[error("multiplicities must be at least 2")]
    BadMultiplicity,
    #[error("{0}")]
    BadInput(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("monodromy words must only use fiber generators")]
    MonodromyUsesBaseGenerators,
}

/// Exponent-sum matrix of the relators.
pub fn relation_matrix(p: &Presentation) -> Vec<Vec<BigInt>> {
    p.relators
        .iter()
        .map(|r| (0..p.generator_count()).map(|g| BigInt::from(r.exponent_sum(g))).collect())
        .collect()
}

pub fn abelianize(p: &Presentation) -> AbelianInvariants {
    AbelianInvariants::cokernel(&relation_matrix(p), p.generator_count())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelianizations() {
        let p = Presentation::parse("gens: a b\na^2\nb^3").unwrap();
        assert_eq!(abelianize(&p), AbelianInvariants::new(0, vec![6]));
        let free = Presentation::parse("gens: a b").unwrap();
        assert_eq!(abelianize(&free), AbelianInvariants::new(2, vec![]));
        let q = Presentation::parse("gens: g1 g2\ng1^2 g2^3").unwrap();
        assert_eq!(abelianize(&q), AbelianInvariants::new(1, vec![]));
    }
}
