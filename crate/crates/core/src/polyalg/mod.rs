//! Exact polynomial arithmetic in three homogeneous variables.

mod field;
mod gcd;
mod irreducible;
pub mod modp;
mod parse;
mod poly;
mod sqf;

pub use field::{rat, Field, PrimeContext, QSqrt3, Rational};
pub use gcd::{certified_coprime, gcd};
pub use irreducible::{
    absolute_verdict, conic_determinant, irreducibility_report, is_irreducible_probabilistic, AbsoluteIrreducibility,
    Irreducibility, IrreducibilityReport, SliceWitness,
};
pub use parse::{parse_poly, parse_poly_in};
pub use poly::{Monomial, Poly, Polynomial, Var};
pub use sqf::{certified_squarefree, kth_power_root, squarefree_decomposition, SquarefreeDecomposition};

/// Partial derivative; a thin alias kept for symmetry with the other operations.
pub fn partial_derivative<K: Field>(f: &Poly<K>, v: Var) -> Poly<K> {
    f.derivative(v)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{name}` at byte {offset}")]
    UnknownVariable { name: String, offset: usize },
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("zero or constant input")]
    ZeroInput,
    #[error("every sampled line degenerated")]
    DegenerateSlice,
}
