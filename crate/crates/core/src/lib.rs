//! Fundamental groups of complements of fiber-type plane curves.

pub mod polyalg;
pub mod rng;
pub mod pencil;
pub mod fpgroups;
pub mod orbifold;
pub mod homology;
pub mod inference;
pub mod corpus;

// The book's chapters run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/pencils.md")]
    mod pencils {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/orbifolds-homology.md")]
    mod orbifolds_homology {}
    #[doc = include_str!("../../../book/src/derivations.md")]
    mod derivations {}
    #[doc = include_str!("../../../book/src/corpus-cli.md")]
    mod corpus_cli {}
}
