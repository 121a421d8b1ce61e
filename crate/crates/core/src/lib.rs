//! Exact computations with rational cuspidal curves: the differential genus
//! of subspaces of `Q[z]`, right ideals of the Weyl algebra, Calogero–Moser
//! pairs and monomial curves.
//!
//! ```
//! use diffgenus::subspace::PDSubspace;
//!
//! let v = PDSubspace::from_gaps(&[1, 2, 3]).unwrap();
//! assert_eq!(v.genus().unwrap(), 3);
//! ```

pub mod arith;
pub mod cm;
pub mod correspondence;
pub mod error;
pub mod json;
pub mod monomial;
pub mod subspace;
pub mod suite;
pub mod weyl;

pub use error::{Error, Result};

// The book's code blocks run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/genus.md")]
    mod genus {}
    #[doc = include_str!("../../../book/src/operators.md")]
    mod operators {}
    #[doc = include_str!("../../../book/src/correspondence.md")]
    mod correspondence {}
    #[doc = include_str!("../../../book/src/calogero_moser.md")]
    mod calogero_moser {}
    #[doc = include_str!("../../../book/src/monomial.md")]
    mod monomial {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
