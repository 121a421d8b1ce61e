//! Exact arithmetic: rationals, polynomials, rational functions, linear algebra.

pub mod linalg;
mod poly;
mod ratfun;
pub mod residue;
mod scalar;

pub use poly::Poly;
pub use ratfun::RatFun;
pub use scalar::Scalar;
