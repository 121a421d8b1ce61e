//! Calogero–Moser pairs: matrices `(X, Y)` with `[X, Y] + I` of rank one,
//! the flows acting on them, and the fractional ideal of the Weyl algebra
//! attached to each pair.

mod matrix;
mod pair;
mod sample;

pub use matrix::Matrix;
pub use pair::{
    conjugate, factor_rank_one, fourier_flow, genus_of_pair, ideal_representative, kp_equivariance_check, kp_flow,
    standard_pair, verify_rank_one, CMPair, RankOneFactor,
};
pub use sample::random_pair;
