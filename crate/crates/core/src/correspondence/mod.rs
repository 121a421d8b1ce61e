//! The Cannings–Holland correspondence between primary decomposable
//! subspaces `V ⊆ Q[z]` and right ideals of the Weyl algebra `A = Q[z, d]`:
//!
//! * `alpha(V) = {D in A : D.Q[z] ⊆ V}`,
//! * `gamma(I) = {D.f : D in I, f in Q[z]}`,
//!
//! together with the operator spaces `D(V, W) = {D : D.V ⊆ W}` and the
//! codimension description of the genus.
//!
//! All membership questions are decided exactly. The key fact is that an
//! operator `F in A` of order `m` maps `T rad(T)^m Q[z]` into `T Q[z]`,
//! so every condition on `F.V` only has to be checked on finitely many
//! polynomials.

mod ideal;
mod slices;

pub use ideal::IdealGens;
pub use slices::{
    alpha_slice, canonical_form, check_p1, codim_invariant, dvw_slice, gamma, maps_into, round_trip_alpha_gamma,
    OpSlice, SliceBounds,
};
