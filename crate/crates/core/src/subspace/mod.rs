//! Primary decomposable subspaces, points of the adelic Grassmannian and
//! the differential genus.

mod functional;
mod grpoint;
mod order;
mod pd;

pub use functional::{Functional, LocalSubspace};
pub use grpoint::GrPoint;
pub use order::OrderSequence;
pub use pd::{LocalBranch, PDSubspace};
