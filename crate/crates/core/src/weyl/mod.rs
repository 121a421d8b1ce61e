//! The algebra `Q(z)[d]` of differential operators and its Weyl subalgebra.

mod op;
mod text;
pub mod theta;

pub use op::DiffOp;
pub use theta::{from_theta, theta_form, ThetaOp};
