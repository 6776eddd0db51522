//! The maps between separable permutations and di-sk trees, and the
//! statistic-moving bijections on trees.

mod eta;
mod left_move;
mod phi;
mod psi;
mod theta;

pub use eta::{eta, eta_inv};
pub use left_move::{l_inv, l_op, l_op_tracked};
pub use phi::{big_phi, phi, phi_inv, phi_power};
pub use psi::{psi, psi_inv};
pub use theta::{theta, theta_inv};
