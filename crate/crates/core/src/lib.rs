//! Heisenberg uncertainty product and photon entanglement entropy for the
//! ground states of the Dicke and double-quadrature Dicke models, both in the
//! thermodynamic limit (Bogoliubov solutions) and at finite size (sparse exact
//! diagonalization).

pub mod error;
pub mod fit;
pub mod gaussian;
pub mod holstein;
pub mod lanczos;
pub mod sparse;
pub mod dicke;
pub mod ed;
pub mod double;

pub use error::{Error, Result};
