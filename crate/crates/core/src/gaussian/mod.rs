//! Entropy and uncertainty machinery for ground states of quadratic bosonic Hamiltonians.

mod entropy;
mod form;
mod moments;
mod symplectic;

pub use entropy::{entropy_from_hp, DEFAULT_RENYI_ORDERS, pseudo_energy, renyi_entropy, DegeneracyOffset, EntropyReport, RenyiOrder};
pub use form::{PhaseSpaceForm, QuadraticForm};
pub use moments::{
    heisenberg_product, photon_moments_from_solution, raw_moments_from_solution, FluctuationReport, RawMoments,
    HEISENBERG_TOL,
};
pub use symplectic::{symplectic_diagonalize, symplectic_spectrum, BogoliubovSolution, INSTABILITY_TOL, ZERO_MODE_TOL};
