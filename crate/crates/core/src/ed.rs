//! Exact-diagonalization plumbing shared by the single- and double-chain models.
//!
//! Basis states are laid out with the photon number outermost:
//! `index = n · matter_dim + s`.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::gaussian::{heisenberg_product, FluctuationReport, RawMoments};
use crate::lanczos::{lowest_eigenpairs, LanczosOptions};
use crate::sparse::{CsrMatrix, Field};

/// Default ceiling on stored nonzeros of an assembled Hamiltonian.
pub const DEFAULT_BUDGET_NNZ: usize = 50_000_000;

/// Top-Fock-level weight above which photon moments are flagged as cutoff-limited.
pub const TOP_OCCUPANCY_WARN: f64 = 1e-8;

/// Relative splitting below which two sector ground states count as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdOptions {
    pub lanczos: LanczosOptions,
    pub budget_nnz: usize,
}

impl Default for EdOptions {
    fn default() -> Self {
        Self {
            lanczos: LanczosOptions::default(),
            budget_nnz: DEFAULT_BUDGET_NNZ,
        }
    }
}

impl EdOptions {
    pub fn with_seed(seed: u64) -> Self {
        let mut o = Self::default();
        o.lanczos.seed = seed;
        o
    }

    pub fn check_budget(&self, nnz: usize) -> Result<()> {
        if nnz > self.budget_nnz {
            Err(Error::BudgetExceeded {
                required: nnz,
                limit: self.budget_nnz,
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdResult<T> {
    pub ground_energy: f64,
    /// Splitting to the first excited state.
    pub gap01: f64,
    /// Energy of the lowest state of the other parity sector.
    pub partner_energy: f64,
    /// Unit-norm ground state in the full basis.
    pub state: Vec<T>,
    /// ⟨Π⟩
    pub parity: f64,
    pub cutoff_converged: bool,
    pub n_max_used: usize,
    /// Weight of the highest retained Fock level.
    pub top_occupancy: f64,
    pub residual: f64,
}

impl<T> EdResult<T> {
    pub fn cutoff_warning(&self) -> bool {
        self.top_occupancy > TOP_OCCUPANCY_WARN
    }
}

/// Ground state of `h`, solved separately in the two sectors of the diagonal
/// parity `parity[i] = ±1`. An exactly (to [`DEGENERACY_TOL`]) degenerate pair
/// across sectors resolves to the even state.
pub fn solve_by_parity<T: Field>(
    h: &CsrMatrix<T>,
    parity: &[i8],
    photon_levels: usize,
    opts: &EdOptions,
) -> Result<EdResult<T>> {
    opts.check_budget(h.nnz())?;
    let mut candidates: Vec<(f64, i8, usize, Vec<T>, f64)> = Vec::new();
    let mut sectors: Vec<(i8, Vec<usize>)> = Vec::new();
    for sign in [1i8, -1] {
        let idx: Vec<usize> = (0..h.dim()).filter(|&i| parity[i] == sign).collect();
        if !idx.is_empty() {
            sectors.push((sign, idx));
        }
    }
    for (sign, idx) in &sectors {
        let block = h.restrict(idx);
        let k = 2.min(block.dim());
        let pairs = lowest_eigenpairs(&block, k, &opts.lanczos)?;
        for (level, ((value, vector), residual)) in pairs.values.into_iter().zip(pairs.vectors).zip(pairs.residuals).enumerate() {
            let mut full = vec![T::zero(); h.dim()];
            for (&i, v) in idx.iter().zip(vector) {
                full[i] = v;
            }
            candidates.push((value, *sign, level, full, residual));
        }
    }
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0));
    let e0 = candidates[0].0;
    let mut ground = 0;
    if candidates.len() > 1 && candidates[1].1 != candidates[0].1 && candidates[0].1 < 0 {
        let split = candidates[1].0 - e0;
        if split <= DEGENERACY_TOL * e0.abs().max(1.0) {
            ground = 1;
        }
    }
    let gap01 = candidates.get(1).map_or(f64::INFINITY, |c| c.0 - e0);
    let own_sign = candidates[ground].1;
    let partner_energy = candidates
        .iter()
        .filter(|c| c.1 != own_sign)
        .map(|c| c.0)
        .fold(f64::INFINITY, f64::min);
    let (energy, sign, _, state, residual) = candidates.swap_remove(ground);
    let top_occupancy = level_weight(&state, photon_levels, photon_levels - 1);
    Ok(EdResult {
        ground_energy: energy,
        gap01,
        partner_energy,
        state,
        parity: f64::from(sign),
        cutoff_converged: false,
        n_max_used: photon_levels - 1,
        top_occupancy,
        residual,
    })
}

/// Doubling search over the photon cutoff, starting at `seed`: returns the first cutoff
/// whose uncertainty product moves by less than `tol` when the cutoff grows by 25%.
///
/// `solve` maps a cutoff to its solution and uncertainty product.
pub fn doubling_search<S>(seed: usize, tol: f64, mut solve: impl FnMut(usize) -> Result<(S, f64)>) -> Result<(usize, S)> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParams(format!("tolerance must be positive, got {tol}")));
    }
    let mut n_max = seed.max(1);
    let mut current = solve(n_max)?;
    loop {
        let bigger = n_max + n_max.div_ceil(4);
        let next = solve(bigger)?;
        if (next.1 - current.1).abs() < tol {
            return Ok((n_max, current.0));
        }
        n_max *= 2;
        current = if bigger == n_max { next } else { solve(n_max)? };
    }
}

fn level_weight<T: Field>(state: &[T], photon_levels: usize, n: usize) -> f64 {
    let matter = state.len() / photon_levels;
    state[n * matter..(n + 1) * matter].iter().map(|z| z.modulus_squared()).sum()
}

/// ⟨a⟩, ⟨a†a⟩ and ⟨a²⟩ of a state in the photon-outermost layout.
pub fn photon_raw_moments<T: Field>(state: &[T], photon_levels: usize) -> RawMoments {
    let matter = state.len() / photon_levels;
    let mut mean = C64::new(0.0, 0.0);
    let mut number = 0.0;
    let mut square = C64::new(0.0, 0.0);
    for n in 0..photon_levels {
        let row = &state[n * matter..(n + 1) * matter];
        number += n as f64 * row.iter().map(|z| z.modulus_squared()).sum::<f64>();
        if n >= 1 {
            let below = &state[(n - 1) * matter..n * matter];
            let amp = (n as f64).sqrt();
            for (b, r) in below.iter().zip(row) {
                mean += b.to_c64().conj() * r.to_c64() * amp;
            }
        }
        if n >= 2 {
            let below = &state[(n - 2) * matter..(n - 1) * matter];
            let amp = (n as f64 * (n - 1) as f64).sqrt();
            for (b, r) in below.iter().zip(row) {
                square += b.to_c64().conj() * r.to_c64() * amp;
            }
        }
    }
    RawMoments { mean, number, square }
}

pub fn photon_fluctuations<T: Field>(state: &[T], photon_levels: usize) -> Result<FluctuationReport> {
    heisenberg_product(&photon_raw_moments(state, photon_levels))
}

/// Eigenvalues of the photon reduced density matrix, descending.
pub fn photon_spectrum<T: Field>(state: &[T], photon_levels: usize) -> Vec<f64> {
    let matter = state.len() / photon_levels;
    let rho = DMatrix::from_fn(photon_levels, photon_levels, |n, k| {
        let a = &state[n * matter..(n + 1) * matter];
        let b = &state[k * matter..(k + 1) * matter];
        a.iter().zip(b).fold(C64::new(0.0, 0.0), |acc, (x, y)| acc + x.to_c64() * y.to_c64().conj())
    });
    let mut w: Vec<f64> = rho.symmetric_eigenvalues().iter().copied().collect();
    w.sort_by(|a, b| b.total_cmp(a));
    w
}

/// Von Neumann entropy (bits) of the photon reduced density matrix.
pub fn photon_entropy<T: Field>(state: &[T], photon_levels: usize) -> f64 {
    spectrum_entropy(&photon_spectrum(state, photon_levels))
}

/// `-Σ w log₂ w` over weights above 1e-16.
pub fn spectrum_entropy(weights: &[f64]) -> f64 {
    weights.iter().filter(|&&w| w > 1e-16).map(|&w| -w * w.log2()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_state_has_no_entropy() {
        // photon in |1⟩, matter in a superposition
        let levels = 3;
        let mut psi = vec![0.0; levels * 2];
        psi[2] = 0.6;
        psi[3] = 0.8;
        assert!(photon_entropy(&psi, levels).abs() < 1e-12);
        let m = photon_raw_moments(&psi, levels);
        assert!((m.number - 1.0).abs() < 1e-15);
        assert_eq!(m.mean, C64::new(0.0, 0.0));
    }

    #[test]
    fn bell_pair_has_one_bit() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // (|0,↑⟩ + |1,↓⟩)/√2
        let psi = vec![s, 0.0, 0.0, s];
        assert!((photon_entropy(&psi, 2) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn coherent_superposition_moments() {
        // (|0⟩ + |1⟩)/√2 ⊗ |s⟩: ⟨a⟩ = 1/2
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let m = photon_raw_moments(&[s, s, 0.0], 3);
        assert!((m.mean.re - 0.5).abs() < 1e-15);
        assert_eq!(m.square, C64::new(0.0, 0.0));
    }

    #[test]
    fn degenerate_pair_resolves_to_even_state() {
        let h = CsrMatrix::from_triplets(3, vec![(0, 0, 1.0), (1, 1, 1.0), (2, 2, 2.0)]);
        let r = solve_by_parity(&h, &[-1, 1, 1], 1, &EdOptions::default()).unwrap();
        assert_eq!(r.parity, 1.0);
        assert_eq!(r.gap01, 0.0);
        assert!((r.state[1].abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn budget_is_enforced() {
        let h = CsrMatrix::from_triplets(2, vec![(0, 0, 1.0), (1, 1, 1.0)]);
        let opts = EdOptions {
            budget_nnz: 1,
            ..Default::default()
        };
        assert!(matches!(solve_by_parity(&h, &[1, -1], 1, &opts), Err(Error::BudgetExceeded { .. })));
    }
}
