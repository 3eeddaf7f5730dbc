//! Finite-N exact diagonalization with two equal-size chains.
//!
//! The `i(a - a†)` coupling makes the Hamiltonian complex Hermitian in the
//! Fock ⊗ Dicke ⊗ Dicke basis; it is solved as such. The two Z₂ symmetries
//! are antiunitary there (complex conjugation times a diagonal sign), while
//! their product, the total excitation parity, is diagonal and is used to split
//! the eigenproblem.

use num_complex::Complex64 as C64;

use super::{default_branches, DoubleDickeParams};
use crate::holstein::Branch;
use crate::dicke::ladder;
use crate::ed::{self, EdOptions, EdResult};
use crate::error::{Error, Result};
use crate::gaussian::FluctuationReport;
use crate::sparse::CsrMatrix;

/// Diagonal plus four ladder products per chain.
pub const DOUBLE_NNZ_PER_ROW: usize = 9;

/// State `(n, k_C, k_I)` sits at `(n (N + 1) + k_C)(N + 1) + k_I`, with `k = m + N/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DoubleEdBasis {
    pub n_spins: usize,
    pub n_max: usize,
}

impl DoubleEdBasis {
    pub fn new(n_spins: usize, n_max: usize) -> Result<Self> {
        if n_spins == 0 {
            return Err(Error::InvalidParams("need at least one spin per chain".into()));
        }
        if n_max < 1 {
            return Err(Error::Cutoff(format!("photon cutoff must be at least 1, got {n_max}")));
        }
        Ok(Self { n_spins, n_max })
    }

    pub fn spin_dim(&self) -> usize {
        self.n_spins + 1
    }

    pub fn matter_dim(&self) -> usize {
        self.spin_dim() * self.spin_dim()
    }

    pub fn dim(&self) -> usize {
        (self.n_max + 1) * self.matter_dim()
    }

    pub fn estimated_nnz(&self) -> usize {
        DOUBLE_NNZ_PER_ROW * self.dim()
    }

    pub fn index(&self, n: usize, kc: usize, ki: usize) -> usize {
        (n * self.spin_dim() + kc) * self.spin_dim() + ki
    }

    pub fn decompose(&self, index: usize) -> (usize, usize, usize) {
        let s = self.spin_dim();
        (index / (s * s), (index / s) % s, index % s)
    }

    fn signs(&self, f: impl Fn(usize, usize, usize) -> usize) -> Vec<i8> {
        (0..self.dim())
            .map(|i| {
                let (n, kc, ki) = self.decompose(i);
                if f(n, kc, ki) % 2 == 0 {
                    1
                } else {
                    -1
                }
            })
            .collect()
    }

    /// Total excitation parity `(-1)^{n + m_C + m_I + N}`.
    pub fn parity(&self) -> Vec<i8> {
        self.signs(|n, kc, ki| n + kc + ki)
    }

    /// Diagonal part of the antiunitary T_C = R_C K.
    pub fn t_c_signs(&self) -> Vec<i8> {
        self.signs(|n, kc, _| n + kc)
    }

    /// Diagonal part of the antiunitary T_I = R_I K.
    pub fn t_i_signs(&self) -> Vec<i8> {
        self.signs(|_, _, ki| ki)
    }
}

pub fn build_double_hamiltonian(p: &DoubleDickeParams, basis: &DoubleEdBasis) -> Result<CsrMatrix<C64>> {
    p.validate()?;
    let n_spins = basis.n_spins;
    let j = n_spins as f64 / 2.0;
    let root_n = (n_spins as f64).sqrt();
    let (gc, gi) = (p.lambda_c / root_n, p.lambda_i / root_n);
    let mut t = Vec::with_capacity(basis.estimated_nnz());
    let real = |x: f64| C64::new(x, 0.0);
    for n in 0..=basis.n_max {
        for kc in 0..=n_spins {
            for ki in 0..=n_spins {
                let i = basis.index(n, kc, ki);
                let diag = p.omega_cav * n as f64 + p.omega0_c * (kc as f64 - j) + p.omega0_i * (ki as f64 - j);
                t.push((i, i, real(diag)));
                if n == basis.n_max {
                    continue;
                }
                let a_up = ((n + 1) as f64).sqrt();
                // (λ_C/√N) a† (J₊ + J₋)_C, and its conjugate
                if gc != 0.0 {
                    for (kc2, l) in neighbours(n_spins, kc) {
                        let f = basis.index(n + 1, kc2, ki);
                        let v = real(gc * a_up * l);
                        t.push((f, i, v));
                        t.push((i, f, v));
                    }
                }
                // -i (λ_I/√N) a† (J₊ + J₋)_I, and its conjugate
                if gi != 0.0 {
                    for (ki2, l) in neighbours(n_spins, ki) {
                        let f = basis.index(n + 1, kc, ki2);
                        let v = C64::new(0.0, -gi * a_up * l);
                        t.push((f, i, v));
                        t.push((i, f, v.conj()));
                    }
                }
            }
        }
    }
    Ok(CsrMatrix::from_triplets(basis.dim(), t))
}

/// `(k', ⟨k'|J₊ + J₋|k⟩)` for the nonzero matrix elements.
fn neighbours(n_spins: usize, k: usize) -> impl Iterator<Item = (usize, f64)> {
    let up = (k < n_spins).then(|| (k + 1, ladder(n_spins, k)));
    let down = (k > 0).then(|| (k - 1, ladder(n_spins, k - 1)));
    up.into_iter().chain(down)
}

/// Largest violations of `[H, Π] = 0`, `T_C H T_C⁻¹ = H` and `T_I H T_I⁻¹ = H`.
pub fn symmetry_defects(h: &CsrMatrix<C64>, basis: &DoubleEdBasis) -> (f64, f64, f64) {
    let f = |s: Vec<i8>| s.into_iter().map(f64::from).collect::<Vec<_>>();
    let (pi, rc, ri) = (f(basis.parity()), f(basis.t_c_signs()), f(basis.t_i_signs()));
    (
        h.diagonal_similarity_defect(&pi, &pi, false),
        h.diagonal_similarity_defect(&rc, &rc, true),
        h.diagonal_similarity_defect(&ri, &ri, true),
    )
}

pub fn solve_double_ed(p: &DoubleDickeParams, basis: &DoubleEdBasis, opts: &EdOptions) -> Result<EdResult<C64>> {
    opts.check_budget(basis.estimated_nnz())?;
    let h = build_double_hamiltonian(p, basis)?;
    ed::solve_by_parity(&h, &basis.parity(), basis.n_max + 1, opts)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DoubleEdReport {
    pub n_max: usize,
    pub result: EdResult<C64>,
    pub fluctuations: FluctuationReport,
    /// Photon entanglement entropy (bits), without any degeneracy offset.
    pub entropy: f64,
}

pub fn double_ed(p: &DoubleDickeParams, basis: &DoubleEdBasis, opts: &EdOptions) -> Result<DoubleEdReport> {
    let result = solve_double_ed(p, basis, opts)?;
    let fluctuations = ed::photon_fluctuations(&result.state, basis.n_max + 1)?;
    let entropy = ed::photon_entropy(&result.state, basis.n_max + 1);
    Ok(DoubleEdReport {
        n_max: basis.n_max,
        result,
        fluctuations,
        entropy,
    })
}

fn double_cutoff_seed(p: &DoubleDickeParams, n_spins: usize) -> usize {
    let shift = |lambda: f64, omega0: f64, broken: bool| {
        if !broken {
            return 0.0;
        }
        let mu = p.omega_cav * omega0 / (4.0 * lambda * lambda);
        lambda * (1.0 - mu * mu).max(0.0).sqrt() / p.omega_cav
    };
    let (bc, bi) = default_branches(p);
    let a2 = shift(p.lambda_c, p.omega0_c, bc != Branch::Unbroken).powi(2)
        + shift(p.lambda_i, p.omega0_i, bi != Branch::Unbroken).powi(2);
    let mean = n_spins as f64 * a2;
    ((mean + 4.0 * (mean + 1.0).sqrt() + 4.0).ceil() as usize).max(8)
}

/// ED with the photon cutoff chosen by the same doubling search as the single-chain model.
pub fn converge_double_cutoff(p: &DoubleDickeParams, n_spins: usize, tol: f64, opts: &EdOptions) -> Result<DoubleEdReport> {
    p.validate()?;
    let seed = if p.lambda_c == 0.0 && p.lambda_i == 0.0 { 1 } else { double_cutoff_seed(p, n_spins) };
    let run = |n_max: usize| -> Result<(DoubleEdReport, f64)> {
        let r = double_ed(p, &DoubleEdBasis::new(n_spins, n_max)?, opts)?;
        let hp = r.fluctuations.hp;
        Ok((r, hp))
    };
    if seed == 1 {
        let (mut r, _) = run(1)?;
        r.result.cutoff_converged = true;
        return Ok(r);
    }
    let (_, mut report) = ed::doubling_search(seed, tol, run)?;
    report.result.cutoff_converged = true;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dicke::{self, DickeParams, EdBasis};

    #[test]
    fn basis_bijection() {
        let b = DoubleEdBasis::new(3, 4).unwrap();
        for i in 0..b.dim() {
            let (n, kc, ki) = b.decompose(i);
            assert_eq!(b.index(n, kc, ki), i);
        }
    }

    #[test]
    fn hermitian_and_symmetric() {
        let b = DoubleEdBasis::new(4, 10).unwrap();
        let h = build_double_hamiltonian(&DoubleDickeParams::resonant(0.4, 0.6), &b).unwrap();
        assert_eq!(h.hermiticity_defect(), 0.0);
        assert!(h.max_row_nnz() <= DOUBLE_NNZ_PER_ROW);
        assert_eq!(symmetry_defects(&h, &b), (0.0, 0.0, 0.0));
    }

    #[test]
    fn decoupled_ground_state() {
        let r = converge_double_cutoff(&DoubleDickeParams::resonant(0.0, 0.0), 4, 1e-8, &EdOptions::default()).unwrap();
        assert_eq!(r.fluctuations.hp, 0.5);
        assert!(r.entropy.abs() < 1e-12);
        assert!((r.result.ground_energy + 4.0).abs() < 1e-12);
    }

    #[test]
    fn idle_second_chain_reproduces_single_chain_spectrum() {
        // with λ_I = 0 chain I only shifts the energy by -ω0_I N/2
        let p = DoubleDickeParams::resonant(0.4, 0.0);
        let r2 = solve_double_ed(&p, &DoubleEdBasis::new(4, 20).unwrap(), &EdOptions::default()).unwrap();
        let r1 = dicke::solve_ed(&DickeParams::resonant(0.4), &EdBasis::new(4, 20).unwrap(), &EdOptions::default()).unwrap();
        assert!((r2.ground_energy - (r1.ground_energy - 2.0)).abs() < 1e-10);
    }

    #[test]
    fn matches_dense_diagonalization() {
        let p = DoubleDickeParams::resonant(0.3, 0.45);
        let b = DoubleEdBasis::new(2, 12).unwrap();
        let h = build_double_hamiltonian(&p, &b).unwrap();
        let exact = h.to_dense().symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min);
        let r = solve_double_ed(&p, &b, &EdOptions::default()).unwrap();
        assert!((r.ground_energy - exact).abs() < 1e-10);
    }
}
