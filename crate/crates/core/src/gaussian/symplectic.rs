//! Bogoliubov (symplectic) diagonalization of quadratic bosonic forms.
//!
//! The linear terms are removed first by completing the square. The remaining
//! phase-space stiffness `K` must be positive definite for a ground state to
//! exist. The dynamical matrix `i K J` is then similar to the Hermitian matrix
//! `M = K^{1/2} (iJ) K^{1/2}`, whose eigenvalues come in pairs `±ν`. An
//! eigenvector `z` of `M` with eigenvalue `-ν` gives the annihilator
//! `e = c·r` with `c = K^{1/2} z / √ν`, which is automatically normalized to
//! `[e, e†] = 1`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64 as C64;

use super::form::QuadraticForm;
use crate::error::{Error, Result};

/// Stiffness eigenvalues below `-INSTABILITY_TOL * scale` mean there is no ground state.
pub const INSTABILITY_TOL: f64 = 1e-9;
/// Stiffness eigenvalues within this relative band of zero are treated as a gapless mode.
pub const ZERO_MODE_TOL: f64 = 1e-13;

/// Polariton decomposition of a quadratic form.
///
/// Row `k` of the transform holds `(u_k, v_k)` with
/// `e_k = Σ_i u_ki (a_i - ⟨a_i⟩) + v_ki (a_i† - ⟨a_i†⟩)`; rows `n..2n` are the
/// conjugate rows for `e_k†`.
#[derive(Debug, Clone)]
pub struct BogoliubovSolution {
    pub gaps: Vec<f64>,
    pub transform: DMatrix<C64>,
    pub displacements: DVector<C64>,
    pub ground_energy: f64,
}

impl BogoliubovSolution {
    pub fn n_modes(&self) -> usize {
        self.gaps.len()
    }

    pub fn u(&self, k: usize, i: usize) -> C64 {
        self.transform[(k, i)]
    }

    pub fn v(&self, k: usize, i: usize) -> C64 {
        self.transform[(k, self.n_modes() + i)]
    }

    /// `(u_k, v_k)` packed as `(u_k0 … u_k,n-1, v_k0 … v_k,n-1)`.
    pub fn polariton_row(&self, k: usize) -> Vec<C64> {
        self.transform.row(k).iter().copied().collect()
    }

    /// Inverse transform `η T† η` with `η = diag(1, -1)`.
    pub fn inverse_transform(&self) -> DMatrix<C64> {
        let n = self.n_modes();
        let mut inv = self.transform.adjoint();
        for i in 0..2 * n {
            for j in 0..2 * n {
                if (i < n) != (j < n) {
                    inv[(i, j)] = -inv[(i, j)];
                }
            }
        }
        inv
    }

    /// Largest deviation of `T η T† = η` from exactness.
    pub fn symplectic_defect(&self) -> f64 {
        let n = self.n_modes();
        let eta = DMatrix::from_fn(2 * n, 2 * n, |i, j| {
            if i != j {
                C64::new(0.0, 0.0)
            } else if i < n {
                C64::new(1.0, 0.0)
            } else {
                C64::new(-1.0, 0.0)
            }
        });
        let lhs = &self.transform * &eta * self.transform.adjoint();
        (lhs - eta).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

fn i_symplectic(n: usize) -> DMatrix<C64> {
    // iJ with J = [[0, I], [-I, 0]]
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        m[(i, n + i)] = C64::new(0.0, 1.0);
        m[(n + i, i)] = C64::new(0.0, -1.0);
    }
    m
}

pub fn symplectic_diagonalize(form: &QuadraticForm) -> Result<BogoliubovSolution> {
    let n = form.n_modes();
    let ps = form.phase_space();
    let eig = SymmetricEigen::new(ps.stiffness.clone());
    let scale = eig.eigenvalues.iter().fold(0.0_f64, |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE);
    let lowest = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if lowest < -INSTABILITY_TOL * scale {
        return Err(Error::Instability(format!(
            "phase-space stiffness has eigenvalue {lowest:e} (scale {scale:e})"
        )));
    }
    if lowest <= ZERO_MODE_TOL * scale {
        return Err(Error::ZeroMode { stiffness: lowest });
    }

    let q = &eig.eigenvectors;
    let sqrt_k = q * DMatrix::from_diagonal(&eig.eigenvalues.map(f64::sqrt)) * q.transpose();
    let k_inv = q * DMatrix::from_diagonal(&eig.eigenvalues.map(|x| 1.0 / x)) * q.transpose();
    let sqrt_kc = sqrt_k.map(|x| C64::new(x, 0.0));

    let m = &sqrt_kc * i_symplectic(n) * &sqrt_kc;
    let m = (&m + m.adjoint()).scale(0.5);
    let meig = SymmetricEigen::new(m);

    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&i, &j| meig.eigenvalues[i].total_cmp(&meig.eigenvalues[j]));
    // The n most negative eigenvalues are -ν_k; walk them from the smallest ν upward.
    let negatives: Vec<usize> = order[..n].iter().rev().copied().collect();

    let sqrt2 = std::f64::consts::SQRT_2;
    let mut gaps = Vec::with_capacity(n);
    let mut transform = DMatrix::zeros(2 * n, 2 * n);
    for (k, &col) in negatives.iter().enumerate() {
        let nu = -meig.eigenvalues[col];
        if nu <= 0.0 {
            return Err(Error::Instability(format!("non-positive symplectic eigenvalue {nu:e}")));
        }
        let z = meig.eigenvectors.column(col);
        let c = (&sqrt_kc * z).unscale(nu.sqrt());
        let mut u: Vec<C64> = (0..n).map(|i| (c[i] - C64::i() * c[n + i]) / sqrt2).collect();
        let mut v: Vec<C64> = (0..n).map(|i| (c[i] + C64::i() * c[n + i]) / sqrt2).collect();
        // Fix the free phase: the dominant u-component is real and positive.
        let pivot = (0..n).max_by(|&i, &j| u[i].norm().total_cmp(&u[j].norm())).unwrap_or(0);
        if u[pivot].norm() > 0.0 {
            let phase = u[pivot].conj() / u[pivot].norm();
            u.iter_mut().for_each(|x| *x *= phase);
            v.iter_mut().for_each(|x| *x *= phase);
        }
        for i in 0..n {
            transform[(k, i)] = u[i];
            transform[(k, n + i)] = v[i];
            transform[(n + k, i)] = v[i].conj();
            transform[(n + k, n + i)] = u[i].conj();
        }
        gaps.push(nu);
    }

    let mean_r = -(&k_inv * &ps.linear);
    let displacements = DVector::from_fn(n, |i, _| C64::new(mean_r[i], mean_r[n + i]) / sqrt2);
    let shift_energy = 0.5 * ps.linear.dot(&mean_r);
    let ground_energy = ps.constant + shift_energy + 0.5 * gaps.iter().sum::<f64>();

    Ok(BogoliubovSolution {
        gaps,
        transform,
        displacements,
        ground_energy,
    })
}

/// Symplectic eigenvalues (ascending) of a form whose stiffness may be singular.
///
/// Unlike [`symplectic_diagonalize`] this accepts gapless modes and reports them as
/// zero, which is what a critical point looks like.
pub fn symplectic_spectrum(form: &QuadraticForm) -> Result<Vec<f64>> {
    let n = form.n_modes();
    let ps = form.phase_space();
    let eig = SymmetricEigen::new(ps.stiffness);
    let scale = eig.eigenvalues.iter().fold(0.0_f64, |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE);
    let lowest = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if lowest < -INSTABILITY_TOL * scale {
        return Err(Error::Instability(format!(
            "phase-space stiffness has eigenvalue {lowest:e} (scale {scale:e})"
        )));
    }
    let q = &eig.eigenvectors;
    let sqrt_k = q * DMatrix::from_diagonal(&eig.eigenvalues.map(|x| x.max(0.0).sqrt())) * q.transpose();
    let sqrt_kc = sqrt_k.map(|x| C64::new(x, 0.0));
    let m = &sqrt_kc * i_symplectic(n) * &sqrt_kc;
    let m = (&m + m.adjoint()).scale(0.5);
    let mut values: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    let mut gaps: Vec<f64> = values[..n].iter().map(|v| v.max(0.0)).collect();
    gaps.reverse();
    Ok(gaps)
}
