use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Relative tolerance for the Hermiticity / symmetry checks on the coefficient matrices.
const STRUCTURE_TOL: f64 = 1e-10;

/// An n-mode quadratic bosonic Hamiltonian
///
/// ```text
/// H = Σ A_ij a_i† a_j + ½ Σ (B_ij a_i a_j + B_ij* a_i† a_j†) + Σ (d_i a_i + d_i* a_i†) + e0
/// ```
///
/// with `A` Hermitian and `B` complex symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticForm {
    a: DMatrix<C64>,
    b: DMatrix<C64>,
    d: DVector<C64>,
    e0: f64,
}

/// Real phase-space representation `H = ½ rᵀ K r + gᵀ r + c` with
/// `r = (x_1 … x_n, p_1 … p_n)`, `a = (x + i p)/√2`.
#[derive(Debug, Clone)]
pub struct PhaseSpaceForm {
    pub stiffness: DMatrix<f64>,
    pub linear: DVector<f64>,
    pub constant: f64,
}

impl QuadraticForm {
    pub fn new(a: DMatrix<C64>, b: DMatrix<C64>, d: DVector<C64>, e0: f64) -> Result<Self> {
        let n = a.nrows();
        if n == 0 {
            return Err(Error::InvalidParams("quadratic form needs at least one mode".into()));
        }
        if a.ncols() != n || b.nrows() != n || b.ncols() != n || d.len() != n {
            return Err(Error::InvalidParams(format!(
                "inconsistent shapes: A {}x{}, B {}x{}, d {}",
                a.nrows(),
                a.ncols(),
                b.nrows(),
                b.ncols(),
                d.len()
            )));
        }
        if !e0.is_finite() || a.iter().chain(b.iter()).chain(d.iter()).any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParams("non-finite coefficient".into()));
        }
        let scale = 1.0 + a.norm().max(b.norm());
        if (&a - a.adjoint()).norm() > STRUCTURE_TOL * scale {
            return Err(Error::InvalidParams("A is not Hermitian".into()));
        }
        if (&b - b.transpose()).norm() > STRUCTURE_TOL * scale {
            return Err(Error::InvalidParams("B is not symmetric".into()));
        }
        // Symmetrize away roundoff so downstream algebra sees exact structure.
        let a = (&a + a.adjoint()).scale(0.5);
        let b = (&b + b.transpose()).scale(0.5);
        Ok(Self { a, b, d, e0 })
    }

    /// Uncoupled oscillators `Σ ω_i a_i† a_i`.
    pub fn diagonal(frequencies: &[f64]) -> Result<Self> {
        let n = frequencies.len();
        let a = DMatrix::from_fn(n, n, |i, j| if i == j { C64::new(frequencies[i], 0.0) } else { C64::new(0.0, 0.0) });
        Self::new(a, DMatrix::zeros(n, n), DVector::zeros(n), 0.0)
    }

    pub fn n_modes(&self) -> usize {
        self.a.nrows()
    }

    pub fn a(&self) -> &DMatrix<C64> {
        &self.a
    }

    pub fn b(&self) -> &DMatrix<C64> {
        &self.b
    }

    pub fn d(&self) -> &DVector<C64> {
        &self.d
    }

    pub fn e0(&self) -> f64 {
        self.e0
    }

    /// Frobenius scale of the coefficient matrices, used for relative tolerances.
    pub fn scale(&self) -> f64 {
        self.a.norm().max(self.b.norm())
    }

    /// Adds `κ e†e` for the polariton `e = Σ u_i a_i + v_i a_i†`.
    pub fn with_polariton_energy(&self, kappa: f64, u: &[C64], v: &[C64]) -> Result<Self> {
        let n = self.n_modes();
        if u.len() != n || v.len() != n {
            return Err(Error::InvalidParams("polariton length does not match the number of modes".into()));
        }
        let mut a = self.a.clone();
        let mut b = self.b.clone();
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] += (u[i].conj() * u[j] + v[i] * v[j].conj()) * kappa;
                b[(i, j)] += (u[i] * v[j].conj() + u[j] * v[i].conj()) * kappa;
            }
        }
        let e0 = self.e0 + kappa * v.iter().map(|z| z.norm_sqr()).sum::<f64>();
        Self::new(a, b, self.d.clone(), e0)
    }

    pub fn phase_space(&self) -> PhaseSpaceForm {
        let n = self.n_modes();
        let mut k = DMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (self.a[(i, j)], self.b[(i, j)]);
                k[(i, j)] = a.re + b.re;
                k[(n + i, n + j)] = a.re - b.re;
                let xp = -a.im - b.im;
                k[(i, n + j)] = xp;
                k[(n + j, i)] = xp;
            }
        }
        let mut g = DVector::zeros(2 * n);
        let sqrt2 = std::f64::consts::SQRT_2;
        for i in 0..n {
            g[i] = sqrt2 * self.d[i].re;
            g[n + i] = -sqrt2 * self.d[i].im;
        }
        let trace: f64 = (0..n).map(|i| self.a[(i, i)].re).sum();
        PhaseSpaceForm {
            stiffness: k,
            linear: g,
            constant: self.e0 - 0.5 * trace,
        }
    }
}
