//! Large-N expansion of collective spin chains coupled to one photon quadrature.
//!
//! Each chain `ω0 J_z + (2λ/√N) Q J_x`, with `Q = a + a†` or `Q = i(a - a†)`,
//! is written through the Holstein-Primakoff boson `b`, displaced to the
//! mean-field minimum and expanded to quadratic order in the fluctuations.
//! The classical energy is separable in the two quadratures, so the
//! minimization over the displacements has a closed form; the expansion point
//! is still checked against the gradient of the classical energy.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::gaussian::QuadraticForm;

/// Residual gradient of the classical energy accepted at the expansion point.
const STATIONARITY_TOL: f64 = 1e-10;

/// Which broken-symmetry vacuum a chain is expanded around.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Branch {
    #[default]
    Unbroken,
    Plus,
    Minus,
}

impl Branch {
    pub fn epsilon(self) -> i8 {
        match self {
            Branch::Unbroken => 0,
            Branch::Plus => 1,
            Branch::Minus => -1,
        }
    }

    pub fn from_epsilon(epsilon: i8) -> Result<Self> {
        match epsilon {
            0 => Ok(Branch::Unbroken),
            1 => Ok(Branch::Plus),
            -1 => Ok(Branch::Minus),
            e => Err(Error::InvalidParams(format!("branch sign must be -1, 0 or 1, got {e}"))),
        }
    }
}

/// Photon quadrature a chain couples to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quadrature {
    /// a + a†
    Real,
    /// i(a - a†)
    Imaginary,
}

/// Quadratic-order data of one chain around its mean-field vacuum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainExpansion {
    pub quadrature: Quadrature,
    pub branch: Branch,
    /// μ = min(1, ω ω0 / 4λ²)
    pub mu: f64,
    /// ⟨b⟩/√N (signed)
    pub beta: f64,
    /// This chain's contribution to ⟨a⟩/√N along its quadrature (real or imaginary part).
    pub photon_shift: f64,
    /// Coefficient of d†d, ω0 (1 + μ)/(2μ).
    pub omega_eff: f64,
    /// Coefficient of (d + d†)².
    pub squeeze: f64,
    /// Coefficient of Q (d + d†).
    pub coupling: f64,
    /// O(1) constant of the expansion.
    pub constant: f64,
}

pub fn critical_coupling(omega_cav: f64, omega0: f64) -> f64 {
    (omega_cav * omega0).sqrt() / 2.0
}

pub fn expand_chain(omega_cav: f64, omega0: f64, lambda: f64, quadrature: Quadrature, branch: Branch) -> Result<ChainExpansion> {
    let broken = lambda > critical_coupling(omega_cav, omega0);
    match (broken, branch) {
        (false, Branch::Plus | Branch::Minus) => {
            return Err(Error::Branch {
                epsilon: branch.epsilon(),
                phase: "normal",
            })
        }
        (true, Branch::Unbroken) => {
            return Err(Error::Branch {
                epsilon: 0,
                phase: "superradiant",
            })
        }
        _ => {}
    }
    let mu = if broken { omega_cav * omega0 / (4.0 * lambda * lambda) } else { 1.0 };
    let eps = f64::from(branch.epsilon());
    let beta = eps * ((1.0 - mu) / 2.0).sqrt();
    let shift = eps * lambda * (1.0 - mu * mu).sqrt() / omega_cav;
    let photon_shift = match quadrature {
        Quadrature::Real => -shift,
        Quadrature::Imaginary => shift,
    };
    let omega_eff = omega0 * (1.0 + mu) / (2.0 * mu);
    let squeeze = omega0 * (1.0 - mu) * (3.0 + mu) / (8.0 * mu * (1.0 + mu));
    let coupling = lambda * mu * (2.0 / (1.0 + mu)).sqrt();
    let constant = squeeze - omega0 * (1.0 - mu) / (4.0 * mu);
    Ok(ChainExpansion {
        quadrature,
        branch,
        mu,
        beta,
        photon_shift,
        omega_eff,
        squeeze,
        coupling,
        constant,
    })
}

/// Classical energy per spin and its gradient in (Re α, Im α, β_1, β_2, …),
/// for photon amplitude α = ⟨a⟩/√N and real spin amplitudes β_k = ⟨b_k⟩/√N.
pub fn classical_energy(
    omega_cav: f64,
    chains: &[(f64, f64, Quadrature)],
    alpha: C64,
    betas: &[f64],
) -> (f64, Vec<f64>) {
    let mut energy = omega_cav * alpha.norm_sqr();
    let mut grad = vec![2.0 * omega_cav * alpha.re, 2.0 * omega_cav * alpha.im];
    for (&(omega0, lambda, quad), &b) in chains.iter().zip(betas) {
        let root = (1.0 - b * b).max(0.0).sqrt();
        let jx = b * root;
        let djx = if root > 0.0 { root - b * b / root } else { 0.0 };
        // ⟨Q⟩/√N: 2 Re α for a + a†, -2 Im α for i(a - a†)
        let (q, dq_re, dq_im) = match quad {
            Quadrature::Real => (2.0 * alpha.re, 2.0, 0.0),
            Quadrature::Imaginary => (-2.0 * alpha.im, 0.0, -2.0),
        };
        energy += omega0 * (b * b - 0.5) + 2.0 * lambda * q * jx;
        grad[0] += 2.0 * lambda * dq_re * jx;
        grad[1] += 2.0 * lambda * dq_im * jx;
        grad.push(2.0 * omega0 * b + 2.0 * lambda * q * djx);
    }
    (energy, grad)
}

/// Quadratic form over (a, b_1, b_2, …) for a photon coupled to the given chains.
///
/// `params` lists `(ω0, λ)` for each chain, in the same order as `chains`.
pub fn build_form(omega_cav: f64, params: &[(f64, f64)], chains: &[ChainExpansion]) -> Result<QuadraticForm> {
    let alpha = chains.iter().fold(C64::new(0.0, 0.0), |acc, c| match c.quadrature {
        Quadrature::Real => acc + C64::new(c.photon_shift, 0.0),
        Quadrature::Imaginary => acc + C64::new(0.0, c.photon_shift),
    });
    let betas: Vec<f64> = chains.iter().map(|c| c.beta).collect();
    let spec: Vec<(f64, f64, Quadrature)> = params
        .iter()
        .zip(chains)
        .map(|(&(w0, l), c)| (w0, l, c.quadrature))
        .collect();
    let (_, grad) = classical_energy(omega_cav, &spec, alpha, &betas);
    let worst = grad.iter().fold(0.0_f64, |m, g| m.max(g.abs()));
    let scale = params.iter().fold(omega_cav, |m, &(w0, l)| m.max(w0).max(l));
    if worst > STATIONARITY_TOL * scale {
        return Err(Error::MeanField(format!("classical gradient {worst:e} at the expansion point")));
    }

    let n = chains.len() + 1;
    let zero = C64::new(0.0, 0.0);
    let mut a = DMatrix::from_element(n, n, zero);
    let mut b = DMatrix::from_element(n, n, zero);
    let mut e0 = 0.0;
    a[(0, 0)] = C64::new(omega_cav, 0.0);
    for (k, c) in chains.iter().enumerate() {
        let m = k + 1;
        a[(m, m)] = C64::new(c.omega_eff + 2.0 * c.squeeze, 0.0);
        b[(m, m)] = C64::new(2.0 * c.squeeze, 0.0);
        let g = c.coupling;
        match c.quadrature {
            Quadrature::Real => {
                a[(0, m)] = C64::new(g, 0.0);
                a[(m, 0)] = C64::new(g, 0.0);
                b[(0, m)] = C64::new(g, 0.0);
                b[(m, 0)] = C64::new(g, 0.0);
            }
            Quadrature::Imaginary => {
                a[(0, m)] = C64::new(0.0, -g);
                a[(m, 0)] = C64::new(0.0, g);
                b[(0, m)] = C64::new(0.0, g);
                b[(m, 0)] = C64::new(0.0, g);
            }
        }
        e0 += c.constant;
    }
    QuadraticForm::new(a, b, DVector::from_element(n, zero), e0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_phase_expansion_is_bare() {
        let c = expand_chain(1.0, 1.0, 0.3, Quadrature::Real, Branch::Unbroken).unwrap();
        assert_eq!(c.mu, 1.0);
        assert_eq!(c.beta, 0.0);
        assert_eq!(c.omega_eff, 1.0);
        assert_eq!(c.squeeze, 0.0);
        assert_eq!(c.coupling, 0.3);
    }

    #[test]
    fn branch_rules() {
        assert!(matches!(
            expand_chain(1.0, 1.0, 0.3, Quadrature::Real, Branch::Plus),
            Err(Error::Branch { .. })
        ));
        assert!(matches!(
            expand_chain(1.0, 1.0, 0.8, Quadrature::Real, Branch::Unbroken),
            Err(Error::Branch { .. })
        ));
    }

    #[test]
    fn superradiant_displacements_are_stationary() {
        for quad in [Quadrature::Real, Quadrature::Imaginary] {
            for branch in [Branch::Plus, Branch::Minus] {
                let c = expand_chain(1.3, 0.7, 0.9, quad, branch).unwrap();
                let alpha = match quad {
                    Quadrature::Real => C64::new(c.photon_shift, 0.0),
                    Quadrature::Imaginary => C64::new(0.0, c.photon_shift),
                };
                let (_, g) = classical_energy(1.3, &[(0.7, 0.9, quad)], alpha, &[c.beta]);
                assert!(g.iter().all(|x| x.abs() < 1e-13), "{g:?}");
            }
        }
    }

    #[test]
    fn superradiant_minimum_is_lower_than_normal() {
        let c = expand_chain(1.0, 1.0, 0.9, Quadrature::Real, Branch::Plus).unwrap();
        let (e_sr, _) = classical_energy(1.0, &[(1.0, 0.9, Quadrature::Real)], C64::new(c.photon_shift, 0.0), &[c.beta]);
        let (e_n, _) = classical_energy(1.0, &[(1.0, 0.9, Quadrature::Real)], C64::new(0.0, 0.0), &[0.0]);
        assert!(e_sr < e_n);
        // (ω0/4)(μ + 1/μ) closed form for the minimum of -ω0/2 - (λ²/ω)(1-μ²)... per spin
        let mu = c.mu;
        let expected = -0.5 * 1.0 * (1.0 + mu * mu) / (2.0 * mu);
        assert!((e_sr - expected).abs() < 1e-12, "{e_sr} vs {expected}");
    }

    #[test]
    fn effective_matter_frequency() {
        // ω̃ (ω̃ + 4κ) = (ω0/μ)²
        let c = expand_chain(1.0, 0.8, 1.1, Quadrature::Real, Branch::Minus).unwrap();
        let lhs = c.omega_eff * (c.omega_eff + 4.0 * c.squeeze);
        assert!((lhs - (0.8 / c.mu).powi(2)).abs() < 1e-12);
    }

    #[test]
    fn mismatched_expansion_point_is_rejected() {
        let mut c = expand_chain(1.0, 1.0, 0.9, Quadrature::Real, Branch::Plus).unwrap();
        c.beta *= 0.9;
        assert!(matches!(build_form(1.0, &[(1.0, 0.9)], &[c]), Err(Error::MeanField(_))));
    }
}
