use num_complex::Complex64 as C64;

use super::symplectic::BogoliubovSolution;
use crate::error::{Error, Result};

/// Roundoff band below the Heisenberg bound that is clamped to exactly 1/2.
pub const HEISENBERG_TOL: f64 = 1e-9;

/// Raw (uncentered) first and second moments of a single bosonic mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawMoments {
    /// ⟨a⟩
    pub mean: C64,
    /// ⟨a†a⟩
    pub number: f64,
    /// ⟨a²⟩
    pub square: C64,
}

impl RawMoments {
    pub fn vacuum() -> Self {
        Self {
            mean: C64::new(0.0, 0.0),
            number: 0.0,
            square: C64::new(0.0, 0.0),
        }
    }

    /// Same state with the mode relabelled as `a e^{-iθ}`.
    pub fn rotated(&self, theta: f64) -> Self {
        let ph = C64::from_polar(1.0, -theta);
        Self {
            mean: self.mean * ph,
            number: self.number,
            square: self.square * ph * ph,
        }
    }
}

/// Quadrature fluctuations of one photon mode.
///
/// `dx`, `dp` and `hp` refer to the mode rotated by `phi`, for which ⟨ã²⟩ is
/// real and the ζ correction vanishes. The `raw_*` fields are the fluctuations
/// of the unrotated quadratures `x = (a + a†)/√2`, `p = -i(a - a†)/√2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluctuationReport {
    pub mean_a: C64,
    /// Centered occupation ⟨a†a⟩ - |⟨a⟩|².
    pub n_occ: f64,
    /// Centered anomalous moment ⟨a²⟩ - ⟨a⟩².
    pub sq: C64,
    pub dx: f64,
    pub dp: f64,
    pub hp: f64,
    pub raw_dx: f64,
    pub raw_dp: f64,
    pub raw_hp: f64,
    /// ζ = (⟨a²⟩_c - ⟨a†²⟩_c)²/4 of the unrotated mode (never positive).
    pub zeta: f64,
    /// Rotation phase in [0, π).
    pub phi: f64,
}

impl FluctuationReport {
    /// Report for a mode with the given centered quadrature variances and no ⟨x p⟩ correlation.
    pub fn from_variances(var_x: f64, var_p: f64) -> Result<Self> {
        // var_x = n + 1/2 + Re s, var_p = n + 1/2 - Re s
        let n = 0.5 * (var_x + var_p) - 0.5;
        let s = 0.5 * (var_x - var_p);
        heisenberg_product(&RawMoments {
            mean: C64::new(0.0, 0.0),
            number: n,
            square: C64::new(s, 0.0),
        })
    }
}

fn clamp_to_bound(hp: f64) -> Result<f64> {
    if hp.is_nan() || hp < 0.5 - HEISENBERG_TOL {
        Err(Error::UncertaintyViolation { hp })
    } else {
        Ok(hp.max(0.5))
    }
}

pub fn heisenberg_product(m: &RawMoments) -> Result<FluctuationReport> {
    let mut n = m.number - m.mean.norm_sqr();
    if n < 0.0 {
        if n < -HEISENBERG_TOL {
            return Err(Error::UncertaintyViolation { hp: f64::NAN });
        }
        n = 0.0;
    }
    let s = m.square - m.mean * m.mean;

    let var = |t: f64| -> Result<f64> {
        let v = n + 0.5 + t;
        if v <= 0.0 {
            Err(Error::UncertaintyViolation { hp: 0.0 })
        } else {
            Ok(v)
        }
    };
    let raw_x = var(s.re)?;
    let raw_p = var(-s.re)?;
    let raw_hp = clamp_to_bound((raw_x * raw_p).sqrt())?;

    // Smallest rotation making s real; keeps x and p in place when s is already real.
    let phi = if s.norm() == 0.0 {
        0.0
    } else if s.re == 0.0 {
        std::f64::consts::FRAC_PI_4 * s.im.signum()
    } else {
        0.5 * (s.im / s.re).atan()
    };
    let s_rot = (s * C64::from_polar(1.0, -2.0 * phi)).re;
    let var_x = var(s_rot)?;
    let var_p = var(-s_rot)?;
    let hp = clamp_to_bound((var_x * var_p).sqrt())?;

    let diff = s - s.conj();
    Ok(FluctuationReport {
        mean_a: m.mean,
        n_occ: n,
        sq: s,
        dx: var_x.sqrt(),
        dp: var_p.sqrt(),
        hp,
        raw_dx: raw_x.sqrt(),
        raw_dp: raw_p.sqrt(),
        raw_hp,
        zeta: (diff * diff / 4.0).re,
        phi: phi.rem_euclid(std::f64::consts::PI),
    })
}

/// Vacuum moments of mode `mode` in the polariton vacuum of `sol`.
pub fn raw_moments_from_solution(sol: &BogoliubovSolution, mode: usize) -> Result<RawMoments> {
    let n = sol.n_modes();
    if mode >= n {
        return Err(Error::InvalidParams(format!("mode index {mode} out of range for {n} modes")));
    }
    // a_i = Σ_k u_ki* e_k - v_ki e_k†
    let mut number = 0.0;
    let mut square = C64::new(0.0, 0.0);
    for k in 0..n {
        let (u, v) = (sol.u(k, mode), sol.v(k, mode));
        number += v.norm_sqr();
        square -= u.conj() * v;
    }
    let mean = sol.displacements[mode];
    Ok(RawMoments {
        mean,
        number: number + mean.norm_sqr(),
        square: square + mean * mean,
    })
}

pub fn photon_moments_from_solution(sol: &BogoliubovSolution, mode: usize) -> Result<FluctuationReport> {
    heisenberg_product(&raw_moments_from_solution(sol, mode)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{symplectic_diagonalize, QuadraticForm};

    #[test]
    fn vacuum_saturates_bound() {
        let r = heisenberg_product(&RawMoments::vacuum()).unwrap();
        assert_eq!(r.hp, 0.5);
        assert_eq!(r.zeta, 0.0);
        assert_eq!(r.phi, 0.0);
    }

    #[test]
    fn cat_state_moments() {
        let af: f64 = 2.0;
        let r = heisenberg_product(&RawMoments {
            mean: C64::new(0.0, 0.0),
            number: af * af,
            square: C64::new(af * af, 0.0),
        })
        .unwrap();
        let expected = (af * af + 0.25).sqrt();
        assert!((r.hp - expected).abs() < 1e-14);
        assert!((r.hp - 2.0616).abs() < 1e-4);
    }

    #[test]
    fn imaginary_anomalous_moment_is_rotated_away() {
        let r = heisenberg_product(&RawMoments {
            mean: C64::new(0.0, 0.0),
            number: 0.3,
            square: C64::new(0.0, 0.3),
        })
        .unwrap();
        // hand evaluation of √((n + 1/2)² - |s|²)
        let expected = (0.8f64 * 0.8 - 0.09).sqrt();
        assert!((r.hp - expected).abs() < 1e-14);
        // unrotated product is larger; ζ = -(Im s)² closes the identity
        assert!((r.raw_hp - 0.8).abs() < 1e-14);
        assert!((r.zeta + 0.09).abs() < 1e-15);
        assert!((r.raw_hp.powi(2) + r.zeta - expected.powi(2)).abs() < 1e-14);
        assert!((r.phi - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        let again = heisenberg_product(&RawMoments {
            mean: C64::new(0.0, 0.0),
            number: 0.3,
            square: C64::new(0.0, 0.3),
        }
        .rotated(r.phi))
        .unwrap();
        assert!(again.zeta.abs() < 1e-15);
    }

    #[test]
    fn sub_heisenberg_moments_are_rejected() {
        let err = heisenberg_product(&RawMoments {
            mean: C64::new(0.0, 0.0),
            number: 0.0,
            square: C64::new(0.3, 0.0),
        })
        .unwrap_err();
        assert!(matches!(err, Error::UncertaintyViolation { .. }));
    }

    #[test]
    fn roundoff_below_bound_is_clamped() {
        let r = heisenberg_product(&RawMoments {
            mean: C64::new(0.0, 0.0),
            number: -1e-12,
            square: C64::new(0.0, 0.0),
        })
        .unwrap();
        assert_eq!(r.hp, 0.5);
    }

    #[test]
    fn uncoupled_mode_from_solution() {
        let sol = symplectic_diagonalize(&QuadraticForm::diagonal(&[1.0, 2.0]).unwrap()).unwrap();
        let r = photon_moments_from_solution(&sol, 0).unwrap();
        assert!((r.hp - 0.5).abs() < 1e-14);
        assert!(r.zeta.abs() < 1e-15);
        assert!(photon_moments_from_solution(&sol, 2).is_err());
    }
}
