//! Closed-form thermodynamic-limit solution.

use super::DickeParams;
use crate::error::{Error, Result};
use crate::gaussian::{entropy_from_hp, DegeneracyOffset, EntropyReport, FluctuationReport, QuadraticForm, DEFAULT_RENYI_ORDERS};
use crate::holstein::{self, Branch, Quadrature};

/// Relative distance to λ_cr below which a coupling counts as critical.
pub const CRITICAL_TOL: f64 = 1e-14;

/// Exponent of the uncertainty-product divergence at λ_cr.
pub const HP_EXPONENT: f64 = -0.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    Normal,
    Superradiant,
}

impl Phase {
    pub fn label(self) -> &'static str {
        match self {
            Phase::Normal => "normal",
            Phase::Superradiant => "superradiant",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseInfo {
    pub phase: Phase,
    pub lambda_cr: f64,
    /// λ = λ_cr to within [`CRITICAL_TOL`]; the phase is then reported as superradiant.
    pub critical: bool,
}

pub(crate) fn is_critical(lambda: f64, lambda_cr: f64) -> bool {
    (lambda - lambda_cr).abs() <= CRITICAL_TOL * lambda_cr
}

pub fn classify_phase(p: &DickeParams) -> PhaseInfo {
    let lambda_cr = p.lambda_cr();
    let critical = is_critical(p.lambda, lambda_cr);
    let phase = if p.lambda < lambda_cr && !critical {
        Phase::Normal
    } else {
        Phase::Superradiant
    };
    PhaseInfo {
        phase,
        lambda_cr,
        critical,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoSolution {
    /// Normal for λ ≤ λ_cr (the critical point has no coherence).
    pub phase: Phase,
    pub mu: f64,
    /// Mixing angle γ ∈ [0, π/2].
    pub gamma: f64,
    pub gap_minus: f64,
    pub gap_plus: f64,
    /// ⟨a⟩/√N
    pub alpha_coh: f64,
    /// ⟨b⟩/√N
    pub beta_coh: f64,
    pub epsilon: i8,
}

/// The broken-symmetry branch the thermodynamic formulas should use: unbroken
/// up to and including λ_cr, `epsilon` above it.
fn branch_for(p: &DickeParams, epsilon: i8) -> Result<Branch> {
    let info = classify_phase(p);
    let branch = Branch::from_epsilon(epsilon)?;
    let broken = info.phase == Phase::Superradiant && !info.critical;
    match (broken, branch) {
        (false, Branch::Unbroken) | (true, Branch::Plus | Branch::Minus) => Ok(branch),
        (false, _) => Err(Error::Branch {
            epsilon,
            phase: "normal",
        }),
        (true, _) => Err(Error::Branch {
            epsilon,
            phase: "superradiant",
        }),
    }
}

/// Default branch for a coupling: unbroken below λ_cr, `+` above.
pub fn default_epsilon(p: &DickeParams) -> i8 {
    let info = classify_phase(p);
    if info.phase == Phase::Superradiant && !info.critical {
        1
    } else {
        0
    }
}

pub fn solve_thermo(p: &DickeParams, epsilon: i8) -> Result<ThermoSolution> {
    p.validate()?;
    let branch = branch_for(p, epsilon)?;
    let (w, w0, l) = (p.omega, p.omega0, p.lambda);
    let mu = if branch == Branch::Unbroken { 1.0 } else { w * w0 / (4.0 * l * l) };
    let eps = f64::from(epsilon);

    let wm = w0 / mu;
    let root = ((wm * wm - w * w).powi(2) + 16.0 * l * l * w * w0 * mu).sqrt();
    let gap_plus = (0.5 * (wm * wm + w * w + root)).sqrt();
    // Δ₋² = (ω0/μ)² ω² - 4λ²ωω0μ over Δ₊², free of the cancellation near λ_cr
    let det = wm * wm * w * w - 4.0 * l * l * w * w0 * mu;
    let gap_minus = (det.max(0.0) / (gap_plus * gap_plus)).sqrt();

    let two_gamma = (4.0 * l * (w * w0).sqrt() * mu.powf(2.5)).atan2(w0 * w0 - mu * mu * w * w);
    Ok(ThermoSolution {
        phase: if branch == Branch::Unbroken { Phase::Normal } else { Phase::Superradiant },
        mu,
        gamma: 0.5 * two_gamma,
        gap_minus,
        gap_plus,
        alpha_coh: -eps * l * (1.0 - mu * mu).sqrt() / w,
        beta_coh: eps * ((1.0 - mu) / 2.0).sqrt(),
        epsilon,
    })
}

/// Photon fluctuations of the broken-symmetry vacuum (identical on both branches).
pub fn hp_thermo(p: &DickeParams) -> Result<FluctuationReport> {
    p.validate()?;
    if classify_phase(p).critical {
        return Err(Error::CriticalPointDivergence { exponent: HP_EXPONENT });
    }
    let sol = solve_thermo(p, default_epsilon(p))?;
    let (c2, s2) = (sol.gamma.cos().powi(2), sol.gamma.sin().powi(2));
    let (dm, dp) = (sol.gap_minus, sol.gap_plus);
    let var_x = p.omega * (c2 / (2.0 * dm) + s2 / (2.0 * dp));
    let var_p = (c2 * dm / 2.0 + s2 * dp / 2.0) / p.omega;
    FluctuationReport::from_variances(var_x, var_p)
}

/// Photon entropy; with `include_degeneracy` one bit is added in the superradiant
/// phase for comparison with finite-size cat states.
pub fn entropy_thermo(p: &DickeParams, include_degeneracy: bool) -> Result<EntropyReport> {
    let hp = hp_thermo(p)?.hp;
    let offset = if include_degeneracy && classify_phase(p).phase == Phase::Superradiant {
        DegeneracyOffset::from_degeneracy(2)?
    } else {
        DegeneracyOffset::NONE
    };
    EntropyReport::from_hp(hp, offset, &DEFAULT_RENYI_ORDERS)
}

/// Von Neumann entropy without degeneracy offset; a shortcut for sweeps and fits.
pub fn s_vn_thermo(p: &DickeParams) -> Result<f64> {
    entropy_from_hp(hp_thermo(p)?.hp, DegeneracyOffset::NONE)
}

/// Quadratic expansion over (a, b) around the vacuum selected by `epsilon`.
pub fn quadratic_form(p: &DickeParams, epsilon: i8) -> Result<QuadraticForm> {
    p.validate()?;
    let branch = branch_for(p, epsilon)?;
    let chain = holstein::expand_chain(p.omega, p.omega0, p.lambda, Quadrature::Real, branch)?;
    holstein::build_form(p.omega, &[(p.omega0, p.lambda)], &[chain])
}
