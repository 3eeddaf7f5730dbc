//! Thermodynamic-limit (three-mode Bogoliubov) solution.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use super::DoubleDickeParams;
use crate::dicke::is_critical;
use crate::ed::EdOptions;
use crate::error::{Error, Result};
use crate::gaussian::{
    entropy_from_hp, photon_moments_from_solution, symplectic_diagonalize, symplectic_spectrum, DegeneracyOffset,
    EntropyReport, FluctuationReport, QuadraticForm, DEFAULT_RENYI_ORDERS,
};
use crate::holstein::{self, Branch, Quadrature};

/// Kernel eigenvalues of the stiffness below this fraction of its scale count as zero.
const KERNEL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DoublePhase {
    Normal,
    SuperradiantReal,
    SuperradiantImag,
    SuperradiantDouble,
}

impl DoublePhase {
    /// Number of degenerate broken-symmetry vacua.
    pub fn degeneracy(self) -> u32 {
        match self {
            DoublePhase::Normal => 1,
            DoublePhase::SuperradiantReal | DoublePhase::SuperradiantImag => 2,
            DoublePhase::SuperradiantDouble => 4,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            DoublePhase::Normal => "normal",
            DoublePhase::SuperradiantReal => "superradiant-real",
            DoublePhase::SuperradiantImag => "superradiant-imag",
            DoublePhase::SuperradiantDouble => "superradiant-double",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoublePhaseInfo {
    /// Points on a critical line are labelled with the broken side.
    pub phase: DoublePhase,
    pub lambda_c_cr: f64,
    pub lambda_i_cr: f64,
    pub on_c_line: bool,
    pub on_i_line: bool,
}

impl DoublePhaseInfo {
    pub fn critical(&self) -> bool {
        self.on_c_line || self.on_i_line
    }

    pub fn double_point(&self) -> bool {
        self.on_c_line && self.on_i_line
    }

    /// Degeneracy of the vacuum the expansion uses: chains sitting exactly on
    /// their critical line do not break their symmetry.
    pub fn vacuum_degeneracy(&self, p: &DoubleDickeParams) -> u32 {
        let (c, i) = default_branches(p);
        let broken = |b: Branch| u32::from(b != Branch::Unbroken);
        1 << (broken(c) + broken(i))
    }
}

pub fn classify_double_phase(p: &DoubleDickeParams) -> DoublePhaseInfo {
    let (lc, li) = (p.lambda_c_cr(), p.lambda_i_cr());
    let on_c_line = is_critical(p.lambda_c, lc);
    let on_i_line = is_critical(p.lambda_i, li);
    let c = p.lambda_c > lc || on_c_line;
    let i = p.lambda_i > li || on_i_line;
    let phase = match (c, i) {
        (false, false) => DoublePhase::Normal,
        (true, false) => DoublePhase::SuperradiantReal,
        (false, true) => DoublePhase::SuperradiantImag,
        (true, true) => DoublePhase::SuperradiantDouble,
    };
    DoublePhaseInfo {
        phase,
        lambda_c_cr: lc,
        lambda_i_cr: li,
        on_c_line,
        on_i_line,
    }
}

/// `+` branch on every chain strictly beyond its critical coupling.
pub fn default_branches(p: &DoubleDickeParams) -> (Branch, Branch) {
    let pick = |lambda: f64, cr: f64| {
        if lambda > cr && !is_critical(lambda, cr) {
            Branch::Plus
        } else {
            Branch::Unbroken
        }
    };
    (pick(p.lambda_c, p.lambda_c_cr()), pick(p.lambda_i, p.lambda_i_cr()))
}

fn checked_branch(lambda: f64, cr: f64, epsilon: i8) -> Result<Branch> {
    let branch = Branch::from_epsilon(epsilon)?;
    let broken = lambda > cr && !is_critical(lambda, cr);
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

/// Quadratic form over `(a, b_C, b_I)` around the vacuum with branch signs `(ε_C, ε_I)`.
pub fn build_double_quadratic_form(p: &DoubleDickeParams, eps_c: i8, eps_i: i8) -> Result<QuadraticForm> {
    p.validate()?;
    let bc = checked_branch(p.lambda_c, p.lambda_c_cr(), eps_c)?;
    let bi = checked_branch(p.lambda_i, p.lambda_i_cr(), eps_i)?;
    form_for(p, bc, bi)
}

fn form_for(p: &DoubleDickeParams, bc: Branch, bi: Branch) -> Result<QuadraticForm> {
    let c = holstein::expand_chain(p.omega_cav, p.omega0_c, p.lambda_c, Quadrature::Real, bc)?;
    let i = holstein::expand_chain(p.omega_cav, p.omega0_i, p.lambda_i, Quadrature::Imaginary, bi)?;
    holstein::build_form(p.omega_cav, &[(p.omega0_c, p.lambda_c), (p.omega0_i, p.lambda_i)], &[c, i])
}

fn default_form(p: &DoubleDickeParams) -> Result<QuadraticForm> {
    p.validate()?;
    let (bc, bi) = default_branches(p);
    form_for(p, bc, bi)
}

#[derive(Debug, Clone)]
pub struct DoubleThermoSolution {
    pub mu_c: f64,
    pub mu_i: f64,
    /// ⟨a⟩/√N: real part from chain C, imaginary part from chain I.
    pub photon_shift: C64,
    /// ⟨b_C⟩/√N and ⟨b_I⟩/√N.
    pub matter_shifts: (f64, f64),
    /// Ascending.
    pub gaps: [f64; 3],
    /// Rows `(u_k, v_k)` over `(a, b_C, b_I, a†, b_C†, b_I†)`, then their conjugates.
    pub polariton_transform: DMatrix<C64>,
}

pub fn solve_double_thermo(p: &DoubleDickeParams, eps_c: i8, eps_i: i8) -> Result<DoubleThermoSolution> {
    let form = build_double_quadratic_form(p, eps_c, eps_i)?;
    let sol = symplectic_diagonalize(&form)?;
    let c = holstein::expand_chain(p.omega_cav, p.omega0_c, p.lambda_c, Quadrature::Real, Branch::from_epsilon(eps_c)?)?;
    let i = holstein::expand_chain(p.omega_cav, p.omega0_i, p.lambda_i, Quadrature::Imaginary, Branch::from_epsilon(eps_i)?)?;
    Ok(DoubleThermoSolution {
        mu_c: c.mu,
        mu_i: i.mu,
        photon_shift: C64::new(c.photon_shift, i.photon_shift),
        matter_shifts: (c.beta, i.beta),
        gaps: [sol.gaps[0], sol.gaps[1], sol.gaps[2]],
        polariton_transform: sol.transform,
    })
}

/// Polariton energies `Δ̃₁ ≤ Δ̃₂ ≤ Δ̃₃`; gapless modes on the critical lines are reported as zero.
pub fn double_gaps(p: &DoubleDickeParams) -> Result<[f64; 3]> {
    let g = symplectic_spectrum(&default_form(p)?)?;
    Ok([g[0], g[1], g[2]])
}

/// Soft polariton at the double point, as the limit of the lowest polariton
/// along the ray from the origin.
///
/// Returns `(u, v, ν₁)` with `Δ̃₁ ≈ ν₁ t` at couplings `(1 - t)` times the critical ones.
pub fn soft_polariton(p: &DoubleDickeParams) -> Result<(Vec<C64>, Vec<C64>, f64)> {
    let dp = p.double_point();
    let k0 = form_for(&dp, Branch::Unbroken, Branch::Unbroken)?.phase_space().stiffness;
    let origin = DoubleDickeParams {
        lambda_c: 0.0,
        lambda_i: 0.0,
        ..dp
    };
    // the normal-phase stiffness is affine in the couplings, so this is the exact ray direction
    let k1 = form_for(&origin, Branch::Unbroken, Branch::Unbroken)?.phase_space().stiffness - &k0;

    let eig = SymmetricEigen::new(k0.clone());
    let scale = eig.eigenvalues.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let kernel: Vec<usize> = (0..6).filter(|&i| eig.eigenvalues[i].abs() <= KERNEL_TOL * scale).collect();
    if kernel.len() != 2 {
        return Err(Error::Regime(format!("expected a two-dimensional soft sector, found {}", kernel.len())));
    }
    let v = DMatrix::from_fn(6, 2, |r, c| eig.eigenvectors[(r, kernel[c])]);
    let j = symplectic_form(3);
    let ks = v.transpose() * &k1 * &v;
    let omega = v.transpose() * &j * &v;
    let w_sym = omega[(0, 1)];
    if w_sym.abs() < KERNEL_TOL {
        return Err(Error::Regime("soft sector is not a conjugate pair".into()));
    }
    // G = Ω⁻¹ K_s has eigenvalues ±iν₁
    let omega_inv = DMatrix::from_row_slice(2, 2, &[0.0, -1.0 / w_sym, 1.0 / w_sym, 0.0]);
    let g = omega_inv * ks;
    let det = g[(0, 0)] * g[(1, 1)] - g[(0, 1)] * g[(1, 0)];
    if !(det > 0.0) {
        return Err(Error::Regime("soft sector is not stable along the ray".into()));
    }
    let nu = det.sqrt();
    let vc = v.map(|x| C64::new(x, 0.0));
    let ij = j.map(|x| C64::new(0.0, x));
    for sign in [-1.0, 1.0] {
        // G w = λ w with λ = sign · iν₁; the annihilator has λ = -iν₁
        let lam = C64::new(g[(0, 0)] + g[(1, 1)], 0.0) * 0.5 + C64::new(0.0, sign * nu);
        let w1 = nalgebra::DVector::from_vec(vec![C64::new(g[(0, 1)], 0.0), lam - g[(0, 0)]]);
        let w2 = nalgebra::DVector::from_vec(vec![lam - g[(1, 1)], C64::new(g[(1, 0)], 0.0)]);
        let w = if w1.norm() >= w2.norm() { w1 } else { w2 };
        let c0 = &ij * (&vc * w);
        // [e, e†] = i cᵀ J c̄
        let jc = j.map(|x| C64::new(x, 0.0)) * c0.conjugate();
        let comm = C64::new(0.0, 1.0) * c0.dot(&jc);
        if comm.re <= 0.0 {
            continue;
        }
        let c = c0.unscale(comm.re.sqrt());
        let sqrt2 = std::f64::consts::SQRT_2;
        let mut u: Vec<C64> = (0..3).map(|i| (c[i] - C64::i() * c[3 + i]) / sqrt2).collect();
        let mut vv: Vec<C64> = (0..3).map(|i| (c[i] + C64::i() * c[3 + i]) / sqrt2).collect();
        let pivot = (0..3).max_by(|&a, &b| u[a].norm().total_cmp(&u[b].norm())).unwrap();
        let phase = u[pivot].conj() / u[pivot].norm();
        u.iter_mut().for_each(|x| *x *= phase);
        vv.iter_mut().for_each(|x| *x *= phase);
        return Ok((u, vv, nu));
    }
    Err(Error::Regime("no normalizable soft polariton".into()))
}

fn symplectic_form(n: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(i, n + i)] = 1.0;
        j[(n + i, i)] = -1.0;
    }
    j
}

/// Lowest polariton `e₁` as coefficients over `(a, b_C, b_I, a†, b_C†, b_I†)`,
/// in the normal phase or at the double point.
pub fn lower_polariton(p: &DoubleDickeParams) -> Result<Vec<C64>> {
    p.validate()?;
    let info = classify_double_phase(p);
    if info.double_point() {
        let (u, v, _) = soft_polariton(p)?;
        return Ok(u.into_iter().chain(v).collect());
    }
    if info.phase != DoublePhase::Normal || info.critical() {
        return Err(Error::Regime(format!(
            "lower polariton is defined in the normal phase and at the double point, not in the {} phase",
            info.phase.label()
        )));
    }
    let sol = symplectic_diagonalize(&default_form(p)?)?;
    Ok(sol.polariton_row(0))
}

/// Photon fluctuations; finite at the double point, divergent on the rest of the critical lines.
pub fn hp_double(p: &DoubleDickeParams) -> Result<FluctuationReport> {
    p.validate()?;
    let info = classify_double_phase(p);
    if info.double_point() {
        return hp_at_double_point(p, 1.0);
    }
    if info.critical() {
        return Err(Error::CriticalPointDivergence {
            exponent: crate::dicke::HP_EXPONENT,
        });
    }
    let sol = symplectic_diagonalize(&default_form(p)?)?;
    photon_moments_from_solution(&sol, 0)
}

/// The double-point vacuum: the gapless polariton is given energy `kappa`, which
/// leaves the limiting ground state unchanged for any `kappa > 0`.
pub fn hp_at_double_point(p: &DoubleDickeParams, kappa: f64) -> Result<FluctuationReport> {
    let dp = p.double_point();
    let (u, v, _) = soft_polariton(&dp)?;
    let form = form_for(&dp, Branch::Unbroken, Branch::Unbroken)?.with_polariton_energy(kappa, &u, &v)?;
    photon_moments_from_solution(&symplectic_diagonalize(&form)?, 0)
}

pub fn entropy_double(p: &DoubleDickeParams, include_degeneracy: bool) -> Result<EntropyReport> {
    let hp = hp_double(p)?.hp;
    let offset = if include_degeneracy {
        DegeneracyOffset::from_degeneracy(classify_double_phase(p).vacuum_degeneracy(p))?
    } else {
        DegeneracyOffset::NONE
    };
    EntropyReport::from_hp(hp, offset, &DEFAULT_RENYI_ORDERS)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadialMode {
    Thermo,
    /// Exact diagonalization with `n_spins` per chain and a converged photon cutoff.
    Ed { n_spins: usize, tol: f64, opts: EdOptions },
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdRowInfo {
    pub n_spins: usize,
    pub n_max: usize,
    pub gap01: f64,
    pub parity: f64,
    pub converged: bool,
    pub cutoff_warning: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialRow {
    pub r: f64,
    pub lambda_c: f64,
    pub lambda_i: f64,
    pub phase: DoublePhase,
    pub dx: f64,
    pub dp: f64,
    pub hp: f64,
    pub s_vn: f64,
    /// `s_vn` plus the degeneracy offset of the vacuum.
    pub s_vn_offset: f64,
    pub gaps: Option<[f64; 3]>,
    pub ed: Option<EdRowInfo>,
    /// Why the numeric fields are infinite or missing.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialSweep {
    pub theta: f64,
    pub rows: Vec<RadialRow>,
    /// Radii where the ray crosses the C and I critical lines, if it does.
    pub critical_radii: (Option<f64>, Option<f64>),
}

/// Radii `r_lo..=r_hi` in `steps` equal intervals along `(r cos θ, r sin θ)`.
pub fn radial_sweep(
    base: &DoubleDickeParams,
    theta: f64,
    r_range: (f64, f64),
    steps: usize,
    mode: &RadialMode,
) -> Result<RadialSweep> {
    base.validate()?;
    if !(0.0..=std::f64::consts::FRAC_PI_2 + 1e-15).contains(&theta) {
        return Err(Error::InvalidParams(format!("polar angle {theta} outside [0, π/2]")));
    }
    let (lo, hi) = r_range;
    if !(lo >= 0.0 && hi >= lo && lo.is_finite() && hi.is_finite()) {
        return Err(Error::InvalidParams(format!("bad radial range {lo}..{hi}")));
    }
    let radii: Vec<f64> = if steps == 0 {
        vec![lo]
    } else {
        (0..=steps).map(|k| lo + (hi - lo) * k as f64 / steps as f64).collect()
    };
    let rows = radii.par_iter().map(|&r| radial_row(&base.polar(r, theta), r, mode)).collect();
    let (c, s) = (theta.cos(), theta.sin());
    let critical_radii = (
        (c > 1e-15).then(|| base.lambda_c_cr() / c),
        (s > 1e-15).then(|| base.lambda_i_cr() / s),
    );
    Ok(RadialSweep {
        theta,
        rows,
        critical_radii,
    })
}

fn radial_row(p: &DoubleDickeParams, r: f64, mode: &RadialMode) -> RadialRow {
    let info = classify_double_phase(p);
    let mut row = RadialRow {
        r,
        lambda_c: p.lambda_c,
        lambda_i: p.lambda_i,
        phase: info.phase,
        dx: f64::NAN,
        dp: f64::NAN,
        hp: f64::NAN,
        s_vn: f64::NAN,
        s_vn_offset: f64::NAN,
        gaps: double_gaps(p).ok(),
        ed: None,
        failure: None,
    };
    let offset = DegeneracyOffset::from_degeneracy(info.vacuum_degeneracy(p)).unwrap_or_default();
    let result: Result<(FluctuationReport, f64)> = match mode {
        RadialMode::Thermo => hp_double(p).and_then(|fl| Ok((fl, entropy_from_hp(fl.hp, DegeneracyOffset::NONE)?))),
        RadialMode::Ed { n_spins, tol, opts } => super::converge_double_cutoff(p, *n_spins, *tol, opts).map(|c| {
            row.ed = Some(EdRowInfo {
                n_spins: *n_spins,
                n_max: c.n_max,
                gap01: c.result.gap01,
                parity: c.result.parity,
                converged: c.result.cutoff_converged,
                cutoff_warning: c.result.cutoff_warning(),
            });
            (c.fluctuations, c.entropy)
        }),
    };
    match result {
        Ok((fl, s)) => {
            row.dx = fl.dx;
            row.dp = fl.dp;
            row.hp = fl.hp;
            row.s_vn = s;
            row.s_vn_offset = s + offset.bits();
        }
        Err(Error::CriticalPointDivergence { .. }) => {
            row.dx = f64::INFINITY;
            row.hp = f64::INFINITY;
            row.s_vn = f64::INFINITY;
            row.s_vn_offset = f64::INFINITY;
            row.failure = Some("critical-point".into());
        }
        Err(e) => row.failure = Some(e.to_string()),
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dicke::{self, DickeParams};

    #[test]
    fn phase_examples() {
        let info = classify_double_phase(&DoubleDickeParams::resonant(0.3, 0.2));
        assert_eq!(info.phase, DoublePhase::Normal);
        assert_eq!(info.phase.degeneracy(), 1);
        let info = classify_double_phase(&DoubleDickeParams::resonant(0.7, 0.2));
        assert_eq!(info.phase, DoublePhase::SuperradiantReal);
        assert_eq!(info.phase.degeneracy(), 2);
        let info = classify_double_phase(&DoubleDickeParams::resonant(0.7, 0.7));
        assert_eq!(info.phase, DoublePhase::SuperradiantDouble);
        assert_eq!(info.phase.degeneracy(), 4);
        assert!(classify_double_phase(&DoubleDickeParams::resonant(0.5, 0.5)).double_point());
    }

    #[test]
    fn decoupled_gaps() {
        let g = double_gaps(&DoubleDickeParams::resonant(0.0, 0.0)).unwrap();
        assert!(g.iter().all(|x| (x - 1.0).abs() < 1e-14));
        assert_eq!(hp_double(&DoubleDickeParams::resonant(0.0, 0.0)).unwrap().hp, 0.5);
    }

    #[test]
    fn one_gap_closes_on_lines_and_at_the_double_point() {
        let soft = |p: &DoubleDickeParams| double_gaps(p).unwrap().iter().filter(|g| **g < 1e-8).count();
        assert_eq!(soft(&DoubleDickeParams::resonant(0.5, 0.2)), 1);
        assert_eq!(soft(&DoubleDickeParams::resonant(0.3, 0.5)), 1);
        let dp = DoubleDickeParams::resonant(0.5, 0.5);
        assert_eq!(soft(&dp), 1);
        // the soft gap closes linearly along the diagonal; the others tend to 1/φ and φ
        let near = double_gaps(&DoubleDickeParams::resonant(0.5 * (1.0 - 1e-6), 0.5 * (1.0 - 1e-6))).unwrap();
        let phi = 0.5 * (1.0 + 5f64.sqrt());
        assert!((near[0] / 2e-6 - 1.0).abs() < 1e-3, "{near:?}");
        assert!((near[1] - 1.0 / phi).abs() < 1e-4 && (near[2] - phi).abs() < 1e-4);
    }

    #[test]
    fn reduces_to_single_chain_form() {
        for lambda in [0.3, 0.9] {
            let p = DoubleDickeParams::new(1.2, 0.8, 1.1, lambda, 0.0).unwrap();
            let (bc, _) = default_branches(&p);
            let f3 = build_double_quadratic_form(&p, bc.epsilon(), 0).unwrap();
            let f2 = dicke::quadratic_form(&p.real_chain(), bc.epsilon()).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    assert!((f3.a()[(i, j)] - f2.a()[(i, j)]).norm() < 1e-12);
                    assert!((f3.b()[(i, j)] - f2.b()[(i, j)]).norm() < 1e-12);
                }
            }
            let hp3 = hp_double(&p).unwrap();
            let hp2 = dicke::hp_thermo(&p.real_chain()).unwrap();
            assert!((hp3.hp - hp2.hp).abs() < 1e-10);
        }
    }

    #[test]
    fn stable_normal_point() {
        let g = double_gaps(&DoubleDickeParams::resonant(0.3, 0.45)).unwrap();
        assert!(g.iter().all(|&x| x > 0.0));
        assert!(g[0] <= g[1] && g[1] <= g[2]);
    }

    #[test]
    fn double_point_soft_polariton_matches_closed_form() {
        let e = lower_polariton(&DoubleDickeParams::resonant(0.5, 0.5)).unwrap();
        let expected = [
            C64::new(1.0, 0.0),
            C64::new(-0.5, 0.0),
            C64::new(0.0, 0.5),
            C64::new(0.0, 0.0),
            C64::new(0.5, 0.0),
            C64::new(0.0, -0.5),
        ];
        for (a, b) in e.iter().zip(expected) {
            assert!((a - b).norm() < 1e-10, "{e:?}");
        }
    }

    #[test]
    fn double_point_value_is_independent_of_regularization() {
        let p = DoubleDickeParams::resonant(0.5, 0.5);
        let a = hp_at_double_point(&p, 1.0).unwrap().hp;
        let b = hp_at_double_point(&p, 0.01).unwrap().hp;
        let c = hp_at_double_point(&p, 37.0).unwrap().hp;
        assert!((a - b).abs() < 1e-10 && (a - c).abs() < 1e-10);
        assert!((a - (0.5 + 1.0 / 5f64.sqrt())).abs() < 1e-10, "{a}");
    }

    #[test]
    fn double_point_is_the_limit_along_the_diagonal() {
        let at = hp_double(&DoubleDickeParams::resonant(0.5, 0.5)).unwrap().hp;
        let near = hp_double(&DoubleDickeParams::resonant(0.5 * (1.0 - 1e-6), 0.5 * (1.0 - 1e-6))).unwrap().hp;
        assert!((at - near).abs() < 1e-5, "{at} vs {near}");
    }

    #[test]
    fn critical_lines_diverge() {
        let err = hp_double(&DoubleDickeParams::resonant(0.5, 0.2)).unwrap_err();
        assert!(matches!(err, Error::CriticalPointDivergence { .. }));
        let g = double_gaps(&DoubleDickeParams::resonant(0.5, 0.2)).unwrap();
        assert!(g[0] < 1e-7 && g[1] > 0.1);
    }

    #[test]
    fn lower_polariton_is_normalized() {
        let e = lower_polariton(&DoubleDickeParams::resonant(0.3, 0.2)).unwrap();
        let norm: f64 = e[..3].iter().map(|z| z.norm_sqr()).sum::<f64>() - e[3..].iter().map(|z| z.norm_sqr()).sum::<f64>();
        assert!((norm - 1.0).abs() < 1e-12);
        assert!(matches!(lower_polariton(&DoubleDickeParams::resonant(0.7, 0.2)), Err(Error::Regime(_))));
    }

    #[test]
    fn theta_zero_sweep_matches_single_chain() {
        let sweep = radial_sweep(&DoubleDickeParams::resonant(0.0, 0.0), 0.0, (0.0, 1.0), 20, &RadialMode::Thermo).unwrap();
        for row in &sweep.rows {
            match dicke::hp_thermo(&DickeParams::resonant(row.r)) {
                Ok(fl) => assert!((row.hp - fl.hp).abs() < 1e-10, "{row:?}"),
                Err(_) => assert_eq!(row.failure.as_deref(), Some("critical-point")),
            }
        }
        assert_eq!(sweep.critical_radii.0, Some(0.5));
        assert_eq!(sweep.critical_radii.1, None);
    }
}
