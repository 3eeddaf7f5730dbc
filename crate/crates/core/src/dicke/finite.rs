//! Finite-N exact diagonalization in the symmetric `j = N/2` sector.

use super::{classify_phase, solve_thermo, DickeParams, Phase};
use crate::ed::{self, EdOptions, EdResult};
use crate::error::{Error, Result};
use crate::fit::{fit_critical_exponent, PowerLawFit};
use crate::gaussian::FluctuationReport;
use crate::sparse::CsrMatrix;

/// Stored nonzeros per row of the Dicke Hamiltonian (diagonal plus four ladder products).
pub const NNZ_PER_ROW: usize = 5;

/// Photon cutoff times `N + 1` spin states; state `(n, m)` sits at `n (N + 1) + (m + j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdBasis {
    pub n_spins: usize,
    pub n_max: usize,
}

impl EdBasis {
    pub fn new(n_spins: usize, n_max: usize) -> Result<Self> {
        if n_spins == 0 {
            return Err(Error::InvalidParams("need at least one spin".into()));
        }
        if n_max < 1 {
            return Err(Error::Cutoff(format!("photon cutoff must be at least 1, got {n_max}")));
        }
        Ok(Self { n_spins, n_max })
    }

    pub fn j(&self) -> f64 {
        self.n_spins as f64 / 2.0
    }

    pub fn spin_dim(&self) -> usize {
        self.n_spins + 1
    }

    pub fn dim(&self) -> usize {
        (self.n_max + 1) * self.spin_dim()
    }

    pub fn estimated_nnz(&self) -> usize {
        NNZ_PER_ROW * self.dim()
    }

    /// Flat index of photon number `n` and `k = m + j ∈ 0..=N`.
    pub fn index(&self, n: usize, k: usize) -> usize {
        n * self.spin_dim() + k
    }

    pub fn decompose(&self, index: usize) -> (usize, usize) {
        (index / self.spin_dim(), index % self.spin_dim())
    }

    /// Eigenvalues `(-1)^{n + m + j}` of `exp(iπ N_exc)`.
    pub fn parity(&self) -> Vec<i8> {
        (0..self.dim())
            .map(|i| {
                let (n, k) = self.decompose(i);
                if (n + k) % 2 == 0 {
                    1
                } else {
                    -1
                }
            })
            .collect()
    }
}

/// `⟨k+1|J₊|k⟩` for `k = m + j`, spin `N/2`.
pub(crate) fn ladder(n_spins: usize, k: usize) -> f64 {
    (((n_spins - k) * (k + 1)) as f64).sqrt()
}

pub fn build_hamiltonian(p: &DickeParams, basis: &EdBasis) -> Result<CsrMatrix<f64>> {
    p.validate()?;
    let n_spins = basis.n_spins;
    let g = p.lambda / (n_spins as f64).sqrt();
    let mut t = Vec::with_capacity(basis.estimated_nnz());
    for n in 0..=basis.n_max {
        for k in 0..=n_spins {
            let i = basis.index(n, k);
            let m = k as f64 - basis.j();
            t.push((i, i, p.omega * n as f64 + p.omega0 * m));
            if g == 0.0 {
                continue;
            }
            // a† (J₊ + J₋) and its conjugate
            if n < basis.n_max {
                let a_up = ((n + 1) as f64).sqrt();
                if k < n_spins {
                    let v = g * a_up * ladder(n_spins, k);
                    let f = basis.index(n + 1, k + 1);
                    t.push((f, i, v));
                    t.push((i, f, v));
                }
                if k > 0 {
                    let v = g * a_up * ladder(n_spins, k - 1);
                    let f = basis.index(n + 1, k - 1);
                    t.push((f, i, v));
                    t.push((i, f, v));
                }
            }
        }
    }
    Ok(CsrMatrix::from_triplets(basis.dim(), t))
}

/// Lowest state and splitting; see [`ed::solve_by_parity`] for the degeneracy rule.
pub fn solve_ed(p: &DickeParams, basis: &EdBasis, opts: &EdOptions) -> Result<EdResult<f64>> {
    opts.check_budget(basis.estimated_nnz())?;
    let h = build_hamiltonian(p, basis)?;
    ed::solve_by_parity(&h, &basis.parity(), basis.n_max + 1, opts)
}

/// Photon fluctuations of an ED ground state.
pub fn photon_moments_ed(result: &EdResult<f64>, basis: &EdBasis) -> Result<FluctuationReport> {
    ed::photon_fluctuations(&result.state, basis.n_max + 1)
}

/// Entanglement entropy (bits) between the photon and the spins.
pub fn photon_entropy_ed(result: &EdResult<f64>, basis: &EdBasis) -> f64 {
    ed::photon_entropy(&result.state, basis.n_max + 1)
}

/// Coherent-shift cutoff estimate `⌈4 (N λ²/ω² + √N)⌉`.
pub fn cutoff_estimate(p: &DickeParams, n_spins: usize) -> usize {
    let n = n_spins as f64;
    (4.0 * (n * p.lambda * p.lambda / (p.omega * p.omega) + n.sqrt())).ceil() as usize
}

/// Starting cutoff of the doubling search: the mean-field photon number plus
/// a few standard deviations, or a small fixed floor.
fn cutoff_seed(p: &DickeParams, n_spins: usize) -> usize {
    let alpha = match classify_phase(p).phase {
        Phase::Superradiant if !classify_phase(p).critical => solve_thermo(p, 1).map_or(0.0, |s| s.alpha_coh),
        _ => 0.0,
    };
    let mean = n_spins as f64 * alpha * alpha;
    ((mean + 4.0 * (mean + 1.0).sqrt() + 4.0).ceil() as usize).max(8)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergedEd {
    pub basis: EdBasis,
    pub result: EdResult<f64>,
    pub fluctuations: FluctuationReport,
}

/// Smallest cutoff of a doubling search whose uncertainty product moves by less than
/// `tol` when the cutoff grows by 25%.
pub fn converge_cutoff(p: &DickeParams, n_spins: usize, tol: f64, opts: &EdOptions) -> Result<ConvergedEd> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParams(format!("tolerance must be positive, got {tol}")));
    }
    p.validate()?;
    let solve = |n_max: usize| -> Result<(EdBasis, EdResult<f64>, FluctuationReport)> {
        let basis = EdBasis::new(n_spins, n_max)?;
        let result = solve_ed(p, &basis, opts)?;
        let fl = photon_moments_ed(&result, &basis)?;
        Ok((basis, result, fl))
    };
    if p.lambda == 0.0 {
        let (basis, mut result, fluctuations) = solve(1)?;
        result.cutoff_converged = true;
        return Ok(ConvergedEd {
            basis,
            result,
            fluctuations,
        });
    }
    let (_, (basis, mut result, fluctuations)) = ed::doubling_search(cutoff_seed(p, n_spins), tol, |n_max| {
        let out = solve(n_max)?;
        let hp = out.2.hp;
        Ok((out, hp))
    })?;
    result.cutoff_converged = true;
    Ok(ConvergedEd {
        basis,
        result,
        fluctuations,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingPoint {
    pub n_spins: usize,
    pub hp: f64,
    pub entropy: f64,
    pub n_max: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingReport {
    pub points: Vec<ScalingPoint>,
    /// Fit of ln hp against ln N over the upper decade of N.
    pub fit: PowerLawFit,
    /// Two-standard-error interval of the exponent.
    pub interval: (f64, f64),
    pub window: (usize, usize),
}

/// Uncertainty product at fixed couplings for a list of spin counts, fitted as a power of N
/// over the largest decade.
pub fn scaling_at_critical(p: &DickeParams, ns: &[usize], tol: f64, opts: &EdOptions) -> Result<ScalingReport> {
    let (lo, hi) = (
        ns.iter().copied().min().unwrap_or(0),
        ns.iter().copied().max().unwrap_or(0),
    );
    if lo == 0 || (hi as f64 / lo as f64) < 10f64.powf(1.5) - 1e-9 {
        return Err(Error::DegenerateFit(format!("spin counts {lo}..{hi} span less than 1.5 decades")));
    }
    let points = ns
        .iter()
        .map(|&n| {
            let c = converge_cutoff(p, n, tol, opts)?;
            Ok(ScalingPoint {
                n_spins: n,
                hp: c.fluctuations.hp,
                entropy: photon_entropy_ed(&c.result, &c.basis),
                n_max: c.basis.n_max,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let window = (hi.div_ceil(10), hi);
    let samples: Vec<(f64, f64)> = points
        .iter()
        .filter(|pt| pt.n_spins >= window.0)
        .map(|pt| (pt.n_spins as f64, pt.hp))
        .collect();
    let fit = fit_top_decade(&samples)?;
    let interval = (fit.exponent - 2.0 * fit.stderr, fit.exponent + 2.0 * fit.stderr);
    Ok(ScalingReport {
        points,
        fit,
        interval,
        window,
    })
}

/// Power-law fit that accepts fewer than five points, as the top decade of a
/// sparse N list often holds only three or four.
fn fit_top_decade(samples: &[(f64, f64)]) -> Result<PowerLawFit> {
    if samples.len() >= 5 {
        return fit_critical_exponent(samples);
    }
    if samples.len() < 2 {
        return Err(Error::DegenerateFit("fewer than two sizes in the fit window".into()));
    }
    let logs: Vec<(f64, f64)> = samples.iter().map(|(n, v)| (n.ln(), v.ln())).collect();
    let f = crate::fit::linear_fit(&logs)?;
    let residual = (f.residuals.iter().map(|r| r * r).sum::<f64>() / logs.len() as f64).sqrt();
    Ok(PowerLawFit {
        exponent: f.slope,
        intercept: f.intercept,
        residual,
        stderr: f.stderr,
        residuals: f.residuals,
        n_samples: samples.len(),
    })
}
