//! Least-squares power-law fits on log-log data.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct PowerLawFit {
    /// Slope of ln(value) against ln(distance).
    pub exponent: f64,
    /// Intercept of the log-log line (natural log).
    pub intercept: f64,
    /// Root-mean-square residual of the log-log fit.
    pub residual: f64,
    /// Standard error of the exponent.
    pub stderr: f64,
    pub residuals: Vec<f64>,
    pub n_samples: usize,
}

/// Ordinary least squares `y = intercept + slope·x`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub stderr: f64,
    pub residuals: Vec<f64>,
}

pub fn linear_fit(points: &[(f64, f64)]) -> Result<LinearFit> {
    let n = points.len();
    if n < 2 {
        return Err(Error::DegenerateFit(format!("{n} points cannot determine a line")));
    }
    let nf = n as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / nf;
    let my = points.iter().map(|p| p.1).sum::<f64>() / nf;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit("all abscissae coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residuals: Vec<f64> = points.iter().map(|p| p.1 - intercept - slope * p.0).collect();
    let ssr: f64 = residuals.iter().map(|r| r * r).sum();
    let stderr = if n > 2 { (ssr / (nf - 2.0) / sxx).sqrt() } else { 0.0 };
    Ok(LinearFit {
        slope,
        intercept,
        stderr,
        residuals,
    })
}

/// Fit `value ∝ distance^exponent` from at least five samples spanning a decade.
pub fn fit_critical_exponent(samples: &[(f64, f64)]) -> Result<PowerLawFit> {
    if samples.len() < 5 {
        return Err(Error::DegenerateFit(format!("need at least 5 samples, got {}", samples.len())));
    }
    if let Some(bad) = samples.iter().find(|(d, v)| !(*d > 0.0 && *v > 0.0 && d.is_finite() && v.is_finite())) {
        return Err(Error::DegenerateFit(format!("non-positive or non-finite sample {bad:?}")));
    }
    let (lo, hi) = samples
        .iter()
        .fold((f64::INFINITY, 0.0_f64), |(lo, hi), (d, _)| (lo.min(*d), hi.max(*d)));
    if hi / lo < 10.0 {
        return Err(Error::DegenerateFit(format!("distances span only {:.3} decades", (hi / lo).log10())));
    }
    let logs: Vec<(f64, f64)> = samples.iter().map(|(d, v)| (d.ln(), v.ln())).collect();
    let fit = linear_fit(&logs)?;
    let residual = (fit.residuals.iter().map(|r| r * r).sum::<f64>() / logs.len() as f64).sqrt();
    Ok(PowerLawFit {
        exponent: fit.slope,
        intercept: fit.intercept,
        residual,
        stderr: fit.stderr,
        residuals: fit.residuals,
        n_samples: samples.len(),
    })
}

/// Log-spaced points between `lo` and `hi` inclusive.
pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
}
