//! Power-law fits on columns of a sweep output file.

use std::path::Path;

use dicke_hp::fit::fit_critical_exponent;
use serde_json::json;

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct FitRequest {
    pub column: String,
    /// Abscissa column: a coupling (with `center`) or a spin count.
    pub x: String,
    /// When set, the abscissa is `|x - center|`.
    pub center: Option<f64>,
    pub window: Option<(f64, f64)>,
    /// Keep only abscissae within a decade of the largest one.
    pub top_decade: bool,
}

/// Column names and rows of a CSV (`#` comments) or JSON sweep file.
pub fn read_table(path: &Path) -> Result<(Vec<String>, Vec<Vec<String>>), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let malformed = |e: &dyn std::fmt::Display| CliError::Config(format!("malformed input {}: {e}", path.display()));
    if text.trim_start().starts_with('{') {
        let doc: serde_json::Value = serde_json::from_str(&text).map_err(|e| malformed(&e))?;
        let columns: Vec<String> = serde_json::from_value(doc["columns"].clone()).map_err(|e| malformed(&e))?;
        let rows: Vec<Vec<serde_json::Value>> = serde_json::from_value(doc["rows"].clone()).map_err(|e| malformed(&e))?;
        let rows = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|v| match v {
                        serde_json::Value::String(s) => s,
                        serde_json::Value::Null => String::new(),
                        other => other.to_string(),
                    })
                    .collect()
            })
            .collect();
        return Ok((columns, rows));
    }
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let columns = reader.headers().map_err(|e| malformed(&e))?.iter().map(String::from).collect();
    let rows = reader
        .records()
        .map(|r| r.map(|rec| rec.iter().map(String::from).collect()).map_err(|e| malformed(&e)))
        .collect::<Result<_, _>>()?;
    Ok((columns, rows))
}

pub fn run_fit(path: &Path, req: &FitRequest) -> Result<serde_json::Value, CliError> {
    let (columns, rows) = read_table(path)?;
    let find = |name: &str| {
        columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| CliError::Config(format!("column `{name}` not found; available: {}", columns.join(", "))))
    };
    let (iy, ix) = (find(&req.column)?, find(&req.x)?);
    let mut samples: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|r| {
            let x: f64 = r.get(ix)?.parse().ok()?;
            let y: f64 = r.get(iy)?.parse().ok()?;
            let x = req.center.map_or(x, |c| (x - c).abs());
            (x.is_finite() && y.is_finite() && x > 0.0 && y > 0.0).then_some((x, y))
        })
        .collect();
    if let Some((lo, hi)) = req.window {
        samples.retain(|&(x, _)| x >= lo && x <= hi);
    }
    if req.top_decade {
        let top = samples.iter().map(|s| s.0).fold(0.0, f64::max);
        samples.retain(|&(x, _)| x >= top / 10.0);
    }
    samples.sort_by(|a, b| a.0.total_cmp(&b.0));
    let fit = fit_critical_exponent(&samples).map_err(|e| CliError::Config(format!("cannot fit: {e}")))?;
    Ok(json!({
        "input": path.display().to_string(),
        "column": req.column,
        "x": req.x,
        "center": req.center,
        "window": [samples.first().map(|s| s.0), samples.last().map(|s| s.0)],
        "n_samples": fit.n_samples,
        "exponent": fit.exponent,
        "stderr": fit.stderr,
        "intercept": fit.intercept,
        "residual": fit.residual,
        "residuals": fit.residuals,
    }))
}
