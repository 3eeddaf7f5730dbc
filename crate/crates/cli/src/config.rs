//! Sweep configuration: parsing (JSON or TOML), validation and hashing.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    Dicke,
    DoubleDicke,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Thermo,
    Ed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

/// Either an explicit list or `points` evenly spaced values from `start` to `stop`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Axis {
    Values(Vec<f64>),
    Range { start: f64, stop: f64, points: usize },
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Axis::Values(v) => v.clone(),
            Axis::Range { start, stop, points } => match points {
                0 => vec![],
                1 => vec![*start],
                n => (0..*n).map(|k| start + (stop - start) * k as f64 / (n - 1) as f64).collect(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Radial {
    /// Polar angle in radians, in [0, π/2].
    pub theta: f64,
    pub r: Axis,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Frequencies {
    pub omega_cav: f64,
    /// Spin splitting of the single-chain model.
    pub omega0: f64,
    pub omega0_c: f64,
    pub omega0_i: f64,
}

impl Default for Frequencies {
    fn default() -> Self {
        Self {
            omega_cav: 1.0,
            omega0: 1.0,
            omega0_c: 1.0,
            omega0_i: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EdConfig {
    pub n_spins: Vec<usize>,
    /// Fixed photon cutoff; when absent the cutoff is converged per point.
    pub n_max: Option<usize>,
    /// Convergence threshold on ΔxΔp for the cutoff search.
    pub cutoff_tol: f64,
    pub eig_tol: f64,
    pub max_matvecs: usize,
    pub krylov_dim: usize,
    pub seed: u64,
    pub budget_nnz: usize,
}

impl Default for EdConfig {
    fn default() -> Self {
        let o = dicke_hp::ed::EdOptions::default();
        Self {
            n_spins: Vec::new(),
            n_max: None,
            cutoff_tol: 1e-6,
            eig_tol: o.lanczos.tol,
            max_matvecs: o.lanczos.max_matvecs,
            krylov_dim: o.lanczos.krylov_dim,
            seed: o.lanczos.seed,
            budget_nnz: o.budget_nnz,
        }
    }
}

impl EdConfig {
    pub fn options(&self) -> dicke_hp::ed::EdOptions {
        let mut o = dicke_hp::ed::EdOptions::with_seed(self.seed);
        o.lanczos.tol = self.eig_tol;
        o.lanczos.max_matvecs = self.max_matvecs;
        o.lanczos.krylov_dim = self.krylov_dim;
        o.budget_nnz = self.budget_nnz;
        o
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub format: Format,
    pub path: Option<String>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            format: Format::Csv,
            path: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub model: Model,
    pub mode: Mode,
    #[serde(default)]
    pub frequencies: Frequencies,
    /// Coupling grid of the single-chain model.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Axis>,
    /// Cartesian grid of the two-chain model (λ_C outer, λ_I inner).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_c: Option<Axis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_i: Option<Axis>,
    /// Ray of the two-chain model.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radial: Option<Radial>,
    #[serde(default)]
    pub ed: EdConfig,
    #[serde(default = "default_renyi")]
    pub renyi: Vec<f64>,
    #[serde(default)]
    pub output: OutputConfig,
}

fn default_renyi() -> Vec<f64> {
    dicke_hp::gaussian::DEFAULT_RENYI_ORDERS.to_vec()
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl SweepConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// JSON when the text starts with `{`, TOML otherwise.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| bad(format!("invalid JSON config: {e}")))
        } else {
            toml::from_str(text).map_err(|e| bad(format!("invalid config: {e}")))
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let f = &self.frequencies;
        for (name, v) in [("omega_cav", f.omega_cav), ("omega0", f.omega0), ("omega0_c", f.omega0_c), ("omega0_i", f.omega0_i)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(bad(format!("frequency {name} must be positive, got {v}")));
            }
        }
        let check_axis = |name: &str, axis: &Axis| -> Result<(), CliError> {
            let v = axis.values();
            if v.is_empty() {
                return Err(bad(format!("grid `{name}` is empty")));
            }
            if v.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
                return Err(bad(format!("grid `{name}` must hold finite nonnegative couplings")));
            }
            Ok(())
        };
        match self.model {
            Model::Dicke => {
                if self.lambda_c.is_some() || self.lambda_i.is_some() || self.radial.is_some() {
                    return Err(bad("the dicke model takes a `lambda` grid only"));
                }
                check_axis("lambda", self.lambda.as_ref().ok_or_else(|| bad("missing `lambda` grid"))?)?;
            }
            Model::DoubleDicke => {
                if self.lambda.is_some() {
                    return Err(bad("the double-dicke model takes `lambda_c`/`lambda_i` or `radial`, not `lambda`"));
                }
                match (&self.radial, &self.lambda_c, &self.lambda_i) {
                    (Some(r), None, None) => {
                        if !(0.0..=std::f64::consts::FRAC_PI_2 + 1e-12).contains(&r.theta) {
                            return Err(bad(format!("radial theta {} outside [0, π/2]", r.theta)));
                        }
                        check_axis("radial.r", &r.r)?;
                    }
                    (None, Some(c), Some(i)) => {
                        check_axis("lambda_c", c)?;
                        check_axis("lambda_i", i)?;
                    }
                    _ => return Err(bad("double-dicke needs either `radial` or both `lambda_c` and `lambda_i`")),
                }
            }
        }
        let ed = &self.ed;
        if ed.budget_nnz == 0 {
            return Err(bad("ED budget must be positive"));
        }
        if self.mode == Mode::Ed {
            if ed.n_spins.is_empty() || ed.n_spins.contains(&0) {
                return Err(bad("ED mode needs a nonempty list of positive `ed.n_spins`"));
            }
            if ed.n_max == Some(0) {
                return Err(bad("`ed.n_max` must be at least 1"));
            }
            if !(ed.cutoff_tol > 0.0 && ed.eig_tol > 0.0) || ed.max_matvecs == 0 || ed.krylov_dim < 4 {
                return Err(bad("ED tolerances must be positive, max_matvecs > 0 and krylov_dim >= 4"));
            }
        }
        if let Some(a) = self.renyi.iter().find(|a| !(a.is_finite() && **a > 0.0) || **a == 1.0) {
            return Err(bad(format!("Rényi order {a} must be positive and different from 1")));
        }
        Ok(())
    }

    /// Hex SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_vec(self).expect("config serializes");
        Sha256::digest(&canonical).iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOML: &str = r#"
model = "dicke"
mode = "thermo"
lambda = { start = 0.0, stop = 1.0, points = 11 }
"#;

    #[test]
    fn toml_and_json_agree() {
        let a = SweepConfig::parse(TOML).unwrap();
        let b = SweepConfig::parse(r#"{"model": "dicke", "mode": "thermo", "lambda": {"start": 0.0, "stop": 1.0, "points": 11}}"#).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.hash(), b.hash());
        a.validate().unwrap();
        assert_eq!(a.lambda.unwrap().values().len(), 11);
    }

    #[test]
    fn explicit_values() {
        let c = SweepConfig::parse("model = \"dicke\"\nmode = \"thermo\"\nlambda = [0.1, 0.2]\n").unwrap();
        assert_eq!(c.lambda.unwrap().values(), vec![0.1, 0.2]);
    }

    #[test]
    fn rejects_bad_configs() {
        for text in [
            "model = \"dicke\"\nmode = \"thermo\"\nlambda = []\n",
            "model = \"dicke\"\nmode = \"ed\"\nlambda = [0.1]\n",
            "model = \"double-dicke\"\nmode = \"thermo\"\nlambda = [0.1]\n",
            "model = \"dicke\"\nmode = \"thermo\"\nlambda = [0.1]\nrenyi = [1.0]\n",
            "model = \"dicke\"\nmode = \"thermo\"\nlambda = [0.1]\n[ed]\nbudget_nnz = 0\n",
        ] {
            let c = SweepConfig::parse(text).unwrap();
            assert!(matches!(c.validate(), Err(CliError::Config(_))), "{text}");
        }
        assert!(SweepConfig::parse("model = \"dicke\"\nmode = \"thermo\"\nbogus = 1\n").is_err());
    }

    #[test]
    fn hash_tracks_content() {
        let a = SweepConfig::parse(TOML).unwrap();
        let mut b = a.clone();
        b.ed.seed += 1;
        assert_ne!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
    }
}
