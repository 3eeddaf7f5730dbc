//! The single-chain Dicke model `ω a†a + ω0 J_z + (λ/√N)(a + a†)(J₊ + J₋)`.

mod finite;
mod thermo;

pub use finite::*;
pub use thermo::*;

use crate::error::{Error, Result};

/// Model parameters, all in one energy unit with ħ = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DickeParams {
    pub omega: f64,
    pub omega0: f64,
    pub lambda: f64,
}

impl DickeParams {
    pub fn new(omega: f64, omega0: f64, lambda: f64) -> Result<Self> {
        let p = Self { omega, omega0, lambda };
        p.validate()?;
        Ok(p)
    }

    /// Resonant model `ω = ω0 = 1`.
    pub fn resonant(lambda: f64) -> Self {
        Self {
            omega: 1.0,
            omega0: 1.0,
            lambda,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return Err(Error::InvalidParams(format!("cavity frequency must be positive, got {}", self.omega)));
        }
        if !(self.omega0 > 0.0 && self.omega0.is_finite()) {
            return Err(Error::InvalidParams(format!("atomic splitting must be positive, got {}", self.omega0)));
        }
        if !(self.lambda >= 0.0 && self.lambda.is_finite()) {
            return Err(Error::InvalidParams(format!("coupling must be non-negative, got {}", self.lambda)));
        }
        Ok(())
    }

    pub fn lambda_cr(&self) -> f64 {
        crate::holstein::critical_coupling(self.omega, self.omega0)
    }

    pub fn with_lambda(&self, lambda: f64) -> Self {
        Self { lambda, ..*self }
    }
}
