//! The double-quadrature Dicke model
//! `ω a†a + Σ_k ω0_k J_z^k + (λ_C/√N)(a + a†)(J₊^C + J₋^C) + i(λ_I/√N)(a - a†)(J₊^I + J₋^I)`,
//! where one chain couples to each photon quadrature.

mod finite;
mod thermo;

pub use finite::*;
pub use thermo::*;

use crate::dicke::DickeParams;
use crate::error::{Error, Result};
use crate::holstein::critical_coupling;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleDickeParams {
    pub omega_cav: f64,
    pub omega0_c: f64,
    pub omega0_i: f64,
    pub lambda_c: f64,
    pub lambda_i: f64,
}

impl DoubleDickeParams {
    pub fn new(omega_cav: f64, omega0_c: f64, omega0_i: f64, lambda_c: f64, lambda_i: f64) -> Result<Self> {
        let p = Self {
            omega_cav,
            omega0_c,
            omega0_i,
            lambda_c,
            lambda_i,
        };
        p.validate()?;
        Ok(p)
    }

    /// All three frequencies equal to one.
    pub fn resonant(lambda_c: f64, lambda_i: f64) -> Self {
        Self {
            omega_cav: 1.0,
            omega0_c: 1.0,
            omega0_i: 1.0,
            lambda_c,
            lambda_i,
        }
    }

    /// Couplings `(r cos θ, r sin θ)` with the frequencies of `self`.
    pub fn polar(&self, r: f64, theta: f64) -> Self {
        Self {
            lambda_c: r * theta.cos(),
            lambda_i: r * theta.sin(),
            ..*self
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("omega_cav", self.omega_cav), ("omega0_c", self.omega0_c), ("omega0_i", self.omega0_i)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParams(format!("{name} must be positive, got {v}")));
            }
        }
        for (name, v) in [("lambda_c", self.lambda_c), ("lambda_i", self.lambda_i)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::InvalidParams(format!("{name} must be non-negative, got {v}")));
            }
        }
        Ok(())
    }

    pub fn lambda_c_cr(&self) -> f64 {
        critical_coupling(self.omega_cav, self.omega0_c)
    }

    pub fn lambda_i_cr(&self) -> f64 {
        critical_coupling(self.omega_cav, self.omega0_i)
    }

    /// Exchange the roles of the two chains.
    pub fn swapped(&self) -> Self {
        Self {
            omega0_c: self.omega0_i,
            omega0_i: self.omega0_c,
            lambda_c: self.lambda_i,
            lambda_i: self.lambda_c,
            ..*self
        }
    }

    /// The single-chain model made of the cavity and chain C.
    pub fn real_chain(&self) -> DickeParams {
        DickeParams {
            omega: self.omega_cav,
            omega0: self.omega0_c,
            lambda: self.lambda_c,
        }
    }

    /// Both couplings at their critical values.
    pub fn double_point(&self) -> Self {
        Self {
            lambda_c: self.lambda_c_cr(),
            lambda_i: self.lambda_i_cr(),
            ..*self
        }
    }
}
