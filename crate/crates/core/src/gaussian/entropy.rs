//! Entropies of the single-mode reduced state of a Gaussian ground state.
//!
//! The photon reduced density matrix of a quadratic-Hamiltonian ground state
//! is thermal in a Bogoliubov-rotated mode, with occupation fixed entirely by
//! the rotated uncertainty product `h = Δx̃Δp̃`: `q = e^{-Δ} = (2h-1)/(2h+1)`.
//! All entropies are in bits.

use std::collections::BTreeMap;
use std::f64::consts::LN_2;

use super::moments::HEISENBERG_TOL;
use crate::error::{Error, Result};

/// Additive entropy (in bits) accounting for a degenerate family of broken-symmetry vacua.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct DegeneracyOffset(u8);

impl DegeneracyOffset {
    pub const NONE: Self = Self(0);

    pub fn new(bits: u8) -> Result<Self> {
        if bits <= 2 {
            Ok(Self(bits))
        } else {
            Err(Error::Domain(format!("degeneracy offset must be 0, 1 or 2 bits, got {bits}")))
        }
    }

    /// Map a ground-state degeneracy 1, 2 or 4 to 0, 1 or 2 bits.
    pub fn from_degeneracy(degeneracy: u32) -> Result<Self> {
        match degeneracy {
            1 => Ok(Self(0)),
            2 => Ok(Self(1)),
            4 => Ok(Self(2)),
            d => Err(Error::Domain(format!("unsupported ground-state degeneracy {d}"))),
        }
    }

    pub fn bits(self) -> f64 {
        f64::from(self.0)
    }
}

/// Rényi orders reported when the caller does not ask for specific ones.
pub const DEFAULT_RENYI_ORDERS: [f64; 2] = [0.5, 2.0];

/// Photon entropies in bits. With a nonzero offset the state is read as an equal mixture of
/// `2^offset` orthogonal vacua, which shifts every Rényi entropy by the same amount.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyReport {
    /// Von Neumann entropy including the degeneracy offset.
    pub s_vn: f64,
    pub s_renyi: BTreeMap<RenyiOrder, f64>,
    pub pseudo_energy: f64,
    pub degeneracy_offset: DegeneracyOffset,
}

/// Rényi order α, ordered by value so it can key a map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenyiOrder(pub f64);

impl Eq for RenyiOrder {}

impl PartialOrd for RenyiOrder {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RenyiOrder {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl EntropyReport {
    pub fn from_hp(hp: f64, offset: DegeneracyOffset, alphas: &[f64]) -> Result<Self> {
        let s_vn = entropy_from_hp(hp, offset)?;
        let s_renyi = alphas
            .iter()
            .map(|&a| Ok((RenyiOrder(a), renyi_entropy(hp, a)? + offset.bits())))
            .collect::<Result<_>>()?;
        Ok(Self {
            s_vn,
            s_renyi,
            pseudo_energy: pseudo_energy(hp, 0.0)?,
            degeneracy_offset: offset,
        })
    }

    /// Entropy without the degeneracy offset.
    pub fn s_vn_bare(&self) -> f64 {
        self.s_vn - self.degeneracy_offset.bits()
    }
}

fn checked_hp(hp: f64) -> Result<f64> {
    if hp.is_nan() || hp < 0.5 - HEISENBERG_TOL {
        Err(Error::Domain(format!("uncertainty product {hp} is below 1/2")))
    } else {
        Ok(hp.max(0.5))
    }
}

/// `(h + ½) log₂(h + ½) - (h - ½) log₂(h - ½)`, plus the degeneracy offset.
pub fn entropy_from_hp(hp: f64, offset: DegeneracyOffset) -> Result<f64> {
    let h = checked_hp(hp)?;
    if h.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let lower = h - 0.5;
    let s = if lower == 0.0 {
        0.0
    } else {
        // log₂(h - ½) + (h + ½) log₂(1 + 1/(h - ½)), free of the large-h cancellation
        lower.log2() + (h + 0.5) * (1.0 / lower).ln_1p() / LN_2
    };
    Ok(s + offset.bits())
}

/// `S_α = [α - log₂((1 + 2h)^α - (2h - 1)^α)] / (1 - α)`.
pub fn renyi_entropy(hp: f64, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!("Rényi order must be positive and finite, got {alpha}")));
    }
    if alpha == 1.0 {
        return Err(Error::Domain("Rényi order 1 is the von Neumann entropy".into()));
    }
    let h = checked_hp(hp)?;
    if h.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let ln_q = ((2.0 * h - 1.0) / (2.0 * h + 1.0)).ln();
    // log₂[(2h+1)^α (1 - q^α)]
    let log_sum = alpha * (2.0 * h + 1.0).log2() + (-(alpha * ln_q).exp_m1()).ln() / LN_2;
    Ok((alpha - log_sum) / (1.0 - alpha))
}

/// `Δ = ln[(2s + 1)/(2s - 1)]` with `s = √(hp² + ζ)`; infinite for a pure state.
pub fn pseudo_energy(hp: f64, zeta: f64) -> Result<f64> {
    let s2 = hp * hp + zeta;
    if s2.is_nan() || s2 < 0.25 - HEISENBERG_TOL {
        return Err(Error::Domain(format!("hp² + ζ = {s2} is below 1/4")));
    }
    let s = s2.max(0.25).sqrt();
    if s == 0.5 {
        return Ok(f64::INFINITY);
    }
    Ok((2.0 / (2.0 * s - 1.0)).ln_1p())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_state_has_zero_entropy() {
        assert_eq!(entropy_from_hp(0.5, DegeneracyOffset::NONE).unwrap(), 0.0);
        assert_eq!(renyi_entropy(0.5, 2.0).unwrap(), 0.0);
        assert_eq!(renyi_entropy(0.5, 0.5).unwrap(), 0.0);
        assert_eq!(pseudo_energy(0.5, 0.0).unwrap(), f64::INFINITY);
    }

    #[test]
    fn double_point_value() {
        let sqrt5 = 5f64.sqrt();
        let hp = 0.5 + 1.0 / sqrt5;
        let expected = (1.0 + sqrt5) / sqrt5 * (1.0 + sqrt5).log2() - sqrt5.log2();
        let s = entropy_from_hp(hp, DegeneracyOffset::NONE).unwrap();
        assert!((s - expected).abs() < 1e-14);
        assert!((s - 1.29).abs() < 5e-3);
    }

    #[test]
    fn large_product_is_logarithmic() {
        // S → log₂(e h) for h ≫ 1
        let s = entropy_from_hp(100.0, DegeneracyOffset::NONE).unwrap();
        assert!((s - (std::f64::consts::E * 100.0).log2()).abs() < 1e-4);
        // S₂ → log₂(2h)
        let s2 = renyi_entropy(1e4, 2.0).unwrap();
        assert!((s2 - 2e4f64.log2()).abs() < 1e-6);
    }

    #[test]
    fn renyi_matches_geometric_series() {
        // ρ eigenvalues p_k = (1 - q) q^k with q = e^{-Δ}, Δ = ln((2h+1)/(2h-1))
        let h = 10.0;
        let q = 19.0f64 / 21.0;
        let mut tr2 = 0.0;
        let mut p = 1.0 - q;
        while p > 1e-300 {
            tr2 += p * p;
            p *= q;
        }
        assert!((renyi_entropy(h, 2.0).unwrap() + tr2.log2()).abs() < 1e-12);
    }

    #[test]
    fn pseudo_energy_values() {
        assert!((pseudo_energy(1.0, 0.0).unwrap() - 3f64.ln()).abs() < 1e-15);
        // only hp² + ζ enters
        assert!((pseudo_energy(2f64.sqrt(), -1.0).unwrap() - 3f64.ln()).abs() < 1e-15);
        assert!(pseudo_energy(0.3, 0.0).is_err());
    }

    #[test]
    fn domain_errors() {
        assert!(entropy_from_hp(0.4, DegeneracyOffset::NONE).is_err());
        assert!(renyi_entropy(2.0, 1.0).is_err());
        assert!(renyi_entropy(2.0, -1.0).is_err());
        assert!(DegeneracyOffset::new(3).is_err());
        assert!(DegeneracyOffset::from_degeneracy(3).is_err());
        assert_eq!(DegeneracyOffset::from_degeneracy(4).unwrap().bits(), 2.0);
    }

    #[test]
    fn offset_is_additive() {
        let a = entropy_from_hp(1.3, DegeneracyOffset::NONE).unwrap();
        let b = entropy_from_hp(1.3, DegeneracyOffset::new(1).unwrap()).unwrap();
        assert!((b - a - 1.0).abs() < 1e-15);
    }
}
