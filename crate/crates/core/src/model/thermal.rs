use crate::constants::{HBAR, K_B};
use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

use super::params::SystemParams;

/// Mean thermal occupancy of a bosonic mode, [exp(ħω/k_BT) − 1]⁻¹.
///
/// `omega` is an angular frequency in rad/s and `temperature` is in kelvin.
/// Exactly zero at `T = 0`.
pub fn bose_occupancy<T: Real>(omega: T, temperature: T) -> Result<T> {
    if !(omega > T::zero()) || !omega.is_finite() {
        return Err(Error::Domain(format!(
            "mode frequency must be positive, got {omega:e}"
        )));
    }
    if !(temperature >= T::zero()) || !temperature.is_finite() {
        return Err(Error::Domain(format!(
            "temperature must be non-negative, got {temperature:e}"
        )));
    }
    if temperature == T::zero() {
        return Ok(T::zero());
    }
    // ħ/k_B is formed in f64 so that f32 never sees the 1e-34 scale.
    let x = lit::<T>(HBAR / K_B) * omega / temperature;
    Ok(T::one() / x.exp_m1())
}

/// Thermal occupancies N₁, N₂, N_m, N_b of the four bath modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalOccupancies<T> {
    pub n_1: T,
    pub n_2: T,
    pub n_m: T,
    pub n_b: T,
}

impl<T: Real> ThermalOccupancies<T> {
    pub fn from_params(params: &SystemParams<T>) -> Result<Self> {
        let t = params.temperature;
        Ok(ThermalOccupancies {
            n_1: bose_occupancy(params.omega_1, t)?,
            n_2: bose_occupancy(params.omega_2, t)?,
            n_m: bose_occupancy(params.omega_m, t)?,
            n_b: bose_occupancy(params.omega_b, t)?,
        })
    }
}
