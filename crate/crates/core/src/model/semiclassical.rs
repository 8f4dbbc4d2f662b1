//! Semiclassical fixed point of the driven system and the drive-enhanced
//! magnomechanical coupling derived from it.

use nalgebra::Complex;

use crate::constants::{GYROMAGNETIC_RATIO, YIG_SPIN_DENSITY};
use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

use super::params::{DriveParams, SystemParams};

/// Ratio |Δ|/κ below which the simplified amplitude formula is flagged.
pub const APPROX_REGIME_RATIO: f64 = 5.0;

/// Damping factor, residual tolerance (in units of ω_b) and iteration cap of
/// the self-consistent detuning iteration.
pub const DETUNING_DAMPING: f64 = 0.5;
pub const DETUNING_TOLERANCE: f64 = 1e-6;
pub const DETUNING_MAX_ITERATIONS: usize = 10_000;

/// Mean fields ⟨m⟩, ⟨a₁⟩, ⟨a₂⟩ and ⟨q⟩ of the driven steady state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemiclassicalState<T> {
    pub m_avg: Complex<T>,
    pub a1_avg: Complex<T>,
    pub a2_avg: Complex<T>,
    pub q_avg: T,
}

impl<T: Real> SemiclassicalState<T> {
    /// The mean momentum vanishes in the steady state.
    pub fn p_avg(&self) -> T {
        T::zero()
    }
}

pub(crate) fn modulus<T: Real>(z: Complex<T>) -> T {
    z.re.hypot(z.im)
}

fn cavity_response<T: Real>(delta: T, kappa: T) -> Complex<T> {
    Complex::new(kappa, delta)
}

/// Exact magnon amplitude ⟨m⟩ for the given effective detuning.
fn magnon_amplitude_exact<T: Real>(
    params: &SystemParams<T>,
    rabi: T,
    delta_m_eff: T,
) -> Result<Complex<T>> {
    let r1 = cavity_response(params.delta_1, params.kappa_1);
    let r2 = cavity_response(params.delta_2, params.kappa_2);
    let rm = Complex::new(params.kappa_m, delta_m_eff);

    let t_magnon = rm * r1 * r2;
    let t_cav2 = r2 * (params.g_1 * params.g_1);
    let t_cav1 = r1 * (params.g_2 * params.g_2);
    let den = t_magnon + t_cav2 + t_cav1;

    let scale = modulus(t_magnon) + modulus(t_cav2) + modulus(t_cav1);
    if !(modulus(den) > T::default_epsilon() * scale) {
        return Err(Error::Singular(format!(
            "magnon amplitude denominator vanishes (Δ₁={:e}, Δ₂={:e}, Δ̃_m={:e} rad/s)",
            params.delta_1, params.delta_2, delta_m_eff
        )));
    }
    Ok(r1 * r2 * rabi / den)
}

fn state_from_amplitude<T: Real>(
    params: &SystemParams<T>,
    drive: &DriveParams<T>,
    m_avg: Complex<T>,
) -> SemiclassicalState<T> {
    let minus_i = Complex::new(T::zero(), -T::one());
    let a1_avg = minus_i * params.g_1 * m_avg / cavity_response(params.delta_1, params.kappa_1);
    let a2_avg = minus_i * params.g_2 * m_avg / cavity_response(params.delta_2, params.kappa_2);
    let m_sq = m_avg.re * m_avg.re + m_avg.im * m_avg.im;
    SemiclassicalState {
        m_avg,
        a1_avg,
        a2_avg,
        q_avg: -(drive.g0_bare / params.omega_b) * m_sq,
    }
}

/// Steady-state mean fields from the full expression for ⟨m⟩, using the
/// effective detuning stored in `params`.
pub fn semiclassical_exact<T: Real>(
    params: &SystemParams<T>,
    drive: &DriveParams<T>,
) -> Result<SemiclassicalState<T>> {
    let m_avg = magnon_amplitude_exact(params, drive.rabi_omega, params.delta_m_eff)?;
    Ok(state_from_amplitude(params, drive, m_avg))
}

/// Real denominator Δ̃_mΔ₁Δ₂ − g₁²Δ₂ − g₂²Δ₁ of the large-detuning forms,
/// checked against cancellation.
fn large_detuning_denominator<T: Real>(params: &SystemParams<T>) -> Result<T> {
    let p = params;
    let t0 = p.delta_m_eff * p.delta_1 * p.delta_2;
    let t1 = p.g_1 * p.g_1 * p.delta_2;
    let t2 = p.g_2 * p.g_2 * p.delta_1;
    let den = t0 - t1 - t2;
    let scale = t0.abs() + t1.abs() + t2.abs();
    if !(den.abs() > T::default_epsilon() * scale) {
        return Err(Error::Singular(format!(
            "large-detuning denominator vanishes (Δ₁={:e}, Δ₂={:e}, Δ̃_m={:e} rad/s)",
            p.delta_1, p.delta_2, p.delta_m_eff
        )));
    }
    Ok(den)
}

fn warn_outside_large_detuning_regime<T: Real>(params: &SystemParams<T>) {
    let smallest_detuning = params
        .delta_1
        .abs()
        .min(params.delta_2.abs())
        .min(params.delta_m_eff.abs());
    let largest_rate = params.kappa_1.max(params.kappa_2).max(params.kappa_m);
    if smallest_detuning < largest_rate * lit(APPROX_REGIME_RATIO) {
        log::warn!(
            "simplified magnon amplitude used with |Δ|/κ = {:.2} < {APPROX_REGIME_RATIO}",
            to_f64(smallest_detuning / largest_rate)
        );
    }
}

/// Large-detuning approximation ⟨m⟩ ≈ iΩΔ₁Δ₂ / (−Δ̃_mΔ₁Δ₂ + g₁²Δ₂ + g₂²Δ₁).
pub fn semiclassical_approx<T: Real>(
    params: &SystemParams<T>,
    drive: &DriveParams<T>,
) -> Result<Complex<T>> {
    warn_outside_large_detuning_regime(params);
    let den = large_detuning_denominator(params)?;
    let num = drive.rabi_omega * params.delta_1 * params.delta_2;
    Ok(Complex::new(T::zero(), -num / den))
}

/// Effective coupling G ≈ √2G₀ΩΔ₁Δ₂ / (Δ̃_mΔ₁Δ₂ − g₁²Δ₂ − g₂²Δ₁) in rad/s.
///
/// The sign follows the formula; physical use takes the magnitude.
pub fn effective_coupling<T: Real>(drive: &DriveParams<T>, params: &SystemParams<T>) -> Result<T> {
    warn_outside_large_detuning_regime(params);
    let den = large_detuning_denominator(params)?;
    Ok(T::two().sqrt() * drive.g0_bare * drive.rabi_omega * params.delta_1 * params.delta_2 / den)
}

/// Effective coupling |√2G₀⟨m⟩| from the exact amplitude. The phase of
/// i√2G₀⟨m⟩ is dropped (absorbed into a local quadrature rotation).
pub fn effective_coupling_exact<T: Real>(
    drive: &DriveParams<T>,
    params: &SystemParams<T>,
) -> Result<T> {
    let state = semiclassical_exact(params, drive)?;
    Ok(T::two().sqrt() * drive.g0_bare * modulus(state.m_avg))
}

/// Rabi frequency that yields `target_coupling` through [`effective_coupling`].
pub fn rabi_for_coupling<T: Real>(
    target_coupling: T,
    g0_bare: T,
    params: &SystemParams<T>,
) -> Result<T> {
    let den = large_detuning_denominator(params)?;
    let gain = T::two().sqrt() * g0_bare * params.delta_1 * params.delta_2;
    if gain == T::zero() {
        return Err(Error::Singular(
            "coupling is independent of the drive (G₀ = 0 or a cavity detuning is zero)".into(),
        ));
    }
    let rabi = target_coupling * den / gain;
    if rabi < T::zero() {
        return Err(Error::Domain(format!(
            "target coupling {target_coupling:e} rad/s requires a negative Rabi frequency at this detuning"
        )));
    }
    Ok(rabi)
}

/// Total number of spins N = ρV in a YIG sample of the given volume (m³).
pub fn spin_count<T: Real>(volume: T) -> Result<T> {
    if !(volume > T::zero()) {
        return Err(Error::Domain(format!(
            "sphere volume must be positive, got {volume:e}"
        )));
    }
    Ok(lit::<T>(YIG_SPIN_DENSITY) * volume)
}

/// Rabi frequency Ω = (√5/4)γ₀√N B₀ in rad/s for a field amplitude in tesla.
pub fn rabi_from_field<T: Real>(b0: T, volume: T) -> Result<T> {
    if !(b0 >= T::zero()) {
        return Err(Error::Domain(format!(
            "field amplitude must be non-negative, got {b0:e}"
        )));
    }
    let spins = spin_count(volume)?;
    let prefactor = lit::<T>(5.0).sqrt() / lit(4.0) * lit(GYROMAGNETIC_RATIO);
    Ok(prefactor * spins.sqrt() * b0)
}

/// Solves Δ̃_m = Δ_m − (G₀²/ω_b)|⟨m⟩(Δ̃_m)|² by damped fixed-point iteration
/// starting from the bare detuning. Returns the effective detuning and the
/// magnon amplitude evaluated there.
pub fn self_consistent_detuning<T: Real>(
    drive: &DriveParams<T>,
    params: &SystemParams<T>,
) -> Result<(T, Complex<T>)> {
    if !(drive.g0_bare >= T::zero()) {
        return Err(Error::Domain("g0_bare must be non-negative".into()));
    }
    if !(params.omega_b > T::zero()) {
        return Err(Error::Domain("omega_b must be positive".into()));
    }
    let shift = drive.g0_bare * drive.g0_bare / params.omega_b;
    let map = |delta: T| -> Result<(T, Complex<T>)> {
        let m = magnon_amplitude_exact(params, drive.rabi_omega, delta)?;
        Ok((drive.delta_m_bare - shift * (m.re * m.re + m.im * m.im), m))
    };

    let damping: T = lit(DETUNING_DAMPING);
    let tolerance = lit::<T>(DETUNING_TOLERANCE) * params.omega_b;
    let mut current = drive.delta_m_bare;
    let mut previous = current;
    for _ in 0..DETUNING_MAX_ITERATIONS {
        let (mapped, m) = map(current)?;
        // Residual of the fixed-point equation at the evaluated point, so the
        // returned amplitude belongs to the returned detuning.
        if (mapped - current).abs() < tolerance {
            return Ok((current, m));
        }
        previous = current;
        current += damping * (mapped - current);
    }
    Err(Error::NonConvergence {
        iterations: DETUNING_MAX_ITERATIONS,
        last: to_f64(current),
        previous: to_f64(previous),
    })
}
