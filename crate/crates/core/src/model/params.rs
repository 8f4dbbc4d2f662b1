use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Mechanical quality factor below which the Markovian Brownian-noise
/// correlator is considered unreliable.
pub const MIN_QUALITY_FACTOR: f64 = 100.0;

/// Physical operating point of the two-cavity magnomechanical system.
///
/// Every frequency and rate is an angular quantity in rad/s. Use
/// [`ParamField::to_external`] / [`ParamField::from_external`] to move between
/// this and the ordinary-frequency (Hz) convention used in configuration files.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams<T> {
    /// Mechanical frequency ω_b.
    pub omega_b: T,
    /// Mechanical damping rate γ.
    pub gamma_mech: T,
    pub kappa_1: T,
    pub kappa_2: T,
    /// Magnon decay rate κ_m.
    pub kappa_m: T,
    /// Magnon–cavity couplings.
    pub g_1: T,
    pub g_2: T,
    /// Cavity detunings from the drive, Δ_j = ω_j − ω₀.
    pub delta_1: T,
    pub delta_2: T,
    /// Effective magnon detuning Δ̃_m, including the magnetostrictive shift.
    pub delta_m_eff: T,
    /// Drive-enhanced magnomechanical coupling G (taken real and non-negative).
    pub coupling_g: T,
    /// Absolute mode frequencies, only used for thermal occupancies.
    pub omega_1: T,
    pub omega_2: T,
    pub omega_m: T,
    /// Bath temperature in kelvin.
    pub temperature: T,
}

impl<T: Real> SystemParams<T> {
    /// Mechanical quality factor Q_m = ω_b / γ.
    pub fn quality_factor(&self) -> T {
        self.omega_b / self.gamma_mech
    }

    /// Checks the parameter invariants. A low mechanical quality factor only
    /// produces a log warning.
    pub fn validate(&self) -> Result<()> {
        let positive = [
            (ParamField::OmegaB, self.omega_b),
            (ParamField::GammaMech, self.gamma_mech),
            (ParamField::Kappa1, self.kappa_1),
            (ParamField::Kappa2, self.kappa_2),
            (ParamField::KappaM, self.kappa_m),
            (ParamField::Omega1, self.omega_1),
            (ParamField::Omega2, self.omega_2),
            (ParamField::OmegaM, self.omega_m),
        ];
        for (field, value) in positive {
            if !(value > T::zero()) || !value.is_finite() {
                return Err(Error::Domain(format!(
                    "{field} must be positive and finite"
                )));
            }
        }
        let non_negative = [
            (ParamField::G1, self.g_1),
            (ParamField::G2, self.g_2),
            (ParamField::CouplingG, self.coupling_g),
            (ParamField::Temperature, self.temperature),
        ];
        for (field, value) in non_negative {
            if !(value >= T::zero()) || !value.is_finite() {
                return Err(Error::Domain(format!(
                    "{field} must be non-negative and finite"
                )));
            }
        }
        for (field, value) in [
            (ParamField::Delta1, self.delta_1),
            (ParamField::Delta2, self.delta_2),
            (ParamField::DeltaMEff, self.delta_m_eff),
        ] {
            if !value.is_finite() {
                return Err(Error::Domain(format!("{field} must be finite")));
            }
        }
        if self.quality_factor() < lit(MIN_QUALITY_FACTOR) {
            log::warn!(
                "mechanical quality factor {:.3e} is below {MIN_QUALITY_FACTOR}; \
                 the Markovian thermal-noise model is inaccurate",
                self.quality_factor()
            );
        }
        Ok(())
    }

    pub fn get(&self, field: ParamField) -> T {
        *self.slot(field)
    }

    pub fn set(&mut self, field: ParamField, value: T) {
        *self.slot_mut(field) = value;
    }

    /// Returns a copy with `field` replaced.
    pub fn with(mut self, field: ParamField, value: T) -> Self {
        self.set(field, value);
        self
    }

    /// Reads a field in external units (Hz or K).
    pub fn get_external(&self, field: ParamField) -> T {
        field.to_external(self.get(field))
    }

    /// Writes a field given in external units (Hz or K).
    pub fn set_external(&mut self, field: ParamField, value: T) {
        self.set(field, field.from_external(value));
    }

    fn slot(&self, field: ParamField) -> &T {
        match field {
            ParamField::OmegaB => &self.omega_b,
            ParamField::GammaMech => &self.gamma_mech,
            ParamField::Kappa1 => &self.kappa_1,
            ParamField::Kappa2 => &self.kappa_2,
            ParamField::KappaM => &self.kappa_m,
            ParamField::G1 => &self.g_1,
            ParamField::G2 => &self.g_2,
            ParamField::Delta1 => &self.delta_1,
            ParamField::Delta2 => &self.delta_2,
            ParamField::DeltaMEff => &self.delta_m_eff,
            ParamField::CouplingG => &self.coupling_g,
            ParamField::Omega1 => &self.omega_1,
            ParamField::Omega2 => &self.omega_2,
            ParamField::OmegaM => &self.omega_m,
            ParamField::Temperature => &self.temperature,
        }
    }

    fn slot_mut(&mut self, field: ParamField) -> &mut T {
        match field {
            ParamField::OmegaB => &mut self.omega_b,
            ParamField::GammaMech => &mut self.gamma_mech,
            ParamField::Kappa1 => &mut self.kappa_1,
            ParamField::Kappa2 => &mut self.kappa_2,
            ParamField::KappaM => &mut self.kappa_m,
            ParamField::G1 => &mut self.g_1,
            ParamField::G2 => &mut self.g_2,
            ParamField::Delta1 => &mut self.delta_1,
            ParamField::Delta2 => &mut self.delta_2,
            ParamField::DeltaMEff => &mut self.delta_m_eff,
            ParamField::CouplingG => &mut self.coupling_g,
            ParamField::Omega1 => &mut self.omega_1,
            ParamField::Omega2 => &mut self.omega_2,
            ParamField::OmegaM => &mut self.omega_m,
            ParamField::Temperature => &mut self.temperature,
        }
    }
}

/// Named field of [`SystemParams`], used by sweeps and configuration files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParamField {
    OmegaB,
    GammaMech,
    Kappa1,
    Kappa2,
    KappaM,
    G1,
    G2,
    Delta1,
    Delta2,
    DeltaMEff,
    CouplingG,
    Omega1,
    Omega2,
    OmegaM,
    Temperature,
}

impl ParamField {
    pub const ALL: [ParamField; 15] = [
        ParamField::OmegaB,
        ParamField::GammaMech,
        ParamField::Kappa1,
        ParamField::Kappa2,
        ParamField::KappaM,
        ParamField::G1,
        ParamField::G2,
        ParamField::Delta1,
        ParamField::Delta2,
        ParamField::DeltaMEff,
        ParamField::CouplingG,
        ParamField::Omega1,
        ParamField::Omega2,
        ParamField::OmegaM,
        ParamField::Temperature,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ParamField::OmegaB => "omega_b",
            ParamField::GammaMech => "gamma_mech",
            ParamField::Kappa1 => "kappa_1",
            ParamField::Kappa2 => "kappa_2",
            ParamField::KappaM => "kappa_m",
            ParamField::G1 => "g_1",
            ParamField::G2 => "g_2",
            ParamField::Delta1 => "delta_1",
            ParamField::Delta2 => "delta_2",
            ParamField::DeltaMEff => "delta_m_eff",
            ParamField::CouplingG => "coupling_G",
            ParamField::Omega1 => "omega_1",
            ParamField::Omega2 => "omega_2",
            ParamField::OmegaM => "omega_m",
            ParamField::Temperature => "temperature",
        }
    }

    /// Whether the field is an angular frequency/rate (external unit Hz).
    pub fn is_frequency(self) -> bool {
        self != ParamField::Temperature
    }

    /// Internal value (rad/s or K) to external value (Hz or K).
    pub fn to_external<T: Real>(self, internal: T) -> T {
        if self.is_frequency() {
            internal / T::two_pi()
        } else {
            internal
        }
    }

    /// External value (Hz or K) to internal value (rad/s or K).
    pub fn from_external<T: Real>(self, external: T) -> T {
        if self.is_frequency() {
            external * T::two_pi()
        } else {
            external
        }
    }
}

impl fmt::Display for ParamField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ParamField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ParamField::ALL
            .into_iter()
            .find(|field| field.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown parameter `{s}`")))
    }
}

/// Parameters of the direct magnon drive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveParams<T> {
    /// Rabi frequency Ω, rad/s.
    pub rabi_omega: T,
    /// Single-magnon magnomechanical coupling G₀, rad/s.
    pub g0_bare: T,
    /// Bare magnon detuning Δ_m = ω_m − ω₀, rad/s.
    pub delta_m_bare: T,
    /// Drive field amplitude B₀ in tesla, when the drive is specified by field.
    pub field_amplitude: Option<T>,
    /// Sphere volume in m³, when the drive is specified by field.
    pub sphere_volume: Option<T>,
}

impl<T: Real> DriveParams<T> {
    pub fn new(rabi_omega: T, g0_bare: T, delta_m_bare: T) -> Self {
        DriveParams {
            rabi_omega,
            g0_bare,
            delta_m_bare,
            field_amplitude: None,
            sphere_volume: None,
        }
    }

    /// Drive specified by field amplitude and sphere volume; the Rabi
    /// frequency follows from the total spin number.
    pub fn from_field(b0: T, volume: T, g0_bare: T, delta_m_bare: T) -> Result<Self> {
        let rabi_omega = super::semiclassical::rabi_from_field(b0, volume)?;
        Ok(DriveParams {
            rabi_omega,
            g0_bare,
            delta_m_bare,
            field_amplitude: Some(b0),
            sphere_volume: Some(volume),
        })
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rabi_omega >= T::zero()) {
            return Err(Error::Domain("rabi_omega must be non-negative".into()));
        }
        if !(self.g0_bare >= T::zero()) {
            return Err(Error::Domain("g0_bare must be non-negative".into()));
        }
        if let Some(v) = self.sphere_volume {
            if !(v > T::zero()) {
                return Err(Error::Domain("sphere_volume must be positive".into()));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::baseline;

    #[test]
    fn field_names_round_trip() {
        for field in ParamField::ALL {
            assert_eq!(field.name().parse::<ParamField>().unwrap(), field);
        }
        assert!("kapa_1".parse::<ParamField>().is_err());
    }

    #[test]
    fn get_set_cover_every_field() {
        let mut p = baseline::<f64>();
        for (i, field) in ParamField::ALL.into_iter().enumerate() {
            p.set(field, i as f64 + 0.5);
        }
        for (i, field) in ParamField::ALL.into_iter().enumerate() {
            assert_eq!(p.get(field), i as f64 + 0.5);
        }
    }

    #[test]
    fn external_units() {
        let mut p = baseline::<f64>();
        p.set_external(ParamField::Kappa1, 2.0e6);
        assert!((p.kappa_1 - 2.0 * std::f64::consts::PI * 2.0e6).abs() < 1e-6);
        p.set_external(ParamField::Temperature, 0.05);
        assert_eq!(p.temperature, 0.05);
    }

    #[test]
    fn validation_rejects_bad_values() {
        let p = baseline::<f64>();
        assert!(p.validate().is_ok());
        assert!(p.with(ParamField::Kappa2, 0.0).validate().is_err());
        assert!(p.with(ParamField::G1, -1.0).validate().is_err());
        assert!(p.with(ParamField::Temperature, -0.1).validate().is_err());
        assert!(p.with(ParamField::OmegaB, f64::NAN).validate().is_err());
        assert!(p
            .with(ParamField::Delta1, f64::INFINITY)
            .validate()
            .is_err());
        // Low Q only warns.
        assert!(p.with(ParamField::GammaMech, p.omega_b).validate().is_ok());
    }

    #[test]
    fn drive_validation() {
        assert!(DriveParams::new(1.0, 1.0, 0.0).validate().is_ok());
        assert!(DriveParams::new(-1.0, 1.0, 0.0).validate().is_err());
        assert!(DriveParams::from_field(1e-6, 0.0, 1.0, 0.0).is_err());
    }
}
