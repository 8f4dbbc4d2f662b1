//! Full-pipeline evaluation over one- and two-dimensional parameter grids,
//! plus the figure presets.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::entanglement::{reduce_cm, EntanglementRecord, TwoModeCM};
use crate::error::{Error, Result};
use crate::model::{
    build_diffusion_matrix, build_drift_matrix, Mode, ParamField, SystemParams, ThermalOccupancies,
};
use crate::scalar::{lit, Real};
use crate::steady_state::{is_stable, solve_lyapunov, CovarianceMatrix, StabilityReport};

/// Everything computed at a single operating point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointEvaluation<T: Real> {
    pub stability: StabilityReport<T>,
    pub occupancies: ThermalOccupancies<T>,
    /// Present only for stable points.
    pub covariance: Option<CovarianceMatrix<T>>,
    pub cavity_pair: Option<TwoModeCM<T>>,
    pub record: EntanglementRecord<T>,
}

/// Runs drift/diffusion assembly, the stability test, the Lyapunov solve and
/// the cavity-pair measures. Unstable points are returned with a
/// not-a-value record rather than as errors.
pub fn evaluate_point<T: Real>(params: &SystemParams<T>) -> Result<PointEvaluation<T>> {
    params.validate()?;
    let occupancies = ThermalOccupancies::from_params(params)?;
    let drift = build_drift_matrix(params);
    let stability = is_stable(&drift)?;
    if !stability.stable {
        return Ok(PointEvaluation {
            stability,
            occupancies,
            covariance: None,
            cavity_pair: None,
            record: EntanglementRecord::not_a_value(false),
        });
    }
    let diffusion = build_diffusion_matrix(params)?;
    let covariance = solve_lyapunov(&drift, &diffusion)?;
    let cavity_pair = reduce_cm(&covariance, Mode::Cavity1, Mode::Cavity2)?;
    let record = EntanglementRecord::from_two_mode(&cavity_pair)?;
    Ok(PointEvaluation {
        stability,
        occupancies,
        covariance: Some(covariance),
        cavity_pair: Some(cavity_pair),
        record,
    })
}

/// One axis of a parameter grid.
///
/// Axis values are in the parameter's external unit (Hz or K), or, when
/// `scale` is set, dimensionless multiples of the base value of `scale`
/// (e.g. detunings in units of ω_b).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepAxis<T> {
    pub field: ParamField,
    pub start: T,
    pub stop: T,
    pub count: usize,
    pub scale: Option<ParamField>,
}

impl<T: Real> SweepAxis<T> {
    pub fn new(
        field: ParamField,
        start: T,
        stop: T,
        count: usize,
        scale: Option<ParamField>,
    ) -> Result<Self> {
        let axis = SweepAxis {
            field,
            start,
            stop,
            count,
            scale,
        };
        axis.validate()?;
        Ok(axis)
    }

    pub fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::Domain(format!(
                "axis `{}` needs at least 2 points",
                self.field
            )));
        }
        if !self.start.is_finite() || !self.stop.is_finite() || self.start == self.stop {
            return Err(Error::Domain(format!(
                "axis `{}` needs finite, distinct start and stop",
                self.field
            )));
        }
        if let Some(scale) = self.scale {
            if scale.is_frequency() != self.field.is_frequency() {
                return Err(Error::Domain(format!(
                    "axis `{}` cannot be scaled by `{scale}` (incompatible units)",
                    self.field
                )));
            }
        }
        Ok(())
    }

    /// Grid value `i` in axis units; the last point is exactly `stop`.
    pub fn value(&self, i: usize) -> T {
        if i + 1 == self.count {
            return self.stop;
        }
        let frac = lit::<T>(i as f64) / lit::<T>((self.count - 1) as f64);
        self.start + (self.stop - self.start) * frac
    }

    pub fn values(&self) -> Vec<T> {
        (0..self.count).map(|i| self.value(i)).collect()
    }

    /// Writes the axis value into `params`, resolving the scale against `base`.
    pub fn apply(&self, params: &mut SystemParams<T>, base: &SystemParams<T>, value: T) {
        match self.scale {
            Some(scale) => params.set(self.field, value * base.get(scale)),
            None => params.set_external(self.field, value),
        }
    }
}

impl<T: Real> fmt::Display for SweepAxis<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}:{}",
            self.field, self.start, self.stop, self.count
        )?;
        if let Some(scale) = self.scale {
            write!(f, ":{scale}")?;
        }
        Ok(())
    }
}

/// Parses `name:start:stop:count[:scale]`.
impl<T: Real> FromStr for SweepAxis<T> {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let bad = |what: &str, token: &str| {
            Error::Domain(format!("axis spec `{spec}`: {what} `{token}`"))
        };
        let parts: Vec<&str> = spec.split(':').collect();
        if !(4..=5).contains(&parts.len()) {
            return Err(Error::Domain(format!(
                "axis spec `{spec}` must have the form name:start:stop:count[:scale]"
            )));
        }
        let field: ParamField = parts[0]
            .parse()
            .map_err(|_| bad("unknown parameter", parts[0]))?;
        let number = |token: &str| -> Result<T> {
            token
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .and_then(T::from_f64)
                .ok_or_else(|| bad("invalid number", token))
        };
        let start = number(parts[1])?;
        let stop = number(parts[2])?;
        let count: usize = parts[3]
            .parse()
            .map_err(|_| bad("invalid count", parts[3]))?;
        let scale = match parts.get(4) {
            Some(token) => Some(
                token
                    .parse::<ParamField>()
                    .map_err(|_| bad("unknown scale", token))?,
            ),
            None => None,
        };
        SweepAxis::new(field, start, stop, count, scale)
    }
}

/// One grid point of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint<T> {
    /// Axis values in axis units, one per axis.
    pub coords: Vec<T>,
    pub record: EntanglementRecord<T>,
    /// Singular or numerical failure at this point, if any.
    pub error: Option<Error>,
}

/// Row-major grid of sweep records (the last axis varies fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult<T: Real> {
    pub base: SystemParams<T>,
    pub axes: Vec<SweepAxis<T>>,
    pub points: Vec<SweepPoint<T>>,
}

impl<T: Real> SweepResult<T> {
    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.count).collect()
    }

    /// Record at a multi-index (one index per axis).
    pub fn at(&self, index: &[usize]) -> &SweepPoint<T> {
        &self.points[flat_index(&self.shape(), index)]
    }

    /// Operating point of grid entry `flat`.
    pub fn params_at(&self, flat: usize) -> SystemParams<T> {
        params_for(&self.base, &self.axes, &unflatten(&self.shape(), flat))
    }

    /// First grid entry (row-major) with the largest finite E_N.
    pub fn argmax_log_neg(&self) -> Option<usize> {
        let mut best: Option<(usize, T)> = None;
        for (i, p) in self.points.iter().enumerate() {
            let v = p.record.log_neg;
            if v.is_finite() && best.is_none_or(|(_, b)| v > b) {
                best = Some((i, v));
            }
        }
        best.map(|(i, _)| i)
    }
}

fn flat_index(shape: &[usize], index: &[usize]) -> usize {
    index.iter().zip(shape).fold(0, |acc, (i, n)| acc * n + i)
}

fn unflatten(shape: &[usize], mut flat: usize) -> Vec<usize> {
    let mut index = vec![0; shape.len()];
    for (slot, n) in index.iter_mut().zip(shape).rev() {
        *slot = flat % n;
        flat /= n;
    }
    index
}

fn params_for<T: Real>(
    base: &SystemParams<T>,
    axes: &[SweepAxis<T>],
    index: &[usize],
) -> SystemParams<T> {
    let mut params = *base;
    for (axis, &i) in axes.iter().zip(index) {
        axis.apply(&mut params, base, axis.value(i));
    }
    params
}

/// Evaluates the pipeline at every grid point. Point failures are captured
/// in the corresponding record; the output order is row-major and does not
/// depend on the number of worker threads.
pub fn run_sweep<T: Real>(base: &SystemParams<T>, axes: &[SweepAxis<T>]) -> Result<SweepResult<T>> {
    if axes.is_empty() || axes.len() > 2 {
        return Err(Error::Domain(format!(
            "a sweep takes one or two axes, got {}",
            axes.len()
        )));
    }
    for axis in axes {
        axis.validate()?;
    }
    if axes.len() == 2 && axes[0].field == axes[1].field {
        return Err(Error::Domain(format!(
            "axis `{}` appears twice",
            axes[0].field
        )));
    }
    base.validate()?;

    let shape: Vec<usize> = axes.iter().map(|a| a.count).collect();
    let total: usize = shape.iter().product();
    let points = (0..total)
        .into_par_iter()
        .map(|flat| {
            let index = unflatten(&shape, flat);
            let coords = axes.iter().zip(&index).map(|(a, &i)| a.value(i)).collect();
            let params = params_for(base, axes, &index);
            match evaluate_point(&params) {
                Ok(eval) => SweepPoint {
                    coords,
                    record: eval.record,
                    error: None,
                },
                Err(err) => {
                    let stable = !matches!(err, Error::Unstable { .. });
                    SweepPoint {
                        coords,
                        record: EntanglementRecord::not_a_value(stable),
                        error: Some(err),
                    }
                }
            }
        })
        .collect();

    Ok(SweepResult {
        base: *base,
        axes: axes.to_vec(),
        points,
    })
}

/// Operating point used throughout the figures: ω_m/2π = 10 GHz,
/// ω_b/2π = 10 MHz, γ/2π = 100 Hz, κ_m/2π = κ₁/2π = κ₂/2π = 1 MHz,
/// g₁/2π = g₂/2π = 3.8 MHz, G/2π = 4.5 MHz, T = 20 mK, Δ̃_m = 0.9ω_b and the
/// cavities on the two mechanical sidebands (Δ₁ = −Δ₂ = ω_b).
pub fn baseline<T: Real>() -> SystemParams<T> {
    let hz = |v: f64| ParamField::OmegaB.from_external(lit::<T>(v));
    let omega_b = 10.0e6;
    let delta_m = 0.9 * omega_b;
    let omega_m = 10.0e9;
    let mut p = SystemParams {
        omega_b: hz(omega_b),
        gamma_mech: hz(100.0),
        kappa_1: hz(1.0e6),
        kappa_2: hz(1.0e6),
        kappa_m: hz(1.0e6),
        g_1: hz(3.8e6),
        g_2: hz(3.8e6),
        delta_1: T::zero(),
        delta_2: T::zero(),
        delta_m_eff: hz(delta_m),
        coupling_g: hz(4.5e6),
        omega_1: T::zero(),
        omega_2: T::zero(),
        omega_m: hz(omega_m),
        temperature: lit(0.02),
    };
    set_cavity_detunings(&mut p, omega_m - delta_m, omega_b, -omega_b);
    p
}

/// Sets Δ₁, Δ₂ (Hz) together with the absolute cavity frequencies
/// ω_j = ω₀ + Δ_j for a drive at `drive_hz`.
fn set_cavity_detunings<T: Real>(
    p: &mut SystemParams<T>,
    drive_hz: f64,
    delta_1_hz: f64,
    delta_2_hz: f64,
) {
    p.set_external(ParamField::Delta1, lit(delta_1_hz));
    p.set_external(ParamField::Delta2, lit(delta_2_hz));
    p.set_external(ParamField::Omega1, lit(drive_hz + delta_1_hz));
    p.set_external(ParamField::Omega2, lit(drive_hz + delta_2_hz));
}

/// Figure presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    /// E_N over (Δ₁, Δ₂).
    Fig2a,
    /// E_N over (κ₂/κ₁, g₂/g₁) at Δ₁ = −Δ₂ = ω_b.
    Fig2b,
    /// E_N versus temperature at the Fig2b optimum.
    Fig3,
    /// Duan sum over (Δ₁, Δ₂).
    Fig4a,
    /// Duan sum over (κ₁, κ₂) at Δ₁ = 0.9ω_b, Δ₂ = −1.1ω_b.
    Fig4b,
}

impl Preset {
    pub const ALL: [Preset; 5] = [
        Preset::Fig2a,
        Preset::Fig2b,
        Preset::Fig3,
        Preset::Fig4a,
        Preset::Fig4b,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig2a => "fig2a",
            Preset::Fig2b => "fig2b",
            Preset::Fig3 => "fig3",
            Preset::Fig4a => "fig4a",
            Preset::Fig4b => "fig4b",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Preset::ALL.iter().map(|p| p.name()).collect();
                Error::Domain(format!(
                    "unknown figure `{s}` (valid: {})",
                    names.join(", ")
                ))
            })
    }
}

/// Base operating point and axes of a figure.
#[derive(Debug, Clone, PartialEq)]
pub struct PresetSweep<T: Real> {
    pub preset: Preset,
    pub base: SystemParams<T>,
    pub axes: Vec<SweepAxis<T>>,
}

impl<T: Real> PresetSweep<T> {
    pub fn run(&self) -> Result<SweepResult<T>> {
        run_sweep(&self.base, &self.axes)
    }
}

fn axis<T: Real>(
    field: ParamField,
    start: f64,
    stop: f64,
    count: usize,
    scale: Option<ParamField>,
) -> SweepAxis<T> {
    SweepAxis::new(field, lit(start), lit(stop), count, scale).expect("preset axes are valid")
}

fn detuning_plane<T: Real>() -> Vec<SweepAxis<T>> {
    vec![
        axis(ParamField::Delta1, -2.0, 2.0, 81, Some(ParamField::OmegaB)),
        axis(ParamField::Delta2, -2.0, 2.0, 81, Some(ParamField::OmegaB)),
    ]
}

/// Base parameters and axes for a figure. `Fig3` evaluates the `Fig2b` grid
/// to locate its optimum.
pub fn preset<T: Real>(which: Preset) -> Result<PresetSweep<T>> {
    let base = baseline::<T>();
    let (base, axes) = match which {
        Preset::Fig2a | Preset::Fig4a => (base, detuning_plane()),
        Preset::Fig2b => (
            base,
            vec![
                axis(ParamField::Kappa2, 0.1, 3.0, 59, Some(ParamField::Kappa1)),
                axis(ParamField::G2, 0.25, 2.0, 71, Some(ParamField::G1)),
            ],
        ),
        Preset::Fig3 => {
            let optimum = preset::<T>(Preset::Fig2b)?.run()?;
            let best = optimum
                .argmax_log_neg()
                .ok_or_else(|| Error::Numerical("fig2b grid has no finite E_N".into()))?;
            (
                optimum.params_at(best),
                vec![axis(ParamField::Temperature, 0.0, 0.2, 101, None)],
            )
        }
        Preset::Fig4b => {
            let mut base = base;
            let drive_hz = to_hz(&base, ParamField::OmegaM) - to_hz(&base, ParamField::DeltaMEff);
            let omega_b = to_hz(&base, ParamField::OmegaB);
            set_cavity_detunings(&mut base, drive_hz, 0.9 * omega_b, -1.1 * omega_b);
            (
                base,
                vec![
                    axis(ParamField::Kappa1, 0.5e6, 5.0e6, 46, None),
                    axis(ParamField::Kappa2, 0.5e6, 5.0e6, 46, None),
                ],
            )
        }
    };
    Ok(PresetSweep {
        preset: which,
        base,
        axes,
    })
}

fn to_hz<T: Real>(p: &SystemParams<T>, field: ParamField) -> f64 {
    crate::scalar::to_f64(p.get_external(field))
}
