//! Stationary state and microwave–microwave entanglement of a YIG sphere
//! whose magnon mode couples to two microwave cavities and, through
//! magnetostriction, to a mechanical vibration mode.
//!
//! The pipeline is: [`SystemParams`](model::SystemParams) → drift and
//! diffusion matrices → stability test → Lyapunov steady state → cavity-pair
//! reduction → logarithmic negativity and Duan sum. Everything is generic over
//! the scalar type; the aliases below fix it to `f64`.
//!
//! Internal units are rad/s and kelvin. Configuration-facing code converts
//! from ordinary frequency (Hz) with [`ParamField::from_external`](model::ParamField::from_external).
//!
//! The effective magnomechanical coupling G is taken real and non-negative:
//! the phase of i√2G₀⟨m⟩ is a local rotation of the magnon quadratures and does
//! not change the cavity–cavity entanglement.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod entanglement;
pub mod error;
pub mod model;
pub mod scalar;
pub mod steady_state;
pub mod sweep;
pub mod symplectic;

pub use entanglement::{
    duan_sum, log_negativity, partial_transpose, reduce_cm, symplectic_nu_minus,
    EntanglementRecord, TwoModeCM,
};
pub use error::{Error, Result};
pub use model::{
    bose_occupancy, build_diffusion_matrix, build_drift_matrix, DiffusionMatrix, DriftMatrix,
    DriveParams, Mode, ParamField, SystemParams, ThermalOccupancies,
};
pub use scalar::Real;
pub use steady_state::{is_stable, solve_lyapunov, CovarianceMatrix, StabilityReport};
pub use sweep::{baseline, evaluate_point, preset, run_sweep, Preset, SweepAxis, SweepResult};

pub type Params = model::SystemParams<f64>;
pub type Drive = model::DriveParams<f64>;
pub type Drift = model::DriftMatrix<f64>;
pub type Diffusion = model::DiffusionMatrix<f64>;
pub type Covariance = steady_state::CovarianceMatrix<f64>;
pub type TwoMode = entanglement::TwoModeCM<f64>;
pub type Record = entanglement::EntanglementRecord<f64>;
pub type Axis = sweep::SweepAxis<f64>;
pub type Sweep = sweep::SweepResult<f64>;

/// Single-precision aliases.
pub mod f32 {
    pub type Params = crate::model::SystemParams<f32>;
    pub type Covariance = crate::steady_state::CovarianceMatrix<f32>;
    pub type TwoMode = crate::entanglement::TwoModeCM<f32>;
    pub type Record = crate::entanglement::EntanglementRecord<f32>;
}
