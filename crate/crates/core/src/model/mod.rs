//! Physical model: parameters, thermal baths, the semiclassical fixed point
//! and the drift/diffusion matrices of the linearized dynamics.

pub mod matrices;
pub mod params;
pub mod semiclassical;
pub mod thermal;

pub use matrices::{
    build_diffusion_matrix, build_drift_matrix, diffusion_from_occupancies, quadrature,
    DiffusionMatrix, DriftMatrix, Matrix8, Mode, DIM,
};
pub use params::{DriveParams, ParamField, SystemParams, MIN_QUALITY_FACTOR};
pub use semiclassical::{
    effective_coupling, effective_coupling_exact, rabi_for_coupling, rabi_from_field,
    self_consistent_detuning, semiclassical_approx, semiclassical_exact, spin_count,
    SemiclassicalState,
};
pub use thermal::{bose_occupancy, ThermalOccupancies};
