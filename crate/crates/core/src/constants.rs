//! Physical constants (SI).

/// Reduced Planck constant, J·s (CODATA 2018, exact).
pub const HBAR: f64 = 1.054_571_817e-34;

/// Boltzmann constant, J/K (exact).
pub const K_B: f64 = 1.380_649e-23;

/// Gyromagnetic ratio of the YIG magnon mode, rad/(s·T): γ₀/2π = 28 GHz/T.
pub const GYROMAGNETIC_RATIO: f64 = 2.0 * std::f64::consts::PI * 28.0e9;

/// Spin density of YIG, m⁻³.
pub const YIG_SPIN_DENSITY: f64 = 4.22e27;
