use nalgebra::{SMatrix, SVector};

use crate::error::Result;
use crate::scalar::Real;

use super::params::SystemParams;
use super::thermal::ThermalOccupancies;

/// Number of quadratures in the fluctuation vector.
pub const DIM: usize = 8;

pub type Matrix8<T> = SMatrix<T, DIM, DIM>;

/// Quadrature indices of the fluctuation vector
/// (δX₁, δY₁, δX₂, δY₂, δx, δy, δq, δp).
pub mod quadrature {
    pub const X1: usize = 0;
    pub const Y1: usize = 1;
    pub const X2: usize = 2;
    pub const Y2: usize = 3;
    pub const X_MAGNON: usize = 4;
    pub const Y_MAGNON: usize = 5;
    pub const Q: usize = 6;
    pub const P: usize = 7;
}

/// The four bosonic modes, in fluctuation-vector order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Cavity1,
    Cavity2,
    Magnon,
    Mechanics,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::Cavity1, Mode::Cavity2, Mode::Magnon, Mode::Mechanics];

    /// Block index (0..4).
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Mode> {
        Mode::ALL.get(index).copied()
    }

    /// Index of the mode's first quadrature in the 8-vector.
    pub fn offset(self) -> usize {
        2 * self.index()
    }
}

/// Drift matrix A of the linearized fluctuation dynamics u̇ = Au + n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftMatrix<T: Real>(Matrix8<T>);

impl<T: Real> DriftMatrix<T> {
    /// Wraps an arbitrary 8×8 matrix (used for tests and external models).
    pub fn from_matrix(a: Matrix8<T>) -> Self {
        DriftMatrix(a)
    }

    pub fn matrix(&self) -> &Matrix8<T> {
        &self.0
    }

    pub fn into_inner(self) -> Matrix8<T> {
        self.0
    }
}

/// Assembles the drift matrix for an operating point.
pub fn build_drift_matrix<T: Real>(p: &SystemParams<T>) -> DriftMatrix<T> {
    use quadrature::*;
    let mut a = Matrix8::<T>::zeros();

    let cavities = [
        (X1, Y1, p.kappa_1, p.delta_1, p.g_1),
        (X2, Y2, p.kappa_2, p.delta_2, p.g_2),
    ];
    for (x, y, kappa, delta, g) in cavities {
        a[(x, x)] = -kappa;
        a[(x, y)] = delta;
        a[(y, x)] = -delta;
        a[(y, y)] = -kappa;
        // beam-splitter coupling to the magnon
        a[(x, Y_MAGNON)] = g;
        a[(y, X_MAGNON)] = -g;
        a[(X_MAGNON, y)] = g;
        a[(Y_MAGNON, x)] = -g;
    }

    a[(X_MAGNON, X_MAGNON)] = -p.kappa_m;
    a[(X_MAGNON, Y_MAGNON)] = p.delta_m_eff;
    a[(Y_MAGNON, X_MAGNON)] = -p.delta_m_eff;
    a[(Y_MAGNON, Y_MAGNON)] = -p.kappa_m;
    a[(X_MAGNON, Q)] = -p.coupling_g;

    a[(Q, P)] = p.omega_b;
    a[(P, Y_MAGNON)] = p.coupling_g;
    a[(P, Q)] = -p.omega_b;
    a[(P, P)] = -p.gamma_mech;

    DriftMatrix(a)
}

/// Diagonal diffusion matrix 𝒟 of the input noises.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffusionMatrix<T: Real> {
    diagonal: SVector<T, DIM>,
}

impl<T: Real> DiffusionMatrix<T> {
    pub fn from_diagonal(diagonal: SVector<T, DIM>) -> Self {
        DiffusionMatrix { diagonal }
    }

    pub fn diagonal(&self) -> &SVector<T, DIM> {
        &self.diagonal
    }

    pub fn matrix(&self) -> Matrix8<T> {
        Matrix8::from_diagonal(&self.diagonal)
    }

    pub fn scaled(&self, factor: T) -> Self {
        DiffusionMatrix {
            diagonal: self.diagonal * factor,
        }
    }
}

/// Assembles the diffusion matrix from rates and Bose occupancies.
pub fn build_diffusion_matrix<T: Real>(p: &SystemParams<T>) -> Result<DiffusionMatrix<T>> {
    let occ = ThermalOccupancies::from_params(p)?;
    Ok(diffusion_from_occupancies(p, &occ))
}

/// Diffusion matrix for explicitly given occupancies.
pub fn diffusion_from_occupancies<T: Real>(
    p: &SystemParams<T>,
    occ: &ThermalOccupancies<T>,
) -> DiffusionMatrix<T> {
    let two = T::two();
    let c1 = p.kappa_1 * (two * occ.n_1 + T::one());
    let c2 = p.kappa_2 * (two * occ.n_2 + T::one());
    let m = p.kappa_m * (two * occ.n_m + T::one());
    let b = p.gamma_mech * (two * occ.n_b + T::one());
    DiffusionMatrix {
        diagonal: SVector::<T, DIM>::from([c1, c1, c2, c2, m, m, T::zero(), b]),
    }
}
