//! Stationary covariance matrix of the linearized dynamics.
//!
//! The steady state exists only when every eigenvalue of the drift matrix has
//! a negative real part. It then solves the continuous Lyapunov equation
//! A𝒞 + 𝒞Aᵀ = −𝒟, which is small enough here (8×8, so 64 unknowns) to be
//! solved directly in Kronecker form.

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};
use crate::model::{DiffusionMatrix, DriftMatrix, Matrix8, DIM};
use crate::scalar::{lit, to_f64, tolerance, Real};
use crate::symplectic::{symplectic_eigenvalues, SCHUR_MAX_ITERATIONS};

/// Relative residual bound ‖A𝒞 + 𝒞Aᵀ + 𝒟‖_F / ‖𝒟‖_F accepted from a solve.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

/// Pivot-ratio condition estimate above which the Kronecker system is
/// rejected, in units of 1/ε.
const CONDITION_LIMIT_EPS: f64 = 1e-3;

/// Outcome of the drift-matrix stability test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityReport<T> {
    pub stable: bool,
    /// Largest real part among the eigenvalues of A, rad/s.
    pub max_real_part: T,
}

/// Eigenvalues of the drift matrix.
pub fn drift_eigenvalues<T: Real>(a: &DriftMatrix<T>) -> Result<Vec<Complex<T>>> {
    let schur = a
        .matrix()
        .try_schur(T::default_epsilon(), SCHUR_MAX_ITERATIONS)
        .ok_or_else(|| {
            Error::Numerical("Schur iteration did not converge for the drift matrix".into())
        })?;
    Ok(schur.complex_eigenvalues().iter().copied().collect())
}

pub fn is_stable<T: Real>(a: &DriftMatrix<T>) -> Result<StabilityReport<T>> {
    let eigenvalues = drift_eigenvalues(a)?;
    let max_real_part = eigenvalues
        .iter()
        .map(|z| z.re)
        .reduce(|acc, re| acc.max(re))
        .unwrap_or(T::zero());
    if !max_real_part.is_finite() {
        return Err(Error::Numerical(
            "drift matrix has non-finite eigenvalues".into(),
        ));
    }
    Ok(StabilityReport {
        stable: max_real_part < T::zero(),
        max_real_part,
    })
}

/// Symmetric 8×8 covariance matrix 𝒞ᵢⱼ = ⟨uᵢuⱼ + uⱼuᵢ⟩/2 of the four modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix<T: Real> {
    matrix: Matrix8<T>,
    asymmetry: T,
    relative_residual: T,
}

impl<T: Real> CovarianceMatrix<T> {
    /// Wraps an externally supplied matrix; it is symmetrized.
    pub fn from_matrix(m: Matrix8<T>) -> Self {
        let asymmetry = (m - m.transpose()).amax();
        CovarianceMatrix {
            matrix: (m + m.transpose()) / T::two(),
            asymmetry,
            relative_residual: T::zero(),
        }
    }

    pub fn matrix(&self) -> &Matrix8<T> {
        &self.matrix
    }

    /// Largest |𝒞ᵢⱼ − 𝒞ⱼᵢ| before symmetrization.
    pub fn asymmetry(&self) -> T {
        self.asymmetry
    }

    /// ‖A𝒞 + 𝒞Aᵀ + 𝒟‖_F / ‖𝒟‖_F of the accepted solve (zero when wrapped).
    pub fn relative_residual(&self) -> T {
        self.relative_residual
    }

    /// The four symplectic eigenvalues, ascending.
    pub fn symplectic_eigenvalues(&self) -> Result<Vec<T>> {
        symplectic_eigenvalues(&self.matrix)
    }
}

/// Frobenius norm of A𝒞 + 𝒞Aᵀ + 𝒟.
pub fn lyapunov_residual<T: Real>(a: &Matrix8<T>, c: &Matrix8<T>, d: &Matrix8<T>) -> T {
    (a * c + c * a.transpose() + d).norm()
}

/// Kronecker-form operator of X ↦ AX + XAᵀ acting on column-major vec(X).
fn lyapunov_operator<T: Real>(a: &Matrix8<T>) -> DMatrix<T> {
    let n = DIM;
    DMatrix::from_fn(n * n, n * n, |row, col| {
        let (i, j) = (row % n, row / n);
        let (k, l) = (col % n, col / n);
        let mut v = T::zero();
        if j == l {
            v += a[(i, k)];
        }
        if i == k {
            v += a[(j, l)];
        }
        v
    })
}

/// Stationary covariance matrix solving A𝒞 + 𝒞Aᵀ = −𝒟.
pub fn solve_lyapunov<T: Real>(
    a: &DriftMatrix<T>,
    d: &DiffusionMatrix<T>,
) -> Result<CovarianceMatrix<T>> {
    let report = is_stable(a)?;
    if !report.stable {
        return Err(Error::Unstable {
            max_real_part: to_f64(report.max_real_part),
        });
    }
    let a = a.matrix();
    let d = d.matrix();
    let d_norm = d.norm();
    if d_norm == T::zero() {
        return Ok(CovarianceMatrix {
            matrix: Matrix8::zeros(),
            asymmetry: T::zero(),
            relative_residual: T::zero(),
        });
    }

    let k = lyapunov_operator(a);
    let rhs = DVector::from_iterator(DIM * DIM, d.iter().map(|&v| -v));
    let lu = k.clone().lu();

    let u = lu.u();
    let pivots = u.diagonal().map(|v| v.abs());
    let (smallest, largest) = (pivots.min(), pivots.max());
    let condition_limit = T::one() / (lit::<T>(CONDITION_LIMIT_EPS) * T::default_epsilon());
    if !(smallest > T::zero()) || largest / smallest > condition_limit {
        return Err(Error::Numerical(format!(
            "Lyapunov system is ill-conditioned (pivot-ratio condition estimate {:.3e})",
            to_f64(largest / smallest)
        )));
    }

    let mut x = lu
        .solve(&rhs)
        .ok_or_else(|| Error::Numerical("Lyapunov system is singular".into()))?;
    // One step of iterative refinement.
    let r = &rhs - &k * &x;
    if let Some(dx) = lu.solve(&r) {
        x += dx;
    }

    let raw = Matrix8::from_column_slice(x.as_slice());
    let asymmetry = (raw - raw.transpose()).amax();
    let matrix = (raw + raw.transpose()) / T::two();
    let relative_residual = lyapunov_residual(a, &matrix, &d) / d_norm;
    if !(relative_residual <= tolerance::<T>(RESIDUAL_TOLERANCE, 1e5)) {
        return Err(Error::Numerical(format!(
            "Lyapunov residual {:.3e} exceeds tolerance (pivot-ratio condition estimate {:.3e})",
            to_f64(relative_residual),
            to_f64(largest / smallest)
        )));
    }
    Ok(CovarianceMatrix {
        matrix,
        asymmetry,
        relative_residual,
    })
}
