//! Symplectic spectra of covariance matrices in the (X, Y) quadrature basis.

use nalgebra::{DMatrix, Dim, Matrix, RawStorage};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Iteration cap for the real Schur decomposition.
pub(crate) const SCHUR_MAX_ITERATIONS: usize = 10_000;

/// Symplectic form ⊕ⱼ [[0, 1], [−1, 0]] for `modes` bosonic modes.
pub fn symplectic_form<T: Real>(modes: usize) -> DMatrix<T> {
    let mut omega = DMatrix::zeros(2 * modes, 2 * modes);
    for j in 0..modes {
        omega[(2 * j, 2 * j + 1)] = T::one();
        omega[(2 * j + 1, 2 * j)] = -T::one();
    }
    omega
}

/// Symplectic eigenvalues (ascending) of a 2n×2n covariance matrix: the
/// moduli of the eigenvalues of iΩ𝒞, each of which appears twice.
pub fn symplectic_eigenvalues<T, R, C, S>(cm: &Matrix<T, R, C, S>) -> Result<Vec<T>>
where
    T: Real,
    R: Dim,
    C: Dim,
    S: RawStorage<T, R, C>,
{
    let (rows, cols) = cm.shape();
    if rows != cols || rows % 2 != 0 || rows == 0 {
        return Err(Error::Domain(format!(
            "covariance matrix must be square with even dimension, got {rows}×{cols}"
        )));
    }
    let cm = DMatrix::from_fn(rows, cols, |i, j| cm[(i, j)]);
    let product = symplectic_form::<T>(rows / 2) * cm;
    let schur = product
        .try_schur(T::default_epsilon(), SCHUR_MAX_ITERATIONS)
        .ok_or_else(|| Error::Numerical("Schur iteration did not converge for iΩ𝒞".into()))?;
    let mut moduli: Vec<T> = schur
        .complex_eigenvalues()
        .iter()
        .map(|z| z.re.hypot(z.im))
        .collect();
    moduli.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    Ok(moduli
        .chunks(2)
        .map(|pair| (pair[0] + pair[1]) / T::two())
        .collect())
}
