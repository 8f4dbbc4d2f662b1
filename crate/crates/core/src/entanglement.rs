//! Bipartite entanglement of two-mode Gaussian reductions: logarithmic
//! negativity (natural log) and the Duan sum of collective quadratures.
//!
//! Conventions: ħ = 1, vacuum quadrature variance 1/2. A state is entangled
//! iff the smallest symplectic eigenvalue of its partial transpose is below
//! 1/2, and the Duan sum of a separable state is at least 2.

use nalgebra::{Matrix2, Matrix4};

use crate::error::{Error, Result};
use crate::model::Mode;
use crate::scalar::{lit, to_f64, tolerance, Real};
use crate::steady_state::CovarianceMatrix;
use crate::symplectic::symplectic_eigenvalues;

/// Agreement required between the eigen and closed-form ν̃₋ routes, scaled
/// by max(1, ν₊).
pub const NU_AGREEMENT_TOLERANCE: f64 = 1e-10;

/// Logarithmic negativities below this level are rounding noise on
/// ν̃₋ ≈ 1/2 and are reported as exactly zero.
pub const LOG_NEG_FLOOR: f64 = 1e-12;

/// Duan bound for separable states in the vacuum-1/2 convention.
pub const DUAN_BOUND: f64 = 2.0;

/// Covariance matrix of two modes in (X₁, Y₁, X₂, Y₂) order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeCM<T: Real>(pub Matrix4<T>);

impl<T: Real> TwoModeCM<T> {
    pub fn matrix(&self) -> &Matrix4<T> {
        &self.0
    }

    /// Exchanges the two modes.
    pub fn swapped(&self) -> Self {
        let m = &self.0;
        let perm = [2, 3, 0, 1];
        TwoModeCM(Matrix4::from_fn(|i, j| m[(perm[i], perm[j])]))
    }

    fn block(&self, r: usize, c: usize) -> Matrix2<T> {
        self.0.fixed_view::<2, 2>(r, c).into_owned()
    }
}

/// Extracts the 4×4 covariance matrix of two modes of the full state.
pub fn reduce_cm<T: Real>(
    full: &CovarianceMatrix<T>,
    first: Mode,
    second: Mode,
) -> Result<TwoModeCM<T>> {
    if first == second {
        return Err(Error::Domain(format!(
            "cannot pair mode {first:?} with itself"
        )));
    }
    let idx = [
        first.offset(),
        first.offset() + 1,
        second.offset(),
        second.offset() + 1,
    ];
    let m = full.matrix();
    Ok(TwoModeCM(Matrix4::from_fn(|i, j| m[(idx[i], idx[j])])))
}

/// Same as [`reduce_cm`] with 0-based mode indices
/// (cavity 1, cavity 2, magnon, mechanics).
pub fn reduce_cm_by_index<T: Real>(
    full: &CovarianceMatrix<T>,
    first: usize,
    second: usize,
) -> Result<TwoModeCM<T>> {
    let mode = |i: usize| {
        Mode::from_index(i)
            .ok_or_else(|| Error::Domain(format!("mode index {i} out of range 0..4")))
    };
    reduce_cm(full, mode(first)?, mode(second)?)
}

/// P𝒞P with P = diag(1, −1, 1, 1).
pub fn partial_transpose<T: Real>(cm: &TwoModeCM<T>) -> TwoModeCM<T> {
    let mut m = cm.0;
    for j in 0..4 {
        if j != 1 {
            m[(1, j)] = -m[(1, j)];
            m[(j, 1)] = -m[(j, 1)];
        }
    }
    TwoModeCM(m)
}

/// Smallest symplectic eigenvalue by diagonalizing iΩ₂𝒞.
pub fn nu_minus_eigen<T: Real>(cm: &TwoModeCM<T>) -> Result<T> {
    Ok(symplectic_eigenvalues(cm.matrix())?[0])
}

/// Symplectic eigenvalues from the two-mode invariants, with a bound on the
/// rounding error of ν₋.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormSpectrum<T> {
    pub nu_minus: T,
    pub nu_plus: T,
    /// First-order rounding bound on `nu_minus`. It grows like √ε near
    /// ν₋ = ν₊, where the discriminant cancels.
    pub error_bound: T,
}

/// Both symplectic eigenvalues from Δ = det A + det B + 2 det C and det 𝒞.
///
/// Note the sign: with blocks [[A, C], [Cᵀ, B]] the seralian invariant carries
/// +2 det C; applied to a partial transpose (det C̃ = −det C) it equals the
/// usual Δ̃ = det A + det B − 2 det C of the original matrix.
pub fn symplectic_pair_closed_form<T: Real>(cm: &TwoModeCM<T>) -> Result<ClosedFormSpectrum<T>> {
    let a = cm.block(0, 0).determinant();
    let b = cm.block(2, 2).determinant();
    let c = cm.block(0, 2).determinant();
    let det = cm.0.determinant();
    let delta = a + b + T::two() * c;
    let disc = delta * delta - lit::<T>(4.0) * det;
    let slack = lit::<T>(1e-12) * T::one().max(delta * delta);
    if disc < -slack {
        return Err(Error::Numerical(format!(
            "negative discriminant {:.3e} in symplectic invariants (unphysical matrix)",
            to_f64(disc)
        )));
    }
    if det < -slack {
        return Err(Error::Numerical(format!(
            "negative determinant {:.3e} (unphysical matrix)",
            to_f64(det)
        )));
    }
    let root = disc.max(T::zero()).sqrt();
    let plus_sq = (delta + root) / T::two();
    // ν₋² = (Δ − √disc)/2, evaluated as 2 det / (Δ + √disc) to avoid cancellation.
    let minus_sq = if plus_sq > T::zero() {
        det.max(T::zero()) / plus_sq
    } else {
        ((delta - root) / T::two()).max(T::zero())
    };
    let nu_minus = minus_sq.sqrt();

    let disc_error = lit::<T>(16.0) * T::default_epsilon() * delta.abs() * delta.abs();
    let root_error = disc_error / (root + disc_error.sqrt());
    let error_bound = if nu_minus > T::zero() {
        root_error / (lit::<T>(4.0) * nu_minus)
    } else {
        root_error.sqrt()
    };
    Ok(ClosedFormSpectrum {
        nu_minus,
        nu_plus: plus_sq.max(T::zero()).sqrt(),
        error_bound,
    })
}

/// Smallest symplectic eigenvalue from the closed two-mode formula.
pub fn nu_minus_closed_form<T: Real>(cm: &TwoModeCM<T>) -> Result<T> {
    symplectic_pair_closed_form(cm).map(|s| s.nu_minus)
}

/// Smallest symplectic eigenvalue ν₋ of `cm`, computed along two independent
/// routes. A disagreement beyond 1e-10·max(1, ν₊) plus the closed form's own
/// rounding bound is a hard error; the eigen route is returned.
pub fn symplectic_nu_minus<T: Real>(cm: &TwoModeCM<T>) -> Result<T> {
    let eigen = nu_minus_eigen(cm)?;
    let closed = symplectic_pair_closed_form(cm)?;
    let tol = tolerance::<T>(NU_AGREEMENT_TOLERANCE, 1e3) * T::one().max(closed.nu_plus)
        + closed.error_bound;
    if !((eigen - closed.nu_minus).abs() <= tol) {
        return Err(Error::Numerical(format!(
            "symplectic eigenvalue routes disagree: eigen {:.15e}, closed form {:.15e}",
            to_f64(eigen),
            to_f64(closed.nu_minus)
        )));
    }
    Ok(eigen)
}

/// Smallest symplectic eigenvalue ν̃₋ of the partial transpose.
pub fn partial_transpose_nu_minus<T: Real>(cm: &TwoModeCM<T>) -> Result<T> {
    symplectic_nu_minus(&partial_transpose(cm))
}

fn log_negativity_from_nu<T: Real>(nu_minus: T) -> Result<T> {
    if !(nu_minus > T::zero()) {
        return Err(Error::Numerical(format!(
            "non-positive symplectic eigenvalue {:.3e}",
            to_f64(nu_minus)
        )));
    }
    let e = -(T::two() * nu_minus).ln();
    if e < tolerance::<T>(LOG_NEG_FLOOR, 64.0) {
        return Ok(T::zero());
    }
    Ok(e)
}

/// Logarithmic negativity E_N = max[0, −ln 2ν̃₋] (natural logarithm), with
/// values under [`LOG_NEG_FLOOR`] reported as zero.
pub fn log_negativity<T: Real>(cm: &TwoModeCM<T>) -> Result<T> {
    log_negativity_from_nu(partial_transpose_nu_minus(cm)?)
}

/// Var(X₁ + X₂) + Var(Y₁ − Y₂). Values below 2 witness entanglement.
pub fn duan_sum<T: Real>(cm: &TwoModeCM<T>) -> T {
    let c = &cm.0;
    let two = T::two();
    (c[(0, 0)] + c[(2, 2)] + two * c[(0, 2)]) + (c[(1, 1)] + c[(3, 3)] - two * c[(1, 3)])
}

/// Entanglement figures of merit for one operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementRecord<T> {
    /// Logarithmic negativity E_N (natural log).
    pub log_neg: T,
    /// ν̃₋ of the partially transposed cavity-pair matrix.
    pub nu_minus: T,
    pub duan_sum: T,
    pub stable: bool,
}

impl<T: Real> EntanglementRecord<T> {
    /// Placeholder for points without a steady state (all measures NaN).
    pub fn not_a_value(stable: bool) -> Self {
        let nan = lit::<T>(f64::NAN);
        EntanglementRecord {
            log_neg: nan,
            nu_minus: nan,
            duan_sum: nan,
            stable,
        }
    }

    pub fn from_two_mode(cm: &TwoModeCM<T>) -> Result<Self> {
        let nu_minus = partial_transpose_nu_minus(cm)?;
        Ok(EntanglementRecord {
            log_neg: log_negativity_from_nu(nu_minus)?,
            nu_minus,
            duan_sum: duan_sum(cm),
            stable: true,
        })
    }

    /// Whether the Duan sum witnesses entanglement.
    pub fn duan_witnessed(&self) -> bool {
        self.duan_sum < lit(DUAN_BOUND)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Matrix8;

    fn tmsv(r: f64, sign: f64) -> TwoModeCM<f64> {
        let (ch, sh) = ((2.0 * r).cosh() / 2.0, sign * (2.0 * r).sinh() / 2.0);
        TwoModeCM(Matrix4::new(
            ch, 0.0, sh, 0.0, //
            0.0, ch, 0.0, -sh, //
            sh, 0.0, ch, 0.0, //
            0.0, -sh, 0.0, ch,
        ))
    }

    fn vacuum() -> TwoModeCM<f64> {
        TwoModeCM(Matrix4::identity() * 0.5)
    }

    #[test]
    fn reduction_selects_quadrature_pairs() {
        let full = CovarianceMatrix::from_matrix(Matrix8::from_fn(|i, j| {
            if i == j {
                i as f64 + 1.0
            } else {
                0.0
            }
        }));
        let r = reduce_cm(&full, Mode::Cavity1, Mode::Cavity2).unwrap();
        assert_eq!(r.0.diagonal().as_slice(), &[1.0, 2.0, 3.0, 4.0]);
        let r = reduce_cm_by_index(&full, 3, 1).unwrap();
        assert_eq!(r.0.diagonal().as_slice(), &[7.0, 8.0, 3.0, 4.0]);
        assert!(reduce_cm(&full, Mode::Magnon, Mode::Magnon).is_err());
        assert!(reduce_cm_by_index(&full, 0, 4).is_err());
    }

    #[test]
    fn identity_reduces_to_identity() {
        let full = CovarianceMatrix::from_matrix(Matrix8::<f64>::identity());
        assert_eq!(
            reduce_cm(&full, Mode::Cavity1, Mode::Cavity2).unwrap().0,
            Matrix4::identity()
        );
    }

    #[test]
    fn reduction_commutes_with_swap() {
        let full = CovarianceMatrix::from_matrix(Matrix8::from_fn(|i, j| {
            (i * 8 + j) as f64 + (j * 8 + i) as f64
        }));
        let a = reduce_cm(&full, Mode::Cavity1, Mode::Magnon)
            .unwrap()
            .swapped();
        let b = reduce_cm(&full, Mode::Magnon, Mode::Cavity1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn partial_transpose_structure() {
        let cm = TwoModeCM(Matrix4::from_fn(|i, j| 1.0 + (i + j) as f64));
        let pt = partial_transpose(&cm);
        for i in 0..4 {
            for j in 0..4 {
                let flipped = (i == 1) ^ (j == 1);
                let expected = if flipped { -cm.0[(i, j)] } else { cm.0[(i, j)] };
                assert_eq!(pt.0[(i, j)], expected);
            }
        }
        assert_eq!(partial_transpose(&pt), cm);
        assert_eq!(partial_transpose(&vacuum()), vacuum());
    }

    #[test]
    fn vacuum_measures() {
        assert!((symplectic_nu_minus(&vacuum()).unwrap() - 0.5).abs() < 1e-14);
        assert_eq!(log_negativity(&vacuum()).unwrap(), 0.0);
        assert_eq!(duan_sum(&vacuum()), 2.0);
    }

    #[test]
    fn two_mode_squeezed_vacuum() {
        let r = 0.5;
        let cm = tmsv(r, 1.0);
        let nu = partial_transpose_nu_minus(&cm).unwrap();
        assert!((nu - (-2.0 * r).exp() / 2.0).abs() < 1e-12);
        assert!((log_negativity(&cm).unwrap() - 2.0 * r).abs() < 1e-12);
        // The same CM is pure.
        assert!((symplectic_nu_minus(&cm).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn duan_orientation_matters() {
        let r = 0.5;
        let witnessed = tmsv(r, -1.0);
        assert!((duan_sum(&witnessed) - 2.0 * (-2.0 * r).exp()).abs() < 1e-12);
        let missed = tmsv(r, 1.0);
        assert!((duan_sum(&missed) - 2.0 * (2.0 * r).exp()).abs() < 1e-12);
        assert!((log_negativity(&missed).unwrap() - 2.0 * r).abs() < 1e-12);
    }

    #[test]
    fn thermal_product_is_separable() {
        for (n1, n2) in [(0.0, 0.0), (0.3, 5.0), (40.0, 1e-3)] {
            let cm = TwoModeCM(Matrix4::from_diagonal(
                &[n1 + 0.5, n1 + 0.5, n2 + 0.5, n2 + 0.5].into(),
            ));
            assert_eq!(log_negativity(&cm).unwrap(), 0.0);
        }
    }

    #[test]
    fn routes_agree_on_correlated_state() {
        let cm = TwoModeCM(Matrix4::new(
            1.3, 0.2, 0.4, -0.1, //
            0.2, 0.9, 0.05, -0.3, //
            0.4, 0.05, 1.1, 0.15, //
            -0.1, -0.3, 0.15, 1.6,
        ));
        let e: f64 = nu_minus_eigen(&partial_transpose(&cm)).unwrap();
        let c = nu_minus_closed_form(&partial_transpose(&cm)).unwrap();
        assert!((e - c).abs() < 1e-12);
    }

    #[test]
    fn unphysical_input_is_rejected() {
        let cm = TwoModeCM(Matrix4::from_diagonal(&[1.0, -1.0, 1.0, 1.0].into()));
        assert!(symplectic_nu_minus(&cm).is_err());
    }

    #[test]
    fn not_a_value_record() {
        let r = EntanglementRecord::<f64>::not_a_value(false);
        assert!(r.log_neg.is_nan() && r.duan_sum.is_nan() && r.nu_minus.is_nan());
        assert!(!r.stable);
        assert!(!r.duan_witnessed());
    }
}
