#![allow(dead_code)]

use std::f64::consts::PI;

use magnomech::model::{build_diffusion_matrix, build_drift_matrix, Matrix8};
use magnomech::{baseline, is_stable, Params};
use nalgebra::{DMatrix, Matrix4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MHZ: f64 = 2.0 * PI * 1e6;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Operating point drawn around the baseline, not necessarily stable.
pub fn random_params(rng: &mut ChaCha8Rng) -> Params {
    let omega_b = baseline::<f64>().omega_b;
    let sign = |rng: &mut ChaCha8Rng| if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    let mut p = baseline::<f64>();
    p.kappa_1 = rng.random_range(0.5..3.0) * MHZ;
    p.kappa_2 = rng.random_range(0.5..3.0) * MHZ;
    p.kappa_m = rng.random_range(0.5..3.0) * MHZ;
    p.g_1 = rng.random_range(1.0..5.0) * MHZ;
    p.g_2 = rng.random_range(1.0..5.0) * MHZ;
    p.coupling_g = rng.random_range(0.5..5.0) * MHZ;
    p.delta_1 = sign(rng) * rng.random_range(0.3..2.0) * omega_b;
    p.delta_2 = sign(rng) * rng.random_range(0.3..2.0) * omega_b;
    p.delta_m_eff = rng.random_range(0.5..1.5) * omega_b;
    p.temperature = rng.random_range(0.0..0.2);
    p
}

/// `count` operating points that pass the stability test.
pub fn random_stable_params(seed: u64, count: usize) -> Vec<Params> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = random_params(&mut rng);
        if is_stable(&build_drift_matrix(&p)).unwrap().stable {
            out.push(p);
        }
    }
    out
}

/// Random physical two-mode covariance matrix: a symplectic image of a
/// thermal product state.
pub fn random_physical_cm(rng: &mut ChaCha8Rng) -> Matrix4<f64> {
    let n1: f64 = rng.random_range(0.0..3.0);
    let n2: f64 = rng.random_range(0.0..3.0);
    let thermal = Matrix4::from_diagonal(&[n1 + 0.5, n1 + 0.5, n2 + 0.5, n2 + 0.5].into());
    let s = random_symplectic(rng);
    let cm = s * thermal * s.transpose();
    (cm + cm.transpose()) / 2.0
}

fn rotation(theta: f64) -> nalgebra::Matrix2<f64> {
    nalgebra::Matrix2::new(theta.cos(), -theta.sin(), theta.sin(), theta.cos())
}

fn local(a: nalgebra::Matrix2<f64>, b: nalgebra::Matrix2<f64>) -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(&a);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(&b);
    m
}

fn random_symplectic(rng: &mut ChaCha8Rng) -> Matrix4<f64> {
    let mut s = Matrix4::identity();
    for _ in 0..3 {
        let squeeze = |rng: &mut ChaCha8Rng| {
            let r: f64 = rng.random_range(-1.0..1.0);
            nalgebra::Matrix2::new(r.exp(), 0.0, 0.0, (-r).exp())
        };
        let a = rotation(rng.random_range(0.0..2.0 * PI)) * squeeze(rng);
        let b = rotation(rng.random_range(0.0..2.0 * PI)) * squeeze(rng);
        s = local(a, b) * s;
        // Beam splitter and two-mode squeezer mix the modes.
        let t: f64 = rng.random_range(0.0..PI);
        let (c, si) = (t.cos(), t.sin());
        let bs = Matrix4::new(
            c, 0.0, si, 0.0, //
            0.0, c, 0.0, si, //
            -si, 0.0, c, 0.0, //
            0.0, -si, 0.0, c,
        );
        let r: f64 = rng.random_range(0.0..1.2);
        let (ch, sh) = (r.cosh(), r.sinh());
        let tms = Matrix4::new(
            ch, 0.0, sh, 0.0, //
            0.0, ch, 0.0, -sh, //
            sh, 0.0, ch, 0.0, //
            0.0, -sh, 0.0, ch,
        );
        s = tms * bs * s;
    }
    s
}

/// Stationary covariance from explicit time integration of
/// d𝒞/dt = A𝒞 + 𝒞Aᵀ + 𝒟 starting at 𝒞 = 0.
///
/// One classical RK4 step of size h gives the step propagator Φ(h) and the
/// increment 𝒞(h); the state is then advanced by doubling,
/// 𝒞(2t) = Φ(t)𝒞(t)Φ(t)ᵀ + 𝒞(t), until `decay_times` of the slowest mode.
pub fn integrate_to_steady_state(p: &Params, step_fraction: f64, decay_times: f64) -> Matrix8<f64> {
    let a = *build_drift_matrix(p).matrix();
    let d = build_diffusion_matrix(p).unwrap().matrix();
    let eig = DMatrix::from_fn(8, 8, |i, j| a[(i, j)]).complex_eigenvalues();
    let spectral_radius = eig.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let slowest = eig.iter().map(|z| -z.re).fold(f64::INFINITY, f64::min);
    assert!(
        slowest > 0.0,
        "integration oracle needs a stable drift matrix"
    );

    let h = step_fraction / spectral_radius;
    let f = |c: &Matrix8<f64>| a * c + c * a.transpose() + d;
    let zero = Matrix8::zeros();
    let k1 = f(&zero);
    let k2 = f(&(zero + k1 * (h / 2.0)));
    let k3 = f(&(zero + k2 * (h / 2.0)));
    let k4 = f(&(zero + k3 * h));
    let mut c = (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);

    let ha = a * h;
    let ha2 = ha * ha;
    let ha3 = ha2 * ha;
    let mut phi = Matrix8::identity() + ha + ha2 / 2.0 + ha3 / 6.0 + ha3 * ha / 24.0;

    let mut t = h;
    while t < decay_times / slowest {
        c = phi * c * phi.transpose() + c;
        phi = phi * phi;
        t *= 2.0;
    }
    (c + c.transpose()) / 2.0
}

/// |x − y| ≤ tol·√(yᵢᵢyⱼⱼ) for every entry (covariance-scaled comparison).
pub fn covariance_close(x: &Matrix8<f64>, y: &Matrix8<f64>, tol: f64) -> Result<(), String> {
    for i in 0..8 {
        for j in 0..8 {
            let scale = (y[(i, i)] * y[(j, j)]).sqrt();
            let diff = (x[(i, j)] - y[(i, j)]).abs();
            if diff > tol * scale {
                return Err(format!(
                    "entry ({i},{j}): {:e} vs {:e} (scale {scale:e})",
                    x[(i, j)],
                    y[(i, j)]
                ));
            }
        }
    }
    Ok(())
}
