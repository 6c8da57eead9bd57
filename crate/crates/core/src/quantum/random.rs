//! Seeded samplers for kets, densities, observables and machine states.

use rand::Rng;
use rand_distr::StandardNormal;

use super::density::{density_from_ray, DensityOperator};
use super::linalg::{c, ComplexMatrix, Ket};
use super::machine::{BallState, SphereExperiment};
use super::spectral::{spectral_family_from_hermitian, SpectralFamily, DEFAULT_CLUSTER_TOL};
use num_complex::Complex64;

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn gaussian3<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    [rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal)]
}

/// Haar-distributed unit vector.
pub fn random_ket<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Ket {
    loop {
        if let Ok(k) = Ket::normalized((0..n).map(|_| gaussian(rng)).collect()) {
            return k;
        }
    }
}

/// `G G† / tr(G G†)` for a Gaussian `G`. Full rank almost surely.
pub fn random_density<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DensityOperator {
    let g = ComplexMatrix::from_fn(n, n, |_, _| gaussian(rng));
    let m = &g * g.adjoint();
    let t = m.trace().re;
    let m = m * c(1.0 / t, 0.0);
    DensityOperator::new((&m + m.adjoint()) * c(0.5, 0.0)).expect("Ginibre sample is a density operator")
}

pub fn random_pure_density<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DensityOperator {
    density_from_ray(&random_ket(n, rng))
}

/// Hermitian matrix with Gaussian entries.
pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(n, n, |_, _| gaussian(rng));
    (&g + g.adjoint()) * c(0.5, 0.0)
}

/// Eigenprojections of a random Hermitian matrix: `n` rank-one outcomes
/// almost surely.
pub fn random_spectral_family<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SpectralFamily {
    spectral_family_from_hermitian(&random_hermitian(n, rng), DEFAULT_CLUSTER_TOL).expect("Hermitian sample decomposes")
}

/// Uniform point on the unit sphere.
pub fn random_axis<R: Rng + ?Sized>(rng: &mut R) -> SphereExperiment {
    loop {
        let v = gaussian3(rng);
        let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if r > 1e-6 {
            if let Ok(u) = SphereExperiment::new([v[0] / r, v[1] / r, v[2] / r]) {
                return u;
            }
        }
    }
}

/// Uniform point of the unit ball.
pub fn random_ball_state<R: Rng + ?Sized>(rng: &mut R) -> BallState {
    let u = random_axis(rng).axis();
    let r: f64 = rng.gen::<f64>().cbrt();
    BallState::new([r * u[0], r * u[1], r * u[2]]).expect("radius at most 1")
}
