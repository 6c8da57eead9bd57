//! The sphere-and-elastic machine and its Hilbert space representation.
//!
//! States are points `w` of the unit ball, experiments are axes `u` on the
//! sphere. The particle at `w` is projected onto the elastic stretched
//! between `u` and `−u`; the elastic breaks at a uniform point and the
//! particle ends on the side it was attached to.

use super::density::{convex_combine, density_from_ray, DensityOperator};
use super::linalg::{bloch_operator, c, identity, Ket, ComplexMatrix, PROBABILITY_TOL};
use super::spectral::SpectralFamily;
use crate::error::{contract, Result};

const BALL_SLACK: f64 = 1e-12;

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// The point with polar angle `θ` and azimuth `φ` on the unit sphere.
pub fn sphere_point(theta: f64, phi: f64) -> [f64; 3] {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

/// Polar and azimuthal angles of a nonzero vector; `+z` for zero.
pub fn angles_of(v: [f64; 3]) -> (f64, f64) {
    let r = norm3(v);
    if r == 0.0 {
        return (0.0, 0.0);
    }
    ((v[2] / r).clamp(-1.0, 1.0).acos(), v[1].atan2(v[0]))
}

/// A point of the closed unit ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallState {
    w: [f64; 3],
}

impl BallState {
    pub fn new(w: [f64; 3]) -> Result<BallState> {
        if w.iter().any(|x| !x.is_finite()) {
            return contract("ball point has a non-finite coordinate");
        }
        let r = norm3(w);
        if r > 1.0 + BALL_SLACK {
            return contract(format!("point of norm {r} lies outside the unit ball"));
        }
        Ok(BallState { w })
    }

    /// The surface point at angles `(θ, φ)`.
    pub fn surface(theta: f64, phi: f64) -> BallState {
        BallState { w: sphere_point(theta, phi) }
    }

    pub fn from_spherical(radius: f64, theta: f64, phi: f64) -> Result<BallState> {
        if !(0.0..=1.0).contains(&radius) {
            return contract(format!("radius {radius} is outside [0,1]"));
        }
        let v = sphere_point(theta, phi);
        BallState::new([radius * v[0], radius * v[1], radius * v[2]])
    }

    pub fn center() -> BallState {
        BallState { w: [0.0; 3] }
    }

    pub fn point(&self) -> [f64; 3] {
        self.w
    }

    pub fn radius(&self) -> f64 {
        norm3(self.w)
    }

    pub fn is_surface(&self) -> bool {
        (self.radius() - 1.0).abs() <= PROBABILITY_TOL
    }

    /// `w = a·v − b·v` with `a + b = 1`, `v = w/‖w‖`, and `v = +z` at the
    /// center. Returns `(a, b, v)`.
    pub fn decomposition(&self) -> (f64, f64, [f64; 3]) {
        let r = self.radius().min(1.0);
        let v = if r == 0.0 { [0.0, 0.0, 1.0] } else { [self.w[0] / r, self.w[1] / r, self.w[2] / r] };
        ((1.0 + r) / 2.0, (1.0 - r) / 2.0, v)
    }
}

/// An experiment `e_u` along a unit axis `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereExperiment {
    u: [f64; 3],
}

impl SphereExperiment {
    pub fn new(u: [f64; 3]) -> Result<SphereExperiment> {
        let r = norm3(u);
        if !r.is_finite() || (r - 1.0).abs() > PROBABILITY_TOL {
            return contract(format!("axis has norm {r}, expected 1"));
        }
        Ok(SphereExperiment { u })
    }

    pub fn from_angles(theta: f64, phi: f64) -> SphereExperiment {
        SphereExperiment { u: sphere_point(theta, phi) }
    }

    pub fn axis(&self) -> [f64; 3] {
        self.u
    }
}

/// `(p1, p2)` with `p1 = (1 + ⟨w,u⟩)/2`: the chance that the elastic
/// breaks below the particle's projection, pulling it to `u`.
pub fn qmachine_probability(state: &BallState, exp: &SphereExperiment) -> (f64, f64) {
    let t = dot3(state.w, exp.u).clamp(-1.0, 1.0);
    let p1 = (1.0 + t) / 2.0;
    (p1, 1.0 - p1)
}

/// Outcome of one run with the elastic breaking at `lambda ∈ [−1, 1]`:
/// 0 when the particle lands at `u`, 1 when it lands at `−u`.
pub fn elastic_outcome(state: &BallState, exp: &SphereExperiment, lambda: f64) -> usize {
    if lambda < dot3(state.w, exp.u) {
        0
    } else {
        1
    }
}

/// `c^v = (cos(θ/2) e^{−iφ/2}, sin(θ/2) e^{iφ/2})`: the ray whose
/// projector is `(I + v·σ)/2` for `v` at angles `(θ, φ)`.
pub fn ray_state(theta: f64, phi: f64) -> Ket {
    let (h, g) = (theta / 2.0, phi / 2.0);
    Ket::from_unit_vector(nalgebra::DVector::from_vec(vec![
        c(h.cos() * g.cos(), -h.cos() * g.sin()),
        c(h.sin() * g.cos(), h.sin() * g.sin()),
    ]))
}

/// `W(v)` for a surface point.
pub fn surface_density(v: [f64; 3]) -> DensityOperator {
    let (theta, phi) = angles_of(v);
    density_from_ray(&ray_state(theta, phi))
}

/// `W(w) = a W(v) + b W(−v)`.
pub fn qmachine_to_hilbert(state: &BallState) -> DensityOperator {
    let (a, b, v) = state.decomposition();
    let plus = surface_density(v);
    let minus = surface_density([-v[0], -v[1], -v[2]]);
    convex_combine(&[(a, &plus), (b, &minus)]).expect("ball decomposition weights are valid")
}

/// `E^u = {(I + u·σ)/2, (I − u·σ)/2}`.
pub fn sphere_family(exp: &SphereExperiment) -> SpectralFamily {
    let e1: ComplexMatrix = bloch_operator(exp.u);
    let e2 = identity(2) - &e1;
    SpectralFamily::from_parts(vec![e1, e2], Some(vec![1.0, -1.0]))
}

/// The ball point `(tr(Wσx), tr(Wσy), tr(Wσz))` of a qubit density.
pub fn ball_of_density(w: &DensityOperator) -> Result<BallState> {
    super::linalg::check_same_dimension(2, w.dim())?;
    let s = super::linalg::pauli();
    let t = |m: &ComplexMatrix| super::linalg::trace_product(w.matrix(), m).re;
    BallState::new([t(&s[0]), t(&s[1]), t(&s[2])])
}

#[cfg(test)]
mod tests {
    use super::super::born::{cq_probability, sq_probability};
    use super::super::density::is_extremal;
    use super::super::linalg::diag;
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn surface_probability_is_half_angle_cosine() {
        let z = SphereExperiment::from_angles(0.0, 0.0);
        let (p1, p2) = qmachine_probability(&BallState::surface(PI / 3.0, 0.4), &z);
        assert!((p1 - 0.75).abs() < 1e-15);
        assert!((p2 - 0.25).abs() < 1e-15);
        assert_eq!(qmachine_probability(&BallState::center(), &z), (0.5, 0.5));
    }

    #[test]
    fn ray_matches_bloch_projector() {
        for (t, p) in [(0.3, 1.1), (2.0, -0.7), (PI, 0.0)] {
            let w = density_from_ray(&ray_state(t, p));
            assert!((w.matrix() - bloch_operator(sphere_point(t, p))).norm() < 1e-14);
            let h = t / 2.0;
            let off = c((h.sin() * h.cos()) * p.cos(), -(h.sin() * h.cos()) * p.sin());
            assert!((w.matrix()[(0, 1)] - off).norm() < 1e-14);
        }
    }

    #[test]
    fn north_pole_and_center() {
        assert!((qmachine_to_hilbert(&BallState::surface(0.0, 0.0)).matrix() - diag(&[1.0, 0.0])).norm() < 1e-15);
        let w0 = qmachine_to_hilbert(&BallState::center());
        assert!((w0.matrix() - diag(&[0.5, 0.5])).norm() < 1e-15);
        assert!(is_extremal(&qmachine_to_hilbert(&BallState::surface(1.0, 2.0)), 1e-12));
    }

    #[test]
    fn hilbert_reproduces_elastic() {
        let s = BallState::from_spherical(0.6, 1.2, -0.4).unwrap();
        let w = qmachine_to_hilbert(&s);
        let u = SphereExperiment::from_angles(0.5, 2.5);
        let (p1, _) = qmachine_probability(&s, &u);
        assert!((cq_probability(&sphere_family(&u), &w, 0).unwrap() - p1).abs() < 1e-12);
        let v = ray_state(1.2, -0.4);
        let (q1, _) = qmachine_probability(&BallState::surface(1.2, -0.4), &u);
        assert!((sq_probability(&sphere_family(&u), &v, 0).unwrap() - q1).abs() < 1e-12);
        let back = ball_of_density(&w).unwrap();
        for i in 0..3 {
            assert!((back.point()[i] - s.point()[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn elastic_break_sides() {
        let s = BallState::surface(PI / 2.0, 0.0);
        let z = SphereExperiment::from_angles(0.0, 0.0);
        assert_eq!(elastic_outcome(&s, &z, -0.5), 0);
        assert_eq!(elastic_outcome(&s, &z, 0.5), 1);
        assert!(BallState::new([1.0, 1.0, 0.0]).is_err());
        assert!(SphereExperiment::new([0.0, 0.0, 2.0]).is_err());
    }
}
