//! Density operators: the states of completed quantum mechanics.

use nalgebra::SymmetricEigen;

use super::linalg::{c, check_operator, hermitian_residual, identity, ComplexMatrix, Ket, VALIDATION_TOL};
use crate::diagnostics::Diagnostics;
use crate::error::{contract, Error, Result};

/// Hermitian, positive (eigenvalues ≥ −tol) and of unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
}

/// Checks the density operator invariants at `tol`.
pub fn validate_density(m: &ComplexMatrix, tol: f64) -> Diagnostics {
    let mut d = Diagnostics::new();
    if let Err(e) = check_operator(m) {
        d.record("square finite operator", false, || e.to_string());
        return d;
    }
    let h = hermitian_residual(m);
    d.record("Hermitian", h <= tol, || format!("residual {h:e}"));
    let min = min_eigenvalue(m);
    d.record("positive", min >= -tol, || format!("smallest eigenvalue {min:e}"));
    let t = m.trace();
    d.record("unit trace", (t.re - 1.0).abs() <= tol && t.im.abs() <= tol, || format!("trace {t}"));
    d
}

fn hermitian_part(m: &ComplexMatrix) -> ComplexMatrix {
    (m + m.adjoint()) * c(0.5, 0.0)
}

fn min_eigenvalue(m: &ComplexMatrix) -> f64 {
    SymmetricEigen::new(hermitian_part(m)).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

impl DensityOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<DensityOperator> {
        Self::with_tolerance(matrix, VALIDATION_TOL)
    }

    pub fn with_tolerance(matrix: ComplexMatrix, tol: f64) -> Result<DensityOperator> {
        let d = validate_density(&matrix, tol);
        if let Some(f) = d.failed_checks().next() {
            return contract(format!("not a density operator: {} fails ({})", f.name, f.witnesses.join("; ")));
        }
        Ok(DensityOperator { matrix })
    }

    /// `I/n`.
    pub fn maximally_mixed(n: usize) -> Result<DensityOperator> {
        super::linalg::check_dimension(n)?;
        Ok(DensityOperator { matrix: identity(n) * c(1.0 / n as f64, 0.0) })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = SymmetricEigen::new(hermitian_part(&self.matrix)).eigenvalues.iter().copied().collect();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    /// `tr(W²)`.
    pub fn purity(&self) -> f64 {
        super::linalg::trace_product(&self.matrix, &self.matrix).re
    }

    /// A unit eigenvector for the largest eigenvalue. For an extremal
    /// operator this is the ray it projects on.
    pub fn principal_ray(&self) -> Ket {
        let eig = SymmetricEigen::new(hermitian_part(&self.matrix));
        let top = (0..self.dim()).max_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b])).unwrap();
        let v = eig.eigenvectors.column(top).into_owned();
        let n = v.norm();
        Ket::from_unit_vector(v.unscale(n))
    }
}

/// `|c⟩⟨c|`.
pub fn density_from_ray(c: &Ket) -> DensityOperator {
    DensityOperator { matrix: c.projector() }
}

/// `Σ w_i W_i` for nonnegative weights summing to 1 within 1e-10.
pub fn convex_combine(pairs: &[(f64, &DensityOperator)]) -> Result<DensityOperator> {
    let Some((_, first)) = pairs.first() else {
        return contract("convex combination of no operators");
    };
    let n = first.dim();
    let mut total = 0.0;
    let mut m = ComplexMatrix::zeros(n, n);
    for (w, op) in pairs {
        if !w.is_finite() || *w < 0.0 {
            return contract(format!("weight {w} is negative or not finite"));
        }
        if op.dim() != n {
            return Err(Error::Dimension { expected: n, actual: op.dim() });
        }
        total += w;
        m += op.matrix() * c(*w, 0.0);
    }
    if (total - 1.0).abs() > 1e-10 {
        return contract(format!("weights sum to {total}, expected 1"));
    }
    DensityOperator::new(m)
}

/// `‖W² − W‖ ≤ tol`: the extremal points are the rank-one projections.
pub fn is_extremal(w: &DensityOperator, tol: f64) -> bool {
    (w.matrix() * w.matrix() - w.matrix()).norm() <= tol
}

#[cfg(test)]
mod tests {
    use super::super::linalg::diag;
    use super::*;

    #[test]
    fn basis_ray_is_extremal() {
        let w = density_from_ray(&Ket::basis(2, 0));
        assert_eq!(w.matrix(), &diag(&[1.0, 0.0]));
        assert!(is_extremal(&w, 1e-12));
        assert!(!is_extremal(&DensityOperator::maximally_mixed(2).unwrap(), 1e-12));
    }

    #[test]
    fn rejects_invalid_operators() {
        assert!(DensityOperator::new(diag(&[0.5, 0.6])).is_err());
        assert!(DensityOperator::new(diag(&[1.5, -0.5])).is_err());
        let w = DensityOperator::maximally_mixed(2).unwrap();
        assert!(convex_combine(&[(0.5, &w), (0.6, &w)]).is_err());
        assert!(convex_combine(&[(-0.5, &w), (1.5, &w)]).is_err());
    }
}
