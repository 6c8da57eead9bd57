//! Spectral families: the finite-dimensional form of a quantum experiment.

use nalgebra::SymmetricEigen;

use super::linalg::{c, check_operator, hermitian_residual, identity, ComplexMatrix, VALIDATION_TOL};
use crate::diagnostics::Diagnostics;
use crate::error::{contract, Error, Result};
use crate::set::Subset;

/// Default absolute gap below which sorted eigenvalues are merged.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;

/// Residual norms of the spectral family invariants, plus the verdicts.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralValidation {
    pub hermitian: f64,
    pub idempotent: f64,
    /// Smallest Frobenius norm among the projections.
    pub min_norm: f64,
    pub orthogonality: f64,
    pub completeness: f64,
    pub diagnostics: Diagnostics,
}

const SHAPE: &str = "projections share one square dimension";
const HERMITIAN: &str = "projections are Hermitian";
const IDEMPOTENT: &str = "projections are idempotent";
const NONZERO: &str = "projections are nonzero";
const ORTHOGONAL: &str = "projections are pairwise orthogonal";
const COMPLETE: &str = "projections sum to the identity";

/// Residual check of every invariant; the maxima are reported even when
/// the checks pass.
pub fn validate_spectral_family(projections: &[ComplexMatrix], tol: f64) -> SpectralValidation {
    let mut d = Diagnostics::new();
    let mut v = SpectralValidation {
        hermitian: 0.0,
        idempotent: 0.0,
        min_norm: f64::INFINITY,
        orthogonality: 0.0,
        completeness: f64::INFINITY,
        diagnostics: Diagnostics::new(),
    };
    let n = projections.first().map_or(0, |p| p.nrows());
    d.record(SHAPE, !projections.is_empty(), || "the family is empty".into());
    for (k, p) in projections.iter().enumerate() {
        d.record(SHAPE, check_operator(p).is_ok() && p.nrows() == n, || format!("E_{}", k + 1));
    }
    if !d.passed() {
        v.diagnostics = d;
        return v;
    }
    for c in [HERMITIAN, IDEMPOTENT, NONZERO, ORTHOGONAL, COMPLETE] {
        d.ensure(c);
    }
    let mut sum = ComplexMatrix::zeros(n, n);
    for (k, p) in projections.iter().enumerate() {
        let h = hermitian_residual(p);
        let i = (p * p - p).norm();
        let norm = p.norm();
        v.hermitian = v.hermitian.max(h);
        v.idempotent = v.idempotent.max(i);
        v.min_norm = v.min_norm.min(norm);
        d.record(HERMITIAN, h <= tol, || format!("E_{}: residual {h:e}", k + 1));
        d.record(IDEMPOTENT, i <= tol, || format!("E_{}: residual {i:e}", k + 1));
        d.record(NONZERO, norm > tol, || format!("E_{}", k + 1));
        for (l, q) in projections.iter().enumerate().skip(k + 1) {
            let o = (p * q).norm();
            v.orthogonality = v.orthogonality.max(o);
            d.record(ORTHOGONAL, o <= tol, || format!("E_{} E_{}: residual {o:e}", k + 1, l + 1));
        }
        sum += p;
    }
    v.completeness = (sum - identity(n)).norm();
    d.record(COMPLETE, v.completeness <= tol, || format!("residual {:e}", v.completeness));
    v.diagnostics = d;
    v
}

/// An ordered family `E_1..E_r` of pairwise orthogonal nonzero projections
/// summing to the identity. Outcome `k` is identified with `E_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFamily {
    projections: Vec<ComplexMatrix>,
    eigenvalues: Option<Vec<f64>>,
}

impl SpectralFamily {
    pub fn new(projections: Vec<ComplexMatrix>) -> Result<SpectralFamily> {
        Self::with_tolerance(projections, VALIDATION_TOL)
    }

    pub fn with_tolerance(projections: Vec<ComplexMatrix>, tol: f64) -> Result<SpectralFamily> {
        let v = validate_spectral_family(&projections, tol);
        if let Some(f) = v.diagnostics.failed_checks().next() {
            return contract(format!("not a spectral family: {} fails ({})", f.name, f.witnesses.join("; ")));
        }
        Ok(SpectralFamily { projections, eigenvalues: None })
    }

    /// The computational basis measurement.
    pub fn computational(n: usize) -> Result<SpectralFamily> {
        super::linalg::check_dimension(n)?;
        let projections = (0..n)
            .map(|k| {
                let mut p = ComplexMatrix::zeros(n, n);
                p[(k, k)] = c(1.0, 0.0);
                p
            })
            .collect();
        Ok(SpectralFamily { projections, eigenvalues: None })
    }

    /// The two-outcome family `{P, I − P}` of a proper projection.
    pub fn binary(p: ComplexMatrix) -> Result<SpectralFamily> {
        let n = check_operator(&p)?;
        let q = identity(n) - &p;
        SpectralFamily::new(vec![p, q])
    }

    pub fn projections(&self) -> &[ComplexMatrix] {
        &self.projections
    }

    pub fn projection(&self, k: usize) -> Result<&ComplexMatrix> {
        self.projections
            .get(k)
            .ok_or_else(|| Error::Contract(format!("outcome {k} out of range for a family of {}", self.projections.len())))
    }

    /// Number of outcomes.
    pub fn len(&self) -> usize {
        self.projections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projections.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.projections[0].nrows()
    }

    /// Distinct eigenvalues, aligned with the projections, when the family
    /// came from a Hermitian operator. Outcomes are never named by them.
    pub fn eigenvalues(&self) -> Option<&[f64]> {
        self.eigenvalues.as_deref()
    }

    /// `R(A) = Σ_{k ∈ A} E_k`.
    pub fn range_projector(&self, a: &Subset) -> ComplexMatrix {
        let n = self.dim();
        a.iter().fold(ComplexMatrix::zeros(n, n), |acc, k| acc + &self.projections[k])
    }

    pub(crate) fn from_parts(projections: Vec<ComplexMatrix>, eigenvalues: Option<Vec<f64>>) -> SpectralFamily {
        SpectralFamily { projections, eigenvalues }
    }
}

/// Spectral decomposition of a Hermitian operator. Eigenvalues are sorted
/// descending and merged when consecutive gaps are at most `cluster_tol`;
/// each cluster yields one projection onto its eigenspace.
pub fn spectral_family_from_hermitian(h: &ComplexMatrix, cluster_tol: f64) -> Result<SpectralFamily> {
    let n = check_operator(h)?;
    let r = hermitian_residual(h);
    if r > VALIDATION_TOL {
        return contract(format!("operator is not Hermitian (residual {r:e})"));
    }
    let sym = (h + h.adjoint()) * c(0.5, 0.0);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match clusters.last_mut() {
            Some(cl) if eig.eigenvalues[*cl.last().unwrap()] - eig.eigenvalues[i] <= cluster_tol => cl.push(i),
            _ => clusters.push(vec![i]),
        }
    }
    let mut projections = Vec::with_capacity(clusters.len());
    let mut values = Vec::with_capacity(clusters.len());
    for cl in &clusters {
        let mut p = ComplexMatrix::zeros(n, n);
        for &i in cl {
            let v = eig.eigenvectors.column(i);
            p += v * v.adjoint();
        }
        projections.push(p);
        values.push(cl.iter().map(|&i| eig.eigenvalues[i]).sum::<f64>() / cl.len() as f64);
    }
    let rebuilt = projections.iter().zip(&values).fold(ComplexMatrix::zeros(n, n), |acc, (p, &l)| acc + p * c(l, 0.0));
    let residual = (rebuilt - h).norm();
    let bound = 1e-8 * h.norm() + n as f64 * cluster_tol + 1e-14;
    if residual > bound {
        return Err(Error::Consistency(format!("spectral reconstruction residual {residual:e} exceeds {bound:e}")));
    }
    let fam = SpectralFamily::from_parts(projections, Some(values));
    let v = validate_spectral_family(fam.projections(), VALIDATION_TOL);
    if !v.diagnostics.passed() {
        return Err(Error::Consistency(format!("eigenprojections fail validation:\n{}", v.diagnostics)));
    }
    Ok(fam)
}
