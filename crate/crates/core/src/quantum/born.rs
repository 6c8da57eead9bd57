//! Outcome sets and probabilities for ray states and density operators.

use super::density::DensityOperator;
use super::linalg::{check_same_dimension, trace_product, Ket};
use super::spectral::SpectralFamily;
use crate::error::Result;
use crate::set::Subset;

/// `{k : ‖E_k c‖ > tol}`. Never empty for a unit `c`.
pub fn sq_outcome_set(family: &SpectralFamily, c: &Ket, tol: f64) -> Result<Subset> {
    check_same_dimension(family.dim(), c.dim())?;
    let ks = (0..family.len()).filter(|&k| (&family.projections()[k] * c.amplitudes()).norm() > tol);
    Ok(Subset::from_indices(family.len(), ks))
}

/// `⟨c, E_k c⟩`.
pub fn sq_probability(family: &SpectralFamily, c: &Ket, k: usize) -> Result<f64> {
    check_same_dimension(family.dim(), c.dim())?;
    Ok(c.expectation(family.projection(k)?).re)
}

/// `{k : tr(W E_k) > tol}`.
pub fn cq_outcome_set(family: &SpectralFamily, w: &DensityOperator, tol: f64) -> Result<Subset> {
    check_same_dimension(family.dim(), w.dim())?;
    let ks = (0..family.len()).filter(|&k| trace_product(w.matrix(), &family.projections()[k]).re > tol);
    Ok(Subset::from_indices(family.len(), ks))
}

/// `tr(W E_k)`.
pub fn cq_probability(family: &SpectralFamily, w: &DensityOperator, k: usize) -> Result<f64> {
    check_same_dimension(family.dim(), w.dim())?;
    Ok(trace_product(w.matrix(), family.projection(k)?).re)
}
