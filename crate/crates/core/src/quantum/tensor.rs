//! Composite systems `H ⊗ G`: lifted experiments and the partial trace.

use super::density::DensityOperator;
use super::linalg::{c, check_dimension, check_operator, identity, kron, ComplexMatrix, Ket};
use super::spectral::SpectralFamily;
use crate::error::{contract, Result};

/// `{E_1 ⊗ I_G, E_2 ⊗ I_G, ...}`.
pub fn lift_experiment(family: &SpectralFamily, dim_g: usize) -> Result<SpectralFamily> {
    check_dimension(dim_g)?;
    check_dimension(family.dim() * dim_g)?;
    let ig = identity(dim_g);
    let projections: Vec<ComplexMatrix> = family.projections().iter().map(|p| kron(p, &ig)).collect();
    SpectralFamily::new(projections)
}

/// Outcome `k` of `E` corresponds to outcome `k` of the lifted family.
pub fn lift_outcome(k: usize) -> usize {
    k
}

/// `(Tr_G A)_{mk} = Σ_j A_{(m,j),(k,j)}` for any operator on `H ⊗ G`,
/// with the product basis ordered `m·n_G + j`.
pub fn partial_trace_operator(a: &ComplexMatrix, dims: (usize, usize)) -> Result<ComplexMatrix> {
    let (nh, ng) = dims;
    check_dimension(nh)?;
    check_dimension(ng)?;
    let n = check_operator(a)?;
    if n != nh * ng {
        return contract(format!("operator of dimension {n} does not factor as {nh}x{ng}"));
    }
    Ok(ComplexMatrix::from_fn(nh, nh, |m, k| (0..ng).map(|j| a[(m * ng + j, k * ng + j)]).sum()))
}

/// The unique density on `H` with `tr(W E) = tr(W' (E ⊗ I_G))` for every
/// projection `E`.
pub fn partial_trace(w: &DensityOperator, dims: (usize, usize)) -> Result<DensityOperator> {
    DensityOperator::new(partial_trace_operator(w.matrix(), dims)?)
}

/// `(e_1 ⊗ e_2 − e_2 ⊗ e_1)/√2` in `H ⊗ G`; both factors need dimension 2 or more.
pub fn singlet(nh: usize, ng: usize) -> Result<Ket> {
    if nh < 2 || ng < 2 {
        return contract("the singlet needs both factors of dimension at least 2");
    }
    let mut amps = vec![c(0.0, 0.0); nh * ng];
    amps[1] = c(1.0, 0.0);
    amps[ng] = c(-1.0, 0.0);
    Ket::normalized(amps)
}
