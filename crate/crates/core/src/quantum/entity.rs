//! Finite entities cut out of standard and completed quantum mechanics.
//!
//! Each experiment is a spectral family and each of its projections is an
//! outcome. The same projection occurring in two families is one outcome,
//! named after its first occurrence as `<experiment>.<k>` (1-based).

use super::born::{cq_outcome_set, cq_probability, sq_outcome_set, sq_probability};
use super::density::DensityOperator;
use super::linalg::{check_same_dimension, ComplexMatrix, Ket, PROBABILITY_TOL};
use super::spectral::SpectralFamily;
use crate::entity::{Entity, ExperimentId, OutcomeId};
use crate::error::{contract, Result};
use crate::probability::{ProbabilisticEntity, ProbabilityTable, DEFAULT_TOLERANCE};
use crate::set::Subset;

/// Frobenius distance below which two projections are the same outcome.
pub const PROJECTOR_EQ_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct QuantumEntity {
    /// The entity with its single measure `mu`.
    pub prob: ProbabilisticEntity,
    /// Projection of each outcome, indexed by outcome id.
    pub projectors: Vec<ComplexMatrix>,
    /// For each experiment id, the outcome id of each projection; `None`
    /// when the projection is possible in no sampled state.
    pub outcome_of: Vec<Vec<Option<OutcomeId>>>,
}

impl QuantumEntity {
    pub fn entity(&self) -> &Entity {
        &self.prob.entity
    }

    pub fn measure(&self) -> &ProbabilityTable {
        &self.prob.measures[0]
    }

    /// The outcome whose projection equals `p`, if any.
    pub fn outcome_for(&self, p: &ComplexMatrix) -> Option<OutcomeId> {
        self.projectors.iter().position(|q| q.shape() == p.shape() && (q - p).norm() <= PROJECTOR_EQ_TOL).map(OutcomeId)
    }

    /// The family's range projector `R(A)` for an outcome subset of the entity.
    pub fn range_projector(&self, e: ExperimentId, a: &Subset) -> ComplexMatrix {
        let n = self.projectors.first().map_or(0, |p| p.nrows());
        self.outcome_of[e.0]
            .iter()
            .flatten()
            .filter(|x| a.contains(x.0))
            .fold(ComplexMatrix::zeros(n, n), |acc, x| acc + &self.projectors[x.0])
    }
}

type Cell = (Subset, Vec<f64>);

fn build<S: AsRef<str>>(
    experiments: &[(S, SpectralFamily)],
    state_names: &[String],
    dim: usize,
    cell: impl Fn(&SpectralFamily, usize) -> Result<Cell>,
) -> Result<QuantumEntity> {
    if experiments.is_empty() || state_names.is_empty() {
        return contract("a quantum entity needs at least one experiment and one state");
    }
    let mut projectors: Vec<ComplexMatrix> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    let mut slot: Vec<Vec<usize>> = Vec::new();
    for (en, fam) in experiments {
        check_same_dimension(dim, fam.dim())?;
        let mut ids = Vec::new();
        for (k, p) in fam.projections().iter().enumerate() {
            let found = projectors.iter().position(|q| (q - p).norm() <= PROJECTOR_EQ_TOL);
            ids.push(found.unwrap_or_else(|| {
                projectors.push(p.clone());
                names.push(format!("{}.{}", en.as_ref(), k + 1));
                projectors.len() - 1
            }));
        }
        slot.push(ids);
    }

    let mut cells: Vec<(String, String, Vec<String>)> = Vec::new();
    let mut entries: Vec<(String, String, String, f64)> = Vec::new();
    for ((en, fam), ids) in experiments.iter().zip(&slot) {
        for (p, pn) in state_names.iter().enumerate() {
            let (o, probs) = cell(fam, p)?;
            let outs: Vec<String> = o.iter().map(|k| names[ids[k]].clone()).collect();
            for k in o.iter() {
                entries.push((en.as_ref().to_string(), pn.clone(), names[ids[k]].clone(), probs[k]));
            }
            cells.push((en.as_ref().to_string(), pn.clone(), outs));
        }
    }
    let exp_names: Vec<String> = experiments.iter().map(|(n, _)| n.as_ref().to_string()).collect();
    let entity = Entity::new(state_names, &exp_names, &cells, None)?;
    let table = ProbabilityTable::from_entries(&entity, "mu", &entries)?;

    let entity_projectors: Vec<ComplexMatrix> = entity
        .outcome_names()
        .iter()
        .map(|n| projectors[names.iter().position(|m| m == n).expect("outcome comes from a family")].clone())
        .collect();
    let mut outcome_of = vec![Vec::new(); experiments.len()];
    for ((en, _), ids) in experiments.iter().zip(&slot) {
        let e = entity.experiment_id(en.as_ref())?;
        outcome_of[e.0] = ids.iter().map(|&i| entity.outcome_id(&names[i]).ok()).collect();
    }
    let prob = ProbabilisticEntity::new(entity, vec![table], DEFAULT_TOLERANCE)?;
    Ok(QuantumEntity { prob, projectors: entity_projectors, outcome_of })
}

fn common_dim<T>(states: &[T], dim: impl Fn(&T) -> usize) -> Result<usize> {
    let Some(first) = states.first() else {
        return contract("a quantum entity needs at least one state");
    };
    let n = dim(first);
    for s in states {
        check_same_dimension(n, dim(s))?;
    }
    Ok(n)
}

/// Ray states `p_c` with `O(e_E, p_c) = {k : ‖E_k c‖ > tol}` and
/// `μ = ⟨c, E_k c⟩`.
pub fn standard_quantum_entity<S: AsRef<str>>(
    experiments: &[(S, SpectralFamily)],
    states: &[(S, Ket)],
    tol: f64,
) -> Result<QuantumEntity> {
    let dim = common_dim(states, |(_, c)| c.dim())?;
    let names: Vec<String> = states.iter().map(|(n, _)| n.as_ref().to_string()).collect();
    build(experiments, &names, dim, |fam, p| {
        let c = &states[p].1;
        let o = sq_outcome_set(fam, c, tol)?;
        let probs = (0..fam.len()).map(|k| sq_probability(fam, c, k)).collect::<Result<_>>()?;
        Ok((o, probs))
    })
}

/// Density states `p_W` with `O(e_E, p_W) = {k : tr(W E_k) > tol}` and
/// `μ = tr(W E_k)`.
pub fn completed_quantum_entity<S: AsRef<str>>(
    experiments: &[(S, SpectralFamily)],
    states: &[(S, DensityOperator)],
    tol: f64,
) -> Result<QuantumEntity> {
    let dim = common_dim(states, |(_, w)| w.dim())?;
    let names: Vec<String> = states.iter().map(|(n, _)| n.as_ref().to_string()).collect();
    build(experiments, &names, dim, |fam, p| {
        let w = &states[p].1;
        let o = cq_outcome_set(fam, w, tol)?;
        let probs = (0..fam.len()).map(|k| cq_probability(fam, w, k)).collect::<Result<_>>()?;
        Ok((o, probs))
    })
}

/// Default outcome tolerance for the builders.
pub const DEFAULT_OUTCOME_TOL: f64 = PROBABILITY_TOL;
