//! Generalized probability measures on finite entities.
//!
//! Only atomic triples `μ(e, p, x)` are stored. Event and mixture values are
//! derived by summation.

use crate::classify::is_d_classical;
use crate::diagnostics::Diagnostics;
use crate::entity::{Entity, ExperimentId, OutcomeId, StateId};
use crate::error::{contract, Error, IdKind, Result};
use crate::mixture::{mixed_orthogonal, mixed_outcome_set, Event, MixedElement, MixedExperiment, MixedRelationKind, MixedState};
use crate::set::Subset;

/// Absolute tolerance for normalization checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Largest `|O(e,p)|` for which every two-block event partition is checked.
pub const MAX_PARTITION_CELL: usize = 12;

/// Dense table of `μ(e, p, x)`, zero off-support.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityTable {
    name: String,
    dims: (usize, usize, usize),
    values: Vec<f64>,
}

impl ProbabilityTable {
    /// All-zero table shaped for `entity`.
    pub fn zeros(entity: &Entity, name: impl Into<String>) -> Self {
        let dims = (entity.num_experiments(), entity.num_states(), entity.num_outcomes());
        ProbabilityTable { name: name.into(), dims, values: vec![0.0; dims.0 * dims.1 * dims.2] }
    }

    /// Table from named `(experiment, state, outcome, value)` entries.
    pub fn from_entries<S: AsRef<str>>(entity: &Entity, name: impl Into<String>, entries: &[(S, S, S, f64)]) -> Result<Self> {
        let mut t = ProbabilityTable::zeros(entity, name);
        for (e, p, x, v) in entries {
            let e = entity.experiment_id(e.as_ref())?;
            let p = entity.state_id(p.as_ref())?;
            let x = entity.outcome_id(x.as_ref())?;
            t.set(e, p, x, *v);
        }
        Ok(t)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        self.dims
    }

    fn index(&self, e: ExperimentId, p: StateId, x: OutcomeId) -> usize {
        (e.0 * self.dims.1 + p.0) * self.dims.2 + x.0
    }

    pub fn get(&self, e: ExperimentId, p: StateId, x: OutcomeId) -> f64 {
        self.values[self.index(e, p, x)]
    }

    pub fn set(&mut self, e: ExperimentId, p: StateId, x: OutcomeId, v: f64) {
        let i = self.index(e, p, x);
        self.values[i] = v;
    }

    /// Nonzero entries in `(e, p, x)` order.
    pub fn nonzero(&self) -> impl Iterator<Item = (ExperimentId, StateId, OutcomeId, f64)> + '_ {
        let (_, ns, nx) = self.dims;
        self.values.iter().enumerate().filter(|(_, &v)| v != 0.0).map(move |(i, &v)| {
            (ExperimentId(i / (ns * nx)), StateId(i / nx % ns), OutcomeId(i % nx), v)
        })
    }

    /// Whether the table dimensions fit the entity.
    pub fn matches(&self, entity: &Entity) -> bool {
        self.dims == (entity.num_experiments(), entity.num_states(), entity.num_outcomes())
    }
}

/// `Σ_{x ∈ A ∩ O(e,p)} μ(e,p,x)`.
pub fn event_probability(entity: &Entity, table: &ProbabilityTable, e: ExperimentId, p: StateId, a: &Subset) -> f64 {
    a.intersection(entity.outcome_set(e, p)).iter().map(|x| table.get(e, p, OutcomeId(x))).sum()
}

/// Checks range, support, normalization and finite additivity.
///
/// A possible outcome with probability zero is allowed but warned about.
pub fn validate_measure(entity: &Entity, table: &ProbabilityTable, tol: f64) -> Diagnostics {
    let mut d = Diagnostics::new();
    d.record("table shape matches entity", table.matches(entity), || {
        format!("table {:?}, entity {:?}", table.dims, (entity.num_experiments(), entity.num_states(), entity.num_outcomes()))
    });
    if !table.matches(entity) {
        return d;
    }
    for c in ["values lie in [0,1]", "support within O(e,p)", "cells sum to 1", "additive over disjoint events"] {
        d.ensure(c);
    }
    for e in entity.experiment_ids() {
        for p in entity.state_ids() {
            let o = entity.outcome_set(e, p);
            let cell = || format!("({},{})", entity.experiment_name(e), entity.state_name(p));
            for x in entity.outcome_ids() {
                let v = table.get(e, p, x);
                let at = || format!("mu{} {} = {v}", cell(), entity.outcome_name(x));
                d.record("values lie in [0,1]", v.is_finite() && (-tol..=1.0 + tol).contains(&v), at);
                if !o.contains(x.0) {
                    d.record("support within O(e,p)", v.abs() <= tol, at);
                } else if v == 0.0 {
                    d.warn(format!("possible outcome {} of {} has probability zero", entity.outcome_name(x), cell()));
                }
            }
            let total = event_probability(entity, table, e, p, o);
            d.record("cells sum to 1", (total - 1.0).abs() <= tol, || format!("{} sums to {total}", cell()));
            let members = o.to_vec();
            let blocks: Vec<Subset> = if members.len() <= MAX_PARTITION_CELL {
                o.subsets()
            } else {
                members.iter().map(|&x| Subset::singleton(entity.num_outcomes(), x)).collect()
            };
            for a in blocks {
                let rest = o.difference(&a);
                let lhs = event_probability(entity, table, e, p, &a) + event_probability(entity, table, e, p, &rest);
                d.record("additive over disjoint events", (lhs - total).abs() <= tol, || {
                    format!("{} split {}", cell(), entity.outcome_set_label(&a))
                });
            }
        }
    }
    d
}

/// The deterministic measure `μ(e,p,x(e,p)) = 1` of a d-classical entity.
pub fn d_classical_measure(entity: &Entity) -> Result<ProbabilityTable> {
    if let Some(c) = is_d_classical(entity).witness() {
        return Err(Error::Precondition(format!(
            "entity is not d-classical: O{} has {} outcomes",
            entity.couple_name(*c),
            entity.couple_outcome_set(*c).len()
        )));
    }
    let mut t = ProbabilityTable::zeros(entity, "deterministic");
    for c in entity.couples() {
        t.set(c.experiment, c.state, entity.eigen_outcome(c).unwrap(), 1.0);
    }
    Ok(t)
}

/// Families for [`mixed_additivity_check`]; each must be nonempty and
/// pairwise orthogonal.
#[derive(Debug, Clone)]
pub struct AdditivityFamilies {
    pub experiments: Vec<MixedExperiment>,
    pub states: Vec<MixedState>,
    pub events: Vec<Event>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdditivityReport {
    /// `μ(∨e_i, ∨p_j, ∨x_k)`.
    pub lhs: f64,
    /// `Σ_{i,j,k} μ(e_i, p_j, x_k)`.
    pub rhs: f64,
    pub residual: f64,
    /// `|μ(∨e_i, ∨p_j, x(O(∨e_i,∨p_j))) - 1|`. Zero for singleton
    /// experiment and state families, and in general `|E|·|P| - 1` for a
    /// valid table, since mixture values are plain sums.
    pub joined_normalization_residual: f64,
    pub passed: bool,
}

/// Mixture value `Σ_{e ∈ E, p ∈ P} Σ_{x ∈ A ∩ O(e(E),p(P))} μ(e,p,x)`.
pub fn mixed_probability(entity: &Entity, table: &ProbabilityTable, e: &MixedExperiment, p: &MixedState, a: &Event) -> f64 {
    let support = mixed_outcome_set(entity, e, p).intersection(a.base());
    let mut total = 0.0;
    for ei in e.base().iter() {
        for pi in p.base().iter() {
            for x in support.iter() {
                total += table.get(ExperimentId(ei), StateId(pi), OutcomeId(x));
            }
        }
    }
    total
}

fn pairwise_orthogonal(entity: &Entity, kind: &MixedRelationKind, items: &[MixedElement], what: &str) -> Result<()> {
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            if !mixed_orthogonal(entity, kind, &items[i], &items[j])? {
                return Err(Error::Precondition(format!("{what} {i} and {j} are not orthogonal")));
            }
        }
    }
    Ok(())
}

/// Checks the triple-sum identity
/// `μ(∨e_i, ∨p_j, ∨x_k) = Σ_{i,j,k} μ(e_i, p_j, x_k)` on the given
/// orthogonal families, taking the join of mixtures to be the mixture on
/// the union of their bases.
pub fn mixed_additivity_check(
    entity: &Entity,
    table: &ProbabilityTable,
    families: &AdditivityFamilies,
    tol: f64,
) -> Result<AdditivityReport> {
    if !table.matches(entity) {
        return contract("probability table does not match the entity");
    }
    if families.experiments.is_empty() || families.states.is_empty() || families.events.is_empty() {
        return Err(Error::Precondition("every family must be nonempty".into()));
    }
    let exps: Vec<MixedElement> = families.experiments.iter().cloned().map(MixedElement::Experiment).collect();
    let states: Vec<MixedElement> = families.states.iter().cloned().map(MixedElement::State).collect();
    let events: Vec<MixedElement> = families.events.iter().cloned().map(MixedElement::Event).collect();
    pairwise_orthogonal(entity, &MixedRelationKind::Experiment, &exps, "experiments")?;
    pairwise_orthogonal(entity, &MixedRelationKind::State, &states, "states")?;
    pairwise_orthogonal(entity, &MixedRelationKind::Event, &events, "events")?;

    let join = |bases: Vec<&Subset>| {
        let mut u = bases[0].clone();
        for b in &bases[1..] {
            u.union_with(b);
        }
        u
    };
    let e_all = MixedExperiment::new(entity, join(families.experiments.iter().map(|m| m.base()).collect()))?;
    let p_all = MixedState::new(entity, join(families.states.iter().map(|m| m.base()).collect()))?;
    let a_all = Event::new(entity, join(families.events.iter().map(|m| m.base()).collect()))?;
    let lhs = mixed_probability(entity, table, &e_all, &p_all, &a_all);
    let mut rhs = 0.0;
    for e in &families.experiments {
        for p in &families.states {
            for a in &families.events {
                rhs += mixed_probability(entity, table, e, p, a);
            }
        }
    }
    let whole = Event::new(entity, mixed_outcome_set(entity, &e_all, &p_all))?;
    let joined = mixed_probability(entity, table, &e_all, &p_all, &whole);
    let residual = (lhs - rhs).abs();
    Ok(AdditivityReport {
        lhs,
        rhs,
        residual,
        joined_normalization_residual: (joined - 1.0).abs(),
        passed: residual <= tol,
    })
}

/// An entity with a nonempty list of validated measures.
#[derive(Debug, Clone)]
pub struct ProbabilisticEntity {
    pub entity: Entity,
    pub measures: Vec<ProbabilityTable>,
}

impl ProbabilisticEntity {
    pub fn new(entity: Entity, measures: Vec<ProbabilityTable>, tol: f64) -> Result<Self> {
        if measures.is_empty() {
            return contract("a probabilistic entity needs at least one measure");
        }
        for m in &measures {
            let d = validate_measure(&entity, m, tol);
            let failure = d.failed_checks().next().map(|c| {
                format!("measure `{}` fails `{}`: {}", m.name(), c.name, c.witnesses.first().cloned().unwrap_or_default())
            });
            if let Some(msg) = failure {
                return contract(msg);
            }
        }
        Ok(ProbabilisticEntity { entity, measures })
    }

    pub fn measure_id(&self, name: &str) -> Result<usize> {
        self.measures
            .iter()
            .position(|m| m.name() == name)
            .ok_or_else(|| Error::UnknownId { kind: IdKind::Measure, id: name.to_string() })
    }
}
