//! State property systems.
//!
//! A system is a set of states, a finite complete lattice of properties and
//! the map `ξ` sending each state to the properties actual in it. Systems
//! built here are identified: every property is determined by its Cartan
//! image `κ(a) = {p : a ∈ ξ(p)}`.

use crate::closure::{eig_states, ClosureSystem, SetFamily};
use crate::diagnostics::Diagnostics;
use crate::entity::{set_label, Entity, ExperimentId};
use crate::error::{contract, Error, IdKind, Result};
use crate::mixture::mixture_name;
use crate::set::Subset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Property {
    /// Canonical name: the minimal test `a(e,A)`, or the closed set for
    /// systems built from a closure system.
    pub label: String,
    /// Tests realizing the property, e.g. `a(e,{x1,x2})`.
    pub tests: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatePropertySystem {
    states: Vec<String>,
    properties: Vec<Property>,
    // above[a]: properties b with a ≺ b
    above: Vec<Subset>,
    // xi[p]: properties actual in state p
    xi: Vec<Subset>,
    top: usize,
    bottom: usize,
}

impl StatePropertySystem {
    /// Builds and validates a system from an explicit order and `ξ`.
    ///
    /// `order` lists pairs `(a, b)` with `a ≺ b`; reflexive pairs are added.
    pub fn new(
        states: Vec<String>,
        properties: Vec<Property>,
        order: &[(usize, usize)],
        xi: Vec<Subset>,
    ) -> Result<Self> {
        let n = properties.len();
        if n == 0 {
            return contract("a property lattice needs at least one element");
        }
        if xi.len() != states.len() {
            return Err(Error::Dimension { expected: states.len(), actual: xi.len() });
        }
        for x in &xi {
            if x.universe() != n {
                return Err(Error::Dimension { expected: n, actual: x.universe() });
            }
        }
        let mut above: Vec<Subset> = (0..n).map(|a| Subset::singleton(n, a)).collect();
        for &(a, b) in order {
            if a >= n || b >= n {
                return contract(format!("order pair ({a},{b}) outside the lattice"));
            }
            above[a].insert(b);
        }
        let top = (0..n).find(|&t| (0..n).all(|a| above[a].contains(t)));
        let bottom = (0..n).find(|&b| above[b].is_full());
        let (Some(top), Some(bottom)) = (top, bottom) else {
            return contract("property order has no top or no bottom");
        };
        let sps = StatePropertySystem { states, properties, above, xi, top, bottom };
        let d = sps.validate();
        if !d.passed() {
            let first = d.failed_checks().next().unwrap();
            return contract(format!(
                "not a state property system: {} ({})",
                first.name,
                first.witnesses.first().cloned().unwrap_or_default()
            ));
        }
        Ok(sps)
    }

    /// Identified system whose properties are the members of `system`,
    /// ordered by inclusion. `labels` gives each member's label and tests.
    fn from_closed_sets(states: Vec<String>, system: &ClosureSystem, labels: Vec<Property>) -> Self {
        let members: Vec<&Subset> = system.members().iter().collect();
        let n = members.len();
        let above = members
            .iter()
            .map(|a| Subset::from_indices(n, (0..n).filter(|&b| a.is_subset(members[b]))))
            .collect();
        let xi = (0..system.ground())
            .map(|p| Subset::from_indices(n, (0..n).filter(|&a| members[a].contains(p))))
            .collect();
        let top = members.iter().position(|m| m.is_full()).expect("closure systems contain the ground");
        let bottom = members.iter().position(|m| m.is_empty()).expect("closure systems contain the empty set");
        StatePropertySystem { states, properties: labels, above, xi, top, bottom }
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn properties(&self) -> &[Property] {
        &self.properties
    }

    pub fn len(&self) -> usize {
        self.properties.len()
    }

    pub fn is_empty(&self) -> bool {
        self.properties.is_empty()
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn property_id(&self, label: &str) -> Result<usize> {
        self.properties
            .iter()
            .position(|p| p.label == label || p.tests.iter().any(|t| t == label))
            .ok_or_else(|| Error::UnknownId { kind: IdKind::Property, id: label.to_string() })
    }

    /// `ξ(p)`, the property state of `p`.
    pub fn xi(&self, p: usize) -> &Subset {
        &self.xi[p]
    }

    /// `a ≺ b` in the lattice order.
    pub fn order_leq(&self, a: usize, b: usize) -> bool {
        self.above[a].contains(b)
    }

    fn check_property(&self, a: usize) -> Result<()> {
        if a < self.len() {
            Ok(())
        } else {
            contract(format!("property {a} is not in the lattice"))
        }
    }

    /// `κ(a) = {p : a ∈ ξ(p)}`.
    pub fn cartan(&self, a: usize) -> Result<Subset> {
        self.check_property(a)?;
        Ok(Subset::from_indices(self.states.len(), (0..self.states.len()).filter(|&p| self.xi[p].contains(a))))
    }

    /// `a ≺ b` evaluated as `κ(a) ⊆ κ(b)`.
    pub fn property_implies(&self, a: usize, b: usize) -> Result<bool> {
        Ok(self.cartan(a)?.is_subset(&self.cartan(b)?))
    }

    /// `p ≺ q` iff `ξ(q) ⊆ ξ(p)`.
    pub fn state_implies(&self, p: usize, q: usize) -> bool {
        self.xi[q].is_subset(&self.xi[p])
    }

    /// Greatest lower bound; the empty family has meet `I`.
    pub fn meet(&self, family: &[usize]) -> Result<usize> {
        for &a in family {
            self.check_property(a)?;
        }
        let n = self.len();
        let lower: Vec<usize> = (0..n).filter(|&l| family.iter().all(|&a| self.order_leq(l, a))).collect();
        lower
            .iter()
            .copied()
            .find(|&c| lower.iter().all(|&d| self.order_leq(d, c)))
            .ok_or_else(|| Error::Consistency("meet does not exist".into()))
    }

    /// Least upper bound; the empty family has join `0`.
    pub fn join(&self, family: &[usize]) -> Result<usize> {
        for &a in family {
            self.check_property(a)?;
        }
        let n = self.len();
        let upper: Vec<usize> = (0..n).filter(|&u| family.iter().all(|&a| self.order_leq(a, u))).collect();
        upper
            .iter()
            .copied()
            .find(|&c| upper.iter().all(|&d| self.order_leq(c, d)))
            .ok_or_else(|| Error::Consistency("join does not exist".into()))
    }

    /// Checks the lattice and `ξ` axioms by enumeration.
    pub fn validate(&self) -> Diagnostics {
        let n = self.len();
        let mut d = Diagnostics::new();
        let name = |a: usize| self.properties[a].label.clone();
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    d.record("order is antisymmetric", !(self.order_leq(a, b) && self.order_leq(b, a)), || {
                        format!("{} and {}", name(a), name(b))
                    });
                }
                for c in 0..n {
                    let ok = !(self.order_leq(a, b) && self.order_leq(b, c)) || self.order_leq(a, c);
                    d.record("order is transitive", ok, || format!("{} < {} < {}", name(a), name(b), name(c)));
                }
                d.record("pairwise meets exist", self.meet(&[a, b]).is_ok(), || format!("{} and {}", name(a), name(b)));
                d.record("pairwise joins exist", self.join(&[a, b]).is_ok(), || format!("{} and {}", name(a), name(b)));
            }
        }
        for (p, x) in self.xi.iter().enumerate() {
            let sp = &self.states[p];
            d.record("top is actual in every state", x.contains(self.top), || sp.clone());
            d.record("bottom is actual in no state", !x.contains(self.bottom), || sp.clone());
            for a in 0..n {
                for b in 0..n {
                    if let Ok(m) = self.meet(&[a, b]) {
                        let ok = (x.contains(a) && x.contains(b)) == x.contains(m);
                        d.record("meets are actual exactly when all parts are", ok, || {
                            format!("{} and {} in {sp}", name(a), name(b))
                        });
                    }
                }
            }
        }
        d.ensure("order agrees with actuality");
        for a in 0..n {
            for b in 0..n {
                let by_states = (0..self.states.len()).all(|r| !self.xi[r].contains(a) || self.xi[r].contains(b));
                d.record("order agrees with actuality", by_states == self.order_leq(a, b), || {
                    format!("{} and {}", name(a), name(b))
                });
            }
        }
        d
    }
}

/// The closure system `{κ(a)}` of a system.
pub fn sps_to_closure(sps: &StatePropertySystem) -> Result<ClosureSystem> {
    let images: Result<Vec<Subset>> = (0..sps.len()).map(|a| sps.cartan(a)).collect();
    ClosureSystem::from_family(SetFamily::new(sps.states.len(), images?)?)
}

/// The system whose properties are the closed sets, with
/// `ξ(p) = {F : p ∈ F}`.
pub fn closure_to_sps(states: &[String], system: &ClosureSystem) -> Result<StatePropertySystem> {
    if states.len() != system.ground() {
        return Err(Error::Dimension { expected: system.ground(), actual: states.len() });
    }
    let labels = system
        .members()
        .iter()
        .map(|m| {
            let label = set_label(m.iter().map(|i| states[i].clone()));
            Property { label: label.clone(), tests: vec![] }
        })
        .collect();
    Ok(StatePropertySystem::from_closed_sets(states.to_vec(), system, labels))
}

fn testable_labels(entity: &Entity, experiment: &str, system: &ClosureSystem, cells: impl Fn(usize) -> Subset) -> Vec<Property> {
    system
        .members()
        .iter()
        .map(|m| {
            let mut a = Subset::empty(entity.num_outcomes());
            for p in m.iter() {
                a.union_with(&cells(p));
            }
            let label = format!("a({experiment},{})", entity.outcome_set_label(&a));
            Property { label: label.clone(), tests: vec![label] }
        })
        .collect()
}

/// The identified system of `e`-testable properties.
///
/// Each property is labelled by its smallest test `a(e,A)`, where `A` is
/// the union of `O(e,p)` over the states of its Cartan image.
pub fn testable_sps(entity: &Entity, e: ExperimentId) -> Result<StatePropertySystem> {
    if e.0 >= entity.num_experiments() {
        return contract("experiment out of range");
    }
    let system = crate::closure::eigen_closure_system(entity, crate::closure::EigenScope::StatesFor(e))?;
    let labels = testable_labels(entity, entity.experiment_name(e), &system, |p| {
        entity.outcome_set(e, crate::StateId(p)).clone()
    });
    Ok(StatePropertySystem::from_closed_sets(entity.state_names().to_vec(), &system, labels))
}

/// Whether `O(e) ∩ O(f) = ∅` for all distinct experiments.
pub fn is_distinguishable(entity: &Entity) -> bool {
    distinguishability_witness(entity).is_none()
}

/// First pair of distinct experiments sharing an outcome.
pub fn distinguishability_witness(entity: &Entity) -> Option<(ExperimentId, ExperimentId)> {
    let totals: Vec<Subset> = entity.experiment_ids().map(|e| entity.experiment_outcome_set(e)).collect();
    for i in 0..totals.len() {
        for j in i + 1..totals.len() {
            if !totals[i].is_disjoint(&totals[j]) {
                return Some((ExperimentId(i), ExperimentId(j)));
            }
        }
    }
    None
}

/// `eig_{e(E)}(A) = {p : O(e(E),p) ⊆ A}` for the total mixed experiment.
pub fn eig_total(entity: &Entity, a: &Subset) -> Result<Subset> {
    if a.universe() != entity.num_outcomes() {
        return Err(Error::Dimension { expected: entity.num_outcomes(), actual: a.universe() });
    }
    Ok(Subset::from_indices(
        entity.num_states(),
        entity.state_ids().filter(|&p| entity.state_outcome_set(p).is_subset(a)).map(|p| p.0),
    ))
}

/// `∩_{e} eig_e(A ∩ O(e))`.
pub fn eig_total_by_parts(entity: &Entity, a: &Subset) -> Result<Subset> {
    let mut out = Subset::full(entity.num_states());
    for e in entity.experiment_ids() {
        out.intersect_with(&eig_states(entity, e, &a.intersection(&entity.experiment_outcome_set(e)))?);
    }
    Ok(out)
}

/// The testable system of the total mixed experiment `e(E)` over the base
/// states. Only defined for distinguishable entities.
pub fn global_testable_sps(entity: &Entity) -> Result<StatePropertySystem> {
    if let Some((e, f)) = distinguishability_witness(entity) {
        return Err(Error::Precondition(format!(
            "experiments {} and {} share outcomes; properties tested by different experiments \
             cannot be combined into one mixed test",
            entity.experiment_name(e),
            entity.experiment_name(f)
        )));
    }
    let ns = entity.num_states();
    let gens = entity
        .outcome_ids()
        .map(|x| Subset::from_indices(ns, entity.state_ids().filter(|&p| !entity.state_outcome_set(p).contains(x.0)).map(|p| p.0)));
    let system = ClosureSystem::generated_by(ns, gens)?;
    let name = mixture_name(entity.experiment_names(), &Subset::full(entity.num_experiments()));
    let labels = testable_labels(entity, &name, &system, |p| entity.state_outcome_set(crate::StateId(p)));
    Ok(StatePropertySystem::from_closed_sets(entity.state_names().to_vec(), &system, labels))
}
