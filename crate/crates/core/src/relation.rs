//! Implication and orthogonality relations of an entity.
//!
//! Implication is outcome-set inclusion and orthogonality is the existence
//! of disjoint outcome sets, at the level of states, experiments, couples
//! and outcomes, either globally or scoped to a fixed experiment, state or
//! couple.

use std::fmt;

use crate::entity::{Couple, Entity, ExperimentId, OutcomeId, StateId};
use crate::error::{contract, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationKind {
    /// Over states, quantified over all experiments.
    State,
    /// Over states, for one experiment.
    StateFor(ExperimentId),
    /// Over experiments, quantified over all states.
    Experiment,
    /// Over experiments, for one state.
    ExperimentFor(StateId),
    /// Over couples.
    Central,
    /// Over outcomes, quantified over all couples.
    Outcome,
    /// Over outcomes, for one couple.
    OutcomeFor(Couple),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Element {
    State(StateId),
    Experiment(ExperimentId),
    Couple(Couple),
    Outcome(OutcomeId),
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationKind::State => write!(f, "state"),
            RelationKind::StateFor(e) => write!(f, "state_for({})", e.0),
            RelationKind::Experiment => write!(f, "experiment"),
            RelationKind::ExperimentFor(p) => write!(f, "experiment_for({})", p.0),
            RelationKind::Central => write!(f, "central"),
            RelationKind::Outcome => write!(f, "outcome"),
            RelationKind::OutcomeFor(c) => write!(f, "outcome_for({},{})", c.experiment.0, c.state.0),
        }
    }
}

impl Entity {
    pub fn state_implies_for(&self, e: ExperimentId, p: StateId, q: StateId) -> bool {
        self.outcome_set(e, p).is_subset(self.outcome_set(e, q))
    }

    pub fn state_implies(&self, p: StateId, q: StateId) -> bool {
        self.experiment_ids().all(|e| self.state_implies_for(e, p, q))
    }

    pub fn state_orthogonal_for(&self, e: ExperimentId, p: StateId, q: StateId) -> bool {
        self.outcome_set(e, p).is_disjoint(self.outcome_set(e, q))
    }

    pub fn state_orthogonal(&self, p: StateId, q: StateId) -> bool {
        self.experiment_ids().any(|e| self.state_orthogonal_for(e, p, q))
    }

    pub fn experiment_implies_for(&self, p: StateId, e: ExperimentId, f: ExperimentId) -> bool {
        self.outcome_set(e, p).is_subset(self.outcome_set(f, p))
    }

    pub fn experiment_implies(&self, e: ExperimentId, f: ExperimentId) -> bool {
        self.state_ids().all(|p| self.experiment_implies_for(p, e, f))
    }

    pub fn experiment_orthogonal_for(&self, p: StateId, e: ExperimentId, f: ExperimentId) -> bool {
        self.outcome_set(e, p).is_disjoint(self.outcome_set(f, p))
    }

    pub fn experiment_orthogonal(&self, e: ExperimentId, f: ExperimentId) -> bool {
        self.state_ids().any(|p| self.experiment_orthogonal_for(p, e, f))
    }

    pub fn couple_implies(&self, a: Couple, b: Couple) -> bool {
        self.couple_outcome_set(a).is_subset(self.couple_outcome_set(b))
    }

    pub fn couple_orthogonal(&self, a: Couple, b: Couple) -> bool {
        self.couple_outcome_set(a).is_disjoint(self.couple_outcome_set(b))
    }

    /// Distinct outcomes that are both possible for the couple.
    pub fn outcome_orthogonal_for(&self, c: Couple, x: OutcomeId, y: OutcomeId) -> bool {
        let o = self.couple_outcome_set(c);
        x != y && o.contains(x.0) && o.contains(y.0)
    }

    pub fn outcome_orthogonal(&self, x: OutcomeId, y: OutcomeId) -> bool {
        self.couples().any(|c| self.outcome_orthogonal_for(c, x, y))
    }

    fn check_element(&self, el: Element) -> Result<()> {
        let ok = match el {
            Element::State(p) => p.0 < self.num_states(),
            Element::Experiment(e) => e.0 < self.num_experiments(),
            Element::Couple(c) => c.state.0 < self.num_states() && c.experiment.0 < self.num_experiments(),
            Element::Outcome(x) => x.0 < self.num_outcomes(),
        };
        if ok {
            Ok(())
        } else {
            contract(format!("{el:?} is out of range for this entity"))
        }
    }

    fn check_kind(&self, kind: RelationKind) -> Result<()> {
        match kind {
            RelationKind::StateFor(e) => self.check_element(Element::Experiment(e)),
            RelationKind::ExperimentFor(p) => self.check_element(Element::State(p)),
            RelationKind::OutcomeFor(c) => self.check_element(Element::Couple(c)),
            _ => Ok(()),
        }
    }

    /// `a < b` under the given relation kind.
    pub fn implies(&self, kind: RelationKind, a: Element, b: Element) -> Result<bool> {
        self.relate(kind, a, b, true)
    }

    /// `a ⊥ b` under the given relation kind.
    pub fn orthogonal(&self, kind: RelationKind, a: Element, b: Element) -> Result<bool> {
        self.relate(kind, a, b, false)
    }

    /// Implication in both directions.
    pub fn equivalent(&self, kind: RelationKind, a: Element, b: Element) -> Result<bool> {
        Ok(self.implies(kind, a, b)? && self.implies(kind, b, a)?)
    }

    fn relate(&self, kind: RelationKind, a: Element, b: Element, implication: bool) -> Result<bool> {
        self.check_kind(kind)?;
        self.check_element(a)?;
        self.check_element(b)?;
        use Element as El;
        use RelationKind as K;
        Ok(match (kind, a, b) {
            (K::State, El::State(p), El::State(q)) => {
                if implication {
                    self.state_implies(p, q)
                } else {
                    self.state_orthogonal(p, q)
                }
            }
            (K::StateFor(e), El::State(p), El::State(q)) => {
                if implication {
                    self.state_implies_for(e, p, q)
                } else {
                    self.state_orthogonal_for(e, p, q)
                }
            }
            (K::Experiment, El::Experiment(e), El::Experiment(f)) => {
                if implication {
                    self.experiment_implies(e, f)
                } else {
                    self.experiment_orthogonal(e, f)
                }
            }
            (K::ExperimentFor(p), El::Experiment(e), El::Experiment(f)) => {
                if implication {
                    self.experiment_implies_for(p, e, f)
                } else {
                    self.experiment_orthogonal_for(p, e, f)
                }
            }
            (K::Central, El::Couple(c), El::Couple(d)) => {
                if implication {
                    self.couple_implies(c, d)
                } else {
                    self.couple_orthogonal(c, d)
                }
            }
            (K::Outcome, El::Outcome(x), El::Outcome(y)) => {
                if implication {
                    x == y
                } else {
                    self.outcome_orthogonal(x, y)
                }
            }
            (K::OutcomeFor(c), El::Outcome(x), El::Outcome(y)) => {
                if implication {
                    x == y
                } else {
                    self.outcome_orthogonal_for(c, x, y)
                }
            }
            _ => return contract(format!("elements {a:?} and {b:?} do not match relation kind {kind}")),
        })
    }
}

/// One block of a relation report: a relation kind with its nontrivial
/// implications and its orthogonal pairs, all by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSection {
    pub title: String,
    /// Ordered pairs `a < b` with `a != b`.
    pub implications: Vec<(String, String)>,
    /// Unordered pairs `a ⊥ b`, listed once with `a < b` by name.
    pub orthogonalities: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationReport {
    pub eigen_couples: Vec<(String, String)>,
    pub sections: Vec<RelationSection>,
}

fn section<T: Copy>(
    title: String,
    items: &[T],
    name: impl Fn(T) -> String,
    implies: impl Fn(T, T) -> bool,
    orth: impl Fn(T, T) -> bool,
) -> RelationSection {
    let named: Vec<(String, T)> = items.iter().map(|&t| (name(t), t)).collect();
    let mut implications = Vec::new();
    let mut orthogonalities = Vec::new();
    for (i, (na, a)) in named.iter().enumerate() {
        for (j, (nb, b)) in named.iter().enumerate() {
            if i != j && implies(*a, *b) {
                implications.push((na.clone(), nb.clone()));
            }
            if na < nb && orth(*a, *b) {
                orthogonalities.push((na.clone(), nb.clone()));
            }
        }
    }
    implications.sort();
    orthogonalities.sort();
    RelationSection { title, implications, orthogonalities }
}

/// All relations of the entity, named and sorted.
pub fn relation_report(s: &Entity) -> RelationReport {
    let states: Vec<StateId> = s.state_ids().collect();
    let exps: Vec<ExperimentId> = s.experiment_ids().collect();
    let couples: Vec<Couple> = s.couples().collect();
    let outcomes: Vec<OutcomeId> = s.outcome_ids().collect();
    let sn = |p: StateId| s.state_name(p).to_string();
    let en = |e: ExperimentId| s.experiment_name(e).to_string();
    let on = |x: OutcomeId| s.outcome_name(x).to_string();

    let mut sections = vec![section("state".into(), &states, sn, |p, q| s.state_implies(p, q), |p, q| {
        s.state_orthogonal(p, q)
    })];
    for &e in &exps {
        sections.push(section(
            format!("state for {}", s.experiment_name(e)),
            &states,
            sn,
            |p, q| s.state_implies_for(e, p, q),
            |p, q| s.state_orthogonal_for(e, p, q),
        ));
    }
    sections.push(section("experiment".into(), &exps, en, |e, f| s.experiment_implies(e, f), |e, f| {
        s.experiment_orthogonal(e, f)
    }));
    for &p in &states {
        sections.push(section(
            format!("experiment for {}", s.state_name(p)),
            &exps,
            en,
            |e, f| s.experiment_implies_for(p, e, f),
            |e, f| s.experiment_orthogonal_for(p, e, f),
        ));
    }
    sections.push(section(
        "central".into(),
        &couples,
        |c| s.couple_name(c),
        |a, b| s.couple_implies(a, b),
        |a, b| s.couple_orthogonal(a, b),
    ));
    sections.push(section("outcome".into(), &outcomes, on, |x, y| x == y, |x, y| s.outcome_orthogonal(x, y)));
    for &c in &couples {
        sections.push(section(
            format!("outcome for {}", s.couple_name(c)),
            &outcomes,
            on,
            |x, y| x == y,
            |x, y| s.outcome_orthogonal_for(c, x, y),
        ));
    }
    let mut eigen_couples: Vec<(String, String)> = couples
        .iter()
        .filter_map(|&c| s.eigen_outcome(c).map(|x| (s.couple_name(c), s.outcome_name(x).to_string())))
        .collect();
    eigen_couples.sort();
    RelationReport { eigen_couples, sections }
}
