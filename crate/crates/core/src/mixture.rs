//! Mixed states, mixed experiments and events.
//!
//! A mixture is indexed by a nonempty subset of base states (or
//! experiments, or outcomes). Its outcome sets are unions of base outcome
//! sets, and every relation is evaluated on those unions.

use crate::entity::{Couple, Entity};
use crate::error::{contract, Error, Result};
use crate::set::Subset;

/// Default limit on `2^|Σ| · 2^|E|` for [`full_mixed_entity`].
pub const DEFAULT_MIXTURE_BUDGET: u128 = 1 << 16;

/// Largest base set whose nonempty subsets [`is_supremum`] enumerates.
pub const MAX_SUPREMUM_GROUND: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MixedState {
    base: Subset,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MixedExperiment {
    base: Subset,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Event {
    base: Subset,
}

macro_rules! mixture_ctor {
    ($ty:ident, $count:ident, $subset:ident, $what:literal) => {
        impl $ty {
            pub fn new(entity: &Entity, base: Subset) -> Result<Self> {
                if base.universe() != entity.$count() {
                    return Err(Error::Dimension { expected: entity.$count(), actual: base.universe() });
                }
                if base.is_empty() {
                    return contract(concat!("a ", $what, " needs a nonempty base set"));
                }
                Ok($ty { base })
            }

            pub fn from_names<S: AsRef<str>>(entity: &Entity, names: &[S]) -> Result<Self> {
                $ty::new(entity, entity.$subset(names)?)
            }

            pub fn base(&self) -> &Subset {
                &self.base
            }
        }
    };
}

mixture_ctor!(MixedState, num_states, state_subset, "mixed state");
mixture_ctor!(MixedExperiment, num_experiments, experiment_subset, "mixed experiment");
mixture_ctor!(Event, num_outcomes, outcome_subset, "event");

impl MixedState {
    pub fn single(entity: &Entity, p: crate::StateId) -> Self {
        MixedState { base: Subset::singleton(entity.num_states(), p.0) }
    }
}

impl MixedExperiment {
    pub fn single(entity: &Entity, e: crate::ExperimentId) -> Self {
        MixedExperiment { base: Subset::singleton(entity.num_experiments(), e.0) }
    }
}

impl Event {
    pub fn single(entity: &Entity, x: crate::OutcomeId) -> Self {
        Event { base: Subset::singleton(entity.num_outcomes(), x.0) }
    }
}

/// `O(e(E), p(P))`: the union of `O(e, p)` over the two bases.
pub fn mixed_outcome_set(entity: &Entity, e: &MixedExperiment, p: &MixedState) -> Subset {
    union_over(entity, &e.base, &p.base)
}

fn union_over(entity: &Entity, exps: &Subset, states: &Subset) -> Subset {
    let mut out = Subset::empty(entity.num_outcomes());
    for e in exps.iter() {
        for p in states.iter() {
            out.union_with(entity.outcome_set(crate::ExperimentId(e), crate::StateId(p)));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MixedRelationKind {
    State,
    StateFor(MixedExperiment),
    Experiment,
    ExperimentFor(MixedState),
    Central,
    Event,
    EventFor(MixedExperiment, MixedState),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MixedElement {
    State(MixedState),
    Experiment(MixedExperiment),
    Couple(MixedExperiment, MixedState),
    Event(Event),
}

fn singletons(n: usize) -> impl Iterator<Item = Subset> {
    (0..n).map(move |i| Subset::singleton(n, i))
}

/// `a < b` for mixtures.
///
/// Quantifying over mixed experiments or states gives the same answer as
/// quantifying over base ones, because mixed outcome sets are unions.
pub fn mixed_implies(entity: &Entity, kind: &MixedRelationKind, a: &MixedElement, b: &MixedElement) -> Result<bool> {
    use MixedElement as M;
    use MixedRelationKind as K;
    Ok(match (kind, a, b) {
        (K::State, M::State(p), M::State(q)) => singletons(entity.num_experiments())
            .all(|e| union_over(entity, &e, &p.base).is_subset(&union_over(entity, &e, &q.base))),
        (K::StateFor(e), M::State(p), M::State(q)) => {
            union_over(entity, &e.base, &p.base).is_subset(&union_over(entity, &e.base, &q.base))
        }
        (K::Experiment, M::Experiment(e), M::Experiment(f)) => singletons(entity.num_states())
            .all(|p| union_over(entity, &e.base, &p).is_subset(&union_over(entity, &f.base, &p))),
        (K::ExperimentFor(p), M::Experiment(e), M::Experiment(f)) => {
            union_over(entity, &e.base, &p.base).is_subset(&union_over(entity, &f.base, &p.base))
        }
        (K::Central, M::Couple(e, p), M::Couple(f, q)) => {
            mixed_outcome_set(entity, e, p).is_subset(&mixed_outcome_set(entity, f, q))
        }
        (K::Event, M::Event(x), M::Event(y)) => x.base.is_subset(&y.base),
        (K::EventFor(..), M::Event(x), M::Event(y)) => x.base.is_subset(&y.base),
        _ => return contract(format!("elements do not match mixed relation kind {kind:?}")),
    })
}

/// `a ⊥ b` for mixtures.
///
/// Two events are orthogonal for a couple when both lie inside its
/// outcome set and are disjoint; globally, when some base couple does this.
pub fn mixed_orthogonal(
    entity: &Entity,
    kind: &MixedRelationKind,
    a: &MixedElement,
    b: &MixedElement,
) -> Result<bool> {
    use MixedElement as M;
    use MixedRelationKind as K;
    let events_for = |o: &Subset, x: &Event, y: &Event| {
        x.base.is_subset(o) && y.base.is_subset(o) && x.base.is_disjoint(&y.base)
    };
    Ok(match (kind, a, b) {
        (K::State, M::State(p), M::State(q)) => singletons(entity.num_experiments())
            .any(|e| union_over(entity, &e, &p.base).is_disjoint(&union_over(entity, &e, &q.base))),
        (K::StateFor(e), M::State(p), M::State(q)) => {
            union_over(entity, &e.base, &p.base).is_disjoint(&union_over(entity, &e.base, &q.base))
        }
        (K::Experiment, M::Experiment(e), M::Experiment(f)) => singletons(entity.num_states())
            .any(|p| union_over(entity, &e.base, &p).is_disjoint(&union_over(entity, &f.base, &p))),
        (K::ExperimentFor(p), M::Experiment(e), M::Experiment(f)) => {
            union_over(entity, &e.base, &p.base).is_disjoint(&union_over(entity, &f.base, &p.base))
        }
        (K::Central, M::Couple(e, p), M::Couple(f, q)) => {
            mixed_outcome_set(entity, e, p).is_disjoint(&mixed_outcome_set(entity, f, q))
        }
        (K::Event, M::Event(x), M::Event(y)) => {
            entity.couples().any(|c: Couple| events_for(entity.couple_outcome_set(c), x, y))
        }
        (K::EventFor(e, p), M::Event(x), M::Event(y)) => events_for(&mixed_outcome_set(entity, e, p), x, y),
        _ => return contract(format!("elements do not match mixed relation kind {kind:?}")),
    })
}

/// Checks whether `candidate` is a supremum of `family`: for every mixture
/// `b` of the same kind, `a_j < b` for all `j` exactly when
/// `candidate < b`.
///
/// Mixed states and experiments use the global pre-order; events use
/// inclusion. Suprema need not be unique, so this only verifies.
pub fn is_supremum(entity: &Entity, candidate: &MixedElement, family: &[MixedElement]) -> Result<bool> {
    if family.is_empty() {
        return contract("supremum of an empty family");
    }
    let (kind, ground) = match candidate {
        MixedElement::State(_) => (MixedRelationKind::State, entity.num_states()),
        MixedElement::Experiment(_) => (MixedRelationKind::Experiment, entity.num_experiments()),
        MixedElement::Event(_) => (MixedRelationKind::Event, entity.num_outcomes()),
        MixedElement::Couple(..) => return contract("suprema are defined for mixed states, experiments and events"),
    };
    if ground > MAX_SUPREMUM_GROUND {
        return Err(Error::Capacity {
            what: "supremum check".into(),
            needed: 1u128 << ground,
            limit: 1u128 << MAX_SUPREMUM_GROUND,
        });
    }
    let wrap = |base: Subset| match candidate {
        MixedElement::State(_) => MixedElement::State(MixedState { base }),
        MixedElement::Experiment(_) => MixedElement::Experiment(MixedExperiment { base }),
        _ => MixedElement::Event(Event { base }),
    };
    for mask in 1u64..1 << ground {
        let b = wrap(Subset::from_mask(ground, mask));
        let mut all_below = true;
        for a in family {
            if !mixed_implies(entity, &kind, a, &b)? {
                all_below = false;
                break;
            }
        }
        if all_below != mixed_implies(entity, &kind, candidate, &b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Name of the mixture over a base subset: member names joined by `+`.
pub fn mixture_name(names: &[String], base: &Subset) -> String {
    base.iter().map(|i| names[i].as_str()).collect::<Vec<_>>().join("+")
}

/// The full mixed entity under the default budget.
pub fn full_mixed_entity(entity: &Entity) -> Result<Entity> {
    full_mixed_entity_with_budget(entity, DEFAULT_MIXTURE_BUDGET)
}

/// The entity whose states and experiments are all mixtures over nonempty
/// subsets, with outcome sets given by [`mixed_outcome_set`].
///
/// Mixture names join member names with `+`; singleton mixtures keep the
/// base name.
pub fn full_mixed_entity_with_budget(entity: &Entity, budget: u128) -> Result<Entity> {
    let (ns, ne) = (entity.num_states(), entity.num_experiments());
    let needed = if ns + ne >= 127 { u128::MAX } else { 1u128 << (ns + ne) };
    if needed > budget {
        return Err(Error::Capacity { what: "full mixed entity".into(), needed, limit: budget });
    }
    let state_bases: Vec<Subset> = (1u64..1 << ns).map(|m| Subset::from_mask(ns, m)).collect();
    let exp_bases: Vec<Subset> = (1u64..1 << ne).map(|m| Subset::from_mask(ne, m)).collect();
    let state_names: Vec<String> = state_bases.iter().map(|b| mixture_name(entity.state_names(), b)).collect();
    let exp_names: Vec<String> = exp_bases.iter().map(|b| mixture_name(entity.experiment_names(), b)).collect();
    let mut cells = Vec::with_capacity(state_bases.len() * exp_bases.len());
    for eb in &exp_bases {
        for pb in &state_bases {
            cells.push(union_over(entity, eb, pb));
        }
    }
    Entity::from_cells(&state_names, &exp_names, entity.outcome_names(), cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entity() -> Entity {
        Entity::new(
            &["p", "q"],
            &["e", "f"],
            &[
                ("e", "p", vec!["a"]),
                ("e", "q", vec!["b"]),
                ("f", "p", vec!["a", "c"]),
                ("f", "q", vec!["c"]),
            ],
            None,
        )
        .unwrap()
    }

    #[test]
    fn empty_base_is_rejected() {
        let s = entity();
        assert!(MixedState::new(&s, Subset::empty(2)).is_err());
        assert!(MixedState::new(&s, Subset::full(3)).is_err());
    }

    #[test]
    fn outcome_set_is_the_union() {
        let s = entity();
        let e = MixedExperiment::from_names(&s, &["e", "f"]).unwrap();
        let p = MixedState::from_names(&s, &["q"]).unwrap();
        assert_eq!(s.outcome_set_label(&mixed_outcome_set(&s, &e, &p)), "{b,c}");
    }

    #[test]
    fn event_orthogonality() {
        let s = entity();
        let a = MixedElement::Event(Event::from_names(&s, &["a"]).unwrap());
        let c = MixedElement::Event(Event::from_names(&s, &["c"]).unwrap());
        let b = MixedElement::Event(Event::from_names(&s, &["b"]).unwrap());
        assert!(mixed_orthogonal(&s, &MixedRelationKind::Event, &a, &c).unwrap());
        assert!(!mixed_orthogonal(&s, &MixedRelationKind::Event, &a, &b).unwrap());
        assert!(!mixed_orthogonal(&s, &MixedRelationKind::Event, &a, &a).unwrap());
    }

    #[test]
    fn union_is_a_supremum_of_events() {
        let s = entity();
        let ab = Event::from_names(&s, &["a", "b"]).unwrap();
        let fam = [
            MixedElement::Event(Event::from_names(&s, &["a"]).unwrap()),
            MixedElement::Event(Event::from_names(&s, &["b"]).unwrap()),
        ];
        assert!(is_supremum(&s, &MixedElement::Event(ab), &fam).unwrap());
        let abc = Event::from_names(&s, &["a", "b", "c"]).unwrap();
        assert!(!is_supremum(&s, &MixedElement::Event(abc), &fam).unwrap());
        assert!(is_supremum(&s, &MixedElement::Event(Event::from_names(&s, &["a"]).unwrap()), &[]).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let s = entity();
        assert!(matches!(full_mixed_entity_with_budget(&s, 8), Err(Error::Capacity { .. })));
        let full = full_mixed_entity(&s).unwrap();
        assert_eq!(full.num_states(), 3);
        assert_eq!(full.state_names(), ["p", "p+q", "q"]);
    }
}
