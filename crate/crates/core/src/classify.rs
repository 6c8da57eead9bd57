//! Separation-axiom classification of entities.
//!
//! Determination and atomicity are checked directly on the outcome table
//! and then cross-checked against the T0 and T1 axioms of the matching
//! eigen closure systems. Any disagreement is a kernel bug and surfaces as
//! [`Error::Consistency`].

use crate::closure::{
    closure_from_generators, eig_central, eigen_closure_system, eigen_generators, ortho_closure_system,
    orth_complement, ClosureSystem, EigenScope, OrthoSpace, DEFAULT_MAX_GROUND,
};
use crate::entity::{Couple, Entity, ExperimentId, StateId};
use crate::error::{Error, Result};
use crate::property::distinguishability_witness;
use crate::set::Subset;

/// Result of a yes/no test, carrying a counterexample when it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    fn from_option(w: Option<W>) -> Self {
        w.map_or(Verdict::Holds, Verdict::Fails)
    }
}

/// First pair `i < j` (in index order) with `same(i, j)`.
fn first_equal_pair(n: usize, same: impl Fn(usize, usize) -> bool) -> Option<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| same(i, j))
}

/// First pair `(a, b)` with `a != b` and `below(a, b)`, scanning `b` first.
fn first_strict_pair(n: usize, below: impl Fn(usize, usize) -> bool) -> Option<(usize, usize)> {
    (0..n).flat_map(|b| (0..n).map(move |a| (a, b))).find(|&(a, b)| a != b && below(a, b))
}

/// Distinct couples never share an outcome set.
pub fn is_outcome_determined(entity: &Entity) -> Verdict<(Couple, Couple)> {
    Verdict::from_option(
        first_equal_pair(entity.num_couples(), |i, j| {
            entity.couple_outcome_set(entity.couple_at(i)) == entity.couple_outcome_set(entity.couple_at(j))
        })
        .map(|(i, j)| (entity.couple_at(i), entity.couple_at(j))),
    )
}

/// Distinct states differ on some experiment.
pub fn is_state_determined(entity: &Entity) -> Verdict<(StateId, StateId)> {
    Verdict::from_option(
        first_equal_pair(entity.num_states(), |p, q| {
            entity.experiment_ids().all(|e| entity.outcome_set(e, StateId(p)) == entity.outcome_set(e, StateId(q)))
        })
        .map(|(p, q)| (StateId(p), StateId(q))),
    )
}

/// Distinct experiments differ on some state.
pub fn is_experiment_determined(entity: &Entity) -> Verdict<(ExperimentId, ExperimentId)> {
    Verdict::from_option(
        first_equal_pair(entity.num_experiments(), |e, f| {
            entity.state_ids().all(|p| entity.outcome_set(ExperimentId(e), p) == entity.outcome_set(ExperimentId(f), p))
        })
        .map(|(e, f)| (ExperimentId(e), ExperimentId(f))),
    )
}

/// No couple implies a different couple. The witness `(a, b)` has `a < b`.
pub fn is_central_atomic(entity: &Entity) -> Verdict<(Couple, Couple)> {
    Verdict::from_option(
        first_strict_pair(entity.num_couples(), |a, b| entity.couple_implies(entity.couple_at(a), entity.couple_at(b)))
            .map(|(a, b)| (entity.couple_at(a), entity.couple_at(b))),
    )
}

pub fn is_state_atomic(entity: &Entity) -> Verdict<(StateId, StateId)> {
    Verdict::from_option(
        first_strict_pair(entity.num_states(), |p, q| entity.state_implies(StateId(p), StateId(q)))
            .map(|(p, q)| (StateId(p), StateId(q))),
    )
}

pub fn is_experiment_atomic(entity: &Entity) -> Verdict<(ExperimentId, ExperimentId)> {
    Verdict::from_option(
        first_strict_pair(entity.num_experiments(), |e, f| entity.experiment_implies(ExperimentId(e), ExperimentId(f)))
            .map(|(e, f)| (ExperimentId(e), ExperimentId(f))),
    )
}

/// Every outcome set is a singleton. The witness is the first couple with
/// more than one outcome.
pub fn is_d_classical(entity: &Entity) -> Verdict<Couple> {
    Verdict::from_option(entity.couples().find(|&c| !entity.is_eigen(c)))
}

fn t0_with(ground: usize, cl: impl Fn(&Subset) -> Subset) -> Verdict<(usize, usize)> {
    let closures: Vec<Subset> = (0..ground).map(|w| cl(&Subset::singleton(ground, w))).collect();
    Verdict::from_option(first_equal_pair(ground, |w, v| closures[w] == closures[v]))
}

fn t1_with(ground: usize, cl: impl Fn(&Subset) -> Subset) -> Verdict<(usize, Subset)> {
    Verdict::from_option((0..ground).find_map(|w| {
        let single = Subset::singleton(ground, w);
        let c = cl(&single);
        (c != single).then_some((w, c))
    }))
}

/// `cl({w}) = cl({v}) ⟹ w = v`. The witness is the first offending pair.
pub fn satisfies_t0(system: &ClosureSystem) -> Verdict<(usize, usize)> {
    t0_with(system.ground(), |k| system.closure_of(k).expect("singleton in ground"))
}

/// `cl({w}) = {w}` for every `w`. The witness is the first offending
/// element with its closure.
pub fn satisfies_t1(system: &ClosureSystem) -> Verdict<(usize, Subset)> {
    t1_with(system.ground(), |k| system.closure_of(k).expect("singleton in ground"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    pub holds: bool,
    /// Counterexample, present exactly when `holds` is false.
    pub witness: Option<String>,
}

impl Flag {
    fn from<W>(v: &Verdict<W>, show: impl Fn(&W) -> String) -> Self {
        Flag { holds: v.holds(), witness: v.witness().map(show) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub outcome_determined: Flag,
    pub state_determined: Flag,
    pub experiment_determined: Flag,
    pub central_atomic: Flag,
    pub state_atomic: Flag,
    pub experiment_atomic: Flag,
    pub d_classical: Flag,
    pub distinguishable: Flag,
    /// Cross-checks that needed a materialized closure system too large
    /// for the configured ground limit and were therefore skipped.
    pub skipped_checks: Vec<String>,
}

impl ClassificationReport {
    /// `(name, flag)` in report order.
    pub fn flags(&self) -> [(&'static str, &Flag); 8] {
        [
            ("outcome_determined", &self.outcome_determined),
            ("state_determined", &self.state_determined),
            ("experiment_determined", &self.experiment_determined),
            ("central_atomic", &self.central_atomic),
            ("state_atomic", &self.state_atomic),
            ("experiment_atomic", &self.experiment_atomic),
            ("d_classical", &self.d_classical),
            ("distinguishable", &self.distinguishable),
        ]
    }
}

fn consistency(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Consistency(what.to_string()))
    }
}

/// Classifies the entity and cross-checks the separation theorems.
pub fn classify(entity: &Entity) -> Result<ClassificationReport> {
    let od = is_outcome_determined(entity);
    let sd = is_state_determined(entity);
    let ed = is_experiment_determined(entity);
    let ca = is_central_atomic(entity);
    let sa = is_state_atomic(entity);
    let ea = is_experiment_atomic(entity);
    let dc = is_d_classical(entity);
    let dist = distinguishability_witness(entity);

    let scope_cl = |scope: EigenScope, ground: usize| {
        let mut gens = eigen_generators(entity, scope);
        gens.push(Subset::empty(ground));
        move |k: &Subset| closure_from_generators(ground, &gens, k)
    };
    let (nc, ns, ne) = (entity.num_couples(), entity.num_states(), entity.num_experiments());
    let y = scope_cl(EigenScope::Central, nc);
    let f = scope_cl(EigenScope::StatesGlobal, ns);
    let g = scope_cl(EigenScope::ExperimentsGlobal, ne);
    consistency(od.holds() == t0_with(nc, &y).holds(), "outcome determination disagrees with T0 on Y_eig")?;
    consistency(sd.holds() == t0_with(ns, &f).holds(), "state determination disagrees with T0 on F_eig")?;
    consistency(ed.holds() == t0_with(ne, &g).holds(), "experiment determination disagrees with T0 on G_eig")?;
    consistency(ca.holds() == t1_with(nc, &y).holds(), "central atomicity disagrees with T1 on Y_eig")?;
    consistency(sa.holds() == t1_with(ns, &f).holds(), "state atomicity disagrees with T1 on F_eig")?;
    consistency(ea.holds() == t1_with(ne, &g).holds(), "experiment atomicity disagrees with T1 on G_eig")?;
    consistency(!ca.holds() || od.holds(), "central atomic entity is not outcome determined")?;
    consistency(!sa.holds() || sd.holds(), "state atomic entity is not state determined")?;
    consistency(!ea.holds() || ed.holds(), "experiment atomic entity is not experiment determined")?;

    let mut skipped = Vec::new();
    if dc.holds() {
        for p in entity.state_ids() {
            for q in entity.state_ids() {
                let eqv = entity.state_implies(p, q) && entity.state_implies(q, p);
                consistency(eqv || entity.state_orthogonal(p, q), "d-classical states neither equivalent nor orthogonal")?;
            }
        }
        consistency(!od.holds() || ca.holds(), "d-classical outcome determined entity is not central atomic")?;
        consistency(!sd.holds() || sa.holds(), "d-classical state determined entity is not state atomic")?;
        consistency(!ed.holds() || ea.holds(), "d-classical experiment determined entity is not experiment atomic")?;
        if nc <= DEFAULT_MAX_GROUND {
            d_classical_closure_checks(entity)?;
        } else {
            skipped.push("d-classical eigen/ortho closure equalities".to_string());
        }
    }

    let pair = |a: &Couple, b: &Couple| (entity.couple_name(*a), entity.couple_name(*b));
    Ok(ClassificationReport {
        outcome_determined: Flag::from(&od, |(a, b)| {
            let (a, b) = pair(a, b);
            format!("O{a} = O{b}")
        }),
        state_determined: Flag::from(&sd, |(p, q)| {
            format!("O(.,{}) = O(.,{})", entity.state_name(*p), entity.state_name(*q))
        }),
        experiment_determined: Flag::from(&ed, |(e, f)| {
            format!("O({},.) = O({},.)", entity.experiment_name(*e), entity.experiment_name(*f))
        }),
        central_atomic: Flag::from(&ca, |(a, b)| {
            let (a, b) = pair(a, b);
            format!("{a} < {b}")
        }),
        state_atomic: Flag::from(&sa, |(p, q)| format!("{} < {}", entity.state_name(*p), entity.state_name(*q))),
        experiment_atomic: Flag::from(&ea, |(e, f)| {
            format!("{} < {}", entity.experiment_name(*e), entity.experiment_name(*f))
        }),
        d_classical: Flag::from(&dc, |c| {
            format!("O{} = {}", entity.couple_name(*c), entity.outcome_set_label(entity.couple_outcome_set(*c)))
        }),
        distinguishable: Flag {
            holds: dist.is_none(),
            witness: dist.map(|(e, f)| {
                let shared = entity.experiment_outcome_set(e).intersection(&entity.experiment_outcome_set(f));
                format!(
                    "O({}) and O({}) share {}",
                    entity.experiment_name(e),
                    entity.experiment_name(f),
                    entity.outcome_set_label(&shared)
                )
            }),
        },
        skipped_checks: skipped,
    })
}

fn d_classical_closure_checks(entity: &Entity) -> Result<()> {
    let central = OrthoSpace::central(entity);
    if entity.num_outcomes() <= 16 {
        for m in 0u64..1 << entity.num_outcomes() {
            let a = Subset::from_mask(entity.num_outcomes(), m);
            let eig_a = eig_central(entity, &a)?;
            let eig_ac = eig_central(entity, &a.complement())?;
            consistency(eig_ac == eig_a.complement(), "d-classical eig(A^C) differs from eig(A)^C")?;
            consistency(eig_ac == orth_complement(&central, &eig_a), "d-classical eig(A^C) differs from eig(A)^⊥")?;
        }
    }
    let y_eig = eigen_closure_system(entity, EigenScope::Central)?;
    consistency(y_eig == ortho_closure_system(&central)?, "d-classical Y_eig differs from Y_orth")?;
    for e in entity.experiment_ids() {
        let eig = eigen_closure_system(entity, EigenScope::StatesFor(e))?;
        let orth = ortho_closure_system(&OrthoSpace::states_for(entity, e))?;
        consistency(eig == orth, "d-classical F_eig(e) differs from F_orth(e)")?;
    }
    for p in entity.state_ids() {
        let eig = eigen_closure_system(entity, EigenScope::ExperimentsFor(p))?;
        let orth = ortho_closure_system(&OrthoSpace::experiments_for(entity, p))?;
        consistency(eig == orth, "d-classical G_eig(p) differs from G_orth(p)")?;
    }
    Ok(())
}
