//! Closure systems, eigen maps and orthogonality closures.

use std::collections::BTreeSet;

use crate::entity::{Couple, Entity, ExperimentId, StateId};
use crate::error::{contract, Error, Result};
use crate::set::Subset;

/// Largest ground set for which a full member family is materialized.
pub const DEFAULT_MAX_GROUND: usize = 24;

/// Largest number of members an intersection closure may reach.
pub const DEFAULT_MAX_MEMBERS: usize = 1 << 20;

/// A family of subsets of `0..ground`, not yet known to be a closure system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    ground: usize,
    members: BTreeSet<Subset>,
}

impl SetFamily {
    pub fn new<I: IntoIterator<Item = Subset>>(ground: usize, members: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for m in members {
            if m.universe() != ground {
                return Err(Error::Dimension { expected: ground, actual: m.universe() });
            }
            set.insert(m);
        }
        Ok(SetFamily { ground, members: set })
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn members(&self) -> &BTreeSet<Subset> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Intersection of all members containing `k`, or the ground set if
    /// there are none.
    pub fn induced_closure(&self, k: &Subset) -> Subset {
        let mut out = Subset::full(self.ground);
        for m in &self.members {
            if k.is_subset(m) {
                out.intersect_with(m);
            }
        }
        out
    }
}

/// A family containing `∅` and the ground set that is closed under
/// intersection, together with a generating set.
#[derive(Debug, Clone)]
pub struct ClosureSystem {
    ground: usize,
    generators: Vec<Subset>,
    members: BTreeSet<Subset>,
}

impl PartialEq for ClosureSystem {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.members == other.members
    }
}

impl Eq for ClosureSystem {}

impl ClosureSystem {
    /// Validates a family against the three closure-system axioms.
    pub fn from_family(family: SetFamily) -> Result<Self> {
        let d = validate_closure_axioms(&family);
        if !d.is_closure_system() {
            return contract(format!("family is not a closure system: {}", d.summary()));
        }
        Ok(ClosureSystem {
            ground: family.ground,
            generators: family.members.iter().cloned().collect(),
            members: family.members,
        })
    }

    /// Intersection closure of `generators` together with the ground set.
    /// The empty set is added if the generators do not already meet in it.
    pub fn generated_by<I: IntoIterator<Item = Subset>>(ground: usize, generators: I) -> Result<Self> {
        Self::generated_by_with_limits(ground, generators, DEFAULT_MAX_GROUND, DEFAULT_MAX_MEMBERS)
    }

    pub fn generated_by_with_limits<I: IntoIterator<Item = Subset>>(
        ground: usize,
        generators: I,
        max_ground: usize,
        max_members: usize,
    ) -> Result<Self> {
        if ground > max_ground {
            return Err(Error::Capacity {
                what: "closure system ground set".into(),
                needed: ground as u128,
                limit: max_ground as u128,
            });
        }
        let mut gens: Vec<Subset> = Vec::new();
        for g in generators {
            if g.universe() != ground {
                return Err(Error::Dimension { expected: ground, actual: g.universe() });
            }
            gens.push(g);
        }
        gens.sort();
        gens.dedup();
        let members = intersection_closure(ground, &gens, max_members)?;
        if !members.contains(&Subset::empty(ground)) {
            // ∅ is a member only when the generators intersect to it
            let mut members = members;
            members.insert(Subset::empty(ground));
            gens.push(Subset::empty(ground));
            return Ok(ClosureSystem { ground, generators: gens, members });
        }
        Ok(ClosureSystem { ground, generators: gens, members })
    }

    /// The power set of the ground.
    pub fn discrete(ground: usize) -> Result<Self> {
        Self::generated_by(ground, (0..ground).map(|i| Subset::singleton(ground, i).complement()))
    }

    /// `{∅, ground}`.
    pub fn indiscrete(ground: usize) -> Self {
        let members: BTreeSet<Subset> = [Subset::empty(ground), Subset::full(ground)].into_iter().collect();
        ClosureSystem { ground, generators: members.iter().cloned().collect(), members }
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn members(&self) -> &BTreeSet<Subset> {
        &self.members
    }

    pub fn generators(&self) -> &[Subset] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &Subset) -> bool {
        self.members.contains(s)
    }

    pub fn family(&self) -> SetFamily {
        SetFamily { ground: self.ground, members: self.members.clone() }
    }

    /// Smallest member containing `k`.
    pub fn closure_of(&self, k: &Subset) -> Result<Subset> {
        if k.universe() != self.ground {
            return Err(Error::Dimension { expected: self.ground, actual: k.universe() });
        }
        Ok(closure_from_generators(self.ground, &self.generators, k))
    }

    /// `true` when every member of `self` is a member of `other`.
    pub fn is_subfamily_of(&self, other: &ClosureSystem) -> bool {
        self.ground == other.ground && self.members.is_subset(&other.members)
    }
}

/// Closure of `k` in the system generated by `generators`, without
/// materializing the system.
pub fn closure_from_generators(ground: usize, generators: &[Subset], k: &Subset) -> Subset {
    let mut out = Subset::full(ground);
    for g in generators {
        if k.is_subset(g) {
            out.intersect_with(g);
        }
    }
    out
}

/// All intersections of subfamilies of `generators`, including the ground
/// set as the empty intersection.
pub fn intersection_closure(ground: usize, generators: &[Subset], max_members: usize) -> Result<BTreeSet<Subset>> {
    let full = Subset::full(ground);
    let mut members = BTreeSet::new();
    members.insert(full.clone());
    let mut work = vec![full];
    while let Some(m) = work.pop() {
        for g in generators {
            let i = m.intersection(g);
            if !members.contains(&i) {
                if members.len() >= max_members {
                    return Err(Error::Capacity {
                        what: "closure system members".into(),
                        needed: members.len() as u128 + 1,
                        limit: max_members as u128,
                    });
                }
                members.insert(i.clone());
                work.push(i);
            }
        }
    }
    Ok(members)
}

fn eig_within<'a>(n: usize, a: &Subset, cell: impl Fn(usize) -> &'a Subset) -> Subset {
    Subset::from_indices(n, (0..n).filter(|&i| cell(i).is_subset(a)))
}

/// `eig_e(A) = {p : O(e,p) ⊆ A}` for `A ⊆ O(e)`.
pub fn eig_states(entity: &Entity, e: ExperimentId, a: &Subset) -> Result<Subset> {
    check_outcome_subset(entity, a)?;
    if !a.is_subset(&entity.experiment_outcome_set(e)) {
        return contract(format!(
            "outcome set {} is not contained in O({})",
            entity.outcome_set_label(a),
            entity.experiment_name(e)
        ));
    }
    Ok(eig_states_unchecked(entity, e, a))
}

pub(crate) fn eig_states_unchecked(entity: &Entity, e: ExperimentId, a: &Subset) -> Subset {
    eig_within(entity.num_states(), a, |p| entity.outcome_set(e, StateId(p)))
}

/// `eig_p(A) = {e : O(e,p) ⊆ A}` for `A ⊆ O(p)`.
pub fn eig_experiments(entity: &Entity, p: StateId, a: &Subset) -> Result<Subset> {
    check_outcome_subset(entity, a)?;
    if !a.is_subset(&entity.state_outcome_set(p)) {
        return contract(format!(
            "outcome set {} is not contained in O({})",
            entity.outcome_set_label(a),
            entity.state_name(p)
        ));
    }
    Ok(eig_experiments_unchecked(entity, p, a))
}

pub(crate) fn eig_experiments_unchecked(entity: &Entity, p: StateId, a: &Subset) -> Subset {
    eig_within(entity.num_experiments(), a, |e| entity.outcome_set(ExperimentId(e), p))
}

/// `eig(A) = {(e,p) : O(e,p) ⊆ A}` as a set of couple indices.
pub fn eig_central(entity: &Entity, a: &Subset) -> Result<Subset> {
    check_outcome_subset(entity, a)?;
    Ok(eig_within(entity.num_couples(), a, |k| entity.couple_outcome_set(entity.couple_at(k))))
}

fn check_outcome_subset(entity: &Entity, a: &Subset) -> Result<()> {
    if a.universe() != entity.num_outcomes() {
        return Err(Error::Dimension { expected: entity.num_outcomes(), actual: a.universe() });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EigenScope {
    /// `F(e)`: images of `eig_e`.
    StatesFor(ExperimentId),
    /// `F`: generated by all `F(e)`.
    StatesGlobal,
    /// `G(p)`: images of `eig_p`.
    ExperimentsFor(StateId),
    /// `G`: generated by all `G(p)`.
    ExperimentsGlobal,
    /// `Y`: images of the central eigen map.
    Central,
}

/// Co-atom generators `eig(O \ {x})` for `x ∈ O`, where `O` is the outcome
/// set the map is defined on. Every image `eig(A)` is the intersection of
/// the generators for `x ∈ O \ A`.
pub fn eigen_generators(entity: &Entity, scope: EigenScope) -> Vec<Subset> {
    match scope {
        EigenScope::StatesFor(e) => {
            let o = entity.experiment_outcome_set(e);
            o.iter()
                .map(|x| {
                    let mut a = o.clone();
                    a.remove(x);
                    eig_states_unchecked(entity, e, &a)
                })
                .collect()
        }
        EigenScope::ExperimentsFor(p) => {
            let o = entity.state_outcome_set(p);
            o.iter()
                .map(|x| {
                    let mut a = o.clone();
                    a.remove(x);
                    eig_experiments_unchecked(entity, p, &a)
                })
                .collect()
        }
        EigenScope::StatesGlobal => {
            entity.experiment_ids().flat_map(|e| eigen_generators(entity, EigenScope::StatesFor(e))).collect()
        }
        EigenScope::ExperimentsGlobal => {
            entity.state_ids().flat_map(|p| eigen_generators(entity, EigenScope::ExperimentsFor(p))).collect()
        }
        EigenScope::Central => {
            let nc = entity.num_couples();
            entity
                .outcome_ids()
                .map(|x| {
                    Subset::from_indices(
                        nc,
                        (0..nc).filter(|&k| !entity.couple_outcome_set(entity.couple_at(k)).contains(x.0)),
                    )
                })
                .collect()
        }
    }
}

/// The eigen closure system of the given scope.
pub fn eigen_closure_system(entity: &Entity, scope: EigenScope) -> Result<ClosureSystem> {
    let ground = match scope {
        EigenScope::StatesFor(_) | EigenScope::StatesGlobal => entity.num_states(),
        EigenScope::ExperimentsFor(_) | EigenScope::ExperimentsGlobal => entity.num_experiments(),
        EigenScope::Central => entity.num_couples(),
    };
    match scope {
        EigenScope::StatesFor(e) if e.0 >= entity.num_experiments() => return contract("experiment out of range"),
        EigenScope::ExperimentsFor(p) if p.0 >= entity.num_states() => return contract("state out of range"),
        _ => {}
    }
    ClosureSystem::generated_by(ground, eigen_generators(entity, scope))
}

/// A symmetric, anti-reflexive relation on `0..ground`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoSpace {
    // row a: elements orthogonal to a
    rows: Vec<Subset>,
}

impl OrthoSpace {
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(ground: usize, pairs: I) -> Result<Self> {
        let mut rows = vec![Subset::empty(ground); ground];
        for (a, b) in pairs {
            if a >= ground || b >= ground {
                return contract(format!("pair ({a},{b}) outside ground of size {ground}"));
            }
            rows[a].insert(b);
        }
        let space = OrthoSpace { rows };
        space.check()?;
        Ok(space)
    }

    pub fn from_predicate(ground: usize, orth: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let rows = (0..ground)
            .map(|a| Subset::from_indices(ground, (0..ground).filter(|&b| orth(a, b))))
            .collect();
        let space = OrthoSpace { rows };
        space.check()?;
        Ok(space)
    }

    fn check(&self) -> Result<()> {
        for (a, row) in self.rows.iter().enumerate() {
            if row.contains(a) {
                return contract(format!("orthogonality is not anti-reflexive at {a}"));
            }
            for b in row.iter() {
                if !self.rows[b].contains(a) {
                    return contract(format!("orthogonality is not symmetric at ({a},{b})"));
                }
            }
        }
        Ok(())
    }

    pub fn ground(&self) -> usize {
        self.rows.len()
    }

    pub fn orthogonal(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    /// Elements orthogonal to `a`.
    pub fn row(&self, a: usize) -> &Subset {
        &self.rows[a]
    }

    pub fn central(entity: &Entity) -> Self {
        Self::from_predicate(entity.num_couples(), |a, b| {
            entity.couple_orthogonal(entity.couple_at(a), entity.couple_at(b))
        })
        .expect("central orthogonality is symmetric and anti-reflexive")
    }

    pub fn states(entity: &Entity) -> Self {
        Self::from_predicate(entity.num_states(), |p, q| entity.state_orthogonal(StateId(p), StateId(q)))
            .expect("state orthogonality is symmetric and anti-reflexive")
    }

    pub fn states_for(entity: &Entity, e: ExperimentId) -> Self {
        Self::from_predicate(entity.num_states(), |p, q| entity.state_orthogonal_for(e, StateId(p), StateId(q)))
            .expect("state orthogonality is symmetric and anti-reflexive")
    }

    pub fn experiments(entity: &Entity) -> Self {
        Self::from_predicate(entity.num_experiments(), |e, f| {
            entity.experiment_orthogonal(ExperimentId(e), ExperimentId(f))
        })
        .expect("experiment orthogonality is symmetric and anti-reflexive")
    }

    pub fn experiments_for(entity: &Entity, p: StateId) -> Self {
        Self::from_predicate(entity.num_experiments(), |e, f| {
            entity.experiment_orthogonal_for(p, ExperimentId(e), ExperimentId(f))
        })
        .expect("experiment orthogonality is symmetric and anti-reflexive")
    }

    pub fn outcomes(entity: &Entity) -> Self {
        Self::from_predicate(entity.num_outcomes(), |x, y| {
            entity.outcome_orthogonal(crate::OutcomeId(x), crate::OutcomeId(y))
        })
        .expect("outcome orthogonality is symmetric and anti-reflexive")
    }

    pub fn outcomes_for(entity: &Entity, c: Couple) -> Self {
        Self::from_predicate(entity.num_outcomes(), |x, y| {
            entity.outcome_orthogonal_for(c, crate::OutcomeId(x), crate::OutcomeId(y))
        })
        .expect("outcome orthogonality is symmetric and anti-reflexive")
    }
}

/// `K^⊥`: elements orthogonal to every element of `K`.
pub fn orth_complement(space: &OrthoSpace, k: &Subset) -> Subset {
    let mut out = Subset::full(space.ground());
    for b in k.iter() {
        out.intersect_with(space.row(b));
    }
    out
}

/// The system of ortho-closed sets, generated by the `{x}^⊥`.
pub fn ortho_closure_system(space: &OrthoSpace) -> Result<ClosureSystem> {
    ClosureSystem::generated_by(space.ground(), space.rows.iter().cloned())
}

/// `{Y_state : Y ∈ system}` where `Y_state = {p : (e,p) ∈ Y for all e}`.
pub fn state_trace(entity: &Entity, system: &ClosureSystem) -> Result<ClosureSystem> {
    if system.ground() != entity.num_couples() {
        return Err(Error::Dimension { expected: entity.num_couples(), actual: system.ground() });
    }
    let traces = system.members().iter().map(|y| state_trace_of(entity, y));
    let family = SetFamily::new(entity.num_states(), traces)?;
    ClosureSystem::from_family(family)
        .map_err(|e| Error::Consistency(format!("state trace is not a closure system: {e}")))
}

/// `Y_state` of one couple set.
pub fn state_trace_of(entity: &Entity, y: &Subset) -> Subset {
    Subset::from_indices(
        entity.num_states(),
        entity
            .state_ids()
            .filter(|&p| entity.experiment_ids().all(|e| y.contains(entity.couple_index(Couple::new(e, p)))))
            .map(|p| p.0),
    )
}

/// `cl(A) = ∩ {O(e,p)^C : O(e,p) ⊆ A^C}` on outcomes.
pub fn outcome_closure(entity: &Entity, a: &Subset) -> Result<Subset> {
    check_outcome_subset(entity, a)?;
    let mut out = entity.all_outcomes();
    for c in entity.couples() {
        let o = entity.couple_outcome_set(c);
        if o.is_disjoint(a) {
            out = out.difference(o);
        }
    }
    Ok(out)
}

/// `int(A) = cl(A^C)^C`.
pub fn outcome_interior(entity: &Entity, a: &Subset) -> Result<Subset> {
    Ok(outcome_closure(entity, &a.complement())?.complement())
}

/// `B` is open when its complement is closed.
pub fn is_open(entity: &Entity, b: &Subset) -> Result<bool> {
    let c = b.complement();
    Ok(outcome_closure(entity, &c)? == c)
}

/// The closed sets of the outcome closure, generated by the `O(e,p)^C`.
pub fn outcome_closure_system(entity: &Entity) -> Result<ClosureSystem> {
    ClosureSystem::generated_by(
        entity.num_outcomes(),
        entity.couples().map(|c| entity.couple_outcome_set(c).complement()),
    )
}

/// Largest ground on which the operator axioms are checked on every subset.
pub const EXHAUSTIVE_AXIOM_GROUND: usize = 14;

/// Outcome of [`validate_closure_axioms`]. Each `*_witness` field is a
/// counterexample, `None` when the axiom holds.
///
/// The operator axioms concern the induced operator `cl(K)`, the
/// intersection of the members containing `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureDiagnostics {
    /// System axiom: `∅` is a member. Witness is `∅` itself.
    pub missing_empty: Option<Subset>,
    /// System axiom: the ground is a member.
    pub missing_ground: Option<Subset>,
    /// System axiom: closed under intersection. Witness pair whose
    /// intersection is not a member.
    pub intersection_witness: Option<(Subset, Subset)>,
    /// `K ⊆ cl(K)`.
    pub extensive_witness: Option<Subset>,
    /// `K ⊆ L ⟹ cl(K) ⊆ cl(L)`.
    pub monotone_witness: Option<(Subset, Subset)>,
    /// `cl(cl(K)) = cl(K)`.
    pub idempotent_witness: Option<Subset>,
    /// `cl(∅) = ∅`. Witness is `cl(∅)`.
    pub empty_closure_witness: Option<Subset>,
    /// Whether the operator axioms were checked on all subsets of the
    /// ground or only on members, singletons and their pairwise unions.
    pub exhaustive: bool,
}

impl ClosureDiagnostics {
    pub fn is_closure_system(&self) -> bool {
        self.missing_empty.is_none() && self.missing_ground.is_none() && self.intersection_witness.is_none()
    }

    pub fn operator_axioms_hold(&self) -> bool {
        self.extensive_witness.is_none()
            && self.monotone_witness.is_none()
            && self.idempotent_witness.is_none()
            && self.empty_closure_witness.is_none()
    }

    pub fn all_pass(&self) -> bool {
        self.is_closure_system() && self.operator_axioms_hold()
    }

    /// One line per failed axiom; empty when all pass.
    pub fn failures(&self) -> Vec<String> {
        let mut v = Vec::new();
        if let Some(w) = &self.missing_empty {
            v.push(format!("missing empty set {w}"));
        }
        if let Some(w) = &self.missing_ground {
            v.push(format!("missing ground set {w}"));
        }
        if let Some((a, b)) = &self.intersection_witness {
            v.push(format!("intersection of {a} and {b} is not a member"));
        }
        if let Some(k) = &self.extensive_witness {
            v.push(format!("{k} is not contained in its closure"));
        }
        if let Some((k, l)) = &self.monotone_witness {
            v.push(format!("{k} within {l} but closures are not nested"));
        }
        if let Some(k) = &self.idempotent_witness {
            v.push(format!("closure of {k} is not idempotent"));
        }
        if let Some(w) = &self.empty_closure_witness {
            v.push(format!("closure of the empty set is {w}"));
        }
        v
    }

    pub fn summary(&self) -> String {
        let f = self.failures();
        if f.is_empty() {
            "all axioms hold".into()
        } else {
            f.join("; ")
        }
    }
}

/// Checks the three system axioms and the four operator axioms.
pub fn validate_closure_axioms(family: &SetFamily) -> ClosureDiagnostics {
    let n = family.ground();
    let empty = Subset::empty(n);
    let full = Subset::full(n);
    let members: Vec<&Subset> = family.members().iter().collect();

    let mut intersection_witness = None;
    'outer: for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            if !family.members().contains(&a.intersection(b)) {
                intersection_witness = Some(((*a).clone(), (*b).clone()));
                break 'outer;
            }
        }
    }

    let exhaustive = n <= EXHAUSTIVE_AXIOM_GROUND;
    let (extensive_witness, idempotent_witness, monotone_witness) =
        if exhaustive { exhaustive_operator_axioms(family) } else { sampled_operator_axioms(family) };
    let cl_empty = family.induced_closure(&empty);

    ClosureDiagnostics {
        missing_empty: (!family.members().contains(&empty)).then(|| empty.clone()),
        missing_ground: (!family.members().contains(&full)).then_some(full),
        intersection_witness,
        extensive_witness,
        monotone_witness,
        idempotent_witness,
        empty_closure_witness: (!cl_empty.is_empty()).then_some(cl_empty),
        exhaustive,
    }
}

type OperatorWitnesses = (Option<Subset>, Option<Subset>, Option<(Subset, Subset)>);

// Every subset as a mask. Monotonicity only needs the covering pairs
// K ⊆ K ∪ {x}, since inclusion is their transitive closure.
fn exhaustive_operator_axioms(family: &SetFamily) -> OperatorWitnesses {
    let n = family.ground();
    let members: Vec<u64> = family.members().iter().map(Subset::mask).collect();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let cl = |k: u64| members.iter().filter(|&&m| k & !m == 0).fold(full, |acc, &m| acc & m);
    let closures: Vec<u64> = (0..1u64 << n).map(cl).collect();
    let set = |m: u64| Subset::from_mask(n, m);
    let extensive = (0..1u64 << n).find(|&k| k & !closures[k as usize] != 0).map(set);
    let idempotent = (0..1u64 << n).find(|&k| {
        let c = closures[k as usize];
        closures[c as usize] != c
    });
    let mut monotone = None;
    'mono: for k in 0..1u64 << n {
        for x in 0..n {
            let l = k | 1 << x;
            if l != k && closures[k as usize] & !closures[l as usize] != 0 {
                monotone = Some((set(k), set(l)));
                break 'mono;
            }
        }
    }
    (extensive, idempotent.map(set), monotone)
}

// Members, the empty set, singletons and member-singleton unions, each
// with its one-element extensions for monotonicity.
fn sampled_operator_axioms(family: &SetFamily) -> OperatorWitnesses {
    let n = family.ground();
    let mut probes: BTreeSet<Subset> = family.members().clone();
    probes.insert(Subset::empty(n));
    for i in 0..n {
        probes.insert(Subset::singleton(n, i));
        for m in family.members() {
            let mut u = m.clone();
            u.insert(i);
            probes.insert(u);
        }
    }
    let mut extensive = None;
    let mut idempotent = None;
    let mut monotone = None;
    for k in &probes {
        let c = family.induced_closure(k);
        if extensive.is_none() && !k.is_subset(&c) {
            extensive = Some(k.clone());
        }
        if idempotent.is_none() && family.induced_closure(&c) != c {
            idempotent = Some(k.clone());
        }
        if monotone.is_none() {
            for x in (0..n).filter(|&x| !k.contains(x)) {
                let mut l = k.clone();
                l.insert(x);
                if !c.is_subset(&family.induced_closure(&l)) {
                    monotone = Some((k.clone(), l));
                    break;
                }
            }
        }
    }
    (extensive, idempotent, monotone)
}
