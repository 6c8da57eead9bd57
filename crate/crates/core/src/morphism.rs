//! Sub-entity witnesses, state property system morphisms and probabilistic
//! sub-entities. Witnesses are supplied by the caller and verified here.

use std::collections::BTreeMap;

use crate::closure::{eig_experiments_unchecked, eig_states_unchecked, eigen_closure_system, EigenScope};
use crate::diagnostics::Diagnostics;
use crate::entity::{Couple, Entity, ExperimentId, OutcomeId, StateId};
use crate::error::{contract, Error, Result};
use crate::probability::ProbabilisticEntity;
use crate::property::StatePropertySystem;
use crate::set::Subset;

/// Largest outcome set over which the continuity identities are checked
/// on every subset.
pub const MAX_IDENTITY_OUTCOMES: usize = 12;

/// Maps `m: Σ' → Σ`, `n: E → E'` and `l: X → X'`, stored as index vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubEntityWitness {
    pub m: Vec<StateId>,
    pub n: Vec<ExperimentId>,
    pub l: Vec<OutcomeId>,
}

fn total_map<S: AsRef<str>>(
    pairs: &[(S, S)],
    what: &str,
    dom: &[String],
    from: impl Fn(&str) -> Result<usize>,
    to: impl Fn(&str) -> Result<usize>,
) -> Result<Vec<usize>> {
    let mut map: BTreeMap<usize, usize> = BTreeMap::new();
    for (a, b) in pairs {
        let i = from(a.as_ref())?;
        let j = to(b.as_ref())?;
        if map.insert(i, j).is_some() {
            return contract(format!("{what} assigns `{}` twice", a.as_ref()));
        }
    }
    if let Some(missing) = (0..dom.len()).find(|i| !map.contains_key(i)) {
        return contract(format!("{what} is not total: no image for `{}`", dom[missing]));
    }
    Ok(map.into_values().collect())
}

impl SubEntityWitness {
    /// Checks that the maps are total and land in range.
    pub fn new(small: &Entity, big: &Entity, m: Vec<StateId>, n: Vec<ExperimentId>, l: Vec<OutcomeId>) -> Result<Self> {
        let w = SubEntityWitness { m, n, l };
        w.check_shape(small, big)?;
        Ok(w)
    }

    /// Witness from name pairs: `m` as `(big state, small state)`, `n` as
    /// `(small experiment, big experiment)`, `l` as `(small outcome, big
    /// outcome)`. Every domain element must appear exactly once.
    pub fn from_names<S: AsRef<str>>(
        small: &Entity,
        big: &Entity,
        m: &[(S, S)],
        n: &[(S, S)],
        l: &[(S, S)],
    ) -> Result<Self> {
        let m = total_map(m, "m", big.state_names(), |s| big.state_id(s).map(|i| i.0), |s| small.state_id(s).map(|i| i.0))?;
        let n = total_map(
            n,
            "n",
            small.experiment_names(),
            |s| small.experiment_id(s).map(|i| i.0),
            |s| big.experiment_id(s).map(|i| i.0),
        )?;
        let l = total_map(
            l,
            "l",
            small.outcome_names(),
            |s| small.outcome_id(s).map(|i| i.0),
            |s| big.outcome_id(s).map(|i| i.0),
        )?;
        Ok(SubEntityWitness {
            m: m.into_iter().map(StateId).collect(),
            n: n.into_iter().map(ExperimentId).collect(),
            l: l.into_iter().map(OutcomeId).collect(),
        })
    }

    /// The identity witness of an entity on itself.
    pub fn identity(entity: &Entity) -> Self {
        SubEntityWitness {
            m: entity.state_ids().collect(),
            n: entity.experiment_ids().collect(),
            l: entity.outcome_ids().collect(),
        }
    }

    fn check_shape(&self, small: &Entity, big: &Entity) -> Result<()> {
        let shapes = [
            ("m", self.m.len(), big.num_states(), self.m.iter().all(|p| p.0 < small.num_states())),
            ("n", self.n.len(), small.num_experiments(), self.n.iter().all(|e| e.0 < big.num_experiments())),
            ("l", self.l.len(), small.num_outcomes(), self.l.iter().all(|x| x.0 < big.num_outcomes())),
        ];
        for (name, len, want, in_range) in shapes {
            if len != want {
                return contract(format!("{name} is not total: {len} images for a domain of {want}"));
            }
            if !in_range {
                return contract(format!("{name} has an image outside its codomain"));
            }
        }
        Ok(())
    }

    /// `l(A)`.
    pub fn image(&self, big: &Entity, a: &Subset) -> Subset {
        Subset::from_indices(big.num_outcomes(), a.iter().map(|x| self.l[x].0))
    }

    /// `l^{-1}(A')`.
    pub fn preimage(&self, small: &Entity, a: &Subset) -> Subset {
        Subset::from_indices(small.num_outcomes(), (0..self.l.len()).filter(|&x| a.contains(self.l[x].0)))
    }
}

fn injective<T: Copy + Ord>(v: &[T]) -> Option<(usize, usize)> {
    let mut seen: BTreeMap<T, usize> = BTreeMap::new();
    for (i, &t) in v.iter().enumerate() {
        if let Some(&j) = seen.get(&t) {
            return Some((j, i));
        }
        seen.insert(t, i);
    }
    None
}

/// Verifies the sub-entity contract and, when it holds, the relation
/// transport properties that follow from it.
pub fn verify_sub_entity(small: &Entity, big: &Entity, w: &SubEntityWitness) -> Result<Diagnostics> {
    w.check_shape(small, big)?;
    let mut d = Diagnostics::new();
    for c in ["m is surjective", "n is injective", "l is injective", "l maps O(e,m(p')) onto O'(n(e),p')"] {
        d.ensure(c);
    }
    for p in small.state_ids() {
        d.record("m is surjective", w.m.contains(&p), || format!("state {} has no preimage", small.state_name(p)));
    }
    if let Some((i, j)) = injective(&w.n) {
        d.record("n is injective", false, || {
            format!("{} and {} both map to {}", small.experiment_names()[i], small.experiment_names()[j], big.experiment_name(w.n[i]))
        });
    }
    if let Some((i, j)) = injective(&w.l) {
        d.record("l is injective", false, || {
            format!("{} and {} both map to {}", small.outcome_names()[i], small.outcome_names()[j], big.outcome_name(w.l[i]))
        });
    }
    for e in small.experiment_ids() {
        for pb in big.state_ids() {
            let img = w.image(big, small.outcome_set(e, w.m[pb.0]));
            let target = big.outcome_set(w.n[e.0], pb);
            d.record("l maps O(e,m(p')) onto O'(n(e),p')", &img == target, || {
                format!(
                    "e={}, p'={}: l(O(e,m(p'))) = {} but O'(n(e),p') = {}",
                    small.experiment_name(e),
                    big.state_name(pb),
                    big.outcome_set_label(&img),
                    big.outcome_set_label(target)
                )
            });
        }
    }
    if d.passed() {
        derived_transport_checks(small, big, w, &mut d);
    }
    Ok(d)
}

fn derived_transport_checks(small: &Entity, big: &Entity, w: &SubEntityWitness, d: &mut Diagnostics) {
    for x in small.outcome_ids() {
        for y in small.outcome_ids() {
            let ok = !small.outcome_orthogonal(x, y) || big.outcome_orthogonal(w.l[x.0], w.l[y.0]);
            d.record("x ⊥ y implies l(x) ⊥ l(y)", ok, || {
                format!("{} and {}", small.outcome_name(x), small.outcome_name(y))
            });
        }
    }
    for p in big.state_ids() {
        for q in big.state_ids() {
            let ok = !big.state_implies(p, q) || small.state_implies(w.m[p.0], w.m[q.0]);
            d.record("p' < q' implies m(p') < m(q')", ok, || format!("{} and {}", big.state_name(p), big.state_name(q)));
        }
    }
    for e in small.experiment_ids() {
        for f in small.experiment_ids() {
            let ok = !small.experiment_orthogonal(e, f) || big.experiment_orthogonal(w.n[e.0], w.n[f.0]);
            d.record("e ⊥ f implies n(e) ⊥ n(f)", ok, || {
                format!("{} and {}", small.experiment_name(e), small.experiment_name(f))
            });
        }
    }
    for e in small.experiment_ids() {
        for f in small.experiment_ids() {
            for p in big.state_ids() {
                for q in big.state_ids() {
                    let a = Couple::new(e, w.m[p.0]);
                    let b = Couple::new(f, w.m[q.0]);
                    let a2 = Couple::new(w.n[e.0], p);
                    let b2 = Couple::new(w.n[f.0], q);
                    let at = || format!("({},{}) and ({},{})", small.experiment_name(e), big.state_name(p), small.experiment_name(f), big.state_name(q));
                    d.record(
                        "(e,m(p')) < (f,m(q')) iff (n(e),p') < (n(f),q')",
                        small.couple_implies(a, b) == big.couple_implies(a2, b2),
                        at,
                    );
                    d.record(
                        "(e,m(p')) ⊥ (f,m(q')) iff (n(e),p') ⊥ (n(f),q')",
                        small.couple_orthogonal(a, b) == big.couple_orthogonal(a2, b2),
                        at,
                    );
                }
            }
        }
    }
}

/// Checks that `m` and `n` are continuous for the eigen closure systems,
/// together with the preimage identities behind it.
pub fn preimage_continuity(small: &Entity, big: &Entity, w: &SubEntityWitness) -> Result<Diagnostics> {
    w.check_shape(small, big)?;
    let mut d = Diagnostics::new();
    let f_small = eigen_closure_system(small, EigenScope::StatesGlobal)?;
    let f_big = eigen_closure_system(big, EigenScope::StatesGlobal)?;
    let g_small = eigen_closure_system(small, EigenScope::ExperimentsGlobal)?;
    let g_big = eigen_closure_system(big, EigenScope::ExperimentsGlobal)?;
    let m_pre = |f: &Subset| Subset::from_indices(big.num_states(), big.state_ids().filter(|p| f.contains(w.m[p.0].0)).map(|p| p.0));
    let n_pre = |g: &Subset| {
        Subset::from_indices(small.num_experiments(), small.experiment_ids().filter(|e| g.contains(w.n[e.0].0)).map(|e| e.0))
    };
    for f in f_small.members() {
        d.record("m^-1(F) is eigen closed", f_big.contains(&m_pre(f)), || small.state_set_label(f));
    }
    for g in g_big.members() {
        d.record("n^-1(G') is eigen closed", g_small.contains(&n_pre(g)), || big.experiment_set_label(g));
    }
    d.ensure("m^-1(eig_e(A)) = eig_n(e)(l(A))");
    for e in small.experiment_ids() {
        let o = small.experiment_outcome_set(e);
        if o.len() > MAX_IDENTITY_OUTCOMES {
            d.warn(format!("O({}) too large; identity checked on its co-atoms only", small.experiment_name(e)));
        }
        for a in identity_probes(&o) {
            let lhs = m_pre(&eig_states_unchecked(small, e, &a));
            let rhs = eig_states_unchecked(big, w.n[e.0], &w.image(big, &a));
            d.record("m^-1(eig_e(A)) = eig_n(e)(l(A))", lhs == rhs, || {
                format!("e={}, A={}", small.experiment_name(e), small.outcome_set_label(&a))
            });
        }
    }
    d.ensure("n^-1(eig_p'(A')) = eig_m(p')(l^-1(A'))");
    for p in big.state_ids() {
        let o = big.state_outcome_set(p);
        if o.len() > MAX_IDENTITY_OUTCOMES {
            d.warn(format!("O'({}) too large; identity checked on its co-atoms only", big.state_name(p)));
        }
        let mp = w.m[p.0];
        let o_small = small.state_outcome_set(mp);
        for a in identity_probes(&o) {
            let lhs = n_pre(&eig_experiments_unchecked(big, p, &a));
            let rhs = eig_experiments_unchecked(small, mp, &w.preimage(small, &a).intersection(&o_small));
            d.record("n^-1(eig_p'(A')) = eig_m(p')(l^-1(A'))", lhs == rhs, || {
                format!("p'={}, A'={}", big.state_name(p), big.outcome_set_label(&a))
            });
        }
    }
    Ok(d)
}

fn identity_probes(o: &Subset) -> Vec<Subset> {
    if o.len() <= MAX_IDENTITY_OUTCOMES {
        o.subsets()
    } else {
        let mut v: Vec<Subset> = o
            .iter()
            .map(|x| {
                let mut a = o.clone();
                a.remove(x);
                a
            })
            .collect();
        v.push(o.clone());
        v.push(Subset::empty(o.universe()));
        v
    }
}

/// `m: Σ' → Σ` and `n: L → L'` between two state property systems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpsMorphism {
    pub m: Vec<usize>,
    pub n: Vec<usize>,
}

impl SpsMorphism {
    pub fn identity(sps: &StatePropertySystem) -> Self {
        SpsMorphism { m: (0..sps.states().len()).collect(), n: (0..sps.len()).collect() }
    }
}

/// Verifies `a ∈ ξ(m(p')) ⟺ n(a) ∈ ξ'(p')` and, when it holds, that `n`
/// preserves meets, top and bottom and that `m^{-1}(κ(a)) = κ'(n(a))`.
pub fn verify_sps_morphism(sps: &StatePropertySystem, big: &StatePropertySystem, mor: &SpsMorphism) -> Result<Diagnostics> {
    if mor.m.len() != big.states().len() || mor.m.iter().any(|&p| p >= sps.states().len()) {
        return contract("m must be a total map from the big system's states to the small system's states");
    }
    if mor.n.len() != sps.len() || mor.n.iter().any(|&a| a >= big.len()) {
        return contract("n must be a total map from the small lattice to the big lattice");
    }
    let mut d = Diagnostics::new();
    let pn = |s: &StatePropertySystem, a: usize| s.properties()[a].label.clone();
    d.ensure("a ∈ ξ(m(p')) iff n(a) ∈ ξ'(p')");
    for pb in 0..big.states().len() {
        for a in 0..sps.len() {
            let ok = sps.xi(mor.m[pb]).contains(a) == big.xi(pb).contains(mor.n[a]);
            d.record("a ∈ ξ(m(p')) iff n(a) ∈ ξ'(p')", ok, || format!("a={}, p'={}", pn(sps, a), big.states()[pb]));
        }
    }
    if !d.passed() {
        return Ok(d);
    }
    d.record("n(I) = I'", mor.n[sps.top()] == big.top(), || pn(big, mor.n[sps.top()]));
    d.record("n(0) = 0'", mor.n[sps.bottom()] == big.bottom(), || pn(big, mor.n[sps.bottom()]));
    for a in 0..sps.len() {
        for b in 0..sps.len() {
            let lhs = mor.n[sps.meet(&[a, b])?];
            let rhs = big.meet(&[mor.n[a], mor.n[b]])?;
            d.record("n preserves meets", lhs == rhs, || format!("{} and {}", pn(sps, a), pn(sps, b)));
        }
    }
    for a in 0..sps.len() {
        let k = sps.cartan(a)?;
        let pre = Subset::from_indices(big.states().len(), (0..big.states().len()).filter(|&p| k.contains(mor.m[p])));
        d.record("m^-1(κ(a)) = κ'(n(a))", pre == big.cartan(mor.n[a])?, || pn(sps, a));
    }
    Ok(d)
}

/// The morphism `(m, n = m^{-1})` induced by a state map that is
/// continuous for the Cartan images of both systems.
pub fn morphism_from_continuous_map(sps: &StatePropertySystem, big: &StatePropertySystem, m: Vec<usize>) -> Result<SpsMorphism> {
    let ns_big = big.states().len();
    if m.len() != ns_big || m.iter().any(|&p| p >= sps.states().len()) {
        return contract("m must be a total map from the big system's states to the small system's states");
    }
    let big_images: Vec<Subset> = (0..big.len()).map(|b| big.cartan(b)).collect::<Result<_>>()?;
    let mut n = Vec::with_capacity(sps.len());
    for a in 0..sps.len() {
        let k = sps.cartan(a)?;
        let pre = Subset::from_indices(ns_big, (0..ns_big).filter(|&p| k.contains(m[p])));
        match big_images.iter().position(|b| *b == pre) {
            Some(b) => n.push(b),
            None => {
                return contract(format!(
                    "m is not continuous: the preimage of {} is not closed",
                    sps.properties()[a].label
                ))
            }
        }
    }
    Ok(SpsMorphism { m, n })
}

/// Injective map `k` from the small entity's measures to the big one's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbabilityCorrespondence {
    pub k: Vec<usize>,
}

/// Checks `μ(e, m(p'), x) = k(μ)(n(e), p', l(x))` for every measure and
/// argument, and injectivity of `k`.
pub fn verify_probabilistic_sub_entity(
    small: &ProbabilisticEntity,
    big: &ProbabilisticEntity,
    w: &SubEntityWitness,
    k: &ProbabilityCorrespondence,
    tol: f64,
) -> Result<Diagnostics> {
    w.check_shape(&small.entity, &big.entity)?;
    if k.k.len() != small.measures.len() {
        return contract(format!("k has {} images for {} measures", k.k.len(), small.measures.len()));
    }
    if let Some(&bad) = k.k.iter().find(|&&j| j >= big.measures.len()) {
        return Err(Error::Contract(format!("k maps to measure {bad}, which does not exist")));
    }
    let (s, b) = (&small.entity, &big.entity);
    let mut d = Diagnostics::new();
    d.ensure("k is injective");
    d.ensure("measures transport along (m, n, l)");
    if let Some((i, j)) = injective(&k.k) {
        d.record("k is injective", false, || {
            format!("{} and {} both map to {}", small.measures[i].name(), small.measures[j].name(), big.measures[k.k[i]].name())
        });
    }
    for (i, mu) in small.measures.iter().enumerate() {
        let nu = &big.measures[k.k[i]];
        for e in s.experiment_ids() {
            for pb in b.state_ids() {
                for x in s.outcome_ids() {
                    let lhs = mu.get(e, w.m[pb.0], x);
                    let rhs = nu.get(w.n[e.0], pb, w.l[x.0]);
                    d.record("measures transport along (m, n, l)", (lhs - rhs).abs() <= tol, || {
                        format!(
                            "{}: e={}, p'={}, x={}: {lhs} vs {rhs}",
                            mu.name(),
                            s.experiment_name(e),
                            b.state_name(pb),
                            s.outcome_name(x)
                        )
                    });
                }
            }
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Entity {
        Entity::new(&["s"], &["e"], &[("e", "s", vec!["a"])], None).unwrap()
    }

    // two states of the big entity collapse onto s; the extra experiment h
    // separates them
    fn big() -> Entity {
        Entity::new(
            &["p", "q"],
            &["e", "h"],
            &[("e", "p", vec!["a"]), ("e", "q", vec!["a"]), ("h", "p", vec!["b"]), ("h", "q", vec!["c"])],
            None,
        )
        .unwrap()
    }

    #[test]
    fn orthogonality_is_not_preserved_by_m() {
        let (s, b) = (small(), big());
        let w = SubEntityWitness::from_names(&s, &b, &[("p", "s"), ("q", "s")], &[("e", "e")], &[("a", "a")]).unwrap();
        let d = verify_sub_entity(&s, &b, &w).unwrap();
        assert!(d.passed(), "{d}");
        let (p, q) = (b.state_id("p").unwrap(), b.state_id("q").unwrap());
        assert!(b.state_orthogonal(p, q));
        assert!(!s.state_orthogonal(w.m[p.0], w.m[q.0]));
        assert!(preimage_continuity(&s, &b, &w).unwrap().passed());
    }

    #[test]
    fn non_total_and_collapsing_maps() {
        let (s, b) = (small(), big());
        let err = SubEntityWitness::from_names(&s, &b, &[("p", "s")], &[("e", "e")], &[("a", "a")]).unwrap_err();
        assert!(matches!(err, Error::Contract(_)));
        let w = SubEntityWitness::from_names(&s, &b, &[("p", "s"), ("q", "s")], &[("e", "h")], &[("a", "b")]).unwrap();
        let d = verify_sub_entity(&s, &b, &w).unwrap();
        assert!(!d.check("l maps O(e,m(p')) onto O'(n(e),p')").unwrap().passed());
    }

    #[test]
    fn identity_morphisms_pass() {
        let b = big();
        assert!(verify_sub_entity(&b, &b, &SubEntityWitness::identity(&b)).unwrap().passed());
        let sps = crate::property::testable_sps(&b, b.experiment_id("h").unwrap()).unwrap();
        assert!(verify_sps_morphism(&sps, &sps, &SpsMorphism::identity(&sps)).unwrap().passed());
    }
}
