//! The full invariant suite for one entity, as run by `soe verify`.
//!
//! Every structural law the kernel relies on is re-checked on the given
//! entity, mostly by comparing two independent computations. Exhaustive
//! enumeration is used up to the limits below and sampled beyond them.

use std::collections::BTreeSet;

use crate::classify::{
    is_central_atomic, is_d_classical, is_experiment_atomic, is_experiment_determined, is_outcome_determined,
    is_state_atomic, is_state_determined, satisfies_t0, satisfies_t1,
};
use crate::closure::{
    eig_central, eig_experiments, eig_states, eigen_closure_system, orth_complement, ortho_closure_system,
    outcome_closure_system, outcome_interior, state_trace, validate_closure_axioms, ClosureSystem, EigenScope,
    OrthoSpace,
};
use crate::diagnostics::Diagnostics;
use crate::entity::{Entity, ExperimentId, OutcomeId, StateId};
use crate::error::Result;
use crate::mixture::{mixed_implies, mixed_orthogonal, MixedElement, MixedExperiment, MixedRelationKind, MixedState};
use crate::probability::{event_probability, validate_measure, ProbabilityTable};
use crate::property::{is_distinguishable, testable_sps};
use crate::set::Subset;

/// Outcome sets up to this size are enumerated subset by subset.
pub const SUBSET_LIMIT: usize = 12;
/// Outcome sets up to this size are enumerated pair by pair.
pub const PAIR_LIMIT: usize = 6;
/// Ground sets up to this size get the brute-force closure comparison.
pub const BRUTE_FORCE_LIMIT: usize = 10;

struct Relation {
    title: String,
    names: Vec<String>,
    imp: Vec<Vec<bool>>,
    orth: Vec<Vec<bool>>,
}

impl Relation {
    fn new(title: impl Into<String>, names: Vec<String>, imp: impl Fn(usize, usize) -> bool, orth: impl Fn(usize, usize) -> bool) -> Self {
        let n = names.len();
        Relation {
            title: title.into(),
            names,
            imp: (0..n).map(|a| (0..n).map(|b| imp(a, b)).collect()).collect(),
            orth: (0..n).map(|a| (0..n).map(|b| orth(a, b)).collect()).collect(),
        }
    }

    fn check(&self, d: &mut Diagnostics) {
        let n = self.names.len();
        let nm = |i: usize| &self.names[i];
        for a in 0..n {
            d.record("implication is a pre-order", self.imp[a][a], || format!("{}: {} ≮ {}", self.title, nm(a), nm(a)));
            d.record("orthogonality is symmetric and irreflexive", !self.orth[a][a], || format!("{}: {} ⊥ {}", self.title, nm(a), nm(a)));
            for b in 0..n {
                d.record("orthogonality is symmetric and irreflexive", self.orth[a][b] == self.orth[b][a], || {
                    format!("{}: {} and {}", self.title, nm(a), nm(b))
                });
                d.record("implication excludes orthogonality", !(self.imp[a][b] && self.orth[a][b]), || {
                    format!("{}: {} < {} and {} ⊥ {}", self.title, nm(a), nm(b), nm(a), nm(b))
                });
                if !self.imp[a][b] {
                    continue;
                }
                for c in 0..n {
                    if self.imp[b][c] {
                        d.record("implication is a pre-order", self.imp[a][c], || {
                            format!("{}: {} < {} < {} but {} ≮ {}", self.title, nm(a), nm(b), nm(c), nm(a), nm(c))
                        });
                    }
                }
            }
        }
        // a ⊥ b, c < a, d < b  ⟹  c ⊥ d
        for a in 0..n {
            for b in 0..n {
                if !self.orth[a][b] {
                    continue;
                }
                for c in (0..n).filter(|&c| self.imp[c][a]) {
                    for dd in (0..n).filter(|&x| self.imp[x][b]) {
                        d.record("orthogonality descends along implication", self.orth[c][dd], || {
                            format!("{}: {} ⊥ {}, {} < {}, {} < {}", self.title, nm(a), nm(b), nm(c), nm(a), nm(dd), nm(b))
                        });
                    }
                }
            }
        }
    }
}

fn relations(s: &Entity) -> Vec<Relation> {
    let states: Vec<String> = s.state_names().to_vec();
    let exps: Vec<String> = s.experiment_names().to_vec();
    let outs: Vec<String> = s.outcome_names().to_vec();
    let couples: Vec<String> = s.couples().map(|c| s.couple_name(c)).collect();
    let (st, ex, ou) = (StateId, ExperimentId, OutcomeId);
    let mut v = vec![Relation::new("state", states.clone(), |a, b| s.state_implies(st(a), st(b)), |a, b| s.state_orthogonal(st(a), st(b)))];
    for e in s.experiment_ids() {
        v.push(Relation::new(
            format!("state for {}", s.experiment_name(e)),
            states.clone(),
            |a, b| s.state_implies_for(e, st(a), st(b)),
            |a, b| s.state_orthogonal_for(e, st(a), st(b)),
        ));
    }
    v.push(Relation::new("experiment", exps.clone(), |a, b| s.experiment_implies(ex(a), ex(b)), |a, b| {
        s.experiment_orthogonal(ex(a), ex(b))
    }));
    for p in s.state_ids() {
        v.push(Relation::new(
            format!("experiment for {}", s.state_name(p)),
            exps.clone(),
            |a, b| s.experiment_implies_for(p, ex(a), ex(b)),
            |a, b| s.experiment_orthogonal_for(p, ex(a), ex(b)),
        ));
    }
    v.push(Relation::new("central", couples, |a, b| s.couple_implies(s.couple_at(a), s.couple_at(b)), |a, b| {
        s.couple_orthogonal(s.couple_at(a), s.couple_at(b))
    }));
    v.push(Relation::new("outcome", outs.clone(), |a, b| a == b, |a, b| s.outcome_orthogonal(ou(a), ou(b))));
    for c in s.couples() {
        v.push(Relation::new(
            format!("outcome for {}", s.couple_name(c)),
            outs.clone(),
            |a, b| a == b,
            |a, b| s.outcome_orthogonal_for(c, ou(a), ou(b)),
        ));
    }
    v
}

/// Subsets of `o` to probe: all of them up to [`SUBSET_LIMIT`] members,
/// otherwise the members, co-atoms, empty set and `o` itself.
fn probes(o: &Subset) -> Vec<Subset> {
    if o.len() <= SUBSET_LIMIT {
        return o.subsets();
    }
    let mut v = vec![Subset::empty(o.universe()), o.clone()];
    for x in o.iter() {
        v.push(Subset::singleton(o.universe(), x));
        let mut c = o.clone();
        c.remove(x);
        v.push(c);
    }
    v
}

/// Probes against co-atoms, for outcome sets too large for all pairs.
fn pair_probes(o: &Subset) -> Vec<(Subset, Subset)> {
    let coatoms: Vec<Subset> = o
        .iter()
        .map(|x| {
            let mut c = o.clone();
            c.remove(x);
            c
        })
        .collect();
    probes(o).into_iter().flat_map(|a| coatoms.iter().map(move |b| (a.clone(), b.clone()))).collect()
}

fn check_eig_map(
    d: &mut Diagnostics,
    label: &str,
    o: &Subset,
    full: &Subset,
    eig: impl Fn(&Subset) -> Result<Subset>,
) -> Result<()> {
    if o.len() <= PAIR_LIMIT {
        // `o.subsets()` is in local mask order, so probe `i & j` is the
        // intersection of probes `i` and `j`.
        let all = o.subsets();
        let images: Vec<Subset> = all.iter().map(&eig).collect::<Result<_>>()?;
        for i in 0..all.len() {
            for j in 0..all.len() {
                let ok = images[i & j] == images[i].intersection(&images[j]);
                d.record("eig preserves intersections", ok, || format!("{label}: {} and {}", all[i], all[j]));
            }
        }
    } else {
        for (a, b) in pair_probes(o) {
            let lhs = eig(&a.intersection(&b))?;
            let rhs = eig(&a)?.intersection(&eig(&b)?);
            d.record("eig preserves intersections", lhs == rhs, || format!("{label}: {a} and {b}"));
        }
    }
    let coatoms: Vec<(usize, Subset)> = o
        .iter()
        .map(|x| {
            let mut c = o.clone();
            c.remove(x);
            eig(&c).map(|img| (x, img))
        })
        .collect::<Result<_>>()?;
    for a in probes(o) {
        let mut via = full.clone();
        for (x, img) in &coatoms {
            if !a.contains(*x) {
                via.intersect_with(img);
            }
        }
        d.record("eig equals the meet of its co-atom images", eig(&a)? == via, || format!("{label}: {a}"));
    }
    Ok(())
}

fn naive_intersection_closure(ground: usize, seeds: impl IntoIterator<Item = Subset>) -> BTreeSet<Subset> {
    let mut fam: BTreeSet<Subset> = seeds.into_iter().collect();
    fam.insert(Subset::full(ground));
    loop {
        let v: Vec<Subset> = fam.iter().cloned().collect();
        let before = fam.len();
        for a in &v {
            for b in &v {
                fam.insert(a.intersection(b));
            }
        }
        if fam.len() == before {
            return fam;
        }
    }
}

fn check_system(d: &mut Diagnostics, label: &str, sys: &ClosureSystem) -> Result<()> {
    let family = sys.family();
    let diag = validate_closure_axioms(&family);
    d.record("closure system and operator axioms", diag.all_pass(), || format!("{label}: {}", diag.summary()));
    let n = sys.ground();
    let ks: Vec<Subset> = if n <= BRUTE_FORCE_LIMIT {
        Subset::full(n).subsets()
    } else {
        (0..n).map(|i| Subset::singleton(n, i)).chain(sys.members().iter().cloned()).collect()
    };
    for k in ks {
        let c = sys.closure_of(&k)?;
        let ok = c == family.induced_closure(&k) && sys.closure_of(&c)? == c;
        d.record("generated closure is idempotent and matches the members", ok, || format!("{label}: {k}"));
    }
    Ok(())
}

fn check_ortho(d: &mut Diagnostics, label: &str, space: &OrthoSpace, sys: &ClosureSystem) {
    let perp = |k: &Subset| orth_complement(space, k);
    let members: Vec<&Subset> = sys.members().iter().collect();
    let perps: Vec<Subset> = members.iter().map(|k| perp(k)).collect();
    for (i, k) in members.iter().enumerate() {
        let kp = &perps[i];
        d.record("ortho-closed sets satisfy K⊥⊥ = K and K ∩ K⊥ = ∅", perp(kp) == **k && k.is_disjoint(kp), || {
            format!("{label}: {k}")
        });
        for (j, l) in members.iter().enumerate() {
            if k.is_subset(l) {
                d.record("orthocomplement reverses inclusion", perps[j].is_subset(kp), || format!("{label}: {k} ⊆ {l}"));
            }
            d.record("(K ∪ L)⊥ = K⊥ ∩ L⊥", perp(&k.union(l)) == kp.intersection(&perps[j]), || format!("{label}: {k}, {l}"));
        }
    }
    if space.ground() <= BRUTE_FORCE_LIMIT {
        let brute: BTreeSet<Subset> = Subset::full(space.ground()).subsets().iter().map(perp).collect();
        d.record("ortho closure system equals the set of complements", &brute == sys.members(), || label.to_string());
    }
}

fn eig_images(o: &Subset, eig: impl Fn(&Subset) -> Result<Subset>) -> Result<BTreeSet<Subset>> {
    o.subsets().iter().map(eig).collect()
}

/// Runs every structural invariant on `entity`.
pub fn invariant_suite(entity: &Entity) -> Result<Diagnostics> {
    let s = entity;
    let mut d = Diagnostics::new();
    let (ns, ne, nc) = (s.num_states(), s.num_experiments(), s.num_couples());
    let x_all = s.all_outcomes();

    for r in relations(s) {
        r.check(&mut d);
    }
    for c in s.couples() {
        let single = s.couple_outcome_set(c).len() == 1;
        d.record("eigen outcome iff singleton outcome set", s.eigen_outcome(c).is_some() == single, || {
            s.couple_name(c)
        });
    }

    for e in s.experiment_ids() {
        check_eig_map(&mut d, &format!("eig_{}", s.experiment_name(e)), &s.experiment_outcome_set(e), &Subset::full(ns), |a| {
            eig_states(s, e, a)
        })?;
    }
    for p in s.state_ids() {
        check_eig_map(&mut d, &format!("eig_{}", s.state_name(p)), &s.state_outcome_set(p), &Subset::full(ne), |a| {
            eig_experiments(s, p, a)
        })?;
    }
    check_eig_map(&mut d, "eig", &x_all, &Subset::full(nc), |a| eig_central(s, a))?;

    // closure systems
    let f_e: Vec<ClosureSystem> = s.experiment_ids().map(|e| eigen_closure_system(s, EigenScope::StatesFor(e))).collect::<Result<_>>()?;
    let g_p: Vec<ClosureSystem> = s.state_ids().map(|p| eigen_closure_system(s, EigenScope::ExperimentsFor(p))).collect::<Result<_>>()?;
    let f = eigen_closure_system(s, EigenScope::StatesGlobal)?;
    let g = eigen_closure_system(s, EigenScope::ExperimentsGlobal)?;
    let y = eigen_closure_system(s, EigenScope::Central)?;
    let spaces_e: Vec<OrthoSpace> = s.experiment_ids().map(|e| OrthoSpace::states_for(s, e)).collect();
    let spaces_p: Vec<OrthoSpace> = s.state_ids().map(|p| OrthoSpace::experiments_for(s, p)).collect();
    let (sp_f, sp_g, sp_y, sp_x) = (OrthoSpace::states(s), OrthoSpace::experiments(s), OrthoSpace::central(s), OrthoSpace::outcomes(s));
    let fo_e: Vec<ClosureSystem> = spaces_e.iter().map(ortho_closure_system).collect::<Result<_>>()?;
    let go_p: Vec<ClosureSystem> = spaces_p.iter().map(ortho_closure_system).collect::<Result<_>>()?;
    let (fo, go, yo, xo) = (
        ortho_closure_system(&sp_f)?,
        ortho_closure_system(&sp_g)?,
        ortho_closure_system(&sp_y)?,
        ortho_closure_system(&sp_x)?,
    );
    let outcome_sys = outcome_closure_system(s)?;

    for (e, sys) in s.experiment_ids().zip(&f_e) {
        check_system(&mut d, &format!("F({})", s.experiment_name(e)), sys)?;
    }
    for (p, sys) in s.state_ids().zip(&g_p) {
        check_system(&mut d, &format!("G({})", s.state_name(p)), sys)?;
    }
    for (label, sys) in [("F", &f), ("G", &g), ("Y", &y), ("F_orth", &fo), ("G_orth", &go), ("Y_orth", &yo), ("X_orth", &xo), ("outcome closure", &outcome_sys)] {
        check_system(&mut d, label, sys)?;
    }
    for (i, e) in s.experiment_ids().enumerate() {
        check_ortho(&mut d, &format!("F_orth({})", s.experiment_name(e)), &spaces_e[i], &fo_e[i]);
    }
    for (i, p) in s.state_ids().enumerate() {
        check_ortho(&mut d, &format!("G_orth({})", s.state_name(p)), &spaces_p[i], &go_p[i]);
    }
    for (label, sp, sys) in [("F_orth", &sp_f, &fo), ("G_orth", &sp_g, &go), ("Y_orth", &sp_y, &yo), ("X_orth", &sp_x, &xo)] {
        check_ortho(&mut d, label, sp, sys);
    }

    d.record("ortho-closed sets are eigen-closed", yo.is_subfamily_of(&y), || "Y_orth ⊄ Y_eig".into());
    for (i, e) in s.experiment_ids().enumerate() {
        d.record("ortho-closed sets are eigen-closed", fo_e[i].is_subfamily_of(&f_e[i]), || {
            format!("F_orth({0}) ⊄ F_eig({0})", s.experiment_name(e))
        });
    }
    for (i, p) in s.state_ids().enumerate() {
        d.record("ortho-closed sets are eigen-closed", go_p[i].is_subfamily_of(&g_p[i]), || {
            format!("G_orth({0}) ⊄ G_eig({0})", s.state_name(p))
        });
    }

    // brute force images versus generators
    if s.num_outcomes() <= BRUTE_FORCE_LIMIT {
        for (e, sys) in s.experiment_ids().zip(&f_e) {
            let brute = eig_images(&s.experiment_outcome_set(e), |a| eig_states(s, e, a))?;
            d.record("generator closures equal brute-force images", &brute == sys.members(), || format!("F({})", s.experiment_name(e)));
        }
        for (p, sys) in s.state_ids().zip(&g_p) {
            let brute = eig_images(&s.state_outcome_set(p), |a| eig_experiments(s, p, a))?;
            d.record("generator closures equal brute-force images", &brute == sys.members(), || format!("G({})", s.state_name(p)));
        }
        let brute_y = eig_images(&x_all, |a| eig_central(s, a))?;
        d.record("generator closures equal brute-force images", &brute_y == y.members(), || "Y".into());
        let brute_f = naive_intersection_closure(ns, f_e.iter().flat_map(|c| c.members().iter().cloned()));
        d.record("generator closures equal brute-force images", &brute_f == f.members(), || "F".into());
        let brute_g = naive_intersection_closure(ne, g_p.iter().flat_map(|c| c.members().iter().cloned()));
        d.record("generator closures equal brute-force images", &brute_g == g.members(), || "G".into());
    }

    if is_distinguishable(s) {
        let tr = state_trace(s, &y)?;
        d.record("distinguishable: state trace of Y equals F", tr.members() == f.members(), || "Y(state) ≠ F".into());
    }

    for a in probes(&x_all) {
        d.record("eig(A) = eig(int(A))", eig_central(s, &a)? == eig_central(s, &outcome_interior(s, &a)?)?, || a.to_string());
    }

    // separation theorems
    let theorems = [
        ("outcome determined iff T0 on Y", is_outcome_determined(s).holds(), satisfies_t0(&y).holds()),
        ("state determined iff T0 on F", is_state_determined(s).holds(), satisfies_t0(&f).holds()),
        ("experiment determined iff T0 on G", is_experiment_determined(s).holds(), satisfies_t0(&g).holds()),
        ("central atomic iff T1 on Y", is_central_atomic(s).holds(), satisfies_t1(&y).holds()),
        ("state atomic iff T1 on F", is_state_atomic(s).holds(), satisfies_t1(&f).holds()),
        ("experiment atomic iff T1 on G", is_experiment_atomic(s).holds(), satisfies_t1(&g).holds()),
    ];
    for (name, a, b) in theorems {
        d.record(name, a == b, || format!("entity property {a}, separation axiom {b}"));
    }

    if is_d_classical(s).holds() {
        for p in s.state_ids() {
            for q in s.state_ids() {
                let eqv = s.state_implies(p, q) && s.state_implies(q, p);
                d.record("d-classical: states are equivalent or orthogonal", eqv || s.state_orthogonal(p, q), || {
                    format!("{} and {}", s.state_name(p), s.state_name(q))
                });
            }
        }
        for a in probes(&x_all) {
            let img = eig_central(s, &a)?;
            let co = eig_central(s, &x_all.difference(&a))?;
            let ok = co == img.complement() && co == orth_complement(&sp_y, &img);
            d.record("d-classical: eig(A^C) = eig(A)^C = eig(A)^⊥", ok, || a.to_string());
        }
        for (i, e) in s.experiment_ids().enumerate() {
            d.record("d-classical: eigen and ortho closures coincide", f_e[i] == fo_e[i], || format!("F({})", s.experiment_name(e)));
        }
        for (i, p) in s.state_ids().enumerate() {
            d.record("d-classical: eigen and ortho closures coincide", g_p[i] == go_p[i], || format!("G({})", s.state_name(p)));
        }
    }

    // testable property systems
    for e in s.experiment_ids() {
        let en = s.experiment_name(e);
        let sps = testable_sps(s, e)?;
        let v = sps.validate();
        d.record("testable system validates", v.passed(), || format!("{en}: {}", v.failed_checks().map(|c| c.name.clone()).collect::<Vec<_>>().join(", ")));
        for a in 0..sps.len() {
            for b in 0..sps.len() {
                let ka = sps.cartan(a)?;
                let kb = sps.cartan(b)?;
                d.record("κ maps meets to intersections", sps.cartan(sps.meet(&[a, b])?)? == ka.intersection(&kb), || {
                    format!("{en}: {} and {}", sps.properties()[a].label, sps.properties()[b].label)
                });
                if a != b {
                    d.record("property order is antisymmetric", !(sps.order_leq(a, b) && sps.order_leq(b, a)), || {
                        format!("{en}: {} and {}", sps.properties()[a].label, sps.properties()[b].label)
                    });
                }
            }
        }
        for p in s.state_ids() {
            for q in s.state_ids() {
                d.record("testable state order equals <_e", sps.state_implies(p.0, q.0) == s.state_implies_for(e, p, q), || {
                    format!("{en}: {} and {}", s.state_name(p), s.state_name(q))
                });
            }
        }
    }

    // mixtures
    if s.num_outcomes() <= BRUTE_FORCE_LIMIT {
        for em in Subset::full(ne).subsets().into_iter().filter(|m| !m.is_empty()) {
            let me = MixedExperiment::new(s, em.clone())?;
            for a in x_all.subsets() {
                let direct = Subset::from_indices(
                    ns,
                    s.state_ids().filter(|&p| crate::mixture::mixed_outcome_set(s, &me, &MixedState::single(s, p)).is_subset(&a)).map(|p| p.0),
                );
                let mut parts = Subset::full(ns);
                for e in em.iter().map(ExperimentId) {
                    parts.intersect_with(&eig_states(s, e, &a.intersection(&s.experiment_outcome_set(e)))?);
                }
                d.record("mixed eig decomposes over its experiments", direct == parts, || format!("{em}, {a}"));
            }
        }
    }
    check_singleton_mixtures(s, &mut d)?;
    Ok(d)
}

fn check_singleton_mixtures(s: &Entity, d: &mut Diagnostics) -> Result<()> {
    let name = "singleton mixtures reduce to base relations";
    let st = |p: StateId| MixedElement::State(MixedState::single(s, p));
    let ex = |e: ExperimentId| MixedElement::Experiment(MixedExperiment::single(s, e));
    for p in s.state_ids() {
        for q in s.state_ids() {
            let ok = mixed_implies(s, &MixedRelationKind::State, &st(p), &st(q))? == s.state_implies(p, q)
                && mixed_orthogonal(s, &MixedRelationKind::State, &st(p), &st(q))? == s.state_orthogonal(p, q);
            d.record(name, ok, || format!("{} and {}", s.state_name(p), s.state_name(q)));
        }
    }
    for e in s.experiment_ids() {
        for f in s.experiment_ids() {
            let ok = mixed_implies(s, &MixedRelationKind::Experiment, &ex(e), &ex(f))? == s.experiment_implies(e, f)
                && mixed_orthogonal(s, &MixedRelationKind::Experiment, &ex(e), &ex(f))? == s.experiment_orthogonal(e, f);
            d.record(name, ok, || format!("{} and {}", s.experiment_name(e), s.experiment_name(f)));
        }
    }
    for a in s.couples() {
        for b in s.couples() {
            let ma = MixedElement::Couple(MixedExperiment::single(s, a.experiment), MixedState::single(s, a.state));
            let mb = MixedElement::Couple(MixedExperiment::single(s, b.experiment), MixedState::single(s, b.state));
            let ok = mixed_implies(s, &MixedRelationKind::Central, &ma, &mb)? == s.couple_implies(a, b)
                && mixed_orthogonal(s, &MixedRelationKind::Central, &ma, &mb)? == s.couple_orthogonal(a, b);
            d.record(name, ok, || format!("{} and {}", s.couple_name(a), s.couple_name(b)));
        }
    }
    Ok(())
}

/// Validates each table and checks that event probabilities are monotone.
pub fn measure_suite(entity: &Entity, tables: &[ProbabilityTable], tol: f64) -> Diagnostics {
    let mut d = Diagnostics::new();
    for t in tables {
        d.absorb(&format!("{}: ", t.name()), validate_measure(entity, t, tol));
        if !t.matches(entity) {
            continue;
        }
        for c in entity.couples() {
            let o = entity.couple_outcome_set(c);
            for a in probes(o) {
                for x in o.iter().filter(|&x| !a.contains(x)) {
                    let mut b = a.clone();
                    b.insert(x);
                    let (pa, pb) = (
                        event_probability(entity, t, c.experiment, c.state, &a),
                        event_probability(entity, t, c.experiment, c.state, &b),
                    );
                    d.record(&format!("{}: event probability is monotone", t.name()), pa <= pb + tol, || {
                        format!("{} {a} vs {b}", entity.couple_name(c))
                    });
                }
            }
        }
    }
    d
}
