mod common;

use common::{build_entity, oracle, rng};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use soe_core::closure::{eigen_closure_system, EigenScope};
use soe_core::morphism::{
    morphism_from_continuous_map, preimage_continuity, verify_probabilistic_sub_entity, verify_sps_morphism,
    verify_sub_entity, ProbabilityCorrespondence, SpsMorphism, SubEntityWitness,
};
use soe_core::probability::{d_classical_measure, ProbabilisticEntity, ProbabilityTable};
use soe_core::property::{closure_to_sps, testable_sps};
use soe_core::{Entity, ExperimentId, OutcomeId, StateId};

/// Entity with outcome list `x1..x{nx}` given explicitly, so outcome
/// indices match mask bits.
fn entity_with_outcomes(ns: usize, ne: usize, nx: usize, cells: &[u64]) -> Entity {
    let states: Vec<String> = (1..=ns).map(|i| format!("p{i}")).collect();
    let exps: Vec<String> = (1..=ne).map(|i| format!("e{i}")).collect();
    let outs: Vec<String> = (1..=nx).map(|i| format!("x{i}")).collect();
    let mut table = Vec::new();
    for e in 0..ne {
        for p in 0..ns {
            let m = cells[e * ns + p];
            let o: Vec<String> = (0..nx).filter(|b| m >> b & 1 == 1).map(|b| outs[b].clone()).collect();
            table.push((exps[e].clone(), states[p].clone(), o));
        }
    }
    Entity::new(&states, &exps, &table, Some(&outs)).unwrap()
}

struct Pair {
    small: Entity,
    big: Entity,
    w: SubEntityWitness,
}

/// A small entity and an enlargement of it: duplicated states, extra
/// experiments and outcomes, relabelled through an injective `l`.
fn sub_entity_pair(r: &mut ChaCha8Rng, singleton_cells: bool) -> Pair {
    let (ns, ne, nx) = (r.gen_range(1..=3), r.gen_range(1..=3), r.gen_range(1..=5));
    let cell = |r: &mut ChaCha8Rng, n: usize| -> u64 {
        if singleton_cells {
            1 << r.gen_range(0..n)
        } else {
            r.gen_range(1..1u64 << n)
        }
    };
    let raw: Vec<u64> = (0..ns * ne).map(|_| cell(r, nx)).collect();
    // Entities reject unused outcomes, so compact the bits that occur.
    let used: Vec<usize> = (0..nx).filter(|b| raw.iter().any(|c| c >> b & 1 == 1)).collect();
    let nx = used.len();
    let cells: Vec<u64> =
        raw.iter().map(|c| used.iter().enumerate().filter(|(_, &b)| c >> b & 1 == 1).fold(0, |a, (i, _)| a | 1 << i)).collect();
    let small = entity_with_outcomes(ns, ne, nx, &cells);

    let ns2 = ns + r.gen_range(0..=3);
    let mut m: Vec<usize> = (0..ns).chain((ns..ns2).map(|_| r.gen_range(0..ns))).collect();
    m.shuffle(r);
    let ne2 = ne + r.gen_range(0..=2);
    let mut slots: Vec<usize> = (0..ne2).collect();
    slots.shuffle(r);
    let n: Vec<usize> = slots[..ne].to_vec();
    let nx2 = if singleton_cells || ne2 == ne { nx } else { nx + r.gen_range(0..=3) };
    let mut outs: Vec<usize> = (0..nx2).collect();
    outs.shuffle(r);
    let l: Vec<usize> = outs[..nx].to_vec();

    let mut big_cells = vec![0u64; ne2 * ns2];
    for e2 in 0..ne2 {
        for p2 in 0..ns2 {
            big_cells[e2 * ns2 + p2] = match n.iter().position(|&x| x == e2) {
                Some(e) => {
                    let c = cells[e * ns + m[p2]];
                    (0..nx).filter(|b| c >> b & 1 == 1).fold(0, |acc, b| acc | 1 << l[b])
                }
                None => cell(r, nx2),
            };
        }
    }
    // Extra outcomes all occur in the first extra experiment.
    if let Some(e2) = (0..ne2).find(|e| !n.contains(e)) {
        big_cells[e2 * ns2] |= outs[nx..].iter().fold(0, |a, &b| a | 1 << b);
    }
    let big = entity_with_outcomes(ns2, ne2, nx2, &big_cells);
    let w = SubEntityWitness::new(
        &small,
        &big,
        m.into_iter().map(StateId).collect(),
        n.into_iter().map(ExperimentId).collect(),
        l.into_iter().map(OutcomeId).collect(),
    )
    .unwrap();
    Pair { small, big, w }
}

fn random_measure(s: &Entity, r: &mut ChaCha8Rng, name: &str) -> ProbabilityTable {
    let mut t = ProbabilityTable::zeros(s, name);
    for c in s.couples() {
        let o = s.couple_outcome_set(c).to_vec();
        let w: Vec<f64> = o.iter().map(|_| r.gen_range(0.05..1.0)).collect();
        let total: f64 = w.iter().sum();
        for (x, wx) in o.iter().zip(w) {
            t.set(c.experiment, c.state, OutcomeId(*x), wx / total);
        }
    }
    t
}

/// Pushes a small measure forward along the witness; extra experiments get
/// a fresh random measure.
fn transported(p: &Pair, mu: &ProbabilityTable, r: &mut ChaCha8Rng) -> ProbabilityTable {
    let mut t = random_measure(&p.big, r, mu.name());
    for e in p.small.experiment_ids() {
        let e2 = p.w.n[e.0];
        for p2 in p.big.state_ids() {
            for x in p.big.outcome_ids() {
                t.set(e2, p2, x, 0.0);
            }
            for x in p.small.outcome_ids() {
                t.set(e2, p2, p.w.l[x.0], mu.get(e, p.w.m[p2.0], x));
            }
        }
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn generated_witnesses_verify(seed in any::<u64>()) {
        let p = sub_entity_pair(&mut rng(seed), false);
        let d = verify_sub_entity(&p.small, &p.big, &p.w).unwrap();
        prop_assert!(d.passed(), "{:?}", d.failed_checks().collect::<Vec<_>>());
        let c = preimage_continuity(&p.small, &p.big, &p.w).unwrap();
        prop_assert!(c.passed(), "{:?}", c.failed_checks().collect::<Vec<_>>());
        for e in p.small.experiment_ids() {
            for f in p.small.experiment_ids() {
                prop_assert_eq!(p.small.experiment_implies(e, f), p.big.experiment_implies(p.w.n[e.0], p.w.n[f.0]));
            }
        }
    }

    #[test]
    fn continuous_state_maps_induce_sps_morphisms(seed in any::<u64>()) {
        let p = sub_entity_pair(&mut rng(seed), false);
        let fs = eigen_closure_system(&p.small, EigenScope::StatesGlobal).unwrap();
        let fb = eigen_closure_system(&p.big, EigenScope::StatesGlobal).unwrap();
        let ls = closure_to_sps(p.small.state_names(), &fs).unwrap();
        let lb = closure_to_sps(p.big.state_names(), &fb).unwrap();
        let m: Vec<usize> = p.w.m.iter().map(|s| s.0).collect();
        let mor = morphism_from_continuous_map(&ls, &lb, m).unwrap();
        let d = verify_sps_morphism(&ls, &lb, &mor).unwrap();
        prop_assert!(d.passed(), "{:?}", d.failed_checks().collect::<Vec<_>>());
    }

    #[test]
    fn testable_identity_morphisms_verify(s in common::arb_entity()) {
        for e in s.experiment_ids() {
            let sps = testable_sps(&s, e).unwrap();
            prop_assert!(verify_sps_morphism(&sps, &sps, &SpsMorphism::identity(&sps)).unwrap().passed());
        }
        prop_assert!(verify_sub_entity(&s, &s, &SubEntityWitness::identity(&s)).unwrap().passed());
    }

    #[test]
    fn measures_transport_along_witnesses(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = sub_entity_pair(&mut r, false);
        let mu = random_measure(&p.small, &mut r, "mu");
        let nu = transported(&p, &mu, &mut r);
        let other = random_measure(&p.big, &mut r, "other");
        let small = ProbabilisticEntity::new(p.small.clone(), vec![mu], 1e-12).unwrap();
        let big = ProbabilisticEntity::new(p.big.clone(), vec![other, nu], 1e-12).unwrap();
        let ok = verify_probabilistic_sub_entity(&small, &big, &p.w, &ProbabilityCorrespondence { k: vec![1] }, 1e-12).unwrap();
        prop_assert!(ok.passed(), "{:?}", ok.failed_checks().collect::<Vec<_>>());
    }
}

#[test]
fn d_classical_probabilistic_pairs_verify() {
    let mut r = rng(11);
    for _ in 0..50 {
        let p = sub_entity_pair(&mut r, true);
        let small = ProbabilisticEntity::new(p.small.clone(), vec![d_classical_measure(&p.small).unwrap()], 1e-12).unwrap();
        let big = ProbabilisticEntity::new(p.big.clone(), vec![d_classical_measure(&p.big).unwrap()], 1e-12).unwrap();
        let d = verify_probabilistic_sub_entity(&small, &big, &p.w, &ProbabilityCorrespondence { k: vec![0] }, 1e-12).unwrap();
        assert!(d.passed(), "{:?}", d.failed_checks().collect::<Vec<_>>());
    }
}

#[test]
fn collapsing_measure_correspondence_is_not_injective() {
    let mut r = rng(5);
    let p = sub_entity_pair(&mut r, true);
    let det = d_classical_measure(&p.small).unwrap();
    let mut copy = ProbabilityTable::zeros(&p.small, "copy");
    for (e, s, x, v) in det.nonzero() {
        copy.set(e, s, x, v);
    }
    let small = ProbabilisticEntity::new(p.small.clone(), vec![det, copy], 1e-12).unwrap();
    let big = ProbabilisticEntity::new(p.big.clone(), vec![d_classical_measure(&p.big).unwrap()], 1e-12).unwrap();
    let d = verify_probabilistic_sub_entity(&small, &big, &p.w, &ProbabilityCorrespondence { k: vec![0, 0] }, 1e-12).unwrap();
    assert!(!d.check("k is injective").unwrap().passed());
    assert!(d.check("measures transport along (m, n, l)").unwrap().passed());
}

#[test]
fn big_state_orthogonality_need_not_descend_along_m() {
    let small = build_entity(1, 1, &[0b1]);
    let big = entity_with_outcomes(2, 2, 2, &[0b01, 0b01, 0b01, 0b10]);
    let w = SubEntityWitness::from_names(
        &small,
        &big,
        &[("p1", "p1"), ("p2", "p1")],
        &[("e1", "e1")],
        &[("x1", "x1")],
    )
    .unwrap();
    assert!(verify_sub_entity(&small, &big, &w).unwrap().passed());
    let (p1, p2) = (big.state_id("p1").unwrap(), big.state_id("p2").unwrap());
    assert!(big.state_orthogonal(p1, p2));
    assert!(!small.state_orthogonal(w.m[p1.0], w.m[p2.0]));
}

#[test]
fn broken_witnesses_fail() {
    let small = build_entity(2, 1, &[0b01, 0b10]);
    let w = SubEntityWitness::new(&small, &small, vec![StateId(0), StateId(0)], vec![ExperimentId(0)], vec![OutcomeId(0), OutcomeId(1)])
        .unwrap();
    let d = verify_sub_entity(&small, &small, &w).unwrap();
    assert!(!d.check("m is surjective").unwrap().passed());
    assert!(!d.check("l maps O(e,m(p')) onto O'(n(e),p')").unwrap().passed());

    let w = SubEntityWitness::new(&small, &small, vec![StateId(0), StateId(1)], vec![ExperimentId(0)], vec![OutcomeId(0), OutcomeId(0)])
        .unwrap();
    assert!(!verify_sub_entity(&small, &small, &w).unwrap().check("l is injective").unwrap().passed());

    assert!(SubEntityWitness::new(&small, &small, vec![StateId(0)], vec![ExperimentId(0)], vec![OutcomeId(0), OutcomeId(1)]).is_err());
    let missing = SubEntityWitness::from_names(&small, &small, &[("p1", "p1")], &[("e1", "e1")], &[("x1", "x1"), ("x2", "x2")]);
    assert!(missing.is_err());
}

#[test]
fn discontinuous_maps_are_rejected() {
    let s = build_entity(2, 1, &[0b01, 0b10]);
    let t = build_entity(2, 1, &[0b01, 0b01]);
    let fs = closure_to_sps(s.state_names(), &eigen_closure_system(&s, EigenScope::StatesGlobal).unwrap()).unwrap();
    let ft = closure_to_sps(t.state_names(), &eigen_closure_system(&t, EigenScope::StatesGlobal).unwrap()).unwrap();
    assert_eq!(oracle::f(&t).len(), 2);
    assert!(morphism_from_continuous_map(&fs, &ft, vec![0, 1]).is_err());
    assert!(morphism_from_continuous_map(&ft, &fs, vec![0, 1]).is_ok());
}
