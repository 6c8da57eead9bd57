//! Golden values for the three-state example entity.

mod common;

use std::collections::BTreeSet;

use common::golden::*;
use common::{ex12, lambda, lambdas, masks, oracle, outcomes_mask};
use soe_core::classify::classify;
use soe_core::closure::{
    eig_central, eigen_closure_system, orth_complement, ortho_closure_system, state_trace, EigenScope, OrthoSpace,
};
use soe_core::mixture::{full_mixed_entity, mixed_outcome_set, MixedExperiment, MixedState};
use soe_core::property::{global_testable_sps, testable_sps};
use soe_core::verify::invariant_suite;
use soe_core::{Error, Subset};

#[test]
fn outcome_sets_of_states() {
    let s = ex12();
    let o = |p: &str| s.state_outcome_set(s.state_id(p).unwrap()).mask();
    assert_eq!(o("p"), outcomes_mask(&s, &["x1", "x2", "y1", "y2"]));
    assert_eq!(o("q"), outcomes_mask(&s, &["x1", "x2", "x3", "y2"]));
    assert_eq!(o("r"), outcomes_mask(&s, &["x1", "x2", "x3", "y1", "y2"]));
}

#[test]
fn central_relations() {
    let s = ex12();
    let mut implies = BTreeSet::new();
    let mut orth = BTreeSet::new();
    for &a in ALL {
        for &b in ALL {
            let (ca, cb) = (s.couple_at(lambda(&s, a)), s.couple_at(lambda(&s, b)));
            if a != b && s.couple_implies(ca, cb) {
                implies.insert((a, b));
            }
            if a < b && s.couple_orthogonal(ca, cb) {
                orth.insert((a, b));
            }
        }
    }
    assert_eq!(implies, CENTRAL_IMPLICATIONS.iter().copied().collect());
    assert_eq!(orth, CENTRAL_ORTHOGONALITIES.iter().copied().collect());
}

#[test]
fn state_and_experiment_relations() {
    let s = ex12();
    let st = |n: &str| s.state_id(n).unwrap();
    let ex = |n: &str| s.experiment_id(n).unwrap();
    assert!(s.state_orthogonal_for(ex("g"), st("p"), st("q")));
    assert!(s.state_orthogonal(st("p"), st("q")));
    assert!(!s.state_orthogonal(st("p"), st("r")));
    assert!(s.experiment_orthogonal_for(st("p"), ex("e"), ex("f")));
    assert!(s.experiment_orthogonal_for(st("q"), ex("e"), ex("f")));
    assert!(s.experiment_orthogonal_for(st("q"), ex("e"), ex("g")));
    assert!(!s.experiment_orthogonal(ex("f"), ex("g")));
    for a in s.state_ids() {
        for b in s.state_ids() {
            assert_eq!(s.state_implies(a, b), a == b);
        }
    }
    for a in s.experiment_ids() {
        for b in s.experiment_ids() {
            assert_eq!(s.experiment_implies(a, b), a == b);
        }
    }
}

#[test]
fn state_families() {
    let s = ex12();
    for e in ["e", "f", "g"] {
        let fe = masks(&eigen_closure_system(&s, EigenScope::StatesFor(s.experiment_id(e).unwrap())).unwrap());
        assert_eq!(fe, state_family_for(e), "F({e})");
    }
    let global = masks(&eigen_closure_system(&s, EigenScope::StatesGlobal).unwrap());
    assert_eq!(global, state_family());
    assert_eq!(global, oracle::f(&s));
}

#[test]
fn experiment_families() {
    let s = ex12();
    for p in ["p", "q", "r"] {
        let gp = masks(&eigen_closure_system(&s, EigenScope::ExperimentsFor(s.state_id(p).unwrap())).unwrap());
        assert_eq!(gp, experiment_family_for(p), "G({p})");
    }
    let global = masks(&eigen_closure_system(&s, EigenScope::ExperimentsGlobal).unwrap());
    assert_eq!(global, experiment_family());
    assert_eq!(global, oracle::g(&s));
}

#[test]
fn central_eigen_and_ortho_systems() {
    let s = ex12();
    let y = eigen_closure_system(&s, EigenScope::Central).unwrap();
    assert_eq!(y.len(), 22);
    assert_eq!(masks(&y), golden_y_eig());
    assert_eq!(masks(&y), oracle::y(&s));
    let yo = ortho_closure_system(&OrthoSpace::central(&s)).unwrap();
    assert_eq!(yo.len(), 16);
    assert_eq!(masks(&yo), golden_y_orth());
    assert_eq!(masks(&yo), oracle::ortho_family(9, |a, b| oracle::couple_orth(&s, a, b)));
    assert!(yo.is_subfamily_of(&y));
}

#[test]
fn eig_of_a_four_outcome_event() {
    let s = ex12();
    let a = s.outcome_subset(&["x1", "x2", "x3", "y2"]).unwrap();
    assert_eq!(eig_central(&s, &a).unwrap().mask(), lambdas(&s, &[11, 12, 13, 22, 32]));
}

#[test]
fn ortho_state_families_and_traces() {
    let s = ex12();
    let fo = |e: &str| masks(&ortho_closure_system(&OrthoSpace::states_for(&s, s.experiment_id(e).unwrap())).unwrap());
    assert_eq!(fo("e"), trivial_state_family());
    assert_eq!(fo("f"), trivial_state_family());
    assert_eq!(fo("g"), ortho_state_family());
    assert_eq!(masks(&ortho_closure_system(&OrthoSpace::states(&s)).unwrap()), ortho_state_family());

    let y = eigen_closure_system(&s, EigenScope::Central).unwrap();
    let yo = ortho_closure_system(&OrthoSpace::central(&s)).unwrap();
    let by_def: BTreeSet<u64> = oracle::y(&s)
        .into_iter()
        .map(|m| (0..3).filter(|&p| (0..3).all(|e| m >> (e * 3 + p) & 1 == 1)).fold(0, |t, p| t | 1 << p))
        .collect();
    assert_eq!(by_def, eigen_state_trace());
    assert_eq!(masks(&state_trace(&s, &y).unwrap()), eigen_state_trace());
    assert_eq!(masks(&state_trace(&s, &yo).unwrap()), ortho_state_trace());
}

#[test]
fn orthocomplements_of_single_couples() {
    let s = ex12();
    let space = OrthoSpace::central(&s);
    let cases: &[(u32, &[u32])] = &[
        (11, &[21, 23]),
        (12, &[21, 22, 32]),
        (13, &[21, 31]),
        (21, &[11, 12, 13, 32]),
        (22, &[12, 31]),
        (23, &[11, 32]),
        (31, &[13, 22, 32]),
        (32, &[12, 21, 23, 31]),
        (33, &[]),
    ];
    for &(k, want) in cases {
        let single = Subset::singleton(9, lambda(&s, k));
        assert_eq!(orth_complement(&space, &single).mask(), lambdas(&s, want), "complement of λ{k}");
    }
}

#[test]
fn closures_of_single_couples() {
    let s = ex12();
    let y = eigen_closure_system(&s, EigenScope::Central).unwrap();
    let yo = ortho_closure_system(&OrthoSpace::central(&s)).unwrap();
    let cl = |k: u32| y.closure_of(&Subset::singleton(9, lambda(&s, k))).unwrap().mask();
    assert_eq!(cl(11), lambdas(&s, &[11, 32]));
    assert_eq!(cl(23), lambdas(&s, &[21, 23]));
    assert_eq!(cl(33), lambdas(&s, &[11, 31, 32, 33]));
    let clo = yo.closure_of(&Subset::singleton(9, lambda(&s, 33))).unwrap();
    assert!(clo.is_full());
}

#[test]
fn classification_flags() {
    let r = classify(&ex12()).unwrap();
    assert!(r.outcome_determined.holds);
    assert!(!r.central_atomic.holds);
    assert_eq!(r.central_atomic.witness.as_deref(), Some("(g,q) < (e,p)"));
    assert!(r.state_atomic.holds);
    assert!(r.experiment_atomic.holds);
    assert!(r.state_determined.holds);
    assert!(r.experiment_determined.holds);
    assert!(!r.d_classical.holds);
    assert!(!r.distinguishable.holds);
    assert!(r.skipped_checks.is_empty());
}

#[test]
fn testable_properties_of_each_experiment() {
    let s = ex12();
    let sps = testable_sps(&s, s.experiment_id("e").unwrap()).unwrap();
    assert_eq!(sps.len(), 5);
    let labels: Vec<&str> = sps.properties().iter().map(|p| p.label.as_str()).collect();
    for want in ["a(e,{x1,x2})", "a(e,{x1,x3})", "a(e,{x2,x3})", "a(e,{x1,x2,x3})"] {
        assert!(labels.contains(&want), "{want} missing from {labels:?}");
    }
    assert!(sps.validate().passed());
    let g = testable_sps(&s, s.experiment_id("g").unwrap()).unwrap();
    assert_eq!(g.len(), 4);
    assert!(matches!(global_testable_sps(&s), Err(Error::Precondition(_))));
}

#[test]
fn mixtures() {
    let s = ex12();
    let e = MixedExperiment::from_names(&s, &["e", "f"]).unwrap();
    let p = MixedState::from_names(&s, &["p"]).unwrap();
    assert_eq!(mixed_outcome_set(&s, &e, &p).mask(), outcomes_mask(&s, &["x1", "x2", "y1", "y2"]));
    let m = full_mixed_entity(&s).unwrap();
    assert_eq!((m.num_states(), m.num_experiments(), m.num_outcomes()), (7, 7, 5));
    let c = m.couple("e+f", "p+q").unwrap();
    assert_eq!(m.outcome_set_label(m.couple_outcome_set(c)), "{x1,x2,x3,y1,y2}");
}

#[test]
fn invariant_suite_passes() {
    let d = invariant_suite(&ex12()).unwrap();
    let failed: Vec<_> = d.failed_checks().map(|c| c.name.clone()).collect();
    assert!(failed.is_empty(), "{failed:?}");
}
