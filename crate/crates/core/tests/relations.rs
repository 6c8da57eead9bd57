mod common;

use common::{arb_entity, arb_entity_with, build_entity, oracle};
use proptest::prelude::*;
use soe_core::{relation_report, Couple, Entity, ExperimentId, OutcomeId, StateId};

fn couples(s: &Entity) -> Vec<Couple> {
    s.couples().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn implications_are_preorders(s in arb_entity()) {
        let st: Vec<StateId> = s.state_ids().collect();
        let ex: Vec<ExperimentId> = s.experiment_ids().collect();
        let cs = couples(&s);
        for &a in &st {
            prop_assert!(s.state_implies(a, a));
            for &b in &st {
                for &c in &st {
                    if s.state_implies(a, b) && s.state_implies(b, c) {
                        prop_assert!(s.state_implies(a, c));
                    }
                }
            }
        }
        for &a in &ex {
            prop_assert!(s.experiment_implies(a, a));
            for &b in &ex {
                for &c in &ex {
                    if s.experiment_implies(a, b) && s.experiment_implies(b, c) {
                        prop_assert!(s.experiment_implies(a, c));
                    }
                }
            }
        }
        for &a in &cs {
            prop_assert!(s.couple_implies(a, a));
            for &b in &cs {
                if !s.couple_implies(a, b) {
                    continue;
                }
                for &c in &cs {
                    if s.couple_implies(b, c) {
                        prop_assert!(s.couple_implies(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn orthogonality_is_irreflexive_and_symmetric(s in arb_entity()) {
        for a in s.state_ids() {
            prop_assert!(!s.state_orthogonal(a, a));
            for b in s.state_ids() {
                prop_assert_eq!(s.state_orthogonal(a, b), s.state_orthogonal(b, a));
            }
        }
        for a in s.experiment_ids() {
            prop_assert!(!s.experiment_orthogonal(a, a));
            for b in s.experiment_ids() {
                prop_assert_eq!(s.experiment_orthogonal(a, b), s.experiment_orthogonal(b, a));
            }
        }
        for a in s.couples() {
            prop_assert!(!s.couple_orthogonal(a, a));
            for b in s.couples() {
                prop_assert_eq!(s.couple_orthogonal(a, b), s.couple_orthogonal(b, a));
            }
        }
        for x in s.outcome_ids() {
            for y in s.outcome_ids() {
                prop_assert_eq!(s.outcome_orthogonal(x, y), s.outcome_orthogonal(y, x));
            }
        }
    }

    #[test]
    fn implication_excludes_orthogonality(s in arb_entity()) {
        for a in s.state_ids() {
            for b in s.state_ids() {
                prop_assert!(!(s.state_implies(a, b) && s.state_orthogonal(a, b)));
            }
        }
        for a in s.experiment_ids() {
            for b in s.experiment_ids() {
                prop_assert!(!(s.experiment_implies(a, b) && s.experiment_orthogonal(a, b)));
            }
        }
        for a in s.couples() {
            for b in s.couples() {
                prop_assert!(!(s.couple_implies(a, b) && s.couple_orthogonal(a, b)));
            }
        }
    }

    #[test]
    fn orthogonality_descends_along_implication(s in arb_entity()) {
        let cs = couples(&s);
        for &a in &cs {
            for &b in &cs {
                if !s.couple_orthogonal(a, b) {
                    continue;
                }
                for &c in &cs {
                    for &d in &cs {
                        if s.couple_implies(c, a) && s.couple_implies(d, b) {
                            prop_assert!(s.couple_orthogonal(c, d));
                        }
                    }
                }
            }
        }
        for a in s.state_ids() {
            for b in s.state_ids() {
                if !s.state_orthogonal(a, b) {
                    continue;
                }
                for c in s.state_ids() {
                    for d in s.state_ids() {
                        if s.state_implies(c, a) && s.state_implies(d, b) {
                            prop_assert!(s.state_orthogonal(c, d));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn relations_match_the_definitions(s in arb_entity()) {
        let ne = s.num_experiments();
        for p in 0..s.num_states() {
            for q in 0..s.num_states() {
                prop_assert_eq!(s.state_implies(StateId(p), StateId(q)), oracle::state_implies(&s, p, q));
                let orth = (0..ne).any(|e| oracle::state_orth_for(&s, e, p, q));
                prop_assert_eq!(s.state_orthogonal(StateId(p), StateId(q)), orth);
            }
        }
        for a in 0..s.num_couples() {
            for b in 0..s.num_couples() {
                prop_assert_eq!(s.couple_orthogonal(s.couple_at(a), s.couple_at(b)), oracle::couple_orth(&s, a, b));
            }
        }
        for x in 0..s.num_outcomes() {
            for y in 0..s.num_outcomes() {
                let orth = s.couples().any(|c| {
                    let o = s.couple_outcome_set(c).mask();
                    o >> x & 1 == 1 && o >> y & 1 == 1 && x != y
                });
                prop_assert_eq!(s.outcome_orthogonal(OutcomeId(x), OutcomeId(y)), orth);
            }
        }
    }

    #[test]
    fn eigen_outcome_iff_singleton(s in arb_entity()) {
        for c in s.couples() {
            let o = s.couple_outcome_set(c);
            prop_assert_eq!(s.eigen_outcome(c).is_some(), o.len() == 1);
            if let Some(x) = s.eigen_outcome(c) {
                prop_assert!(o.contains(x.0));
            }
        }
    }

    #[test]
    fn report_equals_pairwise_evaluation(s in arb_entity_with(3, 3, 5)) {
        let r = relation_report(&s);
        let central = r.sections.iter().find(|x| x.title == "central").unwrap();
        let mut want = Vec::new();
        let mut orth = Vec::new();
        for a in s.couples() {
            for b in s.couples() {
                let (na, nb) = (s.couple_name(a), s.couple_name(b));
                let (oa, ob) = (s.couple_outcome_set(a).mask(), s.couple_outcome_set(b).mask());
                if a != b && oracle::sub(oa, ob) {
                    want.push((na.clone(), nb.clone()));
                }
                if na < nb && oa & ob == 0 {
                    orth.push((na, nb));
                }
            }
        }
        want.sort();
        orth.sort();
        prop_assert_eq!(&central.implications, &want);
        prop_assert_eq!(&central.orthogonalities, &orth);
        let eig = s.couples().filter(|&c| s.is_eigen(c)).count();
        prop_assert_eq!(r.eigen_couples.len(), eig);
    }
}

#[test]
fn singleton_entity_has_only_reflexive_relations() {
    let s = build_entity(1, 1, &[1]);
    let r = relation_report(&s);
    for sec in &r.sections {
        assert!(sec.implications.is_empty(), "{}", sec.title);
        assert!(sec.orthogonalities.is_empty(), "{}", sec.title);
    }
}
