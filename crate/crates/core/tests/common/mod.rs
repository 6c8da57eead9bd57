//! Fixtures, generators and definitional oracles shared by the test targets.
//!
//! The oracles work on raw bit masks read off the outcome table and never
//! call the kernel's eigen maps or closure code.
#![allow(dead_code)]

pub mod golden;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use soe_core::closure::ClosureSystem;
use soe_core::{Couple, Entity, ExperimentId, StateId};

/// The three-state, three-experiment example entity.
pub fn ex12() -> Entity {
    Entity::new(
        &["p", "q", "r"],
        &["e", "f", "g"],
        &[
            ("e", "p", vec!["x1", "x2"]),
            ("e", "q", vec!["x1", "x3"]),
            ("e", "r", vec!["x2", "x3"]),
            ("f", "p", vec!["y1", "y2"]),
            ("f", "q", vec!["x2", "y2"]),
            ("f", "r", vec!["x3", "y1", "y2"]),
            ("g", "p", vec!["x1", "y1"]),
            ("g", "q", vec!["x2"]),
            ("g", "r", vec!["x1", "x2", "y1"]),
        ],
        None,
    )
    .unwrap()
}

/// `λ_ij` naming: experiment `i` (e,f,g), state `j` (p,q,r), as a couple index.
pub fn lambda(entity: &Entity, ij: u32) -> usize {
    let e = ["e", "f", "g"][(ij / 10 - 1) as usize];
    let p = ["p", "q", "r"][(ij % 10 - 1) as usize];
    entity.couple_index(entity.couple(e, p).unwrap())
}

pub fn lambdas(entity: &Entity, ijs: &[u32]) -> u64 {
    ijs.iter().fold(0, |m, &ij| m | 1 << lambda(entity, ij))
}

pub fn states_mask(entity: &Entity, names: &[&str]) -> u64 {
    names.iter().fold(0, |m, n| m | 1 << entity.state_id(n).unwrap().0)
}

pub fn experiments_mask(entity: &Entity, names: &[&str]) -> u64 {
    names.iter().fold(0, |m, n| m | 1 << entity.experiment_id(n).unwrap().0)
}

pub fn outcomes_mask(entity: &Entity, names: &[&str]) -> u64 {
    names.iter().fold(0, |m, n| m | 1 << entity.outcome_id(n).unwrap().0)
}

pub fn masks(system: &ClosureSystem) -> BTreeSet<u64> {
    system.members().iter().map(|s| s.mask()).collect()
}

pub fn build_entity(ns: usize, ne: usize, cells: &[u64]) -> Entity {
    let states: Vec<String> = (1..=ns).map(|i| format!("p{i}")).collect();
    let exps: Vec<String> = (1..=ne).map(|i| format!("e{i}")).collect();
    let mut table = Vec::new();
    for e in 0..ne {
        for p in 0..ns {
            let m = cells[e * ns + p];
            let outs: Vec<String> = (0..64).filter(|b| m >> b & 1 == 1).map(|b| format!("x{}", b + 1)).collect();
            table.push((exps[e].clone(), states[p].clone(), outs));
        }
    }
    Entity::new(&states, &exps, &table, None).unwrap()
}

fn random_cell(rng: &mut ChaCha8Rng, nx: usize) -> u64 {
    let mut bits: Vec<usize> = (0..nx).collect();
    bits.shuffle(rng);
    let k = rng.gen_range(1..=nx);
    bits[..k].iter().fold(0, |m, b| m | 1 << b)
}

/// Uniform shape, then each cell a random nonempty subset of a random size.
pub fn random_entity(rng: &mut ChaCha8Rng) -> Entity {
    random_entity_with(rng, 4, 4, 6)
}

pub fn random_entity_with(rng: &mut ChaCha8Rng, max_s: usize, max_e: usize, max_x: usize) -> Entity {
    let (ns, ne, nx) = (rng.gen_range(1..=max_s), rng.gen_range(1..=max_e), rng.gen_range(1..=max_x));
    let cells: Vec<u64> = (0..ns * ne).map(|_| random_cell(rng, nx)).collect();
    build_entity(ns, ne, &cells)
}

/// Every cell a singleton.
pub fn random_d_classical(rng: &mut ChaCha8Rng) -> Entity {
    let (ns, ne, nx) = (rng.gen_range(1..=4), rng.gen_range(1..=4), rng.gen_range(1..=6));
    let cells: Vec<u64> = (0..ns * ne).map(|_| 1 << rng.gen_range(0..nx)).collect();
    build_entity(ns, ne, &cells)
}

/// Experiments draw from disjoint outcome blocks.
pub fn random_distinguishable(rng: &mut ChaCha8Rng) -> Entity {
    let (ns, ne) = (rng.gen_range(1..=4), rng.gen_range(1..=3));
    let per = 6 / ne;
    let mut cells = Vec::new();
    for e in 0..ne {
        for _ in 0..ns {
            let nx = rng.gen_range(1..=per);
            cells.push(random_cell(rng, nx) << (e * per));
        }
    }
    build_entity(ns, ne, &cells)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn arb_cells(max_s: usize, max_e: usize, max_x: usize) -> impl Strategy<Value = (usize, usize, Vec<u64>)> {
    (1..=max_s, 1..=max_e, 1..=max_x).prop_flat_map(|(ns, ne, nx)| {
        let cell = prop_oneof![(0..nx).prop_map(|b| 1u64 << b), 1u64..(1u64 << nx)];
        (Just(ns), Just(ne), proptest::collection::vec(cell, ns * ne))
    })
}

/// Entities with at most 4 states, 4 experiments and 6 outcomes.
pub fn arb_entity() -> impl Strategy<Value = Entity> {
    arb_cells(4, 4, 6).prop_map(|(ns, ne, c)| build_entity(ns, ne, &c))
}

pub fn arb_entity_with(max_s: usize, max_e: usize, max_x: usize) -> impl Strategy<Value = Entity> {
    arb_cells(max_s, max_e, max_x).prop_map(|(ns, ne, c)| build_entity(ns, ne, &c))
}

pub fn arb_d_classical() -> impl Strategy<Value = Entity> {
    (1..=4usize, 1..=4usize, 1..=6usize)
        .prop_flat_map(|(ns, ne, nx)| (Just(ns), Just(ne), proptest::collection::vec((0..nx).prop_map(|b| 1u64 << b), ns * ne)))
        .prop_map(|(ns, ne, c)| build_entity(ns, ne, &c))
}

pub fn arb_distinguishable() -> impl Strategy<Value = Entity> {
    any::<u64>().prop_map(|s| random_distinguishable(&mut rng(s)))
}

/// Definitional computations on masks.
pub mod oracle {
    use super::*;

    pub fn cell(s: &Entity, e: usize, p: usize) -> u64 {
        s.outcome_set(ExperimentId(e), StateId(p)).mask()
    }

    pub fn o_e(s: &Entity, e: usize) -> u64 {
        (0..s.num_states()).fold(0, |m, p| m | cell(s, e, p))
    }

    pub fn o_p(s: &Entity, p: usize) -> u64 {
        (0..s.num_experiments()).fold(0, |m, e| m | cell(s, e, p))
    }

    pub fn all_x(s: &Entity) -> u64 {
        (1u64 << s.num_outcomes()) - 1
    }

    pub fn sub(a: u64, b: u64) -> bool {
        a & !b == 0
    }

    pub fn submasks(m: u64) -> Vec<u64> {
        let mut v = vec![0];
        let mut s = m;
        while s != 0 {
            v.push(s);
            s = (s - 1) & m;
        }
        v
    }

    pub fn eig_e(s: &Entity, e: usize, a: u64) -> u64 {
        (0..s.num_states()).filter(|&p| sub(cell(s, e, p), a)).fold(0, |m, p| m | 1 << p)
    }

    pub fn eig_p(s: &Entity, p: usize, a: u64) -> u64 {
        (0..s.num_experiments()).filter(|&e| sub(cell(s, e, p), a)).fold(0, |m, e| m | 1 << e)
    }

    /// Couples `(e,p)` with `O(e,p) ⊆ A`, indexed `e·|Σ| + p`.
    pub fn eig(s: &Entity, a: u64) -> u64 {
        let ns = s.num_states();
        let mut m = 0;
        for e in 0..s.num_experiments() {
            for p in 0..ns {
                if sub(cell(s, e, p), a) {
                    m |= 1 << (e * ns + p);
                }
            }
        }
        m
    }

    pub fn meet_closure(full: u64, seeds: impl IntoIterator<Item = u64>) -> BTreeSet<u64> {
        let mut fam: BTreeSet<u64> = seeds.into_iter().collect();
        fam.insert(full);
        loop {
            let v: Vec<u64> = fam.iter().copied().collect();
            let n = fam.len();
            for &a in &v {
                for &b in &v {
                    fam.insert(a & b);
                }
            }
            if fam.len() == n {
                return fam;
            }
        }
    }

    pub fn f_e(s: &Entity, e: usize) -> BTreeSet<u64> {
        submasks(o_e(s, e)).into_iter().map(|a| eig_e(s, e, a)).collect()
    }

    pub fn g_p(s: &Entity, p: usize) -> BTreeSet<u64> {
        submasks(o_p(s, p)).into_iter().map(|a| eig_p(s, p, a)).collect()
    }

    pub fn y(s: &Entity) -> BTreeSet<u64> {
        submasks(all_x(s)).into_iter().map(|a| eig(s, a)).collect()
    }

    pub fn f(s: &Entity) -> BTreeSet<u64> {
        let full = (1u64 << s.num_states()) - 1;
        meet_closure(full, (0..s.num_experiments()).flat_map(|e| f_e(s, e)))
    }

    pub fn g(s: &Entity) -> BTreeSet<u64> {
        let full = (1u64 << s.num_experiments()) - 1;
        meet_closure(full, (0..s.num_states()).flat_map(|p| g_p(s, p)))
    }

    /// `{K^⊥ : K ⊆ ground}` for an orthogonality predicate.
    pub fn ortho_family(n: usize, orth: impl Fn(usize, usize) -> bool) -> BTreeSet<u64> {
        let full = (1u64 << n) - 1;
        // rows[a] = {b : a ⊥ b}; K^⊥ is the meet of the rows of K.
        let rows: Vec<u64> = (0..n).map(|a| (0..n).filter(|&b| orth(a, b)).fold(0, |m, b| m | 1 << b)).collect();
        (0..=full).map(|k| (0..n).filter(|&a| k >> a & 1 == 1).fold(full, |m, a| m & rows[a])).collect()
    }

    pub fn couple_orth(s: &Entity, a: usize, b: usize) -> bool {
        let ns = s.num_states();
        cell(s, a / ns, a % ns) & cell(s, b / ns, b % ns) == 0
    }

    pub fn state_orth_for(s: &Entity, e: usize, p: usize, q: usize) -> bool {
        cell(s, e, p) & cell(s, e, q) == 0
    }

    pub fn state_implies(s: &Entity, p: usize, q: usize) -> bool {
        (0..s.num_experiments()).all(|e| sub(cell(s, e, p), cell(s, e, q)))
    }

    pub fn couple(s: &Entity, k: usize) -> Couple {
        s.couple_at(k)
    }
}
