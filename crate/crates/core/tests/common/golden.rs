//! Frozen values for the example entity, shared by the golden and
//! acceptance targets.

use std::collections::BTreeSet;

use super::{ex12, experiments_mask, lambdas, states_mask};

pub fn family_of_states(names: &[&[&str]]) -> BTreeSet<u64> {
    let s = ex12();
    names.iter().map(|n| states_mask(&s, n)).collect()
}

pub fn family_of_experiments(names: &[&[&str]]) -> BTreeSet<u64> {
    let s = ex12();
    names.iter().map(|n| experiments_mask(&s, n)).collect()
}

pub fn family_of_couples(members: &[&[u32]]) -> BTreeSet<u64> {
    let s = ex12();
    members.iter().map(|m| lambdas(&s, m)).collect()
}

pub const ALL: &[u32] = &[11, 12, 13, 21, 22, 23, 31, 32, 33];

pub fn golden_y_eig() -> BTreeSet<u64> {
    family_of_couples(&[
        &[],
        &[12],
        &[31],
        &[32],
        &[21],
        &[11, 32],
        &[13, 32],
        &[21, 31],
        &[32, 22],
        &[22, 21, 32],
        &[21, 23],
        &[11, 31, 32, 33],
        &[11, 22, 32],
        &[12, 31],
        &[11, 12, 13, 32],
        &[12, 21, 23, 31],
        &[13, 32, 22],
        &[11, 12, 13, 22, 32],
        &[13, 21, 22, 23, 32],
        &[11, 21, 22, 31, 32, 33],
        &[11, 12, 13, 31, 32, 33],
        ALL,
    ])
}

pub fn golden_y_orth() -> BTreeSet<u64> {
    family_of_couples(&[
        &[],
        &[12],
        &[21],
        &[31],
        &[32],
        &[11, 32],
        &[13, 32],
        &[22, 32],
        &[23, 21],
        &[21, 31],
        &[12, 31],
        &[21, 22, 32],
        &[13, 22, 32],
        &[11, 12, 13, 32],
        &[12, 21, 23, 31],
        ALL,
    ])
}

/// Non-reflexive central implications, as `λ` index pairs.
pub const CENTRAL_IMPLICATIONS: &[(u32, u32)] = &[(11, 33), (21, 23), (31, 33), (32, 11), (32, 13), (32, 22), (32, 33)];

/// Central orthogonalities, as unordered `λ` index pairs.
pub const CENTRAL_ORTHOGONALITIES: &[(u32, u32)] = &[
    (11, 21),
    (11, 23),
    (12, 21),
    (12, 22),
    (12, 32),
    (13, 21),
    (13, 31),
    (21, 32),
    (22, 31),
    (23, 32),
    (31, 32),
];

/// `F(e)` for each experiment of the example.
pub fn state_family_for(e: &str) -> BTreeSet<u64> {
    match e {
        "e" => family_of_states(&[&[], &["p"], &["q"], &["r"], &["p", "q", "r"]]),
        "f" => family_of_states(&[&[], &["p"], &["q"], &["p", "q"], &["p", "r"], &["p", "q", "r"]]),
        "g" => family_of_states(&[&[], &["p"], &["q"], &["p", "q", "r"]]),
        _ => panic!("no experiment {e}"),
    }
}

pub fn state_family() -> BTreeSet<u64> {
    family_of_states(&[&[], &["p"], &["q"], &["r"], &["p", "q"], &["p", "r"], &["p", "q", "r"]])
}

/// `G(p)` for each state of the example.
pub fn experiment_family_for(p: &str) -> BTreeSet<u64> {
    match p {
        "p" => family_of_experiments(&[&[], &["e"], &["f"], &["g"], &["e", "g"], &["f", "g"], &["e", "f", "g"]]),
        "q" => family_of_experiments(&[&[], &["e"], &["g"], &["e", "g"], &["f", "g"], &["e", "f", "g"]]),
        "r" => family_of_experiments(&[&[], &["e"], &["f"], &["g"], &["e", "g"], &["e", "f"], &["e", "f", "g"]]),
        _ => panic!("no state {p}"),
    }
}

/// `G` is the full power set of the three experiments.
pub fn experiment_family() -> BTreeSet<u64> {
    (0..8u64).collect()
}

/// `F_orth`, which is also `F_orth(g)`; `F_orth(e) = F_orth(f) = {∅,Σ}`.
pub fn ortho_state_family() -> BTreeSet<u64> {
    family_of_states(&[&[], &["p"], &["q"], &["p", "q", "r"]])
}

pub fn trivial_state_family() -> BTreeSet<u64> {
    family_of_states(&[&[], &["p", "q", "r"]])
}

/// State trace of the eigen system: `{q}` appears because
/// `eig({x1,x2,x3,y2})` contains every couple of `q`.
pub fn eigen_state_trace() -> BTreeSet<u64> {
    family_of_states(&[&[], &["p"], &["q"], &["p", "q", "r"]])
}

/// State trace of the ortho system: no ortho-closed set short of `E×Σ`
/// holds all of `(e,p)`, `(f,p)`, `(g,p)`.
pub fn ortho_state_trace() -> BTreeSet<u64> {
    trivial_state_family()
}
