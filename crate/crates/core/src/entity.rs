//! Experiment-state-outcome entities.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{IdKind, Result};
use crate::set::Subset;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExperimentId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OutcomeId(pub usize);

/// An experiment paired with a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Couple {
    pub experiment: ExperimentId,
    pub state: StateId,
}

impl Couple {
    pub fn new(experiment: ExperimentId, state: StateId) -> Self {
        Couple { experiment, state }
    }
}

/// Characters that cannot appear in identifiers.
pub const RESERVED_CHARS: &[char] = &[',', '=', '#', '[', ']', '(', ')', '{', '}', ':', ';', '"'];

pub fn is_valid_identifier(id: &str) -> bool {
    !id.is_empty() && !id.chars().any(|c| c.is_whitespace() || c.is_control() || RESERVED_CHARS.contains(&c))
}

/// A finite entity: states, experiments, outcomes and the table of
/// nonempty outcome sets `O(e, p)`.
///
/// Names are kept sorted, so ids follow lexicographic order of names.
/// The outcome set `X` is exactly the union of all table cells.
#[derive(Clone, PartialEq, Eq)]
pub struct Entity {
    states: Vec<String>,
    experiments: Vec<String>,
    outcomes: Vec<String>,
    // experiment-major: cell (e, p) lives at e * |states| + p
    table: Vec<Subset>,
}

impl fmt::Debug for Entity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Entity {{")?;
        for e in self.experiment_ids() {
            for p in self.state_ids() {
                writeln!(
                    f,
                    "  ({},{}) -> {}",
                    self.experiment_name(e),
                    self.state_name(p),
                    self.outcome_set_label(self.outcome_set(e, p))
                )?;
            }
        }
        write!(f, "}}")
    }
}

fn check_names<S: AsRef<str>>(kind: IdKind, names: &[S]) -> Result<()> {
    if names.is_empty() {
        return Err(Error::EmptyKind { kind });
    }
    let mut seen = BTreeSet::new();
    for n in names {
        let n = n.as_ref();
        if !is_valid_identifier(n) {
            return Err(Error::InvalidId { kind, id: n.to_string() });
        }
        if !seen.insert(n) {
            return Err(Error::DuplicateId { kind, id: n.to_string() });
        }
    }
    Ok(())
}

fn sorted_index<S: AsRef<str>>(names: &[S]) -> (Vec<String>, Vec<usize>) {
    let mut order: Vec<usize> = (0..names.len()).collect();
    order.sort_by(|&a, &b| names[a].as_ref().cmp(names[b].as_ref()));
    let mut new_of_old = vec![0; names.len()];
    for (new, &old) in order.iter().enumerate() {
        new_of_old[old] = new;
    }
    (order.iter().map(|&i| names[i].as_ref().to_string()).collect(), new_of_old)
}

impl Entity {
    /// Builds an entity from named cells.
    ///
    /// Every `(experiment, state)` pair must appear exactly once with a
    /// nonempty outcome list. When `outcomes` is given it must equal the
    /// union of the cells.
    pub fn new<S: AsRef<str>>(
        states: &[S],
        experiments: &[S],
        cells: &[(S, S, Vec<S>)],
        outcomes: Option<&[S]>,
    ) -> Result<Entity> {
        check_names(IdKind::State, states)?;
        check_names(IdKind::Experiment, experiments)?;
        let state_ix: BTreeMap<&str, usize> =
            states.iter().enumerate().map(|(i, s)| (s.as_ref(), i)).collect();
        let exp_ix: BTreeMap<&str, usize> =
            experiments.iter().enumerate().map(|(i, s)| (s.as_ref(), i)).collect();

        let mut outcome_names: Vec<String> = Vec::new();
        let mut outcome_ix: BTreeMap<String, usize> = BTreeMap::new();
        if let Some(decl) = outcomes {
            check_names(IdKind::Outcome, decl)?;
            for o in decl {
                outcome_ix.insert(o.as_ref().to_string(), outcome_names.len());
                outcome_names.push(o.as_ref().to_string());
            }
        }

        let ns = states.len();
        let mut raw: Vec<Option<Vec<usize>>> = vec![None; ns * experiments.len()];
        for (e, p, xs) in cells {
            let (e, p) = (e.as_ref(), p.as_ref());
            let ei = *exp_ix.get(e).ok_or_else(|| Error::UnknownId {
                kind: IdKind::Experiment,
                id: e.to_string(),
            })?;
            let pi = *state_ix.get(p).ok_or_else(|| Error::UnknownId {
                kind: IdKind::State,
                id: p.to_string(),
            })?;
            let slot = &mut raw[ei * ns + pi];
            if slot.is_some() {
                return Err(Error::DuplicateCell { experiment: e.to_string(), state: p.to_string() });
            }
            if xs.is_empty() {
                return Err(Error::EmptyCell { experiment: e.to_string(), state: p.to_string() });
            }
            let mut ids = Vec::with_capacity(xs.len());
            for x in xs {
                let x = x.as_ref();
                let id = match outcome_ix.get(x) {
                    Some(&i) => i,
                    None if outcomes.is_some() => {
                        return Err(Error::UnknownId { kind: IdKind::Outcome, id: x.to_string() })
                    }
                    None => {
                        if !is_valid_identifier(x) {
                            return Err(Error::InvalidId { kind: IdKind::Outcome, id: x.to_string() });
                        }
                        outcome_ix.insert(x.to_string(), outcome_names.len());
                        outcome_names.push(x.to_string());
                        outcome_names.len() - 1
                    }
                };
                ids.push(id);
            }
            *slot = Some(ids);
        }

        let nx = outcome_names.len();
        let mut table = Vec::with_capacity(raw.len());
        for (k, cell) in raw.into_iter().enumerate() {
            match cell {
                Some(ids) => table.push(Subset::from_indices(nx, ids)),
                None => {
                    return Err(Error::MissingCell {
                        experiment: experiments[k / ns].as_ref().to_string(),
                        state: states[k % ns].as_ref().to_string(),
                    })
                }
            }
        }
        Entity::from_cells(states, experiments, &outcome_names, table)
    }

    /// Builds an entity from an experiment-major table of outcome index sets.
    ///
    /// Names may come in any order; they are sorted and the table is
    /// permuted accordingly.
    pub fn from_cells<S: AsRef<str>, T: AsRef<str>, U: AsRef<str>>(
        states: &[S],
        experiments: &[T],
        outcomes: &[U],
        cells: Vec<Subset>,
    ) -> Result<Entity> {
        check_names(IdKind::State, states)?;
        check_names(IdKind::Experiment, experiments)?;
        check_names(IdKind::Outcome, outcomes)?;
        let (ns, ne, nx) = (states.len(), experiments.len(), outcomes.len());
        if cells.len() != ns * ne {
            return Err(Error::Dimension { expected: ns * ne, actual: cells.len() });
        }
        let mut used = Subset::empty(nx);
        for (k, c) in cells.iter().enumerate() {
            if c.universe() != nx {
                return Err(Error::Dimension { expected: nx, actual: c.universe() });
            }
            if c.is_empty() {
                return Err(Error::EmptyCell {
                    experiment: experiments[k / ns].as_ref().to_string(),
                    state: states[k % ns].as_ref().to_string(),
                });
            }
            used.union_with(c);
        }
        if let Some(x) = used.complement().first() {
            return Err(Error::UnusedOutcome { outcome: outcomes[x].as_ref().to_string() });
        }

        let (state_names, s_map) = sorted_index(states);
        let (exp_names, e_map) = sorted_index(experiments);
        let (out_names, x_map) = sorted_index(outcomes);
        let mut table = vec![Subset::empty(nx); ns * ne];
        for (k, c) in cells.into_iter().enumerate() {
            let (e, p) = (k / ns, k % ns);
            table[e_map[e] * ns + s_map[p]] = Subset::from_indices(nx, c.iter().map(|x| x_map[x]));
        }
        Ok(Entity { states: state_names, experiments: exp_names, outcomes: out_names, table })
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_experiments(&self) -> usize {
        self.experiments.len()
    }

    pub fn num_outcomes(&self) -> usize {
        self.outcomes.len()
    }

    pub fn num_couples(&self) -> usize {
        self.states.len() * self.experiments.len()
    }

    pub fn state_ids(&self) -> impl Iterator<Item = StateId> {
        (0..self.states.len()).map(StateId)
    }

    pub fn experiment_ids(&self) -> impl Iterator<Item = ExperimentId> {
        (0..self.experiments.len()).map(ExperimentId)
    }

    pub fn outcome_ids(&self) -> impl Iterator<Item = OutcomeId> {
        (0..self.outcomes.len()).map(OutcomeId)
    }

    /// Couples in experiment-major order.
    pub fn couples(&self) -> impl Iterator<Item = Couple> + '_ {
        let ns = self.states.len();
        (0..self.num_couples()).map(move |k| Couple::new(ExperimentId(k / ns), StateId(k % ns)))
    }

    pub fn couple_index(&self, c: Couple) -> usize {
        c.experiment.0 * self.states.len() + c.state.0
    }

    pub fn couple_at(&self, index: usize) -> Couple {
        let ns = self.states.len();
        Couple::new(ExperimentId(index / ns), StateId(index % ns))
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn experiment_names(&self) -> &[String] {
        &self.experiments
    }

    pub fn outcome_names(&self) -> &[String] {
        &self.outcomes
    }

    pub fn state_name(&self, p: StateId) -> &str {
        &self.states[p.0]
    }

    pub fn experiment_name(&self, e: ExperimentId) -> &str {
        &self.experiments[e.0]
    }

    pub fn outcome_name(&self, x: OutcomeId) -> &str {
        &self.outcomes[x.0]
    }

    pub fn couple_name(&self, c: Couple) -> String {
        format!("({},{})", self.experiment_name(c.experiment), self.state_name(c.state))
    }

    fn lookup(names: &[String], kind: IdKind, id: &str) -> Result<usize> {
        names
            .binary_search_by(|n| n.as_str().cmp(id))
            .map_err(|_| Error::UnknownId { kind, id: id.to_string() })
    }

    pub fn state_id(&self, name: &str) -> Result<StateId> {
        Self::lookup(&self.states, IdKind::State, name).map(StateId)
    }

    pub fn experiment_id(&self, name: &str) -> Result<ExperimentId> {
        Self::lookup(&self.experiments, IdKind::Experiment, name).map(ExperimentId)
    }

    pub fn outcome_id(&self, name: &str) -> Result<OutcomeId> {
        Self::lookup(&self.outcomes, IdKind::Outcome, name).map(OutcomeId)
    }

    pub fn couple(&self, experiment: &str, state: &str) -> Result<Couple> {
        Ok(Couple::new(self.experiment_id(experiment)?, self.state_id(state)?))
    }

    /// Subset of outcomes from names.
    pub fn outcome_subset<S: AsRef<str>>(&self, names: &[S]) -> Result<Subset> {
        let mut s = Subset::empty(self.num_outcomes());
        for n in names {
            s.insert(self.outcome_id(n.as_ref())?.0);
        }
        Ok(s)
    }

    pub fn state_subset<S: AsRef<str>>(&self, names: &[S]) -> Result<Subset> {
        let mut s = Subset::empty(self.num_states());
        for n in names {
            s.insert(self.state_id(n.as_ref())?.0);
        }
        Ok(s)
    }

    pub fn experiment_subset<S: AsRef<str>>(&self, names: &[S]) -> Result<Subset> {
        let mut s = Subset::empty(self.num_experiments());
        for n in names {
            s.insert(self.experiment_id(n.as_ref())?.0);
        }
        Ok(s)
    }

    /// Subset of couples from `(experiment, state)` name pairs.
    pub fn couple_subset<S: AsRef<str>>(&self, pairs: &[(S, S)]) -> Result<Subset> {
        let mut s = Subset::empty(self.num_couples());
        for (e, p) in pairs {
            s.insert(self.couple_index(self.couple(e.as_ref(), p.as_ref())?));
        }
        Ok(s)
    }

    /// `O(e, p)`.
    pub fn outcome_set(&self, e: ExperimentId, p: StateId) -> &Subset {
        &self.table[e.0 * self.states.len() + p.0]
    }

    pub fn couple_outcome_set(&self, c: Couple) -> &Subset {
        self.outcome_set(c.experiment, c.state)
    }

    /// `O(e)`, the union over all states.
    pub fn experiment_outcome_set(&self, e: ExperimentId) -> Subset {
        let mut s = Subset::empty(self.num_outcomes());
        for p in self.state_ids() {
            s.union_with(self.outcome_set(e, p));
        }
        s
    }

    /// `O(p)`, the union over all experiments.
    pub fn state_outcome_set(&self, p: StateId) -> Subset {
        let mut s = Subset::empty(self.num_outcomes());
        for e in self.experiment_ids() {
            s.union_with(self.outcome_set(e, p));
        }
        s
    }

    pub fn all_outcomes(&self) -> Subset {
        Subset::full(self.num_outcomes())
    }

    /// True when `O(e, p)` is a singleton.
    pub fn is_eigen(&self, c: Couple) -> bool {
        self.couple_outcome_set(c).len() == 1
    }

    /// The sole outcome of an eigen couple.
    pub fn eigen_outcome(&self, c: Couple) -> Option<OutcomeId> {
        let s = self.couple_outcome_set(c);
        (s.len() == 1).then(|| OutcomeId(s.first().unwrap()))
    }

    pub fn label_names<'a>(names: &'a [String], s: &Subset) -> Vec<&'a str> {
        s.iter().map(|i| names[i].as_str()).collect()
    }

    pub fn state_set_label(&self, s: &Subset) -> String {
        set_label(s.iter().map(|i| self.states[i].clone()))
    }

    pub fn experiment_set_label(&self, s: &Subset) -> String {
        set_label(s.iter().map(|i| self.experiments[i].clone()))
    }

    pub fn outcome_set_label(&self, s: &Subset) -> String {
        set_label(s.iter().map(|i| self.outcomes[i].clone()))
    }

    pub fn couple_set_label(&self, s: &Subset) -> String {
        set_label(s.iter().map(|i| self.couple_name(self.couple_at(i))))
    }
}

/// `{a,b,c}` with the items sorted.
pub fn set_label<I: IntoIterator<Item = String>>(items: I) -> String {
    let mut v: Vec<String> = items.into_iter().collect();
    v.sort();
    format!("{{{}}}", v.join(","))
}
