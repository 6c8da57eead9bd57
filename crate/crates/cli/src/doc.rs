//! The line-oriented entity document format.
//!
//! ```text
//! [entity]
//! states = p, q
//! experiments = e
//! outcomes = a, b        # optional, must equal the union of the cells
//!
//! [outcomes]
//! e p = a
//! e q = a, b
//!
//! [probability]
//! mu e p = a: 1
//! mu e q = a: 0.5, b: 0.5
//!
//! [witness]
//! m p1 = p
//! n e = e
//! l a = a
//! k mu = nu
//! ```
//!
//! `#` starts a comment. Identifiers may not contain whitespace or any of
//! the reserved characters `, = # [ ] ( ) { } : ; "`.

use std::collections::BTreeMap;
use std::fmt;

use soe_core::entity::is_valid_identifier;
use soe_core::probability::ProbabilityTable;
use soe_core::{Entity, IdKind};
use thiserror::Error;

/// 1-based line and column of a token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Loc {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Loc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{loc}: {msg}")]
pub struct ParseError {
    pub loc: Loc,
    pub msg: String,
}

fn fail<T>(loc: Loc, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { loc, msg: msg.into() })
}

/// A name with the place it was written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub loc: Loc,
}

/// Which map of a sub-entity witness a row belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MapKind {
    M,
    N,
    L,
    K,
}

impl MapKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MapKind::M => "m",
            MapKind::N => "n",
            MapKind::L => "l",
            MapKind::K => "k",
        }
    }
}

/// One `map from = to` row of a `[witness]` section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessRow {
    pub map: MapKind,
    pub from: Token,
    pub to: Token,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub entity: Option<Entity>,
    /// Measures in order of first appearance.
    pub measures: Vec<ProbabilityTable>,
    pub witness: Vec<WitnessRow>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Entity,
    Outcomes,
    Probability,
    Witness,
}

impl Section {
    fn name(self) -> &'static str {
        match self {
            Section::Entity => "entity",
            Section::Outcomes => "outcomes",
            Section::Probability => "probability",
            Section::Witness => "witness",
        }
    }
}

struct Line<'a> {
    no: usize,
    text: &'a str,
}

impl Line<'_> {
    fn loc(&self, byte: usize) -> Loc {
        Loc { line: self.no, col: self.text[..byte].chars().count() + 1 }
    }
}

/// Splits `s` (starting at byte `offset` of the line) on whitespace.
fn words(line: &Line<'_>, s: &str, offset: usize) -> Vec<Token> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices().chain(std::iter::once((s.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(b)) => {
                out.push(Token { text: s[b..i].to_string(), loc: line.loc(offset + b) });
                start = None;
            }
            _ => {}
        }
    }
    out
}

/// Splits a comma list, trimming each item. An empty right side is an
/// empty list.
fn items(line: &Line<'_>, s: &str, offset: usize) -> Result<Vec<Token>, ParseError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut at = 0;
    for piece in s.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        let text = piece.trim();
        let loc = line.loc(offset + at + lead);
        if text.is_empty() {
            return fail(loc, "empty list item");
        }
        out.push(Token { text: text.to_string(), loc });
        at += piece.len() + 1;
    }
    Ok(out)
}

fn identifier(t: &Token, what: &str) -> Result<(), ParseError> {
    if is_valid_identifier(&t.text) {
        Ok(())
    } else {
        fail(t.loc, format!("invalid {what} identifier `{}`", t.text))
    }
}

struct Assignment {
    lhs: Vec<Token>,
    rhs: String,
    rhs_offset: usize,
    eq: Loc,
}

fn assignment(line: &Line<'_>, body: &str) -> Result<Assignment, ParseError> {
    let Some(eq) = body.find('=') else {
        return fail(line.loc(body.len() - body.trim_start().len()), "expected `=`");
    };
    let lhs = words(line, &body[..eq], 0);
    if lhs.is_empty() {
        return fail(line.loc(eq), "nothing before `=`");
    }
    Ok(Assignment { lhs, rhs: body[eq + 1..].to_string(), rhs_offset: eq + 1, eq: line.loc(eq) })
}

struct Declarations {
    states: Option<Vec<Token>>,
    experiments: Option<Vec<Token>>,
    outcomes: Option<Vec<Token>>,
    at: Loc,
}

/// `(measure, experiment, state, entries)`.
type ProbabilityRow = (Token, Token, Token, Vec<(Token, f64)>);

struct Builder {
    decl: Option<Declarations>,
    cells: BTreeMap<(String, String), (Loc, Vec<Token>)>,
    /// Outcomes section header, for missing-cell errors.
    outcomes_at: Option<Loc>,
    probability: Vec<ProbabilityRow>,
    witness: Vec<WitnessRow>,
}

impl Builder {
    fn declared<'a>(&'a self, list: &'a Option<Vec<Token>>, t: &Token, kind: IdKind) -> Result<(), ParseError> {
        match list {
            Some(v) if v.iter().any(|d| d.text == t.text) => Ok(()),
            _ => fail(t.loc, format!("undeclared {kind} `{}`", t.text)),
        }
    }

    fn entity_line(&mut self, line: &Line<'_>, body: &str) -> Result<(), ParseError> {
        let a = assignment(line, body)?;
        if a.lhs.len() != 1 {
            return fail(a.lhs[1].loc, "expected a single key before `=`");
        }
        let key = &a.lhs[0];
        let values = items(line, &a.rhs, a.rhs_offset)?;
        let (slot, kind) = {
            let d = self.decl.as_mut().expect("entity section open");
            match key.text.as_str() {
                "states" => (&mut d.states, "state"),
                "experiments" => (&mut d.experiments, "experiment"),
                "outcomes" => (&mut d.outcomes, "outcome"),
                other => return fail(key.loc, format!("unknown key `{other}`; expected states, experiments or outcomes")),
            }
        };
        if slot.is_some() {
            return fail(key.loc, format!("`{}` declared twice", key.text));
        }
        if values.is_empty() {
            return fail(a.eq, format!("`{}` needs at least one {kind}", key.text));
        }
        for (i, v) in values.iter().enumerate() {
            identifier(v, kind)?;
            if values[..i].iter().any(|w| w.text == v.text) {
                return fail(v.loc, format!("duplicate {kind} `{}`", v.text));
            }
        }
        *slot = Some(values);
        Ok(())
    }

    fn decl(&self, at: Loc) -> Result<&Declarations, ParseError> {
        self.decl.as_ref().ok_or_else(|| ParseError { loc: at, msg: "the [entity] section must come first".into() })
    }

    fn outcome_line(&mut self, line: &Line<'_>, body: &str) -> Result<(), ParseError> {
        let a = assignment(line, body)?;
        let d = self.decl(a.lhs[0].loc)?;
        if a.lhs.len() != 2 {
            return fail(a.lhs[0].loc, "expected `experiment state = outcomes`");
        }
        let (e, p) = (&a.lhs[0], &a.lhs[1]);
        self.declared(&d.experiments, e, IdKind::Experiment)?;
        self.declared(&d.states, p, IdKind::State)?;
        let xs = items(line, &a.rhs, a.rhs_offset)?;
        if xs.is_empty() {
            return fail(a.eq, format!("outcome set of ({},{}) is empty", e.text, p.text));
        }
        for (i, x) in xs.iter().enumerate() {
            identifier(x, "outcome")?;
            if d.outcomes.is_some() {
                self.declared(&d.outcomes, x, IdKind::Outcome)?;
            }
            if xs[..i].iter().any(|y| y.text == x.text) {
                return fail(x.loc, format!("outcome `{}` listed twice", x.text));
            }
        }
        let key = (e.text.clone(), p.text.clone());
        if let Some((first, _)) = self.cells.get(&key) {
            return fail(e.loc, format!("outcome set of ({},{}) already given at {first}", e.text, p.text));
        }
        self.cells.insert(key, (e.loc, xs));
        Ok(())
    }

    fn probability_line(&mut self, line: &Line<'_>, body: &str) -> Result<(), ParseError> {
        let a = assignment(line, body)?;
        let d = self.decl(a.lhs[0].loc)?;
        if a.lhs.len() != 3 {
            return fail(a.lhs[0].loc, "expected `measure experiment state = outcome: value, ...`");
        }
        let (mu, e, p) = (a.lhs[0].clone(), a.lhs[1].clone(), a.lhs[2].clone());
        identifier(&mu, "measure")?;
        self.declared(&d.experiments, &e, IdKind::Experiment)?;
        self.declared(&d.states, &p, IdKind::State)?;
        let mut entries = Vec::new();
        for item in items(line, &a.rhs, a.rhs_offset)? {
            let Some(colon) = item.text.find(':') else {
                return fail(item.loc, "expected `outcome: value`");
            };
            let x = Token { text: item.text[..colon].trim_end().to_string(), loc: item.loc };
            let after = &item.text[colon + 1..];
            let raw = after.trim();
            let lead = after.len() - after.trim_start().len();
            let value_loc = Loc { line: item.loc.line, col: item.loc.col + item.text[..colon + 1 + lead].chars().count() };
            identifier(&x, "outcome")?;
            let v: f64 = raw.parse().map_err(|_| ParseError { loc: value_loc, msg: format!("`{raw}` is not a number") })?;
            if !v.is_finite() || !(0.0..=1.0).contains(&v) {
                return fail(value_loc, format!("probability {raw} is outside [0,1]"));
            }
            if entries.iter().any(|(y, _): &(Token, f64)| y.text == x.text) {
                return fail(x.loc, format!("outcome `{}` listed twice", x.text));
            }
            entries.push((x, v));
        }
        if entries.is_empty() {
            return fail(a.eq, "probability row has no entries");
        }
        if self.probability.iter().any(|(m, f, q, _)| m.text == mu.text && f.text == e.text && q.text == p.text) {
            return fail(mu.loc, format!("row ({},{}) of measure `{}` given twice", e.text, p.text, mu.text));
        }
        self.probability.push((mu, e, p, entries));
        Ok(())
    }

    fn witness_line(&mut self, line: &Line<'_>, body: &str) -> Result<(), ParseError> {
        let a = assignment(line, body)?;
        if a.lhs.len() != 2 {
            return fail(a.lhs[0].loc, "expected `m|n|l|k from = to`");
        }
        let map = match a.lhs[0].text.as_str() {
            "m" => MapKind::M,
            "n" => MapKind::N,
            "l" => MapKind::L,
            "k" => MapKind::K,
            other => return fail(a.lhs[0].loc, format!("unknown map `{other}`; expected m, n, l or k")),
        };
        let to = items(line, &a.rhs, a.rhs_offset)?;
        if to.len() != 1 {
            return fail(a.eq, "a witness row maps to exactly one identifier");
        }
        let (from, to) = (a.lhs[1].clone(), to.into_iter().next().unwrap());
        identifier(&from, "witness")?;
        identifier(&to, "witness")?;
        if let Some(r) = self.witness.iter().find(|r| r.map == map && r.from.text == from.text) {
            return fail(from.loc, format!("{} assigns `{}` twice (first at {})", map.as_str(), from.text, r.from.loc));
        }
        self.witness.push(WitnessRow { map, from, to });
        Ok(())
    }

    fn finish(self, end: Loc) -> Result<Document, ParseError> {
        let Some(d) = self.decl else {
            if !self.cells.is_empty() || !self.probability.is_empty() {
                unreachable!("sections that need [entity] are rejected while parsing");
            }
            return Ok(Document { entity: None, measures: Vec::new(), witness: self.witness });
        };
        let states = d.states.ok_or_else(|| ParseError { loc: d.at, msg: "[entity] does not declare `states`".into() })?;
        let experiments =
            d.experiments.ok_or_else(|| ParseError { loc: d.at, msg: "[entity] does not declare `experiments`".into() })?;
        let at = self.outcomes_at.unwrap_or(end);
        for e in &experiments {
            for p in &states {
                if !self.cells.contains_key(&(e.text.clone(), p.text.clone())) {
                    return fail(at, format!("no outcome set given for ({},{})", e.text, p.text));
                }
            }
        }
        if let Some(decl) = &d.outcomes {
            for x in decl {
                if !self.cells.values().any(|(_, xs)| xs.iter().any(|y| y.text == x.text)) {
                    return fail(x.loc, format!("declared outcome `{}` occurs in no outcome set", x.text));
                }
            }
        }
        let names = |v: &[Token]| v.iter().map(|t| t.text.clone()).collect::<Vec<_>>();
        let cells: Vec<(String, String, Vec<String>)> =
            self.cells.into_iter().map(|((e, p), (_, xs))| (e, p, names(&xs))).collect();
        let declared = d.outcomes.as_deref().map(names);
        let entity = Entity::new(&names(&states), &names(&experiments), &cells, declared.as_deref())
            .map_err(|err| ParseError { loc: d.at, msg: err.to_string() })?;

        let mut measures: Vec<ProbabilityTable> = Vec::new();
        for (mu, e, p, entries) in self.probability {
            let i = match measures.iter().position(|t| t.name() == mu.text) {
                Some(i) => i,
                None => {
                    measures.push(ProbabilityTable::zeros(&entity, mu.text.clone()));
                    measures.len() - 1
                }
            };
            let (e, p) = (entity.experiment_id(&e.text).unwrap(), entity.state_id(&p.text).unwrap());
            for (x, v) in entries {
                let id = entity.outcome_id(&x.text).map_err(|_| ParseError {
                    loc: x.loc,
                    msg: format!("outcome `{}` is not in X", x.text),
                })?;
                measures[i].set(e, p, id, v);
            }
        }
        Ok(Document { entity: Some(entity), measures, witness: self.witness })
    }
}

/// Parses a document. A document without `[entity]` may only hold a
/// `[witness]` section.
pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    let mut b = Builder {
        decl: None,
        cells: BTreeMap::new(),
        outcomes_at: None,
        probability: Vec::new(),
        witness: Vec::new(),
    };
    let mut section: Option<Section> = None;
    let mut seen: Vec<Section> = Vec::new();
    let mut last = 0;
    for (no, raw) in text.lines().enumerate() {
        let line = Line { no: no + 1, text: raw };
        last = no + 1;
        let body = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let start = body.len() - body.trim_start().len();
        if let Some(inner) = trimmed.strip_prefix('[') {
            let Some(name) = inner.strip_suffix(']') else {
                return fail(line.loc(start), "unterminated section header");
            };
            let loc = line.loc(start);
            let s = match name.trim() {
                "entity" => Section::Entity,
                "outcomes" => Section::Outcomes,
                "probability" => Section::Probability,
                "witness" => Section::Witness,
                other => return fail(loc, format!("unknown section `[{other}]`")),
            };
            if seen.contains(&s) {
                return fail(loc, format!("section [{}] appears twice", s.name()));
            }
            match s {
                Section::Entity => b.decl = Some(Declarations { states: None, experiments: None, outcomes: None, at: loc }),
                Section::Outcomes | Section::Probability if b.decl.is_none() => {
                    return fail(loc, format!("[{}] needs a preceding [entity] section", s.name()))
                }
                Section::Outcomes => b.outcomes_at = Some(loc),
                _ => {}
            }
            seen.push(s);
            section = Some(s);
            continue;
        }
        match section {
            None => return fail(line.loc(start), "content before the first section header"),
            Some(Section::Entity) => b.entity_line(&line, body)?,
            Some(Section::Outcomes) => b.outcome_line(&line, body)?,
            Some(Section::Probability) => b.probability_line(&line, body)?,
            Some(Section::Witness) => b.witness_line(&line, body)?,
        }
    }
    b.finish(Loc { line: last.max(1), col: 1 })
}

/// Writes a document that [`parse_document`] reads back to an equal one.
/// Names come out sorted and zero probabilities are omitted.
pub fn emit_document(doc: &Document) -> String {
    let mut out = String::new();
    if let Some(s) = &doc.entity {
        out.push_str("[entity]\n");
        out.push_str(&format!("states = {}\n", s.state_names().join(", ")));
        out.push_str(&format!("experiments = {}\n", s.experiment_names().join(", ")));
        out.push_str(&format!("outcomes = {}\n", s.outcome_names().join(", ")));
        out.push_str("\n[outcomes]\n");
        for e in s.experiment_ids() {
            for p in s.state_ids() {
                let xs = Entity::label_names(s.outcome_names(), s.outcome_set(e, p));
                out.push_str(&format!("{} {} = {}\n", s.experiment_name(e), s.state_name(p), xs.join(", ")));
            }
        }
        if !doc.measures.is_empty() {
            out.push_str("\n[probability]\n");
            for t in &doc.measures {
                let mut rows: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
                for (e, p, x, v) in t.nonzero() {
                    rows.entry((e.0, p.0)).or_default().push(format!("{}: {v}", s.outcome_name(x)));
                }
                for ((e, p), entries) in rows {
                    out.push_str(&format!(
                        "{} {} {} = {}\n",
                        t.name(),
                        s.experiment_names()[e],
                        s.state_names()[p],
                        entries.join(", ")
                    ));
                }
            }
        }
    }
    if !doc.witness.is_empty() {
        if !out.is_empty() {
            out.push('\n');
        }
        out.push_str("[witness]\n");
        for r in &doc.witness {
            out.push_str(&format!("{} {} = {}\n", r.map.as_str(), r.from.text, r.to.text));
        }
    }
    out
}
