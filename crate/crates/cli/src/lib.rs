//! Command-line driver for soe-core: reads entity documents, runs the
//! kernel and prints deterministic reports.

pub mod doc;
pub mod report;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use soe_core::classify::classify;
use soe_core::closure::{eigen_closure_system, ortho_closure_system, outcome_closure_system, ClosureSystem, EigenScope, OrthoSpace};
use soe_core::morphism::{preimage_continuity, verify_probabilistic_sub_entity, verify_sub_entity, ProbabilityCorrespondence, SubEntityWitness};
use soe_core::probability::{validate_measure, ProbabilisticEntity, ProbabilityTable, DEFAULT_TOLERANCE};
use soe_core::quantum::{cq_probability, qmachine_probability, qmachine_to_hilbert, sphere_family, verify_cq_sub_entity, BallState, SphereExperiment};
use soe_core::verify::{invariant_suite, measure_suite};
use soe_core::{relation_report, Diagnostics, Entity, Error, Subset};
use thiserror::Error as ThisError;

use doc::{parse_document, Document, Loc, MapKind, ParseError, WitnessRow};
use report::{flag, float, group, int, list, records, render_human, render_structured, set, text, Node, Value};

/// Seed for sampled verifications when `SOE_SEED` is unset.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(name = "soe", version, about = "Analyze finite experiment-state-outcome entities")]
pub struct Cli {
    /// Emit the nested `key = value` form instead of indented text.
    #[arg(long, global = true)]
    pub structured: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Eigen,
    Ortho,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum On {
    States,
    Experiments,
    Central,
    Outcomes,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the outcome table, eigen couples and every relation.
    Analyze { file: PathBuf },
    /// Print an eigen or ortho closure system.
    Closures {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, value_enum)]
        on: On,
        /// Restrict to one experiment (states), one state (experiments) or
        /// one couple `e,p` (ortho outcomes).
        #[arg(long = "for", value_name = "ID")]
        for_id: Option<String>,
    },
    /// Print determination, atomicity and classicality flags.
    Classify { file: PathBuf },
    /// Verify that SMALL is a sub entity of BIG under a witness.
    Subentity {
        small: PathBuf,
        big: PathBuf,
        #[arg(long)]
        witness: PathBuf,
        /// Also check measure transport along the `k` rows.
        #[arg(long)]
        probabilistic: bool,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Compare the elastic machine with its Hilbert space model.
    Qmachine {
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, allow_negative_numbers = true)]
        phi: f64,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        axis_theta: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        axis_phi: f64,
    },
    /// Run the invariant suite; exits 1 if any check fails.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Check the completed quantum sub-entity of a tensor product on
    /// random states (seeded by SOE_SEED).
    Tensor {
        #[arg(long, default_value_t = 2)]
        nh: usize,
        #[arg(long, default_value_t = 2)]
        ng: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Overrides SOE_SEED.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Kernel(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Kernel(Error::Consistency(_)) => 1,
            _ => 2,
        }
    }
}

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the command. `seed_env` is
/// the value of `SOE_SEED`, if set.
pub fn run<I, T>(args: I, seed_env: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let msg = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (msg, String::new()) } else { (String::new(), msg) };
            return Outcome { code, stdout, stderr };
        }
    };
    match execute(&cli.command, seed_env) {
        Ok((nodes, ok)) => {
            let stdout = if cli.structured { render_structured(&nodes) } else { render_human(&nodes) };
            Outcome { code: if ok { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("soe: {e}\n") },
    }
}

/// Runs one command, returning the report and whether every check passed.
pub fn execute(cmd: &Command, seed_env: Option<&str>) -> Result<(Vec<Node>, bool), CliError> {
    match cmd {
        Command::Analyze { file } => {
            let s = load_entity(file)?;
            Ok((vec![group("analyze", analyze(&s))], true))
        }
        Command::Closures { file, kind, on, for_id } => {
            let s = load_entity(file)?;
            Ok((vec![group("closures", closures(&s, *kind, *on, for_id.as_deref())?)], true))
        }
        Command::Classify { file } => {
            let s = load_entity(file)?;
            Ok((vec![group("classify", classification(&s)?)], true))
        }
        Command::Subentity { small, big, witness, probabilistic, tol } => {
            let (nodes, ok) = subentity(small, big, witness, *probabilistic, *tol)?;
            Ok((vec![group("subentity", nodes)], ok))
        }
        Command::Qmachine { theta, phi, radius, axis_theta, axis_phi } => {
            Ok((vec![group("qmachine", qmachine(*theta, *phi, *radius, *axis_theta, *axis_phi)?)], true))
        }
        Command::Verify { file, tol } => {
            let (nodes, ok) = verify(file, *tol)?;
            Ok((vec![group("verify", nodes)], ok))
        }
        Command::Tensor { nh, ng, samples, seed } => {
            let seed = match seed {
                Some(s) => *s,
                None => parse_seed(seed_env)?,
            };
            let (nodes, ok) = tensor(*nh, *ng, *samples, seed)?;
            Ok((vec![group("tensor", nodes)], ok))
        }
    }
}

pub fn parse_seed(env: Option<&str>) -> Result<u64, CliError> {
    match env {
        None => Ok(DEFAULT_SEED),
        Some(s) => s.trim().parse().map_err(|_| CliError::Usage(format!("SOE_SEED `{s}` is not an unsigned integer"))),
    }
}

fn load(path: &Path) -> Result<Document, CliError> {
    let name = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: name.clone(), source })?;
    parse_document(&text).map_err(|source| CliError::Parse { path: name, source })
}

fn need_entity(path: &Path, doc: Document) -> Result<(Entity, Vec<ProbabilityTable>), CliError> {
    match doc.entity {
        Some(s) => Ok((s, doc.measures)),
        None => Err(CliError::Parse {
            path: path.display().to_string(),
            source: ParseError { loc: Loc { line: 1, col: 1 }, msg: "no [entity] section".into() },
        }),
    }
}

fn load_entity(path: &Path) -> Result<Entity, CliError> {
    Ok(need_entity(path, load(path)?)?.0)
}

fn names(s: &[String], sub: &Subset) -> Vec<String> {
    let mut v: Vec<String> = sub.iter().map(|i| s[i].clone()).collect();
    v.sort();
    v
}

fn entity_summary(s: &Entity) -> Node {
    group(
        "entity",
        vec![
            set("states", s.state_names().to_vec()),
            set("experiments", s.experiment_names().to_vec()),
            set("outcomes", s.outcome_names().to_vec()),
        ],
    )
}

fn analyze(s: &Entity) -> Vec<Node> {
    let r = relation_report(s);
    let cells = s
        .couples()
        .map(|c| {
            vec![
                text("experiment", s.experiment_name(c.experiment)),
                text("state", s.state_name(c.state)),
                set("outcomes", names(s.outcome_names(), s.couple_outcome_set(c))),
            ]
        })
        .collect();
    let eigen = r.eigen_couples.iter().map(|(c, x)| Value::Text(format!("{c} -> {x}"))).collect();
    let sections = r
        .sections
        .iter()
        .map(|sec| {
            vec![
                text("title", sec.title.clone()),
                list("implications", sec.implications.iter().map(|(a, b)| Value::Text(format!("{a} < {b}"))).collect()),
                list(
                    "orthogonalities",
                    sec.orthogonalities.iter().map(|(a, b)| Value::Text(format!("{a} ⊥ {b}"))).collect(),
                ),
            ]
        })
        .collect();
    vec![entity_summary(s), records("cells", cells), list("eigen_couples", eigen), records("relations", sections)]
}

fn no_for(on: &str, for_id: Option<&str>) -> Result<(), CliError> {
    match for_id {
        Some(_) => Err(CliError::Usage(format!("--for is not supported with --on {on}"))),
        None => Ok(()),
    }
}

fn couple_arg(s: &Entity, id: &str) -> Result<soe_core::Couple, CliError> {
    let inner = id.trim().trim_start_matches('(').trim_end_matches(')');
    let Some((e, p)) = inner.split_once(',') else {
        return Err(CliError::Usage(format!("couple `{id}` must be written `experiment,state`")));
    };
    Ok(s.couple(e.trim(), p.trim())?)
}

fn closures(s: &Entity, kind: Kind, on: On, for_id: Option<&str>) -> Result<Vec<Node>, CliError> {
    let couple_names: Vec<String> = s.couples().map(|c| s.couple_name(c)).collect();
    let (system, ground): (ClosureSystem, &[String]) = match (kind, on) {
        (Kind::Eigen, On::States) => {
            let scope = match for_id {
                Some(e) => EigenScope::StatesFor(s.experiment_id(e)?),
                None => EigenScope::StatesGlobal,
            };
            (eigen_closure_system(s, scope)?, s.state_names())
        }
        (Kind::Eigen, On::Experiments) => {
            let scope = match for_id {
                Some(p) => EigenScope::ExperimentsFor(s.state_id(p)?),
                None => EigenScope::ExperimentsGlobal,
            };
            (eigen_closure_system(s, scope)?, s.experiment_names())
        }
        (Kind::Eigen, On::Central) => {
            no_for("central", for_id)?;
            (eigen_closure_system(s, EigenScope::Central)?, &couple_names)
        }
        (Kind::Eigen, On::Outcomes) => {
            no_for("outcomes", for_id)?;
            (outcome_closure_system(s)?, s.outcome_names())
        }
        (Kind::Ortho, On::States) => {
            let space = match for_id {
                Some(e) => OrthoSpace::states_for(s, s.experiment_id(e)?),
                None => OrthoSpace::states(s),
            };
            (ortho_closure_system(&space)?, s.state_names())
        }
        (Kind::Ortho, On::Experiments) => {
            let space = match for_id {
                Some(p) => OrthoSpace::experiments_for(s, s.state_id(p)?),
                None => OrthoSpace::experiments(s),
            };
            (ortho_closure_system(&space)?, s.experiment_names())
        }
        (Kind::Ortho, On::Central) => {
            no_for("central", for_id)?;
            (ortho_closure_system(&OrthoSpace::central(s))?, &couple_names)
        }
        (Kind::Ortho, On::Outcomes) => {
            let space = match for_id {
                Some(c) => OrthoSpace::outcomes_for(s, couple_arg(s, c)?),
                None => OrthoSpace::outcomes(s),
            };
            (ortho_closure_system(&space)?, s.outcome_names())
        }
    };
    let mut members: Vec<Vec<String>> = system.members().iter().map(|m| names(ground, m)).collect();
    members.sort();
    let mut nodes = vec![
        text("kind", kind.to_possible_value().unwrap().get_name()),
        text("on", on.to_possible_value().unwrap().get_name()),
    ];
    if let Some(id) = for_id {
        nodes.push(text("for", id));
    }
    let mut ground_sorted = ground.to_vec();
    ground_sorted.sort();
    nodes.push(set("ground", ground_sorted));
    nodes.push(int("count", members.len()));
    nodes.push(list("members", members.into_iter().map(Value::Set).collect()));
    Ok(nodes)
}

fn classification(s: &Entity) -> Result<Vec<Node>, CliError> {
    let r = classify(s)?;
    let flags = r
        .flags()
        .iter()
        .map(|(name, f)| {
            let mut rec = vec![text("name", *name), flag("holds", f.holds)];
            if let Some(w) = &f.witness {
                rec.push(text("witness", w.clone()));
            }
            rec
        })
        .collect();
    let skipped = r.skipped_checks.iter().map(|c| Value::Text(c.clone())).collect();
    Ok(vec![entity_summary(s), records("flags", flags), list("skipped", skipped)])
}

fn diagnostics(d: &Diagnostics) -> Vec<Node> {
    let checks = d
        .checks
        .iter()
        .map(|c| {
            let mut rec = vec![
                text("name", c.name.clone()),
                text("status", if c.passed() { "pass" } else { "fail" }),
                int("failures", c.failure_count),
            ];
            if !c.passed() {
                rec.push(list("witnesses", c.witnesses.iter().map(|w| Value::Text(w.clone())).collect()));
            }
            rec
        })
        .collect();
    vec![
        flag("passed", d.passed()),
        records("checks", checks),
        list("warnings", d.warnings.iter().map(|w| Value::Text(w.clone())).collect()),
    ]
}

fn witness_error(path: &Path, loc: Loc, msg: String) -> CliError {
    CliError::Parse { path: path.display().to_string(), source: ParseError { loc, msg } }
}

type NamePairs = Vec<(String, String)>;

/// Checks every row's names against the entities and splits rows by map.
fn witness_pairs(
    path: &Path,
    rows: &[WitnessRow],
    small: &Entity,
    big: &Entity,
    small_measures: &[ProbabilityTable],
    big_measures: &[ProbabilityTable],
) -> Result<[NamePairs; 4], CliError> {
    let has = |v: &[String], x: &str| v.iter().any(|n| n == x);
    let small_mu: Vec<String> = small_measures.iter().map(|t| t.name().to_string()).collect();
    let big_mu: Vec<String> = big_measures.iter().map(|t| t.name().to_string()).collect();
    let mut out: [NamePairs; 4] = Default::default();
    for r in rows {
        let (dom, cod, what_from, what_to, slot) = match r.map {
            MapKind::M => (big.state_names(), small.state_names(), "big-entity state", "small-entity state", 0),
            MapKind::N => (small.experiment_names(), big.experiment_names(), "small-entity experiment", "big-entity experiment", 1),
            MapKind::L => (small.outcome_names(), big.outcome_names(), "small-entity outcome", "big-entity outcome", 2),
            MapKind::K => (&small_mu[..], &big_mu[..], "small-entity measure", "big-entity measure", 3),
        };
        if !has(dom, &r.from.text) {
            return Err(witness_error(path, r.from.loc, format!("`{}` is not a {what_from}", r.from.text)));
        }
        if !has(cod, &r.to.text) {
            return Err(witness_error(path, r.to.loc, format!("`{}` is not a {what_to}", r.to.text)));
        }
        out[slot].push((r.from.text.clone(), r.to.text.clone()));
    }
    Ok(out)
}

fn witness_listing(pairs: &[NamePairs; 4], probabilistic: bool) -> Node {
    let show = |v: &NamePairs| {
        let mut v = v.clone();
        v.sort();
        v.into_iter().map(|(a, b)| Value::Text(format!("{a} -> {b}"))).collect()
    };
    let mut nodes = vec![list("m", show(&pairs[0])), list("n", show(&pairs[1])), list("l", show(&pairs[2]))];
    if probabilistic {
        nodes.push(list("k", show(&pairs[3])));
    }
    group("witness", nodes)
}

fn subentity(small: &Path, big: &Path, witness: &Path, probabilistic: bool, tol: f64) -> Result<(Vec<Node>, bool), CliError> {
    let (s, s_measures) = need_entity(small, load(small)?)?;
    let (b, b_measures) = need_entity(big, load(big)?)?;
    let wdoc = load(witness)?;
    let pairs = witness_pairs(witness, &wdoc.witness, &s, &b, &s_measures, &b_measures)?;
    let w = SubEntityWitness::from_names(&s, &b, &pairs[0], &pairs[1], &pairs[2])?;

    let mut nodes = vec![witness_listing(&pairs, probabilistic)];
    let structural = verify_sub_entity(&s, &b, &w)?;
    let mut ok = structural.passed();
    nodes.push(group("sub_entity", diagnostics(&structural)));
    if ok {
        let cont = preimage_continuity(&s, &b, &w)?;
        ok &= cont.passed();
        nodes.push(group("continuity", diagnostics(&cont)));
    }
    if probabilistic {
        for (path, measures) in [(small, &s_measures), (big, &b_measures)] {
            if measures.is_empty() {
                return Err(CliError::Usage(format!("{}: --probabilistic needs a [probability] section", path.display())));
            }
        }
        let mut md = Diagnostics::new();
        for (which, ent, ms) in [("small", &s, &s_measures), ("big", &b, &b_measures)] {
            for t in ms.iter() {
                md.absorb(&format!("{which} {}: ", t.name()), validate_measure(ent, t, tol));
            }
        }
        ok &= md.passed();
        nodes.push(group("measures", diagnostics(&md)));
        if md.passed() && structural.passed() {
            let mut k = vec![None; s_measures.len()];
            for (from, to) in &pairs[3] {
                let i = s_measures.iter().position(|t| t.name() == from).unwrap();
                k[i] = Some(b_measures.iter().position(|t| t.name() == to).unwrap());
            }
            let k: Vec<usize> = k
                .iter()
                .enumerate()
                .map(|(i, j)| {
                    j.ok_or_else(|| CliError::Usage(format!("k is not total: no image for `{}`", s_measures[i].name())))
                })
                .collect::<Result<_, _>>()?;
            let small_p = ProbabilisticEntity::new(s.clone(), s_measures.clone(), tol)?;
            let big_p = ProbabilisticEntity::new(b.clone(), b_measures.clone(), tol)?;
            let pd = verify_probabilistic_sub_entity(&small_p, &big_p, &w, &ProbabilityCorrespondence { k }, tol)?;
            ok &= pd.passed();
            nodes.push(group("probabilistic", diagnostics(&pd)));
        }
    }
    nodes.push(flag("passed", ok));
    Ok((nodes, ok))
}

fn qmachine(theta: f64, phi: f64, radius: f64, axis_theta: f64, axis_phi: f64) -> Result<Vec<Node>, CliError> {
    for (name, v) in [("theta", theta), ("phi", phi), ("axis-theta", axis_theta), ("axis-phi", axis_phi)] {
        if !v.is_finite() {
            return Err(CliError::Usage(format!("--{name} must be finite")));
        }
    }
    if !(0.0..=1.0).contains(&radius) {
        return Err(CliError::Usage(format!("--radius {radius} is outside [0,1]")));
    }
    let state = BallState::from_spherical(radius, theta, phi)?;
    let axis = SphereExperiment::from_angles(axis_theta, axis_phi);
    let (e1, e2) = qmachine_probability(&state, &axis);
    let w = qmachine_to_hilbert(&state);
    let fam = sphere_family(&axis);
    let (h1, h2) = (cq_probability(&fam, &w, 0)?, cq_probability(&fam, &w, 1)?);
    let point = |key: &str, v: [f64; 3]| group(key, vec![float("x", v[0]), float("y", v[1]), float("z", v[2])]);
    Ok(vec![
        group(
            "state",
            vec![float("radius", radius), float("theta", theta), float("phi", phi), point("point", state.point())],
        ),
        group("axis", vec![float("theta", axis_theta), float("phi", axis_phi), point("point", axis.axis())]),
        group("elastic", vec![float("p1", e1), float("p2", e2)]),
        group("hilbert", vec![float("p1", h1), float("p2", h2)]),
        float("max_difference", (e1 - h1).abs().max((e2 - h2).abs())),
    ])
}

fn verify(file: &Path, tol: f64) -> Result<(Vec<Node>, bool), CliError> {
    let (s, measures) = need_entity(file, load(file)?)?;
    let d = invariant_suite(&s)?;
    let mut ok = d.passed();
    let mut nodes = vec![entity_summary(&s), group("invariants", diagnostics(&d))];
    if !measures.is_empty() {
        let md = measure_suite(&s, &measures, tol);
        ok &= md.passed();
        nodes.push(group("measures", diagnostics(&md)));
    }
    nodes.push(flag("passed", ok));
    Ok((nodes, ok))
}

fn tensor(nh: usize, ng: usize, samples: usize, seed: u64) -> Result<(Vec<Node>, bool), CliError> {
    let r = verify_cq_sub_entity(nh, ng, samples, seed)?;
    let mut nodes = vec![
        int("seed", seed as usize),
        int("nh", r.dims.0),
        int("ng", r.dims.1),
        int("states", r.states),
        int("experiments", r.experiments),
        float("completed_max_residual", r.completed_max_residual),
        group(
            "product_search",
            vec![int("candidates", r.product_search.candidates), float("min_residual", r.product_search.min_residual)],
        ),
    ];
    if let Some(sg) = &r.singlet_search {
        nodes.push(group("singlet_search", vec![int("candidates", sg.candidates), float("min_residual", sg.min_residual)]));
    }
    nodes.push(group("checks", diagnostics(&r.diagnostics)));
    Ok((nodes, r.passed()))
}
