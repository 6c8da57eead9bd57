//! The subsystem `H` of `H ⊗ G` as a sub-entity.
//!
//! With density states the witness is `m = partial trace`, `n = lifting`,
//! `l = lifted outcome`, and it satisfies the probabilistic sub-entity
//! contract. With ray states only, an entangled composite state has no ray
//! of `H` reproducing its transported probabilities; this is shown by
//! search and the smallest residual found is reported.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::density::DensityOperator;
use super::entity::{completed_quantum_entity, QuantumEntity, DEFAULT_OUTCOME_TOL};
use super::linalg::{c, check_dimension, kron, identity, trace_product, ComplexMatrix, Ket, VALIDATION_TOL};
use super::machine::ray_state;
use super::random::{random_density, random_ket, random_pure_density, random_spectral_family};
use super::spectral::{spectral_family_from_hermitian, SpectralFamily, DEFAULT_CLUSTER_TOL};
use super::tensor::{lift_experiment, partial_trace, singlet};
use super::density::density_from_ray;
use crate::diagnostics::Diagnostics;
use crate::entity::{OutcomeId, StateId};
use crate::error::{Error, Result};
use crate::morphism::{verify_probabilistic_sub_entity, verify_sub_entity, ProbabilityCorrespondence, SubEntityWitness};

/// Minimal ray residual above which the entangled sample counts as
/// unreproducible.
pub const STANDARD_FAILURE_THRESHOLD: f64 = 0.1;

/// Default number of candidate rays in the standard search.
pub const DEFAULT_RAY_CANDIDATES: usize = 10_000;

/// Largest `n_H · n_G` accepted.
pub const MAX_COMPOSITE_DIMENSION: usize = 16;

/// Projections spanning the Hermitian operators on `C^n`: the
/// computational basis and the eigenfamilies of the real and imaginary
/// off-diagonal units.
pub fn spanning_experiments(n: usize) -> Result<Vec<(String, SpectralFamily)>> {
    check_dimension(n)?;
    let mut out = vec![("basis".to_string(), SpectralFamily::computational(n)?)];
    for j in 0..n {
        for k in j + 1..n {
            let mut x = ComplexMatrix::zeros(n, n);
            x[(j, k)] = c(1.0, 0.0);
            x[(k, j)] = c(1.0, 0.0);
            let mut y = ComplexMatrix::zeros(n, n);
            y[(j, k)] = c(0.0, -1.0);
            y[(k, j)] = c(0.0, 1.0);
            out.push((format!("x{}{}", j + 1, k + 1), spectral_family_from_hermitian(&x, DEFAULT_CLUSTER_TOL)?));
            out.push((format!("y{}{}", j + 1, k + 1), spectral_family_from_hermitian(&y, DEFAULT_CLUSTER_TOL)?));
        }
    }
    Ok(out)
}

/// Outcome of the ray search for one target.
#[derive(Debug, Clone)]
pub struct RaySearch {
    pub candidates: usize,
    /// `min_c max_{E,k} |⟨c, E_k c⟩ − target_k(E)|`.
    pub min_residual: f64,
    pub best: Ket,
}

/// Searches rays of `C^n` for one reproducing `targets[i][k]` on
/// `families[i]`. Dimension 2 uses a `θ × φ` grid on the Bloch sphere,
/// larger dimensions random rays. The principal eigenvector of `hint` is
/// always tried as well.
pub fn standard_ray_search(
    families: &[SpectralFamily],
    targets: &[Vec<f64>],
    hint: Option<&DensityOperator>,
    candidates: usize,
    rng: &mut ChaCha8Rng,
) -> RaySearch {
    let n = families[0].dim();
    let residual = |c: &Ket| {
        families
            .iter()
            .zip(targets)
            .flat_map(|(f, t)| f.projections().iter().zip(t).map(move |(p, &v)| (c.expectation(p).re - v).abs()))
            .fold(0.0, f64::max)
    };
    let mut best: Option<(f64, Ket)> = None;
    let mut count = 0;
    let mut offer = |k: Ket, best: &mut Option<(f64, Ket)>| {
        count += 1;
        let r = residual(&k);
        if best.as_ref().is_none_or(|(b, _)| r < *b) {
            *best = Some((r, k));
        }
    };
    if let Some(w) = hint {
        offer(w.principal_ray(), &mut best);
    }
    if n == 2 {
        let side = ((candidates as f64).sqrt().floor() as usize).max(2);
        for i in 0..side {
            for j in 0..side {
                let theta = PI * i as f64 / (side - 1) as f64;
                let phi = 2.0 * PI * j as f64 / side as f64;
                offer(ray_state(theta, phi), &mut best);
            }
        }
    } else {
        for _ in 0..candidates {
            offer(random_ket(n, rng), &mut best);
        }
    }
    let (min_residual, best) = best.expect("at least one candidate");
    RaySearch { candidates: count, min_residual, best }
}

#[derive(Debug, Clone)]
pub struct CqSubEntityReport {
    pub dims: (usize, usize),
    /// Composite states checked, including the product and entangled ones.
    pub states: usize,
    pub experiments: usize,
    pub diagnostics: Diagnostics,
    /// `max |tr(m(W') E_k) − tr(W' (E_k ⊗ I))|` over states and outcomes.
    pub completed_max_residual: f64,
    pub product_search: RaySearch,
    pub singlet_search: Option<RaySearch>,
}

impl CqSubEntityReport {
    pub fn passed(&self) -> bool {
        self.diagnostics.passed()
    }
}

const TRANSPORT: &str = "tr(m(W') E_k) = tr(W' (E_k ⊗ I))";
const REDUCED: &str = "partial trace yields a density operator";
const L_TOTAL: &str = "l is defined on every outcome";
const PRODUCT: &str = "a ray reproduces the product state";
const ENTANGLED: &str = "no ray reproduces the singlet";

/// Builds both completed entities on `samples` random composite states
/// (plus a product state and, when both factors allow, the singlet) and
/// verifies the witness, then runs the ray searches.
pub fn verify_cq_sub_entity(nh: usize, ng: usize, samples: usize, seed: u64) -> Result<CqSubEntityReport> {
    verify_cq_sub_entity_with(nh, ng, samples, DEFAULT_RAY_CANDIDATES, seed)
}

pub fn verify_cq_sub_entity_with(
    nh: usize,
    ng: usize,
    samples: usize,
    candidates: usize,
    seed: u64,
) -> Result<CqSubEntityReport> {
    check_dimension(nh)?;
    check_dimension(ng)?;
    if nh * ng > MAX_COMPOSITE_DIMENSION {
        return Err(Error::Capacity {
            what: "composite dimension".into(),
            needed: (nh * ng) as u128,
            limit: MAX_COMPOSITE_DIMENSION as u128,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut experiments = spanning_experiments(nh)?;
    let spanning = experiments.len();
    for r in 1..=2 {
        experiments.push((format!("r{r}"), random_spectral_family(nh, &mut rng)));
    }
    let lifted: Vec<(String, SpectralFamily)> =
        experiments.iter().map(|(n, f)| Ok((n.clone(), lift_experiment(f, ng)?))).collect::<Result<_>>()?;

    let mut big_states: Vec<(String, DensityOperator)> = Vec::new();
    let product = random_ket(nh, &mut rng).tensor(&random_ket(ng, &mut rng));
    big_states.push(("product".into(), density_from_ray(&product)));
    let has_singlet = nh >= 2 && ng >= 2;
    if has_singlet {
        big_states.push(("singlet".into(), density_from_ray(&singlet(nh, ng)?)));
    }
    for i in 0..samples {
        let w = if i % 2 == 0 { random_density(nh * ng, &mut rng) } else { random_pure_density(nh * ng, &mut rng) };
        big_states.push((format!("w{:03}", i + 1), w));
    }

    let mut d = Diagnostics::new();
    for name in [REDUCED, TRANSPORT] {
        d.ensure(name);
    }
    let mut small_states = Vec::with_capacity(big_states.len());
    let mut worst: f64 = 0.0;
    for (name, w) in &big_states {
        match partial_trace(w, (nh, ng)) {
            Ok(r) => {
                for ((en, f), (_, lf)) in experiments.iter().zip(&lifted) {
                    for (k, (p, lp)) in f.projections().iter().zip(lf.projections()).enumerate() {
                        let res = (trace_product(r.matrix(), p) - trace_product(w.matrix(), lp)).norm();
                        worst = worst.max(res);
                        d.record(TRANSPORT, res <= VALIDATION_TOL, || format!("{name}, {en}.{}: residual {res:e}", k + 1));
                    }
                }
                small_states.push((name.clone(), r));
            }
            Err(e) => d.record(REDUCED, false, || format!("{name}: {e}")),
        }
    }
    let searches = |rng: &mut ChaCha8Rng, w: &DensityOperator| {
        let fams: Vec<SpectralFamily> = lifted[..spanning].iter().map(|(_, f)| f.clone()).collect();
        let targets: Vec<Vec<f64>> =
            fams.iter().map(|f| f.projections().iter().map(|p| trace_product(w.matrix(), p).re).collect()).collect();
        let small: Vec<SpectralFamily> = experiments[..spanning].iter().map(|(_, f)| f.clone()).collect();
        let hint = partial_trace(w, (nh, ng)).ok();
        standard_ray_search(&small, &targets, hint.as_ref(), candidates, rng)
    };
    let product_search = searches(&mut rng, &big_states[0].1);
    d.record(PRODUCT, product_search.min_residual <= VALIDATION_TOL, || {
        format!("min residual {:e}", product_search.min_residual)
    });
    let singlet_search = has_singlet.then(|| searches(&mut rng, &big_states[1].1));
    if let Some(s) = &singlet_search {
        d.record(ENTANGLED, s.min_residual > STANDARD_FAILURE_THRESHOLD, || {
            format!("min residual {:e} over {} rays", s.min_residual, s.candidates)
        });
    }

    if d.check(REDUCED).is_none_or(|c| c.passed()) {
        let small = completed_quantum_entity(&experiments, &small_states, DEFAULT_OUTCOME_TOL)?;
        let big = completed_quantum_entity(&lifted, &big_states, DEFAULT_OUTCOME_TOL)?;
        match witness(&small, &big, ng) {
            Some(w) => {
                d.ensure(L_TOTAL);
                d.absorb("sub-entity: ", verify_sub_entity(small.entity(), big.entity(), &w)?);
                let k = ProbabilityCorrespondence { k: vec![0] };
                d.absorb("probabilistic: ", verify_probabilistic_sub_entity(&small.prob, &big.prob, &w, &k, VALIDATION_TOL)?);
            }
            None => d.record(L_TOTAL, false, || "an outcome of H has no lifted counterpart".into()),
        }
    }

    Ok(CqSubEntityReport {
        dims: (nh, ng),
        states: big_states.len(),
        experiments: experiments.len(),
        diagnostics: d,
        completed_max_residual: worst,
        product_search,
        singlet_search,
    })
}

fn witness(small: &QuantumEntity, big: &QuantumEntity, ng: usize) -> Option<SubEntityWitness> {
    let (s, b) = (small.entity(), big.entity());
    let ig = identity(ng);
    let m = b.state_names().iter().map(|n| s.state_id(n).ok()).collect::<Option<Vec<StateId>>>()?;
    let n = s.experiment_names().iter().map(|e| b.experiment_id(e).ok()).collect::<Option<Vec<_>>>()?;
    let l = small.projectors.iter().map(|p| big.outcome_for(&kron(p, &ig))).collect::<Option<Vec<OutcomeId>>>()?;
    SubEntityWitness::new(s, b, m, n, l).ok()
}
