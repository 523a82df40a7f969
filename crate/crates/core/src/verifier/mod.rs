//! Identity registry and the engine that checks each identity exactly.
//!
//! Every identity reduces to a list of [`Pair`]s whose two sides must be
//! equal: truncated series at a numeric `q`, or polynomials with symbolic `q`.
//! [`verify`] samples parameters deterministically from a seed, evaluates the
//! pairs and reports the first disagreement.

mod qde;
mod registry;
pub mod sampling;
mod series_ids;
mod symbolic_ids;
pub mod transform;

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::polyring::{MultiPoly, PolyError, Symbol};
use crate::qkernel::KernelError;
use crate::qoperators::OperatorError;
use crate::rational::ExactRational;
use crate::tseries::{SeriesContext, SeriesError, TruncatedSeries};

pub use qde::{
    cauchy_expansion_qde, e_frak_qde, e_tilde_qde, l_tilde_qde, r_qde,
};
pub use registry::{find, registry};
pub use sampling::{Knob, ParameterAssignment};
pub use transform::{transform_check, transform_coefficients, CoeffSequence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("no parameter sample satisfied the constraints of {id} after {attempts} attempts")]
    SampleExhaustion { id: String, attempts: usize },
    #[error("unknown identity {0}")]
    UnknownIdentity(String),
    #[error("identity needs a series context")]
    MissingContext,
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// How an identity is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    /// Polynomial equality with symbolic `q` over a finite range of indices.
    SymbolicPoly,
    /// Coefficient-wise equality of truncated series at numeric `q`.
    Series,
    /// A q-difference equation checked on a function generated from a seed.
    GenerateAndCheck,
    /// A coefficient-sequence transform checked as a series identity.
    Transform,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::SymbolicPoly => "symbolic-poly",
            Kind::Series => "series",
            Kind::GenerateAndCheck => "generate-and-check",
            Kind::Transform => "transform",
        })
    }
}

/// Deliberate corruption of an identity, used to show the checker can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Negates the right-hand coefficient at this order of the first pair
    /// (for polynomial pairs: the right side of this case).
    NegateRhsCoefficient(usize),
    /// Adds 1 to the right-hand coefficient at this order (or case).
    AddToRhs(usize),
    /// Removes the `(-1)^n q^{n(n-1)/2}` weight from the identity's
    /// hypergeometric sums.
    DropQBinomialFactor,
}

/// Two sides that must agree.
#[derive(Clone, Debug)]
pub enum Pair {
    Series { lhs: TruncatedSeries, rhs: TruncatedSeries },
    Poly { lhs: MultiPoly, rhs: MultiPoly },
}

impl Pair {
    pub fn series(lhs: TruncatedSeries, rhs: TruncatedSeries) -> Pair {
        Pair::Series { lhs, rhs }
    }

    pub fn poly(lhs: MultiPoly, rhs: MultiPoly) -> Pair {
        Pair::Poly { lhs, rhs }
    }
}

/// Where two sides first disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    /// Index of the failing pair.
    pub case: usize,
    /// Series order of the disagreement; for polynomial pairs, the case index.
    pub order: usize,
    pub lhs: String,
    pub rhs: String,
}

/// First disagreement across `pairs`, in order.
pub fn first_mismatch(pairs: &[Pair]) -> Result<Option<Mismatch>, VerifyError> {
    for (case, pair) in pairs.iter().enumerate() {
        match pair {
            Pair::Series { lhs, rhs } => {
                if let Some(order) = lhs.first_mismatch(rhs)? {
                    return Ok(Some(Mismatch {
                        case,
                        order,
                        lhs: lhs.coeff(order).to_string(),
                        rhs: rhs.coeff(order).to_string(),
                    }));
                }
            }
            Pair::Poly { lhs, rhs } => {
                if lhs != rhs {
                    return Ok(Some(Mismatch { case, order: case, lhs: lhs.to_string(), rhs: rhs.to_string() }));
                }
            }
        }
    }
    Ok(None)
}

fn apply_mutation(pairs: &mut [Pair], mutation: Mutation) -> Result<(), VerifyError> {
    let (index, negate) = match mutation {
        Mutation::NegateRhsCoefficient(k) => (k, true),
        Mutation::AddToRhs(k) => (k, false),
        Mutation::DropQBinomialFactor => return Ok(()),
    };
    let perturb = |c: &MultiPoly| if negate { -c } else { c + &MultiPoly::one() };
    match pairs.first_mut() {
        Some(Pair::Series { rhs, .. }) if index <= rhs.order() => {
            let mut coeffs = rhs.coeffs().to_vec();
            coeffs[index] = perturb(&coeffs[index]);
            *rhs = TruncatedSeries::from_coeffs(rhs.context(), coeffs)?;
        }
        Some(Pair::Poly { .. }) => {
            if let Some(Pair::Poly { rhs, .. }) = pairs.get_mut(index) {
                *rhs = perturb(rhs);
            }
        }
        _ => {}
    }
    Ok(())
}

/// Everything a check function sees for one sample.
#[derive(Clone, Debug)]
pub struct Instance {
    pub ctx: Option<SeriesContext>,
    pub params: ParameterAssignment,
    pub seed: u64,
    pub mutation: Option<Mutation>,
}

impl Instance {
    pub fn ctx(&self) -> Result<&SeriesContext, VerifyError> {
        self.ctx.as_ref().ok_or(VerifyError::MissingContext)
    }

    pub fn p(&self, sym: Symbol) -> MultiPoly {
        self.params.poly(sym)
    }

    pub fn rng(&self) -> rand_chacha::ChaCha8Rng {
        sampling::rng_from(self.seed)
    }

    pub fn drop_q_factor(&self) -> bool {
        self.mutation == Some(Mutation::DropQBinomialFactor)
    }
}

pub type PairsFn = fn(&Instance) -> Result<Vec<Pair>, VerifyError>;
pub type SeededFn = fn(&MultiPoly) -> Result<Vec<Pair>, VerifyError>;

/// How the sides of an identity are produced.
#[derive(Clone, Copy)]
pub enum Check {
    /// Builds the pairs from sampled parameters (and the sample's RNG).
    Pairs(PairsFn),
    /// Builds the pairs from a seed polynomial in `var`, drawn at random.
    Seeded { var: Symbol, build: SeededFn },
}

/// One registry entry.
#[derive(Clone)]
pub struct IdentitySpec {
    pub id: &'static str,
    pub slug: &'static str,
    /// The identity written out as a formula.
    pub formula: &'static str,
    pub kind: Kind,
    /// Parameters sampled as nonzero rationals (series and transform kinds).
    pub params: &'static [Symbol],
    pub knobs: &'static [Knob],
    pub constraint: Option<fn(&ParameterAssignment) -> bool>,
    /// Symbolic checks that draw random inputs run once per sample; others once.
    pub randomized: bool,
    pub check: Check,
}

impl fmt::Debug for IdentitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentitySpec")
            .field("id", &self.id)
            .field("slug", &self.slug)
            .field("kind", &self.kind)
            .finish()
    }
}

impl IdentitySpec {
    /// Runs a seeded check on a caller-supplied seed polynomial.
    pub fn check_seeded(&self, seed: &MultiPoly) -> Result<Vec<Pair>, VerifyError> {
        match self.check {
            Check::Seeded { build, .. } => build(seed),
            Check::Pairs(_) => Err(VerifyError::UnknownIdentity(format!("{} is not seeded", self.id))),
        }
    }

    /// Runs a pair check on a fixed instance.
    pub fn check_instance(&self, inst: &Instance) -> Result<Vec<Pair>, VerifyError> {
        let mut pairs = match self.check {
            Check::Pairs(f) => f(inst)?,
            Check::Seeded { var, build } => {
                let mut rng = inst.rng();
                build(&sampling::random_univariate(&mut rng, var, SEED_DEGREE))?
            }
        };
        if let Some(m) = inst.mutation {
            apply_mutation(&mut pairs, m)?;
        }
        Ok(pairs)
    }
}

/// Degree of random seed polynomials for generate-and-check identities.
pub const SEED_DEGREE: usize = 4;

/// Run parameters.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub order: usize,
    pub q_values: Vec<ExactRational>,
    pub samples: usize,
    pub seed: u64,
    pub fail_fast: bool,
    pub mutation: Option<Mutation>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            order: 8,
            q_values: vec![ExactRational::new(1, 2), ExactRational::new(2, 3), ExactRational::new(-1, 3)],
            samples: 3,
            seed: 20240601,
            fail_fast: false,
            mutation: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleReport {
    pub assignment: BTreeMap<String, String>,
    pub q: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs_coeff: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs_coeff: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    /// The identity's formula.
    pub paper_ref: String,
    pub kind: Kind,
    pub samples: Vec<SampleReport>,
    pub status: Status,
}

impl VerificationReport {
    pub fn first_failure(&self) -> Option<&SampleReport> {
        self.samples.iter().find(|s| s.status != Status::Pass)
    }
}

struct Task {
    q_index: usize,
    q: Option<ExactRational>,
    sample_index: usize,
}

/// Checks one identity under `cfg`. Builder failures become `error` samples.
pub fn verify(spec: &IdentitySpec, cfg: &VerifyConfig) -> VerificationReport {
    let numeric = matches!(spec.kind, Kind::Series | Kind::Transform);
    let mut tasks = Vec::new();
    if numeric {
        for (q_index, q) in cfg.q_values.iter().enumerate() {
            for sample_index in 0..cfg.samples {
                tasks.push(Task { q_index, q: Some(q.clone()), sample_index });
            }
        }
    } else {
        let n = if spec.randomized || matches!(spec.check, Check::Seeded { .. }) { cfg.samples } else { 1 };
        for sample_index in 0..n {
            tasks.push(Task { q_index: 0, q: None, sample_index });
        }
    }

    let samples: Vec<SampleReport> = tasks.par_iter().map(|t| run_sample(spec, cfg, t)).collect();
    let status = if samples.iter().any(|s| s.status == Status::Fail) {
        Status::Fail
    } else if samples.iter().any(|s| s.status == Status::Error) {
        Status::Error
    } else {
        Status::Pass
    };
    VerificationReport {
        id: spec.id.to_string(),
        paper_ref: spec.formula.to_string(),
        kind: spec.kind,
        samples,
        status,
    }
}

fn draw_params(spec: &IdentitySpec, seed: u64) -> Result<ParameterAssignment, VerifyError> {
    let mut rng = sampling::rng_from(seed);
    for _ in 0..sampling::MAX_RETRIES {
        let a = sampling::draw_assignment(&mut rng, spec.params, spec.knobs);
        if spec.constraint.is_none_or(|c| c(&a)) {
            return Ok(a);
        }
    }
    Err(VerifyError::SampleExhaustion { id: spec.id.to_string(), attempts: sampling::MAX_RETRIES })
}

fn run_sample(spec: &IdentitySpec, cfg: &VerifyConfig, task: &Task) -> SampleReport {
    let seed = sampling::sample_seed(cfg.seed, spec.id, task.q_index, task.sample_index);
    let mut report = SampleReport {
        assignment: BTreeMap::new(),
        q: task.q.as_ref().map_or_else(|| "symbolic".to_string(), |q| q.to_string()),
        status: Status::Pass,
        case: None,
        first_mismatch_order: None,
        lhs_coeff: None,
        rhs_coeff: None,
        error: None,
    };
    let outcome = (|| {
        let params = draw_params(spec, seed)?;
        report.assignment = params.to_strings();
        let ctx = match &task.q {
            Some(q) => Some(SeriesContext::new(Symbol::T, cfg.order, q.clone())?),
            None => None,
        };
        // The parameter draw and the check's own randomness use distinct streams.
        let inst = Instance { ctx, params, seed: seed.rotate_left(32) ^ 0x5eed, mutation: cfg.mutation };
        let pairs = spec.check_instance(&inst)?;
        Ok::<_, VerifyError>((first_mismatch(&pairs)?, pairs.len()))
    })();
    match outcome {
        Ok((None, _)) => {}
        Ok((Some(m), n_pairs)) => {
            report.status = Status::Fail;
            let series_pair = numeric_kind(spec.kind);
            if series_pair && n_pairs > 1 {
                report.case = Some(m.case);
            }
            report.first_mismatch_order = Some(m.order);
            report.lhs_coeff = Some(m.lhs);
            report.rhs_coeff = Some(m.rhs);
        }
        Err(e) => {
            report.status = Status::Error;
            report.error = Some(e.to_string());
        }
    }
    report
}

fn numeric_kind(kind: Kind) -> bool {
    matches!(kind, Kind::Series | Kind::Transform)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub errored: usize,
    /// Only filled in when timing is requested, so reports stay reproducible.
    pub wall_ms: Option<u64>,
}

/// The full machine-readable result of a run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub version: u32,
    pub seed: u64,
    pub order: usize,
    pub q_values: Vec<String>,
    pub identities: Vec<VerificationReport>,
    pub summary: Summary,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0 && self.summary.errored == 0
    }
}

pub const REPORT_VERSION: u32 = 1;

/// Verifies `specs` in registry order. Identities run in parallel unless
/// `fail_fast` is set, in which case the run stops at the first non-pass.
pub fn run(specs: &[&IdentitySpec], cfg: &VerifyConfig, timing: bool) -> RunReport {
    let start = Instant::now();
    let identities: Vec<VerificationReport> = if cfg.fail_fast {
        let mut out = Vec::new();
        for spec in specs {
            let r = verify(spec, cfg);
            let stop = r.status != Status::Pass;
            out.push(r);
            if stop {
                break;
            }
        }
        out
    } else {
        specs.par_iter().map(|s| verify(s, cfg)).collect()
    };
    let count = |st: Status| identities.iter().filter(|r| r.status == st).count();
    let summary = Summary {
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        errored: count(Status::Error),
        wall_ms: timing.then(|| start.elapsed().as_millis() as u64),
    };
    RunReport {
        version: REPORT_VERSION,
        seed: cfg.seed,
        order: cfg.order,
        q_values: cfg.q_values.iter().map(|q| q.to_string()).collect(),
        identities,
        summary,
    }
}
