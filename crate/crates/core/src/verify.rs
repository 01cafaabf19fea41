//! Vector-level lemma oracles, seeded random operator generation and the
//! batch verification harness.
//!
//! The generator uses ChaCha8 with independent standard Gaussian real and
//! imaginary parts, so identical specs produce bit-identical matrices on
//! every platform. Inequality violations never abort a suite run; they are
//! recorded with enough data to replay the instance.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{BoundContext, BoundError, BoundParams, BoundReport};
use crate::linalg::{inner, vec_norm, C64, ComplexMatrix, LinalgError};
use crate::rkhs::{KernelSpace, SamplePlan};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("operator is not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPsd(f64),
    #[error("vector e must be unit, got norm {0}")]
    NotUnit(f64),
    #[error("entries must be positive, got {0}")]
    NonPositiveEntry(f64),
    #[error("r must be at least 1, got {0}")]
    InvalidExponent(f64),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Result of a single lemma oracle evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

const LEMMA_TOL: f64 = 1e-10;

fn lemma_check(lhs: f64, rhs: f64) -> LemmaCheck {
    LemmaCheck {
        lhs,
        rhs,
        holds: lhs <= rhs + LEMMA_TOL * rhs.abs().max(1.0),
    }
}

/// |<Ax,x>| <= <|A|x,x>^{1/2} <|A*|x,x>^{1/2}.
pub fn check_lemma_mixed_cs(a: &ComplexMatrix, x: &[C64]) -> Result<LemmaCheck, VerifyError> {
    let ax = a.apply(x)?;
    let lhs = inner(&ax, x).norm();
    let ma = a.modulus_power(1.0)?;
    let mastar = a.adjoint_modulus_power(1.0)?;
    let qa = inner(&ma.apply(x)?, x).re.max(0.0);
    let qb = inner(&mastar.apply(x)?, x).re.max(0.0);
    Ok(lemma_check(lhs, qa.sqrt() * qb.sqrt()))
}

/// <Ax,x>^r <= <A^r x,x> for positive semidefinite A and unit x.
pub fn check_lemma_mccarthy(
    a: &ComplexMatrix,
    x: &[C64],
    r: f64,
) -> Result<LemmaCheck, VerifyError> {
    if r < 1.0 {
        return Err(VerifyError::InvalidExponent(r));
    }
    let eig = a.hermitian_eigen()?;
    let min = eig.values.first().copied().unwrap_or(0.0);
    if min < -1e-10 * a.frobenius_norm().max(1.0) {
        return Err(VerifyError::NotPsd(min));
    }
    let lhs = inner(&a.apply(x)?, x).re.max(0.0).powf(r);
    let ar = a.hermitian_power(r)?;
    let rhs = inner(&ar.apply(x)?, x).re;
    Ok(lemma_check(lhs, rhs))
}

/// |<Ax,y>| <= ||f(|A|)x|| ||g(|A*|)y|| with f(t)=t^{alpha_f}, g(t)=t^{1-alpha_f}.
pub fn check_lemma_kittaneh(
    a: &ComplexMatrix,
    x: &[C64],
    y: &[C64],
    alpha_f: f64,
) -> Result<LemmaCheck, VerifyError> {
    let lhs = inner(&a.apply(x)?, y).norm();
    let fa = a.modulus_power(alpha_f)?;
    let ga = a.adjoint_modulus_power(1.0 - alpha_f)?;
    let rhs = vec_norm(&fa.apply(x)?) * vec_norm(&ga.apply(y)?);
    Ok(lemma_check(lhs, rhs))
}

/// |<x,e><e,y>| <= (||x|| ||y|| + |<x,y>|)/2 for unit e.
pub fn check_lemma_buzano(x: &[C64], y: &[C64], e: &[C64]) -> Result<LemmaCheck, VerifyError> {
    let en = vec_norm(e);
    if (en - 1.0).abs() > 1e-10 {
        return Err(VerifyError::NotUnit(en));
    }
    let lhs = (inner(x, e) * inner(e, y)).norm();
    let rhs = 0.5 * (vec_norm(x) * vec_norm(y) + inner(x, y).norm());
    Ok(lemma_check(lhs, rhs))
}

/// (sum a_i)^r <= n^{r-1} sum a_i^r for positive a_i and r >= 1.
pub fn check_power_sum(a: &[f64], r: f64) -> Result<LemmaCheck, VerifyError> {
    if r < 1.0 {
        return Err(VerifyError::InvalidExponent(r));
    }
    for &v in a {
        if v <= 0.0 {
            return Err(VerifyError::NonPositiveEntry(v));
        }
    }
    let n = a.len() as f64;
    let lhs = a.iter().sum::<f64>().powf(r);
    let rhs = n.powf(r - 1.0) * a.iter().map(|v| v.powf(r)).sum::<f64>();
    Ok(lemma_check(lhs, rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorClass {
    General,
    Nilpotent,
    Normal,
    Selfadjoint,
    Unitary,
}

impl std::str::FromStr for OperatorClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "general" => Ok(Self::General),
            "nilpotent" => Ok(Self::Nilpotent),
            "normal" => Ok(Self::Normal),
            "selfadjoint" => Ok(Self::Selfadjoint),
            "unitary" => Ok(Self::Unitary),
            other => Err(format!("unknown operator class: {other}")),
        }
    }
}

/// Deterministic recipe for a random operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorSpec {
    pub class: OperatorClass,
    pub dim: usize,
    pub seed: u64,
    /// Scale to unit Frobenius norm after generation.
    #[serde(default)]
    pub normalize: bool,
}

fn gaussian_matrix(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            m[(i, j)] = C64::new(re, im);
        }
    }
    m
}

// Modified Gram-Schmidt on the columns of a Gaussian matrix.
fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, n);
    let mut cols: Vec<Vec<C64>> = (0..n)
        .map(|j| (0..n).map(|i| g[(i, j)]).collect())
        .collect();
    for j in 0..n {
        for k in 0..j {
            let proj = inner(&cols[j], &cols[k]);
            let prev = cols[k].clone();
            for (c, p) in cols[j].iter_mut().zip(&prev) {
                *c -= proj * p;
            }
        }
        let norm = vec_norm(&cols[j]);
        for c in &mut cols[j] {
            *c /= norm;
        }
    }
    let mut u = ComplexMatrix::zeros(n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            u[(i, j)] = v;
        }
    }
    u
}

/// Generate the matrix an [`OperatorSpec`] describes. Identical specs yield
/// bit-identical matrices.
pub fn random_operator(spec: &OperatorSpec) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.dim;
    let mut m = match spec.class {
        OperatorClass::General => gaussian_matrix(&mut rng, n),
        OperatorClass::Nilpotent => {
            let g = gaussian_matrix(&mut rng, n);
            let mut m = ComplexMatrix::zeros(n);
            for i in 0..n {
                for j in (i + 1)..n {
                    m[(i, j)] = g[(i, j)];
                }
            }
            m
        }
        OperatorClass::Normal => {
            let d = gaussian_matrix(&mut rng, n);
            let u = random_unitary(&mut rng, n);
            let mut diag = ComplexMatrix::zeros(n);
            for i in 0..n {
                diag[(i, i)] = d[(i, i)];
            }
            u.matmul(&diag).unwrap().matmul(&u.adjoint()).unwrap()
        }
        OperatorClass::Selfadjoint => gaussian_matrix(&mut rng, n).re_part(),
        OperatorClass::Unitary => random_unitary(&mut rng, n),
    };
    if spec.normalize {
        let norm = m.frobenius_norm();
        if norm > 0.0 {
            m = m.scale(C64::new(1.0 / norm, 0.0));
        }
    }
    m
}

/// Parameter grid walked by the suite harness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamGrid {
    pub r_values: Vec<f64>,
    pub alpha_values: Vec<f64>,
    pub nu_values: Vec<f64>,
    pub alpha_f_values: Vec<f64>,
}

impl Default for ParamGrid {
    fn default() -> Self {
        Self {
            r_values: vec![1.0, 1.5, 2.0],
            alpha_values: (0..11).map(|i| i as f64 / 10.0).collect(),
            nu_values: vec![0.25, 0.5, 0.75],
            alpha_f_values: vec![0.0, 0.5, 1.0],
        }
    }
}

/// One failing (or erroring) instance, with enough context to replay it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub spec: Option<OperatorSpec>,
    pub operator_label: String,
    pub bound_id: String,
    pub params: BoundParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<BoundReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundStats {
    pub pass: usize,
    pub fail: usize,
    pub errors: usize,
    pub min_slack: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_slack_report: Option<BoundReport>,
}

/// Aggregate outcome of a suite run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub per_bound: BTreeMap<String, BoundStats>,
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub errors: usize,
    pub failures: Vec<FailureRecord>,
    pub wall_time_secs: f64,
}

impl SuiteReport {
    fn record(&mut self, label: &str, spec: Option<OperatorSpec>, outcome: Result<BoundReport, BoundError>) {
        self.total += 1;
        match outcome {
            Ok(report) => {
                let stats = self.per_bound.entry(report.bound_id.clone()).or_default();
                if stats.min_slack.map_or(true, |s| report.slack < s) {
                    stats.min_slack = Some(report.slack);
                    stats.min_slack_report = Some(report.clone());
                }
                if report.holds {
                    self.pass += 1;
                    stats.pass += 1;
                } else {
                    self.fail += 1;
                    stats.fail += 1;
                    self.failures.push(FailureRecord {
                        spec,
                        operator_label: label.to_string(),
                        bound_id: report.bound_id.clone(),
                        params: report.params.clone(),
                        report: Some(report),
                        error: None,
                    });
                }
            }
            Err(err) => {
                self.errors += 1;
                self.failures.push(FailureRecord {
                    spec,
                    operator_label: label.to_string(),
                    bound_id: "error".into(),
                    params: BoundParams::default(),
                    report: None,
                    error: Some(err.to_string()),
                });
            }
        }
    }
}

/// Evaluate every bound operation for one operator over every in-range
/// parameter combination. Out-of-range combinations (theo6's exponent
/// constraint) are skipped, not errors.
pub fn check_all_bounds(
    ctx: &BoundContext,
    a: &ComplexMatrix,
    grid: &ParamGrid,
) -> Vec<Result<BoundReport, BoundError>> {
    let mut out = Vec::new();
    let adj = a.adjoint();
    for &r in &grid.r_values {
        for &alpha in &grid.alpha_values {
            out.push(ctx.bound_alpha_mixed_powers(a, r, alpha));
            for swap in [false, true] {
                out.push(ctx.bound_with_square(a, r, alpha, swap));
                out.push(ctx.bound_arithmetic_mean_power(a, r, alpha, swap));
            }
        }
        out.push(ctx.bound_buzano_split(a, r));
        out.push(ctx.bound_sum_buzano(&[a.clone(), adj.clone()], r));
        for &nu in &grid.nu_values {
            if r < 2.0 * nu.max(1.0 - nu) {
                continue;
            }
            for &alpha_f in &grid.alpha_f_values {
                out.push(ctx.bound_weighted_triple_sum(
                    std::slice::from_ref(a),
                    std::slice::from_ref(a),
                    std::slice::from_ref(a),
                    r,
                    nu,
                    alpha_f,
                ));
            }
        }
        out.push(ctx.bound_cartesian_sqrt2_pair(a, &adj, r));
    }
    for &alpha_f in &grid.alpha_f_values {
        out.push(ctx.bound_triple_single(a, a, a, alpha_f));
    }
    out.push(ctx.bound_cartesian_sqrt2_single(a));
    out.push(ctx.lower_bound_cartesian(a));
    out.push(ctx.berezin_norm_sum_bound(a, &adj));
    for adjoint_variant in [false, true] {
        out.push(ctx.berezin_norm_sum_bound_v2(a, &adj, adjoint_variant));
    }
    out
}

/// Run every bound over every spec-generated operator on every matching
/// space/plan pair. Failures and per-instance errors are recorded, never
/// fatal. Deterministic up to `wall_time_secs`.
pub fn run_suite(
    contexts: &[(KernelSpace, SamplePlan)],
    specs: &[OperatorSpec],
    grid: &ParamGrid,
) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport {
        per_bound: BTreeMap::new(),
        total: 0,
        pass: 0,
        fail: 0,
        errors: 0,
        failures: Vec::new(),
        wall_time_secs: 0.0,
    };
    for spec in specs {
        let a = random_operator(spec);
        let label = format!("{:?}-{}-seed{}", spec.class, spec.dim, spec.seed);
        for (space, plan) in contexts {
            if space.dim != spec.dim {
                continue;
            }
            let ctx = BoundContext::new(space, plan);
            for outcome in check_all_bounds(&ctx, &a, grid) {
                report.record(&label, Some(*spec), outcome);
            }
        }
    }
    report.wall_time_secs = start.elapsed().as_secs_f64();
    report
}
