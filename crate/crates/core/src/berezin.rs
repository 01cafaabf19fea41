//! Berezin symbol, Berezin number/norm, the infimum c(A) and a
//! numerical-radius oracle.
//!
//! All suprema and infima are exact maxima/minima over a [`SamplePlan`];
//! refinement is always an explicit caller choice via a denser plan. Ties
//! are broken by plan order so reports are deterministic.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{inner, C64, ComplexMatrix, LinalgError};
use crate::rkhs::{KernelSpace, Point, RkhsError, SamplePlan};

#[derive(Debug, Error)]
pub enum BerezinError {
    #[error("operator dimension {0} does not match space dimension {1}")]
    DimensionMismatch(usize, usize),
    #[error("sample plan is empty")]
    EmptyPlan,
    #[error("operation requires a plan with pair_mode enabled")]
    PairModeRequired,
    #[error("numerical radius grid needs at least 4 angles, got {0}")]
    GridTooCoarse(usize),
    #[error(transparent)]
    Rkhs(#[from] RkhsError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Sample point (or pair) attaining an extremum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Witness {
    Point(Point),
    Pair(Point, Point),
}

/// A finite-sample value of ber, c or the Berezin norm, with the witness
/// attaining it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BerezinEstimate {
    pub value: f64,
    pub witness: Witness,
    pub sample_size: usize,
}

fn check_dims(space: &KernelSpace, a: &ComplexMatrix) -> Result<(), BerezinError> {
    if a.dim() != space.dim {
        return Err(BerezinError::DimensionMismatch(a.dim(), space.dim));
    }
    Ok(())
}

/// The Berezin symbol <A k_hat, k_hat> at one point.
pub fn berezin_symbol(
    space: &KernelSpace,
    a: &ComplexMatrix,
    point: Point,
) -> Result<C64, BerezinError> {
    check_dims(space, a)?;
    let k = space.normalized_kernel(point)?;
    let ak = a.apply(&k)?;
    Ok(inner(&ak, &k))
}

/// The two-point symbol <A k_hat_lambda, k_hat_mu>.
pub fn berezin_pair_symbol(
    space: &KernelSpace,
    a: &ComplexMatrix,
    lambda: Point,
    mu: Point,
) -> Result<C64, BerezinError> {
    check_dims(space, a)?;
    let kl = space.normalized_kernel(lambda)?;
    let km = space.normalized_kernel(mu)?;
    let ak = a.apply(&kl)?;
    Ok(inner(&ak, &km))
}

/// Maximum of |symbol| over the plan; the finite-sample Berezin number.
pub fn berezin_number(
    space: &KernelSpace,
    a: &ComplexMatrix,
    plan: &SamplePlan,
) -> Result<BerezinEstimate, BerezinError> {
    extremum_over_points(space, a, plan, true)
}

/// Minimum of |symbol| over the plan; the finite-sample c(A).
pub fn berezin_c(
    space: &KernelSpace,
    a: &ComplexMatrix,
    plan: &SamplePlan,
) -> Result<BerezinEstimate, BerezinError> {
    extremum_over_points(space, a, plan, false)
}

fn extremum_over_points(
    space: &KernelSpace,
    a: &ComplexMatrix,
    plan: &SamplePlan,
    want_max: bool,
) -> Result<BerezinEstimate, BerezinError> {
    check_dims(space, a)?;
    if plan.is_empty() {
        return Err(BerezinError::EmptyPlan);
    }
    let mut best: Option<(f64, Point)> = None;
    for &p in &plan.points {
        let v = berezin_symbol(space, a, p)?.norm();
        let better = match best {
            None => true,
            Some((bv, _)) => {
                if want_max {
                    v > bv
                } else {
                    v < bv
                }
            }
        };
        if better {
            best = Some((v, p));
        }
    }
    let (value, witness) = best.unwrap();
    Ok(BerezinEstimate {
        value,
        witness: Witness::Point(witness),
        sample_size: plan.len(),
    })
}

/// Maximum of |<A k_hat_lambda, k_hat_mu>| over all ordered pairs from the
/// plan; the finite-sample Berezin norm.
pub fn berezin_norm(
    space: &KernelSpace,
    a: &ComplexMatrix,
    plan: &SamplePlan,
) -> Result<BerezinEstimate, BerezinError> {
    check_dims(space, a)?;
    if plan.is_empty() {
        return Err(BerezinError::EmptyPlan);
    }
    if !plan.pair_mode {
        return Err(BerezinError::PairModeRequired);
    }
    // cache normalized kernels and their images under A
    let kernels: Result<Vec<_>, BerezinError> = plan
        .points
        .iter()
        .map(|&p| Ok(space.normalized_kernel(p)?))
        .collect();
    let kernels = kernels?;
    let images: Result<Vec<_>, BerezinError> =
        kernels.iter().map(|k| Ok(a.apply(k)?)).collect();
    let images = images?;

    let mut best: Option<(f64, Point, Point)> = None;
    for (i, img) in images.iter().enumerate() {
        for (j, km) in kernels.iter().enumerate() {
            let v = inner(img, km).norm();
            if best.map_or(true, |(bv, _, _)| v > bv) {
                best = Some((v, plan.points[i], plan.points[j]));
            }
        }
    }
    let (value, lam, mu) = best.unwrap();
    Ok(BerezinEstimate {
        value,
        witness: Witness::Pair(lam, mu),
        sample_size: plan.len() * plan.len(),
    })
}

/// Symbol values in plan order, as a multiset (no dedup).
pub fn berezin_set(
    space: &KernelSpace,
    a: &ComplexMatrix,
    plan: &SamplePlan,
) -> Result<Vec<C64>, BerezinError> {
    plan.points
        .iter()
        .map(|&p| berezin_symbol(space, a, p))
        .collect()
}

/// Grid lower bound of the numerical radius: the maximum over
/// theta_k = 2 pi k / n_theta of the top eigenvalue of Re(e^{i theta} A).
/// Satisfies w_grid >= cos(pi/n_theta) * w(A).
pub fn numerical_radius(a: &ComplexMatrix, n_theta: usize) -> Result<f64, BerezinError> {
    if n_theta < 4 {
        return Err(BerezinError::GridTooCoarse(n_theta));
    }
    let mut best = f64::NEG_INFINITY;
    for k in 0..n_theta {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / n_theta as f64;
        let rotated = a.scale(C64::from_polar(1.0, theta));
        let eig = rotated.re_part().hermitian_eigen()?;
        let top = eig.values.last().copied().unwrap_or(0.0);
        if top > best {
            best = top;
        }
    }
    Ok(best)
}
