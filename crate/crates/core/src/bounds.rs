//! One verifier per Berezin inequality: each operation evaluates both sides
//! on a shared space/plan and reports the slack.
//!
//! Sharing the plan between lhs and rhs is load-bearing: every inequality
//! is proved pointwise before the supremum, so it holds verbatim on any
//! finite sample as long as both sides use the same one.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::berezin::{
    berezin_c, berezin_norm, berezin_number, BerezinError, Witness,
};
use crate::linalg::{C64, ComplexMatrix, LinalgError};
use crate::rkhs::{KernelSpace, SamplePlan};

#[derive(Debug, Error)]
pub enum BoundError {
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("unknown bound id: {0}")]
    UnknownBound(String),
    #[error("operator list is empty")]
    EmptyList,
    #[error("operator lists have mismatched lengths")]
    LengthMismatch,
    #[error(transparent)]
    Berezin(#[from] BerezinError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Scalar parameters of a bound, recorded in the report. Absent fields do
/// not apply to the bound in question.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_f: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub swap: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Witnesses {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Witness>,
}

/// Outcome of one inequality check on a shared space/plan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub bound_id: String,
    pub params: BoundParams,
    pub lhs: f64,
    /// Middle term for chained inequalities (theo7); absent otherwise.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mid: Option<f64>,
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
    pub tol: f64,
    pub witnesses: Witnesses,
}

fn tol_for(rhs: f64) -> f64 {
    1e-9 * rhs.abs().max(1.0)
}

fn finish(
    bound_id: &str,
    params: BoundParams,
    lhs: f64,
    rhs: f64,
    witnesses: Witnesses,
) -> BoundReport {
    let tol = tol_for(rhs);
    let slack = rhs - lhs;
    BoundReport {
        bound_id: bound_id.to_string(),
        params,
        lhs,
        mid: None,
        rhs,
        slack,
        holds: slack >= -tol,
        tol,
        witnesses,
    }
}

/// Space and plan shared by both sides of every bound evaluation.
#[derive(Debug, Clone, Copy)]
pub struct BoundContext<'a> {
    pub space: &'a KernelSpace,
    pub plan: &'a SamplePlan,
}

impl<'a> BoundContext<'a> {
    pub fn new(space: &'a KernelSpace, plan: &'a SamplePlan) -> Self {
        Self { space, plan }
    }

    fn ber(&self, a: &ComplexMatrix) -> Result<crate::BerezinEstimate, BoundError> {
        Ok(berezin_number(self.space, a, self.plan)?)
    }

    fn check_r(&self, r: f64) -> Result<(), BoundError> {
        if !(r >= 1.0 && r.is_finite()) {
            return Err(BoundError::ParamOutOfRange(format!("r = {r}, need r >= 1")));
        }
        Ok(())
    }

    fn check_alpha(&self, alpha: f64) -> Result<(), BoundError> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(BoundError::ParamOutOfRange(format!(
                "alpha = {alpha}, need alpha in [0, 1]"
            )));
        }
        Ok(())
    }

    /// ber^{2r}(A) <= ber(alpha |A|^{2r} + (1-alpha) |A*|^{2r}).
    pub fn bound_alpha_mixed_powers(
        &self,
        a: &ComplexMatrix,
        r: f64,
        alpha: f64,
    ) -> Result<BoundReport, BoundError> {
        self.check_r(r)?;
        self.check_alpha(alpha)?;
        let lhs_est = self.ber(a)?;
        let rhs_op = a
            .modulus_power(2.0 * r)?
            .scale(C64::new(alpha, 0.0))
            .add(&a.adjoint_modulus_power(2.0 * r)?.scale(C64::new(1.0 - alpha, 0.0)))?;
        let rhs_est = self.ber(&rhs_op)?;
        Ok(finish(
            "theo1",
            BoundParams {
                r: Some(r),
                alpha: Some(alpha),
                ..Default::default()
            },
            lhs_est.value.powf(2.0 * r),
            rhs_est.value,
            Witnesses {
                lhs: Some(lhs_est.witness),
                rhs: Some(rhs_est.witness),
            },
        ))
    }

    /// ber^{2r}(A) <= (alpha/2) ber^r(A^2)
    ///   + ber((alpha/4)|A|^{2r} + (1 - 3 alpha/4)|A*|^{2r}),
    /// with the moduli exchanged when `swap` is set. alpha = 1 is the
    /// special ber^{2r}(A) <= (1/2) ber^r(A^2) + (1/4) ber(|A|^{2r}+|A*|^{2r}).
    pub fn bound_with_square(
        &self,
        a: &ComplexMatrix,
        r: f64,
        alpha: f64,
        swap: bool,
    ) -> Result<BoundReport, BoundError> {
        self.check_r(r)?;
        self.check_alpha(alpha)?;
        let lhs_est = self.ber(a)?;
        let a_sq = a.matmul(a)?;
        let ber_sq = self.ber(&a_sq)?;
        let (first, second) = if swap {
            (a.adjoint_modulus_power(2.0 * r)?, a.modulus_power(2.0 * r)?)
        } else {
            (a.modulus_power(2.0 * r)?, a.adjoint_modulus_power(2.0 * r)?)
        };
        let mix = first
            .scale(C64::new(alpha / 4.0, 0.0))
            .add(&second.scale(C64::new(1.0 - 0.75 * alpha, 0.0)))?;
        let mix_est = self.ber(&mix)?;
        let rhs = 0.5 * alpha * ber_sq.value.powf(r) + mix_est.value;
        Ok(finish(
            "theo3",
            BoundParams {
                r: Some(r),
                alpha: Some(alpha),
                swap: Some(swap),
                ..Default::default()
            },
            lhs_est.value.powf(2.0 * r),
            rhs,
            Witnesses {
                lhs: Some(lhs_est.witness),
                rhs: Some(mix_est.witness),
            },
        ))
    }

    /// ber^{2r}(A) <= ber(alpha ((|A|+|A*|)/2)^{2r} + (1-alpha)|A*|^{2r}),
    /// with |A|^{2r} in the second term when `swap` is set.
    pub fn bound_arithmetic_mean_power(
        &self,
        a: &ComplexMatrix,
        r: f64,
        alpha: f64,
        swap: bool,
    ) -> Result<BoundReport, BoundError> {
        self.check_r(r)?;
        self.check_alpha(alpha)?;
        let lhs_est = self.ber(a)?;
        let mean = a
            .modulus_power(1.0)?
            .add(&a.adjoint_modulus_power(1.0)?)?
            .scale(C64::new(0.5, 0.0));
        let mean_pow = mean.hermitian_power(2.0 * r)?;
        let tail = if swap {
            a.modulus_power(2.0 * r)?
        } else {
            a.adjoint_modulus_power(2.0 * r)?
        };
        let rhs_op = mean_pow
            .scale(C64::new(alpha, 0.0))
            .add(&tail.scale(C64::new(1.0 - alpha, 0.0)))?;
        let rhs_est = self.ber(&rhs_op)?;
        Ok(finish(
            "theo4",
            BoundParams {
                r: Some(r),
                alpha: Some(alpha),
                swap: Some(swap),
                ..Default::default()
            },
            lhs_est.value.powf(2.0 * r),
            rhs_est.value,
            Witnesses {
                lhs: Some(lhs_est.witness),
                rhs: Some(rhs_est.witness),
            },
        ))
    }

    /// ber^{2r}(A) <= (1/4) ber(|A|^{2r}+|A*|^{2r}) + (1/2) ber(|A|^r |A*|^r).
    pub fn bound_buzano_split(
        &self,
        a: &ComplexMatrix,
        r: f64,
    ) -> Result<BoundReport, BoundError> {
        self.check_r(r)?;
        let lhs_est = self.ber(a)?;
        let sum = a
            .modulus_power(2.0 * r)?
            .add(&a.adjoint_modulus_power(2.0 * r)?)?;
        let sum_est = self.ber(&sum)?;
        // |A|^r |A*|^r need not be Hermitian; its Berezin number is still
        // defined through the symbol.
        let prod = a.modulus_power(r)?.matmul(&a.adjoint_modulus_power(r)?)?;
        let prod_est = self.ber(&prod)?;
        let rhs = 0.25 * sum_est.value + 0.5 * prod_est.value;
        Ok(finish(
            "theo5",
            BoundParams {
                r: Some(r),
                ..Default::default()
            },
            lhs_est.value.powf(2.0 * r),
            rhs,
            Witnesses {
                lhs: Some(lhs_est.witness),
                rhs: Some(sum_est.witness),
            },
        ))
    }

    /// ber^{2r}(sum A_i) <= (n^{2r-1}/4) ber(sum(|A_i|^{2r}+|A_i*|^{2r}))
    ///   + (n^{2r-1}/2) sum_i ber(|A_i|^r |A_i*|^r).
    pub fn bound_sum_buzano(
        &self,
        a_list: &[ComplexMatrix],
        r: f64,
    ) -> Result<BoundReport, BoundError> {
        self.check_r(r)?;
        if a_list.is_empty() {
            return Err(BoundError::EmptyList);
        }
        let n = a_list.len();
        let dim = a_list[0].dim();
        let mut total = ComplexMatrix::zeros(dim);
        let mut mod_sum = ComplexMatrix::zeros(dim);
        let mut prod_ber_sum = 0.0;
        for a in a_list {
            total = total.add(a)?;
            mod_sum = mod_sum
                .add(&a.modulus_power(2.0 * r)?)?
                .add(&a.adjoint_modulus_power(2.0 * r)?)?;
            let prod = a.modulus_power(r)?.matmul(&a.adjoint_modulus_power(r)?)?;
            prod_ber_sum += self.ber(&prod)?.value;
        }
        let lhs_est = self.ber(&total)?;
        let mod_est = self.ber(&mod_sum)?;
        let coeff = (n as f64).powf(2.0 * r - 1.0);
        let rhs = coeff / 4.0 * mod_est.value + coeff / 2.0 * prod_ber_sum;
        Ok(finish(
            "theo5gen",
            BoundParams {
                r: Some(r),
                n: Some(n),
                ..Default::default()
            },
            lhs_est.value.powf(2.0 * r),
            rhs,
            Witnesses {
                lhs: Some(lhs_est.witness),
                rhs: Some(mod_est.witness),
            },
        ))
    }

    /// ber^r(sum A_i* X_i B_i) <= sqrt(2) n^{r-1} ber(sum(
    ///   nu [B_i* f^2(|X_i|) B_i]^{r/2nu}
    ///   + i (1-nu) [A_i* g^2(|X_i*|) A_i]^{r/2(1-nu)})),
    /// with f(t) = t^{alpha_f}, g(t) = t^{1-alpha_f}.
    pub fn bound_weighted_triple_sum(
        &self,
        a_list: &[ComplexMatrix],
        x_list: &[ComplexMatrix],
        b_list: &[ComplexMatrix],
        r: f64,
        nu: f64,
        alpha_f: f64,
    ) -> Result<BoundReport, BoundError> {
        if a_list.is_empty() {
            return Err(BoundError::EmptyList);
        }
        if a_list.len() != x_list.len() || a_list.len() != b_list.len() {
            return Err(BoundError::LengthMismatch);
        }
        if !(nu > 0.0 && nu < 1.0) {
            return Err(BoundError::ParamOutOfRange(format!(
                "nu = {nu}, need nu in (0, 1)"
            )));
        }
        let r_min = 2.0 * nu.max(1.0 - nu);
        if r < r_min {
            return Err(BoundError::ParamOutOfRange(format!(
                "r = {r}, need r >= 2 max(nu, 1-nu) = {r_min}"
            )));
        }
        self.check_alpha(alpha_f)?;
        let n = a_list.len();
        let dim = a_list[0].dim();
        let mut triple_sum = ComplexMatrix::zeros(dim);
        let mut rhs_sum = ComplexMatrix::zeros(dim);
        for ((a, x), b) in a_list.iter().zip(x_list).zip(b_list) {
            triple_sum = triple_sum.add(&a.adjoint().matmul(&x.matmul(b)?)?)?;
            // f^2(|X|) = |X|^{2 alpha_f}, g^2(|X*|) = |X*|^{2(1-alpha_f)}
            let fx = x.modulus_power(2.0 * alpha_f)?;
            let gx = x.adjoint_modulus_power(2.0 * (1.0 - alpha_f))?;
            let first = b
                .adjoint()
                .matmul(&fx.matmul(b)?)?
                .hermitian_power(r / (2.0 * nu))?;
            let second = a
                .adjoint()
                .matmul(&gx.matmul(a)?)?
                .hermitian_power(r / (2.0 * (1.0 - nu)))?;
            rhs_sum = rhs_sum
                .add(&first.scale(C64::new(nu, 0.0)))?
                .add(&second.scale(C64::new(0.0, 1.0 - nu)))?;
        }
        let lhs_est = self.ber(&triple_sum)?;
        let rhs_est = self.ber(&rhs_sum)?;
        let rhs = 2f64.sqrt() * (n as f64).powf(r - 1.0) * rhs_est.value;
        Ok(finish(
            "theo6",
            BoundParams {
                r: Some(r),
                nu: Some(nu),
                alpha_f: Some(alpha_f),
                n: Some(n),
                ..Default::default()
            },
            lhs_est.value.powf(r),
            rhs,
            Witnesses {
                lhs: Some(lhs_est.witness),
                rhs: Some(rhs_est.witness),
            },
        ))
    }

    /// ber(A*XB) <= (1/sqrt 2) ber(B*|X|^{2 alpha}B + i A*|X*|^{2(1-alpha)}A).
    pub fn bound_triple_single(
        &self,
        a: &ComplexMatrix,
        x: &ComplexMatrix,
        b: &ComplexMatrix,
        alpha: f64,
    ) -> Result<BoundReport, BoundError> {
        self.check_alpha(alpha)?;
        let triple = a.adjoint().matmul(&x.matmul(b)?)?;
        let lhs_est = self.ber(&triple)?;
        let first = b.adjoint().matmul(&x.modulus_power(2.0 * alpha)?.matmul(b)?)?;
        let second = a
            .adjoint()
            .matmul(&x.adjoint_modulus_power(2.0 * (1.0 - alpha))?.matmul(a)?)?;
        let rhs_op = first.add(&second.scale(C64::new(0.0, 1.0)))?;
        let rhs_est = self.ber(&rhs_op)?;
        let rhs = rhs_est.value / 2f64.sqrt();
        Ok(finish(
            "theo6cor20",
            BoundParams {
                alpha: Some(alpha),
                ..Default::default()
            },
            lhs_est.value,
            rhs,
            Witnesses {
                lhs: Some(lhs_est.witness),
                rhs: Some(rhs_est.witness),
            },
        ))
    }

    /// ber(A) <= (1/sqrt 2) ber(|A| + i |A*|).
    pub fn bound_cartesian_sqrt2_single(
        &self,
        a: &ComplexMatrix,
    ) -> Result<BoundReport, BoundError> {
        let lhs_est = self.ber(a)?;
        let rhs_op = a
            .modulus_power(1.0)?
            .add(&a.adjoint_modulus_power(1.0)?.scale(C64::new(0.0, 1.0)))?;
        let rhs_est = self.ber(&rhs_op)?;
        Ok(finish(
            "theo6cor4",
            BoundParams {
                variant: Some("single".into()),
                ..Default::default()
            },
            lhs_est.value,
            rhs_est.value / 2f64.sqrt(),
            Witnesses {
                lhs: Some(lhs_est.witness),
                rhs: Some(rhs_est.witness),
            },
        ))
    }

    /// ber^r(A*B) <= (1/sqrt 2) ber(|B|^{2r} + i |A|^{2r}).
    pub fn bound_cartesian_sqrt2_pair(
        &self,
        a: &ComplexMatrix,
        b: &ComplexMatrix,
        r: f64,
    ) -> Result<BoundReport, BoundError> {
        self.check_r(r)?;
        let lhs_est = self.ber(&a.adjoint().matmul(b)?)?;
        let rhs_op = b
            .modulus_power(2.0 * r)?
            .add(&a.modulus_power(2.0 * r)?.scale(C64::new(0.0, 1.0)))?;
        let rhs_est = self.ber(&rhs_op)?;
        Ok(finish(
            "theo6cor4",
            BoundParams {
                r: Some(r),
                variant: Some("pair".into()),
                ..Default::default()
            },
            lhs_est.value.powf(r),
            rhs_est.value / 2f64.sqrt(),
            Witnesses {
                lhs: Some(lhs_est.witness),
                rhs: Some(rhs_est.witness),
            },
        ))
    }

    /// ber^2(Re A) + ber^2(Im A) + c^2(Re A) + c^2(Im A)
    ///   <= 2 ber^2(A) <= 2 ||A||_ber^2.
    /// `holds` requires both links of the chain; `mid` carries the middle
    /// term and `slack` the outer gap rhs - lhs.
    pub fn lower_bound_cartesian(
        &self,
        a: &ComplexMatrix,
    ) -> Result<BoundReport, BoundError> {
        let re = a.re_part();
        let im = a.im_part();
        let ber_re = self.ber(&re)?;
        let ber_im = self.ber(&im)?;
        let c_re = berezin_c(self.space, &re, self.plan)?;
        let c_im = berezin_c(self.space, &im, self.plan)?;
        let ber_a = self.ber(a)?;
        let norm_a = berezin_norm(self.space, a, self.plan)?;
        let lhs = ber_re.value.powi(2)
            + ber_im.value.powi(2)
            + c_re.value.powi(2)
            + c_im.value.powi(2);
        let mid = 2.0 * ber_a.value.powi(2);
        let rhs = 2.0 * norm_a.value.powi(2);
        let tol = tol_for(rhs);
        let holds = lhs <= mid + tol && mid <= rhs + tol;
        Ok(BoundReport {
            bound_id: "theo7".into(),
            params: BoundParams::default(),
            lhs,
            mid: Some(mid),
            rhs,
            slack: rhs - lhs,
            holds,
            tol,
            witnesses: Witnesses {
                lhs: Some(ber_a.witness),
                rhs: Some(norm_a.witness),
            },
        })
    }

    /// ||A+B||_ber^2 <= ||A||_ber^2 + ||B||_ber^2
    ///   + ber^{1/2}(A*A) ber^{1/2}(B*B) + ber(A*B).
    pub fn berezin_norm_sum_bound(
        &self,
        a: &ComplexMatrix,
        b: &ComplexMatrix,
    ) -> Result<BoundReport, BoundError> {
        let sum = a.add(b)?;
        let lhs_est = berezin_norm(self.space, &sum, self.plan)?;
        let na = berezin_norm(self.space, a, self.plan)?;
        let nb = berezin_norm(self.space, b, self.plan)?;
        let ber_ata = self.ber(&a.adjoint().matmul(a)?)?;
        let ber_btb = self.ber(&b.adjoint().matmul(b)?)?;
        let ber_atb = self.ber(&a.adjoint().matmul(b)?)?;
        let rhs = na.value.powi(2)
            + nb.value.powi(2)
            + ber_ata.value.sqrt() * ber_btb.value.sqrt()
            + ber_atb.value;
        Ok(finish(
            "theo8",
            BoundParams::default(),
            lhs_est.value.powi(2),
            rhs,
            Witnesses {
                lhs: Some(lhs_est.witness),
                rhs: Some(na.witness),
            },
        ))
    }

    /// ||A+B||_ber^2 <= ||A||_ber^2 + ||B||_ber^2
    ///   + (1/2) ber(A*A + B*B) + ber(A*B); the adjoint variant uses
    ///   AA* + BB* and AB*.
    pub fn berezin_norm_sum_bound_v2(
        &self,
        a: &ComplexMatrix,
        b: &ComplexMatrix,
        adjoint_variant: bool,
    ) -> Result<BoundReport, BoundError> {
        let sum = a.add(b)?;
        let lhs_est = berezin_norm(self.space, &sum, self.plan)?;
        let na = berezin_norm(self.space, a, self.plan)?;
        let nb = berezin_norm(self.space, b, self.plan)?;
        let (gram_sum, cross) = if adjoint_variant {
            (
                a.matmul(&a.adjoint())?.add(&b.matmul(&b.adjoint())?)?,
                a.matmul(&b.adjoint())?,
            )
        } else {
            (
                a.adjoint().matmul(a)?.add(&b.adjoint().matmul(b)?)?,
                a.adjoint().matmul(b)?,
            )
        };
        let ber_gram = self.ber(&gram_sum)?;
        let ber_cross = self.ber(&cross)?;
        let rhs = na.value.powi(2) + nb.value.powi(2) + 0.5 * ber_gram.value + ber_cross.value;
        Ok(finish(
            "theo9",
            BoundParams {
                variant: Some(if adjoint_variant { "adjoint" } else { "plain" }.into()),
                ..Default::default()
            },
            lhs_est.value.powi(2),
            rhs,
            Witnesses {
                lhs: Some(lhs_est.witness),
                rhs: Some(na.witness),
            },
        ))
    }

    /// Right-hand side of an alpha-parameterized bound, as a function of
    /// alpha. Used by the minimizer.
    fn alpha_objective(
        &self,
        bound_id: &str,
        a: &ComplexMatrix,
        r: f64,
        alpha: f64,
    ) -> Result<f64, BoundError> {
        match bound_id {
            "theo1" => Ok(self.bound_alpha_mixed_powers(a, r, alpha)?.rhs),
            "theo3" => Ok(self.bound_with_square(a, r, alpha, false)?.rhs),
            "theo3_swap" => Ok(self.bound_with_square(a, r, alpha, true)?.rhs),
            "theo4" => Ok(self.bound_arithmetic_mean_power(a, r, alpha, false)?.rhs),
            "theo4_swap" => Ok(self.bound_arithmetic_mean_power(a, r, alpha, true)?.rhs),
            other => Err(BoundError::UnknownBound(other.to_string())),
        }
    }

    fn report_at_alpha(
        &self,
        bound_id: &str,
        a: &ComplexMatrix,
        r: f64,
        alpha: f64,
    ) -> Result<BoundReport, BoundError> {
        match bound_id {
            "theo1" => self.bound_alpha_mixed_powers(a, r, alpha),
            "theo3" => self.bound_with_square(a, r, alpha, false),
            "theo3_swap" => self.bound_with_square(a, r, alpha, true),
            "theo4" => self.bound_arithmetic_mean_power(a, r, alpha, false),
            "theo4_swap" => self.bound_arithmetic_mean_power(a, r, alpha, true),
            other => Err(BoundError::UnknownBound(other.to_string())),
        }
    }

    /// Minimize the rhs of an alpha-parameterized bound over alpha in [0,1]:
    /// uniform grid scan followed by golden-section refinement around the
    /// grid minimizer. Ties break to the smallest alpha.
    pub fn minimize_bound_over_alpha(
        &self,
        bound_id: &str,
        a: &ComplexMatrix,
        r: f64,
        grid_size: usize,
    ) -> Result<(f64, BoundReport), BoundError> {
        let grid_size = grid_size.max(2);
        let mut best_idx = 0;
        let mut best_val = f64::INFINITY;
        for i in 0..grid_size {
            let alpha = i as f64 / (grid_size - 1) as f64;
            let v = self.alpha_objective(bound_id, a, r, alpha)?;
            if v < best_val {
                best_val = v;
                best_idx = i;
            }
        }
        let step = 1.0 / (grid_size - 1) as f64;
        let lo = (best_idx as f64 * step - step).max(0.0);
        let hi = (best_idx as f64 * step + step).min(1.0);
        let (alpha_gs, val_gs) = golden_section(
            |alpha| self.alpha_objective(bound_id, a, r, alpha),
            lo,
            hi,
            1e-6,
        )?;
        let (alpha_star, _) = if val_gs < best_val {
            (alpha_gs, val_gs)
        } else {
            (best_idx as f64 * step, best_val)
        };
        let report = self.report_at_alpha(bound_id, a, r, alpha_star)?;
        Ok((alpha_star, report))
    }
}

/// Golden-section search for the minimum of `f` on [lo, hi], shrinking the
/// bracket to the given width. Returns the best evaluated point.
pub fn golden_section<E>(
    mut f: impl FnMut(f64) -> Result<f64, E>,
    mut lo: f64,
    mut hi: f64,
    width: f64,
) -> Result<(f64, f64), E> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > width {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        }
    }
    if f1 <= f2 {
        Ok((x1, f1))
    } else {
        Ok((x2, f2))
    }
}
