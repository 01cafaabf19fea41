//! Concrete reproducing kernel Hilbert space models.
//!
//! Three space kinds are supported: the standard n-dimensional space whose
//! kernel vectors are the basis vectors, and truncated Hardy/Bergman models
//! on the open unit disc, expressed in their orthonormal monomial bases.
//!
//! Every inequality in this crate is proved pointwise in the sample point
//! before any supremum is taken, so replacing the domain by a finite
//! [`SamplePlan`] keeps each inequality valid verbatim: both sides become
//! exact finite maxima.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::C64;

#[derive(Debug, Error)]
pub enum RkhsError {
    #[error("dimension must be at least 1")]
    InvalidDim,
    #[error("point {0:?} is outside the domain of the space")]
    OutOfDomain(Point),
    #[error("r_max must lie in (0, 1), got {0}")]
    InvalidRadius(f64),
    #[error("grid sizes must be at least 1")]
    InvalidGrid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    Standard,
    Hardy,
    Bergman,
}

impl std::str::FromStr for SpaceKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "standard" => Ok(SpaceKind::Standard),
            "hardy" => Ok(SpaceKind::Hardy),
            "bergman" => Ok(SpaceKind::Bergman),
            other => Err(format!("unknown space kind: {other}")),
        }
    }
}

/// A domain point: a basis index for the standard space, or a point of the
/// open unit disc for the analytic kinds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Point {
    Index(usize),
    Disc([f64; 2]),
}

impl Point {
    pub fn disc(re: f64, im: f64) -> Self {
        Point::Disc([re, im])
    }

    pub fn as_complex(&self) -> Option<Complex64> {
        match self {
            Point::Disc([re, im]) => Some(Complex64::new(*re, *im)),
            Point::Index(_) => None,
        }
    }
}

/// A concrete RKHS model: a kind, a truncation dimension and the rule
/// producing kernel vectors in the orthonormal basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSpace {
    pub kind: SpaceKind,
    pub dim: usize,
}

impl KernelSpace {
    pub fn new(kind: SpaceKind, dim: usize) -> Result<Self, RkhsError> {
        if dim < 1 {
            return Err(RkhsError::InvalidDim);
        }
        Ok(Self { kind, dim })
    }

    /// Coordinates of the (un-normalized) kernel vector k_lambda.
    ///
    /// Standard: the basis vector e_lambda. Hardy: conj(lambda)^m. Bergman:
    /// sqrt(m+1) * conj(lambda)^m, both in their orthonormal bases.
    pub fn kernel_vector(&self, point: Point) -> Result<Vec<C64>, RkhsError> {
        match (self.kind, point) {
            (SpaceKind::Standard, Point::Index(i)) => {
                if i >= self.dim {
                    return Err(RkhsError::OutOfDomain(point));
                }
                let mut v = vec![C64::new(0.0, 0.0); self.dim];
                v[i] = C64::new(1.0, 0.0);
                Ok(v)
            }
            (SpaceKind::Hardy, Point::Disc(_)) | (SpaceKind::Bergman, Point::Disc(_)) => {
                let lambda = point.as_complex().unwrap();
                if lambda.norm() >= 1.0 {
                    return Err(RkhsError::OutOfDomain(point));
                }
                let lbar = lambda.conj();
                let mut v = Vec::with_capacity(self.dim);
                let mut pw = C64::new(1.0, 0.0);
                for m in 0..self.dim {
                    let w = match self.kind {
                        SpaceKind::Hardy => pw,
                        SpaceKind::Bergman => pw * ((m as f64 + 1.0).sqrt()),
                        SpaceKind::Standard => unreachable!(),
                    };
                    v.push(w);
                    pw *= lbar;
                }
                Ok(v)
            }
            _ => Err(RkhsError::OutOfDomain(point)),
        }
    }

    /// Unit-normalized kernel vector.
    pub fn normalized_kernel(&self, point: Point) -> Result<Vec<C64>, RkhsError> {
        let mut v = self.kernel_vector(point)?;
        let norm = crate::linalg::vec_norm(&v);
        debug_assert!(norm > 0.0);
        for z in &mut v {
            *z /= norm;
        }
        Ok(v)
    }

    /// Default finite sampling of the domain. The standard space enumerates
    /// all indices; analytic spaces get the polar grid
    /// {(j r_max / n_r) e^{2 pi i k / n_theta}} plus the origin.
    pub fn default_sample(
        &self,
        n_r: usize,
        n_theta: usize,
        r_max: f64,
    ) -> Result<SamplePlan, RkhsError> {
        match self.kind {
            SpaceKind::Standard => Ok(SamplePlan {
                points: (0..self.dim).map(Point::Index).collect(),
                pair_mode: true,
            }),
            SpaceKind::Hardy | SpaceKind::Bergman => {
                if n_r < 1 || n_theta < 1 {
                    return Err(RkhsError::InvalidGrid);
                }
                if !(0.0 < r_max && r_max < 1.0) {
                    return Err(RkhsError::InvalidRadius(r_max));
                }
                let mut points = vec![Point::disc(0.0, 0.0)];
                for j in 1..=n_r {
                    let rho = r_max * j as f64 / n_r as f64;
                    for k in 0..n_theta {
                        let theta = 2.0 * std::f64::consts::PI * k as f64 / n_theta as f64;
                        points.push(Point::disc(rho * theta.cos(), rho * theta.sin()));
                    }
                }
                Ok(SamplePlan {
                    points,
                    pair_mode: true,
                })
            }
        }
    }
}

/// A finite multiset of domain points over which suprema/infima are taken.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplePlan {
    pub points: Vec<Point>,
    /// Whether the Berezin norm uses the full Cartesian square of `points`.
    pub pair_mode: bool,
}

impl SamplePlan {
    pub fn new(points: Vec<Point>, pair_mode: bool) -> Self {
        Self { points, pair_mode }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{inner, vec_norm};

    #[test]
    fn standard_kernel_is_basis_vector() {
        let sp = KernelSpace::new(SpaceKind::Standard, 2).unwrap();
        let v = sp.kernel_vector(Point::Index(0)).unwrap();
        assert_eq!(v, vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        assert!(sp.kernel_vector(Point::Index(2)).is_err());
        assert!(sp.kernel_vector(Point::disc(0.1, 0.0)).is_err());
    }

    #[test]
    fn hardy_kernel_real_point() {
        let sp = KernelSpace::new(SpaceKind::Hardy, 3).unwrap();
        let v = sp.kernel_vector(Point::disc(0.5, 0.0)).unwrap();
        for (got, want) in v.iter().zip([1.0, 0.5, 0.25]) {
            assert!((got - C64::new(want, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn bergman_kernel_real_point() {
        let sp = KernelSpace::new(SpaceKind::Bergman, 3).unwrap();
        let v = sp.kernel_vector(Point::disc(0.5, 0.0)).unwrap();
        let want = [1.0, 2f64.sqrt() * 0.5, 3f64.sqrt() * 0.25];
        for (got, want) in v.iter().zip(want) {
            assert!((got - C64::new(want, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn normalized_kernel_examples() {
        let sp = KernelSpace::new(SpaceKind::Hardy, 2).unwrap();
        let v = sp.normalized_kernel(Point::disc(0.6, 0.0)).unwrap();
        let scale = 1.36f64.sqrt();
        assert!((v[0] - C64::new(1.0 / scale, 0.0)).norm() < 1e-14);
        assert!((v[1] - C64::new(0.6 / scale, 0.0)).norm() < 1e-14);
        assert!((vec_norm(&v) - 1.0).abs() < 1e-14);

        let sp = KernelSpace::new(SpaceKind::Bergman, 4).unwrap();
        let v = sp.normalized_kernel(Point::disc(0.0, 0.0)).unwrap();
        assert!((v[0] - C64::new(1.0, 0.0)).norm() < 1e-15);
        for z in &v[1..] {
            assert_eq!(*z, C64::new(0.0, 0.0));
        }
    }

    #[test]
    fn domain_boundary_rejected() {
        let sp = KernelSpace::new(SpaceKind::Hardy, 4).unwrap();
        assert!(sp.kernel_vector(Point::disc(1.0, 0.0)).is_err());
        assert!(sp.kernel_vector(Point::disc(0.8, 0.8)).is_err());
    }

    #[test]
    fn default_sample_standard() {
        let sp = KernelSpace::new(SpaceKind::Standard, 4).unwrap();
        let plan = sp.default_sample(1, 1, 0.5).unwrap();
        assert_eq!(
            plan.points,
            vec![Point::Index(0), Point::Index(1), Point::Index(2), Point::Index(3)]
        );
    }

    #[test]
    fn default_sample_polar_grid() {
        let sp = KernelSpace::new(SpaceKind::Hardy, 8).unwrap();
        let plan = sp.default_sample(2, 4, 0.9).unwrap();
        assert_eq!(plan.len(), 9);
        assert_eq!(plan.points[0], Point::disc(0.0, 0.0));
        // radii 0.45 and 0.9 at angles 0, pi/2, pi, 3pi/2
        let lam = plan.points[1].as_complex().unwrap();
        assert!((lam - Complex64::new(0.45, 0.0)).norm() < 1e-12);
        for p in &plan.points[1..] {
            let r = p.as_complex().unwrap().norm();
            assert!((r - 0.45).abs() < 1e-12 || (r - 0.9).abs() < 1e-12);
        }

        let degenerate = sp.default_sample(1, 1, 0.9).unwrap();
        assert_eq!(degenerate.len(), 2);

        assert!(sp.default_sample(2, 4, 1.0).is_err());
        assert!(sp.default_sample(0, 4, 0.9).is_err());
    }

    #[test]
    fn reproducing_property_truncated() {
        // for a coefficient vector f, <f, k_lambda> = sum f_m lambda^m
        let lam = Complex64::new(0.3, -0.4);
        for kind in [SpaceKind::Hardy, SpaceKind::Bergman] {
            let n = 8;
            let sp = KernelSpace::new(kind, n).unwrap();
            let k = sp.kernel_vector(Point::Disc([lam.re, lam.im])).unwrap();
            // f with coefficients 1/(m+1) in the monomial basis z^m; convert
            // to the orthonormal basis for the Bergman case.
            let monomial: Vec<C64> = (0..n).map(|m| C64::new(1.0 / (m as f64 + 1.0), 0.0)).collect();
            let f: Vec<C64> = monomial
                .iter()
                .enumerate()
                .map(|(m, c)| match kind {
                    SpaceKind::Bergman => c / ((m as f64 + 1.0).sqrt()),
                    _ => *c,
                })
                .collect();
            let lhs = inner(&f, &k);
            let mut rhs = C64::new(0.0, 0.0);
            let mut pw = C64::new(1.0, 0.0);
            for c in &monomial {
                rhs += c * pw;
                pw *= lam;
            }
            assert!((lhs - rhs).norm() < 1e-10, "{kind:?}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn hardy_kernel_norm_geometric_sum() {
        let sp = KernelSpace::new(SpaceKind::Hardy, 16).unwrap();
        let lam = Complex64::new(0.5, 0.3);
        let k = sp.kernel_vector(Point::Disc([lam.re, lam.im])).unwrap();
        let norm_sq: f64 = (0..16).map(|m| lam.norm().powi(2 * m)).sum();
        assert!((vec_norm(&k).powi(2) - norm_sq).abs() < 1e-12);
    }
}
