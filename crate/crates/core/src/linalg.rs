//! Dense complex matrix arithmetic and Hermitian functional calculus.
//!
//! Everything here is dense, square and desk-scale (n <= 256). The
//! eigensolver is a cyclic complex Jacobi iteration, which is accurate and
//! dependency-free at these sizes.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Shorthand used throughout the crate.
pub type C64 = Complex64;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is not Hermitian: ||H - H*||_F = {0:.3e} exceeds tolerance")]
    NotHermitian(f64),
    #[error("Jacobi eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
}

/// Dense square complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![C64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Build from rows; every row must have length `rows.len()`.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self, LinalgError> {
        let n = rows.len();
        for r in rows {
            if r.len() != n {
                return Err(LinalgError::InvalidMatrix(format!(
                    "row of length {} in a matrix of dimension {}",
                    r.len(),
                    n
                )));
            }
        }
        let data: Vec<C64> = rows.iter().flatten().copied().collect();
        for z in &data {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(LinalgError::InvalidMatrix("non-finite entry".into()));
            }
        }
        Ok(Self { n, data })
    }

    /// Diagonal matrix from real entries.
    pub fn diag_real(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.n != other.n {
            return Err(LinalgError::DimensionMismatch(self.n, other.n));
        }
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.n != other.n {
            return Err(LinalgError::DimensionMismatch(self.n, other.n));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { n: self.n, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.n != other.n {
            return Err(LinalgError::DimensionMismatch(self.n, other.n));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self { n: self.n, data })
    }

    pub fn scale(&self, alpha: C64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|z| alpha * z).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[C64]) -> Result<Vec<C64>, LinalgError> {
        if x.len() != self.n {
            return Err(LinalgError::DimensionMismatch(self.n, x.len()));
        }
        let mut y = vec![C64::new(0.0, 0.0); self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                y[i] += self[(i, j)] * x[j];
            }
        }
        Ok(y)
    }

    /// Hermitian part (A + A*)/2.
    pub fn re_part(&self) -> Self {
        let adj = self.adjoint();
        self.add(&adj).unwrap().scale(C64::new(0.5, 0.0))
    }

    /// Skew part divided by i: (A - A*)/(2i). Hermitian.
    pub fn im_part(&self) -> Self {
        let adj = self.adjoint();
        self.sub(&adj).unwrap().scale(C64::new(0.0, -0.5))
    }

    fn hermitian_defect(&self) -> f64 {
        self.sub(&self.adjoint()).unwrap().frobenius_norm()
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
    /// rotations. Eigenvalues are returned ascending; only the
    /// reconstruction V diag(w) V* = H is contractual, not the eigenvector
    /// phases or tie ordering.
    pub fn hermitian_eigen(&self) -> Result<HermitianEigen, LinalgError> {
        let n = self.n;
        let h_norm = self.frobenius_norm();
        let defect = self.hermitian_defect();
        if defect > 1e-10 * h_norm.max(f64::MIN_POSITIVE) {
            return Err(LinalgError::NotHermitian(defect));
        }
        let mut a = self.clone();
        // symmetrize so round-off in the input cannot bias the sweep
        a = a.re_part();
        let mut v = Self::identity(n);
        let tol = 1e-24 * h_norm * h_norm;
        let max_sweeps = 50;

        let off = |m: &Self| -> f64 {
            let mut s = 0.0;
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        s += m[(i, j)].norm_sqr();
                    }
                }
            }
            s
        };

        let mut converged = off(&a) <= tol || n < 2;
        let mut sweeps = 0;
        while !converged && sweeps < max_sweeps {
            for p in 0..n {
                for q in (p + 1)..n {
                    let g = a[(p, q)];
                    if g.norm() == 0.0 {
                        continue;
                    }
                    let alpha = a[(p, p)].re;
                    let beta = a[(q, q)].re;
                    let gm = g.norm();
                    let phase = g / gm;
                    let theta = 0.5 * (2.0 * gm).atan2(alpha - beta);
                    let c = theta.cos();
                    let s = theta.sin();
                    // U is identity except U[p][p]=c, U[p][q]=-phase*s,
                    // U[q][p]=conj(phase)*s, U[q][q]=c; update A <- U* A U.
                    let upp = C64::new(c, 0.0);
                    let upq = -phase * s;
                    let uqp = phase.conj() * s;
                    let uqq = C64::new(c, 0.0);
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = akp * upp + akq * uqp;
                        a[(k, q)] = akp * upq + akq * uqq;
                    }
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = upp.conj() * apk + uqp.conj() * aqk;
                        a[(q, k)] = upq.conj() * apk + uqq.conj() * aqk;
                    }
                    a[(p, q)] = C64::new(0.0, 0.0);
                    a[(q, p)] = C64::new(0.0, 0.0);
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * upp + vkq * uqp;
                        v[(k, q)] = vkp * upq + vkq * uqq;
                    }
                }
            }
            sweeps += 1;
            converged = off(&a) <= tol;
        }
        if !converged {
            return Err(LinalgError::NoConvergence(max_sweeps));
        }

        let mut idx: Vec<usize> = (0..n).collect();
        let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
        idx.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());
        let values: Vec<f64> = idx.iter().map(|&i| diag[i]).collect();
        let mut vectors = Self::zeros(n);
        for (col, &src) in idx.iter().enumerate() {
            for row in 0..n {
                vectors[(row, col)] = v[(row, src)];
            }
        }
        Ok(HermitianEigen { values, vectors })
    }

    /// V diag(f(w)) V* for Hermitian input. `f` sees the raw eigenvalues;
    /// fractional-power callers clip negatives first (see [`clipped_power`]).
    pub fn func_of_hermitian(
        &self,
        f: impl Fn(f64) -> f64,
    ) -> Result<ComplexMatrix, LinalgError> {
        let eig = self.hermitian_eigen()?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for k in 0..n {
            let fv = f(eig.values[k]);
            if !fv.is_finite() {
                return Err(LinalgError::InvalidMatrix(format!(
                    "function undefined at eigenvalue {}",
                    eig.values[k]
                )));
            }
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += eig.vectors[(i, k)] * eig.vectors[(j, k)].conj() * fv;
                }
            }
        }
        Ok(out)
    }

    /// H^p for Hermitian H with the clipped-spectrum convention: negative
    /// eigenvalues go to 0 first, and 0^0 = 1.
    pub fn hermitian_power(&self, p: f64) -> Result<ComplexMatrix, LinalgError> {
        self.func_of_hermitian(|t| clipped_power(t, p))
    }

    /// |A|^r = (A*A)^{r/2}.
    pub fn modulus_power(&self, r: f64) -> Result<ComplexMatrix, LinalgError> {
        let ata = self.adjoint().matmul(self)?;
        ata.hermitian_power(r / 2.0)
    }

    /// |A*|^r = (AA*)^{r/2}.
    pub fn adjoint_modulus_power(&self, r: f64) -> Result<ComplexMatrix, LinalgError> {
        let aat = self.matmul(&self.adjoint())?;
        aat.hermitian_power(r / 2.0)
    }

    /// Largest singular value, via the spectrum of A*A.
    pub fn operator_norm(&self) -> Result<f64, LinalgError> {
        let ata = self.adjoint().matmul(self)?;
        let eig = ata.hermitian_eigen()?;
        Ok(eig.values.last().copied().unwrap_or(0.0).max(0.0).sqrt())
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.n + j]
    }
}

/// t^p on the clipped spectrum: max(t, 0)^p with 0^0 = 1.
pub fn clipped_power(t: f64, p: f64) -> f64 {
    let t = t.max(0.0);
    if p == 0.0 {
        1.0
    } else {
        t.powf(p)
    }
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues ascending and
/// a unitary matrix of column eigenvectors.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

/// Inner product sum_i x_i conj(y_i), linear in the first slot.
pub fn inner(x: &[C64], y: &[C64]) -> C64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

pub fn vec_norm(x: &[C64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

// JSON wire format: {"n": int, "rows": [[[re,im],...],...]}, row-major.
#[derive(Serialize, Deserialize)]
struct MatrixWire {
    n: usize,
    rows: Vec<Vec<[f64; 2]>>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows = (0..self.n)
            .map(|i| (0..self.n).map(|j| [self[(i, j)].re, self[(i, j)].im]).collect())
            .collect();
        MatrixWire { n: self.n, rows }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = MatrixWire::deserialize(deserializer)?;
        if wire.rows.len() != wire.n {
            return Err(D::Error::custom(format!(
                "expected {} rows, got {}",
                wire.n,
                wire.rows.len()
            )));
        }
        let rows: Vec<Vec<C64>> = wire
            .rows
            .iter()
            .map(|r| r.iter().map(|&[re, im]| C64::new(re, im)).collect())
            .collect();
        ComplexMatrix::from_rows(&rows).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn jordan() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]])
            .unwrap()
    }

    fn assert_mat_close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) {
        assert_eq!(a.dim(), b.dim());
        let d = a.sub(b).unwrap().frobenius_norm();
        assert!(d <= tol, "matrices differ by {d:.3e} > {tol:.3e}");
    }

    #[test]
    fn adjoint_examples() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(i2.adjoint(), i2);

        let j = jordan();
        let jt = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(j.adjoint(), jt);

        let m = ComplexMatrix::from_rows(&[
            vec![c(0.0, 1.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        let expected = ComplexMatrix::from_rows(&[
            vec![c(0.0, -1.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(m.adjoint(), expected);
    }

    #[test]
    fn matmul_examples() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(i2.matmul(&i2).unwrap(), i2);

        let j = jordan();
        assert_eq!(j.matmul(&j).unwrap(), ComplexMatrix::zeros(2));

        // J*J = diag(0,1)
        let jtj = j.adjoint().matmul(&j).unwrap();
        assert_mat_close(&jtj, &ComplexMatrix::diag_real(&[0.0, 1.0]), 1e-15);
    }

    #[test]
    fn matmul_dimension_mismatch() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::identity(3);
        assert!(matches!(
            a.matmul(&b),
            Err(LinalgError::DimensionMismatch(2, 3))
        ));
    }

    #[test]
    fn eigen_diagonal() {
        let h = ComplexMatrix::diag_real(&[3.0, 1.0]);
        let eig = h.hermitian_eigen().unwrap();
        assert!((eig.values[0] - 1.0).abs() < 1e-12);
        assert!((eig.values[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn eigen_symmetric_offdiag() {
        let h = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let eig = h.hermitian_eigen().unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-12);
        assert!((eig.values[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigen_complex_hermitian() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3
        let h = ComplexMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, -1.0), c(2.0, 0.0)],
        ])
        .unwrap();
        let eig = h.hermitian_eigen().unwrap();
        assert!((eig.values[0] - 1.0).abs() < 1e-10);
        assert!((eig.values[1] - 3.0).abs() < 1e-10);
    }

    #[test]
    fn eigen_rejects_non_hermitian() {
        assert!(matches!(
            jordan().hermitian_eigen(),
            Err(LinalgError::NotHermitian(_))
        ));
    }

    #[test]
    fn eigen_reconstruction_and_unitarity() {
        // a fixed 3x3 Hermitian matrix with complex off-diagonals
        let h = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.5, 0.25), c(-0.3, 1.0)],
            vec![c(0.5, -0.25), c(-2.0, 0.0), c(0.7, -0.4)],
            vec![c(-0.3, -1.0), c(0.7, 0.4), c(0.5, 0.0)],
        ])
        .unwrap();
        let eig = h.hermitian_eigen().unwrap();
        let n = h.dim();
        let mut recon = ComplexMatrix::zeros(n);
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    recon[(i, j)] +=
                        eig.vectors[(i, k)] * eig.vectors[(j, k)].conj() * eig.values[k];
                }
            }
        }
        assert_mat_close(&recon, &h, 1e-10 * h.frobenius_norm());
        let vtv = eig.vectors.adjoint().matmul(&eig.vectors).unwrap();
        assert_mat_close(&vtv, &ComplexMatrix::identity(n), 1e-10);
    }

    #[test]
    fn func_of_hermitian_examples() {
        let h = ComplexMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, -1.0), c(2.0, 0.0)],
        ])
        .unwrap();
        let same = h.func_of_hermitian(|t| t).unwrap();
        assert!(same.sub(&h).unwrap().frobenius_norm() < 1e-10);

        let d = ComplexMatrix::diag_real(&[4.0, 9.0]);
        let root = d.func_of_hermitian(f64::sqrt).unwrap();
        assert_mat_close(&root, &ComplexMatrix::diag_real(&[2.0, 3.0]), 1e-12);

        let d01 = ComplexMatrix::diag_real(&[0.0, 1.0]);
        let p = d01.hermitian_power(1.5).unwrap();
        assert_mat_close(&p, &d01, 1e-12);
    }

    #[test]
    fn modulus_power_examples() {
        let j = jordan();
        let m = j.modulus_power(1.0).unwrap();
        assert_mat_close(&m, &ComplexMatrix::diag_real(&[0.0, 1.0]), 1e-12);

        let m = j.adjoint().modulus_power(1.0).unwrap();
        assert_mat_close(&m, &ComplexMatrix::diag_real(&[1.0, 0.0]), 1e-12);

        // r = 0 gives identity under the 0^0 = 1 convention
        let m = j.modulus_power(0.0).unwrap();
        assert_mat_close(&m, &ComplexMatrix::identity(2), 1e-12);
    }

    #[test]
    fn re_im_parts() {
        let a = ComplexMatrix::from_rows(&[
            vec![c(0.0, 1.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        assert_mat_close(&a.re_part(), &ComplexMatrix::diag_real(&[0.0, 1.0]), 1e-15);
        assert_mat_close(&a.im_part(), &ComplexMatrix::diag_real(&[1.0, 0.0]), 1e-15);

        let j = jordan();
        let re = j.re_part();
        let im = j.im_part();
        let expected_re = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(0.5, 0.0)],
            vec![c(0.5, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let expected_im = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(0.0, -0.5)],
            vec![c(0.0, 0.5), c(0.0, 0.0)],
        ])
        .unwrap();
        assert_mat_close(&re, &expected_re, 1e-15);
        assert_mat_close(&im, &expected_im, 1e-15);

        // Re(A) + i Im(A) = A
        let recombined = re.add(&im.scale(c(0.0, 1.0))).unwrap();
        assert_mat_close(&recombined, &j, 1e-12);
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let j = jordan();
        let s = serde_json::to_string(&j).unwrap();
        let back: ComplexMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(j, back);

        let bad = r#"{"n": 2, "rows": [[[0,0],[1,0]]]}"#;
        assert!(serde_json::from_str::<ComplexMatrix>(bad).is_err());
        let nonsquare = r#"{"n": 2, "rows": [[[0,0]],[[1,0]]]}"#;
        assert!(serde_json::from_str::<ComplexMatrix>(nonsquare).is_err());
    }
}
