//! Dense complex matrices, Hermitian matrices with construction-time
//! validation, and Cholesky factors.
//!
//! Conventions:
//! * matrices are row-major;
//! * `inner(g, u, v)` is linear in `u` and conjugate-linear in `v`,
//!   i.e. it computes `v* G u`;
//! * a Hermitian matrix is accepted only if `max |H - H*|` is below a
//!   relative tolerance of 1e-12, and is then replaced by `(H + H*)/2`.

use super::vector::{Complex64, Vector};
use crate::error::{Error, Result};

/// Relative tolerance for the Hermitian construction check.
pub const HERM_TOL: f64 = 1e-12;

/// Relative Cholesky pivot breakdown threshold (scaled by dimension and by
/// the largest diagonal entry).
pub const CHOLESKY_PIVOT_TOL: f64 = 1e-12;

/// General dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self { rows, cols, data: vec![Complex64::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::ONE);
        }
        m
    }

    /// Builds a matrix from nested rows, rejecting ragged or non-finite
    /// input.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::DimensionMismatch("empty matrix".into()));
        }
        let cols = rows[0].len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (j, z) in row.iter().enumerate() {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite(format!("matrix entry ({i},{j}) = {z}")));
                }
                data.push(*z);
            }
        }
        Ok(Self { rows: rows.len(), cols, data })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.data[i * self.cols + j] = z;
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimensions differ");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &Vector) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector dimensions differ");
        Vector::from_fn(self.rows, |i| {
            let mut acc = Complex64::ZERO;
            for j in 0..self.cols {
                acc += self.get(i, j) * v[j];
            }
            acc
        })
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector::from_fn(self.rows, |i| self.get(i, j))
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Hermitian matrix. Construction either validates and symmetrizes the
/// input or derives the matrix from an expression that is Hermitian by
/// construction; `hermitian_checked` records that one of the two happened.
#[derive(Clone, Debug, PartialEq)]
pub struct HermMatrix {
    n: usize,
    data: Vec<Complex64>,
    hermitian_checked: bool,
}

impl HermMatrix {
    /// Validates a square matrix against its adjoint (relative tolerance
    /// [`HERM_TOL`]), then stores the symmetrized `(H + H*)/2` with an
    /// exactly real diagonal.
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "Hermitian matrix must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let n = m.rows();
        let scale = m.max_abs_entry();
        let mut deviation = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                deviation = deviation.max((m.get(i, j) - m.get(j, i).conj()).norm());
            }
        }
        let tolerance = HERM_TOL * scale;
        if deviation > tolerance {
            return Err(Error::NotHermitian { deviation, tolerance });
        }
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let z = (m.get(i, j) + m.get(j, i).conj()) * 0.5;
                data.push(if i == j { Complex64::new(z.re, 0.0) } else { z });
            }
        }
        Ok(Self { n, data, hermitian_checked: true })
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        Self::from_matrix(&Matrix::from_rows(rows)?)
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_matrix(&Matrix::from_real_rows(rows)?)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_matrix(&Matrix::identity(n)).expect("identity is Hermitian")
    }

    pub fn from_diag(diag: &[f64]) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(Error::DimensionMismatch("empty diagonal".into()));
        }
        let mut m = Matrix::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            if !d.is_finite() {
                return Err(Error::NonFinite(format!("diagonal entry {i} = {d}")));
            }
            m.set(i, i, Complex64::new(d, 0.0));
        }
        Self::from_matrix(&m)
    }

    /// `A* A`, Hermitian by construction.
    pub fn gram_of(a: &Matrix) -> Self {
        let n = a.cols();
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::ZERO;
                for k in 0..a.rows() {
                    acc += a.get(k, i).conj() * a.get(k, j);
                }
                data.push(if i == j { Complex64::new(acc.re, 0.0) } else { acc });
            }
        }
        Self { n, data, hermitian_checked: true }
    }

    /// Used by routines that produce Hermitian results up to round-off
    /// (e.g. congruence transforms); symmetrizes without a tolerance gate.
    pub(crate) fn symmetrized_unchecked(m: &Matrix) -> Self {
        assert!(m.is_square());
        let n = m.rows();
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let z = (m.get(i, j) + m.get(j, i).conj()) * 0.5;
                data.push(if i == j { Complex64::new(z.re, 0.0) } else { z });
            }
        }
        Self { n, data, hermitian_checked: true }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn hermitian_checked(&self) -> bool {
        self.hermitian_checked
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self.get(i, j));
            }
        }
        m
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        assert_eq!(self.n, v.len(), "matrix-vector dimensions differ");
        Vector::from_fn(self.n, |i| {
            let mut acc = Complex64::ZERO;
            for j in 0..self.n {
                acc += self.get(i, j) * v[j];
            }
            acc
        })
    }

    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Cholesky factorization `self = L L*` with a positive real diagonal.
    /// Fails with the offending pivot index if the matrix is not positive
    /// definite (pivot at or below `n * 1e-12 * max diagonal`).
    pub fn cholesky(&self) -> Result<Cholesky> {
        let n = self.n;
        let max_diag = (0..n).map(|i| self.get(i, i).re).fold(0.0, f64::max);
        let threshold = n as f64 * CHOLESKY_PIVOT_TOL * max_diag;
        let mut l = vec![Complex64::ZERO; n * n];
        for j in 0..n {
            let mut d = self.get(j, j).re;
            for k in 0..j {
                d -= l[j * n + k].norm_sqr();
            }
            if !(d > threshold) {
                return Err(Error::NotPositiveDefinite { index: j, pivot: d });
            }
            let ljj = d.sqrt();
            l[j * n + j] = Complex64::new(ljj, 0.0);
            for i in (j + 1)..n {
                let mut acc = self.get(i, j);
                for k in 0..j {
                    acc -= l[i * n + k] * l[j * n + k].conj();
                }
                l[i * n + j] = acc / ljj;
            }
        }
        Ok(Cholesky { n, data: l })
    }
}

/// Lower-triangular Cholesky factor with positive real diagonal.
#[derive(Clone, Debug)]
pub struct Cholesky {
    n: usize,
    data: Vec<Complex64>, // row-major, strictly upper part is zero
}

impl Cholesky {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    /// The factor as a general matrix (tests reconstruct `L L*`).
    pub fn lower(&self) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..=i {
                m.set(i, j, self.get(i, j));
            }
        }
        m
    }

    /// Solves `L y = b` by forward substitution.
    pub fn solve_forward(&self, b: &Vector) -> Vector {
        assert_eq!(self.n, b.len());
        let mut y = vec![Complex64::ZERO; self.n];
        for i in 0..self.n {
            let mut acc = b[i];
            for (k, yk) in y.iter().enumerate().take(i) {
                acc -= self.get(i, k) * yk;
            }
            y[i] = acc / self.get(i, i);
        }
        Vector::from_fn(self.n, |i| y[i])
    }

    /// Solves `L* x = b` by back substitution.
    pub fn solve_adjoint(&self, b: &Vector) -> Vector {
        assert_eq!(self.n, b.len());
        let mut x = vec![Complex64::ZERO; self.n];
        for i in (0..self.n).rev() {
            let mut acc = b[i];
            for (k, xk) in x.iter().enumerate().skip(i + 1) {
                // (L*)_{ik} = conj(L_{ki})
                acc -= self.get(k, i).conj() * xk;
            }
            x[i] = acc / self.get(i, i);
        }
        Vector::from_fn(self.n, |i| x[i])
    }

    /// Congruence reduction `L^{-1} G L^{-*}`, Hermitian up to round-off
    /// and symmetrized on return.
    pub fn reduce(&self, g: &HermMatrix) -> HermMatrix {
        assert_eq!(self.n, g.n());
        // Y = L^{-1} G, column by column.
        let mut y = Matrix::zeros(self.n, self.n);
        for j in 0..self.n {
            let col = self.solve_forward(&g.to_matrix().column(j));
            for i in 0..self.n {
                y.set(i, j, col[i]);
            }
        }
        // S = Y L^{-*} = (L^{-1} Y*)*.
        let y_adj = y.adjoint();
        let mut z = Matrix::zeros(self.n, self.n);
        for j in 0..self.n {
            let col = self.solve_forward(&y_adj.column(j));
            for i in 0..self.n {
                z.set(i, j, col[i]);
            }
        }
        HermMatrix::symmetrized_unchecked(&z.adjoint())
    }
}

/// Inner product `v* G u`: linear in `u`, conjugate-linear in `v`.
pub fn inner(g: &HermMatrix, u: &Vector, v: &Vector) -> Result<Complex64> {
    if g.n() != u.len() || g.n() != v.len() {
        return Err(Error::DimensionMismatch(format!(
            "inner product: matrix is {0}x{0}, vectors have {1} and {2} entries",
            g.n(),
            u.len(),
            v.len()
        )));
    }
    let gu = g.apply(u);
    let mut acc = Complex64::ZERO;
    for i in 0..v.len() {
        acc += v[i].conj() * gu[i];
    }
    Ok(acc)
}

/// Norm induced by `g`; clamps the tiny negative round-off that can occur
/// for near-null vectors.
pub fn norm(g: &HermMatrix, v: &Vector) -> Result<f64> {
    let q = inner(g, v, v)?;
    Ok(q.re.max(0.0).sqrt())
}

/// `v / ||v||_g`; fails on an exact zero vector or a vanished norm.
pub fn try_unit(g: &HermMatrix, v: &Vector) -> Result<Vector> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let nv = norm(g, v)?;
    if nv == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(v.scaled(Complex64::new(1.0 / nv, 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn inner_is_conjugate_linear_in_second_argument() {
        // <e1, i*e1> under the identity is -i.
        let g = HermMatrix::identity(2);
        let u = Vector::basis(2, 0);
        let v = u.scaled(c(0.0, 1.0));
        let z = inner(&g, &u, &v).unwrap();
        assert_abs_diff_eq!(z.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(z.im, -1.0, epsilon = 1e-15);
    }

    #[test]
    fn cholesky_of_two_one_one_two() {
        let g = HermMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        let l = g.cholesky().unwrap();
        assert_abs_diff_eq!(l.get(0, 0).re, 2.0f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(l.get(1, 0).re, 1.0 / 2.0f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(l.get(1, 1).re, (1.5f64).sqrt(), epsilon = 1e-15);
        // L L* reproduces the input
        let ll = l.lower().mul(&l.lower().adjoint());
        for i in 0..2 {
            for j in 0..2 {
                assert_abs_diff_eq!(ll.get(i, j).re, g.get(i, j).re, epsilon = 1e-14);
                assert_abs_diff_eq!(ll.get(i, j).im, 0.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let g = HermMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 1.0]]).unwrap();
        assert!(matches!(
            g.cholesky(),
            Err(Error::NotPositiveDefinite { index: 1, .. })
        ));
    }

    #[test]
    fn hermitian_gate_rejects_asymmetry_and_accepts_noise() {
        let bad = Matrix::from_real_rows(&[&[1.0, 0.1], &[0.0, 1.0]]).unwrap();
        assert!(matches!(
            HermMatrix::from_matrix(&bad),
            Err(Error::NotHermitian { .. })
        ));

        // asymmetry below the relative gate is symmetrized away
        let eps = 1e-14;
        let noisy = Matrix::from_rows(vec![
            vec![c(1.0, 0.0), c(0.5, eps)],
            vec![c(0.5, -eps - 1e-15), c(1.0, 0.0)],
        ])
        .unwrap();
        let h = HermMatrix::from_matrix(&noisy).unwrap();
        assert!(h.hermitian_checked());
        assert_eq!(h.get(0, 1).conj(), h.get(1, 0));
    }

    #[test]
    fn reduce_whitens_the_first_gram_matrix() {
        let g1 = HermMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        let l = g1.cholesky().unwrap();
        let s = l.reduce(&g1);
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(s.get(i, j).re, expect, epsilon = 1e-14);
                assert_abs_diff_eq!(s.get(i, j).im, 0.0, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn gram_of_matches_adjoint_product() {
        let a = Matrix::from_rows(vec![
            vec![c(1.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        let g = HermMatrix::gram_of(&a);
        // [[1,1],[0,1]]* [[1,1],[0,1]] = [[1,1],[1,2]]
        assert_eq!(g.get(0, 0), c(1.0, 0.0));
        assert_eq!(g.get(0, 1), c(1.0, 0.0));
        assert_eq!(g.get(1, 0), c(1.0, 0.0));
        assert_eq!(g.get(1, 1), c(2.0, 0.0));
    }
}
