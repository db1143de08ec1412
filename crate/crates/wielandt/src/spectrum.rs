//! Norm-ratio spectrum of a pair of inner products.
//!
//! A [`GramPair`] holds two positive definite Gram matrices `G1`, `G2` on
//! the same space. [`analyze`] simultaneously diagonalizes them: writing
//! `G1 = L L*`, the Hermitian pencil matrix `L^{-1} G2 L^{-*}` has real
//! eigenvalues `sigma_1 <= ... <= sigma_n`, and the columns returned in
//! `pencil_basis` are `<.,.>_1`-orthonormal with `<x_i, x_j>_2 =
//! sigma_j delta_ij`. The norm ratio `||v||_2 / ||v||_1` then ranges over
//! `[m, M] = [sqrt(sigma_1), sqrt(sigma_n)]`, attained exactly on the
//! extreme eigenspaces `V_min` and `V_max`.
//!
//! The equality analysis of the bound modules revolves around the set
//!
//! ```text
//! E = { (u, v) : u/||u|| + v/||v|| in V_min  and  u/||u|| - v/||v|| in V_max }
//! ```
//!
//! which is the same whether the norms are taken under `G1` or `G2`;
//! [`e_membership`] measures the two projection residuals.

use crate::error::{Error, Result};
use crate::linalg::{inner, norm, Cholesky, Complex64, HermMatrix, Matrix, Vector};

/// Relative gap below which the two extreme eigenvalues are declared equal
/// and the pair proportional.
pub const DEGENERATE_REL_GAP: f64 = 1e-10;

/// Default membership residual tolerance.
pub const DEFAULT_TOL_MEMBER: f64 = 1e-8;

/// Relative Gram-determinant threshold under which two vectors are treated
/// as linearly dependent.
pub const INDEPENDENCE_TOL: f64 = 1e-12;

/// Whether vectors are sampled and validated as real or complex. The
/// bounds themselves are mode-agnostic; the mode matters for random
/// sampling and for the `alpha` phases, which are restricted to `+-1` on
/// real data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Real,
    Complex,
}

/// Which of the two inner products normalizes a vector pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WhichNorm {
    First,
    Second,
}

/// A validated pair of positive definite Gram matrices, optionally derived
/// from an invertible matrix `A` via `G1 = I`, `G2 = A* A` (so that
/// `<x,y>_2 = (Ay)*(Ax)`).
#[derive(Clone, Debug)]
pub struct GramPair {
    g1: HermMatrix,
    g2: HermMatrix,
    n: usize,
    source_matrix: Option<Matrix>,
    mode: Mode,
}

impl GramPair {
    /// Validates dimensions, positive definiteness of both matrices, and
    /// (in real mode) that no imaginary parts are present.
    pub fn new(g1: HermMatrix, g2: HermMatrix, mode: Mode) -> Result<Self> {
        if g1.n() != g2.n() {
            return Err(Error::DimensionMismatch(format!(
                "Gram matrices have sizes {} and {}",
                g1.n(),
                g2.n()
            )));
        }
        if mode == Mode::Real {
            for (name, g) in [("G1", &g1), ("G2", &g2)] {
                for i in 0..g.n() {
                    for j in 0..g.n() {
                        if g.get(i, j).im != 0.0 {
                            return Err(Error::OutOfRange(format!(
                                "real mode, but {name}[{i}][{j}] has imaginary part"
                            )));
                        }
                    }
                }
            }
        }
        g1.cholesky()?;
        g2.cholesky()?;
        let n = g1.n();
        Ok(Self { g1, g2, n, source_matrix: None, mode })
    }

    /// Builds the pair induced by an invertible matrix: `G1 = I`,
    /// `G2 = A* A`. A singular `A` surfaces as a failed pivot.
    pub fn from_matrix(a: Matrix, mode: Mode) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "source matrix must be square, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        if mode == Mode::Real {
            for i in 0..a.rows() {
                for j in 0..a.cols() {
                    if a.get(i, j).im != 0.0 {
                        return Err(Error::OutOfRange(format!(
                            "real mode, but A[{i}][{j}] has imaginary part"
                        )));
                    }
                }
            }
        }
        let g2 = HermMatrix::gram_of(&a);
        g2.cholesky()?;
        let n = a.rows();
        Ok(Self {
            g1: HermMatrix::identity(n),
            g2,
            n,
            source_matrix: Some(a),
            mode,
        })
    }

    pub fn g1(&self) -> &HermMatrix {
        &self.g1
    }

    pub fn g2(&self) -> &HermMatrix {
        &self.g2
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn source_matrix(&self) -> Option<&Matrix> {
        self.source_matrix.as_ref()
    }

    /// `v* G1 u` (linear in `u`).
    pub fn ip1(&self, u: &Vector, v: &Vector) -> Result<Complex64> {
        inner(&self.g1, u, v)
    }

    /// `v* G2 u` (linear in `u`).
    pub fn ip2(&self, u: &Vector, v: &Vector) -> Result<Complex64> {
        inner(&self.g2, u, v)
    }

    pub fn norm1(&self, v: &Vector) -> Result<f64> {
        norm(&self.g1, v)
    }

    pub fn norm2(&self, v: &Vector) -> Result<f64> {
        norm(&self.g2, v)
    }

    /// The same pair viewed over the reals: each `n`-dimensional complex
    /// Gram matrix `X + iY` becomes the `2n`-dimensional real symmetric
    /// matrix `[[X, -Y], [Y, X]]`, and `Re <u, v>` is preserved under
    /// [`realify_vector`]. The norm-ratio interval `[m, M]` is unchanged.
    pub fn realified(&self) -> GramPair {
        GramPair {
            g1: realify_herm(&self.g1),
            g2: realify_herm(&self.g2),
            n: 2 * self.n,
            source_matrix: self.source_matrix.as_ref().map(realify_matrix),
            mode: Mode::Real,
        }
    }
}

/// `[Re v; Im v]`, the real coordinates matching [`GramPair::realified`].
pub fn realify_vector(v: &Vector) -> Vector {
    let n = v.len();
    Vector::from_fn(2 * n, |i| {
        if i < n {
            Complex64::new(v[i].re, 0.0)
        } else {
            Complex64::new(v[i - n].im, 0.0)
        }
    })
}

fn realify_matrix(a: &Matrix) -> Matrix {
    let n = a.rows();
    let mut out = Matrix::zeros(2 * n, 2 * a.cols());
    for i in 0..n {
        for j in 0..a.cols() {
            let z = a.get(i, j);
            out.set(i, j, Complex64::new(z.re, 0.0));
            out.set(i, j + a.cols(), Complex64::new(-z.im, 0.0));
            out.set(i + n, j, Complex64::new(z.im, 0.0));
            out.set(i + n, j + a.cols(), Complex64::new(z.re, 0.0));
        }
    }
    out
}

fn realify_herm(g: &HermMatrix) -> HermMatrix {
    HermMatrix::symmetrized_unchecked(&realify_matrix(&g.to_matrix()))
}

/// Everything derived from the simultaneous diagonalization of a pair.
#[derive(Clone, Debug)]
pub struct SpectralData {
    /// Pencil eigenvalues `sigma_i`, ascending and positive.
    pub pencil_evals: Vec<f64>,
    /// `<.,.>_1`-orthonormal vectors with `<x_i, x_j>_2 = sigma_j delta_ij`.
    pub pencil_basis: Vec<Vector>,
    /// `m = sqrt(sigma_1)`, the smallest norm ratio.
    pub m_min: f64,
    /// `M = sqrt(sigma_n)`, the largest norm ratio.
    pub m_max: f64,
    /// `M / m`.
    pub kappa: f64,
    /// `(M^2 - m^2) / (M^2 + m^2)`.
    pub chi: f64,
    /// `(M - m) / (M + m)`.
    pub mu: f64,
    /// Basis of the subspace attaining `m` (pencil vectors whose
    /// eigenvalue sits in the bottom cluster).
    pub min_basis: Vec<Vector>,
    /// Basis of the subspace attaining `M`.
    pub max_basis: Vec<Vector>,
    /// True when `(M - m)/M <= 1e-10`: the inner products are
    /// proportional and both attainment subspaces are the whole space.
    pub proportional: bool,
    /// Membership residual tolerance used by [`e_membership`].
    pub tol_member: f64,
}

impl SpectralData {
    /// Copy with the minimum ratio rescaled and the derived constants
    /// recomputed. Deliberately produces *wrong* spectral data (for any
    /// factor other than 1), so tests can confirm that the verification
    /// suite flags an inconsistent spectrum rather than agreeing with it.
    pub fn with_m_scaled(&self, factor: f64) -> SpectralData {
        let mut out = self.clone();
        out.m_min = self.m_min * factor;
        out.kappa = out.m_max / out.m_min;
        let (m2, mm2) = (out.m_min * out.m_min, out.m_max * out.m_max);
        out.chi = (mm2 - m2) / (mm2 + m2);
        out.mu = (out.m_max - out.m_min) / (out.m_max + out.m_min);
        out
    }
}

/// Simultaneously diagonalizes the pair and extracts the norm-ratio data.
pub fn analyze(pair: &GramPair, tol_member: f64) -> Result<SpectralData> {
    let l: Cholesky = pair.g1.cholesky()?;
    let s = l.reduce(&pair.g2);
    let eigen = s.eig()?;

    if eigen.values[0] <= 0.0 {
        return Err(Error::NotPositiveDefinite { index: 0, pivot: eigen.values[0] });
    }

    let pencil_basis: Vec<Vector> =
        eigen.vectors.iter().map(|q| l.solve_adjoint(q)).collect();
    let sigma = eigen.values;
    let n = sigma.len();

    let m_min = sigma[0].sqrt();
    let m_max = sigma[n - 1].sqrt();
    let proportional = (m_max - m_min) <= DEGENERATE_REL_GAP * m_max;

    let (min_basis, max_basis) = if proportional {
        (pencil_basis.clone(), pencil_basis.clone())
    } else {
        let lo: Vec<Vector> = (0..n)
            .filter(|&i| sigma[i] <= sigma[0] * (1.0 + tol_member))
            .map(|i| pencil_basis[i].clone())
            .collect();
        let hi: Vec<Vector> = (0..n)
            .filter(|&i| sigma[i] >= sigma[n - 1] * (1.0 - tol_member))
            .map(|i| pencil_basis[i].clone())
            .collect();
        (lo, hi)
    };

    Ok(SpectralData {
        pencil_evals: sigma,
        pencil_basis,
        m_min,
        m_max,
        kappa: m_max / m_min,
        chi: (m_max * m_max - m_min * m_min) / (m_max * m_max + m_min * m_min),
        mu: (m_max - m_min) / (m_max + m_min),
        min_basis,
        max_basis,
        proportional,
        tol_member,
    })
}

/// A `<.,.>_1`-orthonormal, `<.,.>_2`-orthogonal basis of the plane
/// spanned by two independent vectors, with the restricted norm ratios.
#[derive(Clone, Debug)]
pub struct DoubleBasis {
    /// Direction with the smaller restricted norm ratio.
    pub b_small: Vector,
    /// Direction with the larger restricted norm ratio.
    pub b_big: Vector,
    /// `||b_small||_2` (the restricted minimum ratio, in `[m, M]`).
    pub n_small: f64,
    /// `||b_big||_2` (the restricted maximum ratio, in `[m, M]`).
    pub n_big: f64,
}

/// Orthonormalizes `span{u, v}` under `<.,.>_1` and diagonalizes the
/// restricted 2x2 pencil of `<.,.>_2`.
pub fn double_basis(pair: &GramPair, u: &Vector, v: &Vector) -> Result<DoubleBasis> {
    if u.is_zero() || v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let duu = pair.ip1(u, u)?.re;
    let dvv = pair.ip1(v, v)?.re;
    let zuv = pair.ip1(u, v)?;
    if duu * dvv - zuv.norm_sqr() <= INDEPENDENCE_TOL * duu * dvv {
        return Err(Error::DependentVectors);
    }

    let e1 = u.scaled(Complex64::new(1.0 / duu.sqrt(), 0.0));
    // coefficient of v along e1 under a product linear in its first slot
    let coef = pair.ip1(v, &e1)?;
    let w = v - &e1.scaled(coef);
    let nw = pair.norm1(&w)?;
    if nw == 0.0 {
        return Err(Error::DependentVectors);
    }
    let e2 = w.scaled(Complex64::new(1.0 / nw, 0.0));

    // restricted matrix T[j][i] = e_j* G2 e_i
    let t00 = pair.ip2(&e1, &e1)?;
    let t01 = pair.ip2(&e2, &e1)?;
    let t10 = pair.ip2(&e1, &e2)?;
    let t11 = pair.ip2(&e2, &e2)?;
    let t = HermMatrix::symmetrized_unchecked(
        &Matrix::from_rows(vec![vec![t00, t01], vec![t10, t11]])
            .expect("2x2 restricted pencil"),
    );
    let eigen = t.eig()?;
    if eigen.values[0] <= 0.0 {
        return Err(Error::NotPositiveDefinite { index: 0, pivot: eigen.values[0] });
    }

    let combine = |coords: &Vector| -> Vector {
        &e1.scaled(coords[0]) + &e2.scaled(coords[1])
    };
    Ok(DoubleBasis {
        b_small: combine(&eigen.vectors[0]),
        b_big: combine(&eigen.vectors[1]),
        n_small: eigen.values[0].sqrt(),
        n_big: eigen.values[1].sqrt(),
    })
}

/// Projection residuals of the normalized sum and difference of a pair
/// against the extreme eigenspaces.
#[derive(Clone, Debug)]
pub struct EMembership {
    /// `u/||u|| + v/||v||`, tested against the `m`-attaining subspace.
    pub sum: Vector,
    /// `u/||u|| - v/||v||`, tested against the `M`-attaining subspace.
    pub diff: Vector,
    /// Relative `<.,.>_1` distance of `sum` from the `m`-subspace
    /// (0 when `sum` vanishes).
    pub residual_min: f64,
    /// Relative distance of `diff` from the `M`-subspace.
    pub residual_max: f64,
    /// Both residuals at or below the membership tolerance.
    pub is_member: bool,
}

/// Tests `(u, v)` for membership in the equality set `E`, normalizing
/// under the chosen inner product. The set is the same for both choices;
/// the residuals differ only by round-off.
pub fn e_membership(
    spec: &SpectralData,
    pair: &GramPair,
    u: &Vector,
    v: &Vector,
    which: WhichNorm,
) -> Result<EMembership> {
    if u.is_zero() || v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let (nu, nv) = match which {
        WhichNorm::First => (pair.norm1(u)?, pair.norm1(v)?),
        WhichNorm::Second => (pair.norm2(u)?, pair.norm2(v)?),
    };
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::ZeroVector);
    }
    let un = u.scaled(Complex64::new(1.0 / nu, 0.0));
    let vn = v.scaled(Complex64::new(1.0 / nv, 0.0));
    let sum = &un + &vn;
    let diff = &un - &vn;

    let residual_min = subspace_residual(pair, &sum, &spec.min_basis, &un, &vn)?;
    let residual_max = subspace_residual(pair, &diff, &spec.max_basis, &un, &vn)?;
    let is_member = residual_min <= spec.tol_member && residual_max <= spec.tol_member;
    Ok(EMembership { sum, diff, residual_min, residual_max, is_member })
}

/// Relative `<.,.>_1` distance of `w` from the span of `basis` (which is
/// `<.,.>_1`-orthonormal). A `w` that cancelled to numerical zero counts
/// as a member with residual 0.
fn subspace_residual(
    pair: &GramPair,
    w: &Vector,
    basis: &[Vector],
    un: &Vector,
    vn: &Vector,
) -> Result<f64> {
    let nw = pair.norm1(w)?;
    let scale = pair.norm1(un)? + pair.norm1(vn)?;
    if nw <= 1e-13 * scale {
        return Ok(0.0);
    }
    let mut proj = Vector::zeros(w.len());
    for b in basis {
        let coef = pair.ip1(w, b)?;
        proj = &proj + &b.scaled(coef);
    }
    Ok(pair.norm1(&(w - &proj))? / nw)
}
