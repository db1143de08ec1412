//! Hermitian eigensolver: cyclic Jacobi with complex rotations.
//!
//! Each rotation first strips the phase of the pivot entry, then applies
//! the classical symmetric 2x2 rotation, so the update formulas reduce to
//! Rutishauser's. The sweep loop runs until the off-diagonal Frobenius
//! norm falls below `1e-13 * ||H||_F`, capped at 100 sweeps.

use super::matrix::HermMatrix;
use super::vector::{Complex64, Vector};
use crate::error::{Error, Result};

/// Off-diagonal convergence target, relative to the Frobenius norm.
pub const EIG_OFF_TOL: f64 = 1e-13;

/// Sweep cap before the solver reports failure.
pub const EIG_MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
/// Ties are broken by the original (pre-sort) column order, so results are
/// deterministic for a given input.
#[derive(Clone, Debug)]
pub struct HermEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vector>,
}

impl HermMatrix {
    /// Full eigendecomposition `H = V diag(values) V*`.
    pub fn eig(&self) -> Result<HermEigen> {
        jacobi(self)
    }
}

fn off_norm(h: &[Complex64], n: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += h[i * n + j].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn jacobi(input: &HermMatrix) -> Result<HermEigen> {
    let n = input.n();
    let mut h: Vec<Complex64> = (0..n * n)
        .map(|k| input.get(k / n, k % n))
        .collect();
    // V accumulates the rotations; columns become the eigenvectors.
    let mut v: Vec<Complex64> = vec![Complex64::ZERO; n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::ONE;
    }

    let scale = input.fro_norm();
    if scale > 0.0 && n > 1 {
        let target = EIG_OFF_TOL * scale;
        let mut sweeps = 0;
        while off_norm(&h, n) > target {
            if sweeps >= EIG_MAX_SWEEPS {
                return Err(Error::EigFailure { sweeps, off: off_norm(&h, n) });
            }
            sweeps += 1;
            for p in 0..n - 1 {
                for q in p + 1..n {
                    rotate(&mut h, &mut v, n, p, q);
                }
            }
        }
    }

    // Sort ascending; ties keep the original column order.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        h[a * n + a]
            .re
            .partial_cmp(&h[b * n + b].re)
            .expect("eigenvalues are finite")
            .then(a.cmp(&b))
    });

    let values = order.iter().map(|&k| h[k * n + k].re).collect();
    let vectors = order
        .iter()
        .map(|&k| Vector::from_fn(n, |i| v[i * n + k]))
        .collect();
    Ok(HermEigen { values, vectors })
}

/// Annihilates the (p, q) entry with the unitary plane rotation
/// `R = [[e^{i phi} c, e^{i phi} s], [-s, c]]` acting on columns p, q,
/// where `e^{i phi}` is the phase of the pivot and `(c, s)` the classical
/// symmetric rotation for the de-phased 2x2 block.
fn rotate(h: &mut [Complex64], v: &mut [Complex64], n: usize, p: usize, q: usize) {
    let apq = h[p * n + q];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let phase = apq / g;
    let alpha = h[p * n + p].re;
    let beta = h[q * n + q].re;

    let theta = (beta - alpha) / (2.0 * g);
    let t = if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let rpp = phase * c; // R_{pp}
    let rpq = phase * s; // R_{pq}

    h[p * n + p] = Complex64::new(alpha - t * g, 0.0);
    h[q * n + q] = Complex64::new(beta + t * g, 0.0);
    h[p * n + q] = Complex64::ZERO;
    h[q * n + p] = Complex64::ZERO;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let hkp = h[k * n + p];
        let hkq = h[k * n + q];
        let new_kp = rpp * hkp - s * hkq;
        let new_kq = rpq * hkp + c * hkq;
        h[k * n + p] = new_kp;
        h[k * n + q] = new_kq;
        h[p * n + k] = new_kp.conj();
        h[q * n + k] = new_kq.conj();
    }

    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = rpp * vkp - s * vkq;
        v[k * n + q] = rpq * vkp + c * vkq;
    }
}
