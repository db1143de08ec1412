//! Angles between vectors and between lines under a Gram matrix.
//!
//! The vector angle uses the real part of the inner product and lives in
//! `[0, pi]`; the line angle uses the modulus and lives in `[0, pi/2]`.
//! For a nonzero inner product `z` the unit scalar `alpha = |z| / z`
//! aligns the pair: the vector angle of `(alpha u, v)` equals the line
//! angle of `(u, v)`. On real data `alpha` is `+1` or `-1`.
//!
//! Cosines are clamped into `[-1, 1]` before `acos`, so round-off can
//! never produce NaN. Identical vectors give angle exactly 0, and exact
//! sign-flips give exactly `pi` (0 for lines), ahead of any rounding.

use crate::error::{Error, Result};
use crate::linalg::{inner, norm, Complex64, HermMatrix, Vector};
use crate::spectrum::GramPair;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

/// Relative threshold below which an inner product counts as zero and the
/// aligning phase is undefined.
pub const ALPHA_ZERO_TOL: f64 = 1e-12;

/// A line angle together with the aligning unit scalar (absent when the
/// inner product vanishes).
#[derive(Clone, Copy, Debug)]
pub struct LineAngle {
    pub angle: f64,
    pub alpha: Option<Complex64>,
}

/// Angle in `[0, pi]` between two vectors:
/// `arccos(Re <u,v> / (||u|| ||v||))`.
pub fn vector_angle(g: &HermMatrix, u: &Vector, v: &Vector) -> Result<f64> {
    if u.is_zero() || v.is_zero() {
        return Err(Error::ZeroVector);
    }
    if u.same_entries(v) {
        return Ok(0.0);
    }
    if u.negated_entries(v) {
        return Ok(std::f64::consts::PI);
    }
    let z = inner(g, u, v)?;
    let nu = norm(g, u)?;
    let nv = norm(g, v)?;
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok((z.re / (nu * nv)).clamp(-1.0, 1.0).acos())
}

/// Angle in `[0, pi/2]` between the lines (real or complex spans) of two
/// vectors: `arccos(|<u,v>| / (||u|| ||v||))`, with the aligning phase.
pub fn line_angle(g: &HermMatrix, u: &Vector, v: &Vector) -> Result<LineAngle> {
    if u.is_zero() || v.is_zero() {
        return Err(Error::ZeroVector);
    }
    if u.same_entries(v) {
        return Ok(LineAngle { angle: 0.0, alpha: Some(Complex64::ONE) });
    }
    if u.negated_entries(v) {
        return Ok(LineAngle { angle: 0.0, alpha: Some(-Complex64::ONE) });
    }
    let z = inner(g, u, v)?;
    let nu = norm(g, u)?;
    let nv = norm(g, v)?;
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::ZeroVector);
    }
    let modulus = z.norm();
    let alpha = if modulus > ALPHA_ZERO_TOL * nu * nv {
        Some(z.conj() / modulus) // |z| = alpha * z
    } else {
        None
    };
    Ok(LineAngle { angle: (modulus / (nu * nv)).clamp(-1.0, 1.0).acos(), alpha })
}

/// The four angles of a pair under both inner products.
#[derive(Clone, Debug, Serialize)]
pub struct AngleReport {
    /// Vector angle under `G1`.
    pub phi: f64,
    /// Vector angle under `G2`.
    pub psi: f64,
    /// Line angle under `G1`.
    #[serde(rename = "Phi")]
    pub phi_line: f64,
    /// Line angle under `G2`.
    #[serde(rename = "Psi")]
    pub psi_line: f64,
    pub cos_phi: f64,
    pub cos_psi: f64,
    #[serde(rename = "cos_Phi")]
    pub cos_phi_line: f64,
    #[serde(rename = "cos_Psi")]
    pub cos_psi_line: f64,
    /// Aligning phase under `G1`, absent when `<u,v>_1 = 0`.
    #[serde(serialize_with = "ser_alpha")]
    pub alpha1: Option<Complex64>,
    /// Aligning phase under `G2`, absent when `<u,v>_2 = 0`.
    #[serde(serialize_with = "ser_alpha")]
    pub alpha2: Option<Complex64>,
}

fn ser_alpha<S: Serializer>(
    z: &Option<Complex64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match z {
        Some(z) => {
            let mut seq = s.serialize_seq(Some(2))?;
            seq.serialize_element(&z.re)?;
            seq.serialize_element(&z.im)?;
            seq.end()
        }
        None => s.serialize_none(),
    }
}

/// Measures all four angles of `(u, v)` under the pair.
pub fn full_report(pair: &GramPair, u: &Vector, v: &Vector) -> Result<AngleReport> {
    let phi = vector_angle(pair.g1(), u, v)?;
    let psi = vector_angle(pair.g2(), u, v)?;
    let l1 = line_angle(pair.g1(), u, v)?;
    let l2 = line_angle(pair.g2(), u, v)?;
    Ok(AngleReport {
        phi,
        psi,
        phi_line: l1.angle,
        psi_line: l2.angle,
        cos_phi: phi.cos(),
        cos_psi: psi.cos(),
        cos_phi_line: l1.angle.cos(),
        cos_psi_line: l2.angle.cos(),
        alpha1: l1.alpha,
        alpha2: l2.alpha,
    })
}

/// Angle between two sets of vectors: the infimum of vector angles over
/// all cross pairs, skipping zero vectors. Errors if either set has no
/// nonzero vector.
pub fn set_angle(g: &HermMatrix, s: &[Vector], t: &[Vector]) -> Result<f64> {
    let mut best: Option<f64> = None;
    for u in s.iter().filter(|u| !u.is_zero()) {
        for v in t.iter().filter(|v| !v.is_zero()) {
            let a = vector_angle(g, u, v)?;
            best = Some(match best {
                Some(b) => b.min(a),
                None => a,
            });
        }
    }
    best.ok_or(Error::ZeroVector)
}
