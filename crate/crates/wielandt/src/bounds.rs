//! Sharp bounds comparing a pair's angles under the two inner products.
//!
//! Everything here is driven by the norm-ratio interval `[m, M]` of the
//! pair and its derived constants `kappa = M/m`,
//! `chi = (M^2 - m^2) / (M^2 + m^2)` and `mu = (M - m) / (M + m)`.
//! The central statement is the tangent estimate
//!
//! ```text
//! (1/kappa) tan(phi/2) <= tan(psi/2) <= kappa tan(phi/2)
//! ```
//!
//! for vector angles (and the same with `kappa` for line angles), plus a
//! family of cosine corollaries, each packaged as a [`BoundReport`] that
//! records the interval, the observed value and the slack on each side.

use crate::angles::{full_report, AngleReport};
use crate::error::{Error, Result};
use crate::linalg::{try_unit, HermMatrix, Vector};
use crate::spectrum::{GramPair, SpectralData};
use serde::Serialize;

/// Slack allowed when deciding whether an observed value respects a bound.
pub const HOLD_TOL: f64 = 1e-9;

/// Relative threshold under which an inner product counts as zero for the
/// orthogonal-vector bound.
pub const ORTH_TOL: f64 = 1e-12;

/// Identifies which estimate a [`BoundReport`] instantiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoundName {
    /// Two-sided tangent bound on vector angles.
    #[serde(rename = "TAN")]
    Tan,
    /// Two-sided tangent bound on line angles.
    #[serde(rename = "TAN2")]
    Tan2,
    /// Cosine interval for vector angles.
    #[serde(rename = "COS")]
    Cos,
    /// Cosine interval for real parts of inner products of unit vectors.
    #[serde(rename = "ReIP")]
    ReIp,
    /// Cosine interval for moduli of inner products of unit vectors.
    #[serde(rename = "ModIP")]
    ModIp,
    /// `|<u,v>_2|` bound for pairs orthogonal under the first product.
    #[serde(rename = "OrthIP")]
    OrthIp,
    /// Two-sided bound on the cosine difference `cos(psi) - cos(phi)`.
    #[serde(rename = "Regen")]
    Regen,
    /// Improved upper bound on the cosine difference when
    /// `Re <u,v>_1 >= 0`.
    #[serde(rename = "Pos")]
    Pos,
    /// Two-sided bound on the difference of cosine moduli.
    #[serde(rename = "AbsGen")]
    AbsGen,
    /// Floor on the product `cos(phi) cos(psi)`.
    #[serde(rename = "CosCos")]
    CosCos,
    /// Conditional cosine bound `chi + (1 + chi) cos(Phi)`.
    #[serde(rename = "Yeh")]
    Yeh,
    /// Eigenvalue-wise cosine bound, maximized over eigenvalue pairs.
    #[serde(rename = "Yan")]
    Yan,
    /// Floor on the cosine product in terms of the swapped pencil.
    #[serde(rename = "LSFloor")]
    LsFloor,
    /// Image of a line angle under an orthogonal-similarity model map.
    #[serde(rename = "GW_Householder")]
    GwHouseholder,
}

/// One evaluated bound: the admissible interval, the observed value, the
/// signed slack on each finite side, and whether the bound holds within
/// [`HOLD_TOL`].
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub name: BoundName,
    /// Lower endpoint; absent for one-sided upper bounds.
    pub lower: Option<f64>,
    /// Upper endpoint; absent for one-sided lower bounds.
    pub upper: Option<f64>,
    pub observed: f64,
    /// `observed - lower`, when a lower endpoint exists.
    pub slack_lower: Option<f64>,
    /// `upper - observed`, when an upper endpoint exists.
    pub slack_upper: Option<f64>,
    pub holds: bool,
}

impl BoundReport {
    fn new(name: BoundName, lower: Option<f64>, upper: Option<f64>, observed: f64) -> Self {
        let slack_lower = lower.map(|l| observed - l);
        let slack_upper = upper.map(|u| u - observed);
        let holds = slack_lower.unwrap_or(0.0) >= -HOLD_TOL
            && slack_upper.unwrap_or(0.0) >= -HOLD_TOL;
        BoundReport { name, lower, upper, observed, slack_lower, slack_upper, holds }
    }
}

/// Which two-sided difference estimate to instantiate.
#[derive(Clone, Copy, Debug)]
pub enum DifferenceBound {
    /// `|cos(psi) - cos(phi)| <= 2 mu` for any pair.
    Regen,
    /// `-2 mu <= cos(psi) - cos(phi) <= chi` when `Re <u,v>_1 >= 0`.
    Pos,
    /// `|cos(Psi) - cos(Phi)| <= chi` for moduli.
    AbsGen,
}

/// Tangent interval for the angle of a pair under the second product given
/// its angle under the first: `[(1/kappa) t, kappa t]` with
/// `t = tan(angle/2)`. An input of `pi` yields infinite endpoints.
pub fn tan_bounds(spec: &SpectralData, angle: f64) -> Result<(f64, f64)> {
    if !angle.is_finite() || !(-1e-12..=std::f64::consts::PI + 1e-12).contains(&angle) {
        return Err(Error::OutOfRange(format!(
            "angle {angle} outside [0, pi]"
        )));
    }
    let angle = angle.clamp(0.0, std::f64::consts::PI);
    if angle >= std::f64::consts::PI {
        return Ok((f64::INFINITY, f64::INFINITY));
    }
    let t = (angle / 2.0).tan();
    Ok((t / spec.kappa, t * spec.kappa))
}

/// Cosine interval: for `c = cos` of the input angle, the output cosine
/// lies in `[(-chi + c)/(1 - chi c), (chi + c)/(1 + chi c)]`.
pub fn cos_interval(spec: &SpectralData, c: f64) -> Result<(f64, f64)> {
    if !c.is_finite() || c.abs() > 1.0 + 1e-12 {
        return Err(Error::OutOfRange(format!("cosine {c} outside [-1, 1]")));
    }
    let c = c.clamp(-1.0, 1.0);
    let chi = spec.chi;
    Ok(((-chi + c) / (1.0 - chi * c), (chi + c) / (1.0 + chi * c)))
}

/// Upper bound on `|<u,v>_2| / (||u||_2 ||v||_2)` over pairs orthogonal
/// under the first product. Sharp, and equal to `chi`.
pub fn wielandt_bound(spec: &SpectralData) -> f64 {
    spec.chi
}

/// Two-sided interval for a cosine difference; see [`DifferenceBound`].
pub fn difference_bounds(spec: &SpectralData, which: DifferenceBound) -> (f64, f64) {
    let two_mu = 2.0 * spec.mu;
    match which {
        DifferenceBound::Regen => (-two_mu, two_mu),
        DifferenceBound::Pos => (-two_mu, spec.chi),
        DifferenceBound::AbsGen => (-spec.chi, spec.chi),
    }
}

/// Reference interval `(1 - M^2/m^2, 1 - m^2/M^2)` for the cosine
/// difference. Strictly wider than [`difference_bounds`] with
/// [`DifferenceBound::Regen`] whenever `m < M`.
pub fn dragomir_reference_bounds(spec: &SpectralData) -> (f64, f64) {
    let k2 = spec.kappa * spec.kappa;
    (1.0 - k2, 1.0 - 1.0 / k2)
}

/// Floor on `cos(phi) cos(psi)`: the product of the two vector-angle
/// cosines is at least `-mu^2`.
pub fn cos_product_floor(spec: &SpectralData) -> f64 {
    -spec.mu * spec.mu
}

/// Conditional cosine bound: when `cos(Phi) <= 1/kappa^2` the second
/// line cosine satisfies `cos(Psi) <= chi + (1 + chi) cos(Phi)`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct YehBound {
    pub applicable: bool,
    pub bound: f64,
}

pub fn yeh_bound(spec: &SpectralData, cos_line: f64) -> Result<YehBound> {
    if !cos_line.is_finite() || !(-1e-12..=1.0 + 1e-12).contains(&cos_line) {
        return Err(Error::OutOfRange(format!(
            "line cosine {cos_line} outside [0, 1]"
        )));
    }
    let c = cos_line.clamp(0.0, 1.0);
    let applicable = c <= 1.0 / (spec.kappa * spec.kappa) + 1e-12;
    Ok(YehBound { applicable, bound: spec.chi + (1.0 + spec.chi) * c })
}

/// Eigenvalue-wise cosine bound: maximizes
/// `(a c^2 - b s^2) / (a c^2 + b s^2)` over eigenvalue pairs `(a, b)`,
/// with `c^2 = cos^2(Phi/2)`, `s^2 = sin^2(Phi/2)`. The maximum is
/// attained at the extreme eigenvalues and equals
/// `(chi + cos(Phi)) / (1 + chi cos(Phi))`; both routes are computed and
/// cross-checked to `1e-12`.
pub fn yan_bound(evals: &[f64], cos_line: f64) -> Result<f64> {
    if evals.is_empty() {
        return Err(Error::OutOfRange("empty eigenvalue list".into()));
    }
    if let Some(i) = evals.iter().position(|&l| !(l > 0.0)) {
        return Err(Error::NotPositiveDefinite { index: i, pivot: evals[i] });
    }
    if !cos_line.is_finite() || !(-1e-12..=1.0 + 1e-12).contains(&cos_line) {
        return Err(Error::OutOfRange(format!(
            "line cosine {cos_line} outside [0, 1]"
        )));
    }
    let cc = cos_line.clamp(0.0, 1.0);
    let c2 = (1.0 + cc) / 2.0;
    let s2 = (1.0 - cc) / 2.0;
    let mut brute = f64::NEG_INFINITY;
    for &a in evals {
        for &b in evals {
            brute = brute.max((a * c2 - b * s2) / (a * c2 + b * s2));
        }
    }
    let hi = evals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = evals.iter().cloned().fold(f64::INFINITY, f64::min);
    let chi = (hi - lo) / (hi + lo);
    let closed = (chi + cc) / (1.0 + chi * cc);
    assert!(
        (brute - closed).abs() <= 1e-12 * closed.abs().max(1.0),
        "eigenvalue-pair maximum {brute} disagrees with closed form {closed}"
    );
    Ok(brute)
}

/// Floor on `cos(phi) cos(psi)` derived from the swapped pencil
/// `(G2, G1)`: with `k` the condition number of that pencil, the product
/// is at least `-((sqrt(k) - 1) / (sqrt(k) + 1))^2`.
pub fn ls_floor(g1: &HermMatrix, g2: &HermMatrix) -> Result<f64> {
    let lb = g2.cholesky()?;
    let s = lb.reduce(g1);
    let e = s.eig()?;
    let lo = e.values[0];
    let hi = e.values[e.values.len() - 1];
    if !(lo > 0.0) {
        return Err(Error::NotPositiveDefinite { index: 0, pivot: lo });
    }
    let rk = (hi / lo).sqrt();
    let q = (rk - 1.0) / (rk + 1.0);
    Ok(-q * q)
}

/// Line angle reached by the model orthogonal map that realizes the lower
/// tangent bound: `Psi = 2 atan(tan(Phi/2) / kappa)`.
pub fn gw_householder_angle(kappa: f64, line_angle: f64) -> Result<f64> {
    if !(kappa >= 1.0) || !kappa.is_finite() {
        return Err(Error::OutOfRange(format!("kappa {kappa} below 1")));
    }
    if !line_angle.is_finite()
        || !(-1e-12..=std::f64::consts::FRAC_PI_2 + 1e-12).contains(&line_angle)
    {
        return Err(Error::OutOfRange(format!(
            "line angle {line_angle} outside [0, pi/2]"
        )));
    }
    let a = line_angle.clamp(0.0, std::f64::consts::FRAC_PI_2);
    Ok(2.0 * ((a / 2.0).tan() / kappa).atan())
}

fn tan_half_from_cos(c: f64) -> f64 {
    let c = c.clamp(-1.0, 1.0);
    ((1.0 - c) / (1.0 + c)).sqrt()
}

/// Evaluates every applicable bound on a concrete pair of vectors,
/// returning one report per estimate. Zero or dependent vectors are
/// rejected.
pub fn evaluate_pair(
    spec: &SpectralData,
    pair: &GramPair,
    u: &Vector,
    v: &Vector,
) -> Result<Vec<BoundReport>> {
    if u.is_zero() || v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let n1u = pair.norm1(u)?;
    let n1v = pair.norm1(v)?;
    let z1 = pair.ip1(u, v)?;
    let gram_det = (n1u * n1v).powi(2) - z1.norm_sqr();
    if gram_det <= 1e-12 * (n1u * n1v).powi(2) {
        return Err(Error::DependentVectors);
    }
    let angles = full_report(pair, u, v)?;
    let mut out = Vec::new();

    // tangent bounds on vector and line angles
    let (lo, hi) = tan_bounds(spec, angles.phi)?;
    out.push(BoundReport::new(
        BoundName::Tan,
        Some(lo),
        Some(hi),
        tan_half_from_cos(angles.cos_psi),
    ));
    let (lo, hi) = tan_bounds(spec, angles.phi_line)?;
    out.push(BoundReport::new(
        BoundName::Tan2,
        Some(lo),
        Some(hi),
        tan_half_from_cos(angles.cos_psi_line),
    ));

    // cosine interval on vector angles
    let (lo, hi) = cos_interval(spec, angles.cos_phi)?;
    out.push(BoundReport::new(BoundName::Cos, Some(lo), Some(hi), angles.cos_psi));

    // the same interval recomputed from explicitly normalized vectors,
    // for the real part and for the modulus
    let uh = try_unit(pair.g1(), u)?;
    let vh = try_unit(pair.g1(), v)?;
    let z2h = pair.ip2(&uh, &vh)?;
    let d2 = pair.norm2(&uh)? * pair.norm2(&vh)?;
    let c1 = pair.ip1(&uh, &vh)?.re.clamp(-1.0, 1.0);
    let (lo, hi) = cos_interval(spec, c1)?;
    out.push(BoundReport::new(BoundName::ReIp, Some(lo), Some(hi), z2h.re / d2));
    let c1m = pair.ip1(&uh, &vh)?.norm().min(1.0);
    let (lo, hi) = cos_interval(spec, c1m)?;
    out.push(BoundReport::new(BoundName::ModIp, Some(lo), Some(hi), z2h.norm() / d2));

    // orthogonal pairs: |<u,v>_2| / (||u||_2 ||v||_2) <= chi
    if z1.norm() <= ORTH_TOL * n1u * n1v {
        out.push(BoundReport::new(
            BoundName::OrthIp,
            None,
            Some(wielandt_bound(spec)),
            angles.cos_psi_line,
        ));
    }

    // cosine differences
    let diff = angles.cos_psi - angles.cos_phi;
    let (lo, hi) = difference_bounds(spec, DifferenceBound::Regen);
    out.push(BoundReport::new(BoundName::Regen, Some(lo), Some(hi), diff));
    if z1.re >= 0.0 {
        let (lo, hi) = difference_bounds(spec, DifferenceBound::Pos);
        out.push(BoundReport::new(BoundName::Pos, Some(lo), Some(hi), diff));
    }
    let (lo, hi) = difference_bounds(spec, DifferenceBound::AbsGen);
    out.push(BoundReport::new(
        BoundName::AbsGen,
        Some(lo),
        Some(hi),
        angles.cos_psi_line - angles.cos_phi_line,
    ));

    // product of vector-angle cosines
    let prod = angles.cos_phi * angles.cos_psi;
    out.push(BoundReport::new(
        BoundName::CosCos,
        Some(cos_product_floor(spec)),
        None,
        prod,
    ));

    // conditional and eigenvalue-wise cosine bounds on line angles
    let yeh = yeh_bound(spec, angles.cos_phi_line)?;
    if yeh.applicable {
        out.push(BoundReport::new(
            BoundName::Yeh,
            None,
            Some(yeh.bound),
            angles.cos_psi_line,
        ));
    }
    let yan = yan_bound(&spec.pencil_evals, angles.cos_phi_line)?;
    out.push(BoundReport::new(BoundName::Yan, None, Some(yan), angles.cos_psi_line));

    // swapped-pencil floor on the cosine product
    out.push(BoundReport::new(
        BoundName::LsFloor,
        Some(ls_floor(pair.g1(), pair.g2())?),
        None,
        prod,
    ));

    // model-map image of the first line angle brackets the second
    let lo = gw_householder_angle(spec.kappa, angles.phi_line)?;
    let hi_t = (angles.phi_line / 2.0).tan() * spec.kappa;
    let hi = (2.0 * hi_t.atan()).min(std::f64::consts::FRAC_PI_2);
    out.push(BoundReport::new(
        BoundName::GwHouseholder,
        Some(lo),
        Some(hi),
        angles.psi_line,
    ));

    Ok(out)
}

/// Convenience wrapper: the angle report together with all bound reports.
pub fn pair_analysis(
    spec: &SpectralData,
    pair: &GramPair,
    u: &Vector,
    v: &Vector,
) -> Result<(AngleReport, Vec<BoundReport>)> {
    let angles = full_report(pair, u, v)?;
    let reports = evaluate_pair(spec, pair, u, v)?;
    Ok((angles, reports))
}
