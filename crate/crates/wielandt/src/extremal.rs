//! Equality-case classification and construction of extremal pairs.
//!
//! The tangent bounds are attained exactly on a structured set of pairs:
//! write `w` for the normalized sum and `W` for the normalized difference
//! of a unit pair; the pair is *extremal-admissible* when `w` lies in the
//! minimizing extreme subspace and `W` in the maximizing one (membership
//! is identical under either norm). The right/upper equality holds for
//! `(u, v)` admissible, the left/lower one for `(u, -v)` admissible, and
//! the line-angle versions additionally require the two aligning phases
//! to agree (or the respective inner product to vanish).
//!
//! Constructions go the other way: given a requested angle they assemble
//! a pair from one minimizing and one maximizing basis vector, hitting
//! the bound exactly; a second construction produces, for a single
//! positive definite matrix, a pair attaining the sharp modulus bound.

use crate::angles::full_report;
use crate::error::{Error, Result};
use crate::linalg::{Complex64, HermMatrix, Vector};
use crate::spectrum::{e_membership, GramPair, SpectralData, WhichNorm};
use serde::Serialize;
use std::collections::BTreeMap;

/// Tolerance for deciding that the two aligning phases agree.
pub const ALPHA_EQ_TOL: f64 = 1e-8;

/// Relative threshold under which an inner product counts as zero when
/// checking phase conditions.
const PHASE_ZERO_TOL: f64 = 1e-12;

/// Which of the two tangent inequalities a construction should saturate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Saturate `tan(psi/2) = kappa tan(phi/2)`.
    Right,
    /// Saturate `tan(psi/2) = (1/kappa) tan(phi/2)`.
    Left,
}

/// How the phase requirement for line-angle equality is met.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseCondition {
    /// Both inner products are nonzero and their phases agree.
    AlphasEqual,
    /// The second inner product vanishes, so its phase is free.
    InnerProduct2Zero,
    /// The first inner product vanishes, so its phase is free.
    InnerProduct1Zero,
    /// Both phases exist and differ.
    NotSatisfied,
    /// Both inner products vanish; the requirement is empty.
    Vacuous,
}

/// Outcome of testing a pair against all four equality cases.
#[derive(Clone, Debug, Serialize)]
pub struct EqualityClassification {
    /// The upper vector-angle bound is attained.
    pub main_right: bool,
    /// The lower vector-angle bound is attained.
    pub main_left: bool,
    /// The upper line-angle bound is attained.
    pub lines_right: bool,
    /// The lower line-angle bound is attained.
    pub lines_left: bool,
    pub phase_condition: PhaseCondition,
    /// Subspace residuals behind each verdict, keyed by case and side.
    pub residuals: BTreeMap<String, f64>,
}

/// A constructed extremal pair together with the measured distortion.
#[derive(Clone, Debug, Serialize)]
pub struct ExtremalPair {
    pub u: Vector,
    pub v: Vector,
    pub target: Side,
    pub requested_angle: f64,
    /// Measured `tan(psi/2) / tan(phi/2)`; equals `kappa` (right) or
    /// `1/kappa` (left) up to round-off.
    pub achieved_ratio: f64,
}

fn aligning_phase(z: Complex64, scale: f64) -> Option<Complex64> {
    let m = z.norm();
    if m > PHASE_ZERO_TOL * scale {
        Some(z.conj() / m)
    } else {
        None
    }
}

/// Tests a pair of independent vectors against the four equality cases.
pub fn classify(
    spec: &SpectralData,
    pair: &GramPair,
    u: &Vector,
    v: &Vector,
) -> Result<EqualityClassification> {
    if u.is_zero() || v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let n1u = pair.norm1(u)?;
    let n1v = pair.norm1(v)?;
    let z1 = pair.ip1(u, v)?;
    if (n1u * n1v).powi(2) - z1.norm_sqr() <= 1e-12 * (n1u * n1v).powi(2) {
        return Err(Error::DependentVectors);
    }
    let z2 = pair.ip2(u, v)?;
    let alpha1 = aligning_phase(z1, n1u * n1v);
    let alpha2 = aligning_phase(z2, pair.norm2(u)? * pair.norm2(v)?);

    let phase_condition = match (alpha1, alpha2) {
        (Some(a1), Some(a2)) => {
            if (a1 - a2).norm() <= ALPHA_EQ_TOL {
                PhaseCondition::AlphasEqual
            } else {
                PhaseCondition::NotSatisfied
            }
        }
        (Some(_), None) => PhaseCondition::InnerProduct2Zero,
        (None, Some(_)) => PhaseCondition::InnerProduct1Zero,
        (None, None) => PhaseCondition::Vacuous,
    };
    let phase_ok = phase_condition != PhaseCondition::NotSatisfied;

    let mut residuals = BTreeMap::new();
    let mut check = |tag: &str, a: &Vector, b: &Vector| -> Result<bool> {
        let m = e_membership(spec, pair, a, b, WhichNorm::First)?;
        residuals.insert(format!("{tag}_min"), m.residual_min);
        residuals.insert(format!("{tag}_max"), m.residual_max);
        Ok(m.is_member)
    };

    let main_right = check("main_right", u, v)?;
    let main_left = check("main_left", u, &(-v))?;

    // line-angle cases align the pair by the relevant phase first; a
    // missing phase imposes no constraint, so any representative works
    let a_r = alpha1.or(alpha2).unwrap_or(Complex64::ONE);
    let lines_right = check("lines_right", &u.scaled(a_r), v)? && phase_ok;
    let a_l = alpha2.or(alpha1).unwrap_or(Complex64::ONE);
    let lines_left = check("lines_left", &u.scaled(a_l), &(-v))? && phase_ok;

    if let (Some(a1), Some(a2)) = (alpha1, alpha2) {
        residuals.insert("alpha_gap".into(), (a1 - a2).norm());
    }

    Ok(EqualityClassification {
        main_right,
        main_left,
        lines_right,
        lines_left,
        phase_condition,
        residuals,
    })
}

/// Builds a pair attaining the requested tangent equality at the given
/// first-product angle `phi` in `(0, pi)`.
///
/// The pair is `u = w + W`, `v = +-(w - W)` with `w = cos(phi/2) b_min`,
/// `W = sin(phi/2) b_max` built from the first minimizing and maximizing
/// pencil basis vectors. Needs `m < M`; a proportional pencil admits no
/// distortion to saturate.
pub fn construct_main(
    spec: &SpectralData,
    pair: &GramPair,
    phi: f64,
    side: Side,
) -> Result<ExtremalPair> {
    if spec.proportional {
        return Err(Error::DegeneratePencil);
    }
    if !phi.is_finite() || phi <= 0.0 || phi >= std::f64::consts::PI {
        return Err(Error::OutOfRange(format!(
            "angle {phi} outside the open interval (0, pi)"
        )));
    }
    let b_min = &spec.min_basis[0];
    let b_max = &spec.max_basis[0];
    let w = b_min.scaled(Complex64::new((phi / 2.0).cos(), 0.0));
    let cap_w = b_max.scaled(Complex64::new((phi / 2.0).sin(), 0.0));
    let u = &w + &cap_w;
    let diff = &w - &cap_w;
    let v = match side {
        Side::Right => diff,
        Side::Left => -&diff,
    };
    let angles = full_report(pair, &u, &v)?;
    let t_in = (angles.phi / 2.0).tan();
    let t_out = (angles.psi / 2.0).tan();
    Ok(ExtremalPair {
        u,
        v,
        target: side,
        requested_angle: phi,
        achieved_ratio: t_out / t_in,
    })
}

/// For a positive definite matrix `B` with a proper spectrum, builds unit
/// vectors (in the standard product) at line-angle cosine `cos_phi` whose
/// `B`-inner product attains the sharp modulus bound
/// `((chi + c) / (1 + chi c)) ||x||_B ||y||_B`.
///
/// `epsilon` is a free unit scalar multiplying `y`. The construction
/// combines the extreme eigenvectors `x1` (largest eigenvalue) and `xn`
/// (smallest):
///
/// ```text
/// x = (sqrt(1+c) x1 + sqrt(1-c) xn) / sqrt(2)
/// y = epsilon (sqrt(1+c) x1 - sqrt(1-c) xn) / sqrt(2)
/// ```
pub fn construct_kolotilina(
    b: &HermMatrix,
    cos_phi: f64,
    epsilon: Complex64,
) -> Result<(Vector, Vector)> {
    if !cos_phi.is_finite() || !(0.0..=1.0).contains(&cos_phi) {
        return Err(Error::OutOfRange(format!(
            "cosine {cos_phi} outside [0, 1]"
        )));
    }
    if cos_phi == 1.0 {
        return Err(Error::DependentVectors);
    }
    if (epsilon.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::OutOfRange(format!(
            "epsilon must have modulus 1, got |epsilon| = {}",
            epsilon.norm()
        )));
    }
    let e = b.eig()?;
    let n = e.values.len();
    let lo = e.values[0];
    let hi = e.values[n - 1];
    if !(lo > 0.0) {
        return Err(Error::NotPositiveDefinite { index: 0, pivot: lo });
    }
    if (hi - lo) <= 1e-10 * hi {
        return Err(Error::DegeneratePencil);
    }
    // first column of the top eigenvalue cluster, mirroring the basis
    // choice used for extremal subspaces
    let top_start = e
        .values
        .iter()
        .position(|&l| l >= hi * (1.0 - 1e-8))
        .unwrap_or(n - 1);
    let x1 = &e.vectors[top_start];
    let xn = &e.vectors[0];
    let cp = ((1.0 + cos_phi) / 2.0).sqrt();
    let cm = ((1.0 - cos_phi) / 2.0).sqrt();
    let xp = x1.scaled(Complex64::new(cp, 0.0));
    let xm = xn.scaled(Complex64::new(cm, 0.0));
    let x = &xp + &xm;
    let y = (&xp - &xm).scaled(epsilon);
    Ok((x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{inner, norm};
    use crate::spectrum::{analyze, Mode, DEFAULT_TOL_MEMBER};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn fix_a() -> (GramPair, SpectralData) {
        let pair = GramPair::new(
            HermMatrix::identity(2),
            HermMatrix::from_diag(&[1.0, 4.0]).unwrap(),
            Mode::Real,
        )
        .unwrap();
        let spec = analyze(&pair, DEFAULT_TOL_MEMBER).unwrap();
        (pair, spec)
    }

    #[test]
    fn classify_detects_the_attaining_pair() {
        let (pair, spec) = fix_a();
        let r = 0.5f64.sqrt();
        let u = Vector::from_real(&[r, r]).unwrap();
        let v = Vector::from_real(&[r, -r]).unwrap();
        let cls = classify(&spec, &pair, &u, &v).unwrap();
        assert!(cls.main_right);
        assert!(!cls.main_left);
        // <u,v>_1 = 0 frees the first phase; <u,v>_2 = -3/2 gives
        // alpha2 = -1, and (-u, -v) = -(u, v) is again admissible
        assert_eq!(cls.phase_condition, PhaseCondition::InnerProduct1Zero);
        assert!(cls.lines_left);
        assert!(!cls.lines_right);
        assert!(cls.residuals["main_right_min"] <= 1e-10);
        assert!(cls.residuals["main_left_min"] > 0.1);
    }

    #[test]
    fn classify_rejects_generic_pairs() {
        let (pair, spec) = fix_a();
        let u = Vector::from_real(&[1.0, 0.3]).unwrap();
        let v = Vector::from_real(&[0.2, 1.0]).unwrap();
        let cls = classify(&spec, &pair, &u, &v).unwrap();
        assert!(!cls.main_right && !cls.main_left);
        assert!(!cls.lines_right && !cls.lines_left);
        let u = Vector::from_real(&[1.0, 1.0]).unwrap();
        let v = Vector::from_real(&[2.0, 2.0]).unwrap();
        assert!(matches!(
            classify(&spec, &pair, &u, &v),
            Err(Error::DependentVectors)
        ));
    }

    #[test]
    fn constructed_pairs_achieve_both_equalities() {
        let (pair, spec) = fix_a();
        for &phi in &[0.3f64, FRAC_PI_2, 2.8] {
            let right = construct_main(&spec, &pair, phi, Side::Right).unwrap();
            assert_abs_diff_eq!(right.achieved_ratio, 2.0, epsilon = 1e-9);
            let cls = classify(&spec, &pair, &right.u, &right.v).unwrap();
            assert!(cls.main_right, "phi = {phi}");

            let left = construct_main(&spec, &pair, phi, Side::Left).unwrap();
            assert_abs_diff_eq!(left.achieved_ratio, 0.5, epsilon = 1e-9);
            let cls = classify(&spec, &pair, &left.u, &left.v).unwrap();
            assert!(cls.main_left, "phi = {phi}");
        }
    }

    #[test]
    fn construct_main_validates_inputs() {
        let (pair, spec) = fix_a();
        assert!(matches!(
            construct_main(&spec, &pair, 0.0, Side::Right),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            construct_main(&spec, &pair, PI, Side::Right),
            Err(Error::OutOfRange(_))
        ));
        let prop = GramPair::new(
            HermMatrix::identity(2),
            HermMatrix::from_diag(&[3.0, 3.0]).unwrap(),
            Mode::Real,
        )
        .unwrap();
        let pspec = analyze(&prop, DEFAULT_TOL_MEMBER).unwrap();
        assert!(matches!(
            construct_main(&pspec, &prop, 1.0, Side::Right),
            Err(Error::DegeneratePencil)
        ));
    }

    #[test]
    fn modulus_construction_matches_the_hand_example() {
        let b = HermMatrix::from_diag(&[4.0, 1.0]).unwrap();
        let (x, y) = construct_kolotilina(&b, 0.6, Complex64::ONE).unwrap();
        let s5 = 5.0f64.sqrt();
        assert_abs_diff_eq!(x[0].re, 2.0 / s5, epsilon = 1e-12);
        assert_abs_diff_eq!(x[1].re, 1.0 / s5, epsilon = 1e-12);
        assert_abs_diff_eq!(y[0].re, 2.0 / s5, epsilon = 1e-12);
        assert_abs_diff_eq!(y[1].re, -1.0 / s5, epsilon = 1e-12);
        // modulus equality: |y* B x| = ((chi + c)/(1 + chi c)) |x|_B |y|_B
        let lhs = inner(&b, &x, &y).unwrap().norm();
        assert_abs_diff_eq!(lhs, 3.0, epsilon = 1e-12);
        let chi = 3.0 / 5.0;
        let rhs = (chi + 0.6) / (1.0 + chi * 0.6)
            * norm(&b, &x).unwrap()
            * norm(&b, &y).unwrap();
        assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-12);
    }

    #[test]
    fn modulus_construction_respects_the_phase_and_unit_norms() {
        let b = HermMatrix::from_rows(vec![
            vec![c(2.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, -1.0), c(2.0, 0.0)],
        ])
        .unwrap();
        let eps = c(0.6, 0.8);
        let (x, y) = construct_kolotilina(&b, 0.25, eps).unwrap();
        let id = HermMatrix::identity(2);
        assert_abs_diff_eq!(norm(&id, &x).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(norm(&id, &y).unwrap(), 1.0, epsilon = 1e-12);
        // the standard inner product has modulus cos_phi
        assert_abs_diff_eq!(inner(&id, &x, &y).unwrap().norm(), 0.25, epsilon = 1e-12);
        // eigenvalues are {1, 3}: chi = 1/2
        let chi = 0.5;
        let lhs = inner(&b, &x, &y).unwrap().norm();
        let rhs = (chi + 0.25) / (1.0 + chi * 0.25)
            * norm(&b, &x).unwrap()
            * norm(&b, &y).unwrap();
        assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-12);
    }

    #[test]
    fn modulus_construction_validates_inputs() {
        let b = HermMatrix::from_diag(&[4.0, 1.0]).unwrap();
        assert!(matches!(
            construct_kolotilina(&b, 1.5, Complex64::ONE),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            construct_kolotilina(&b, 1.0, Complex64::ONE),
            Err(Error::DependentVectors)
        ));
        assert!(matches!(
            construct_kolotilina(&b, 0.5, c(2.0, 0.0)),
            Err(Error::OutOfRange(_))
        ));
        let flat = HermMatrix::from_diag(&[2.0, 2.0]).unwrap();
        assert!(matches!(
            construct_kolotilina(&flat, 0.5, Complex64::ONE),
            Err(Error::DegeneratePencil)
        ));
        let neg = HermMatrix::from_diag(&[-1.0, 2.0]).unwrap();
        assert!(matches!(
            construct_kolotilina(&neg, 0.5, Complex64::ONE),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }
}
