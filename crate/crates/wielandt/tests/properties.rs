//! Property-based cross-module invariants: statements that must hold for
//! every seed, dimension, and scaling, checked over randomized instances
//! with shrinking.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use wielandt::angles::full_report;
use wielandt::bounds::tan_bounds;
use wielandt::extremal::{classify, construct_main, Side};
use wielandt::input::{parse_vector, MatrixFile};
use wielandt::linalg::{Complex64, HermMatrix, Vector};
use wielandt::oracle::{hexagon_min, random_pair};
use wielandt::spectrum::{analyze, e_membership, GramPair, Mode, WhichNorm};

const TOL: f64 = 1e-9;

fn sample_dir(rng: &mut ChaCha8Rng, n: usize, mode: Mode) -> Vector {
    loop {
        let data: Vec<Complex64> = (0..n)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = match mode {
                    Mode::Real => 0.0,
                    Mode::Complex => rng.sample(StandardNormal),
                };
                Complex64::new(re, im)
            })
            .collect();
        let v = Vector::new(data).expect("nonempty");
        if !v.is_zero() {
            return v;
        }
    }
}

fn mode_of(complex: bool) -> Mode {
    if complex {
        Mode::Complex
    } else {
        Mode::Real
    }
}

/// Scales `g` by a positive factor, entry by entry.
fn scaled_herm(g: &HermMatrix, s: f64) -> HermMatrix {
    let n = g.n();
    HermMatrix::from_rows(
        (0..n)
            .map(|i| (0..n).map(|j| g.get(i, j) * s).collect())
            .collect(),
    )
    .expect("scaling preserves Hermitian symmetry")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The tangent interval contains the observed tangent for every pair
    /// of products, every pair of vectors, both for vectors and lines.
    #[test]
    fn tangent_interval_holds(seed: u64, n in 2usize..=6, complex: bool, vseed: u64) {
        let mode = mode_of(complex);
        let pair = random_pair(seed, n, mode).expect("random pair");
        let spec = analyze(&pair, 1e-8).expect("spectrum");
        let mut rng = ChaCha8Rng::seed_from_u64(vseed);
        for _ in 0..16 {
            let u = sample_dir(&mut rng, n, mode);
            let v = sample_dir(&mut rng, n, mode);
            let rep = match full_report(&pair, &u, &v) {
                Ok(rep) => rep,
                Err(_) => continue,
            };
            for (angle, cos_out) in [(rep.phi, rep.cos_psi), (rep.phi_line, rep.cos_psi_line)] {
                let (lo, hi) = tan_bounds(&spec, angle).expect("tangent interval");
                if !hi.is_finite() {
                    continue;
                }
                let t = ((1.0 - cos_out) / (1.0 + cos_out)).sqrt();
                prop_assert!(t >= lo - TOL && t <= hi + TOL,
                    "tangent {t} outside [{lo}, {hi}]");
            }
        }
    }

    /// Scaling the second product by `s^2` scales `m` and `M` by `s` and
    /// leaves every shape constant (kappa, chi, mu) unchanged.
    #[test]
    fn spectrum_scale_covariance(seed: u64, n in 2usize..=6, complex: bool,
                                 s in 0.1f64..10.0) {
        let mode = mode_of(complex);
        let pair = random_pair(seed, n, mode).expect("random pair");
        let spec = analyze(&pair, 1e-8).expect("spectrum");
        let scaled = GramPair::new(pair.g1().clone(), scaled_herm(pair.g2(), s * s), mode)
            .expect("scaled pair");
        let spec_s = analyze(&scaled, 1e-8).expect("spectrum");
        prop_assert!((spec_s.kappa - spec.kappa).abs() <= 1e-9 * spec.kappa);
        prop_assert!((spec_s.chi - spec.chi).abs() <= 1e-9);
        prop_assert!((spec_s.mu - spec.mu).abs() <= 1e-9);
        prop_assert!((spec_s.m_min - s * spec.m_min).abs() <= 1e-9 * s * spec.m_min);
        prop_assert!((spec_s.m_max - s * spec.m_max).abs() <= 1e-9 * s * spec.m_max);
    }

    /// Line angles ignore scaling of either vector by any nonzero complex
    /// number; vector angles ignore positive real scaling.
    #[test]
    fn angles_scale_invariant(seed: u64, n in 2usize..=6,
                              a in 0.1f64..10.0,
                              th in 0.0f64..std::f64::consts::TAU, vseed: u64) {
        let pair = random_pair(seed, n, Mode::Complex).expect("random pair");
        let mut rng = ChaCha8Rng::seed_from_u64(vseed);
        let u = sample_dir(&mut rng, n, Mode::Complex);
        let v = sample_dir(&mut rng, n, Mode::Complex);
        let rep = match full_report(&pair, &u, &v) {
            Ok(rep) => rep,
            Err(_) => return Ok(()),
        };
        let z = Complex64::from_polar(a, th);
        let rep_z = full_report(&pair, &u.scaled(z), &v).expect("angles");
        prop_assert!((rep_z.phi_line - rep.phi_line).abs() <= 1e-9);
        prop_assert!((rep_z.psi_line - rep.psi_line).abs() <= 1e-9);
        let rep_r = full_report(&pair, &u.scaled(Complex64::new(a, 0.0)), &v).expect("angles");
        prop_assert!((rep_r.phi - rep.phi).abs() <= 1e-9);
        prop_assert!((rep_r.psi - rep.psi).abs() <= 1e-9);
    }

    /// Classification is a pure function: two calls agree bit for bit.
    #[test]
    fn classification_deterministic(seed: u64, n in 2usize..=5, vseed: u64) {
        let pair = random_pair(seed, n, Mode::Real).expect("random pair");
        let spec = analyze(&pair, 1e-8).expect("spectrum");
        let mut rng = ChaCha8Rng::seed_from_u64(vseed);
        let u = sample_dir(&mut rng, n, Mode::Real);
        let v = sample_dir(&mut rng, n, Mode::Real);
        let (a, b) = match (classify(&spec, &pair, &u, &v), classify(&spec, &pair, &u, &v)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return Ok(()),
        };
        prop_assert_eq!(a.main_right, b.main_right);
        prop_assert_eq!(a.main_left, b.main_left);
        prop_assert_eq!(a.lines_right, b.lines_right);
        prop_assert_eq!(a.lines_left, b.lines_left);
        for (k, x) in &a.residuals {
            prop_assert_eq!(x.to_bits(), b.residuals[k].to_bits(), "residual {} differs", k);
        }
    }

    /// Membership in the equality set does not depend on which norm the
    /// query normalizes under.
    #[test]
    fn membership_norm_agnostic(seed: u64, n in 2usize..=6, complex: bool, vseed: u64) {
        let mode = mode_of(complex);
        let pair = random_pair(seed, n, mode).expect("random pair");
        let spec = analyze(&pair, 1e-8).expect("spectrum");
        let mut rng = ChaCha8Rng::seed_from_u64(vseed);
        let u = sample_dir(&mut rng, n, mode);
        let v = sample_dir(&mut rng, n, mode);
        let m1 = e_membership(&spec, &pair, &u, &v, WhichNorm::First).expect("membership");
        let m2 = e_membership(&spec, &pair, &u, &v, WhichNorm::Second).expect("membership");
        prop_assert_eq!(m1.is_member, m2.is_member);
    }

    /// Constructed extremal pairs sit at the requested first-product angle
    /// (its supplement on the left side, where the second vector is negated),
    /// achieve the extreme tangent ratio, and classify as equality cases.
    #[test]
    fn construction_honors_request(seed: u64, n in 2usize..=6,
                                   phi in 0.05f64..3.09, right: bool) {
        let pair = random_pair(seed, n, Mode::Real).expect("random pair");
        let spec = analyze(&pair, 1e-8).expect("spectrum");
        if spec.proportional {
            return Ok(());
        }
        let side = if right { Side::Right } else { Side::Left };
        let ep = construct_main(&spec, &pair, phi, side).expect("extremal pair");
        let rep = full_report(&pair, &ep.u, &ep.v).expect("angles");
        let expect_phi = if right { phi } else { std::f64::consts::PI - phi };
        prop_assert!((rep.phi - expect_phi).abs() <= 1e-9,
            "requested {phi} on {side:?}, measured {}", rep.phi);
        let target = if right { spec.kappa } else { 1.0 / spec.kappa };
        prop_assert!((ep.achieved_ratio - target).abs() <= 1e-9 * target,
            "achieved {}, target {target}", ep.achieved_ratio);
        let cls = classify(&spec, &pair, &ep.u, &ep.v).expect("classification");
        let flagged = if right { cls.main_right } else { cls.main_left };
        prop_assert!(flagged, "side flag missing after construction");
    }

    /// The feasibility-grid minimum never undercuts the exact floor `-mu^2`
    /// and always reports a feasible witness.
    #[test]
    fn grid_minimum_respects_floor(mu in 0.0f64..=1.0, steps in 8usize..=128) {
        let rep = hexagon_min(mu, steps).expect("grid scan");
        prop_assert!(rep.min_product >= -mu * mu - TOL);
        prop_assert!(rep.arg_x.abs() <= 1.0 + 1e-12 && rep.arg_y.abs() <= 1.0 + 1e-12);
        prop_assert!((rep.arg_x - rep.arg_y).abs() <= 2.0 * mu + 1e-9);
    }

    /// A Gram-mode file echoes back to JSON that reparses to the same pair.
    #[test]
    fn matrix_file_echo_roundtrip(d1 in proptest::collection::vec(0.5f64..4.0, 2..=4),
                                  shift in 0.5f64..4.0) {
        let n = d1.len();
        let entries = |d: &[f64]| -> String {
            let rows: Vec<String> = (0..n)
                .map(|i| {
                    let cells: Vec<String> = (0..n)
                        .map(|j| format!("{}", if i == j { d[i] } else { 0.0 }))
                        .collect();
                    format!("[{}]", cells.join(","))
                })
                .collect();
            format!("[{}]", rows.join(","))
        };
        let d2: Vec<f64> = d1.iter().map(|x| x + shift).collect();
        let text = format!(
            r#"{{"mode":"real","n":{n},"G1":{},"G2":{}}}"#,
            entries(&d1),
            entries(&d2)
        );
        let file = MatrixFile::parse_str(&text).expect("valid file");
        let echoed = serde_json::to_string(&file.echo()).expect("serializable");
        let file2 = MatrixFile::parse_str(&echoed).expect("echo reparses");
        let (p1, p2) = (file.to_pair().expect("pd"), file2.to_pair().expect("pd"));
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(p1.g1().get(i, j), p2.g1().get(i, j));
                prop_assert_eq!(p1.g2().get(i, j), p2.g2().get(i, j));
            }
        }
    }

    /// Vector parsing accepts what it prints: real and complex entries
    /// round-trip through the CLI text format.
    #[test]
    fn vector_text_roundtrip(data in proptest::collection::vec(-5.0f64..5.0, 2..=5),
                             complex: bool) {
        let text: Vec<String> = if complex {
            data.iter().map(|x| format!("{}:{}", x, -x)).collect()
        } else {
            data.iter().map(|x| format!("{x}")).collect()
        };
        let mode = mode_of(complex);
        let v = parse_vector(&text.join(","), mode, data.len()).expect("valid vector");
        for (i, &x) in data.iter().enumerate() {
            prop_assert_eq!(v[i].re, x);
            prop_assert_eq!(v[i].im, if complex { -x } else { 0.0 });
        }
    }
}
