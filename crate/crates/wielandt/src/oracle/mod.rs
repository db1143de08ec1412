//! Randomized verification oracles.
//!
//! Everything here re-measures claims made elsewhere in the crate by
//! direct sampling: the tangent-ratio interval is probed with random
//! pairs, sharpened by an iterated two-dimensional section search, and
//! finished with a dense grid on the best section; a feasibility grid
//! probes the cosine-pair region; and [`suite::run_suite`] bundles a
//! battery of property checks into one report.
//!
//! Determinism: every sample comes from a counter-mode generator seeded
//! by the configured seed with one stream per trial index, so results are
//! identical across runs and thread counts.

mod suite;

pub use suite::{run_suite, run_suite_with_spectrum, PropertyCheck, SuiteReport};

use crate::error::{Error, Result};
use crate::linalg::{Complex64, HermMatrix, Matrix, Vector};
use crate::spectrum::{analyze, double_basis, GramPair, Mode, SpectralData, DEFAULT_TOL_MEMBER};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

/// Parameters shared by all oracles.
#[derive(Clone, Debug, Serialize)]
pub struct OracleConfig {
    /// Root seed; all randomness derives from it.
    pub seed: u64,
    /// Number of random trials per sampled check.
    pub trials: usize,
    /// Resolution of deterministic grids (at least 8).
    pub grid_steps: usize,
    /// Dimensions exercised by [`sweep`].
    pub dims: Vec<usize>,
    /// Slack allowed before a sampled value counts as a violation.
    pub tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            seed: 42,
            trials: 1000,
            grid_steps: 256,
            dims: vec![2, 3, 4, 8, 16],
            tol: 1e-9,
        }
    }
}

impl OracleConfig {
    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::OutOfRange("trials must be at least 1".into()));
        }
        if self.grid_steps < 8 {
            return Err(Error::OutOfRange(format!(
                "grid_steps {} below the minimum of 8",
                self.grid_steps
            )));
        }
        if self.dims.is_empty() {
            return Err(Error::OutOfRange("dims must be nonempty".into()));
        }
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(Error::OutOfRange(format!("tol {} must be positive", self.tol)));
        }
        Ok(())
    }
}

/// One sampled pair realizing an extreme tangent ratio.
#[derive(Clone, Debug, Serialize)]
pub struct RatioWitness {
    pub ratio: f64,
    pub u: Vector,
    pub v: Vector,
}

/// A sampled pair whose ratio left the theoretical interval.
#[derive(Clone, Debug, Serialize)]
pub struct RatioViolation {
    /// `"sample"` for the random stage, `"grid"` for the section grid.
    pub stage: &'static str,
    pub index: u64,
    pub ratio: f64,
    pub u: Vector,
    pub v: Vector,
}

/// How many violation witnesses a report stores; the total count is
/// always exact. Keeps reports small when a corrupted spectrum makes
/// nearly every sample violate.
pub const MAX_RECORDED_VIOLATIONS: usize = 32;

/// Empirical portrait of the tangent-ratio interval `[1/kappa, kappa]`.
#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub seed: u64,
    pub trials: usize,
    pub grid_steps: usize,
    pub theoretical_min: f64,
    pub theoretical_max: f64,
    pub empirical_min: f64,
    pub empirical_max: f64,
    pub min_witness: Option<RatioWitness>,
    pub max_witness: Option<RatioWitness>,
    /// Total number of sampled or grid ratios outside the interval.
    pub violation_count: usize,
    /// The first [`MAX_RECORDED_VIOLATIONS`] violations, with witnesses.
    pub violations: Vec<RatioViolation>,
}

/// Outcome of the two-variable feasibility grid for cosine pairs: over
/// the region `|x| <= 1`, `|y| <= 1`, `|x - y| <= 2 mu`, the product
/// `x y` is minimized; the true minimum is `-mu^2`.
#[derive(Clone, Debug, Serialize)]
pub struct HexagonReport {
    pub mu: f64,
    pub grid_steps: usize,
    pub min_product: f64,
    pub arg_x: f64,
    pub arg_y: f64,
    /// The exact floor `-mu^2` the grid minimum is compared against.
    pub floor: f64,
}

pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Standard-normal vector with unit Euclidean norm; complex entries get
/// independent real and imaginary parts.
pub(crate) fn sample_unit(rng: &mut ChaCha8Rng, n: usize, complex: bool) -> Vector {
    loop {
        let data: Vec<Complex64> = (0..n)
            .map(|_| {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = if complex { StandardNormal.sample(rng) } else { 0.0 };
                Complex64::new(re, im)
            })
            .collect();
        let v = Vector::new(data).expect("normal samples are finite");
        if v.euclid_norm() > 1e-6 {
            return v.scaled(Complex64::new(1.0 / v.euclid_norm(), 0.0));
        }
    }
}

/// Random positive definite Hermitian matrix with moderate conditioning.
pub(crate) fn sample_pd(rng: &mut ChaCha8Rng, n: usize, complex: bool) -> HermMatrix {
    let rows: Vec<Vec<Complex64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let re: f64 = StandardNormal.sample(rng);
                    let im: f64 = if complex { StandardNormal.sample(rng) } else { 0.0 };
                    Complex64::new(re, im)
                })
                .collect()
        })
        .collect();
    let r = Matrix::from_rows(rows).expect("normal samples are finite");
    let mut p = r.adjoint().mul(&r);
    // shift well away from singularity without flattening the spectrum
    let shift = Complex64::new(0.05 * (1.0 + p.max_abs_entry()), 0.0);
    for i in 0..n {
        let d = p.get(i, i);
        p.set(i, i, d + shift);
    }
    HermMatrix::from_matrix(&p).expect("adjoint square plus real shift is Hermitian")
}

/// Seeded random pair of positive definite Gram matrices.
pub fn random_pair(seed: u64, n: usize, mode: Mode) -> Result<GramPair> {
    let complex = matches!(mode, Mode::Complex);
    let mut rng = stream_rng(seed, 0x5eed_0001);
    let g1 = sample_pd(&mut rng, n, complex);
    let g2 = sample_pd(&mut rng, n, complex);
    GramPair::new(g1, g2, mode)
}

fn cosines(pair: &GramPair, u: &Vector, v: &Vector) -> Result<(f64, f64)> {
    let c1 = pair.ip1(u, v)?.re / (pair.norm1(u)? * pair.norm1(v)?);
    let c2 = pair.ip2(u, v)?.re / (pair.norm2(u)? * pair.norm2(v)?);
    Ok((c1.clamp(-1.0, 1.0), c2.clamp(-1.0, 1.0)))
}

/// `tan(psi/2) / tan(phi/2)` from the two cosines; `None` when either
/// angle is too close to `0` or `pi` to divide safely.
fn tan_ratio(c1: f64, c2: f64) -> Option<f64> {
    const EDGE: f64 = 1e-12;
    if 1.0 - c1.abs() <= EDGE || 1.0 - c2.abs() <= EDGE {
        return None;
    }
    Some((((1.0 - c2) * (1.0 + c1)) / ((1.0 + c2) * (1.0 - c1))).sqrt())
}

fn ratio_of(pair: &GramPair, u: &Vector, v: &Vector) -> Option<f64> {
    let (c1, c2) = cosines(pair, u, v).ok()?;
    tan_ratio(c1, c2)
}

/// Restricted quadratic data of a 2D section: real parts of the two Gram
/// forms on an ordered frame `(b, B)`.
struct SectionForms {
    p11: f64,
    p22: f64,
    p12: f64,
    q11: f64,
    q22: f64,
    q12: f64,
}

impl SectionForms {
    fn build(pair: &GramPair, b: &Vector, cap_b: &Vector) -> Result<SectionForms> {
        Ok(SectionForms {
            p11: pair.ip1(b, b)?.re,
            p22: pair.ip1(cap_b, cap_b)?.re,
            p12: pair.ip1(b, cap_b)?.re,
            q11: pair.ip2(b, b)?.re,
            q22: pair.ip2(cap_b, cap_b)?.re,
            q12: pair.ip2(b, cap_b)?.re,
        })
    }

    /// Cosines of the pair `(cos a, sin a)`, `(cos c, sin c)` in frame
    /// coordinates. Exact restriction: with real coefficients only
    /// the real parts of the frame products enter.
    fn cosines(&self, a: f64, c: f64) -> Option<(f64, f64)> {
        let (ca, sa) = (a.cos(), a.sin());
        let (cc, sc) = (c.cos(), c.sin());
        let form = |m11: f64, m22: f64, m12: f64| {
            let ip = ca * cc * m11 + sa * sc * m22 + (ca * sc + sa * cc) * m12;
            let nu = (ca * ca * m11 + sa * sa * m22 + 2.0 * ca * sa * m12).max(0.0).sqrt();
            let nv = (cc * cc * m11 + sc * sc * m22 + 2.0 * cc * sc * m12).max(0.0).sqrt();
            if nu <= 0.0 || nv <= 0.0 {
                None
            } else {
                Some((ip / (nu * nv)).clamp(-1.0, 1.0))
            }
        };
        Some((form(self.p11, self.p22, self.p12)?, form(self.q11, self.q22, self.q12)?))
    }
}

const REFINE_ROUNDS: usize = 500;
const REFINE_STALE_LIMIT: usize = 30;
const REFINE_STREAM_BASE: u64 = 1 << 33;

/// Empirically maps the tangent-ratio interval of a pair.
///
/// Three stages: (a) random unit pairs, in parallel, one RNG stream per
/// trial; (b) iterated refinement of a minimizing and a maximizing
/// direction by repeatedly taking the better ray of a random 2D section
/// through the current best; (c) a dense `(a, c)` grid over the section
/// spanned by the two refined directions, evaluated through exact
/// restricted quadratic forms. Any ratio outside
/// `[1/kappa - tol, kappa + tol]` is recorded as a violation.
pub fn ratio_extremes(
    pair: &GramPair,
    spec: &SpectralData,
    cfg: &OracleConfig,
) -> Result<OracleReport> {
    cfg.validate()?;
    let n = pair.n();
    let complex = matches!(pair.mode(), Mode::Complex);
    let theo_min = 1.0 / spec.kappa;
    let theo_max = spec.kappa;

    if n == 1 {
        // a line admits no independent pairs; the interval collapses
        return Ok(OracleReport {
            seed: cfg.seed,
            trials: cfg.trials,
            grid_steps: cfg.grid_steps,
            theoretical_min: theo_min,
            theoretical_max: theo_max,
            empirical_min: 1.0,
            empirical_max: 1.0,
            min_witness: None,
            max_witness: None,
            violation_count: 0,
            violations: Vec::new(),
        });
    }

    let sample_pair = |stream: u64| {
        let mut rng = stream_rng(cfg.seed, stream);
        let u = sample_unit(&mut rng, n, complex);
        let v = sample_unit(&mut rng, n, complex);
        (u, v)
    };

    // stage a: independent random pairs
    let ratios: Vec<Option<f64>> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|i| {
            let (u, v) = sample_pair(i);
            ratio_of(pair, &u, &v)
        })
        .collect();

    let mut best_max: Option<(f64, u64)> = None;
    let mut best_min: Option<(f64, u64)> = None;
    let mut violations = Vec::new();
    let mut violation_count = 0usize;
    for (i, r) in ratios.iter().enumerate() {
        let Some(r) = *r else { continue };
        if best_max.is_none_or(|(b, _)| r > b) {
            best_max = Some((r, i as u64));
        }
        if best_min.is_none_or(|(b, _)| r < b) {
            best_min = Some((r, i as u64));
        }
        if r > theo_max + cfg.tol || r < theo_min - cfg.tol {
            violation_count += 1;
            if violations.len() < MAX_RECORDED_VIOLATIONS {
                let (u, v) = sample_pair(i as u64);
                violations.push(RatioViolation {
                    stage: "sample",
                    index: i as u64,
                    ratio: r,
                    u,
                    v,
                });
            }
        }
    }

    let mut max_witness = best_max.map(|(r, i)| {
        let (u, v) = sample_pair(i);
        RatioWitness { ratio: r, u, v }
    });
    let mut min_witness = best_min.map(|(r, i)| {
        let (u, v) = sample_pair(i);
        RatioWitness { ratio: r, u, v }
    });

    // stage b: refine one minimizing and one maximizing direction; each
    // step replaces the direction by the better ray of a random section
    // through it, so the objective is monotone
    let mut frame = match (&max_witness, &min_witness) {
        (Some(mw), _) => double_basis(pair, &mw.u, &mw.v).ok(),
        (None, Some(nw)) => double_basis(pair, &nw.u, &nw.v).ok(),
        _ => None,
    };
    if let Some(db) = frame.take() {
        let mut small = db.b_small;
        let mut small_val = db.n_small;
        let mut big = db.b_big;
        let mut big_val = db.n_big;
        let mut stale = 0usize;
        for round in 0..REFINE_ROUNDS {
            let mut rng = stream_rng(cfg.seed, REFINE_STREAM_BASE + round as u64);
            let t1 = sample_unit(&mut rng, n, complex);
            let t2 = sample_unit(&mut rng, n, complex);
            let mut gain = 0.0f64;
            if let Ok(db) = double_basis(pair, &small, &t1) {
                if db.n_small <= small_val {
                    gain = gain.max(small_val - db.n_small);
                    small = db.b_small;
                    small_val = db.n_small;
                }
            }
            if let Ok(db) = double_basis(pair, &big, &t2) {
                if db.n_big >= big_val {
                    gain = gain.max(db.n_big - big_val);
                    big = db.b_big;
                    big_val = db.n_big;
                }
            }
            if gain <= 1e-13 * (1.0 + big_val) {
                stale += 1;
                if stale >= REFINE_STALE_LIMIT {
                    break;
                }
            } else {
                stale = 0;
            }
        }
        frame = double_basis(pair, &small, &big).ok();
    }

    // stage c: dense grid on the refined section
    if let Some(db) = &frame {
        let forms = SectionForms::build(pair, &db.b_small, &db.b_big)?;
        let steps = cfg.grid_steps;
        let h = std::f64::consts::PI / steps as f64;
        for i in 0..steps {
            let a = i as f64 * h;
            for j in 0..2 * steps {
                let c = j as f64 * h;
                let Some((c1, c2)) = forms.cosines(a, c) else { continue };
                let Some(r) = tan_ratio(c1, c2) else { continue };
                let rebuild = || {
                    let coeff = |x: f64| Complex64::new(x, 0.0);
                    let u = &db.b_small.scaled(coeff(a.cos())) + &db.b_big.scaled(coeff(a.sin()));
                    let v = &db.b_small.scaled(coeff(c.cos())) + &db.b_big.scaled(coeff(c.sin()));
                    (u, v)
                };
                if max_witness.as_ref().is_none_or(|w| r > w.ratio) {
                    let (u, v) = rebuild();
                    max_witness = Some(RatioWitness { ratio: r, u, v });
                }
                if min_witness.as_ref().is_none_or(|w| r < w.ratio) {
                    let (u, v) = rebuild();
                    min_witness = Some(RatioWitness { ratio: r, u, v });
                }
                if r > theo_max + cfg.tol || r < theo_min - cfg.tol {
                    violation_count += 1;
                    if violations.len() < MAX_RECORDED_VIOLATIONS {
                        let (u, v) = rebuild();
                        violations.push(RatioViolation {
                            stage: "grid",
                            index: (i * 2 * steps + j) as u64,
                            ratio: r,
                            u,
                            v,
                        });
                    }
                }
            }
        }
    }

    Ok(OracleReport {
        seed: cfg.seed,
        trials: cfg.trials,
        grid_steps: cfg.grid_steps,
        theoretical_min: theo_min,
        theoretical_max: theo_max,
        empirical_min: min_witness.as_ref().map_or(1.0, |w| w.ratio),
        empirical_max: max_witness.as_ref().map_or(1.0, |w| w.ratio),
        min_witness,
        max_witness,
        violation_count,
        violations,
    })
}

/// Convenience: analyze the pair, then map its ratio interval.
pub fn ratio_extremes_of(pair: &GramPair, cfg: &OracleConfig) -> Result<OracleReport> {
    let spec = analyze(pair, DEFAULT_TOL_MEMBER)?;
    ratio_extremes(pair, &spec, cfg)
}

/// Runs [`ratio_extremes`] on one seeded random pair per configured
/// dimension.
pub fn sweep(cfg: &OracleConfig, mode: Mode) -> Result<Vec<(usize, OracleReport)>> {
    cfg.validate()?;
    let mut out = Vec::new();
    for (k, &n) in cfg.dims.iter().enumerate() {
        let pair = random_pair(cfg.seed.wrapping_add(k as u64), n, mode)?;
        let spec = analyze(&pair, DEFAULT_TOL_MEMBER)?;
        out.push((n, ratio_extremes(&pair, &spec, cfg)?));
    }
    Ok(out)
}

/// Minimizes `x y` over the grid restriction of the feasible region
/// `|x| <= 1`, `|y| <= 1`, `|x - y| <= 2 mu`. The exact minimum is
/// `-mu^2`; the grid minimum converges to it as resolution grows.
pub fn hexagon_min(mu: f64, grid_steps: usize) -> Result<HexagonReport> {
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::OutOfRange(format!("mu {mu} outside [0, 1]")));
    }
    if grid_steps < 8 {
        return Err(Error::OutOfRange(format!(
            "grid_steps {grid_steps} below the minimum of 8"
        )));
    }
    // admit exact-boundary points despite rounding in the grid values
    let cap = 2.0 * mu + 1e-15 + 2.0 * mu * 1e-12;
    let coord = |i: usize| -1.0 + 2.0 * i as f64 / (grid_steps - 1) as f64;
    let mut best = f64::INFINITY;
    let mut arg = (0.0, 0.0);
    for i in 0..grid_steps {
        let x = coord(i);
        for j in 0..grid_steps {
            let y = coord(j);
            if (x - y).abs() <= cap {
                let p = x * y;
                if p < best {
                    best = p;
                    arg = (x, y);
                }
            }
        }
    }
    Ok(HexagonReport {
        mu,
        grid_steps,
        min_product: best,
        arg_x: arg.0,
        arg_y: arg.1,
        floor: -mu * mu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

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
    fn extremes_converge_on_the_diagonal_fixture() {
        let (pair, spec) = fix_a();
        let cfg = OracleConfig { trials: 200, grid_steps: 64, ..OracleConfig::default() };
        let rep = ratio_extremes(&pair, &spec, &cfg).unwrap();
        assert!(rep.violations.is_empty());
        assert_abs_diff_eq!(rep.empirical_max, 2.0, epsilon = 1e-3);
        assert_abs_diff_eq!(rep.empirical_min, 0.5, epsilon = 1e-3);
        assert!(rep.empirical_max <= 2.0 + 1e-9);
        assert!(rep.empirical_min >= 0.5 - 1e-9);
        let w = rep.max_witness.unwrap();
        assert_abs_diff_eq!(ratio_of(&pair, &w.u, &w.v).unwrap(), w.ratio, epsilon = 1e-12);
    }

    #[test]
    fn extremes_are_reproducible_and_thread_independent() {
        let (pair, spec) = fix_a();
        let cfg = OracleConfig { trials: 100, grid_steps: 32, ..OracleConfig::default() };
        let a = ratio_extremes(&pair, &spec, &cfg).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| ratio_extremes(&pair, &spec, &cfg).unwrap());
        assert_eq!(a.empirical_max.to_bits(), b.empirical_max.to_bits());
        assert_eq!(a.empirical_min.to_bits(), b.empirical_min.to_bits());
    }

    #[test]
    fn proportional_pair_stays_at_ratio_one() {
        let pair = GramPair::new(
            HermMatrix::identity(3),
            HermMatrix::from_diag(&[2.0, 2.0, 2.0]).unwrap(),
            Mode::Real,
        )
        .unwrap();
        let spec = analyze(&pair, DEFAULT_TOL_MEMBER).unwrap();
        let cfg = OracleConfig { trials: 50, grid_steps: 16, ..OracleConfig::default() };
        let rep = ratio_extremes(&pair, &spec, &cfg).unwrap();
        assert!(rep.violations.is_empty());
        assert_abs_diff_eq!(rep.empirical_max, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(rep.empirical_min, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn hexagon_grid_hits_the_floor_on_aligned_resolutions() {
        for &mu in &[0.0, 0.3, 0.5, 0.9] {
            let rep = hexagon_min(mu, 601).unwrap();
            assert_abs_diff_eq!(rep.min_product, -mu * mu, epsilon = 1e-12);
            assert!(rep.min_product >= rep.floor - 1e-12);
        }
        // off-grid mu still converges within grid resolution
        let rep = hexagon_min(0.37, 601).unwrap();
        let res = 2.0 / 600.0;
        assert!(rep.min_product >= -0.37f64 * 0.37 - 1e-12);
        assert!((rep.min_product + 0.37 * 0.37).abs() < 2.0 * res);
        assert!(hexagon_min(1.5, 601).is_err());
        assert!(hexagon_min(0.5, 4).is_err());
    }

    #[test]
    fn config_validation_rejects_degenerate_settings() {
        let (pair, spec) = fix_a();
        let bad = OracleConfig { trials: 0, ..OracleConfig::default() };
        assert!(ratio_extremes(&pair, &spec, &bad).is_err());
        let bad = OracleConfig { grid_steps: 4, ..OracleConfig::default() };
        assert!(ratio_extremes(&pair, &spec, &bad).is_err());
    }
}
