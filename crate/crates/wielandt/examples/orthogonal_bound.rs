//! The constant `chi` as the worst-case cosine between once-orthogonal
//! vectors, checked by brute-force sampling, plus the floor for the
//! product of the two cosines.
//!
//! If `<u,v>_1 = 0`, the pair need not stay orthogonal under the second
//! product, but its cosine there can never exceed
//! `chi = (M^2 - m^2) / (M^2 + m^2)` — and pairs built from extreme
//! pencil eigenvectors reach it. Independently, the product
//! `cos(phi) cos(psi)` is bounded below by `-mu^2`; that floor comes
//! from minimizing `x y` over the hexagon `|x| <= 1`, `|y| <= 1`,
//! `|x - y| <= 2 mu`.
//!
//! Run with `cargo run --example orthogonal_bound`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use wielandt::linalg::{Complex64, HermMatrix, Vector};
use wielandt::oracle::hexagon_min;
use wielandt::spectrum::{analyze, GramPair, Mode};

fn sample(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| StandardNormal.sample(rng)).collect()
}

fn main() -> wielandt::Result<()> {
    let g1 = HermMatrix::from_diag(&[1.0, 1.0, 1.0, 1.0])?;
    let g2 = HermMatrix::from_diag(&[1.0, 2.0, 5.0, 9.0])?;
    let pair = GramPair::new(g1, g2, Mode::Real)?;
    let spec = analyze(&pair, 1e-8)?;
    println!("chi = {:.12}, mu = {:.12}\n", spec.chi, spec.mu);

    // sample orthogonal pairs: draw u, project it out of v
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for _ in 0..20_000 {
        let a = sample(&mut rng, 4);
        let b = sample(&mut rng, 4);
        let na2: f64 = a.iter().map(|x| x * x).sum();
        let ab: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
        let c: Vec<f64> = b.iter().zip(&a).map(|(y, x)| y - ab / na2 * x).collect();
        let u = Vector::new(a.iter().map(|&x| Complex64::new(x, 0.0)).collect())?;
        let v = Vector::new(c.iter().map(|&x| Complex64::new(x, 0.0)).collect())?;
        if v.is_zero() {
            continue;
        }
        let cos2 = pair.ip2(&u, &v)?.norm() / (pair.norm2(&u)? * pair.norm2(&v)?);
        worst = worst.max(cos2);
    }
    println!("20000 orthogonal samples: max |cos psi| = {worst:.12} <= chi");

    // the extreme eigenvector mixture attains chi exactly
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let u = Vector::new(vec![
        Complex64::new(h, 0.0),
        Complex64::ZERO,
        Complex64::ZERO,
        Complex64::new(h, 0.0),
    ])?;
    let v = Vector::new(vec![
        Complex64::new(h, 0.0),
        Complex64::ZERO,
        Complex64::ZERO,
        Complex64::new(-h, 0.0),
    ])?;
    let cos2 = pair.ip2(&u, &v)?.norm() / (pair.norm2(&u)? * pair.norm2(&v)?);
    println!("extreme mixture:          |cos psi| = {cos2:.12}  (chi = {:.12})\n", spec.chi);

    // the cosine-product floor, found by the deterministic grid search
    for mu in [0.1, 0.3333333333333333, 0.5, 0.9] {
        let hx = hexagon_min(mu, 2001)?;
        println!(
            "mu = {mu:.4}: grid min of cos(phi)cos(psi) region = {:.10} (floor -mu^2 = {:.10}) at x={:.4}, y={:.4}",
            hx.min_product, hx.floor, hx.arg_x, hx.arg_y
        );
    }
    Ok(())
}
