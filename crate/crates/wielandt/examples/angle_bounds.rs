//! Measure how much a pair of vectors' angle moves between two inner
//! products, and check every sharp bound the crate knows about.
//!
//! The central estimate is the tangent bound
//!
//! ```text
//! (m/M) tan(phi/2) <= tan(psi/2) <= (M/m) tan(phi/2)
//! ```
//!
//! where `phi` is the angle under the first product and `psi` under the
//! second; the same inequality holds for angles between lines (complex
//! one-dimensional subspaces). A family of cosine corollaries follows.
//!
//! Run with `cargo run --example angle_bounds`.

use wielandt::angles::full_report;
use wielandt::bounds::{evaluate_pair, tan_bounds};
use wielandt::linalg::{Complex64, HermMatrix, Vector};
use wielandt::spectrum::{analyze, GramPair, Mode};

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn main() -> wielandt::Result<()> {
    let g1 = HermMatrix::from_diag(&[1.0, 1.0, 1.0])?;
    let g2 = HermMatrix::from_rows(vec![
        vec![re(2.0), re(0.5), re(0.0)],
        vec![re(0.5), re(1.0), re(0.25)],
        vec![re(0.0), re(0.25), re(0.5)],
    ])?;
    let pair = GramPair::new(g1, g2, Mode::Real)?;
    let spec = analyze(&pair, 1e-8)?;
    println!(
        "ratio interval [m, M] = [{:.6}, {:.6}], kappa = {:.6}\n",
        spec.m_min, spec.m_max, spec.kappa
    );

    let u = Vector::new(vec![re(1.0), re(2.0), re(-1.0)])?;
    let v = Vector::new(vec![re(0.5), re(-1.0), re(3.0)])?;

    // the four angles: vectors and lines, under each product
    let angles = full_report(&pair, &u, &v)?;
    println!("vector angle:  phi = {:.9}  ->  psi = {:.9}", angles.phi, angles.psi);
    println!("line angle:    Phi = {:.9}  ->  Psi = {:.9}", angles.phi_line, angles.psi_line);
    let (lo, hi) = tan_bounds(&spec, angles.phi)?;
    let t = (angles.psi / 2.0).tan();
    println!("tan(psi/2) = {t:.9} must lie in [{lo:.9}, {hi:.9}]\n");

    // every applicable estimate, with observed value and slack
    println!(
        "{:>14}  {:>14}  {:>14}  {:>14}  holds",
        "bound", "lower", "upper", "observed"
    );
    for b in evaluate_pair(&spec, &pair, &u, &v)? {
        let fmt = |x: Option<f64>| x.map_or_else(|| format!("{:>14}", "-"), |x| format!("{x:>14.8}"));
        println!(
            "{:>14?}  {}  {}  {:>14.8}  {}",
            b.name,
            fmt(b.lower),
            fmt(b.upper),
            b.observed,
            b.holds
        );
    }

    // orthogonality under one product does not survive the other, but
    // the second cosine is capped by the constant chi
    let u = Vector::new(vec![re(1.0), re(0.0), re(1.0)])?;
    let v = Vector::new(vec![re(1.0), re(1.0), re(-1.0)])?;
    let z1 = pair.ip1(&u, &v)?;
    let cos2 = pair.ip2(&u, &v)?.norm() / (pair.norm2(&u)? * pair.norm2(&v)?);
    println!(
        "\northogonal pair: <u,v>_1 = {:.1}, |cos psi_2| = {:.9} <= chi = {:.9}",
        z1.re, cos2, spec.chi
    );
    Ok(())
}
