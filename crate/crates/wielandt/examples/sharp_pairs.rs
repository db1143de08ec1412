//! Construct vector pairs that attain the tangent bounds exactly, and
//! classify when a given pair is extremal.
//!
//! Equality in `tan(psi/2) <= kappa tan(phi/2)` holds exactly when the
//! normalized sum of the pair lies in the minimum-ratio subspace and the
//! normalized difference in the maximum-ratio subspace; the mirrored
//! membership (swap `v` for `-v`) characterizes the lower bound. The
//! same sets, up to a unit phase, govern equality for line angles.
//!
//! Run with `cargo run --example sharp_pairs`.

use wielandt::bounds::tan_bounds;
use wielandt::extremal::{classify, construct_main, Side};
use wielandt::linalg::{Complex64, HermMatrix};
use wielandt::spectrum::{analyze, GramPair, Mode};

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn main() -> wielandt::Result<()> {
    let g1 = HermMatrix::from_rows(vec![
        vec![re(2.0), re(0.3), re(0.0)],
        vec![re(0.3), re(1.0), re(0.1)],
        vec![re(0.0), re(0.1), re(0.7)],
    ])?;
    let g2 = HermMatrix::from_rows(vec![
        vec![re(1.0), re(0.2), re(-0.1)],
        vec![re(0.2), re(3.0), re(0.4)],
        vec![re(-0.1), re(0.4), re(1.5)],
    ])?;
    let pair = GramPair::new(g1, g2, Mode::Real)?;
    let spec = analyze(&pair, 1e-8)?;
    println!("kappa = {:.12}\n", spec.kappa);

    for phi in [0.4, 1.2, std::f64::consts::FRAC_PI_2, 2.6] {
        for side in [Side::Right, Side::Left] {
            let ep = construct_main(&spec, &pair, phi, side)?;
            let (lo, hi) = tan_bounds(&spec, phi)?;
            let target = match side {
                Side::Right => hi,
                Side::Left => lo,
            };
            let t = (phi / 2.0).tan();
            println!(
                "phi = {phi:.4}  side {side:?}: tan(psi/2)/tan(phi/2) = {:.12} (target {:.12})",
                ep.achieved_ratio,
                target / t,
            );
            let cls = classify(&spec, &pair, &ep.u, &ep.v)?;
            println!(
                "    classified: main_right={} main_left={} lines_right={} lines_left={}",
                cls.main_right, cls.main_left, cls.lines_right, cls.lines_left
            );
        }
    }

    // perturbing an extremal pair off the equality set loses equality:
    // the achieved ratio drops strictly inside the interval
    let ep = construct_main(&spec, &pair, 1.0, Side::Right)?;
    let exact = classify(&spec, &pair, &ep.u, &ep.v)?;
    println!(
        "\nmembership residuals of the exact pair: min {:.3e}, max {:.3e}",
        exact.residuals["main_right_min"], exact.residuals["main_right_max"]
    );
    let mut data: Vec<Complex64> = (0..3).map(|i| ep.u[i]).collect();
    data[0] += Complex64::new(1e-3, 0.0);
    let bent = wielandt::linalg::Vector::new(data)?;
    let cls = classify(&spec, &pair, &bent, &ep.v)?;
    println!(
        "after a 1e-3 kick: main_right = {} (residuals min {:.3e}, max {:.3e})",
        cls.main_right,
        cls.residuals["main_right_min"],
        cls.residuals["main_right_max"]
    );
    Ok(())
}
