//! Run the randomized verification suite against a pair and read its
//! report — then corrupt the spectral data on purpose and watch the
//! suite catch the lie.
//!
//! The suite re-derives every claim numerically: seeded random sampling
//! for the inequalities, exact fixtures for the identities, constructed
//! pairs for the equality cases, and a three-stage search (random
//! sampling, iterated two-dimensional refinement, dense section grid)
//! for the empirical norm-ratio interval. Identical seeds give bitwise
//! identical reports.
//!
//! Run with `cargo run --release --example verify_suite`.

use wielandt::linalg::{Complex64, HermMatrix};
use wielandt::oracle::{run_suite, run_suite_with_spectrum, OracleConfig};
use wielandt::spectrum::{analyze, GramPair, Mode};

fn main() -> wielandt::Result<()> {
    // a 3x3 complex pair with no special structure
    let z = Complex64::new;
    let g1 = HermMatrix::from_rows(vec![
        vec![z(2.0, 0.0), z(0.3, 0.2), z(0.0, -0.1)],
        vec![z(0.3, -0.2), z(1.5, 0.0), z(0.4, 0.0)],
        vec![z(0.0, 0.1), z(0.4, 0.0), z(1.0, 0.0)],
    ])?;
    let g2 = HermMatrix::from_rows(vec![
        vec![z(1.0, 0.0), z(0.0, 0.5), z(0.2, 0.0)],
        vec![z(0.0, -0.5), z(2.5, 0.0), z(-0.3, 0.1)],
        vec![z(0.2, 0.0), z(-0.3, -0.1), z(4.0, 0.0)],
    ])?;
    let pair = GramPair::new(g1, g2, Mode::Complex)?;

    let cfg = OracleConfig { seed: 42, trials: 400, grid_steps: 128, ..OracleConfig::default() };
    let report = run_suite(&pair, &cfg)?;
    println!(
        "{} checks, {} failed; empirical ratio interval [{:.9}, {:.9}] vs [{:.9}, {:.9}]\n",
        report.entries.len(),
        report.failed,
        report.ratio.empirical_min,
        report.ratio.empirical_max,
        report.ratio.theoretical_min,
        report.ratio.theoretical_max,
    );
    for e in &report.entries {
        println!(
            "  {} {:<34} worst {:>10.3e}  (tolerance {:>8.1e}, {} trials)",
            if e.passed { "pass" } else { "FAIL" },
            e.name,
            e.worst,
            e.tolerance,
            e.trials
        );
    }

    // feed the suite a spectrum whose minimum ratio is inflated by 5%:
    // the sampled world no longer matches the claimed constants
    let spec = analyze(&pair, 1e-8)?;
    let corrupted = spec.with_m_scaled(1.05);
    let caught = run_suite_with_spectrum(&pair, &corrupted, &cfg)?;
    println!(
        "\nwith a corrupted spectrum: passed = {}, {} of {} checks failed, {} ratio violations",
        caught.passed,
        caught.failed,
        caught.entries.len(),
        caught.ratio.violation_count,
    );
    for e in caught.entries.iter().filter(|e| !e.passed) {
        println!("  FAIL {:<34} worst {:.3e}", e.name, e.worst);
    }
    Ok(())
}
