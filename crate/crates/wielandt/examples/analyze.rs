//! Reduce a pair of inner products to its norm-ratio interval.
//!
//! Two positive definite Gram matrices `G1`, `G2` put two norms on the
//! same space; the ratio `||v||_2 / ||v||_1` sweeps an interval `[m, M]`
//! as `v` ranges over nonzero vectors. Everything else the crate does —
//! angle-distortion bounds, equality cases, the verification oracle —
//! is driven by the four constants derived from that interval.
//!
//! Run with `cargo run --example analyze`.

use wielandt::linalg::{Complex64, HermMatrix, Matrix};
use wielandt::spectrum::{analyze, GramPair, Mode};

fn print_spectrum(label: &str, pair: &GramPair) -> wielandt::Result<()> {
    let spec = analyze(pair, 1e-8)?;
    println!("{label}");
    println!("  pencil eigenvalues {:?}", spec.pencil_evals);
    println!("  m = {:.12}   M = {:.12}", spec.m_min, spec.m_max);
    println!("  kappa = M/m             = {:.12}", spec.kappa);
    println!("  chi   = (M^2-m^2)/(M^2+m^2) = {:.12}", spec.chi);
    println!("  mu    = (M-m)/(M+m)     = {:.12}", spec.mu);
    println!(
        "  attaining subspaces: dim V_m = {}, dim V_M = {}{}",
        spec.min_basis.len(),
        spec.max_basis.len(),
        if spec.proportional { "  (proportional: the two norms agree up to scale)" } else { "" },
    );
    // the pencil basis is orthonormal under G1 and diagonal under G2
    for (i, x) in spec.pencil_basis.iter().enumerate() {
        let n1 = pair.norm1(x)?;
        let n2 = pair.norm2(x)?;
        println!("  basis vector {i}: ||x||_1 = {n1:.6}, ||x||_2/||x||_1 = {:.6}", n2 / n1);
    }
    println!();
    Ok(())
}

fn main() -> wielandt::Result<()> {
    // the running diagonal fixture: ratios 1 and 2 on the axes
    let g1 = HermMatrix::from_diag(&[1.0, 1.0])?;
    let g2 = HermMatrix::from_diag(&[1.0, 4.0])?;
    print_spectrum("diag(1,1) vs diag(1,4)", &GramPair::new(g1, g2, Mode::Real)?)?;

    // the second product can come from an invertible matrix A:
    // <u,v>_2 = (Av)*(Au), so G2 = A*A and kappa equals cond(A)
    let a = Matrix::from_rows(vec![
        vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)],
        vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    ])?;
    print_spectrum("induced by the shear [[1,1],[0,1]]", &GramPair::from_matrix(a, Mode::Real)?)?;

    // a complex pair: G2 = [[2, i], [-i, 2]] has pencil spectrum {1, 3}
    let g1 = HermMatrix::from_diag(&[1.0, 1.0])?;
    let g2 = HermMatrix::from_rows(vec![
        vec![Complex64::new(2.0, 0.0), Complex64::new(0.0, 1.0)],
        vec![Complex64::new(0.0, -1.0), Complex64::new(2.0, 0.0)],
    ])?;
    print_spectrum("complex off-diagonal coupling", &GramPair::new(g1, g2, Mode::Complex)?)?;

    // proportional products collapse the interval to a point
    let g1 = HermMatrix::from_diag(&[2.0, 2.0, 2.0])?;
    let g2 = HermMatrix::from_diag(&[6.0, 6.0, 6.0])?;
    print_spectrum("proportional pair 3 * I", &GramPair::new(g1, g2, Mode::Real)?)?;
    Ok(())
}
