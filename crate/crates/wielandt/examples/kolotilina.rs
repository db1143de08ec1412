//! The explicit eigenvector mixture attaining the sharp modulus bound.
//!
//! For a positive definite `B` with extreme eigenvalues `l_min <= l_max`
//! and any prescribed `cos(phi) in [0, 1)`, mixing the extreme
//! eigenvectors as
//!
//! ```text
//! x = (sqrt(1+c) x_hi + sqrt(1-c) x_lo) / sqrt(2)
//! y = eps (sqrt(1+c) x_hi - sqrt(1-c) x_lo) / sqrt(2)
//! ```
//!
//! (`c = cos(phi)`, `eps` any unit scalar) produces unit vectors with
//! `|<x,y>| = c` whose `B`-inner product saturates the sharp cosine
//! bound `(chi + c) / (1 + chi c)` — the exact worst case of angle
//! flattening under the norm induced by `B`.
//!
//! Run with `cargo run --example kolotilina`.

use wielandt::extremal::{classify, construct_kolotilina};
use wielandt::linalg::{inner, norm, Complex64, HermMatrix};
use wielandt::spectrum::{analyze, GramPair, Mode};

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn main() -> wielandt::Result<()> {
    // hand-checkable instance: B = diag(4,1), cos(phi) = 3/5 gives
    // x = (2,1)/sqrt(5), y = (2,-1)/sqrt(5) and |y*Bx| = 3 exactly
    let b = HermMatrix::from_diag(&[4.0, 1.0])?;
    let (x, y) = construct_kolotilina(&b, 0.6, Complex64::ONE)?;
    println!("B = diag(4,1), cos(phi) = 0.6");
    println!("  x = [{:.12}, {:.12}]", x[0].re, x[1].re);
    println!("  y = [{:.12}, {:.12}]", y[0].re, y[1].re);
    println!("  |<x,y>|   = {:.12}", inner(&HermMatrix::from_diag(&[1.0, 1.0])?, &x, &y)?.norm());
    println!("  |<x,y>_B| = {:.12}\n", inner(&b, &x, &y)?.norm());

    // the mixture saturates the cosine bound for every target angle
    let chi = 3.0 / 5.0;
    for c in [0.0, 0.3, 0.6, 0.9] {
        let (x, y) = construct_kolotilina(&b, c, Complex64::ONE)?;
        let lhs = inner(&b, &x, &y)?.norm();
        let rhs = (chi + c) / (1.0 + chi * c) * norm(&b, &x)? * norm(&b, &y)?;
        println!("cos(phi) = {c:.1}: |<x,y>_B| = {lhs:.12} vs bound {rhs:.12}");
    }

    // with a non-trivial first product, construct in the reduced
    // coordinates and map back through the Cholesky factor of G1
    let g1 = HermMatrix::from_rows(vec![
        vec![re(2.0), re(0.5)],
        vec![re(0.5), re(1.0)],
    ])?;
    let g2 = HermMatrix::from_rows(vec![
        vec![re(3.0), re(-0.4)],
        vec![re(-0.4), re(0.8)],
    ])?;
    let pair = GramPair::new(g1, g2, Mode::Real)?;
    let spec = analyze(&pair, 1e-8)?;
    let chol = pair.g1().cholesky()?;
    let s = chol.reduce(pair.g2());
    let c = 0.25;
    let (xt, yt) = construct_kolotilina(&s, c, Complex64::ONE)?;
    let x = chol.solve_adjoint(&xt);
    let y = chol.solve_adjoint(&yt);
    let cos1 = pair.ip1(&x, &y)?.norm() / (pair.norm1(&x)? * pair.norm1(&y)?);
    let cos2 = pair.ip2(&x, &y)?.norm() / (pair.norm2(&x)? * pair.norm2(&y)?);
    let sharp = (spec.chi + c) / (1.0 + spec.chi * c);
    println!("\ngeneral pair, target cos(Phi) = {c}");
    println!("  achieved cos(Phi) under G1 = {cos1:.12}");
    println!("  cos(Psi) under G2 = {cos2:.12} = sharp bound {sharp:.12}");
    let cls = classify(&spec, &pair, &x, &y)?;
    println!("  classified as line-angle equality (lower side): {}", cls.lines_left);
    Ok(())
}
