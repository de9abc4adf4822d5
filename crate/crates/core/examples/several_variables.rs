//! Structural operators in two complex variables.

use std::sync::Arc;

use vekua::nlaplace::{d_structural_nd, nonlinear_laplace_nd, Combine, MultiPoint, MultiStructure, SeparableField};
use vekua::{parse, Complex64, StepPolicy, Wrt};

fn main() -> vekua::Result<()> {
    let policy = StepPolicy::default();
    let at = MultiPoint::new(vec![Complex64::new(0.3, -0.2), Complex64::new(-0.1, 0.4)])?;

    // K(z¹, z²) = z̄¹ + z̄², so w = e^{-K} is annihilated by both D/∂z̄^j.
    let k = SeparableField::new(vec![Arc::new(parse("conj(z)")?), Arc::new(parse("conj(z)")?)], Combine::Sum);
    let w = SeparableField::new(
        vec![Arc::new(parse("exp(-conj(z))")?), Arc::new(parse("exp(-conj(z))")?)],
        Combine::Product,
    );
    println!("K = {}", k.describe());
    println!("w = {}", w.describe());
    let s = MultiStructure(Arc::new(k));
    for j in 0..2 {
        let r = d_structural_nd(&w, &s, &at, j, Wrt::ZBar, &policy)?;
        println!("  |Dw/dzbar{}| = {:.3e}", j + 1, r.norm());
    }
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let r = nonlinear_laplace_nd(&w, &s, &at, i, j, &policy)?;
        println!("  Delta_K[{i}{j}] w = {:.3e}", r.norm());
    }
    Ok(())
}
