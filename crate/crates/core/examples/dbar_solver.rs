//! Solves ∂h/∂z̄ = φ on the unit disk and checks the result.
//!
//! Run with `cargo run --release --example dbar_solver -- [n]`.

use std::time::Instant;

use vekua::dbar::{verify_dbar, DbarCandidate, PompeiuSolution};
use vekua::{parse, Complex64, ComplexPoint, GridDomain, StepPolicy};

fn main() -> vekua::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(64);
    let grid = GridDomain::disk(ComplexPoint::new(0.0, 0.0), 1.0, n, n)?;
    let policy = StepPolicy::default();

    for (src, exact) in [("1", "conj(z)"), ("z", "z*conj(z) - 1")] {
        let phi = parse(src)?;
        let exact = parse(exact)?;
        let t = Instant::now();
        let h = PompeiuSolution::new(&phi, &grid)?;
        let elapsed = t.elapsed();

        let mut worst: f64 = 0.0;
        for (p, v) in h.values().valid().filter(|(p, _)| p.z().norm() <= 0.5) {
            worst = worst.max((v - exact.eval(p.z())?).norm());
        }
        let report = verify_dbar(DbarCandidate::Solution(&h), &phi, &grid, &policy)?;
        println!(
            "phi = {src:<3} n = {n:<4} max |h - ({exact})| on |z| <= 0.5: {worst:.3e}   \
             interior residual linf: {:.3e}   ({elapsed:.2?})",
            report.linf()
        );
    }

    let zeta = grid.center(n / 2, n / 2);
    let h = vekua::dbar::pompeiu_solve(&|_z: Complex64| Complex64::new(1.0, 0.0), &grid, zeta)?;
    println!("single target h({zeta}) = {h:.6}");
    Ok(())
}
