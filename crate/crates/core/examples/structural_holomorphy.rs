//! Builds `w = Φ e^{-K}` and checks that it is structural-holomorphic.
//!
//! The structural residual `w_z̄ + w K_z̄` vanishes for these `w`; the full
//! residual `K w_z̄ + w K_z̄` does not, unless `K_z̄ = 0`.

use vekua::structure::{construct_solution, d_structural, holo_residual, k_transform, HoloMode};
use vekua::{parse, ComplexPoint, GridDomain, StepPolicy, StructuralFunction};

fn main() -> vekua::Result<()> {
    let grid = GridDomain::disk(ComplexPoint::new(0.0, 0.0), 0.9, 48, 48)?;
    let policy = StepPolicy::default();

    for (k, phi) in [("conj(z)", "1"), ("exp(z*conj(z))", "z^2"), ("z*conj(z) + i*conj(z)", "exp(z)")] {
        let s = StructuralFunction::parse(k)?;
        let w = construct_solution(parse(phi)?, &s);
        let label = w.expr().map(|e| e.to_string()).unwrap_or_default();
        let structural = holo_residual(&w, &s, &grid, &policy, HoloMode::Structural)?;
        let full = holo_residual(&w, &s, &grid, &policy, HoloMode::Full)?;
        println!("K = {k}, w = {label}");
        println!("  structural linf {:.3e}   full linf {:.3e}", structural.linf(), full.linf());
    }

    let s = StructuralFunction::parse("conj(z)")?;
    let w = parse("z")?;
    let p = ComplexPoint::new(0.5, 0.5);
    let d = d_structural(&w, &s, p, &policy)?;
    println!("\nD(z)/dz = {:.6}   D(z)/dzbar = {:.6} at {p}", d.d_z, d.d_zbar);
    let t = k_transform(p.z(), s.k(p.z())?);
    println!("wK at {p}: u~ = {:.3}, v~ = {:.3}", t.u_tilde, t.v_tilde);
    Ok(())
}
