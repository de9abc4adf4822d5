//! Evaluates the nonlinear Laplacian Δ_K on constructed solutions.

use vekua::nlaplace::{eta, nl_laplace_residual, nonlinear_laplace, psi};
use vekua::structure::construct_solution;
use vekua::{parse, ComplexPoint, GridDomain, StepPolicy, StructuralFunction};

fn main() -> vekua::Result<()> {
    let policy = StepPolicy::default();
    let s = StructuralFunction::parse("exp(z*conj(z))")?;
    let p = ComplexPoint::new(0.2, 0.1);
    println!("psi = {:.6}   eta = {:.6} at {p}", psi(&s, p, &policy)?, eta(&s, p, &policy)?);

    let grid = GridDomain::disk(ComplexPoint::new(0.0, 0.0), 0.75, 40, 40)?;
    let w = construct_solution(parse("z + 1")?, &s);
    let r = nl_laplace_residual(&w, &s, &grid, &policy)?;
    println!("Delta_K (z + 1) exp(-K): linf {:.3e} over {} cells", r.linf(), r.field.valid_count());

    let plain = parse("z*conj(z)")?;
    println!("Delta_K (z conj z) at {p}: {:.6}", nonlinear_laplace(&plain, &s, p, &policy)?);
    Ok(())
}
