//! Extracts real and complex coefficients from a kappa-form structure and
//! checks the resulting Carleman-Bers-Vekua equation.

use vekua::structure::{
    cbv_from_real, cbv_residual, coefficients_from_structure, construct_solution, CbvCoefficients,
};
use vekua::{parse, ComplexPoint, GridDomain, StepPolicy, StructuralFunction};

fn main() -> vekua::Result<()> {
    let policy = StepPolicy::default();
    let s = StructuralFunction::parse_kappa("z*conj(z)/2 + i*conj(z)")?;
    let p = ComplexPoint::new(0.3, -0.2);

    let rc = coefficients_from_structure(&s, p, &policy)?;
    println!("at {p}: a = {:.6}  b = {:.6}  c = {:.6}  d = {:.6}", rc.a, rc.b, rc.c, rc.d);
    let cbv = cbv_from_real(&rc);
    let exact = parse("z/2 + i")?.eval(p.z())?;
    println!("A = {:.6} (kappa_zbar = {exact:.6})  B = {:.2e}", cbv.a, cbv.b.norm());

    let grid = GridDomain::disk(ComplexPoint::new(0.0, 0.0), 1.0, 40, 40)?;
    let coeffs = CbvCoefficients::from_structure(&s, &policy)?;
    let w = construct_solution(parse("1 + z")?, &s);
    let r = cbv_residual(&w, &coeffs, &grid, &policy)?;
    println!("w_zbar + A w residual for (1 + z) exp(-K): linf {:.3e}", r.linf());
    Ok(())
}
