//! Nonlinear Cauchy-Riemann system on a manufactured solution.
//!
//! With `u = e^{-bx+ay}`, `v = e^{bx-ay}` the pair `f = au + bv`,
//! `g = -bu + av` satisfies the system exactly.

use vekua::nlaplace::{
    convention_holds, fg_cr_check, laplace_rhs_check, ncr_residual, Convention, NcrPair,
};
use vekua::{ComplexPoint, GridDomain, StepPolicy, StructuralFunction};

fn main() -> vekua::Result<()> {
    let (a, b) = (0.7, -0.4);
    let policy = StepPolicy::default();
    let grid = GridDomain::rect(-1.0, 1.0, -1.0, 1.0, 40, 40)?;

    let u = move |x: f64, y: f64| (-b * x + a * y).exp();
    let v = move |x: f64, y: f64| (b * x - a * y).exp();
    let pair = NcrPair::labelled(
        move |u, v| a * u + b * v,
        move |u, v| -b * u + a * v,
        "a*u + b*v",
        "-b*u + a*v",
    );

    let (r1, r2) = ncr_residual(&u, &v, &pair, &grid, &policy)?;
    println!("ncr residuals: {:.3e} {:.3e}", r1.linf(), r2.linf());
    let (l1, l2) = laplace_rhs_check(&u, &v, &pair, &grid, &policy)?;
    println!("second-order residuals: {:.3e} {:.3e}", l1.linf(), l2.linf());

    let probe = GridDomain::rect(-2.0, 2.0, -2.0, 2.0, 9, 9)?;
    let s = StructuralFunction::parse_kappa("0.5*conj(z)")?;
    let frozen = NcrPair::from_structure(&s, ComplexPoint::new(0.1, 0.2), &policy)?;
    for (name, p) in [("manufactured", &pair), ("from kappa", &frozen)] {
        for conv in [Convention::Cr, Convention::Swapped] {
            let holds = convention_holds(&fg_cr_check(p, &probe, &policy, conv)?);
            println!("{name:<13} {:<8} {}", conv.name(), if holds { "holds" } else { "fails" });
        }
    }
    Ok(())
}
