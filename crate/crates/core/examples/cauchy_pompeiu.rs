//! Recovers `w(ζ)` from boundary values and `w_z̄` on the unit disk.

use vekua::dbar::cauchy_pompeiu_reconstruct;
use vekua::{parse, ComplexPoint, GridDomain, StepPolicy};

fn main() -> vekua::Result<()> {
    let policy = StepPolicy::default();
    let grid = GridDomain::disk(ComplexPoint::new(0.0, 0.0), 1.0, 128, 128)?;
    let zeta = grid.center(70, 52);

    for src in ["exp(z)", "z*conj(z)", "conj(z)^2 + z"] {
        let w = parse(src)?;
        let r = cauchy_pompeiu_reconstruct(&w, &grid, zeta, &policy, 512)?;
        let exact = w.eval(zeta.z())?;
        println!(
            "{src:<14} boundary {:.6}  area {:.6}  error {:.3e}",
            r.boundary,
            r.area,
            (r.value() - exact).norm()
        );
    }
    Ok(())
}
