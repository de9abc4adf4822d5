//! Samples a field on rectangle and disk grids and reports its norms.

use vekua::{parse, ComplexPoint, GridDomain};
use vekua::field::sample_field;

fn main() -> vekua::Result<()> {
    let f = parse("z*conj(z)")?;
    let rect = GridDomain::rect(-1.0, 1.0, -0.5, 0.5, 80, 40)?;
    let disk = GridDomain::disk(ComplexPoint::new(0.0, 0.0), 1.0, 64, 64)?;

    for (name, grid) in [("rect", &rect), ("disk", &disk)] {
        let s = sample_field(&f, grid)?;
        let (at, max) = s.argmax().expect("non-empty grid");
        println!(
            "{name}: {} of {} cells valid, area {:.4}, L1 {:.5}, L2 {:.5}, Linf {max:.5} at {at}",
            grid.valid_count(),
            grid.len(),
            grid.valid_area(),
            s.norm(1.0)?.value,
            s.norm(2.0)?.value,
        );
    }
    // ∫_D |z|² dA = π/2
    println!("exact L1 on the unit disk: {:.5}", std::f64::consts::FRAC_PI_2);
    Ok(())
}
