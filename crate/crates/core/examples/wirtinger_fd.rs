//! Compares finite-difference Wirtinger derivatives with the symbolic ones.

use vekua::wirtinger::{d2_mixed, d_wirtinger};
use vekua::{parse, wirtinger_symbolic, ComplexPoint, StepPolicy, Wrt};

fn main() -> vekua::Result<()> {
    let policy = StepPolicy::default();
    let p = ComplexPoint::new(0.4, 0.25);
    println!("{:<18} {:>12} {:>12} {:>12}", "f", "|dz err|", "|dzbar err|", "|dzdzbar err|");
    for src in ["z^3 - 2*z", "conj(z)^2 + i*z", "exp(z*conj(z))", "cos(z)*conj(z)^3"] {
        let f = parse(src)?;
        let fd = d_wirtinger(&f, p, &policy)?;
        let dz = wirtinger_symbolic(&f, Wrt::Z);
        let dzbar = wirtinger_symbolic(&f, Wrt::ZBar);
        let mixed = wirtinger_symbolic(&dz, Wrt::ZBar);
        println!(
            "{src:<18} {:>12.3e} {:>12.3e} {:>12.3e}",
            (fd.d_z - dz.eval(p.z())?).norm(),
            (fd.d_zbar - dzbar.eval(p.z())?).norm(),
            (d2_mixed(&f, p, &policy)? - mixed.eval(p.z())?).norm(),
        );
    }
    Ok(())
}
