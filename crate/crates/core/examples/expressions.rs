//! Parses expressions, evaluates them and prints exact Wirtinger derivatives.

use vekua::{parse, wirtinger_symbolic, Complex64, Wrt};

fn main() {
    let z = Complex64::new(0.3, -0.4);
    for src in ["z^2*conj(z)", "exp(z*conj(z))", "re(z)*im(z)", "sin(z) + log(z + 2)"] {
        let e = parse(src).expect("valid expression");
        println!("{src}");
        println!("  value at {z}: {:.6}", e.eval(z).unwrap());
        println!("  d/dz    = {}", wirtinger_symbolic(&e, Wrt::Z));
        println!("  d/dzbar = {}", wirtinger_symbolic(&e, Wrt::ZBar));
    }

    for bad in ["z + * 2", "exp(z", "foo(z)"] {
        let err = parse(bad).unwrap_err();
        println!("\n{}", err.render(bad));
    }
}
