#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use vekua::{parse, Complex64, ComplexPoint, Expr, GridDomain, StepPolicy};

/// Twenty smooth expressions on |z| < 1, mixing holomorphic, antiholomorphic
/// and genuinely non-holomorphic terms.
pub const CORPUS: [&str; 20] = [
    "z",
    "conj(z)",
    "z^2",
    "z*conj(z)",
    "z^3 - 2*z",
    "exp(z)",
    "exp(conj(z))",
    "exp(z*conj(z))",
    "sin(z)",
    "cos(conj(z))",
    "z/(z - 3)",
    "log(z + 3)",
    "re(z)*im(z)",
    "abs2(z)",
    "conj(z)^2 + i*z",
    "exp(-conj(z))*z^2",
    "sin(z*conj(z))",
    "(1 + z)/(3 + conj(z))",
    "z*exp(i*conj(z))",
    "cos(z)*conj(z)^3",
];

pub const POLICY: StepPolicy = StepPolicy { h1: 1e-5, h2: 1e-3 };

pub fn expr(src: &str) -> Expr {
    parse(src).unwrap_or_else(|e| panic!("{}", e.render(src)))
}

pub fn corpus() -> Vec<Expr> {
    CORPUS.iter().map(|s| expr(s)).collect()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Uniform point in the disk |z| < radius.
pub fn point_in_disk(rng: &mut StdRng, radius: f64) -> ComplexPoint {
    let r = radius * rng.gen::<f64>().sqrt();
    let t = rng.gen_range(0.0..std::f64::consts::TAU);
    ComplexPoint::new(r * t.cos(), r * t.sin())
}

pub fn points(seed: u64, n: usize, radius: f64) -> Vec<ComplexPoint> {
    let mut r = rng(seed);
    (0..n).map(|_| point_in_disk(&mut r, radius)).collect()
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn unit_disk(n: usize) -> GridDomain {
    GridDomain::disk(ComplexPoint::new(0.0, 0.0), 1.0, n, n).unwrap()
}
