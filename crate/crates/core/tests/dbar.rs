mod common;

use common::{c, expr, points, unit_disk, POLICY};
use proptest::prelude::*;
use vekua::dbar::{cauchy_pompeiu_reconstruct, pompeiu_solve, verify_dbar, verify_dbar_with_inset, DbarCandidate, PompeiuSolution};
use vekua::wirtinger::d_wirtinger;
use vekua::{wirtinger_symbolic, Complex64, ComplexField, ComplexPoint, Error, GridDomain, Wrt};

fn disk_error(sol: &PompeiuSolution, exact: impl Fn(Complex64) -> Complex64) -> f64 {
    sol.values()
        .valid()
        .filter(|(p, _)| p.z().norm() <= 0.5)
        .map(|(p, h)| (h - exact(p.z())).norm())
        .fold(0.0, f64::max)
}

#[test]
fn zero_source_gives_zero() {
    let g = unit_disk(24);
    let zero = expr("0");
    let sol = PompeiuSolution::new(&zero, &g).unwrap();
    assert!(sol.values().valid().all(|(_, h)| h == c(0.0, 0.0)));
}

#[test]
fn transforms_of_one_and_z() {
    let g = unit_disk(128);
    let one = PompeiuSolution::new(&expr("1"), &g).unwrap();
    assert!(disk_error(&one, |z| z.conj()) <= 2e-2);
    let id = PompeiuSolution::new(&expr("z"), &g).unwrap();
    let e = disk_error(&id, |z| c(z.norm_sqr() - 1.0, 0.0));
    assert!(e <= 2e-2, "{e}");
    let r = verify_dbar(DbarCandidate::Solution(&id), &expr("z"), &g, &POLICY).unwrap();
    assert!(r.linf() <= 5e-2);
}

#[test]
fn single_target_matches_cached_bitwise() {
    let g = unit_disk(40);
    let phi = expr("exp(z)*conj(z)");
    let sol = PompeiuSolution::new(&phi, &g).unwrap();
    for (i, j) in [(20, 20), (3, 19), (30, 8), (12, 33)] {
        let zeta = g.center(i, j);
        let single = pompeiu_solve(&phi, &g, zeta).unwrap();
        let cached = sol.at(i as isize, j as isize).unwrap();
        assert_eq!(single.re.to_bits(), cached.re.to_bits());
        assert_eq!(single.im.to_bits(), cached.im.to_bits());
        assert_eq!(sol.evaluate(zeta).unwrap(), single);
    }
}

#[test]
fn targets_must_be_valid_centers() {
    let g = unit_disk(16);
    let phi = expr("1");
    assert!(matches!(pompeiu_solve(&phi, &g, ComplexPoint::new(0.01, 0.02)), Err(Error::InvalidTarget { .. })));
    assert!(matches!(pompeiu_solve(&phi, &g, g.center(0, 0)), Err(Error::InvalidTarget { .. })));
    let sol = PompeiuSolution::new(&phi, &g).unwrap();
    assert!(sol.eval(c(0.5, 0.5)).is_err());
    assert_eq!(sol.at(-1, 3), None);
}

#[test]
fn verify_on_closed_forms() {
    let g = unit_disk(48);
    let r = verify_dbar(DbarCandidate::Field(&expr("conj(z)")), &expr("1"), &g, &POLICY).unwrap();
    assert!(r.linf() <= 1e-10);
    let r = verify_dbar(DbarCandidate::Field(&expr("z^2")), &expr("0"), &g, &POLICY).unwrap();
    assert!(r.linf() <= 1e-10);
    assert_eq!(r.operator, "dbar");
    let bad = verify_dbar_with_inset(DbarCandidate::Field(&expr("z")), &expr("0"), &g, &POLICY, 1.5);
    assert!(matches!(bad, Err(Error::InvalidParameter(_))));
}

#[test]
fn residual_shrinks_under_refinement() {
    let phi = expr("1");
    let linf: Vec<f64> = [32, 64, 128]
        .iter()
        .map(|&n| {
            let g = unit_disk(n);
            let sol = PompeiuSolution::new(&phi, &g).unwrap();
            verify_dbar(DbarCandidate::Solution(&sol), &phi, &g, &POLICY).unwrap().linf()
        })
        .collect();
    for w in linf.windows(2) {
        assert!(w[0] / w[1] >= 1.7, "{linf:?}");
    }
}

#[test]
fn reconstruction_examples() {
    let g = unit_disk(90);
    let zeta = g.center(58, 49);
    assert!((zeta.z() - c(0.3, 0.1)).norm() < 1e-12);
    let r = cauchy_pompeiu_reconstruct(&expr("z^2"), &g, zeta, &POLICY, 1024).unwrap();
    assert!(r.area.norm() <= 1e-9);
    assert!((r.boundary - zeta.z() * zeta.z()).norm() <= 1e-3);

    let r = cauchy_pompeiu_reconstruct(&expr("conj(z)"), &g, zeta, &POLICY, 1024).unwrap();
    assert!((r.value() - zeta.z().conj()).norm() <= 5e-2);
    assert!(r.area.norm() > 0.1);

    let r = cauchy_pompeiu_reconstruct(&expr("0"), &g, zeta, &POLICY, 1024).unwrap();
    assert_eq!(r.value(), c(0.0, 0.0));

    let square = GridDomain::rect(-1.0, 1.0, -1.0, 1.0, 10, 10).unwrap();
    assert!(matches!(
        cauchy_pompeiu_reconstruct(&expr("z"), &square, square.center(5, 5), &POLICY, 1024),
        Err(Error::InvalidDomain(_))
    ));
}

/// Smooth cutoff equal to 1 on |z| ≤ 0.5 and 0 beyond 0.9.
fn cutoff(z: Complex64) -> f64 {
    let t = ((z.norm() - 0.5) / 0.4).clamp(0.0, 1.0);
    let bump = |s: f64| if s <= 0.0 { 0.0 } else { (-1.0 / s).exp() };
    bump(1.0 - t) / (bump(1.0 - t) + bump(t))
}

#[test]
fn solution_integrand_matches_structure() {
    let kappa = expr("0.5*conj(z) + z*conj(z)");
    let k_zbar = wirtinger_symbolic(&kappa, Wrt::ZBar);
    let k = kappa.clone();
    let w = move |z: Complex64| Ok::<_, Error>(cutoff(z) * (z + 1.0) * (-k.eval(z)?).exp());
    let w = move |z: Complex64| w(z).unwrap();
    for p in points(31, 30, 0.45) {
        let z = p.z();
        let lhs = w(z) * k_zbar.eval(z).unwrap();
        let rhs = -d_wirtinger(&w, p, &POLICY).unwrap().d_zbar;
        assert!((lhs - rhs).norm() <= 1e-6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn transform_is_linear(ar in -2.0..2.0f64, ai in -2.0..2.0f64, br in -2.0..2.0f64, i in 4usize..28, j in 4usize..28) {
        let g = unit_disk(32);
        prop_assume!(g.is_valid_ij(i as isize, j as isize));
        let zeta = g.center(i, j);
        let (a, b) = (c(ar, ai), c(br, 0.0));
        let (f1, f2) = (expr("sin(z)"), expr("conj(z)^2"));
        let (e1, e2) = (f1.clone(), f2.clone());
        let mix = move |z: Complex64| a * e1.eval(z).unwrap() + b * e2.eval(z).unwrap();
        let lhs = pompeiu_solve(&mix, &g, zeta).unwrap();
        let rhs = a * pompeiu_solve(&f1, &g, zeta).unwrap() + b * pompeiu_solve(&f2, &g, zeta).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
    }
}
