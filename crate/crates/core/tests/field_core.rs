mod common;

use common::{c, unit_disk};
use proptest::prelude::*;
use vekua::field::{norm_lp, sample_field};
use vekua::{Complex64, ComplexPoint, Error, GridDomain, Shape};

fn unit_square(n: usize) -> GridDomain {
    GridDomain::rect(0.0, 1.0, 0.0, 1.0, n, n).unwrap()
}

#[test]
fn midpoint_centers() {
    let g = unit_square(3);
    assert_eq!(g.len(), 9);
    assert_eq!(g.valid_count(), 9);
    let first = g.center(0, 0);
    assert!((first.x - 1.0 / 6.0).abs() < 1e-15 && (first.y - 1.0 / 6.0).abs() < 1e-15);
}

#[test]
fn two_by_two_disk_keeps_all_centers() {
    let g = unit_disk(2);
    assert_eq!(g.valid_count(), 4);
    for (_, p) in g.centers() {
        assert_eq!((p.x.abs(), p.y.abs()), (0.5, 0.5));
    }
}

#[test]
fn degenerate_rectangle_is_rejected() {
    assert!(matches!(GridDomain::rect(1.0, 1.0, 0.0, 1.0, 4, 4), Err(Error::InvalidDomain(_))));
    assert!(GridDomain::rect(0.0, 1.0, 0.0, 1.0, 1, 4).is_err());
    assert!(GridDomain::disk(ComplexPoint::new(0.0, 0.0), 0.0, 4, 4).is_err());
}

#[test]
fn sampling_examples() {
    let one = sample_field(&|_: Complex64| c(1.0, 0.0), &unit_disk(8)).unwrap();
    assert!(one.valid().all(|(_, v)| v == c(1.0, 0.0)));

    let id = sample_field(&|z: Complex64| z, &unit_square(2)).unwrap();
    let got: Vec<Complex64> = id.valid().map(|(_, v)| v).collect();
    assert_eq!(got, vec![c(0.25, 0.25), c(0.75, 0.25), c(0.25, 0.75), c(0.75, 0.75)]);

    let g = GridDomain::rect(-1.0, 1.0, -1.0, 1.0, 3, 3).unwrap();
    let inv = sample_field(&|z: Complex64| 1.0 / z, &g);
    assert!(matches!(inv, Err(Error::NumericalFailure { .. })));
}

#[test]
fn norm_examples() {
    let g = unit_square(16);
    let one = sample_field(&|_: Complex64| c(1.0, 0.0), &g).unwrap();
    for p in [1.0, 2.0, 3.5, f64::INFINITY] {
        assert!((norm_lp(&one, p).unwrap() - 1.0).abs() < 1e-12);
    }
    let zero = sample_field(&|_: Complex64| c(0.0, 0.0), &g).unwrap();
    assert_eq!(norm_lp(&zero, 2.0).unwrap(), 0.0);
    assert!(norm_lp(&one, 0.5).is_err());
}

/// Riemann-sum oracle for the L² norm of z over the unit square.
fn riemann_z_norm(n: usize) -> f64 {
    let h = 1.0 / n as f64;
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            let (x, y) = ((i as f64 + 0.5) * h, (j as f64 + 0.5) * h);
            acc += (x * x + y * y) * h * h;
        }
    }
    acc.sqrt()
}

#[test]
fn l2_norm_of_identity_converges() {
    let exact = (2.0f64 / 3.0).sqrt();
    let mut errs = Vec::new();
    for n in [8, 16, 32, 64] {
        let f = sample_field(&|z: Complex64| z, &unit_square(n)).unwrap();
        let v = norm_lp(&f, 2.0).unwrap();
        assert!((v - riemann_z_norm(n)).abs() < 1e-13);
        errs.push((v - exact).abs());
    }
    assert!((norm_lp(&sample_field(&|z: Complex64| z, &unit_square(256)).unwrap(), 2.0).unwrap() - 0.8165).abs() < 1e-4);
    for w in errs.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!(order >= 1.0, "observed order {order}");
    }
}

#[test]
fn refinement_never_unmasks_exterior_centers() {
    let center = ComplexPoint::new(0.2, -0.1);
    for n in [3, 7, 16, 33, 64] {
        let g = GridDomain::disk(center, 0.8, n, n).unwrap();
        for (k, p) in g.centers() {
            assert!((p.z() - center.z()).norm() < 0.8, "cell {k} at {p:?}");
        }
    }
}

#[test]
fn shape_queries() {
    let s = Shape::Rect {
        x_min: 0.0,
        x_max: 2.0,
        y_min: 0.0,
        y_max: 1.0,
    };
    assert!(s.contains(ComplexPoint::new(1.0, 0.5)));
    assert!(!s.contains_inset(ComplexPoint::new(0.05, 0.5), 0.1));
    assert_eq!(s.bounds(), (0.0, 2.0, 0.0, 1.0));
}

proptest! {
    #[test]
    fn norm_is_absolutely_homogeneous(re in -5.0..5.0f64, im in -5.0..5.0f64, p in 1.0..6.0f64) {
        let g = unit_disk(12);
        let f = sample_field(&|z: Complex64| z * z + c(0.3, -1.0), &g).unwrap();
        let lambda = c(re, im);
        let lhs = norm_lp(&f.scale(lambda), p).unwrap();
        let rhs = lambda.norm() * norm_lp(&f, p).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs));
    }

    #[test]
    fn disk_mask_matches_containment(n in 2usize..40, r in 0.1..3.0f64) {
        let g = GridDomain::disk(ComplexPoint::new(0.0, 0.0), r, n, n).unwrap();
        for k in 0..g.len() {
            let p = g.center_at(k);
            prop_assert_eq!(g.is_valid(k), p.z().norm() < r);
        }
    }
}
