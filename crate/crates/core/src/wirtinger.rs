//! Central-difference Wirtinger derivatives.
//!
//! Steps scale with `max(1, |z|)`. The realised step `(x + h) - (x - h)` is
//! used as the denominator so that representation error in `x ± h` does not
//! leak into the quotient.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{
    eval_finite, eval_real_finite, ComplexField, ComplexPoint, GridDomain, RealField, SampledField,
};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// The pair (∂f/∂z, ∂f/∂z̄) at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WirtingerPair {
    pub d_z: Complex64,
    pub d_zbar: Complex64,
}

impl WirtingerPair {
    /// Builds the pair from real partials: ½(f_x ∓ i f_y).
    pub fn from_partials(fx: Complex64, fy: Complex64) -> Self {
        WirtingerPair {
            d_z: 0.5 * (fx - I * fy),
            d_zbar: 0.5 * (fx + I * fy),
        }
    }

    pub fn partial_x(&self) -> Complex64 {
        self.d_z + self.d_zbar
    }

    pub fn partial_y(&self) -> Complex64 {
        I * (self.d_z - self.d_zbar)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepPolicy {
    /// First-derivative step, before scaling by `max(1, |z|)`.
    pub h1: f64,
    /// Second-derivative step, before scaling by `max(1, |z|)`.
    pub h2: f64,
}

impl Default for StepPolicy {
    fn default() -> Self {
        StepPolicy { h1: 1e-5, h2: 1e-3 }
    }
}

impl StepPolicy {
    pub fn new(h1: f64, h2: f64) -> Result<Self> {
        if !(h1 > 0.0 && h1.is_finite() && h2 > 0.0 && h2.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "steps must be positive (h1 = {h1}, h2 = {h2})"
            )));
        }
        Ok(StepPolicy { h1, h2 })
    }

    pub fn first_step(&self, z: Complex64) -> f64 {
        self.h1 * z.norm().max(1.0)
    }

    pub fn second_step(&self, z: Complex64) -> f64 {
        self.h2 * z.norm().max(1.0)
    }
}

/// Central differences (f_x, f_y) with absolute step `h`.
pub fn partials_with_step(f: &dyn ComplexField, z0: Complex64, h: f64) -> Result<(Complex64, Complex64)> {
    let (xp, xm) = (z0.re + h, z0.re - h);
    let (yp, ym) = (z0.im + h, z0.im - h);
    let fx = (eval_finite(f, Complex64::new(xp, z0.im))? - eval_finite(f, Complex64::new(xm, z0.im))?)
        / (xp - xm);
    let fy = (eval_finite(f, Complex64::new(z0.re, yp))? - eval_finite(f, Complex64::new(z0.re, ym))?)
        / (yp - ym);
    Ok((fx, fy))
}

/// (f_x, f_y) at `z0` with the policy's first-derivative step.
pub fn partials(f: &dyn ComplexField, z0: ComplexPoint, policy: &StepPolicy) -> Result<(Complex64, Complex64)> {
    let z = z0.z();
    partials_with_step(f, z, policy.first_step(z))
}

pub fn d_wirtinger(f: &dyn ComplexField, z0: ComplexPoint, policy: &StepPolicy) -> Result<WirtingerPair> {
    let (fx, fy) = partials(f, z0, policy)?;
    Ok(WirtingerPair::from_partials(fx, fy))
}

/// Central differences (f_x, f_y) of a real field with absolute step `h`.
pub fn real_partials_with_step(f: &dyn RealField, x: f64, y: f64, h: f64) -> Result<(f64, f64)> {
    let (xp, xm) = (x + h, x - h);
    let (yp, ym) = (y + h, y - h);
    let fx = (eval_real_finite(f, xp, y)? - eval_real_finite(f, xm, y)?) / (xp - xm);
    let fy = (eval_real_finite(f, x, yp)? - eval_real_finite(f, x, ym)?) / (yp - ym);
    Ok((fx, fy))
}

pub fn real_partials(f: &dyn RealField, p: ComplexPoint, policy: &StepPolicy) -> Result<(f64, f64)> {
    real_partials_with_step(f, p.x, p.y, policy.first_step(p.z()))
}

/// Five-point Laplacian u_xx + u_yy of a real field with absolute step `h`.
pub fn real_laplacian_with_step(f: &dyn RealField, x: f64, y: f64, h: f64) -> Result<f64> {
    let (xp, xm) = (x + h, x - h);
    let (yp, ym) = (y + h, y - h);
    let hx = 0.5 * (xp - xm);
    let hy = 0.5 * (yp - ym);
    let c = eval_real_finite(f, x, y)?;
    let sx = eval_real_finite(f, xp, y)? + eval_real_finite(f, xm, y)?;
    let sy = eval_real_finite(f, x, yp)? + eval_real_finite(f, x, ym)?;
    Ok((sx - 2.0 * c) / (hx * hx) + (sy - 2.0 * c) / (hy * hy))
}

/// Five-point Laplacian f_xx + f_yy with absolute step `h`.
pub fn laplacian_with_step(f: &dyn ComplexField, z0: Complex64, h: f64) -> Result<Complex64> {
    let (xp, xm) = (z0.re + h, z0.re - h);
    let (yp, ym) = (z0.im + h, z0.im - h);
    // realised half-steps; equal to h up to rounding
    let hx = 0.5 * (xp - xm);
    let hy = 0.5 * (yp - ym);
    let c = eval_finite(f, z0)?;
    let sx = eval_finite(f, Complex64::new(xp, z0.im))? + eval_finite(f, Complex64::new(xm, z0.im))?;
    let sy = eval_finite(f, Complex64::new(z0.re, yp))? + eval_finite(f, Complex64::new(z0.re, ym))?;
    Ok((sx - 2.0 * c) / (hx * hx) + (sy - 2.0 * c) / (hy * hy))
}

/// ∂²f/∂z∂z̄ = ¼(f_xx + f_yy) by the five-point stencil with step `h2`.
pub fn d2_mixed(f: &dyn ComplexField, z0: ComplexPoint, policy: &StepPolicy) -> Result<Complex64> {
    let z = z0.z();
    Ok(0.25 * laplacian_with_step(f, z, policy.second_step(z))?)
}

/// Per-cell derivative fields (d_z, d_zbar).
pub fn d_wirtinger_field(
    f: &dyn ComplexField,
    grid: &GridDomain,
    policy: &StepPolicy,
) -> Result<(SampledField, SampledField)> {
    let dz = SampledField::try_from_cells(grid, |_, p| Ok(Some(d_wirtinger(f, p, policy)?.d_z)))?;
    let dzb = SampledField::try_from_cells(grid, |_, p| Ok(Some(d_wirtinger(f, p, policy)?.d_zbar)))?;
    Ok((dz, dzb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, wirtinger_symbolic, Wrt};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const P: StepPolicy = StepPolicy { h1: 1e-5, h2: 1e-3 };

    #[test]
    fn identity_and_conjugate() {
        for z0 in [c(0.0, 0.0), c(1.5, -0.3), c(-2.0, 4.0)] {
            let p = d_wirtinger(&|z| z, z0.into(), &P).unwrap();
            assert!((p.d_z - 1.0).norm() < 1e-10 && p.d_zbar.norm() < 1e-10);
            let p = d_wirtinger(&|z: Complex64| z.conj(), z0.into(), &P).unwrap();
            assert!(p.d_z.norm() < 1e-10 && (p.d_zbar - 1.0).norm() < 1e-10);
        }
    }

    #[test]
    fn modulus_squared_pair() {
        let p = d_wirtinger(&|z: Complex64| z * z.conj(), ComplexPoint::new(2.0, 1.0), &P).unwrap();
        assert!((p.d_z - c(2.0, -1.0)).norm() < 1e-10);
        assert!((p.d_zbar - c(2.0, 1.0)).norm() < 1e-10);
    }

    #[test]
    fn real_valued_functions_have_conjugate_pair() {
        let f = |z: Complex64| c((z.re * z.im).sin() + z.re * z.re, 0.0);
        let p = d_wirtinger(&f, ComplexPoint::new(0.4, -1.1), &P).unwrap();
        assert!((p.d_zbar - p.d_z.conj()).norm() < 1e-12);
    }

    #[test]
    fn mixed_second_derivative() {
        let one = d2_mixed(&|z: Complex64| z * z.conj(), ComplexPoint::new(0.7, -0.2), &P).unwrap();
        assert!((one - 1.0).norm() < 1e-8);
        let zero = d2_mixed(&|z: Complex64| z * z, ComplexPoint::new(0.7, -0.2), &P).unwrap();
        assert!(zero.norm() < 1e-8);
        // symbolic oracle: (1 + |z|²) e^{|z|²} at 0 is 1
        let e = parse("exp(z*conj(z))").unwrap();
        let oracle = wirtinger_symbolic(&wirtinger_symbolic(&e, Wrt::ZBar), Wrt::Z);
        assert!((oracle.eval(c(0.0, 0.0)).unwrap() - 1.0).norm() < 1e-15);
        let got = d2_mixed(&e, ComplexPoint::new(0.0, 0.0), &P).unwrap();
        assert!((got - 1.0).norm() < 1e-6);
    }

    #[test]
    fn derivative_fields() {
        let g = GridDomain::rect(0.0, 1.0, 0.0, 1.0, 6, 6).unwrap();
        let (dz, dzb) = d_wirtinger_field(&|z| z, &g, &P).unwrap();
        assert!(dz.valid().all(|(_, v)| (v - 1.0).norm() < 1e-10));
        assert!(dzb.valid().all(|(_, v)| v.norm() < 1e-10));
        let (_, dzb) = d_wirtinger_field(&|z: Complex64| z.conj(), &g, &P).unwrap();
        assert!(dzb.valid().all(|(_, v)| (v - 1.0).norm() < 1e-10));
        // d_z of z z̄ equals conj of the centre, per the symbolic oracle
        let e = parse("z*conj(z)").unwrap();
        let oracle = wirtinger_symbolic(&e, Wrt::Z);
        let (dz, _) = d_wirtinger_field(&e, &g, &P).unwrap();
        for (p, v) in dz.valid() {
            let want = oracle.eval(p.z()).unwrap();
            assert_eq!(want, p.z().conj());
            assert!((v - want).norm() < 1e-10);
        }
    }

    #[test]
    fn quadratic_polynomials_are_exact() {
        // total degree <= 2 in (x, y)
        let f = |z: Complex64| {
            let (x, y) = (z.re, z.im);
            c(3.0 * x * x - 2.0 * x * y + y * y + x - 4.0, x * y - 0.5 * y * y + 2.0 * y)
        };
        let fx = |z: Complex64| c(6.0 * z.re - 2.0 * z.im + 1.0, z.im);
        let fy = |z: Complex64| c(-2.0 * z.re + 2.0 * z.im, z.re - z.im + 2.0);
        for z0 in [c(0.0, 0.0), c(1.9, 0.5), c(-1.2, -1.5), c(0.3, 1.95)] {
            let p = d_wirtinger(&f, z0.into(), &P).unwrap();
            let want = WirtingerPair::from_partials(fx(z0), fy(z0));
            assert!((p.d_z - want.d_z).norm() <= 1e-10, "{z0}");
            assert!((p.d_zbar - want.d_zbar).norm() <= 1e-10, "{z0}");
        }
    }

    #[test]
    fn first_derivative_is_second_order() {
        // f = e^z z̄: ∂f/∂z = e^z z̄
        let f = |z: Complex64| z.exp() * z.conj();
        let z0 = c(0.4, 0.3);
        let exact = z0.exp() * z0.conj();
        let errs: Vec<f64> = [1e-2, 5e-3, 2.5e-3]
            .iter()
            .map(|&h| {
                let pol = StepPolicy::new(h, 1e-3).unwrap();
                (d_wirtinger(&f, z0.into(), &pol).unwrap().d_z - exact).norm()
            })
            .collect();
        for w in errs.windows(2) {
            let r = w[0] / w[1];
            assert!((3.5..4.5).contains(&r), "ratio {r}");
        }
    }

    #[test]
    fn non_finite_probe_fails() {
        let f = |z: Complex64| 1.0 / (z - c(1e-5, 0.0));
        assert!(matches!(
            d_wirtinger(&f, ComplexPoint::new(0.0, 0.0), &P),
            Err(Error::NumericalFailure { .. })
        ));
        assert!(StepPolicy::new(0.0, 1e-3).is_err());
    }
}
