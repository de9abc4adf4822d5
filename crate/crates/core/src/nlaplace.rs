//! The nonlinear structural Laplace operator and the nonlinear
//! Cauchy-Riemann (NCR) system.
//!
//! ```text
//! Δ_K w = w_zz̄ + K_z̄ w_z + K_z w_z̄ + ψ w,     ψ = K_zz̄ + K_z K_z̄
//! ```
//!
//! `Δ_K = D_z ∘ D_z̄`, so every structural-holomorphic `w` is Δ_K-null.
//! For `K ≡ 1` it is a quarter of the ordinary Laplacian.
//!
//! The NCR system on `(u, v)` is `u_y + v_x = f(u, v)`, `u_x − v_y = g(u, v)`.
//! Kappa-form structures give linear `f`, `g` (see [`fg_from_structure`]).
//!
//! Several-variable forms act on `n ≤ 2` coordinates at a single point.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expr::Wrt;
use crate::field::{
    eval_finite, eval_real_finite, label, real_label, ComplexField, ComplexPoint, GridDomain, RealField,
    SampledField, Shape,
};
use crate::report::{Params, ResidualReport};
use crate::structure::StructuralFunction;
use crate::wirtinger::{
    d2_mixed, d_wirtinger, real_laplacian_with_step, real_partials, StepPolicy, WirtingerPair,
};

/// ψ = K_zz̄ + K_z K_z̄.
pub fn psi(s: &StructuralFunction, z0: ComplexPoint, policy: &StepPolicy) -> Result<Complex64> {
    let d = s.wirtinger(z0, policy)?;
    Ok(s.k_zzbar(z0, policy)? + d.d_z * d.d_zbar)
}

/// η = ¼ΔK + K_z K_z̄, with ΔK from the real Hessian of `K`.
pub fn eta(s: &StructuralFunction, z0: ComplexPoint, policy: &StepPolicy) -> Result<Complex64> {
    let d = s.wirtinger(z0, policy)?;
    Ok(0.25 * s.laplacian(z0, policy)? + d.d_z * d.d_zbar)
}

fn assemble(w2: Complex64, dw: WirtingerPair, k_z: Complex64, k_zbar: Complex64, psi: Complex64, w: Complex64) -> Complex64 {
    w2 + k_z * dw.d_zbar + k_zbar * dw.d_z + psi * w
}

/// Δ_K w at `z0`.
pub fn nonlinear_laplace(
    w: &dyn ComplexField,
    s: &StructuralFunction,
    z0: ComplexPoint,
    policy: &StepPolicy,
) -> Result<Complex64> {
    let w2 = d2_mixed(w, z0, policy)?;
    let dw = d_wirtinger(w, z0, policy)?;
    let dk = s.wirtinger(z0, policy)?;
    let psi = s.k_zzbar(z0, policy)? + dk.d_z * dk.d_zbar;
    Ok(assemble(w2, dw, dk.d_z, dk.d_zbar, psi, eval_finite(w, z0.z())?))
}

fn stencil_inside(shape: &Shape, p: ComplexPoint, h: f64) -> bool {
    [(h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h)]
        .iter()
        .all(|&(a, b)| shape.contains(ComplexPoint::new(p.x + a, p.y + b)))
}

/// Per-cell sweep that skips cells whose second-difference stencil leaves the
/// shape; returns the field and the number skipped.
fn interior_sweep<F>(grid: &GridDomain, policy: &StepPolicy, cell: F) -> Result<(SampledField, usize)>
where
    F: Fn(ComplexPoint) -> Result<Complex64> + Sync,
{
    let shape = *grid.shape();
    let field = SampledField::try_from_cells(grid, |_, p| {
        if stencil_inside(&shape, p, policy.second_step(p.z())) {
            cell(p).map(Some)
        } else {
            Ok(None)
        }
    })?;
    let skipped = grid.valid_count() - field.valid_count();
    if field.valid_count() == 0 {
        return Err(Error::InvalidDomain("no interior cells admit the stencil".into()));
    }
    Ok((field, skipped))
}

/// Field of Δ_K w over interior cells.
pub fn nl_laplace_residual(
    w: &dyn ComplexField,
    s: &StructuralFunction,
    grid: &GridDomain,
    policy: &StepPolicy,
) -> Result<ResidualReport> {
    let (field, skipped) = interior_sweep(grid, policy, |p| nonlinear_laplace(w, s, p, policy))?;
    let mut params = Params::new().with("w", label(w));
    params.extend(&s.params(policy));
    params.set("skipped_cells", skipped);
    ResidualReport::from_field("nonlinear-laplace", field, params)
}

/// `(f, g)` at `(u, v)` with the coefficients of a kappa-form structure at `z0`:
///
/// ```text
/// f = v(β_y − α_x) − u(β_x + α_y)
/// g = v(β_x + α_y) − u(α_x − β_y)
/// ```
pub fn fg_from_structure(
    s: &StructuralFunction,
    u: f64,
    v: f64,
    z0: ComplexPoint,
    policy: &StepPolicy,
) -> Result<(f64, f64)> {
    let kp = s.kappa_partials(z0, policy)?;
    Ok(fg_linear(kp.diag(), kp.cross(), u, v))
}

fn fg_linear(diag: f64, cross: f64, u: f64, v: f64) -> (f64, f64) {
    (-v * diag - u * cross, v * cross - u * diag)
}

type RealFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Right-hand sides `f(u, v)`, `g(u, v)` of the NCR system.
#[derive(Clone)]
pub struct NcrPair {
    f: RealFn,
    g: RealFn,
    f_label: String,
    g_label: String,
}

/// `(f_u, f_v, g_u, g_v)` at a point of `(u, v)`-space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NcrPartials {
    pub f_u: f64,
    pub f_v: f64,
    pub g_u: f64,
    pub g_v: f64,
}

impl NcrPair {
    pub fn new(
        f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        g: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self::labelled(f, g, "<closure>", "<closure>")
    }

    pub fn labelled(
        f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        g: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        f_label: &str,
        g_label: &str,
    ) -> Self {
        NcrPair {
            f: Arc::new(f),
            g: Arc::new(g),
            f_label: f_label.to_owned(),
            g_label: g_label.to_owned(),
        }
    }

    /// The linear pair of a kappa-form structure, coefficients frozen at `z0`.
    pub fn from_structure(s: &StructuralFunction, z0: ComplexPoint, policy: &StepPolicy) -> Result<Self> {
        let kp = s.kappa_partials(z0, policy)?;
        let (diag, cross) = (kp.diag(), kp.cross());
        let f_label = format!("{}*v + {}*u", -diag, -cross);
        let g_label = format!("{cross}*v + {}*u", -diag);
        Ok(Self::labelled(
            move |u, v| fg_linear(diag, cross, u, v).0,
            move |u, v| fg_linear(diag, cross, u, v).1,
            &f_label,
            &g_label,
        ))
    }

    pub fn f(&self, u: f64, v: f64) -> Result<f64> {
        finite((self.f)(u, v), u, v)
    }

    pub fn g(&self, u: f64, v: f64) -> Result<f64> {
        finite((self.g)(u, v), u, v)
    }

    /// Central-difference step at `(u, v)`.
    pub fn step(&self, u: f64, v: f64, policy: &StepPolicy) -> f64 {
        policy.h1 * 1f64.max(u.abs()).max(v.abs())
    }

    pub fn partials(&self, u: f64, v: f64, policy: &StepPolicy) -> Result<NcrPartials> {
        let h = self.step(u, v, policy);
        let (up, um, vp, vm) = (u + h, u - h, v + h, v - h);
        let d = |q: &dyn Fn(f64, f64) -> Result<f64>| -> Result<(f64, f64)> {
            Ok(((q(up, v)? - q(um, v)?) / (up - um), (q(u, vp)? - q(u, vm)?) / (vp - vm)))
        };
        let (f_u, f_v) = d(&|a, b| self.f(a, b))?;
        let (g_u, g_v) = d(&|a, b| self.g(a, b))?;
        Ok(NcrPartials { f_u, f_v, g_u, g_v })
    }

    fn params(&self) -> Params {
        Params::new()
            .with("f", self.f_label.clone())
            .with("g", self.g_label.clone())
    }
}

fn finite(x: f64, u: f64, v: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::numerical(ComplexPoint::new(u, v), format!("non-finite value {x} in (u, v)-space")))
    }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// NCR residuals `u_y + v_x − f(u, v)` and `u_x − v_y − g(u, v)`.
pub fn ncr_residual(
    u: &dyn RealField,
    v: &dyn RealField,
    pair: &NcrPair,
    grid: &GridDomain,
    policy: &StepPolicy,
) -> Result<(ResidualReport, ResidualReport)> {
    let sweep = |second: bool| {
        SampledField::try_from_cells(grid, |_, p| {
            let (ux, uy) = real_partials(u, p, policy)?;
            let (vx, vy) = real_partials(v, p, policy)?;
            let (u0, v0) = (eval_real_finite(u, p.x, p.y)?, eval_real_finite(v, p.x, p.y)?);
            let r = if second {
                ux - vy - pair.g(u0, v0)?
            } else {
                uy + vx - pair.f(u0, v0)?
            };
            Ok(Some(real(r)))
        })
    };
    let mut params = Params::new().with("u", real_label(u)).with("v", real_label(v));
    params.extend(&pair.params());
    params.set("h1", policy.h1);
    Ok((
        ResidualReport::from_field("ncr-1", sweep(false)?, params.clone())?,
        ResidualReport::from_field("ncr-2", sweep(true)?, params)?,
    ))
}

/// Sign convention for the first-order identities between `f` and `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    /// `f_u = g_v`, `f_v = −g_u`.
    #[default]
    Cr,
    /// `f_v = g_u`, `f_u = −g_v`.
    Swapped,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::Cr => "cr",
            Convention::Swapped => "swapped",
        }
    }

    /// The two residuals of this convention.
    pub fn residuals(self, d: &NcrPartials) -> (f64, f64) {
        match self {
            Convention::Cr => (d.f_u - d.g_v, d.f_v + d.g_u),
            Convention::Swapped => (d.f_v - d.g_u, d.f_u + d.g_v),
        }
    }
}

/// A convention holds when both residual maxima are at most this.
pub const CONVENTION_TOL: f64 = 1e-8;

/// True if both reports of [`fg_cr_check`] stay within [`CONVENTION_TOL`].
pub fn convention_holds(reports: &(ResidualReport, ResidualReport)) -> bool {
    reports.0.linf() <= CONVENTION_TOL && reports.1.linf() <= CONVENTION_TOL
}

/// The convention's identities over a probe grid in `(u, v)`-space.
///
/// The probe grid's x axis is `u` and its y axis is `v`.
pub fn fg_cr_check(
    pair: &NcrPair,
    probe: &GridDomain,
    policy: &StepPolicy,
    convention: Convention,
) -> Result<(ResidualReport, ResidualReport)> {
    let partials = SampledField::try_from_cells(probe, |_, p| {
        let r = convention.residuals(&pair.partials(p.x, p.y, policy)?);
        Ok(Some(Complex64::new(r.0, r.1)))
    })?;
    let mut params = pair.params();
    params.set("convention", convention.name());
    params.set("h1", policy.h1);
    let name = convention.name();
    Ok((
        ResidualReport::from_field(&format!("fg-{name}-1"), partials.map(|c| real(c.re)), params.clone())?,
        ResidualReport::from_field(&format!("fg-{name}-2"), partials.map(|c| real(c.im)), params)?,
    ))
}

/// Residuals `Δu − ½∂_u(f² + g²)` and `Δv − ½∂_v(f² + g²)` at the realised
/// `(u, v)`, over cells whose five-point stencil stays inside the shape.
pub fn laplace_rhs_check(
    u: &dyn RealField,
    v: &dyn RealField,
    pair: &NcrPair,
    grid: &GridDomain,
    policy: &StepPolicy,
) -> Result<(ResidualReport, ResidualReport)> {
    let energy = |a: f64, b: f64| -> Result<f64> {
        let (f, g) = (pair.f(a, b)?, pair.g(a, b)?);
        Ok(0.5 * (f * f + g * g))
    };
    let (both, skipped) = interior_sweep(grid, policy, |p| {
        let h = policy.second_step(p.z());
        let lu = real_laplacian_with_step(u, p.x, p.y, h)?;
        let lv = real_laplacian_with_step(v, p.x, p.y, h)?;
        let (u0, v0) = (eval_real_finite(u, p.x, p.y)?, eval_real_finite(v, p.x, p.y)?);
        let s = pair.step(u0, v0, policy);
        let (up, um, vp, vm) = (u0 + s, u0 - s, v0 + s, v0 - s);
        let eu = (energy(up, v0)? - energy(um, v0)?) / (up - um);
        let ev = (energy(u0, vp)? - energy(u0, vm)?) / (vp - vm);
        Ok(Complex64::new(lu - eu, lv - ev))
    })?;
    let mut params = Params::new().with("u", real_label(u)).with("v", real_label(v));
    params.extend(&pair.params());
    params.set("h1", policy.h1);
    params.set("h2", policy.h2);
    params.set("skipped_cells", skipped);
    Ok((
        ResidualReport::from_field("laplace-rhs-u", both.map(|c| real(c.re)), params.clone())?,
        ResidualReport::from_field("laplace-rhs-v", both.map(|c| real(c.im)), params)?,
    ))
}

/// A point `(z¹, …, zⁿ)` with `n ∈ {1, 2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPoint(Vec<Complex64>);

pub const MAX_VARIABLES: usize = 2;

impl MultiPoint {
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        if coords.is_empty() || coords.len() > MAX_VARIABLES {
            return Err(Error::InvalidParameter(format!(
                "{} coordinates; supported are 1 to {MAX_VARIABLES}",
                coords.len()
            )));
        }
        if let Some(z) = coords.iter().find(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidParameter(format!("non-finite coordinate {z}")));
        }
        Ok(MultiPoint(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.0
    }

    fn check(&self, i: usize) -> Result<()> {
        if i < self.dim() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                dim: self.dim(),
            })
        }
    }

    fn with(&self, i: usize, zi: Complex64) -> Vec<Complex64> {
        let mut c = self.0.clone();
        c[i] = zi;
        c
    }
}

/// A complex map of several complex variables.
pub trait MultiField: Send + Sync {
    fn eval(&self, z: &[Complex64]) -> Result<Complex64>;
}

impl<F> MultiField for F
where
    F: Fn(&[Complex64]) -> Complex64 + Send + Sync,
{
    fn eval(&self, z: &[Complex64]) -> Result<Complex64> {
        Ok(self(z))
    }
}

fn eval_multi(f: &dyn MultiField, z: &[Complex64]) -> Result<Complex64> {
    let v = f.eval(z)?;
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::numerical(z[0], format!("non-finite value {v} at {z:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Combine {
    Sum,
    Product,
}

/// `f₁(z¹) ⊕ f₂(z²) ⊕ …` for single-variable factors.
#[derive(Clone)]
pub struct SeparableField {
    factors: Vec<Arc<dyn ComplexField>>,
    combine: Combine,
}

impl SeparableField {
    pub fn new(factors: Vec<Arc<dyn ComplexField>>, combine: Combine) -> Self {
        SeparableField { factors, combine }
    }

    pub fn describe(&self) -> String {
        let op = match self.combine {
            Combine::Sum => " + ",
            Combine::Product => " * ",
        };
        self.factors
            .iter()
            .enumerate()
            .map(|(k, f)| format!("({})[z{}]", label(f.as_ref()), k + 1))
            .collect::<Vec<_>>()
            .join(op)
    }
}

impl MultiField for SeparableField {
    fn eval(&self, z: &[Complex64]) -> Result<Complex64> {
        if z.len() != self.factors.len() {
            return Err(Error::InvalidParameter(format!(
                "{} factors evaluated at {} coordinates",
                self.factors.len(),
                z.len()
            )));
        }
        let mut acc = match self.combine {
            Combine::Sum => Complex64::new(0.0, 0.0),
            Combine::Product => Complex64::new(1.0, 0.0),
        };
        for (f, &zi) in self.factors.iter().zip(z) {
            let v = eval_finite(f.as_ref(), zi)?;
            match self.combine {
                Combine::Sum => acc += v,
                Combine::Product => acc *= v,
            }
        }
        Ok(acc)
    }
}

/// `w` restricted to coordinate `i`, the others frozen.
struct Slice<'a> {
    f: &'a dyn MultiField,
    at: &'a MultiPoint,
    i: usize,
}

impl ComplexField for Slice<'_> {
    fn eval(&self, zi: Complex64) -> Result<Complex64> {
        self.f.eval(&self.at.with(self.i, zi))
    }
}

/// A structural function of one or two variables.
pub trait NdStructure: Send + Sync {
    /// `(∂K/∂z^i, ∂K/∂z̄^i)`.
    fn wirtinger_nd(&self, at: &MultiPoint, i: usize, policy: &StepPolicy) -> Result<WirtingerPair>;
    /// `∂²K/∂z^i∂z̄^j`.
    fn mixed_nd(&self, at: &MultiPoint, i: usize, j: usize, policy: &StepPolicy) -> Result<Complex64>;
}

impl NdStructure for StructuralFunction {
    fn wirtinger_nd(&self, at: &MultiPoint, i: usize, policy: &StepPolicy) -> Result<WirtingerPair> {
        one_variable(at, i)?;
        self.wirtinger(at.coords()[0].into(), policy)
    }

    fn mixed_nd(&self, at: &MultiPoint, i: usize, j: usize, policy: &StepPolicy) -> Result<Complex64> {
        one_variable(at, i)?;
        one_variable(at, j)?;
        self.k_zzbar(at.coords()[0].into(), policy)
    }
}

fn one_variable(at: &MultiPoint, i: usize) -> Result<()> {
    at.check(i)?;
    if at.dim() != 1 {
        return Err(Error::InvalidParameter(
            "a one-variable structural function needs a one-coordinate point".into(),
        ));
    }
    Ok(())
}

/// Several-variable `K` with finite-difference derivatives.
#[derive(Clone)]
pub struct MultiStructure(pub Arc<dyn MultiField>);

impl NdStructure for MultiStructure {
    fn wirtinger_nd(&self, at: &MultiPoint, i: usize, policy: &StepPolicy) -> Result<WirtingerPair> {
        partial_nd(self.0.as_ref(), at, i, policy)
    }

    fn mixed_nd(&self, at: &MultiPoint, i: usize, j: usize, policy: &StepPolicy) -> Result<Complex64> {
        mixed_partial_nd(self.0.as_ref(), at, i, j, policy)
    }
}

fn partial_nd(w: &dyn MultiField, at: &MultiPoint, i: usize, policy: &StepPolicy) -> Result<WirtingerPair> {
    at.check(i)?;
    d_wirtinger(&Slice { f: w, at, i }, at.coords()[i].into(), policy)
}

/// `∂²w/∂z^i∂z̄^j`. The diagonal uses the five-point stencil; off-diagonal
/// terms use cross stencils:
/// `¼[∂xi∂xj + ∂yi∂yj + i(∂xi∂yj − ∂yi∂xj)]`.
fn mixed_partial_nd(w: &dyn MultiField, at: &MultiPoint, i: usize, j: usize, policy: &StepPolicy) -> Result<Complex64> {
    at.check(i)?;
    at.check(j)?;
    if i == j {
        return d2_mixed(&Slice { f: w, at, i }, at.coords()[i].into(), policy);
    }
    let hi = policy.second_step(at.coords()[i]);
    let hj = policy.second_step(at.coords()[j]);
    let cross = |di: Complex64, dj: Complex64| -> Result<Complex64> {
        let p = |si: f64, sj: f64| {
            let mut c = at.coords().to_vec();
            c[i] += si * di;
            c[j] += sj * dj;
            eval_multi(w, &c)
        };
        let num = p(1.0, 1.0)? - p(1.0, -1.0)? - p(-1.0, 1.0)? + p(-1.0, -1.0)?;
        Ok(num / (4.0 * hi * hj))
    };
    let (xi, yi) = (Complex64::new(hi, 0.0), Complex64::new(0.0, hi));
    let (xj, yj) = (Complex64::new(hj, 0.0), Complex64::new(0.0, hj));
    let xx = cross(xi, xj)?;
    let yy = cross(yi, yj)?;
    let xy = cross(xi, yj)?;
    let yx = cross(yi, xj)?;
    Ok(0.25 * (xx + yy + Complex64::i() * (xy - yx)))
}

/// One-coordinate structural derivative `Dw/∂z^i` or `Dw/∂z̄^i`.
pub fn d_structural_nd(
    w: &dyn MultiField,
    s: &dyn NdStructure,
    at: &MultiPoint,
    i: usize,
    wrt: Wrt,
    policy: &StepPolicy,
) -> Result<Complex64> {
    let dw = partial_nd(w, at, i, policy)?;
    let dk = s.wirtinger_nd(at, i, policy)?;
    let w0 = eval_multi(w, at.coords())?;
    Ok(match wrt {
        Wrt::Z => dw.d_z + w0 * dk.d_z,
        Wrt::ZBar => dw.d_zbar + w0 * dk.d_zbar,
    })
}

/// The `(i, j)` component
/// `w_{z^i z̄^j} + K_{z^i} w_{z̄^j} + K_{z̄^j} w_{z^i} + (K_{ij̄} + K_{z^i} K_{z̄^j}) w`.
pub fn nonlinear_laplace_nd(
    w: &dyn MultiField,
    s: &dyn NdStructure,
    at: &MultiPoint,
    i: usize,
    j: usize,
    policy: &StepPolicy,
) -> Result<Complex64> {
    let w2 = mixed_partial_nd(w, at, i, j, policy)?;
    let dwi = partial_nd(w, at, i, policy)?;
    let dwj = partial_nd(w, at, j, policy)?;
    let dki = s.wirtinger_nd(at, i, policy)?;
    let dkj = s.wirtinger_nd(at, j, policy)?;
    let psi = s.mixed_nd(at, i, j, policy)? + dki.d_z * dkj.d_zbar;
    let dw = WirtingerPair {
        d_z: dwi.d_z,
        d_zbar: dwj.d_zbar,
    };
    Ok(assemble(w2, dw, dki.d_z, dkj.d_zbar, psi, eval_multi(w, at.coords())?))
}
