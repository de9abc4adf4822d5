//! Structural functions and the operators they induce.
//!
//! A structural function `K` acts on `w` through the multiplication map
//! `w ↦ wK`. The induced first-order operators are
//!
//! ```text
//! D w / ∂z = w_z + w K_z        D w / ∂z̄ = w_z̄ + w K_z̄
//! ```
//!
//! where the `K` terms multiply `w`. `w` is structural-holomorphic when
//! `D w / ∂z̄ = 0`; every `w = Φ e^{-K}` with `Φ` entire is a solution.
//!
//! In kappa form `K = 1 + κ` with `κ = α + iβ`, and the real first-order
//! system has coefficients
//!
//! ```text
//! a = d = α_x − β_y        c = −b = α_y + β_x
//! ```
//!
//! which turn into the Carleman-Bers-Vekua equation `w_z̄ + A w + B w̄ = 0`
//! with `A = ∂κ/∂z̄` and `B = 0`.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expr::{simplify, wirtinger_symbolic, Expr, Wrt};
use crate::field::{
    eval_finite, label, real_label, ComplexField, ComplexPoint, GridDomain, RealField, SampledField,
};
use crate::report::{Params, ResidualReport};
use crate::wirtinger::{d2_mixed, d_wirtinger, real_partials, StepPolicy, WirtingerPair};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Below this modulus `K` is counted as degenerate in residual reports.
pub const DEGENERATE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureMode {
    /// `K` given directly.
    GeneralK,
    /// `K = 1 + κ`.
    KappaForm,
}

impl StructureMode {
    pub fn name(self) -> &'static str {
        match self {
            StructureMode::GeneralK => "general",
            StructureMode::KappaForm => "kappa",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeSource {
    Symbolic,
    Numeric,
}

impl DerivativeSource {
    pub fn name(self) -> &'static str {
        match self {
            DerivativeSource::Symbolic => "symbolic",
            DerivativeSource::Numeric => "numeric",
        }
    }
}

struct OnePlus(Arc<dyn ComplexField>);

impl ComplexField for OnePlus {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(1.0 + self.0.eval(z)?)
    }
}

struct Symbolic {
    k_z: Expr,
    k_zbar: Expr,
    k_zzbar: Expr,
    k_zz: Expr,
    k_zbarz: Expr,
    k_zbarzbar: Expr,
}

/// `K`, its derivatives at a point, and nothing else.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KDerivatives {
    pub k: Complex64,
    pub k_z: Complex64,
    pub k_zbar: Complex64,
}

/// First partials of α = Re κ and β = Im κ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaPartials {
    pub alpha_x: f64,
    pub alpha_y: f64,
    pub beta_x: f64,
    pub beta_y: f64,
}

impl KappaPartials {
    fn from_wirtinger(d_z: Complex64, d_zbar: Complex64) -> Self {
        let kx = d_z + d_zbar;
        let ky = I * (d_z - d_zbar);
        KappaPartials {
            alpha_x: kx.re,
            alpha_y: ky.re,
            beta_x: kx.im,
            beta_y: ky.im,
        }
    }

    /// α_x − β_y.
    pub fn diag(&self) -> f64 {
        self.alpha_x - self.beta_y
    }

    /// α_y + β_x.
    pub fn cross(&self) -> f64 {
        self.alpha_y + self.beta_x
    }
}

/// A structural function `K`, in general or kappa form.
///
/// Built from an [`Expr`] it carries exact symbolic derivatives; built from a
/// closure it falls back to central differences with the caller's
/// [`StepPolicy`].
#[derive(Clone)]
pub struct StructuralFunction {
    mode: StructureMode,
    k: Arc<dyn ComplexField>,
    /// The field whose derivatives equal those of `K`: `K` itself or `κ`.
    base: Arc<dyn ComplexField>,
    symbolic: Option<Arc<Symbolic>>,
    k_expr: Option<Expr>,
    label: String,
}

impl std::fmt::Debug for StructuralFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("StructuralFunction")
            .field("mode", &self.mode)
            .field("source", &self.source())
            .field("label", &self.label)
            .finish()
    }
}

fn symbolic_of(e: &Expr) -> Symbolic {
    let k_zbar = wirtinger_symbolic(e, Wrt::ZBar);
    let k_z = wirtinger_symbolic(e, Wrt::Z);
    Symbolic {
        k_zzbar: wirtinger_symbolic(&k_zbar, Wrt::Z),
        k_zbarzbar: wirtinger_symbolic(&k_zbar, Wrt::ZBar),
        k_zz: wirtinger_symbolic(&k_z, Wrt::Z),
        k_zbarz: wirtinger_symbolic(&k_z, Wrt::ZBar),
        k_z,
        k_zbar,
    }
}

impl StructuralFunction {
    /// General-K mode from an expression, with symbolic derivatives.
    pub fn from_expr(k: Expr) -> Self {
        let sym = symbolic_of(&k);
        let field: Arc<dyn ComplexField> = Arc::new(k.clone());
        StructuralFunction {
            mode: StructureMode::GeneralK,
            k: field.clone(),
            base: field,
            symbolic: Some(Arc::new(sym)),
            label: k.to_string(),
            k_expr: Some(k),
        }
    }

    pub fn parse(src: &str) -> Result<Self> {
        Ok(Self::from_expr(Expr::parse(src)?))
    }

    /// Kappa form `K = 1 + κ` from an expression for `κ`.
    pub fn kappa_expr(kappa: Expr) -> Self {
        let sym = symbolic_of(&kappa);
        let base: Arc<dyn ComplexField> = Arc::new(kappa.clone());
        StructuralFunction {
            mode: StructureMode::KappaForm,
            k: Arc::new(OnePlus(base.clone())),
            base,
            symbolic: Some(Arc::new(sym)),
            label: format!("1 + ({kappa})"),
            k_expr: Some(simplify(&Expr::add(Expr::real(1.0), kappa))),
        }
    }

    pub fn parse_kappa(src: &str) -> Result<Self> {
        Ok(Self::kappa_expr(Expr::parse(src)?))
    }

    /// General-K mode from any field; derivatives are numeric.
    pub fn from_field(k: impl ComplexField + 'static) -> Self {
        let label = label(&k);
        let field: Arc<dyn ComplexField> = Arc::new(k);
        StructuralFunction {
            mode: StructureMode::GeneralK,
            k: field.clone(),
            base: field,
            symbolic: None,
            k_expr: None,
            label,
        }
    }

    /// Kappa form from any field for `κ`; derivatives are numeric.
    pub fn kappa_field(kappa: impl ComplexField + 'static) -> Self {
        let label = format!("1 + ({})", label(&kappa));
        let base: Arc<dyn ComplexField> = Arc::new(kappa);
        StructuralFunction {
            mode: StructureMode::KappaForm,
            k: Arc::new(OnePlus(base.clone())),
            base,
            symbolic: None,
            k_expr: None,
            label,
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::from_expr(Expr::Lit(c))
    }

    pub fn mode(&self) -> StructureMode {
        self.mode
    }

    pub fn source(&self) -> DerivativeSource {
        if self.symbolic.is_some() {
            DerivativeSource::Symbolic
        } else {
            DerivativeSource::Numeric
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `K` as an expression, when it came from one.
    pub fn k_expr(&self) -> Option<&Expr> {
        self.k_expr.as_ref()
    }

    /// Symbolic `∂K/∂z̄`, when available.
    pub fn k_zbar_expr(&self) -> Option<&Expr> {
        self.symbolic.as_ref().map(|s| &s.k_zbar)
    }

    pub fn k_z_expr(&self) -> Option<&Expr> {
        self.symbolic.as_ref().map(|s| &s.k_z)
    }

    pub fn k_field(&self) -> &dyn ComplexField {
        self.k.as_ref()
    }

    pub fn k(&self, z: Complex64) -> Result<Complex64> {
        eval_finite(self.k.as_ref(), z)
    }

    /// `(K_z, K_z̄)` at `z0`.
    pub fn wirtinger(&self, z0: ComplexPoint, policy: &StepPolicy) -> Result<WirtingerPair> {
        match &self.symbolic {
            Some(s) => Ok(WirtingerPair {
                d_z: eval_finite(&s.k_z, z0.z())?,
                d_zbar: eval_finite(&s.k_zbar, z0.z())?,
            }),
            None => d_wirtinger(self.base.as_ref(), z0, policy),
        }
    }

    pub fn derivatives(&self, z0: ComplexPoint, policy: &StepPolicy) -> Result<KDerivatives> {
        let d = self.wirtinger(z0, policy)?;
        Ok(KDerivatives {
            k: self.k(z0.z())?,
            k_z: d.d_z,
            k_zbar: d.d_zbar,
        })
    }

    /// `∂²K/∂z∂z̄` at `z0`.
    pub fn k_zzbar(&self, z0: ComplexPoint, policy: &StepPolicy) -> Result<Complex64> {
        match &self.symbolic {
            Some(s) => eval_finite(&s.k_zzbar, z0.z()),
            None => d2_mixed(self.base.as_ref(), z0, policy),
        }
    }

    /// `K_xx + K_yy`. Symbolically it is assembled from all four second
    /// Wirtinger derivatives; numerically from the five-point stencil.
    pub fn laplacian(&self, z0: ComplexPoint, policy: &StepPolicy) -> Result<Complex64> {
        match &self.symbolic {
            Some(s) => {
                let z = z0.z();
                let zz = eval_finite(&s.k_zz, z)?;
                let zzb = eval_finite(&s.k_zzbar, z)?;
                let zbz = eval_finite(&s.k_zbarz, z)?;
                let zbzb = eval_finite(&s.k_zbarzbar, z)?;
                let xx = zz + zzb + zbz + zbzb;
                let yy = -zz + zzb + zbz - zbzb;
                Ok(xx + yy)
            }
            None => Ok(4.0 * d2_mixed(self.base.as_ref(), z0, policy)?),
        }
    }

    /// Partials of α and β; kappa form only.
    pub fn kappa_partials(&self, z0: ComplexPoint, policy: &StepPolicy) -> Result<KappaPartials> {
        self.require_kappa("kappa partials")?;
        let d = self.wirtinger(z0, policy)?;
        Ok(KappaPartials::from_wirtinger(d.d_z, d.d_zbar))
    }

    pub(crate) fn require_kappa(&self, what: &str) -> Result<()> {
        match self.mode {
            StructureMode::KappaForm => Ok(()),
            StructureMode::GeneralK => Err(Error::Mode(format!(
                "{what} needs a kappa-form structural function (K = 1 + κ), got general K = {}",
                self.label
            ))),
        }
    }

    /// Parameters shared by every report built from this structure.
    pub fn params(&self, policy: &StepPolicy) -> Params {
        let mut p = Params::new()
            .with("K", self.label.clone())
            .with("structure_mode", self.mode.name())
            .with("derivative_source", self.source().name());
        if let Some(s) = &self.symbolic {
            p.set("K_z", s.k_z.to_string());
            p.set("K_zbar", s.k_zbar.to_string());
        }
        p.set("h1", policy.h1);
        p.set("h2", policy.h2);
        p
    }

    pub(crate) fn is_degenerate_at(&self, z: Complex64) -> Result<bool> {
        Ok(self.k(z)?.norm() <= DEGENERATE_TOL)
    }
}

/// Result of the K-transformation `w̃ = wK`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KTransform {
    pub w_tilde: Complex64,
    pub u_tilde: f64,
    pub v_tilde: f64,
}

/// `w̃ = wK` with `ũ = k₁u − k₂v`, `ṽ = k₁v + k₂u`.
pub fn k_transform(w: Complex64, k: Complex64) -> KTransform {
    let (u, v) = (w.re, w.im);
    let (k1, k2) = (k.re, k.im);
    let u_tilde = k1 * u - v * k2;
    let v_tilde = v * k1 + u * k2;
    KTransform {
        w_tilde: Complex64::new(u_tilde, v_tilde),
        u_tilde,
        v_tilde,
    }
}

/// `(Dw/∂z, Dw/∂z̄)` at `z0`.
pub fn d_structural(
    w: &dyn ComplexField,
    s: &StructuralFunction,
    z0: ComplexPoint,
    policy: &StepPolicy,
) -> Result<WirtingerPair> {
    let dw = d_wirtinger(w, z0, policy)?;
    let dk = s.wirtinger(z0, policy)?;
    let w0 = eval_finite(w, z0.z())?;
    Ok(WirtingerPair {
        d_z: dw.d_z + w0 * dk.d_z,
        d_zbar: dw.d_zbar + w0 * dk.d_zbar,
    })
}

/// Which structural-holomorphy residual to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HoloMode {
    /// `w_z̄ + w K_z̄`.
    #[default]
    Structural,
    /// `K w_z̄ + w K_z̄`.
    Full,
}

impl HoloMode {
    pub fn name(self) -> &'static str {
        match self {
            HoloMode::Structural => "structural",
            HoloMode::Full => "full",
        }
    }

    pub fn operator(self) -> &'static str {
        match self {
            HoloMode::Structural => "structural-holomorphic",
            HoloMode::Full => "structural-holomorphic-full",
        }
    }
}

fn count_degenerate(s: &StructuralFunction, grid: &GridDomain) -> Result<usize> {
    let mut n = 0;
    for (_, p) in grid.centers() {
        if s.is_degenerate_at(p.z())? {
            n += 1;
        }
    }
    Ok(n)
}

/// Structural-holomorphy residual over the grid.
pub fn holo_residual(
    w: &dyn ComplexField,
    s: &StructuralFunction,
    grid: &GridDomain,
    policy: &StepPolicy,
    mode: HoloMode,
) -> Result<ResidualReport> {
    let field = SampledField::try_from_cells(grid, |_, p| {
        let dw = d_wirtinger(w, p, policy)?;
        let dk = s.wirtinger(p, policy)?;
        let w0 = eval_finite(w, p.z())?;
        let r = match mode {
            HoloMode::Structural => dw.d_zbar + w0 * dk.d_zbar,
            HoloMode::Full => s.k(p.z())? * dw.d_zbar + w0 * dk.d_zbar,
        };
        Ok(Some(r))
    })?;
    let mut params = Params::new().with("w", label(w)).with("mode", mode.name());
    params.extend(&s.params(policy));
    params.set("degenerate_cells", count_degenerate(s, grid)?);
    ResidualReport::from_field(mode.operator(), field, params)
}

/// Real first-order residuals of structural holomorphy in kappa form.
///
/// ```text
/// r₁ = v_x + u_y + v(α_x − β_y) + u(β_x + α_y)
/// r₂ = u_x − v_y + u(α_x − β_y) − v(β_x + α_y)
/// ```
pub fn real_cr_residual(
    u: &dyn RealField,
    v: &dyn RealField,
    alpha: &dyn RealField,
    beta: &dyn RealField,
    grid: &GridDomain,
    policy: &StepPolicy,
) -> Result<(ResidualReport, ResidualReport)> {
    let cells = |second: bool| {
        SampledField::try_from_cells(grid, |_, p| {
            let (ux, uy) = real_partials(u, p, policy)?;
            let (vx, vy) = real_partials(v, p, policy)?;
            let (ax, ay) = real_partials(alpha, p, policy)?;
            let (bx, by) = real_partials(beta, p, policy)?;
            let u0 = crate::field::eval_real_finite(u, p.x, p.y)?;
            let v0 = crate::field::eval_real_finite(v, p.x, p.y)?;
            let r = if second {
                ux - vy + u0 * (ax - by) - v0 * (bx + ay)
            } else {
                vx + uy + v0 * (ax - by) + u0 * (bx + ay)
            };
            Ok(Some(Complex64::new(r, 0.0)))
        })
    };
    let params = Params::new()
        .with("u", real_label(u))
        .with("v", real_label(v))
        .with("alpha", real_label(alpha))
        .with("beta", real_label(beta))
        .with("h1", policy.h1);
    Ok((
        ResidualReport::from_field("real-cr-1", cells(false)?, params.clone())?,
        ResidualReport::from_field("real-cr-2", cells(true)?, params)?,
    ))
}

/// Real coefficients `(a, b, c, d)` of the first-order elliptic system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// `(a, b, c, d)` at a point. `a = d` and `b = −c` hold by construction.
pub fn coefficients_from_structure(
    s: &StructuralFunction,
    z0: ComplexPoint,
    policy: &StepPolicy,
) -> Result<RealCoefficients> {
    let kp = s.kappa_partials(z0, policy)?;
    let a = kp.diag();
    let c = kp.cross();
    Ok(RealCoefficients { a, b: -c, c, d: a })
}

/// Coefficient fields over a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RealCoefficientFields {
    pub a: SampledField,
    pub b: SampledField,
    pub c: SampledField,
    pub d: SampledField,
}

pub fn coefficients_on_grid(
    s: &StructuralFunction,
    grid: &GridDomain,
    policy: &StepPolicy,
) -> Result<RealCoefficientFields> {
    s.require_kappa("coefficient extraction")?;
    let sweep = |pick: fn(&RealCoefficients) -> f64| {
        SampledField::try_from_cells(grid, |_, p| {
            let rc = coefficients_from_structure(s, p, policy)?;
            Ok(Some(Complex64::new(pick(&rc), 0.0)))
        })
    };
    Ok(RealCoefficientFields {
        a: sweep(|r| r.a)?,
        b: sweep(|r| r.b)?,
        c: sweep(|r| r.c)?,
        d: sweep(|r| r.d)?,
    })
}

/// Pointwise complex coefficients `(A, B, C)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CbvValues {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

/// `A = ¼(a + d + ic − ib)`, `B = ¼(a − d + ic + ib)`, `C = 1`.
pub fn cbv_from_real(rc: &RealCoefficients) -> CbvValues {
    let RealCoefficients { a, b, c, d } = *rc;
    CbvValues {
        a: 0.25 * Complex64::new(a + d, c - b),
        b: 0.25 * Complex64::new(a - d, c + b),
        c: Complex64::new(1.0, 0.0),
    }
}

/// Coefficient fields `(A, B, C)` of `C w_z̄ + A w + B w̄ = 0`.
#[derive(Clone)]
pub struct CbvCoefficients {
    pub a: Arc<dyn ComplexField>,
    pub b: Arc<dyn ComplexField>,
    pub c: Arc<dyn ComplexField>,
}

struct Constant(Complex64);

impl ComplexField for Constant {
    fn eval(&self, _z: Complex64) -> Result<Complex64> {
        Ok(self.0)
    }

    fn describe(&self) -> Option<String> {
        Some(Expr::Lit(self.0).to_string())
    }
}

struct FromStructure {
    s: StructuralFunction,
    policy: StepPolicy,
    pick: fn(&CbvValues) -> Complex64,
}

impl ComplexField for FromStructure {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        let rc = coefficients_from_structure(&self.s, z.into(), &self.policy)?;
        Ok((self.pick)(&cbv_from_real(&rc)))
    }
}

impl CbvCoefficients {
    pub fn new(
        a: impl ComplexField + 'static,
        b: impl ComplexField + 'static,
        c: impl ComplexField + 'static,
    ) -> Self {
        CbvCoefficients {
            a: Arc::new(a),
            b: Arc::new(b),
            c: Arc::new(c),
        }
    }

    /// Constant `A`, `B` with `C = 1`.
    pub fn constant(a: Complex64, b: Complex64) -> Self {
        Self::new(Constant(a), Constant(b), Constant(Complex64::new(1.0, 0.0)))
    }

    /// Coefficients of a kappa-form structure, through the real system.
    pub fn from_structure(s: &StructuralFunction, policy: &StepPolicy) -> Result<Self> {
        s.require_kappa("coefficient extraction")?;
        let mk = |pick: fn(&CbvValues) -> Complex64| FromStructure {
            s: s.clone(),
            policy: *policy,
            pick,
        };
        Ok(Self::new(mk(|v| v.a), mk(|v| v.b), mk(|v| v.c)))
    }
}

/// Residual field `C w_z̄ + A w + B w̄`.
pub fn cbv_residual(
    w: &dyn ComplexField,
    coeffs: &CbvCoefficients,
    grid: &GridDomain,
    policy: &StepPolicy,
) -> Result<ResidualReport> {
    let field = SampledField::try_from_cells(grid, |_, p| {
        let z = p.z();
        let dw = d_wirtinger(w, p, policy)?;
        let w0 = eval_finite(w, z)?;
        let a = eval_finite(coeffs.a.as_ref(), z)?;
        let b = eval_finite(coeffs.b.as_ref(), z)?;
        let c = eval_finite(coeffs.c.as_ref(), z)?;
        Ok(Some(c * dw.d_zbar + a * w0 + b * w0.conj()))
    })?;
    let params = Params::new()
        .with("w", label(w))
        .with("A", label(coeffs.a.as_ref()))
        .with("B", label(coeffs.b.as_ref()))
        .with("C", label(coeffs.c.as_ref()))
        .with("h1", policy.h1);
    ResidualReport::from_field("cbv", field, params)
}

/// The explicit solution `w = Φ e^{-K}`.
#[derive(Clone)]
pub struct ConstructedSolution {
    phi: Arc<dyn ComplexField>,
    k: Arc<dyn ComplexField>,
    expr: Option<Expr>,
}

impl ConstructedSolution {
    /// `Φ e^{-K}` as an expression, when both factors are expressions.
    pub fn expr(&self) -> Option<&Expr> {
        self.expr.as_ref()
    }
}

impl ComplexField for ConstructedSolution {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        let k = eval_finite(self.k.as_ref(), z)?;
        let e = (-k).exp();
        if !(e.re.is_finite() && e.im.is_finite()) {
            return Err(Error::numerical(z, format!("e^(-K) overflows for K = {k}")));
        }
        let w = eval_finite(self.phi.as_ref(), z)? * e;
        if !(w.re.is_finite() && w.im.is_finite()) {
            return Err(Error::numerical(z, "Φ e^(-K) overflows"));
        }
        Ok(w)
    }

    fn describe(&self) -> Option<String> {
        Some(match &self.expr {
            Some(e) => e.to_string(),
            None => format!("({}) * exp(-({}))", label(self.phi.as_ref()), label(self.k.as_ref())),
        })
    }
}

/// Builds `w = Φ e^{-K}`, structural-holomorphic for entire `Φ`.
pub fn construct_solution(phi: impl ComplexField + 'static, s: &StructuralFunction) -> ConstructedSolution {
    let phi_expr = phi.describe().and_then(|t| Expr::parse(&t).ok());
    let expr = match (phi_expr, s.k_expr()) {
        (Some(p), Some(k)) => Some(simplify(&Expr::mul(p, Expr::exp(Expr::neg(k.clone()))))),
        _ => None,
    };
    ConstructedSolution {
        phi: Arc::new(phi),
        k: s.k.clone(),
        expr,
    }
}

/// Coefficients of `𝒟w = dw + w dK` in the basis `(dz, dz̄)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexOneForm {
    pub c_z: Complex64,
    pub c_zbar: Complex64,
}

pub fn exterior_differential(
    w: &dyn ComplexField,
    s: &StructuralFunction,
    z0: ComplexPoint,
    policy: &StepPolicy,
) -> Result<ComplexOneForm> {
    let d = d_structural(w, s, z0, policy)?;
    Ok(ComplexOneForm {
        c_z: d.d_z,
        c_zbar: d.d_zbar,
    })
}

/// `(D_x w, D_y w)` with `D_x = ∂x + α_x − β_y`, `D_y = ∂y + α_y + β_x`.
pub fn dx_dy_operators(
    w: &dyn ComplexField,
    s: &StructuralFunction,
    z0: ComplexPoint,
    policy: &StepPolicy,
) -> Result<(Complex64, Complex64)> {
    let kp = s.kappa_partials(z0, policy)?;
    let dw = d_wirtinger(w, z0, policy)?;
    let w0 = eval_finite(w, z0.z())?;
    Ok((
        dw.partial_x() + w0 * kp.diag(),
        dw.partial_y() + w0 * kp.cross(),
    ))
}
