//! Structural complex analysis on grid domains.
//!
//! A structural function `K` induces the multiplication map `w ↦ wK` and with
//! it the generalized Wirtinger operators
//!
//! ```text
//! D w / ∂z = w_z + w K_z        D w / ∂z̄ = w_z̄ + w K_z̄
//! ```
//!
//! This crate evaluates those operators, the residuals of the equations built
//! from them (structural holomorphy, Carleman-Bers-Vekua, nonlinear
//! Cauchy-Riemann, nonlinear Laplace), constructs the explicit solutions
//! `Φ e^{-K}`, and solves `∂h/∂z̄ = φ` by Cauchy-Pompeiu quadrature.
//!
//! Functions are supplied either as closures or as parsed expressions in `z`
//! (see [`expr`]); expressions carry exact symbolic derivatives.
//!
//! Runnable examples for each capability live in `examples/`.

pub mod dbar;
pub mod error;
pub mod expr;
pub mod field;
pub mod nlaplace;
pub mod report;
pub mod structure;
pub mod wirtinger;
pub mod cli;

pub use error::{Error, Result};
pub use expr::{parse, wirtinger_symbolic, Expr, ExprField, Wrt};
pub use field::{ComplexField, ComplexPoint, GridDomain, RealField, SampledField, Shape};
pub use num_complex::Complex64;
pub use report::{Params, PointReport, ResidualReport};
pub use structure::StructuralFunction;
pub use wirtinger::{StepPolicy, WirtingerPair};
