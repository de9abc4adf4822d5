use num_complex::Complex64;

use super::ast::{BinOp, Expr, Func};
use super::parser::{parse, ParseError};
use crate::error::{Error, Result};
use crate::field::ComplexField;

impl Expr {
    pub fn parse(src: &str) -> Result<Expr, ParseError> {
        parse(src)
    }

    /// Evaluates at `z` with principal-branch `log` and powers.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(match self {
            Expr::Lit(c) => *c,
            Expr::Z => z,
            Expr::Neg(a) => -a.eval(z)?,
            Expr::Call(f, a) => {
                let v = a.eval(z)?;
                match f {
                    Func::Exp => v.exp(),
                    Func::Log => {
                        if v == Complex64::new(0.0, 0.0) {
                            return Err(Error::numerical(z, "log of zero"));
                        }
                        v.ln()
                    }
                    Func::Sin => v.sin(),
                    Func::Cos => v.cos(),
                    Func::Conj => v.conj(),
                    Func::Re => Complex64::new(v.re, 0.0),
                    Func::Im => Complex64::new(v.im, 0.0),
                    Func::Abs2 => Complex64::new(v.norm_sqr(), 0.0),
                }
            }
            Expr::Bin(op, a, b) => {
                let (x, y) = (a.eval(z)?, b.eval(z)?);
                match op {
                    BinOp::Add => x + y,
                    BinOp::Sub => x - y,
                    BinOp::Mul => x * y,
                    BinOp::Div => {
                        if y == Complex64::new(0.0, 0.0) {
                            return Err(Error::numerical(z, "division by zero"));
                        }
                        x / y
                    }
                }
            }
            Expr::Pow(a, b) => complex_pow(a.eval(z)?, b.eval(z)?, z)?,
        })
    }
}

pub(crate) fn integer_exponent(b: Complex64) -> Option<i32> {
    (b.im == 0.0 && b.re.fract() == 0.0 && b.re.abs() <= 1024.0).then_some(b.re as i32)
}

fn complex_pow(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    if let Some(n) = integer_exponent(b) {
        if n < 0 && a == zero {
            return Err(Error::numerical(z, "negative power of zero"));
        }
        return Ok(a.powi(n));
    }
    if a == zero {
        return if b.re > 0.0 {
            Ok(zero)
        } else {
            Err(Error::numerical(z, "zero base with non-positive exponent"))
        };
    }
    Ok((b * a.ln()).exp())
}

/// A parsed expression used as a [`ComplexField`].
#[derive(Debug, Clone, PartialEq)]
pub struct ExprField {
    expr: Expr,
}

impl ExprField {
    pub fn new(expr: Expr) -> Self {
        ExprField { expr }
    }

    pub fn parse(src: &str) -> Result<Self, ParseError> {
        Ok(ExprField::new(parse(src)?))
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }
}

impl From<Expr> for ExprField {
    fn from(expr: Expr) -> Self {
        ExprField::new(expr)
    }
}

impl ComplexField for ExprField {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        self.expr.eval(z)
    }

    fn describe(&self) -> Option<String> {
        Some(self.expr.to_string())
    }
}

impl ComplexField for Expr {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        Expr::eval(self, z)
    }

    fn describe(&self) -> Option<String> {
        Some(self.to_string())
    }
}
