//! Formal Wirtinger differentiation with `z` and `conj(z)` as independent
//! symbols.

use num_complex::Complex64;

use super::ast::{BinOp, Expr, Func};
use super::simplify::simplify;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Wrt {
    Z,
    ZBar,
}

impl Wrt {
    pub fn other(self) -> Wrt {
        match self {
            Wrt::Z => Wrt::ZBar,
            Wrt::ZBar => Wrt::Z,
        }
    }
}

/// Exact ∂e/∂z or ∂e/∂z̄, simplified.
///
/// `re`, `im` and `abs2` are first rewritten through `conj`. Derivatives of
/// `conj(e)` use ∂conj(e)/∂z = conj(∂e/∂z̄).
pub fn wirtinger_symbolic(e: &Expr, wrt: Wrt) -> Expr {
    simplify(&d(&lower(e), wrt))
}

fn half() -> Expr {
    Expr::real(0.5)
}

/// Rewrites re/im/abs2 into z, conj(z) combinations.
fn lower(e: &Expr) -> Expr {
    match e {
        Expr::Lit(_) | Expr::Z => e.clone(),
        Expr::Neg(a) => Expr::neg(lower(a)),
        Expr::Bin(op, a, b) => Expr::bin(*op, lower(a), lower(b)),
        Expr::Pow(a, b) => Expr::pow(lower(a), lower(b)),
        Expr::Call(f, a) => {
            let a = lower(a);
            match f {
                Func::Re => Expr::mul(half(), Expr::add(a.clone(), Expr::conj(a))),
                Func::Im => Expr::mul(
                    Expr::lit(0.0, -0.5),
                    Expr::sub(a.clone(), Expr::conj(a)),
                ),
                Func::Abs2 => Expr::mul(a.clone(), Expr::conj(a)),
                _ => Expr::call(*f, a),
            }
        }
    }
}

fn zero() -> Expr {
    Expr::real(0.0)
}

fn d(e: &Expr, wrt: Wrt) -> Expr {
    if e.is_constant() {
        return zero();
    }
    match e {
        Expr::Lit(_) => zero(),
        Expr::Z => Expr::real(if wrt == Wrt::Z { 1.0 } else { 0.0 }),
        Expr::Neg(a) => Expr::neg(d(a, wrt)),
        Expr::Bin(op, a, b) => {
            let (da, db) = (d(a, wrt), d(b, wrt));
            let (a, b) = ((**a).clone(), (**b).clone());
            match op {
                BinOp::Add => Expr::add(da, db),
                BinOp::Sub => Expr::sub(da, db),
                BinOp::Mul => Expr::add(Expr::mul(da, b), Expr::mul(a, db)),
                BinOp::Div => Expr::div(
                    Expr::sub(Expr::mul(da, b.clone()), Expr::mul(a, db)),
                    Expr::mul(b.clone(), b),
                ),
            }
        }
        Expr::Call(f, a) => {
            let da = d(a, wrt);
            let a = (**a).clone();
            match f {
                Func::Conj => Expr::conj(d(&a, wrt.other())),
                Func::Exp => Expr::mul(Expr::exp(a), da),
                Func::Log => Expr::div(da, a),
                Func::Sin => Expr::mul(Expr::call(Func::Cos, a), da),
                Func::Cos => Expr::mul(Expr::neg(Expr::call(Func::Sin, a)), da),
                // removed by lower()
                Func::Re | Func::Im | Func::Abs2 => d(&lower(&Expr::call(*f, a)), wrt),
            }
        }
        Expr::Pow(a, b) => {
            let (base, ex) = ((**a).clone(), (**b).clone());
            if ex.is_constant() {
                // n a^(n-1) a'
                let reduced = match ex.as_lit() {
                    Some(n) => Expr::Lit(n - Complex64::new(1.0, 0.0)),
                    None => Expr::sub(ex.clone(), Expr::real(1.0)),
                };
                Expr::mul(Expr::mul(ex, Expr::pow(base.clone(), reduced)), d(&base, wrt))
            } else if base.is_constant() {
                Expr::mul(
                    Expr::mul(e.clone(), Expr::call(Func::Log, base)),
                    d(&ex, wrt),
                )
            } else {
                // a^b (b' log a + b a'/a)
                Expr::mul(
                    e.clone(),
                    Expr::add(
                        Expr::mul(d(&ex, wrt), Expr::call(Func::Log, base.clone())),
                        Expr::div(Expr::mul(ex, d(&base, wrt)), base),
                    ),
                )
            }
        }
    }
}
