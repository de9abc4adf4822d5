use std::fmt;

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Exp,
    Log,
    Sin,
    Cos,
    Conj,
    Re,
    Im,
    Abs2,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Conj => "conj",
            Func::Re => "re",
            Func::Im => "im",
            Func::Abs2 => "abs2",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "conj" => Func::Conj,
            "re" => Func::Re,
            "im" => Func::Im,
            "abs2" => Func::Abs2,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => " + ",
            BinOp::Sub => " - ",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }
}

/// Expression tree over the single variable `z`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Lit(Complex64),
    Z,
    Call(Func, Box<Expr>),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
}

#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn lit(re: f64, im: f64) -> Expr {
        Expr::Lit(Complex64::new(re, im))
    }

    pub fn real(v: f64) -> Expr {
        Expr::lit(v, 0.0)
    }

    pub fn call(f: Func, arg: Expr) -> Expr {
        Expr::Call(f, Box::new(arg))
    }

    pub fn conj(arg: Expr) -> Expr {
        Expr::call(Func::Conj, arg)
    }

    pub fn exp(arg: Expr) -> Expr {
        Expr::call(Func::Exp, arg)
    }

    pub fn neg(arg: Expr) -> Expr {
        Expr::Neg(Box::new(arg))
    }

    pub fn bin(op: BinOp, a: Expr, b: Expr) -> Expr {
        Expr::Bin(op, Box::new(a), Box::new(b))
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::bin(BinOp::Add, a, b)
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::bin(BinOp::Sub, a, b)
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::bin(BinOp::Mul, a, b)
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::bin(BinOp::Div, a, b)
    }

    pub fn pow(a: Expr, b: Expr) -> Expr {
        Expr::Pow(Box::new(a), Box::new(b))
    }

    /// True if `z` occurs nowhere in the tree.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Lit(_) => true,
            Expr::Z => false,
            Expr::Call(_, a) | Expr::Neg(a) => a.is_constant(),
            Expr::Bin(_, a, b) | Expr::Pow(a, b) => a.is_constant() && b.is_constant(),
        }
    }

    pub fn as_lit(&self) -> Option<Complex64> {
        match self {
            Expr::Lit(c) => Some(*c),
            _ => None,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Bin(op, ..) => op.precedence(),
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Lit(c) => {
                let (re, im) = (c.re, c.im);
                if re != 0.0 && im != 0.0 {
                    5 // printed in parentheses
                } else if re < 0.0 || im < 0.0 {
                    3
                } else {
                    5
                }
            }
            Expr::Z | Expr::Call(..) => 5,
        }
    }
}

fn fmt_real(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    let a = v.abs();
    if a != 0.0 && !(1e-5..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

fn fmt_lit(c: Complex64) -> String {
    match (c.re != 0.0, c.im != 0.0) {
        (_, false) => fmt_real(c.re),
        (false, true) => format!("{}i", fmt_real(c.im)),
        (true, true) => {
            let sign = if c.im < 0.0 { "-" } else { "+" };
            format!("({}{}{}i)", fmt_real(c.re), sign, fmt_real(c.im.abs()))
        }
    }
}

struct Wrapped<'a>(&'a Expr, bool);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Prints parseable text; `parse(&e.to_string())` evaluates like `e`.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Lit(c) => f.write_str(&fmt_lit(*c)),
            Expr::Z => f.write_str("z"),
            Expr::Call(func, a) => write!(f, "{}({})", func.name(), a),
            Expr::Neg(a) => write!(f, "-{}", Wrapped(a, a.precedence() < 3)),
            Expr::Bin(op, a, b) => {
                let p = op.precedence();
                write!(
                    f,
                    "{}{}{}",
                    Wrapped(a, a.precedence() < p),
                    op.symbol(),
                    Wrapped(b, b.precedence() <= p)
                )
            }
            Expr::Pow(a, b) => write!(
                f,
                "{}^{}",
                Wrapped(a, a.precedence() <= 4),
                Wrapped(b, b.precedence() < 4)
            ),
        }
    }
}
