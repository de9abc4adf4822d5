use num_complex::Complex64;

use super::ast::{BinOp, Expr, Func};

fn is(e: &Expr, v: f64) -> bool {
    e.as_lit() == Some(Complex64::new(v, 0.0))
}

/// Identity removal and constant folding, bottom up.
///
/// Folding is skipped wherever it would fail or produce a non-finite value,
/// so the result evaluates like the input wherever both are defined.
pub fn simplify(e: &Expr) -> Expr {
    let s = match e {
        Expr::Lit(_) | Expr::Z => return e.clone(),
        Expr::Neg(a) => match simplify(a) {
            Expr::Neg(inner) => *inner,
            Expr::Lit(c) => Expr::Lit(-c),
            a => Expr::neg(a),
        },
        Expr::Call(f, a) => {
            let a = simplify(a);
            match (f, a) {
                (Func::Conj, Expr::Call(Func::Conj, inner)) => *inner,
                (f, a) => Expr::call(*f, a),
            }
        }
        Expr::Bin(op, a, b) => {
            let (a, b) = (simplify(a), simplify(b));
            match op {
                BinOp::Add if is(&a, 0.0) => b,
                BinOp::Add | BinOp::Sub if is(&b, 0.0) => a,
                BinOp::Sub if is(&a, 0.0) => simplify(&Expr::neg(b)),
                BinOp::Mul if is(&a, 0.0) || is(&b, 0.0) => Expr::real(0.0),
                BinOp::Mul if is(&a, 1.0) => b,
                BinOp::Mul | BinOp::Div if is(&b, 1.0) => a,
                BinOp::Mul if is(&a, -1.0) => simplify(&Expr::neg(b)),
                BinOp::Div if is(&a, 0.0) => Expr::real(0.0),
                _ => Expr::bin(*op, a, b),
            }
        }
        Expr::Pow(a, b) => {
            let (a, b) = (simplify(a), simplify(b));
            if is(&b, 1.0) {
                a
            } else if is(&b, 0.0) {
                Expr::real(1.0)
            } else {
                Expr::pow(a, b)
            }
        }
    };
    fold(s)
}

fn fold(e: Expr) -> Expr {
    if matches!(e, Expr::Lit(_)) || !e.is_constant() {
        return e;
    }
    match e.eval(Complex64::new(0.0, 0.0)) {
        Ok(v) if v.re.is_finite() && v.im.is_finite() => Expr::Lit(v),
        _ => e,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities() {
        assert_eq!(simplify(&Expr::add(Expr::real(0.0), Expr::Z)), Expr::Z);
        assert_eq!(
            simplify(&Expr::mul(Expr::real(1.0), Expr::conj(Expr::Z))),
            Expr::conj(Expr::Z)
        );
        assert_eq!(simplify(&Expr::mul(Expr::real(2.0), Expr::real(3.0))), Expr::real(6.0));
        assert_eq!(simplify(&Expr::mul(Expr::real(0.0), Expr::exp(Expr::Z))), Expr::real(0.0));
        assert_eq!(simplify(&Expr::neg(Expr::neg(Expr::Z))), Expr::Z);
        assert_eq!(simplify(&Expr::conj(Expr::conj(Expr::Z))), Expr::Z);
        assert_eq!(simplify(&Expr::pow(Expr::Z, Expr::real(1.0))), Expr::Z);
    }

    #[test]
    fn failing_folds_are_left_alone() {
        let e = Expr::call(Func::Log, Expr::real(0.0));
        assert_eq!(simplify(&e), e);
        let e = Expr::div(Expr::real(1.0), Expr::real(0.0));
        assert_eq!(simplify(&e), e);
    }
}
