use std::fmt;

use super::ast::{BinOp, Expr, Func};
use super::lexer::{tokenize, Token, TokenKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    /// Byte offset into the source.
    pub position: usize,
    pub expected: Option<&'static str>,
}

impl ParseError {
    pub fn new(message: impl Into<String>, position: usize, expected: Option<&'static str>) -> Self {
        ParseError {
            message: message.into(),
            position,
            expected,
        }
    }

    /// Two-line diagnostic: the source, then a caret under the offending byte.
    pub fn render(&self, src: &str) -> String {
        format!("{src}\n{}^ {self}", " ".repeat(self.position))
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)?;
        if let Some(e) = self.expected {
            write!(f, " (expected {e})")?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

const BP_ADD: u8 = 10;
const BP_MUL: u8 = 20;
const BP_NEG: u8 = 30;
const BP_POW: u8 = 40;

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        end: src.len(),
    };
    let e = p.expr(0)?;
    if let Some(t) = p.peek() {
        return Err(ParseError::new(
            format!("unexpected '{}'", t.text),
            t.position,
            Some("operator or end of input"),
        ));
    }
    Ok(e)
}

struct Parser<'a> {
    tokens: Vec<Token<'a>>,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token<'a>> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token<'a>> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |t| t.position)
    }

    fn expect(&mut self, kind: TokenKind, what: &'static str) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if t.kind == kind => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(ParseError::new(
                format!("unexpected '{}'", t.text),
                t.position,
                Some(what),
            )),
            None => Err(ParseError::new("unexpected end of input", self.end, Some(what))),
        }
    }

    fn expr(&mut self, min_bp: u8) -> Result<Expr, ParseError> {
        let mut lhs = self.prefix()?;
        while let Some(t) = self.peek() {
            if t.kind != TokenKind::Operator {
                if t.kind == TokenKind::RParen || t.kind == TokenKind::Comma {
                    break;
                }
                return Err(ParseError::new(
                    format!("unexpected '{}'", t.text),
                    t.position,
                    Some("operator"),
                ));
            }
            let (lbp, rbp, op) = match t.text {
                "+" => (BP_ADD, BP_ADD + 1, Some(BinOp::Add)),
                "-" => (BP_ADD, BP_ADD + 1, Some(BinOp::Sub)),
                "*" => (BP_MUL, BP_MUL + 1, Some(BinOp::Mul)),
                "/" => (BP_MUL, BP_MUL + 1, Some(BinOp::Div)),
                // right associative
                _ => (BP_POW, BP_POW - 1, None),
            };
            if lbp < min_bp {
                break;
            }
            self.pos += 1;
            let rhs = self.expr(rbp)?;
            lhs = match op {
                Some(op) => Expr::bin(op, lhs, rhs),
                None => Expr::pow(lhs, rhs),
            };
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<Expr, ParseError> {
        let at = self.here();
        let Some(t) = self.next() else {
            return Err(ParseError::new("unexpected end of input", at, Some("operand")));
        };
        match t.kind {
            TokenKind::Number => Ok(Expr::real(number(&t)?)),
            TokenKind::Imaginary => Ok(Expr::lit(0.0, number(&t)?)),
            TokenKind::Operator if t.text == "-" => Ok(Expr::neg(self.expr(BP_NEG)?)),
            TokenKind::Operator if t.text == "+" => self.expr(BP_NEG),
            TokenKind::LParen => {
                let e = self.expr(0)?;
                self.expect(TokenKind::RParen, "')'")?;
                Ok(e)
            }
            TokenKind::Identifier => self.identifier(&t),
            _ => Err(ParseError::new(
                format!("unexpected '{}'", t.text),
                t.position,
                Some("operand"),
            )),
        }
    }

    fn identifier(&mut self, t: &Token<'a>) -> Result<Expr, ParseError> {
        match t.text {
            "z" => return Ok(Expr::Z),
            "i" => return Ok(Expr::lit(0.0, 1.0)),
            "pi" => return Ok(Expr::real(std::f64::consts::PI)),
            _ => {}
        }
        let func = Func::from_name(t.text);
        if func.is_none() && t.text != "pow" {
            return Err(ParseError::new(
                format!("unknown identifier '{}'", t.text),
                t.position,
                Some("z, i, pi or a function name"),
            ));
        }
        self.expect(TokenKind::LParen, "'(' after function name")?;
        let first = self.expr(0)?;
        let e = match func {
            Some(f) => Expr::call(f, first),
            None => {
                self.expect(TokenKind::Comma, "',' in pow(base, exponent)")?;
                let second = self.expr(0)?;
                Expr::pow(first, second)
            }
        };
        if self.peek().is_some_and(|n| n.kind == TokenKind::Comma) {
            return Err(ParseError::new(
                format!("too many arguments to '{}'", t.text),
                self.here(),
                Some("')'"),
            ));
        }
        self.expect(TokenKind::RParen, "')'")?;
        Ok(e)
    }
}

fn number(t: &Token<'_>) -> Result<f64, ParseError> {
    let text = t.text.trim_end_matches('i');
    text.parse::<f64>()
        .map_err(|_| ParseError::new("malformed number", t.position, Some("number")))
}
