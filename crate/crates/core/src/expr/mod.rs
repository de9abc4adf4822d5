//! Complex expressions in one variable `z`.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr    := expr ('+' | '-') expr
//!          | expr ('*' | '/') expr
//!          | '-' expr
//!          | expr '^' expr            (right associative)
//!          | atom
//! atom    := number | number 'i' | 'i' | 'pi' | 'z'
//!          | func '(' expr ')' | 'pow' '(' expr ',' expr ')' | '(' expr ')'
//! func    := exp | log | sin | cos | conj | re | im | abs2
//! ```
//!
//! `log` and non-integer powers use the principal branch. `abs2(e)` is
//! `e * conj(e)`; there is deliberately no `abs`, which has no Wirtinger
//! derivatives at zero.

mod ast;
mod diff;
mod eval;
mod lexer;
mod parser;
mod simplify;

pub use ast::{BinOp, Expr, Func};
pub use diff::{wirtinger_symbolic, Wrt};
pub use eval::ExprField;
pub use lexer::{tokenize, Token, TokenKind};
pub use parser::{parse, ParseError};
pub use simplify::simplify;
