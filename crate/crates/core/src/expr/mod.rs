//! The expression language used by the command line.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' INT)?
//! atom    := INT ('/' INT)? | GENERATOR | CALL | '(' expr ')'
//! CALL    := NAME '(' expr (',' expr)* ')'
//!          | 'intersect' '(' list ',' list ',' expr ')'
//! list    := '[' (expr (',' expr)*)? ']'
//! ```
//!
//! Generators are `a<i>`, `u<i>` (loop homology) and `alpha<i>`, `v<i>`
//! (cohomology of the loop space). Function names are `Delta`, `D`, `Dinv`,
//! `s`, `cap`, `bracket`, `product` and `intersect`.

mod ast;
mod eval;
mod lexer;
mod parser;

use std::fmt;

use thiserror::Error;

pub use ast::{Expr, ExprKind, Function, GeneratorName};
pub use eval::{evaluate, Value};
pub use lexer::{tokenize, Token, TokenKind};
pub use parser::{parse, parse_for_rank};

/// A position in the source text, one-based.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Lexical,
    Syntax,
    UnknownIdentifier,
    Arity,
    Exponent,
    RingMixing,
    Algebra,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {message}")]
pub struct ExprError {
    pub kind: ErrorKind,
    pub span: Span,
    pub message: String,
}

impl ExprError {
    pub(crate) fn new(kind: ErrorKind, span: Span, message: impl Into<String>) -> Self {
        ExprError {
            kind,
            span,
            message: message.into(),
        }
    }
}
