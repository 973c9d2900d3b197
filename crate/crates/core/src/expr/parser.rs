use num_traits::{ToPrimitive, Zero};

use crate::kernel::Rational;

use super::ast::{Expr, ExprKind, Function, GeneratorName};
use super::lexer::{tokenize, Token, TokenKind};
use super::{ErrorKind, ExprError, Span};

/// Parses without checking generator indices against a model.
pub fn parse(src: &str) -> Result<Expr, ExprError> {
    Parser::new(src, None)?.parse_all()
}

/// Parses and rejects generators whose index exceeds `rank`.
pub fn parse_for_rank(src: &str, rank: usize) -> Result<Expr, ExprError> {
    Parser::new(src, Some(rank))?.parse_all()
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    rank: Option<usize>,
}

impl Parser {
    fn new(src: &str, rank: Option<usize>) -> Result<Self, ExprError> {
        Ok(Parser {
            tokens: tokenize(src)?,
            pos: 0,
            rank,
        })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.kind != TokenKind::Eof {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if &self.peek().kind == kind {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: TokenKind, context: &str) -> Result<Span, ExprError> {
        let t = self.next();
        if t.kind == kind {
            Ok(t.span)
        } else {
            Err(ExprError::new(
                ErrorKind::Syntax,
                t.span,
                format!(
                    "expected {} {context}, found {}",
                    kind.describe(),
                    t.kind.describe()
                ),
            ))
        }
    }

    fn parse_all(mut self) -> Result<Expr, ExprError> {
        let e = self.expr()?;
        let t = self.peek();
        if t.kind != TokenKind::Eof {
            return Err(ExprError::new(
                ErrorKind::Syntax,
                t.span,
                format!("unexpected {} after expression", t.kind.describe()),
            ));
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            let add = match self.peek().kind {
                TokenKind::Plus => true,
                TokenKind::Minus => false,
                _ => return Ok(lhs),
            };
            self.next();
            let rhs = self.term()?;
            let span = lhs.span;
            let kind = if add {
                ExprKind::Add(Box::new(lhs), Box::new(rhs))
            } else {
                ExprKind::Sub(Box::new(lhs), Box::new(rhs))
            };
            lhs = Expr::new(kind, span);
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        while self.eat(&TokenKind::Star) {
            let rhs = self.unary()?;
            let span = lhs.span;
            lhs = Expr::new(ExprKind::Mul(Box::new(lhs), Box::new(rhs)), span);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        let span = self.peek().span;
        if self.eat(&TokenKind::Minus) {
            let inner = self.unary()?;
            return Ok(Expr::new(ExprKind::Neg(Box::new(inner)), span));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if !self.eat(&TokenKind::Caret) {
            return Ok(base);
        }
        let t = self.next();
        let bad = |message: &str| ExprError::new(ErrorKind::Exponent, t.span, message.to_string());
        let n = match &t.kind {
            TokenKind::Int(n) => n
                .to_u32()
                .ok_or_else(|| bad(&format!("exponent {n} is too large")))?,
            TokenKind::Minus => return Err(bad("exponent must be nonnegative")),
            other => {
                return Err(bad(&format!(
                    "exponent must be a nonnegative integer literal, found {}",
                    other.describe()
                )))
            }
        };
        if self.peek().kind == TokenKind::Slash {
            return Err(bad("exponent must be an integer"));
        }
        let span = base.span;
        Ok(Expr::new(ExprKind::Pow(Box::new(base), n), span))
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let t = self.next();
        match t.kind {
            TokenKind::Int(n) => {
                let value = if self.eat(&TokenKind::Slash) {
                    let d = self.next();
                    match d.kind {
                        TokenKind::Int(d) if !d.is_zero() => Rational::new(n, d),
                        TokenKind::Int(_) => {
                            return Err(ExprError::new(
                                ErrorKind::Syntax,
                                d.span,
                                "zero denominator",
                            ))
                        }
                        other => {
                            return Err(ExprError::new(
                                ErrorKind::Syntax,
                                d.span,
                                format!("expected a denominator, found {}", other.describe()),
                            ))
                        }
                    }
                } else {
                    Rational::from_integer(n)
                };
                Ok(Expr::new(ExprKind::Number(value), t.span))
            }
            TokenKind::LParen => {
                let inner = self.expr()?;
                self.expect(TokenKind::RParen, "to close `(`")?;
                Ok(inner)
            }
            TokenKind::Ident(name) => self.identifier(&name, t.span),
            other => Err(ExprError::new(
                ErrorKind::Syntax,
                t.span,
                format!("expected an operand, found {}", other.describe()),
            )),
        }
    }

    fn identifier(&mut self, name: &str, span: Span) -> Result<Expr, ExprError> {
        if let Some((g, digits)) = GeneratorName::split(name) {
            let index: usize = digits.parse().unwrap_or(0);
            let in_range = index >= 1 && self.rank.is_none_or(|r| index <= r);
            if !in_range {
                let bound = self
                    .rank
                    .map(|r| {
                        format!(
                            " (the model has {r} generator{})",
                            if r == 1 { "" } else { "s" }
                        )
                    })
                    .unwrap_or_default();
                return Err(ExprError::new(
                    ErrorKind::UnknownIdentifier,
                    span,
                    format!("unknown identifier `{name}`{bound}"),
                ));
            }
            return Ok(Expr::new(ExprKind::Generator(g, index), span));
        }
        if name == "intersect" {
            return self.intersect(span);
        }
        let Some(func) = Function::from_name(name) else {
            return Err(ExprError::new(
                ErrorKind::UnknownIdentifier,
                span,
                format!("unknown identifier `{name}`"),
            ));
        };
        self.expect(TokenKind::LParen, &format!("after `{name}`"))?;
        let args = self.arguments(&TokenKind::RParen)?;
        if args.len() != func.arity() {
            return Err(ExprError::new(
                ErrorKind::Arity,
                span,
                format!(
                    "`{name}` takes {} argument{}, got {}",
                    func.arity(),
                    if func.arity() == 1 { "" } else { "s" },
                    args.len()
                ),
            ));
        }
        Ok(Expr::new(ExprKind::Call(func, args), span))
    }

    /// Comma-separated expressions up to and including `close`.
    fn arguments(&mut self, close: &TokenKind) -> Result<Vec<Expr>, ExprError> {
        let mut args = Vec::new();
        if self.eat(close) {
            return Ok(args);
        }
        loop {
            args.push(self.expr()?);
            if self.eat(close) {
                return Ok(args);
            }
            self.expect(TokenKind::Comma, "between arguments")?;
        }
    }

    fn intersect(&mut self, span: Span) -> Result<Expr, ExprError> {
        self.expect(TokenKind::LParen, "after `intersect`")?;
        self.expect(
            TokenKind::LBracket,
            "to open the list of classes at the base point",
        )?;
        let at = self.arguments(&TokenKind::RBracket)?;
        self.expect(TokenKind::Comma, "after the first list")?;
        self.expect(TokenKind::LBracket, "to open the list of free classes")?;
        let free = self.arguments(&TokenKind::RBracket)?;
        self.expect(TokenKind::Comma, "after the second list")?;
        let family = self.expr()?;
        let close = self.peek().clone();
        if close.kind == TokenKind::Comma {
            return Err(ExprError::new(
                ErrorKind::Arity,
                span,
                "`intersect` takes two lists and one class",
            ));
        }
        self.expect(TokenKind::RParen, "to close `intersect(`")?;
        Ok(Expr::new(
            ExprKind::Intersect {
                at,
                free,
                family: Box::new(family),
            },
            span,
        ))
    }
}
