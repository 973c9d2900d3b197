use std::fmt;

use crate::kernel::Rational;

use super::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorName {
    A,
    U,
    Alpha,
    V,
}

impl GeneratorName {
    pub fn prefix(self) -> &'static str {
        match self {
            GeneratorName::A => "a",
            GeneratorName::U => "u",
            GeneratorName::Alpha => "alpha",
            GeneratorName::V => "v",
        }
    }

    /// Splits `alpha12` into `(Alpha, 12)`.
    pub fn split(ident: &str) -> Option<(GeneratorName, &str)> {
        [
            GeneratorName::Alpha,
            GeneratorName::A,
            GeneratorName::U,
            GeneratorName::V,
        ]
        .into_iter()
        .find_map(|g| {
            let digits = ident.strip_prefix(g.prefix())?;
            (!digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()))
                .then_some((g, digits))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Function {
    Delta,
    Dual,
    DualInverse,
    ConstantLoops,
    Cap,
    Bracket,
    Product,
}

impl Function {
    pub const ALL: [Function; 7] = [
        Function::Delta,
        Function::Dual,
        Function::DualInverse,
        Function::ConstantLoops,
        Function::Cap,
        Function::Bracket,
        Function::Product,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Function::Delta => "Delta",
            Function::Dual => "D",
            Function::DualInverse => "Dinv",
            Function::ConstantLoops => "s",
            Function::Cap => "cap",
            Function::Bracket => "bracket",
            Function::Product => "product",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Function::Cap | Function::Bracket | Function::Product => 2,
            _ => 1,
        }
    }

    pub fn from_name(name: &str) -> Option<Function> {
        Function::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    /// A nonnegative rational literal.
    Number(Rational),
    Generator(GeneratorName, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(Function, Vec<Expr>),
    Intersect {
        at: Vec<Expr>,
        free: Vec<Expr>,
        family: Box<Expr>,
    },
}

/// A parsed expression. Equality ignores source positions.
#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Expr {}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }

    /// An expression without a meaningful position.
    pub fn synthetic(kind: ExprKind) -> Self {
        Expr::new(kind, Span::default())
    }

    fn precedence(&self) -> u8 {
        match &self.kind {
            ExprKind::Add(..) | ExprKind::Sub(..) => 1,
            ExprKind::Mul(..) => 2,
            ExprKind::Neg(_) => 3,
            ExprKind::Pow(..) => 4,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.write_at(f, 0)?;
            return f.write_str(")");
        }
        match &self.kind {
            ExprKind::Number(q) => write!(f, "{q}"),
            ExprKind::Generator(g, i) => write!(f, "{}{i}", g.prefix()),
            ExprKind::Neg(x) => {
                f.write_str("-")?;
                x.write_at(f, 3)
            }
            ExprKind::Add(l, r) | ExprKind::Sub(l, r) => {
                l.write_at(f, 1)?;
                f.write_str(if matches!(self.kind, ExprKind::Add(..)) {
                    " + "
                } else {
                    " - "
                })?;
                r.write_at(f, 2)
            }
            ExprKind::Mul(l, r) => {
                l.write_at(f, 2)?;
                f.write_str("*")?;
                r.write_at(f, 3)
            }
            ExprKind::Pow(x, n) => {
                x.write_at(f, 5)?;
                write!(f, "^{n}")
            }
            ExprKind::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                write_list(f, args)?;
                f.write_str(")")
            }
            ExprKind::Intersect { at, free, family } => {
                f.write_str("intersect([")?;
                write_list(f, at)?;
                f.write_str("], [")?;
                write_list(f, free)?;
                f.write_str("], ")?;
                family.write_at(f, 0)?;
                f.write_str(")")
            }
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[Expr]) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        x.write_at(f, 0)?;
    }
    Ok(())
}

/// Prints with the fewest parentheses that reparse to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}
