use std::fmt;

use num_traits::Zero;

use crate::error::AlgebraError;
use crate::extended::ExtendedClass;
use crate::kernel::{Degree, Element, Rational, Ring};
use crate::StringAlgebra;

use super::ast::{Expr, ExprKind, Function, GeneratorName};
use super::{ErrorKind, ExprError, Span};

/// The value of an expression: a bare rational, or a class in one ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Scalar(Rational),
    Class(Element),
}

impl Value {
    pub fn ring(&self) -> Option<Ring> {
        match self {
            Value::Scalar(_) => None,
            Value::Class(x) => Some(x.ring()),
        }
    }

    /// Homological degree for loop classes, cohomological for the others.
    pub fn degree(&self, alg: &StringAlgebra) -> Degree {
        match self {
            Value::Scalar(q) if q.is_zero() => Degree::Any,
            Value::Scalar(_) => Degree::Homogeneous(0),
            Value::Class(x) => alg.model().degree(x),
        }
    }

    /// The value as a class of `ring`; scalars become multiples of the unit.
    pub fn into_ring(self, alg: &StringAlgebra, ring: Ring) -> Element {
        match self {
            Value::Scalar(q) => alg.one(ring).scale(&q),
            Value::Class(x) => x,
        }
    }

    pub fn pretty(&self) -> String {
        match self {
            Value::Scalar(q) => q.to_string(),
            Value::Class(x) => x.pretty(),
        }
    }

    /// `value : degree d (ring)`.
    pub fn describe(&self, alg: &StringAlgebra) -> String {
        let ring = self.ring().map_or("scalar", Ring::as_str);
        match self.degree(alg) {
            Degree::Homogeneous(d) => format!("{self} : degree {d} ({ring})"),
            Degree::Any => format!("{self} : degree any ({ring})"),
            Degree::Inhomogeneous => format!("{self} : inhomogeneous ({ring})"),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(q) => write!(f, "{q}"),
            Value::Class(x) => write!(f, "{x}"),
        }
    }
}

fn mixing(span: Span, message: String) -> ExprError {
    ExprError::new(ErrorKind::RingMixing, span, message)
}

fn algebra(span: Span, e: AlgebraError) -> ExprError {
    ExprError::new(ErrorKind::Algebra, span, e.to_string())
}

fn ring_name(v: &Value) -> &'static str {
    v.ring().map_or("scalar", Ring::as_str)
}

/// Evaluates `expr` in the algebra of one model.
///
/// `a<i>`, `u<i>` are loop classes and `alpha<i>`, `v<i>` classes of
/// `H*(LM)`; `D` lands in `H*(M)`. Sums and `*` stay inside one ring.
/// `cap`, `bracket` and `product` follow the extended algebra
/// `H*(M) ⊕ ℍ*(LM)`, where an exterior class in `alpha` counts as a class
/// of `H*(M)`.
pub fn evaluate(alg: &StringAlgebra, expr: &Expr) -> Result<Value, ExprError> {
    let span = expr.span;
    match &expr.kind {
        ExprKind::Number(q) => Ok(Value::Scalar(q.clone())),
        ExprKind::Generator(g, i) => {
            if *i == 0 || *i > alg.rank() {
                return Err(ExprError::new(
                    ErrorKind::UnknownIdentifier,
                    span,
                    format!(
                        "unknown identifier `{}{i}` (the model has {} generator{})",
                        g.prefix(),
                        alg.rank(),
                        if alg.rank() == 1 { "" } else { "s" }
                    ),
                ));
            }
            Ok(Value::Class(match g {
                GeneratorName::A => alg.a(*i),
                GeneratorName::U => alg.u(*i),
                GeneratorName::Alpha => alg.alpha(*i),
                GeneratorName::V => alg.v(*i),
            }))
        }
        ExprKind::Neg(x) => Ok(match evaluate(alg, x)? {
            Value::Scalar(q) => Value::Scalar(-q),
            Value::Class(x) => Value::Class(-x),
        }),
        ExprKind::Add(l, r) | ExprKind::Sub(l, r) => {
            let subtract = matches!(expr.kind, ExprKind::Sub(..));
            let (l, r) = (evaluate(alg, l)?, evaluate(alg, r)?);
            let op = if subtract { "-" } else { "+" };
            match (l, r) {
                (Value::Scalar(p), Value::Scalar(q)) => {
                    Ok(Value::Scalar(if subtract { p - q } else { p + q }))
                }
                (l, r) => {
                    let ring = same_ring(&l, &r).ok_or_else(|| {
                        mixing(
                            span,
                            format!(
                                "`{op}` needs both operands in one ring, found {} and {}",
                                ring_name(&l),
                                ring_name(&r)
                            ),
                        )
                    })?;
                    let (l, r) = (l.into_ring(alg, ring), r.into_ring(alg, ring));
                    Ok(Value::Class(if subtract { l - r } else { l + r }))
                }
            }
        }
        ExprKind::Mul(l, r) => {
            let (l, r) = (evaluate(alg, l)?, evaluate(alg, r)?);
            match (l, r) {
                (Value::Scalar(p), Value::Scalar(q)) => Ok(Value::Scalar(p * q)),
                (Value::Scalar(q), Value::Class(x)) | (Value::Class(x), Value::Scalar(q)) => {
                    Ok(Value::Class(x.scale(&q)))
                }
                (Value::Class(x), Value::Class(y)) => {
                    if x.ring() != y.ring() {
                        return Err(mixing(
                            span,
                            format!(
                                "`*` is the product within one ring, found {} and {}; \
                                 use cap(ω, b), bracket(x, y) or product(x, y) across rings",
                                x.ring(),
                                y.ring()
                            ),
                        ));
                    }
                    Ok(Value::Class(&x * &y))
                }
            }
        }
        ExprKind::Pow(x, n) => Ok(match evaluate(alg, x)? {
            Value::Scalar(q) => Value::Scalar(num_traits::pow(q, *n as usize)),
            Value::Class(x) => Value::Class(x.pow(*n)),
        }),
        ExprKind::Call(func, args) => {
            let values = args
                .iter()
                .map(|a| evaluate(alg, a))
                .collect::<Result<Vec<_>, _>>()?;
            call(alg, *func, values, span)
        }
        ExprKind::Intersect { at, free, family } => {
            let classes = |xs: &[Expr]| {
                xs.iter()
                    .map(|x| {
                        let v = evaluate(alg, x)?;
                        as_base(alg, v, x.span, "intersect")
                    })
                    .collect::<Result<Vec<_>, ExprError>>()
            };
            let (at, free) = (classes(at)?, classes(free)?);
            let b = as_loop(alg, evaluate(alg, family)?, family.span, "intersect")?;
            alg.loop_intersection(&at, &free, &b)
                .map(Value::Class)
                .map_err(|e| algebra(span, e))
        }
    }
}

fn same_ring(l: &Value, r: &Value) -> Option<Ring> {
    match (l.ring(), r.ring()) {
        (Some(a), Some(b)) if a == b => Some(a),
        (Some(a), None) | (None, Some(a)) => Some(a),
        _ => None,
    }
}

fn as_loop(alg: &StringAlgebra, v: Value, span: Span, op: &str) -> Result<Element, ExprError> {
    match v.ring() {
        None | Some(Ring::LoopHomology) => Ok(v.into_ring(alg, Ring::LoopHomology)),
        Some(other) => Err(mixing(
            span,
            format!("`{op}` needs a loop homology class here, found {other}"),
        )),
    }
}

/// A class of `H*(M)`: a base class, a scalar, or an exterior class in `alpha`.
fn as_base(alg: &StringAlgebra, v: Value, span: Span, op: &str) -> Result<Element, ExprError> {
    match v {
        Value::Scalar(q) => Ok(alg.one(Ring::BaseCohomology).scale(&q)),
        Value::Class(x) if x.ring() == Ring::LoopHomology => Err(mixing(
            span,
            format!("`{op}` needs a class of H*(M) here, found a loop homology class"),
        )),
        Value::Class(x) => alg.base_part(&x).map_err(|_| {
            mixing(
                span,
                format!("`{op}` needs a class of H*(M) here; {x} involves v and is not pulled back from M"),
            )
        }),
    }
}

fn is_base_like(v: &Value) -> bool {
    match v {
        Value::Class(x) => match x.ring() {
            Ring::BaseCohomology => true,
            Ring::Cohomology => x.is_exterior(),
            Ring::LoopHomology => false,
        },
        Value::Scalar(_) => false,
    }
}

/// Reads a value as an element of `H*(M) ⊕ ℍ*(LM)`.
fn as_extended(
    alg: &StringAlgebra,
    v: Value,
    span: Span,
    op: &str,
) -> Result<ExtendedClass, ExprError> {
    if is_base_like(&v) {
        Ok(ExtendedClass::from_base(as_base(alg, v, span, op)?))
    } else {
        Ok(ExtendedClass::from_loop(as_loop(alg, v, span, op)?))
    }
}

fn call(
    alg: &StringAlgebra,
    func: Function,
    mut args: Vec<Value>,
    span: Span,
) -> Result<Value, ExprError> {
    let name = func.name();
    let first = args.remove(0);
    match func {
        Function::Delta => match first {
            Value::Scalar(_) => Ok(Value::Scalar(Rational::zero())),
            Value::Class(x) => match x.ring() {
                Ring::LoopHomology => Ok(Value::Class(alg.bv_delta(&x))),
                Ring::Cohomology => Ok(Value::Class(alg.coh_delta(&x))),
                Ring::BaseCohomology => Err(mixing(
                    span,
                    "`Delta` acts on loop homology and on H*(LM), not on H*(M); \
                     apply it to alpha<i> directly"
                        .to_string(),
                )),
            },
        },
        Function::Dual => {
            let x = as_loop(alg, first, span, name)?;
            alg.poincare_dual(&x)
                .map(Value::Class)
                .map_err(|e| algebra(span, e))
        }
        Function::DualInverse => {
            let x = as_base(alg, first, span, name)?;
            alg.poincare_dual_inverse(&x)
                .map(Value::Class)
                .map_err(|e| algebra(span, e))
        }
        Function::ConstantLoops => {
            let x = as_loop(alg, first, span, name)?;
            alg.s_star(&x)
                .map(Value::Class)
                .map_err(|e| algebra(span, e))
        }
        Function::Cap => {
            let omega = match first {
                Value::Class(x) if x.ring() == Ring::LoopHomology => {
                    return Err(mixing(
                        span,
                        "`cap` takes a cohomology class first, found a loop homology class"
                            .to_string(),
                    ))
                }
                other => other.into_ring(alg, Ring::Cohomology),
            };
            let b = as_loop(alg, args.remove(0), span, name)?;
            Ok(Value::Class(alg.cap(&omega, &b)))
        }
        Function::Bracket | Function::Product => {
            let second = args.remove(0);
            let both_coh = matches!(
                (first.ring(), second.ring()),
                (Some(Ring::Cohomology), Some(Ring::Cohomology))
            );
            if func == Function::Product
                && (both_coh || first.ring().is_none() || second.ring().is_none())
            {
                // Cup products in H*(LM), or scaling.
                let ring = same_ring(&first, &second).unwrap_or(Ring::LoopHomology);
                return Ok(Value::Class(
                    &first.into_ring(alg, ring) * &second.into_ring(alg, ring),
                ));
            }
            let result_is_base = is_base_like(&first) && is_base_like(&second);
            let x = as_extended(alg, first, span, name)?;
            let y = as_extended(alg, second, span, name)?;
            let z = if func == Function::Bracket {
                alg.extended_bracket(&x, &y)
            } else {
                alg.extended_product(&x, &y)
            };
            Ok(Value::Class(if result_is_base {
                z.base().clone()
            } else {
                z.loop_part().clone()
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_for_rank;
    use crate::model::ModelSpec;

    fn eval(model: &str, src: &str) -> Result<Value, ExprError> {
        let alg = StringAlgebra::new(ModelSpec::resolve(model).unwrap());
        let e = parse_for_rank(src, alg.rank())?;
        evaluate(&alg, &e)
    }

    fn show(model: &str, src: &str) -> String {
        eval(model, src).unwrap().to_string()
    }

    #[test]
    fn desk_values() {
        assert_eq!(show("s3", "bracket(a1,u1)"), "-1");
        assert_eq!(show("s3", "cap(Delta(alpha1), u1^2)"), "2*u1");
        assert_eq!(show("s3", "product(s(a1), u1)"), "a1*u1");
        assert_eq!(show("s3", "intersect([], [alpha1], u1^2)"), "2*u1");
        assert_eq!(show("s3", "intersect([], [alpha1, alpha1], u1^3)"), "-6*u1");
        assert_eq!(show("s3", "cap(v1^2, u1^3)"), "6*u1");
        assert_eq!(show("s3", "Delta(a1*u1^3)"), "3*u1^2");
    }

    #[test]
    fn describe_reports_ring_and_degree() {
        let alg = StringAlgebra::new(ModelSpec::sphere(3).unwrap());
        let v = evaluate(&alg, &parse_for_rank("bracket(a1,u1)", 1).unwrap()).unwrap();
        assert_eq!(v.describe(&alg), "-1 : degree 0 (loop-homology)");
        let v = evaluate(&alg, &parse_for_rank("D(a1)", 1).unwrap()).unwrap();
        assert_eq!(v.describe(&alg), "alpha1 : degree 3 (base-cohomology)");
        let v = evaluate(&alg, &parse_for_rank("3/2", 1).unwrap()).unwrap();
        assert_eq!(v.describe(&alg), "3/2 : degree 0 (scalar)");
    }

    #[test]
    fn extended_forms() {
        assert_eq!(
            show("s3", "bracket(alpha1, u1^2)"),
            show("s3", "bracket(a1, u1^2)")
        );
        assert_eq!(show("s3", "product(alpha1, u1)"), "a1*u1");
        assert_eq!(show("su3", "product(D(a1), D(a2))"), "alpha1*alpha2");
        assert_eq!(show("su3", "bracket(alpha1, alpha2)"), "0");
        assert_eq!(show("s3", "product(v1, alpha1)"), "alpha1*v1");
        assert_eq!(show("s3", "u1 + 2"), "u1 + 2");
    }

    #[test]
    fn ring_mixing_is_rejected() {
        for src in [
            "a1 * alpha1",
            "a1 + v1",
            "cap(u1, u1)",
            "bracket(v1, u1)",
            "D(alpha1)",
            "Delta(D(a1))",
            "intersect([u1], [], u1)",
        ] {
            let err = eval("s3", src).unwrap_err();
            assert_eq!(err.kind, ErrorKind::RingMixing, "{src}: {err}");
        }
        assert_eq!(eval("s3", "D(u1)").unwrap_err().kind, ErrorKind::Algebra);
        assert_eq!(eval("s3", "s(u1)").unwrap_err().kind, ErrorKind::Algebra);
        let err = eval("s3", "a1 * alpha1").unwrap_err();
        assert!(err.message.contains("product within one ring"), "{err}");
    }
}
