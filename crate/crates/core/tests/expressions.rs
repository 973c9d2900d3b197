use proptest::prelude::*;

use bvloop::expr::{parse, Expr, ExprKind, Function, GeneratorName};
use bvloop::kernel::ratio;

fn leaf() -> impl Strategy<Value = Expr> {
    let generator = prop_oneof![
        Just(GeneratorName::A),
        Just(GeneratorName::U),
        Just(GeneratorName::Alpha),
        Just(GeneratorName::V),
    ];
    prop_oneof![
        (0i64..20, 1i64..5).prop_map(|(n, d)| Expr::synthetic(ExprKind::Number(ratio(n, d)))),
        (generator, 1usize..12).prop_map(|(g, i)| Expr::synthetic(ExprKind::Generator(g, i))),
    ]
}

fn tree() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(5, 48, 3, |inner| {
        let b = |x: Expr| Box::new(x);
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(move |(l, r)| Expr::synthetic(ExprKind::Add(b(l), b(r)))),
            (inner.clone(), inner.clone())
                .prop_map(move |(l, r)| Expr::synthetic(ExprKind::Sub(b(l), b(r)))),
            (inner.clone(), inner.clone())
                .prop_map(move |(l, r)| Expr::synthetic(ExprKind::Mul(b(l), b(r)))),
            inner
                .clone()
                .prop_map(move |x| Expr::synthetic(ExprKind::Neg(b(x)))),
            (inner.clone(), 0u32..5)
                .prop_map(move |(x, n)| Expr::synthetic(ExprKind::Pow(b(x), n))),
            (
                prop::sample::select(Function::ALL.to_vec()),
                prop::collection::vec(inner.clone(), 2)
            )
                .prop_map(|(f, mut args)| {
                    args.truncate(f.arity());
                    Expr::synthetic(ExprKind::Call(f, args))
                }),
            (
                prop::collection::vec(inner.clone(), 0..3),
                prop::collection::vec(inner.clone(), 0..3),
                inner
            )
                .prop_map(|(at, free, family)| Expr::synthetic(ExprKind::Intersect {
                    at,
                    free,
                    family: Box::new(family)
                })),
        ]
    })
}

proptest! {
    #[test]
    fn printing_round_trips(e in tree()) {
        let text = e.to_string();
        let reparsed = parse(&text).unwrap();
        prop_assert_eq!(&reparsed, &e);
        prop_assert_eq!(reparsed.to_string(), text);
    }

    #[test]
    fn arbitrary_text_never_panics(text in "[a-z0-9()\\[\\],+*^/ \n-]{0,24}") {
        if let Err(err) = parse(&text) {
            let lines = text.split('\n').count();
            prop_assert!(err.span.line >= 1 && err.span.line <= lines);
            prop_assert!(err.span.col >= 1);
        }
    }
}

#[test]
fn spans_point_into_the_source() {
    let e = parse("1 +\n  bracket(a1, u1)").unwrap();
    match e.kind {
        ExprKind::Add(_, r) => assert_eq!((r.span.line, r.span.col), (2, 3)),
        other => panic!("unexpected {other:?}"),
    }
}
