use qdr_core::catalog::{self, Context};
use qdr_core::expr::{eval_str, parse};
use qdr_core::Error;

const EXTRA: &[&str] = &[
    "-x^2",
    "(-x)^2",
    "x^-1*y^-1",
    "--x",
    "x - -y",
    "x*-y",
    "3/4*x + 1/2",
    "q^-3*w^2*qh*t*p",
    "((x))",
    "x - (y - x)",
    "x*(y*x)",
    "(x^2)^-3",
    "2^3*y",
    "(1 + y)^-1*x",
    "x + q*y*((1 + y)*(1 + q*y))^-1*x^2",
    "theta1*theta3 - qh^5*theta2^2",
    "(y^-1 - q^-1*y)*x^-1",
];

#[test]
fn corpus_round_trips() {
    let mut corpus: Vec<&str> = Vec::new();
    for ctx in [Context::Xy, Context::Fg] {
        for name in catalog::element_names(ctx) {
            corpus.push(catalog::definition(ctx, name).unwrap());
        }
    }
    corpus.extend(EXTRA);
    assert!(corpus.len() >= 50, "corpus has {} expressions", corpus.len());
    for src in corpus {
        let ast = parse(src).unwrap_or_else(|e| panic!("`{src}`: {e}"));
        let rendered = ast.to_string();
        assert_eq!(parse(&rendered).unwrap(), ast, "`{src}` rendered as `{rendered}`");
        assert_eq!(parse(&rendered).unwrap().to_string(), rendered);
    }
}

#[test]
fn division_by_zero_is_an_error() {
    assert!(matches!(parse("1/0"), Err(Error::Parse { .. })));
    let e = eval_str("(x - x)^-1", Context::Xy, 4).unwrap_err();
    assert!(matches!(e, Error::At { .. }), "{e}");
    assert!(e.to_string().contains("division by zero"), "{e}");
}
