//! Strategies and property checks shared by the property tests and the acceptance run.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use qdr_core::catalog;
use qdr_core::conjugation::{build_z, detect_standard_form, Recursion};
use qdr_core::element::{Comparison, Element};
use qdr_core::expr::{parse, Ast, AstKind, Literal, VARIABLES};
use qdr_core::field::Field;
use qdr_core::identities::z_oracle;
use qdr_core::morphism::{alpha, ElementaryKind, Morphism, Sl2Matrix};
use qdr_core::rational_y::RationalY;
use qdr_core::scalar::{int, omega, q_pow, qh_pow, ScalarK};
use qdr_core::skew_laurent::{SkewLaurentPoly, XY};
use qdr_core::skew_series::SeriesCmp;

pub const CASES: u32 = 100;

pub fn config() -> Config {
    Config { cases: CASES, failure_persistence: None, ..Config::default() }
}

/// `a·q^e + b·ω·q̂^f`, occasionally divided by `1 + q`.
pub fn scalar() -> impl Strategy<Value = ScalarK> {
    (-3i64..=3, -2i32..=2, -2i64..=2, -2i32..=2, prop::bool::weighted(0.15)).prop_map(|(a, e, b, f, div)| {
        let s = int(a).times(&q_pow(e)).plus(&int(b).times(&omega()).times(&qh_pow(f)));
        if div {
            s.times(&int(1).plus(&q_pow(1)).inverse().unwrap())
        } else {
            s
        }
    })
}

pub fn nonzero_scalar() -> impl Strategy<Value = ScalarK> {
    scalar().prop_filter("nonzero", |s| !s.is_zero())
}

/// One or two terms in `y`, sometimes over `1 + c·y`.
pub fn rational_y() -> impl Strategy<Value = RationalY> {
    (prop::collection::vec((-2i32..=2, scalar()), 1..=2), prop::option::weighted(0.2, nonzero_scalar())).prop_map(
        |(terms, den)| {
            let num = RationalY::from_terms(&terms);
            match den {
                Some(c) => num.times(&RationalY::from_terms(&[(0, int(1)), (1, c)]).inverse().unwrap()),
                None => num,
            }
        },
    )
}

pub fn nonzero_rational_y() -> impl Strategy<Value = RationalY> {
    rational_y().prop_filter("nonzero", |f| !f.is_zero())
}

pub fn poly() -> impl Strategy<Value = SkewLaurentPoly> {
    prop::collection::vec((-2i32..=2, rational_y()), 0..=3).prop_map(|terms| SkewLaurentPoly::from_terms(XY, terms))
}

/// Laurent coefficients only, so series expansions stay small.
pub fn laurent_y() -> impl Strategy<Value = RationalY> {
    prop::collection::vec((-2i32..=2, scalar()), 1..=2).prop_map(|terms| RationalY::from_terms(&terms))
}

pub fn laurent_poly() -> impl Strategy<Value = SkewLaurentPoly> {
    prop::collection::vec((-1i32..=1, laurent_y()), 0..=2).prop_map(|terms| SkewLaurentPoly::from_terms(XY, terms))
}

pub fn nonzero_laurent_poly() -> impl Strategy<Value = SkewLaurentPoly> {
    laurent_poly().prop_filter("nonzero", |p| !p.is_zero())
}

pub fn nonzero_poly() -> impl Strategy<Value = SkewLaurentPoly> {
    prop::collection::vec((-2i32..=2, nonzero_rational_y()), 1..=3)
        .prop_map(|terms| SkewLaurentPoly::from_terms(XY, terms))
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

fn ok<T>(r: qdr_core::error::Result<T>) -> Result<T, TestCaseError> {
    r.map_err(|e| fail(e.to_string()))
}

pub fn ring_axioms((a, b, c): (SkewLaurentPoly, SkewLaurentPoly, SkewLaurentPoly)) -> Result<(), TestCaseError> {
    let m = |u: &SkewLaurentPoly, v: &SkewLaurentPoly| ok(u.mul(v));
    let s = |u: &SkewLaurentPoly, v: &SkewLaurentPoly| ok(u.add(v));
    prop_assert_eq!(m(&m(&a, &b)?, &c)?, m(&a, &m(&b, &c)?)?, "associativity");
    prop_assert_eq!(m(&a, &s(&b, &c)?)?, s(&m(&a, &b)?, &m(&a, &c)?)?, "left distributivity");
    prop_assert_eq!(m(&s(&a, &b)?, &c)?, s(&m(&a, &c)?, &m(&b, &c)?)?, "right distributivity");
    prop_assert_eq!(s(&a, &b)?, s(&b, &a)?);
    prop_assert_eq!(m(&a, &SkewLaurentPoly::one(XY))?, a.clone());
    prop_assert_eq!(m(&SkewLaurentPoly::one(XY), &a)?, a.clone());
    prop_assert!(ok(a.sub(&a))?.is_zero());
    Ok(())
}

/// `α^j` is a ring map on coefficients and realizes `x^j·f = α^j(f)·x^j`.
pub fn alpha_homomorphism((f, g, j): (RationalY, RationalY, i32)) -> Result<(), TestCaseError> {
    prop_assert_eq!(alpha(&f.times(&g), j), alpha(&f, j).times(&alpha(&g, j)));
    prop_assert_eq!(alpha(&f.plus(&g), j), alpha(&f, j).plus(&alpha(&g, j)));
    prop_assert_eq!(alpha(&alpha(&f, j), -j), f.clone());
    let xj = SkewLaurentPoly::term(XY, RationalY::one(), j);
    let lhs = ok(xj.mul(&SkewLaurentPoly::coefficient(XY, f.clone())))?;
    prop_assert_eq!(lhs, SkewLaurentPoly::term(XY, alpha(&f, j), j));
    Ok(())
}

fn agree(a: &Element, b: &Element) -> Result<i32, TestCaseError> {
    match ok(a.compare(b))? {
        Comparison::Differ(k, d) => Err(fail(format!("differ at {k}: {d:?}"))),
        Comparison::EqualTo(p) => Ok(p),
        Comparison::ExactEqual => Ok(i32::MAX),
    }
}

/// Raising the window never changes coefficients that were already known.
pub fn precision_soundness((a, b, w): (SkewLaurentPoly, SkewLaurentPoly, i32)) -> Result<(), TestCaseError> {
    let (a, b) = (Element::Exact(a), Element::Exact(b));
    let lo = ok(a.inverse(w))?;
    let hi = ok(a.inverse(w + 4))?;
    let reached = agree(&lo, &hi)?;
    prop_assert!(reached >= lo.precision().unwrap_or(i32::MAX).min(hi.precision().unwrap_or(i32::MAX)));
    let one = Element::scalar(XY, int(1));
    agree(&ok(a.mul(&lo))?, &one)?;
    agree(&ok(lo.mul(&a))?, &one)?;
    let plo = ok(lo.mul(&b))?;
    let phi = ok(hi.mul(&b))?;
    agree(&plo, &phi)?;
    if let (Element::Series(s), Element::Series(t)) = (&lo, &hi) {
        prop_assert!(matches!(ok(s.equal_to_precision(&t.truncate(s.precision())))?, SeriesCmp::Equal(_)));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub enum Step {
    Matrix(Sl2Matrix),
    HX(RationalY),
    /// `y -> (c0 + c1·x)·y`.
    HY(ScalarK, ScalarK),
}

fn matrix_word() -> impl Strategy<Value = Sl2Matrix> {
    prop::collection::vec(
        prop::sample::select(vec![Sl2Matrix::RHO, Sl2Matrix::SIGMA, Sl2Matrix::ETA, Sl2Matrix::TAU]),
        1..=4,
    )
    .prop_map(|w| w.iter().fold(Sl2Matrix::IDENTITY, |acc, m| acc.mul(m)))
}

pub fn step() -> impl Strategy<Value = Step> {
    prop_oneof![
        matrix_word().prop_map(Step::Matrix),
        (-2i32..=2, nonzero_scalar()).prop_map(|(k, c)| Step::HX(RationalY::from_terms(&[(k, c)]))),
        (nonzero_scalar(), scalar()).prop_map(|(a, b)| Step::HY(a, b)),
    ]
}

const WINDOW: i32 = 6;

pub fn build(step: &Step) -> qdr_core::error::Result<Morphism> {
    match step {
        Step::Matrix(m) => Morphism::from_matrix(*m, XY),
        Step::HX(b) => Morphism::elementary(ElementaryKind::HX(b.clone()), XY, WINDOW),
        Step::HY(c0, c1) => Morphism::elementary(
            ElementaryKind::HY(RationalY::from_terms(&[(0, c0.clone()), (1, c1.clone())])),
            XY,
            WINDOW,
        ),
    }
}

/// Every composite of elementary and monomial automorphisms has q-commuting images.
pub fn q_commutation(steps: Vec<Step>) -> Result<(), TestCaseError> {
    let mut m = ok(build(&steps[0]))?;
    for s in &steps[1..] {
        m = match build(s)?.compose(&m, WINDOW) {
            Ok(m) => m,
            // Truncated series cannot be pushed through maps that do not preserve the x-adic filtration.
            Err(qdr_core::Error::Apply(_)) => {
                return Err(TestCaseError::reject("series image outside the domain of the next step"))
            }
            Err(e) => return Err(fail(e.to_string())),
        };
    }
    let c = ok(m.check_q_commutation())?;
    prop_assert!(!matches!(c, Comparison::Differ(..)));
    Ok(())
}

/// `(F, G) = (b(y)·x, a(b(y)·x)·y)`, the images of `h_X(b)∘h_Y(a)`, built twice and checked
/// against the coefficient-matching oracle.
pub fn z_determinism((b, c0, c1, c2): (RationalY, ScalarK, ScalarK, ScalarK)) -> Result<(), TestCaseError> {
    let hy =
        ok(Morphism::elementary(ElementaryKind::HY(RationalY::from_terms(&[(0, c0), (1, c1), (2, c2)])), XY, WINDOW))?;
    let hx = ok(Morphism::elementary(ElementaryKind::HX(b), XY, WINDOW))?;
    let m = ok(hx.compose(&hy, WINDOW))?;
    let n = 4;
    let sf = ok(detect_standard_form(m.image_x(), m.image_y(), 8))?;
    let z1 = ok(build_z(&sf, n, Recursion::Corrected))?;
    let sf2 = ok(detect_standard_form(m.image_x(), m.image_y(), 8))?;
    let z2 = ok(build_z(&sf2, n, Recursion::Corrected))?;
    prop_assert_eq!(&z1.coefficients, &z2.coefficients);
    prop_assert_eq!(&z1.coefficients, &ok(z_oracle(&sf, n))?);
    Ok(())
}

/// `monomial(m1)∘monomial(m2) = monomial(m1·m2)` exactly.
pub fn sl2_cocycle((m1, m2): (Sl2Matrix, Sl2Matrix)) -> Result<(), TestCaseError> {
    let a = ok(Morphism::from_matrix(m1, XY))?;
    let b = ok(Morphism::from_matrix(m2, XY))?;
    let composed = ok(a.compose(&b, WINDOW))?;
    let direct = ok(Morphism::from_matrix(m1.mul(&m2), XY))?;
    prop_assert!(matches!(ok(composed.image_x().compare(direct.image_x()))?, Comparison::ExactEqual));
    prop_assert!(matches!(ok(composed.image_y().compare(direct.image_y()))?, Comparison::ExactEqual));
    Ok(())
}

pub fn sl2_pair() -> impl Strategy<Value = (Sl2Matrix, Sl2Matrix)> {
    (matrix_word(), matrix_word())
}

fn names() -> Vec<&'static str> {
    let mut n = catalog::element_names(catalog::Context::Xy);
    n.extend(catalog::element_names(catalog::Context::Fg));
    n.retain(|s| !VARIABLES.contains(s));
    n
}

/// ASTs the parser can produce: no negative literals.
pub fn ast() -> impl Strategy<Value = Ast> {
    let node = |kind| Ast { kind, pos: 0 };
    let leaf = prop_oneof![
        (0i64..50).prop_map(move |n| node(AstKind::Const(Literal::Int(n)))),
        (0i64..20, 1i64..9).prop_map(move |(n, d)| node(AstKind::Const(Literal::Rational(n, d)))),
        prop::sample::select(vec!["q", "qh", "w", "t", "p"])
            .prop_map(move |s| node(AstKind::Const(Literal::Symbol(s.into())))),
        prop::sample::select(vec!["x", "y"]).prop_map(move |s| node(AstKind::Var(s.into()))),
        prop::sample::select(names()).prop_map(move |s| node(AstKind::Named(s.into()))),
    ];
    leaf.prop_recursive(4, 24, 2, move |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(move |(a, b)| node(AstKind::Add(Box::new(a), Box::new(b)))),
            (inner.clone(), inner.clone()).prop_map(move |(a, b)| node(AstKind::Sub(Box::new(a), Box::new(b)))),
            (inner.clone(), inner.clone()).prop_map(move |(a, b)| node(AstKind::Mul(Box::new(a), Box::new(b)))),
            (inner.clone(), -3i32..=3).prop_map(move |(a, e)| node(AstKind::Pow(Box::new(a), e))),
            inner.prop_map(move |a| node(AstKind::Neg(Box::new(a)))),
        ]
    })
}

pub fn parser_round_trip(a: Ast) -> Result<(), TestCaseError> {
    let text = a.to_string();
    let back = parse(&text).map_err(|e| fail(format!("`{text}`: {e}")))?;
    prop_assert_eq!(back, a, "{}", text);
    Ok(())
}

/// Run one property for [`CASES`] cases; `Err` carries the minimal failing input.
pub fn run<S: Strategy>(strategy: S, check: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    TestRunner::new(config()).run(&strategy, check).map_err(|e| e.to_string())
}
