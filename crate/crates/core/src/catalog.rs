//! Named elements of the xy-ring and the fg-ring, and the named morphisms.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::morphism::{ElementaryKind, Morphism, MorphismKind, Sl2Matrix};
use crate::rational_y::{b_elem, konst, lambda, y_pow, RationalY};
use crate::scalar::{self, int, omega_pow, qh_pow, ScalarK};
use crate::skew_laurent::{SkewLaurentPoly, VarPair, FG, XY};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Context {
    #[serde(rename = "xy")]
    Xy,
    #[serde(rename = "fg")]
    Fg,
}

impl Context {
    pub fn vars(self) -> VarPair {
        match self {
            Context::Xy => XY,
            Context::Fg => FG,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "xy" | "xy-ring" => Ok(Context::Xy),
            "fg" | "fg-ring" => Ok(Context::Fg),
            other => Err(Error::Unknown { kind: "context", name: other.to_string(), known: "xy, fg".into() }),
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Context::Xy => "xy",
            Context::Fg => "fg",
        })
    }
}

#[derive(Clone, Debug)]
pub struct NamedElement {
    pub name: &'static str,
    pub value: Element,
    pub context: Context,
    pub source: &'static str,
}

/// `(name, where it is defined)` for every xy-ring element.
pub const XY_ELEMENTS: &[(&str, &str)] = &[
    ("Lambda", "y^-1 - q^-1*y"),
    ("a", "x - Lambda*x^-1"),
    ("b", "y + y^-1"),
    ("c", "x*y + Lambda*x^-1*y^-1"),
    ("h", "b^-1*a"),
    ("g", "b^-1*c"),
    ("f", "1 - g*h"),
    ("mu", "-b^2"),
    ("a3", "x + w*y + w^2*qh*y^-1*x^-1"),
    ("b3", "x^-1 + w*y^-1 + w^2*qh*y*x"),
    ("c3", "y^-1*x + w*qh^3*y^2*x + w^2*qh^3*y^-1*x^-2"),
    ("theta1", "x + y + qh*y^-1*x^-1"),
    ("theta2", "x^-1 + y^-1 + qh*y*x"),
    ("theta3", "y^-1*x + qh^3*y^2*x + qh^3*y^-1*x^-2"),
    ("g3", "a3^-1*b3"),
    ("f3", "theta2 - w^2*theta1*g3 + (w^2 - w)*qh^-1*(w^2*g3^2 + qh^2*g3^-1)"),
    ("u", "(x - x^-1)*(y^-1 - y)^-1"),
    ("v", "(x*y - x^-1*y^-1)*(y^-1 - y)^-1"),
    ("u1", "-p^-1*qh^-1*u"),
    ("v1", "p*v"),
    ("R00", "1"),
    ("R10", "x + y + qh*y^-1*x^-1"),
    ("R11", "x^-1 + y^-1 + qh*y*x"),
    ("R12", "y^-1*x + qh^3*y^2*x + qh^3*y^-1*x^-2"),
    ("R13", "y^-1*x^2 + qh^5*y^3*x + qh^8*y^-2*x^-3"),
    ("R20", "x^2 + y^2 + qh^4*y^-2*x^-2"),
    ("R30", "x^3 + y^3 + qh^9*y^-3*x^-3"),
];

/// `(name, definition)` for every fg-ring element; `f`, `g` are the generators.
pub const FG_ELEMENTS: &[(&str, &str)] = &[
    ("h", "g^-1*(1 - f)"),
    ("ymyinv", "(h*g - 1)^-1*(q*g^2 - h^2)"),
    ("xplus", "-ymyinv*h + 2*q^-1*g"),
    ("xyminus", "2*q*h + ymyinv*g"),
    ("bsq", "ymyinv^2 + 4"),
    ("ab", "2*xyminus - xplus*ymyinv"),
    ("cb", "xyminus*ymyinv + 2*xplus"),
    ("mu", "-bsq"),
];

fn source_of(name: &str) -> &'static str {
    match name {
        "Lambda" | "a" | "b" | "c" | "h" | "g" => "abc definitions",
        "f" => "change of variables f = 1 - gh",
        "mu" => "mu = -b^2",
        "a3" | "b3" | "c3" | "theta1" | "theta2" | "theta3" => "order-3 building blocks",
        "g3" | "f3" => "order-3 generators",
        "u" | "v" => "order-2 generators",
        "u1" | "v1" => "order-6 change of variables",
        n if n.starts_with('R') => "Baudry generators",
        _ => "fg-ring building blocks",
    }
}

fn x() -> SkewLaurentPoly {
    SkewLaurentPoly::x(XY)
}

fn xinv() -> SkewLaurentPoly {
    SkewLaurentPoly::term(XY, RationalY::one(), -1)
}

fn coeff(f: RationalY) -> SkewLaurentPoly {
    SkewLaurentPoly::coefficient(XY, f)
}

/// `c·y^i·x^j`.
fn yx(c: ScalarK, i: i32, j: i32) -> SkewLaurentPoly {
    SkewLaurentPoly::term(XY, y_pow(i).scale(&c), j)
}

fn sum(parts: &[SkewLaurentPoly]) -> SkewLaurentPoly {
    parts.iter().fold(SkewLaurentPoly::zero(parts[0].vars()), |acc, p| acc.add(p).unwrap())
}

fn mul(a: &SkewLaurentPoly, b: &SkewLaurentPoly) -> SkewLaurentPoly {
    a.mul(b).unwrap()
}

/// `a = x - Λx⁻¹`.
pub fn xy_a() -> SkewLaurentPoly {
    x().sub(&coeff(lambda()).mul(&xinv()).unwrap()).unwrap()
}

/// `c = xy + Λx⁻¹y⁻¹`.
pub fn xy_c() -> SkewLaurentPoly {
    let y = SkewLaurentPoly::y(XY);
    let yi = coeff(y_pow(-1));
    mul(&x(), &y).add(&mul(&mul(&coeff(lambda()), &xinv()), &yi)).unwrap()
}

pub fn xy_h() -> SkewLaurentPoly {
    xy_a().left_mul_coeff(&b_elem().inverse().unwrap())
}

pub fn xy_g() -> SkewLaurentPoly {
    xy_c().left_mul_coeff(&b_elem().inverse().unwrap())
}

pub fn xy_f() -> SkewLaurentPoly {
    SkewLaurentPoly::one(XY).sub(&mul(&xy_g(), &xy_h())).unwrap()
}

fn order3(c1: ScalarK, c2: ScalarK, c3: ScalarK, t1: (i32, i32), t2: (i32, i32), t3: (i32, i32)) -> SkewLaurentPoly {
    sum(&[yx(c1, t1.0, t1.1), yx(c2, t2.0, t2.1), yx(c3, t3.0, t3.1)])
}

/// `y^i·x^j` terms are written `y` first, so they are already normalized.
pub fn theta(i: u8) -> SkewLaurentPoly {
    match i {
        1 => order3(int(1), int(1), qh_pow(1), (0, 1), (1, 0), (-1, -1)),
        2 => order3(int(1), int(1), qh_pow(1), (0, -1), (-1, 0), (1, 1)),
        _ => order3(int(1), qh_pow(3), qh_pow(3), (-1, 1), (2, 1), (-1, -2)),
    }
}

fn order3_twisted(i: u8) -> SkewLaurentPoly {
    let w = omega_pow(1);
    let w2 = omega_pow(2);
    match i {
        1 => order3(int(1), w, w2.times(&qh_pow(1)), (0, 1), (1, 0), (-1, -1)),
        2 => order3(int(1), w, w2.times(&qh_pow(1)), (0, -1), (-1, 0), (1, 1)),
        _ => order3(int(1), w.times(&qh_pow(3)), w2.times(&qh_pow(3)), (-1, 1), (2, 1), (-1, -2)),
    }
}

pub fn baudry(name: &str) -> SkewLaurentPoly {
    match name {
        "R00" => SkewLaurentPoly::one(XY),
        "R10" => theta(1),
        "R11" => theta(2),
        "R12" => theta(3),
        "R13" => order3(int(1), qh_pow(5), qh_pow(8), (-1, 2), (3, 1), (-2, -3)),
        "R20" => order3(int(1), int(1), qh_pow(4), (0, 2), (2, 0), (-2, -2)),
        _ => order3(int(1), int(1), qh_pow(9), (0, 3), (3, 0), (-3, -3)),
    }
}

/// `(p)·(y⁻¹ - y)⁻¹` with the coefficient on the right.
fn right_div_y(p: &SkewLaurentPoly) -> SkewLaurentPoly {
    let d = y_pow(-1).minus(&y_pow(1)).inverse().unwrap();
    mul(p, &coeff(d))
}

pub fn xy_u() -> SkewLaurentPoly {
    right_div_y(&x().sub(&xinv()).unwrap())
}

pub fn xy_v() -> SkewLaurentPoly {
    let y = SkewLaurentPoly::y(XY);
    let yi = coeff(y_pow(-1));
    right_div_y(&mul(&x(), &y).sub(&mul(&xinv(), &yi)).unwrap())
}

/// fg-ring building blocks, all exact.
pub fn fg_element(name: &str) -> Option<SkewLaurentPoly> {
    let f = SkewLaurentPoly::x(FG);
    let g = SkewLaurentPoly::y(FG);
    let gi = SkewLaurentPoly::coefficient(FG, y_pow(-1));
    let one = SkewLaurentPoly::one(FG);
    let k = |c: ScalarK| SkewLaurentPoly::scalar(FG, c);
    let h = gi.mul(&one.sub(&f).unwrap()).unwrap();
    if name == "h" {
        return Some(h);
    }
    // hg - 1 = -q·f is a unit.
    let hg1 = h.mul(&g).unwrap().sub(&one).unwrap();
    let num = g.mul(&g).unwrap().scale(&scalar::q_pow(1)).sub(&h.mul(&h).unwrap()).unwrap();
    let ymyinv = hg1.invert_unit().unwrap().mul(&num).unwrap();
    if name == "ymyinv" {
        return Some(ymyinv);
    }
    let xplus = ymyinv.mul(&h).unwrap().neg().add(&g.scale(&scalar::rational(2, 1).times(&scalar::q_pow(-1)))).unwrap();
    let xyminus = h.scale(&int(2).times(&scalar::q_pow(1))).add(&ymyinv.mul(&g).unwrap()).unwrap();
    let bsq = ymyinv.mul(&ymyinv).unwrap().add(&k(int(4))).unwrap();
    Some(match name {
        "xplus" => xplus,
        "xyminus" => xyminus,
        "bsq" => bsq,
        "ab" => xyminus.scale(&int(2)).sub(&xplus.mul(&ymyinv).unwrap()).unwrap(),
        "cb" => xyminus.mul(&ymyinv).unwrap().add(&xplus.scale(&int(2))).unwrap(),
        "mu" => bsq.neg(),
        _ => return None,
    })
}

type Cache = Mutex<HashMap<(&'static str, i32), Element>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(name: &'static str, window: i32, build: impl FnOnce() -> Result<Element>) -> Result<Element> {
    if let Some(e) = cache().lock().unwrap().get(&(name, window)) {
        return Ok(e.clone());
    }
    let e = build()?;
    cache().lock().unwrap().insert((name, window), e.clone());
    Ok(e)
}

/// `g = a⁻¹b` for the order-3 `a`, `b`, as a series of valuation 0.
pub fn order3_g(window: i32) -> Result<Element> {
    cached("g3", window, || {
        let a = Element::Exact(order3_twisted(1));
        let b = Element::Exact(order3_twisted(2));
        a.inverse(window + 2)?.mul(&b)
    })
}

/// `f = θ₂ - ω²θ₁g + (ω² - ω)q̂⁻¹(ω²g² + q̂²g⁻¹)`.
pub fn order3_f(window: i32) -> Result<Element> {
    cached("f3", window, || {
        let g = order3_g(window + 2)?;
        let ginv = g.inverse(window + 2)?;
        let w2 = omega_pow(2);
        let w2mw = w2.minus(&omega_pow(1));
        let t1g = Element::Exact(theta(1).scale(&w2)).mul(&g)?;
        let inner = g.mul(&g)?.scale(&w2).add(&ginv.scale(&qh_pow(2)))?;
        Element::Exact(theta(2)).sub(&t1g)?.add(&inner.scale(&w2mw.times(&qh_pow(-1))))
    })
}

/// Names available in a context, in registry order.
pub fn element_names(ctx: Context) -> Vec<&'static str> {
    match ctx {
        Context::Xy => XY_ELEMENTS.iter().map(|(n, _)| *n).collect(),
        Context::Fg => FG_ELEMENTS.iter().map(|(n, _)| *n).collect(),
    }
}

/// Textual definition of a named element.
pub fn definition(ctx: Context, name: &str) -> Option<&'static str> {
    let table = match ctx {
        Context::Xy => XY_ELEMENTS,
        Context::Fg => FG_ELEMENTS,
    };
    table.iter().find(|(n, _)| *n == name).map(|(_, d)| *d)
}

/// Look up a named element; series-valued ones carry `window` coefficients.
pub fn get_element(name: &str, ctx: Context, window: i32) -> Result<NamedElement> {
    let unknown = || Error::Unknown { kind: "element", name: name.to_string(), known: element_names(ctx).join(", ") };
    let table = match ctx {
        Context::Xy => XY_ELEMENTS,
        Context::Fg => FG_ELEMENTS,
    };
    let key = table.iter().find(|(n, _)| *n == name).map(|(n, _)| *n).ok_or_else(unknown)?;
    let value = match ctx {
        Context::Fg => Element::Exact(fg_element(key).ok_or_else(unknown)?),
        Context::Xy => match key {
            "Lambda" => coeff(lambda()).into(),
            "a" => xy_a().into(),
            "b" => coeff(b_elem()).into(),
            "c" => xy_c().into(),
            "h" => xy_h().into(),
            "g" => xy_g().into(),
            "f" => xy_f().into(),
            "mu" => coeff(b_elem().times(&b_elem()).negated()).into(),
            "a3" => order3_twisted(1).into(),
            "b3" => order3_twisted(2).into(),
            "c3" => order3_twisted(3).into(),
            "theta1" => theta(1).into(),
            "theta2" => theta(2).into(),
            "theta3" => theta(3).into(),
            "g3" => order3_g(window)?,
            "f3" => order3_f(window)?,
            "u" => xy_u().into(),
            "v" => xy_v().into(),
            "u1" => xy_u().scale(&scalar::p_pow(-1).times(&qh_pow(-1)).negated()).into(),
            "v1" => xy_v().scale(&scalar::p_pow(1)).into(),
            r => baudry(r).into(),
        },
    };
    Ok(NamedElement { name: key, value, context: ctx, source: source_of(key) })
}

/// Names of the registered morphisms, in registry order.
pub const MORPHISMS: &[&str] = &["identity", "tau", "sigma", "rho", "eta", "phi", "h1", "h2", "h3", "psi", "gamma"];

/// `φ: x ↦ Λx⁻¹, y ↦ -y⁻¹`.
pub fn phi() -> Morphism {
    Morphism::new(
        "phi",
        MorphismKind::General,
        XY,
        SkewLaurentPoly::term(XY, lambda(), -1).into(),
        coeff(y_pow(-1).negated()).into(),
    )
    .unwrap()
}

fn one_plus_y() -> RationalY {
    y_pow(1).plus(&konst(int(1)))
}

pub fn h1() -> Morphism {
    Morphism::elementary(ElementaryKind::HX(one_plus_y()), XY, 1).unwrap().with_name("h1")
}

pub fn h2() -> Morphism {
    Morphism::elementary(ElementaryKind::HY(one_plus_y()), XY, 1).unwrap().with_name("h2")
}

pub fn h3() -> Morphism {
    Morphism::elementary(ElementaryKind::HX(one_plus_y().inverse().unwrap()), XY, 1).unwrap().with_name("h3")
}

/// `ψ = h₃∘h₂∘h₁`; all three are exact so the composite is exact.
pub fn psi() -> Result<Morphism> {
    let inner = h2().compose(&h1(), 1)?;
    Ok(h3().compose(&inner, 1)?.with_name("psi"))
}

/// `w = (1+y)⁻¹x`, fixed by `ψ`.
pub fn psi_fixed() -> SkewLaurentPoly {
    SkewLaurentPoly::term(XY, one_plus_y().inverse().unwrap(), 1)
}

/// `ψⁿ(y) = y·(1 + q·w)ⁿ`, exact.
pub fn psi_power_y(n: u32) -> SkewLaurentPoly {
    let step = SkewLaurentPoly::one(XY).add(&psi_fixed().scale(&scalar::q_pow(1))).unwrap();
    (0..n).fold(SkewLaurentPoly::y(XY), |acc, _| mul(&acc, &step))
}

/// `ψⁿ` with exact images: `ψⁿ(x) = (1 + ψⁿ(y))·w` because `x = (1 + y)·w` and `w` is fixed.
pub fn psi_power(n: u32) -> Result<Morphism> {
    let py = psi_power_y(n);
    let px = SkewLaurentPoly::one(XY).add(&py)?.mul(&psi_fixed())?;
    Morphism::new(&format!("psi^{n}"), MorphismKind::General, XY, px.into(), py.into())
}

/// `γ(r) = b·r·b⁻¹` on the fg-ring: `γ(g) = (cb)(b²)⁻¹`, `γ(h) = (ab)(b²)⁻¹`, `γ(f) = 1 - γ(g)γ(h)`.
pub fn gamma_images(window: i32) -> Result<(Element, Element)> {
    let inv = cached("bsq_inv", window, || Element::Exact(fg_element("bsq").unwrap()).inverse(window + 4))?;
    let gg = cached("gamma_g", window, || Element::Exact(fg_element("cb").unwrap()).mul(&inv))?;
    let gf = cached("gamma_f", window, || {
        let gh = Element::Exact(fg_element("ab").unwrap()).mul(&inv)?;
        Element::Exact(SkewLaurentPoly::one(FG)).sub(&gg.mul(&gh)?)
    })?;
    Ok((gf, gg))
}

pub fn gamma(window: i32) -> Result<Morphism> {
    let (gf, gg) = gamma_images(window)?;
    Morphism::new("gamma", MorphismKind::General, FG, gf, gg)
}

/// Look up a registered morphism; `window` bounds any series images.
pub fn morphism(name: &str, window: i32) -> Result<Morphism> {
    let m = match name {
        "identity" => Morphism::from_matrix(Sl2Matrix::IDENTITY, XY)?.with_name("identity"),
        "tau" => Morphism::from_matrix(Sl2Matrix::TAU, XY)?.with_name("tau"),
        "sigma" => Morphism::from_matrix(Sl2Matrix::SIGMA, XY)?.with_name("sigma"),
        "rho" => Morphism::from_matrix(Sl2Matrix::RHO, XY)?.with_name("rho"),
        "eta" => Morphism::from_matrix(Sl2Matrix::ETA, XY)?.with_name("eta"),
        "phi" => phi(),
        "h1" => h1(),
        "h2" => h2(),
        "h3" => h3(),
        "psi" => psi()?,
        "gamma" => gamma(window)?,
        other => return Err(Error::Unknown { kind: "morphism", name: other.to_string(), known: MORPHISMS.join(", ") }),
    };
    Ok(m)
}

/// The fg-ring inside the xy-ring: `f ↦ 1 - gh`, `g ↦ b⁻¹c`.
pub fn fg_embedding() -> Morphism {
    Morphism::new_unchecked("embed", MorphismKind::General, FG, xy_f().into(), xy_g().into())
}

/// Write an fg-ring Laurent polynomial as `g^-j·q·f^-k` with `q` a polynomial in `f` and `g`.
pub fn clear_fg_denominators(p: &SkewLaurentPoly) -> Result<(i32, SkewLaurentPoly, i32)> {
    if p.is_zero() {
        return Ok((0, p.clone(), 0));
    }
    let k = (-p.valuation()?).max(0);
    let mut j = 0;
    for (i, c) in p.terms() {
        let terms = c
            .laurent_terms()
            .ok_or_else(|| Error::Unsupported(format!("coefficient of f^{i} is not a Laurent polynomial in g")))?;
        j = terms.iter().fold(j, |j, (e, _)| j.max(-e));
    }
    let gj = SkewLaurentPoly::coefficient(FG, y_pow(j));
    let fk = SkewLaurentPoly::term(FG, RationalY::one(), k);
    Ok((j, gj.mul(p)?.mul(&fk)?, k))
}

/// Compare `embed(p)` with `target` without series: with `p = g^-j·q·f^-k`,
/// compare `embed(q)` with `embed(g)^j·target·embed(f)^k`.
pub fn embed_compare(p: &SkewLaurentPoly, target: &SkewLaurentPoly) -> Result<crate::element::Comparison> {
    let (j, q, k) = clear_fg_denominators(p)?;
    let lhs = fg_embedding().apply(&q.into(), 1)?;
    let rhs = xy_g().pow(j)?.mul(target)?.mul(&xy_f().pow(k)?)?;
    lhs.compare(&rhs.into())
}

/// The order-3 pair `(f, g)` as a map from the fg-ring into the xy-ring.
pub fn order3_embedding(window: i32) -> Result<Morphism> {
    Ok(Morphism::new_unchecked("embed3", MorphismKind::General, FG, order3_f(window)?, order3_g(window)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Comparison;

    #[test]
    fn abc_elements() {
        let lam = get_element("Lambda", Context::Xy, 4).unwrap();
        assert_eq!(lam.value, Element::Exact(coeff(y_pow(-1).minus(&y_pow(1).scale(&scalar::q_pow(-1))))));
        let f = xy_f();
        let g = xy_g();
        let fg = f.mul(&g).unwrap();
        let qgf = g.mul(&f).unwrap().scale(&scalar::q_pow(1));
        assert_eq!(fg, qgf);
    }

    #[test]
    fn psi_images_match_example() {
        let p = psi().unwrap();
        let one_plus_qy = y_pow(1).scale(&scalar::q_pow(1)).plus(&konst(int(1)));
        let c2 = y_pow(1).scale(&scalar::q_pow(1)).times(&one_plus_y().times(&one_plus_qy).inverse().unwrap());
        let px = SkewLaurentPoly::from_terms(XY, [(1, RationalY::one()), (2, c2)]);
        assert_eq!(p.image_x(), &Element::Exact(px));
        let c1 = y_pow(1).scale(&scalar::q_pow(1)).times(&one_plus_y().inverse().unwrap());
        let py = SkewLaurentPoly::from_terms(XY, [(0, y_pow(1)), (1, c1)]);
        assert_eq!(p.image_y(), &Element::Exact(py));
        assert_eq!(psi_power(1).unwrap().image_y(), p.image_y());
        assert_eq!(psi_power(1).unwrap().image_x(), p.image_x());
    }

    #[test]
    fn order3_g_leading_term() {
        let g = order3_g(6).unwrap();
        assert_eq!(g.valuation(), Some(0));
        let Element::Series(s) = &g else { panic!() };
        assert_eq!(s.leading_coeff().unwrap(), &y_pow(1).scale(&omega_pow(1).times(&qh_pow(1))));
    }

    #[test]
    fn embedding_is_q_commuting() {
        let e = fg_embedding();
        let r = e.check_q_commutation().unwrap();
        assert_eq!(r, Comparison::ExactEqual);
    }
}
