//! Endomorphisms given by the images of the two generators.

use std::collections::HashMap;
use std::fmt;

use crate::element::{Comparison, Element};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::rational_y::{alpha_power, substitute_unit_monomial, y_pow, RationalY};
use crate::scalar::{self, ScalarK};
use crate::skew_laurent::{fraction_degree, SkewLaurentPoly, VarPair};
use crate::skew_series::SkewSeries;

/// Integer matrix `(a b; c d)` of determinant 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Sl2Matrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MonomialOrder {
    Finite(u32),
    Infinite,
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Finite(n) => write!(f, "{n}"),
            MonomialOrder::Infinite => f.write_str("infinite"),
        }
    }
}

impl Sl2Matrix {
    pub const IDENTITY: Sl2Matrix = Sl2Matrix { a: 1, b: 0, c: 0, d: 1 };
    pub const TAU: Sl2Matrix = Sl2Matrix { a: -1, b: 0, c: 0, d: -1 };
    pub const SIGMA: Sl2Matrix = Sl2Matrix { a: -1, b: 1, c: -1, d: 0 };
    pub const RHO: Sl2Matrix = Sl2Matrix { a: 0, b: -1, c: 1, d: 0 };
    pub const ETA: Sl2Matrix = Sl2Matrix { a: 1, b: -1, c: 1, d: 0 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a * d - b * c;
        if det != 1 {
            return Err(Error::Determinant { a, b, c, d, det });
        }
        Ok(Sl2Matrix { a, b, c, d })
    }

    pub fn mul(&self, rhs: &Sl2Matrix) -> Sl2Matrix {
        Sl2Matrix {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }

    pub fn inverse(&self) -> Sl2Matrix {
        Sl2Matrix { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn trace(&self) -> i64 {
        self.a + self.d
    }

    /// Least `n <= 6` with `mⁿ = I`; elements with `|tr| >= 2` other than ±I have infinite order.
    pub fn order(&self) -> MonomialOrder {
        if self.trace().abs() >= 2 && *self != Self::IDENTITY && *self != Self::TAU {
            return MonomialOrder::Infinite;
        }
        let mut p = *self;
        for n in 1..=6 {
            if p == Self::IDENTITY {
                return MonomialOrder::Finite(n);
            }
            p = p.mul(self);
        }
        MonomialOrder::Infinite
    }
}

impl fmt::Display for Sl2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

pub fn monomial_order(m: &Sl2Matrix) -> MonomialOrder {
    m.order()
}

#[derive(Clone, PartialEq, Debug)]
pub enum MorphismKind {
    Monomial(Sl2Matrix),
    Elementary,
    General,
}

/// The elementary automorphisms `τ`, `h_X`, `h_Y`.
#[derive(Clone, PartialEq, Debug)]
pub enum ElementaryKind {
    Tau,
    /// `x -> b(y)·x`.
    HX(RationalY),
    /// `y -> a(x)·y`; `a` is a rational function whose variable stands for x.
    HY(RationalY),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InnerObstruction {
    InnerPossible,
    NotInner,
}

#[derive(Clone, Debug)]
pub struct Morphism {
    name: String,
    kind: MorphismKind,
    domain: VarPair,
    image_x: Element,
    image_y: Element,
}

/// Widening steps tried when a series result comes back short of the requested window.
const MAX_RAISE: i32 = 64;

/// `q̂^{ac}·y^a·x^c` as an exact element.
fn weyl_monomial(vars: VarPair, a: i64, c: i64) -> SkewLaurentPoly {
    let coeff = y_pow(a as i32).scale(&scalar::qh_pow((a * c) as i32));
    SkewLaurentPoly::term(vars, coeff, c as i32)
}

impl Morphism {
    /// Build and check that the images q-commute.
    pub fn new(name: &str, kind: MorphismKind, domain: VarPair, image_x: Element, image_y: Element) -> Result<Self> {
        let m = Morphism { name: name.to_string(), kind, domain, image_x, image_y };
        m.check_q_commutation()?;
        Ok(m)
    }

    /// Build without the q-commutation check, for maps whose commutation is itself under test.
    pub fn new_unchecked(name: &str, kind: MorphismKind, domain: VarPair, image_x: Element, image_y: Element) -> Self {
        Morphism { name: name.to_string(), kind, domain, image_x, image_y }
    }

    pub fn check_q_commutation(&self) -> Result<Comparison> {
        let xy = self.image_x.mul(&self.image_y)?;
        let qyx = self.image_y.mul(&self.image_x)?.scale(&scalar::q_pow(1));
        match xy.compare(&qyx)? {
            Comparison::Differ(k, d) => Err(Error::NotQCommuting(format!(
                "{}: image_x·image_y - q·image_y·image_x has coefficient {} at exponent {k}",
                self.name,
                crate::rational_y::render_rational(&d, self.image_x.vars().y, false)
            ))),
            ok => Ok(ok),
        }
    }

    /// Monomial automorphism: `y -> q̂^{ac}·y^a·x^c`, `x -> q̂^{bd}·y^b·x^d`.
    pub fn from_matrix(m: Sl2Matrix, vars: VarPair) -> Result<Self> {
        let m = Sl2Matrix::new(m.a, m.b, m.c, m.d)?;
        let image_y = weyl_monomial(vars, m.a, m.c);
        let image_x = weyl_monomial(vars, m.b, m.d);
        Self::new(&format!("monomial{m}"), MorphismKind::Monomial(m), vars, image_x.into(), image_y.into())
    }

    /// Elementary automorphism; `window` bounds the expansion of a rational `a(x)` in `h_Y`.
    pub fn elementary(kind: ElementaryKind, vars: VarPair, window: i32) -> Result<Self> {
        let x = SkewLaurentPoly::x(vars);
        let y = SkewLaurentPoly::y(vars);
        match kind {
            ElementaryKind::Tau => {
                let ix = x.invert_unit()?;
                let iy = y.invert_unit()?;
                Self::new("tau", MorphismKind::Elementary, vars, ix.into(), iy.into())
            }
            ElementaryKind::HX(b) => {
                if b.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                let ix = SkewLaurentPoly::term(vars, b, 1);
                Self::new("h_X", MorphismKind::Elementary, vars, ix.into(), y.into())
            }
            ElementaryKind::HY(a) => {
                if a.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                let ax = rational_in_x(&a, vars, window)?;
                let iy = ax.mul(&Element::Exact(y))?;
                Self::new("h_Y", MorphismKind::Elementary, vars, x.into(), iy)
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn kind(&self) -> &MorphismKind {
        &self.kind
    }

    pub fn domain(&self) -> VarPair {
        self.domain
    }

    pub fn codomain(&self) -> VarPair {
        self.image_x.vars()
    }

    pub fn image_x(&self) -> &Element {
        &self.image_x
    }

    pub fn image_y(&self) -> &Element {
        &self.image_y
    }

    /// Apply to an element. Exact input stays exact whenever the images allow
    /// it; otherwise the result is a series with at least `window`
    /// coefficients above its valuation where the inputs permit.
    pub fn apply(&self, p: &Element, window: i32) -> Result<Element> {
        if p.vars() != self.domain {
            return Err(Error::VariableMismatch { lhs: self.domain.to_string(), rhs: p.vars().to_string() });
        }
        match p {
            Element::Exact(poly) => {
                if let Some(e) = self.try_apply_exact(poly)? {
                    return Ok(Element::Exact(e));
                }
                self.apply_series_raising(&|w| self.apply_terms(poly.terms(), w, None), window)
            }
            Element::Series(s) => self.apply_series_input(s, window),
        }
    }

    fn apply_series_raising(&self, f: &dyn Fn(i32) -> Result<SkewSeries>, window: i32) -> Result<Element> {
        let mut w = window;
        loop {
            let r = f(w)?;
            let done = if r.is_zero_to_precision() {
                r.precision() >= window
            } else {
                r.precision() - r.valuation() >= window
            };
            let fixed = self.image_x.is_exact() || self.image_y.is_exact();
            if done || !fixed || w >= window + MAX_RAISE {
                return Ok(Element::Series(r));
            }
            let short = if r.is_zero_to_precision() {
                window - r.precision()
            } else {
                window - (r.precision() - r.valuation())
            };
            w += short.max(2);
        }
    }

    /// Exact application, when every coefficient can be substituted exactly
    /// and every needed power of the x-image is available.
    fn try_apply_exact(&self, p: &SkewLaurentPoly) -> Result<Option<SkewLaurentPoly>> {
        let (Element::Exact(ix), Element::Exact(iy)) = (&self.image_x, &self.image_y) else {
            return Ok(None);
        };
        let vars = ix.vars();
        let unit_y = match iy.terms().collect::<Vec<_>>().as_slice() {
            [(0, f)] => f.as_monomial().filter(|(_, e)| e.abs() == 1),
            _ => None,
        };
        let mut y_pows: HashMap<i32, SkewLaurentPoly> = HashMap::new();
        let mut x_pows: HashMap<i32, SkewLaurentPoly> = HashMap::new();
        let mut out = SkewLaurentPoly::zero(vars);
        for (i, f) in p.terms() {
            let coeff = if let Some((c, e)) = &unit_y {
                SkewLaurentPoly::coefficient(vars, substitute_unit_monomial(f, c, *e))
            } else if let Some(terms) = f.laurent_terms() {
                let mut acc = SkewLaurentPoly::zero(vars);
                for (k, c) in terms {
                    let yk = match y_pows.get(&k) {
                        Some(v) => v.clone(),
                        None => {
                            if k < 0 && !iy.is_unit() {
                                return Ok(None);
                            }
                            let v = iy.pow(k)?;
                            y_pows.insert(k, v.clone());
                            v
                        }
                    };
                    acc = acc.add(&yk.scale(&c))?;
                }
                acc
            } else {
                return Ok(None);
            };
            let xi = match x_pows.get(&i) {
                Some(v) => v.clone(),
                None => {
                    if i < 0 && !ix.is_unit() {
                        return Ok(None);
                    }
                    let v = ix.pow(i)?;
                    x_pows.insert(i, v.clone());
                    v
                }
            };
            out = out.add(&coeff.mul(&xi)?)?;
        }
        Ok(Some(out))
    }

    fn image_series(img: &Element, w: i32) -> SkewSeries {
        match img {
            Element::Exact(p) => SkewSeries::from_poly(p, p.valuation().unwrap_or(0) + w),
            Element::Series(s) => s.clone(),
        }
    }

    /// `Σ f_i(Y)·X^i` over the given terms with images expanded to window `w`.
    fn apply_terms<'a>(
        &self,
        terms: impl Iterator<Item = (i32, &'a RationalY)>,
        w: i32,
        cap: Option<i32>,
    ) -> Result<SkewSeries> {
        let ys = Self::image_series(&self.image_y, w);
        let xs = Self::image_series(&self.image_x, w);
        let vars = xs.vars();
        let mut x_inv: Option<SkewSeries> = None;
        let mut x_pows: HashMap<i32, SkewSeries> = HashMap::new();
        let mut acc: Option<SkewSeries> = None;
        for (i, f) in terms {
            let c = evaluate_rational_at(f, &ys)?;
            let xi = match x_pows.get(&i) {
                Some(v) => v.clone(),
                None => {
                    let v = if i >= 0 {
                        series_pow(&xs, i as u32)?
                    } else {
                        if x_inv.is_none() {
                            x_inv = Some(xs.invert()?);
                        }
                        series_pow(x_inv.as_ref().unwrap(), i.unsigned_abs())?
                    };
                    x_pows.insert(i, v.clone());
                    v
                }
            };
            let t = c.mul(&xi)?;
            acc = Some(match acc {
                None => t,
                Some(a) => a.add(&t)?,
            });
        }
        let r = acc.unwrap_or_else(|| SkewSeries::zero(vars, cap.unwrap_or(w)));
        Ok(match cap {
            Some(c) => r.truncate(c),
            None => r,
        })
    }

    /// Apply to a series: the dropped tail `O(x^P)` maps into `O(X^P)`, which
    /// is controlled only when `val(X) >= 1` and `Y` has valuation 0 with a
    /// non-constant leading coefficient.
    fn apply_series_input(&self, s: &SkewSeries, window: i32) -> Result<Element> {
        let ys = Self::image_series(&self.image_y, window);
        let xs = Self::image_series(&self.image_x, window);
        let y_ok = ys.valuation() == 0 && ys.leading_coeff().is_some_and(|c| !matches!(c.as_monomial(), Some((_, 0))));
        if xs.valuation() < 1 || !y_ok {
            return Err(Error::Apply(format!(
                "{} cannot be applied to a truncated series: the image of {} must have positive valuation \
                 and the image of {} valuation 0 with a non-constant leading coefficient",
                self.name, self.domain.x, self.domain.y
            )));
        }
        let cap = s.precision() * xs.valuation();
        let terms: Vec<(i32, RationalY)> = s.terms().map(|(k, c)| (k, c.clone())).collect();
        self.apply_series_raising(&|w| self.apply_terms(terms.iter().map(|(k, c)| (*k, c)), w, Some(cap)), window)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Morphism, window: i32) -> Result<Morphism> {
        if inner.codomain() != self.domain {
            return Err(Error::VariableMismatch { lhs: self.domain.to_string(), rhs: inner.codomain().to_string() });
        }
        let ix = self.apply(&inner.image_x, window)?;
        let iy = self.apply(&inner.image_y, window)?;
        let kind = match (&self.kind, &inner.kind) {
            (MorphismKind::Monomial(a), MorphismKind::Monomial(b)) => {
                let m = a.mul(b);
                let reference = Morphism::from_matrix(m, inner.domain)?;
                let same = matches!(reference.image_x.compare(&ix)?, Comparison::ExactEqual)
                    && matches!(reference.image_y.compare(&iy)?, Comparison::ExactEqual);
                if same {
                    MorphismKind::Monomial(m)
                } else {
                    MorphismKind::General
                }
            }
            _ => MorphismKind::General,
        };
        Morphism::new(&format!("{}∘{}", self.name, inner.name), kind, inner.domain, ix, iy)
    }

    /// Inverse of an elementary automorphism, itself elementary.
    pub fn elementary_inverse(kind: &ElementaryKind, vars: VarPair, window: i32) -> Result<Morphism> {
        let inv = match kind {
            ElementaryKind::Tau => ElementaryKind::Tau,
            ElementaryKind::HX(b) => ElementaryKind::HX(b.inverse().ok_or(Error::DivisionByZero)?),
            ElementaryKind::HY(a) => ElementaryKind::HY(a.inverse().ok_or(Error::DivisionByZero)?),
        };
        Self::elementary(inv, vars, window)
    }

    /// Whether `self(element) = element` (exactly, or on the window).
    pub fn is_fixed(&self, element: &Element, window: i32) -> Result<bool> {
        let image = self.apply(element, window)?;
        Ok(!matches!(image.compare(element)?, Comparison::Differ(..)))
    }

    /// Necessary condition for being inner: the image of y, written `t⁻¹s`, has `deg_x(s) = deg_x(t)`.
    pub fn degree_obstruction(&self) -> Result<InnerObstruction> {
        let Element::Exact(iy) = &self.image_y else {
            return Err(Error::Unsupported(format!(
                "the image of {} under {} is a truncated series, not a fraction of polynomials",
                self.domain.y, self.name
            )));
        };
        let (t, s) = iy.as_left_fraction()?;
        Ok(if fraction_degree(&s, &t)? != 0 { InnerObstruction::NotInner } else { InnerObstruction::InnerPossible })
    }
}

/// `a(x)` for a rational function whose variable stands for x: exact for
/// Laurent polynomials, otherwise expanded at `x = 0` (a pole there is rejected).
pub fn rational_in_x(a: &RationalY, vars: VarPair, window: i32) -> Result<Element> {
    if let Some(terms) = a.laurent_terms() {
        return Ok(Element::Exact(SkewLaurentPoly::from_terms(
            vars,
            terms.into_iter().map(|(k, c)| (k, RationalY::constant(c))),
        )));
    }
    if a.shift() != 0 {
        return Err(Error::Pole(format!("a(x) must be a unit at x = 0, found order {}", a.shift())));
    }
    let coeffs = a.expand(window.max(1) as usize).into_iter().map(RationalY::constant).collect();
    Ok(Element::Series(SkewSeries::new(vars, 0, window.max(1), coeffs)))
}

fn series_pow(s: &SkewSeries, n: u32) -> Result<SkewSeries> {
    let mut acc = SkewSeries::one(s.vars(), s.precision().max(1) + (n as i32) * s.valuation().abs() + 1);
    let mut b = s.clone();
    let mut n = n;
    let mut first = true;
    while n > 0 {
        if n & 1 == 1 {
            acc = if first { b.clone() } else { acc.mul(&b)? };
            first = false;
        }
        n >>= 1;
        if n > 0 {
            b = b.mul(&b)?;
        }
    }
    Ok(acc)
}

/// Precision standing in for "exact" when a constant takes part in series arithmetic.
const EXACT_PRECISION: i32 = 1 << 24;

fn constant_series(vars: VarPair, c: ScalarK) -> SkewSeries {
    SkewSeries::from_poly(&SkewLaurentPoly::scalar(vars, c), EXACT_PRECISION)
}

fn add_scalar(s: &SkewSeries, c: &ScalarK) -> Result<SkewSeries> {
    if c.is_zero() || s.precision() <= 0 {
        return Ok(s.clone());
    }
    s.add(&constant_series(s.vars(), c.clone()))
}

fn horner(p: &crate::poly::Poly<ScalarK>, t: &SkewSeries) -> Result<SkewSeries> {
    let vars = t.vars();
    let coeffs = p.coeffs();
    let Some((top, rest)) = coeffs.split_last() else {
        return Ok(SkewSeries::zero(vars, t.precision()));
    };
    let mut acc = constant_series(vars, top.clone());
    for c in rest.iter().rev() {
        acc = add_scalar(&acc.mul(t)?, c)?;
    }
    Ok(acc)
}

/// `f(T)` for a series `T`: numerator and denominator by Horner, the
/// denominator inverted as a series. When `T` has valuation 0 its constant
/// coefficient must not be a root of the denominator.
pub fn evaluate_rational_at(f: &RationalY, target: &SkewSeries) -> Result<SkewSeries> {
    let vars = target.vars();
    if f.is_zero() {
        return Ok(SkewSeries::zero(vars, EXACT_PRECISION));
    }
    if let Some((c, 0)) = f.as_monomial() {
        return Ok(constant_series(vars, c));
    }
    if target.is_zero_to_precision() {
        return Err(Error::Pole("substitution target is zero to its precision".into()));
    }
    if target.valuation() == 0 && !f.den().is_one() {
        let t0 = target.leading_coeff().unwrap();
        let d0 = f
            .den()
            .coeffs()
            .iter()
            .rev()
            .fold(RationalY::zero(), |acc, c| acc.times(t0).plus(&RationalY::constant(c.clone())));
        if d0.is_zero() {
            return Err(Error::Pole(format!(
                "denominator vanishes at the constant coefficient {}",
                crate::rational_y::render_rational(t0, vars.y, false)
            )));
        }
    }
    let num = horner(f.num(), target)?;
    let mut out = num;
    if !f.den().is_one() {
        let den = horner(f.den(), target)?;
        if den.is_zero_to_precision() {
            return Err(Error::Pole("denominator is zero to precision".into()));
        }
        out = out.mul(&den.invert()?)?;
    }
    let s = f.shift();
    if s != 0 {
        let base = if s > 0 { target.clone() } else { target.invert()? };
        out = out.mul(&series_pow(&base, s.unsigned_abs())?)?;
    }
    Ok(out)
}

/// `α^j` on a coefficient, exposed for callers that twist by powers of x.
pub fn alpha(f: &RationalY, j: i32) -> RationalY {
    alpha_power(f, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational_y::{konst, lambda};
    use crate::scalar::{int, q_pow, qh_pow};
    use crate::skew_laurent::XY;

    fn x() -> SkewLaurentPoly {
        SkewLaurentPoly::x(XY)
    }

    fn y() -> SkewLaurentPoly {
        SkewLaurentPoly::y(XY)
    }

    #[test]
    fn table_matrices() {
        let tau = Morphism::from_matrix(Sl2Matrix::TAU, XY).unwrap();
        assert_eq!(tau.image_x, Element::Exact(x().invert_unit().unwrap()));
        assert_eq!(tau.image_y, Element::Exact(y().invert_unit().unwrap()));
        let rho = Morphism::from_matrix(Sl2Matrix::RHO, XY).unwrap();
        assert_eq!(rho.image_x, Element::Exact(y().invert_unit().unwrap()));
        assert_eq!(rho.image_y, Element::Exact(x()));
        let sigma = Morphism::from_matrix(Sl2Matrix::SIGMA, XY).unwrap();
        assert_eq!(sigma.image_x, Element::Exact(y()));
        let expected = SkewLaurentPoly::term(XY, y_pow(-1).scale(&qh_pow(1)), -1);
        assert_eq!(sigma.image_y, Element::Exact(expected));
        assert!(Morphism::from_matrix(Sl2Matrix { a: 2, b: 0, c: 0, d: 1 }, XY).is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(Sl2Matrix::SIGMA.order(), MonomialOrder::Finite(3));
        assert_eq!(Sl2Matrix::ETA.order(), MonomialOrder::Finite(6));
        assert_eq!(Sl2Matrix::RHO.order(), MonomialOrder::Finite(4));
        assert_eq!(Sl2Matrix::TAU.order(), MonomialOrder::Finite(2));
        assert_eq!(Sl2Matrix::new(1, 1, 0, 1).unwrap().order(), MonomialOrder::Infinite);
    }

    #[test]
    fn phi_squares_to_identity() {
        let phi = Morphism::new(
            "phi",
            MorphismKind::General,
            XY,
            SkewLaurentPoly::term(XY, lambda(), -1).into(),
            SkewLaurentPoly::coefficient(XY, y_pow(-1).negated()).into(),
        )
        .unwrap();
        let once = phi.apply(&Element::Exact(x()), 8).unwrap();
        let twice = phi.apply(&once, 8).unwrap();
        assert_eq!(twice, Element::Exact(x()));
    }

    #[test]
    fn elementary_maps() {
        let one_plus_y = y_pow(1).plus(&konst(int(1)));
        let h1 = Morphism::elementary(ElementaryKind::HX(one_plus_y.clone()), XY, 8).unwrap();
        assert_eq!(h1.image_x, Element::Exact(SkewLaurentPoly::term(XY, one_plus_y, 1)));
        let h2 = Morphism::elementary(ElementaryKind::HY(y_pow(1).plus(&konst(int(1)))), XY, 8).unwrap();
        let expected = y().add(&x().mul(&y()).unwrap()).unwrap();
        assert_eq!(h2.image_y, Element::Exact(expected));
        let id = Morphism::elementary(ElementaryKind::HX(konst(int(1))), XY, 8).unwrap();
        assert_eq!(id.image_x, Element::Exact(x()));
        assert!(Morphism::elementary(ElementaryKind::HX(RationalY::zero()), XY, 8).is_err());
    }

    #[test]
    fn rejects_non_commuting_images() {
        let r = Morphism::new("bad", MorphismKind::General, XY, x().into(), x().into());
        assert!(matches!(r, Err(Error::NotQCommuting(_))));
    }

    #[test]
    fn rational_evaluation_at_a_series() {
        // (1+y)⁻¹ at T = y + x: check (1 + T)·result = 1.
        let t = SkewSeries::from_poly(&y().add(&x()).unwrap(), 8);
        let f = y_pow(1).plus(&konst(int(1))).inverse().unwrap();
        let r = evaluate_rational_at(&f, &t).unwrap();
        let one_plus_t = add_scalar(&t, &int(1)).unwrap();
        let prod = one_plus_t.mul(&r).unwrap();
        let one = SkewSeries::one(XY, 100);
        assert!(matches!(prod.equal_to_precision(&one).unwrap(), crate::skew_series::SeriesCmp::Equal(8)));
        // pole: (1+y)⁻¹ at T = -1 + x
        let bad = SkewSeries::from_poly(&SkewLaurentPoly::scalar(XY, int(-1)).add(&x()).unwrap(), 8);
        assert!(matches!(evaluate_rational_at(&f, &bad), Err(Error::Pole(_))));
        let _ = q_pow(1);
    }
}
