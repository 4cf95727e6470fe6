//! Finite sums `Σ f_i(y)·xⁱ` with `x·f(y) = f(q·y)·x`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::rational_y::{alpha_power, render_rational, y_pow, RationalY};
use crate::scalar::ScalarK;

/// Names of the generating pair: `x` carries the grading, `y` the coefficients.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct VarPair {
    pub x: &'static str,
    pub y: &'static str,
}

pub const XY: VarPair = VarPair { x: "x", y: "y" };
pub const FG: VarPair = VarPair { x: "f", y: "g" };

impl fmt::Display for VarPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.x, self.y)
    }
}

pub(crate) fn check_vars(lhs: VarPair, rhs: VarPair) -> Result<()> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Error::VariableMismatch { lhs: lhs.to_string(), rhs: rhs.to_string() })
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct SkewLaurentPoly {
    vars: VarPair,
    terms: BTreeMap<i32, RationalY>,
}

impl SkewLaurentPoly {
    pub fn zero(vars: VarPair) -> Self {
        SkewLaurentPoly { vars, terms: BTreeMap::new() }
    }

    pub fn one(vars: VarPair) -> Self {
        Self::term(vars, RationalY::one(), 0)
    }

    /// `f·x^k`.
    pub fn term(vars: VarPair, f: RationalY, k: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert(k, f);
        }
        SkewLaurentPoly { vars, terms }
    }

    /// `x^k·g`, normalized to `α^k(g)·x^k`.
    pub fn term_right(vars: VarPair, k: i32, g: &RationalY) -> Self {
        Self::term(vars, alpha_power(g, k), k)
    }

    pub fn coefficient(vars: VarPair, f: RationalY) -> Self {
        Self::term(vars, f, 0)
    }

    pub fn scalar(vars: VarPair, c: ScalarK) -> Self {
        Self::coefficient(vars, RationalY::constant(c))
    }

    pub fn x(vars: VarPair) -> Self {
        Self::term(vars, RationalY::one(), 1)
    }

    pub fn y(vars: VarPair) -> Self {
        Self::coefficient(vars, y_pow(1))
    }

    pub fn from_terms(vars: VarPair, terms: impl IntoIterator<Item = (i32, RationalY)>) -> Self {
        let mut out = Self::zero(vars);
        for (k, f) in terms {
            out.add_term(k, &f);
        }
        out
    }

    fn add_term(&mut self, k: i32, f: &RationalY) {
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(c) => {
                let s = c.plus(f);
                if s.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *c = s;
                }
            }
            None => {
                self.terms.insert(k, f.clone());
            }
        }
    }

    pub fn vars(&self) -> VarPair {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &RationalY)> {
        self.terms.iter().map(|(k, f)| (*k, f))
    }

    pub fn support(&self) -> Vec<i32> {
        self.terms.keys().copied().collect()
    }

    pub fn coeff(&self, k: i32) -> RationalY {
        self.terms.get(&k).cloned().unwrap_or_else(RationalY::zero)
    }

    /// Highest power of x.
    pub fn degree(&self) -> Result<i32> {
        self.terms.keys().next_back().copied().ok_or(Error::ZeroDegree)
    }

    /// Lowest power of x.
    pub fn valuation(&self) -> Result<i32> {
        self.terms.keys().next().copied().ok_or(Error::ZeroDegree)
    }

    /// True when every coefficient is a Laurent polynomial in y.
    pub fn has_laurent_coeffs(&self) -> bool {
        self.terms.values().all(|f| f.is_laurent())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        check_vars(self.vars, rhs.vars)?;
        let mut out = self.clone();
        for (k, f) in &rhs.terms {
            out.add_term(*k, f);
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        SkewLaurentPoly { vars: self.vars, terms: self.terms.iter().map(|(k, f)| (*k, f.negated())).collect() }
    }

    pub fn scale(&self, c: &ScalarK) -> Self {
        self.left_mul_coeff(&RationalY::constant(c.clone()))
    }

    /// `f·self`.
    pub fn left_mul_coeff(&self, f: &RationalY) -> Self {
        if f.is_zero() {
            return Self::zero(self.vars);
        }
        SkewLaurentPoly { vars: self.vars, terms: self.terms.iter().map(|(k, g)| (*k, f.times(g))).collect() }
    }

    /// Twisted product: `(f·xⁱ)(g·xʲ) = f·αⁱ(g)·x^{i+j}`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        check_vars(self.vars, rhs.vars)?;
        let mut out = Self::zero(self.vars);
        for (i, f) in &self.terms {
            for (j, g) in &rhs.terms {
                out.add_term(i + j, &f.times(&alpha_power(g, *i)));
            }
        }
        Ok(out)
    }

    /// Inverse of a single term `f·xᵐ`: `α^{-m}(f⁻¹)·x^{-m}`.
    pub fn invert_unit(&self) -> Result<Self> {
        if self.terms.len() != 1 {
            return Err(Error::NotAUnit { support: self.support() });
        }
        let (m, f) = self.terms.iter().next().unwrap();
        let inv = f.inverse().ok_or(Error::DivisionByZero)?;
        Ok(Self::term(self.vars, alpha_power(&inv, -m), -m))
    }

    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    /// Integer power; negative exponents require a unit.
    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.invert_unit()? } else { self.clone() };
        let mut acc = Self::one(self.vars);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// Write `self = t⁻¹·s` with `t = d(y)·x^m` and `s`, `t` polynomials in x and y.
    pub fn as_left_fraction(&self) -> Result<(Self, Self)> {
        let m = -self.valuation()?;
        let xm = Self::term(self.vars, RationalY::one(), m);
        let p1 = xm.mul(self)?;
        let mut d = RationalY::one();
        for f in p1.terms.values() {
            let den = RationalY::from_poly(f.den().clone());
            d = lcm(&d, &den);
            if f.shift() < 0 {
                let need = -f.shift();
                if d.shift() < need {
                    d = d.mul_var_pow(need - d.shift());
                }
            }
        }
        let t = xm.left_mul_coeff(&d);
        let s = p1.left_mul_coeff(&d);
        Ok((t, s))
    }

    /// Parseable rendering as a sum of `(coeff)*x^i` in increasing i.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, f) in &self.terms {
            let mono = match k {
                0 => String::new(),
                1 => self.vars.x.to_string(),
                k => format!("{}^{k}", self.vars.x),
            };
            let part = if mono.is_empty() {
                render_rational(f, self.vars.y, false)
            } else if f.is_one() {
                mono
            } else if f.negated().is_one() {
                format!("-{mono}")
            } else {
                format!("{}*{mono}", render_rational(f, self.vars.y, true))
            };
            parts.push(part);
        }
        crate::scalar::join_terms(&parts)
    }
}

/// Monic-denominator lcm of two polynomial-valued `RationalY`s (shift ignored).
fn lcm(a: &RationalY, b: &RationalY) -> RationalY {
    use crate::poly::Poly;
    let g = Poly::gcd(a.num(), b.num());
    let l = a.num().mul(&b.num().exact_div(&g)).monic().0;
    RationalY::from_poly(l).mul_var_pow(a.shift().max(b.shift()))
}

/// `deg_x(s) - deg_x(t)` for nonzero polynomials in x.
pub fn fraction_degree(s: &SkewLaurentPoly, t: &SkewLaurentPoly) -> Result<i32> {
    Ok(s.degree()? - t.degree()?)
}

impl fmt::Display for SkewLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational_y::{konst, lambda};
    use crate::scalar::{int, q_pow};

    fn y() -> SkewLaurentPoly {
        SkewLaurentPoly::y(XY)
    }

    fn x() -> SkewLaurentPoly {
        SkewLaurentPoly::x(XY)
    }

    #[test]
    fn defining_relation() {
        let xy = x().mul(&y()).unwrap();
        let qyx = y().mul(&x()).unwrap().scale(&q_pow(1));
        assert_eq!(xy, qyx);
    }

    #[test]
    fn one_twist_on_lambda() {
        let lx = SkewLaurentPoly::term(XY, lambda(), -1);
        let got = x().mul(&lx).unwrap();
        let expected = SkewLaurentPoly::coefficient(XY, RationalY::from_terms(&[(-1, q_pow(-1)), (1, int(-1))]));
        assert_eq!(got, expected);
    }

    #[test]
    fn unit_inverses_both_sides() {
        let u = SkewLaurentPoly::term(XY, lambda(), -1);
        let ui = u.invert_unit().unwrap();
        assert!(u.mul(&ui).unwrap().is_one());
        assert!(ui.mul(&u).unwrap().is_one());
        assert_eq!(y().invert_unit().unwrap(), SkewLaurentPoly::coefficient(XY, y_pow(-1)));
        let err = x().add(&y()).unwrap().invert_unit();
        assert!(matches!(err, Err(Error::NotAUnit { .. })));
    }

    #[test]
    fn left_fraction_of_psi_image() {
        // y + q·y·(1+y)⁻¹·x
        let one_plus_y = y_pow(1).plus(&konst(int(1)));
        let c = y_pow(1).scale(&q_pow(1)).times(&one_plus_y.inverse().unwrap());
        let p = SkewLaurentPoly::from_terms(XY, [(0, y_pow(1)), (1, c)]);
        let (t, s) = p.as_left_fraction().unwrap();
        assert_eq!(t.degree().unwrap(), 0);
        assert_eq!(fraction_degree(&s, &t).unwrap(), 1);
        assert!(s.has_laurent_coeffs());
        let x3 = x().pow(3).unwrap();
        assert_eq!(fraction_degree(&x3, &x()).unwrap(), 2);
        assert_eq!(fraction_degree(&x3, &x3).unwrap(), 0);
    }

    #[test]
    fn render_terms() {
        let p = x().add(&SkewLaurentPoly::term(XY, lambda(), -1).neg()).unwrap();
        assert_eq!(p.render(), "(-y^-1 + q^-1*y)*x^-1 + x");
    }
}
