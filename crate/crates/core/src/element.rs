//! Values of the skew field: exact Laurent polynomials or truncated series.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational_y::RationalY;
use crate::scalar::ScalarK;
use crate::skew_laurent::{SkewLaurentPoly, VarPair};
use crate::skew_series::{SeriesCmp, SkewSeries};

#[derive(Clone, PartialEq, Debug)]
pub enum Element {
    Exact(SkewLaurentPoly),
    Series(SkewSeries),
}

/// Result of comparing two elements.
#[derive(Clone, PartialEq, Debug)]
pub enum Comparison {
    ExactEqual,
    /// Equal on the window below the given precision.
    EqualTo(i32),
    /// First differing exponent and the coefficient of `lhs - rhs` there.
    Differ(i32, RationalY),
}

impl Element {
    pub fn vars(&self) -> VarPair {
        match self {
            Element::Exact(p) => p.vars(),
            Element::Series(s) => s.vars(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Element::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&SkewLaurentPoly> {
        match self {
            Element::Exact(p) => Some(p),
            Element::Series(_) => None,
        }
    }

    pub fn scalar(vars: VarPair, c: ScalarK) -> Self {
        Element::Exact(SkewLaurentPoly::scalar(vars, c))
    }

    /// Lowest known exponent; `None` for exact zero.
    pub fn valuation(&self) -> Option<i32> {
        match self {
            Element::Exact(p) => p.valuation().ok(),
            Element::Series(s) => Some(s.valuation()),
        }
    }

    /// Precision bound; exact values have none.
    pub fn precision(&self) -> Option<i32> {
        match self {
            Element::Exact(_) => None,
            Element::Series(s) => Some(s.precision()),
        }
    }

    pub fn to_series(&self, precision: i32) -> SkewSeries {
        match self {
            Element::Exact(p) => SkewSeries::from_poly(p, precision),
            Element::Series(s) => s.truncate(precision),
        }
    }

    /// Precision at which to expand the exact operand `p` next to the series `s`
    /// so the result of a sum or product is limited by `s` alone.
    fn conversion_precision(p: &SkewLaurentPoly, s: &SkewSeries) -> i32 {
        let vp = p.valuation().unwrap_or(0);
        let ps = s.precision();
        let vs = s.valuation();
        ps.max(ps + vp - vs).max(vp + 1).max(p.degree().unwrap_or(0) + 1)
    }

    fn series_pair(&self, rhs: &Self) -> (SkewSeries, SkewSeries) {
        match (self, rhs) {
            (Element::Series(a), Element::Series(b)) => (a.clone(), b.clone()),
            (Element::Exact(p), Element::Series(s)) => {
                (SkewSeries::from_poly(p, Self::conversion_precision(p, s)), s.clone())
            }
            (Element::Series(s), Element::Exact(p)) => {
                (s.clone(), SkewSeries::from_poly(p, Self::conversion_precision(p, s)))
            }
            (Element::Exact(_), Element::Exact(_)) => unreachable!(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if let (Element::Exact(a), Element::Exact(b)) = (self, rhs) {
            return Ok(Element::Exact(a.add(b)?));
        }
        let (a, b) = self.series_pair(rhs);
        Ok(Element::Series(a.add(&b)?))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        match self {
            Element::Exact(p) => Element::Exact(p.neg()),
            Element::Series(s) => Element::Series(s.neg()),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if let (Element::Exact(a), Element::Exact(b)) = (self, rhs) {
            return Ok(Element::Exact(a.mul(b)?));
        }
        let (a, b) = self.series_pair(rhs);
        Ok(Element::Series(a.mul(&b)?))
    }

    pub fn scale(&self, c: &ScalarK) -> Self {
        match self {
            Element::Exact(p) => Element::Exact(p.scale(c)),
            Element::Series(s) => Element::Series(s.scale(c)),
        }
    }

    /// Inverse; exact units stay exact, everything else is expanded with
    /// `window` coefficients above its valuation before inverting.
    pub fn inverse(&self, window: i32) -> Result<Self> {
        match self {
            Element::Exact(p) if p.is_zero() => Err(Error::DivisionByZero),
            Element::Exact(p) if p.is_unit() => Ok(Element::Exact(p.invert_unit()?)),
            Element::Exact(p) => {
                let v = p.valuation()?;
                Ok(Element::Series(SkewSeries::from_poly(p, v + window).invert()?))
            }
            Element::Series(s) => Ok(Element::Series(s.invert()?)),
        }
    }

    pub fn pow(&self, e: i32, window: i32) -> Result<Self> {
        let base = if e < 0 { self.inverse(window)? } else { self.clone() };
        let mut acc = Element::Exact(SkewLaurentPoly::one(self.vars()));
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&b)?;
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b)?;
            }
        }
        Ok(acc)
    }

    /// Compare; exact when both sides are exact, otherwise on the common window.
    pub fn compare(&self, rhs: &Self) -> Result<Comparison> {
        if let (Element::Exact(a), Element::Exact(b)) = (self, rhs) {
            let d = a.sub(b)?;
            return Ok(match d.valuation() {
                Err(_) => Comparison::ExactEqual,
                Ok(k) => Comparison::Differ(k, d.coeff(k)),
            });
        }
        let (a, b) = self.series_pair(rhs);
        Ok(match a.equal_to_precision(&b)? {
            SeriesCmp::Equal(p) => Comparison::EqualTo(p),
            SeriesCmp::DifferAt(k, d) => Comparison::Differ(k, d),
        })
    }

    pub fn render(&self) -> String {
        match self {
            Element::Exact(p) => p.render(),
            Element::Series(s) => s.render(),
        }
    }
}

impl From<SkewLaurentPoly> for Element {
    fn from(p: SkewLaurentPoly) -> Self {
        Element::Exact(p)
    }
}

impl From<SkewSeries> for Element {
    fn from(s: SkewSeries) -> Self {
        Element::Series(s)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skew_laurent::XY;

    #[test]
    fn mixed_products_keep_series_precision() {
        let x = Element::Exact(SkewLaurentPoly::x(XY));
        let one_minus_x = Element::Exact(SkewLaurentPoly::one(XY)).sub(&x).unwrap();
        let inv = one_minus_x.inverse(6).unwrap();
        assert_eq!(inv.precision(), Some(6));
        let back = inv.mul(&one_minus_x).unwrap();
        assert_eq!(back.compare(&Element::Exact(SkewLaurentPoly::one(XY))).unwrap(), Comparison::EqualTo(6));
        let xinv = x.mul(&inv).unwrap();
        assert_eq!(xinv.precision(), Some(7));
    }

    #[test]
    fn exact_units_invert_exactly() {
        let y = Element::Exact(SkewLaurentPoly::y(XY));
        assert!(y.inverse(4).unwrap().is_exact());
        assert!(Element::Exact(SkewLaurentPoly::zero(XY)).inverse(4).is_err());
    }
}
