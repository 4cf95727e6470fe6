//! Truncated skew Laurent series `Σ_{v ≤ i < P} f_i(y)·xⁱ + O(x^P)`.
//!
//! A series never claims a coefficient its inputs do not determine: sums keep
//! the smaller precision, products keep `min(P₁ + v₂, P₂ + v₁)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::rational_y::{alpha_power, render_rational, RationalY};
use crate::scalar::ScalarK;
use crate::skew_laurent::{check_vars, SkewLaurentPoly, VarPair};

#[derive(Clone, PartialEq, Debug)]
pub struct SkewSeries {
    vars: VarPair,
    /// Exponent of `coeffs[0]`; equals `precision` for the zero-to-precision series.
    start: i32,
    precision: i32,
    coeffs: Vec<RationalY>,
}

/// Outcome of comparing two series on their common window.
#[derive(Clone, PartialEq, Debug)]
pub enum SeriesCmp {
    /// Equal on every exponent below the given precision.
    Equal(i32),
    /// First differing exponent and `lhs - rhs` there.
    DifferAt(i32, RationalY),
}

impl SkewSeries {
    /// Build from coefficients starting at exponent `start`, stripping leading zeros.
    pub fn new(vars: VarPair, start: i32, precision: i32, coeffs: Vec<RationalY>) -> Self {
        let mut coeffs = coeffs;
        coeffs.truncate((precision - start).max(0) as usize);
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero(vars, precision);
        }
        coeffs.drain(..lead);
        while coeffs.last().is_some_and(|c| c.is_zero()) && coeffs.len() > 1 {
            coeffs.pop();
        }
        SkewSeries { vars, start: start + lead as i32, precision, coeffs }
    }

    pub fn zero(vars: VarPair, precision: i32) -> Self {
        SkewSeries { vars, start: precision, precision, coeffs: Vec::new() }
    }

    pub fn one(vars: VarPair, precision: i32) -> Self {
        Self::from_poly(&SkewLaurentPoly::one(vars), precision)
    }

    /// Copy the terms of `p` below `precision`.
    pub fn from_poly(p: &SkewLaurentPoly, precision: i32) -> Self {
        let Ok(v) = p.valuation() else {
            return Self::zero(p.vars(), precision);
        };
        if v >= precision {
            return Self::zero(p.vars(), precision);
        }
        let top = p.degree().unwrap().min(precision - 1);
        let coeffs = (v..=top).map(|k| p.coeff(k)).collect();
        Self::new(p.vars(), v, precision, coeffs)
    }

    pub fn vars(&self) -> VarPair {
        self.vars
    }

    pub fn precision(&self) -> i32 {
        self.precision
    }

    /// Lowest exponent with a nonzero coefficient, or the precision when none is known.
    pub fn valuation(&self) -> i32 {
        self.start
    }

    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^k`; `None` beyond the precision.
    pub fn coeff(&self, k: i32) -> Option<RationalY> {
        if k >= self.precision {
            return None;
        }
        if k < self.start {
            return Some(RationalY::zero());
        }
        Some(self.coeffs.get((k - self.start) as usize).cloned().unwrap_or_else(RationalY::zero))
    }

    fn coeff_ref(&self, k: i32) -> Option<&RationalY> {
        if k < self.start {
            return None;
        }
        self.coeffs.get((k - self.start) as usize)
    }

    pub fn leading_coeff(&self) -> Option<&RationalY> {
        self.coeffs.first()
    }

    /// `(exponent, coefficient)` for the nonzero known terms.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &RationalY)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (self.start + i as i32, c))
    }

    pub fn truncate(&self, precision: i32) -> Self {
        if precision >= self.precision {
            return self.clone();
        }
        Self::new(self.vars, self.start, precision, self.coeffs.clone())
    }

    /// The known terms as an exact polynomial.
    pub fn to_poly(&self) -> SkewLaurentPoly {
        SkewLaurentPoly::from_terms(self.vars, self.terms().map(|(k, c)| (k, c.clone())))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        check_vars(self.vars, rhs.vars)?;
        let precision = self.precision.min(rhs.precision);
        let start = self.start.min(rhs.start).min(precision);
        let coeffs = (start..precision)
            .map(|k| match (self.coeff_ref(k), rhs.coeff_ref(k)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => RationalY::zero(),
            })
            .collect();
        Ok(Self::new(self.vars, start, precision, coeffs))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        SkewSeries { coeffs: self.coeffs.iter().map(|c| c.negated()).collect(), ..self.clone() }
    }

    pub fn scale(&self, c: &ScalarK) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars, self.precision);
        }
        self.left_mul_coeff(&RationalY::constant(c.clone()))
    }

    /// `f·self` for a coefficient `f`.
    pub fn left_mul_coeff(&self, f: &RationalY) -> Self {
        if f.is_zero() {
            return Self::zero(self.vars, self.precision);
        }
        SkewSeries { coeffs: self.coeffs.iter().map(|c| f.times(c)).collect(), ..self.clone() }
    }

    /// `x^k·self`.
    pub fn left_mul_x_pow(&self, k: i32) -> Self {
        SkewSeries {
            vars: self.vars,
            start: self.start + k,
            precision: self.precision + k,
            coeffs: self.coeffs.iter().map(|c| alpha_power(c, k)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        check_vars(self.vars, rhs.vars)?;
        let precision = (self.precision + rhs.start).min(rhs.precision + self.start);
        let start = self.start + rhs.start;
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() || start >= precision {
            return Ok(Self::zero(self.vars, precision));
        }
        let n = (precision - start) as usize;
        let mut out: Vec<Option<RationalY>> = vec![None; n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            let shift = self.start + i as i32;
            for (j, b) in rhs.coeffs.iter().enumerate().take(n - i) {
                if b.is_zero() {
                    continue;
                }
                let p = a.times(&alpha_power(b, shift));
                out[i + j] = Some(match out[i + j].take() {
                    Some(acc) => acc.plus(&p),
                    None => p,
                });
            }
        }
        let coeffs = out.into_iter().map(|c| c.unwrap_or_else(RationalY::zero)).collect();
        Ok(Self::new(self.vars, start, precision, coeffs))
    }

    /// Two-sided inverse, valuation `-v` and precision `P - 2v`.
    ///
    /// With `p = p_v·x^v·(1 + r)`, the coefficients of `(1 + r)⁻¹` are produced
    /// term by term: `w_{k-v} = α^{-v}(p_v⁻¹·(δ_{k0} - Σ_{v<i≤v+k} p_i·αⁱ(w_{k-i})))`,
    /// which is the geometric series in `r` collected by powers of x.
    pub fn invert(&self) -> Result<Self> {
        let Some(pv) = self.coeffs.first() else {
            return Err(Error::ZeroSeries(self.precision));
        };
        let v = self.start;
        let precision = self.precision - 2 * v;
        let n = (precision + v).max(0) as usize;
        let pv_inv = pv.inverse().ok_or(Error::DivisionByZero)?;
        let mut w: Vec<RationalY> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = if k == 0 { RationalY::one() } else { RationalY::zero() };
            for i in 1..=k {
                let Some(pi) = self.coeffs.get(i) else { break };
                if pi.is_zero() {
                    continue;
                }
                let wk = &w[k - i];
                if wk.is_zero() {
                    continue;
                }
                acc = acc.minus(&pi.times(&alpha_power(wk, v + i as i32)));
            }
            w.push(alpha_power(&pv_inv.times(&acc), -v));
        }
        Ok(Self::new(self.vars, -v, precision, w))
    }

    pub fn equal_to_precision(&self, rhs: &Self) -> Result<SeriesCmp> {
        check_vars(self.vars, rhs.vars)?;
        let precision = self.precision.min(rhs.precision);
        let start = self.start.min(rhs.start);
        for k in start..precision {
            let a = self.coeff(k).unwrap();
            let b = rhs.coeff(k).unwrap();
            if a != b {
                return Ok(SeriesCmp::DifferAt(k, a.minus(&b)));
            }
        }
        Ok(SeriesCmp::Equal(precision))
    }

    /// Rendering `f_v·x^v + ... + O(x^P)`.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for (k, f) in self.terms() {
            let mono = match k {
                0 => String::new(),
                1 => self.vars.x.to_string(),
                k => format!("{}^{k}", self.vars.x),
            };
            parts.push(if mono.is_empty() {
                render_rational(f, self.vars.y, false)
            } else if f.is_one() {
                mono
            } else if f.negated().is_one() {
                format!("-{mono}")
            } else {
                format!("{}*{mono}", render_rational(f, self.vars.y, true))
            });
        }
        let o = match self.precision {
            0 => "O(1)".to_string(),
            1 => format!("O({})", self.vars.x),
            p => format!("O({}^{p})", self.vars.x),
        };
        parts.push(o);
        crate::scalar::join_terms(&parts)
    }
}

impl fmt::Display for SkewSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational_y::{konst, y_pow};
    use crate::scalar::{int, q_pow};
    use crate::skew_laurent::{FG, XY};

    fn poly(terms: &[(i32, i64)]) -> SkewLaurentPoly {
        SkewLaurentPoly::from_terms(XY, terms.iter().map(|&(k, c)| (k, konst(int(c)))))
    }

    #[test]
    fn product_of_binomials() {
        let a = SkewSeries::from_poly(&poly(&[(0, 1), (1, 1)]), 5);
        let b = SkewSeries::from_poly(&poly(&[(0, 1), (1, -1)]), 5);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.precision(), 5);
        assert_eq!(p.to_poly(), poly(&[(0, 1), (2, -1)]));
    }

    #[test]
    fn geometric_series() {
        let a = SkewSeries::from_poly(&poly(&[(0, 1), (1, -1)]), 4);
        let inv = a.invert().unwrap();
        assert_eq!(inv.to_poly(), poly(&[(0, 1), (1, 1), (2, 1), (3, 1)]));
        let one = a.mul(&inv).unwrap();
        assert_eq!(one.equal_to_precision(&SkewSeries::one(XY, 10)).unwrap(), SeriesCmp::Equal(4));
    }

    #[test]
    fn inverse_of_shifted_series_is_two_sided() {
        // y·x⁻¹ + 1 + (1+y)·x
        let p =
            SkewLaurentPoly::from_terms(XY, [(-1, y_pow(1)), (0, konst(int(1))), (1, y_pow(1).plus(&konst(int(1))))]);
        let s = SkewSeries::from_poly(&p, 6);
        let inv = s.invert().unwrap();
        assert_eq!(inv.valuation(), 1);
        assert_eq!(inv.precision(), 8);
        let one = SkewSeries::one(XY, 20);
        assert!(matches!(s.mul(&inv).unwrap().equal_to_precision(&one).unwrap(), SeriesCmp::Equal(7)));
        assert!(matches!(inv.mul(&s).unwrap().equal_to_precision(&one).unwrap(), SeriesCmp::Equal(7)));
    }

    #[test]
    fn twist_and_comparison() {
        let x = SkewSeries::from_poly(&SkewLaurentPoly::x(XY), 6);
        let y = SkewSeries::from_poly(&SkewLaurentPoly::y(XY), 6);
        let xy = x.mul(&y).unwrap();
        assert_eq!(xy.coeff(1).unwrap(), y_pow(1).scale(&q_pow(1)));
        let two_x = x.scale(&int(2));
        match x.equal_to_precision(&two_x).unwrap() {
            SeriesCmp::DifferAt(k, d) => {
                assert_eq!(k, 1);
                assert_eq!(d, konst(int(-1)));
            }
            other => panic!("{other:?}"),
        }
        let tail = SkewSeries::from_poly(&poly(&[(1, 1), (6, 1)]), 6);
        assert_eq!(x.equal_to_precision(&tail).unwrap(), SeriesCmp::Equal(6));
    }

    #[test]
    fn mismatched_pairs_and_zero() {
        let a = SkewSeries::one(XY, 3);
        let b = SkewSeries::one(FG, 3);
        assert!(matches!(a.add(&b), Err(Error::VariableMismatch { .. })));
        assert!(matches!(SkewSeries::zero(XY, 5).invert(), Err(Error::ZeroSeries(5))));
        let z = SkewSeries::from_poly(&SkewLaurentPoly::zero(XY), 5);
        assert!(z.is_zero_to_precision());
    }
}
