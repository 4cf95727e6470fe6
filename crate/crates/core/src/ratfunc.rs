//! Rational functions `z^shift · num(z) / den(z)` in one variable over a [`Field`].
//!
//! Canonical form: `num(0) != 0` and `den(0) != 0` (all powers of `z` live in
//! `shift`), `den` monic, `gcd(num, den) = 1`. Zero is `shift = 0, num = 0,
//! den = 1`. Equality of values is equality of canonical forms.

use std::ops::{Add, Mul, Neg, Sub};

use crate::field::{Field, Modular};
use crate::poly::Poly;

#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc<C: Field> {
    shift: i32,
    num: Poly<C>,
    den: Poly<C>,
}

impl<C: Field> RatFunc<C> {
    pub fn constant(c: C) -> Self {
        RatFunc { shift: 0, num: Poly::constant(c), den: Poly::one() }
    }

    /// `c·z^k`.
    pub fn monomial(c: C, k: i32) -> Self {
        if c.is_zero() {
            return Self::zero_value();
        }
        RatFunc { shift: k, num: Poly::constant(c), den: Poly::one() }
    }

    pub fn var() -> Self {
        Self::monomial(C::one(), 1)
    }

    fn zero_value() -> Self {
        RatFunc { shift: 0, num: Poly::zero(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly<C>) -> Self {
        Self::from_parts(0, p, Poly::one())
    }

    /// Laurent polynomial from `(exponent, coefficient)` pairs.
    pub fn from_terms(terms: &[(i32, C)]) -> Self {
        let Some(lo) = terms.iter().filter(|(_, c)| !c.is_zero()).map(|(e, _)| *e).min() else {
            return Self::zero_value();
        };
        let hi = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut coeffs = vec![C::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            if *e >= lo {
                let slot = &mut coeffs[(*e - lo) as usize];
                *slot = slot.plus(c);
            }
        }
        Self::from_parts(lo, Poly::from_coeffs(coeffs), Poly::one())
    }

    /// `num / den` reduced to canonical form.
    pub fn from_fraction(num: Poly<C>, den: Poly<C>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::from_parts(0, num, den))
    }

    /// Normalize `z^shift · num / den` with arbitrary `num`, nonzero `den`.
    fn from_parts(shift: i32, num: Poly<C>, den: Poly<C>) -> Self {
        if num.is_zero() {
            return Self::zero_value();
        }
        let vn = num.low_order();
        let vd = den.low_order();
        let num = num.shr(vn);
        let den = den.shr(vd);
        let shift = shift + vn as i32 - vd as i32;
        if den.degree() == 0 {
            let c = den.coeffs()[0].inverse().expect("nonzero");
            return RatFunc { shift, num: num.scale(&c), den: Poly::one() };
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.exact_div(&g), den.exact_div(&g)) };
        Self::with_monic_den(shift, num, den)
    }

    /// Make `den` monic; numerator and denominator already coprime with nonzero constant terms.
    fn with_monic_den(shift: i32, num: Poly<C>, den: Poly<C>) -> Self {
        let lead = den.lead().expect("nonzero").clone();
        if lead.is_one() {
            return RatFunc { shift, num, den };
        }
        let li = lead.inverse().expect("nonzero");
        RatFunc { shift, num: num.scale(&li), den: den.scale(&li) }
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn num(&self) -> &Poly<C> {
        &self.num
    }

    pub fn den(&self) -> &Poly<C> {
        &self.den
    }

    /// True when the denominator is 1, i.e. the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Single term `c·z^k`.
    pub fn as_monomial(&self) -> Option<(C, i32)> {
        if self.den.is_one() && self.num.coeffs().len() == 1 {
            Some((self.num.coeffs()[0].clone(), self.shift))
        } else {
            None
        }
    }

    /// `(exponent, coefficient)` pairs of a Laurent polynomial, or `None`.
    pub fn laurent_terms(&self) -> Option<Vec<(i32, C)>> {
        if !self.is_laurent() {
            return None;
        }
        Some(
            self.num
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (self.shift + i as i32, c.clone()))
                .collect(),
        )
    }

    /// Lowest and highest exponent of the numerator (with shift), for Laurent values.
    pub fn laurent_span(&self) -> Option<(i32, i32)> {
        if self.num.is_zero() {
            return None;
        }
        Some((self.shift, self.shift + self.num.degree() as i32))
    }

    /// Order of vanishing at `z = 0` (the shift); zero reports 0.
    pub fn valuation(&self) -> i32 {
        self.shift
    }

    /// Value at `z = 0` of `num/den`, i.e. the leading coefficient of the expansion at 0.
    pub fn lowest_coeff(&self) -> C {
        if self.num.is_zero() {
            return C::zero();
        }
        self.num.coeffs()[0].times(&self.den.coeffs()[0].inverse().expect("nonzero"))
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero_value();
        }
        RatFunc { shift: self.shift, num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_var_pow(&self, k: i32) -> Self {
        if self.num.is_zero() {
            return self.clone();
        }
        RatFunc { shift: self.shift + k, num: self.num.clone(), den: self.den.clone() }
    }

    /// Substitute `z -> c·z`.
    pub fn twist(&self, c: &C) -> Self {
        if c.is_one() || self.num.is_zero() {
            return self.clone();
        }
        let pre = c.pow_i32(self.shift);
        let num = self.num.twist(c).scale(&pre);
        let den = self.den.twist(c);
        Self::with_monic_den(self.shift, num, den)
    }

    /// Substitute `z -> c·z^{-1}`.
    pub fn twist_invert(&self, c: &C) -> Self {
        let t = self.twist(c);
        if t.num.is_zero() {
            return t;
        }
        let shift = -t.shift - t.num.degree() as i32 + t.den.degree() as i32;
        Self::with_monic_den(shift, t.num.reverse(), t.den.reverse())
    }

    /// Expansion coefficients of the Taylor-Laurent series at `z = 0`, for
    /// exponents `shift..shift+n`.
    pub fn expand(&self, n: usize) -> Vec<C> {
        let inv0 = self.den.coeffs()[0].inverse().expect("nonzero");
        let mut out: Vec<C> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.num.coeff(k);
            for j in 1..=k.min(self.den.degree()) {
                let dj = &self.den.coeffs()[j];
                if !dj.is_zero() {
                    acc = acc.minus(&dj.times(&out[k - j]));
                }
            }
            out.push(acc.times(&inv0));
        }
        out
    }

    /// Evaluate at a nonzero point of the coefficient field.
    pub fn eval(&self, z: &C) -> Option<C> {
        let d = self.den.eval(z);
        let n = self.num.eval(z);
        Some(n.times(&d.inverse()?).times(&z.pow_i32(self.shift)))
    }
}

/// Integer powers for any field element.
pub trait FieldPow: Field {
    fn pow_i32(&self, e: i32) -> Self {
        let mut base = if e < 0 { self.inverse().expect("power of zero") } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.times(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

impl<F: Field> FieldPow for F {}

impl<C: Field> Field for RatFunc<C> {
    const LEVEL: usize = C::LEVEL + 1;

    fn zero() -> Self {
        Self::zero_value()
    }

    fn one() -> Self {
        Self::constant(C::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.shift == 0 && self.den.is_one() && self.num.is_one()
    }

    fn plus(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let s = self.shift.min(rhs.shift);
        let a = self.num.shl((self.shift - s) as usize);
        let b = rhs.num.shl((rhs.shift - s) as usize);
        if self.den == rhs.den {
            let num = a.add(&b);
            if self.den.is_one() {
                return Self::from_parts(s, num, Poly::one());
            }
            let vn = num.low_order();
            let num = num.shr(vn);
            let g = Poly::gcd(&num, &self.den);
            if g.is_one() {
                return RatFunc { shift: s + vn as i32, num, den: self.den.clone() };
            }
            let num = num.exact_div(&g);
            let den = self.den.exact_div(&g);
            return Self::with_monic_den(s + vn as i32, num, den);
        }
        let g = if self.den.is_one() || rhs.den.is_one() { Poly::one() } else { Poly::gcd(&self.den, &rhs.den) };
        let e1 = self.den.exact_div(&g);
        let e2 = rhs.den.exact_div(&g);
        let num = a.mul(&e2).add(&b.mul(&e1));
        if num.is_zero() {
            return Self::zero_value();
        }
        let vn = num.low_order();
        let mut num = num.shr(vn);
        let mut den = g.mul(&e1).mul(&e2);
        if !g.is_one() {
            let h = Poly::gcd(&num, &g);
            if !h.is_one() {
                num = num.exact_div(&h);
                den = den.exact_div(&h);
            }
        }
        RatFunc { shift: s + vn as i32, num, den }
    }

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }

    fn times(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero_value();
        }
        if let Some((c, k)) = self.as_monomial() {
            return RatFunc { shift: rhs.shift + k, num: rhs.num.scale(&c), den: rhs.den.clone() };
        }
        if let Some((c, k)) = rhs.as_monomial() {
            return RatFunc { shift: self.shift + k, num: self.num.scale(&c), den: self.den.clone() };
        }
        let shift = self.shift + rhs.shift;
        let (n1, d2) = cancel(&self.num, &rhs.den);
        let (n2, d1) = cancel(&rhs.num, &self.den);
        RatFunc { shift, num: n1.mul(&n2), den: d1.mul(&d2) }
    }

    fn negated(&self) -> Self {
        RatFunc { shift: self.shift, num: self.num.neg(), den: self.den.clone() }
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::with_monic_den(-self.shift, self.den.clone(), self.num.clone()))
    }

    fn from_i64(n: i64) -> Self {
        Self::constant(C::from_i64(n))
    }

    fn reduce(&self, m: &Modular) -> Option<u64> {
        let pt = m.point(Self::LEVEL);
        let n = self.num.reduce_at(m, pt)?;
        let d = self.den.reduce_at(m, pt)?;
        Some(m.mul(m.mul(n, m.inv(d)?), m.pow(pt, self.shift as i64)?))
    }

    fn weight(&self) -> usize {
        self.num.weight() + self.den.weight()
    }
}

/// Remove the common factor of `n` and a monic `d`; returns `(n/g, d/g)` with `d/g` monic.
fn cancel<C: Field>(n: &Poly<C>, d: &Poly<C>) -> (Poly<C>, Poly<C>) {
    if d.is_one() {
        return (n.clone(), d.clone());
    }
    let g = Poly::gcd(n, d);
    if g.is_one() {
        (n.clone(), d.clone())
    } else {
        (n.exact_div(&g), d.exact_div(&g))
    }
}

impl<C: Field> Add for &RatFunc<C> {
    type Output = RatFunc<C>;
    fn add(self, rhs: Self) -> RatFunc<C> {
        self.plus(rhs)
    }
}

impl<C: Field> Sub for &RatFunc<C> {
    type Output = RatFunc<C>;
    fn sub(self, rhs: Self) -> RatFunc<C> {
        self.minus(rhs)
    }
}

impl<C: Field> Mul for &RatFunc<C> {
    type Output = RatFunc<C>;
    fn mul(self, rhs: Self) -> RatFunc<C> {
        self.times(rhs)
    }
}

impl<C: Field> Neg for &RatFunc<C> {
    type Output = RatFunc<C>;
    fn neg(self) -> RatFunc<C> {
        self.negated()
    }
}
