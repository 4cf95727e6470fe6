//! Q(ω): pairs `a + b·ω` of rationals with `ω² = -1 - ω`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::{Field, Modular};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Eisenstein {
    a: BigRational,
    b: BigRational,
}

impl Eisenstein {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Eisenstein { a, b }
    }

    pub fn rational(a: BigRational) -> Self {
        Eisenstein { a, b: BigRational::zero() }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn omega() -> Self {
        Eisenstein { a: BigRational::zero(), b: BigRational::one() }
    }

    /// The real part `a` of `a + b·ω`.
    pub fn re(&self) -> &BigRational {
        &self.a
    }

    /// The ω-part `b` of `a + b·ω`.
    pub fn omega_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The Galois conjugate `a + b·ω²`.
    pub fn conjugate(&self) -> Self {
        Eisenstein { a: &self.a - &self.b, b: -&self.b }
    }

    /// `a² - ab + b²`, the product with the conjugate.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Eisenstein { a: &self.a * r, b: &self.b * r }
    }

    /// Render as a parseable expression; `atomic` asks for parentheses around sums.
    pub fn render(&self, atomic: bool) -> String {
        let fmt_q = |r: &BigRational| -> String {
            if r.is_integer() {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        };
        if self.b.is_zero() {
            let s = fmt_q(&self.a);
            if atomic && self.a.is_negative() {
                return format!("({s})");
            }
            return s;
        }
        let w = if self.b.is_one() {
            "w".to_string()
        } else if (-&self.b).is_one() {
            "-w".to_string()
        } else {
            format!("{}*w", fmt_q(&self.b))
        };
        if self.a.is_zero() {
            if atomic && self.b.is_negative() {
                return format!("({w})");
            }
            return w;
        }
        let body =
            if w.starts_with('-') { format!("{}{}", fmt_q(&self.a), w) } else { format!("{}+{}", fmt_q(&self.a), w) };
        if atomic {
            format!("({body})")
        } else {
            body
        }
    }
}

impl Field for Eisenstein {
    const LEVEL: usize = 0;

    fn zero() -> Self {
        Eisenstein { a: BigRational::zero(), b: BigRational::zero() }
    }

    fn one() -> Self {
        Eisenstein { a: BigRational::one(), b: BigRational::zero() }
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    fn plus(&self, rhs: &Self) -> Self {
        Eisenstein { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }

    fn minus(&self, rhs: &Self) -> Self {
        Eisenstein { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }

    fn times(&self, rhs: &Self) -> Self {
        if self.b.is_zero() {
            return rhs.scale(&self.a);
        }
        if rhs.b.is_zero() {
            return self.scale(&rhs.a);
        }
        // (a + bω)(c + dω) = (ac - bd) + (ad + bc - bd)ω
        let bd = &self.b * &rhs.b;
        Eisenstein { a: &self.a * &rhs.a - &bd, b: &self.a * &rhs.b + &self.b * &rhs.a - bd }
    }

    fn negated(&self) -> Self {
        Eisenstein { a: -&self.a, b: -&self.b }
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.b.is_zero() {
            return Some(Self::rational(self.a.recip()));
        }
        let n = self.norm().recip();
        Some(self.conjugate().scale(&n))
    }

    fn from_i64(n: i64) -> Self {
        Self::int(n)
    }

    fn reduce(&self, m: &Modular) -> Option<u64> {
        let red = |r: &BigRational| -> Option<u64> {
            let d = m.reduce_int(r.denom());
            Some(m.mul(m.reduce_int(r.numer()), m.inv(d)?))
        };
        let a = red(&self.a)?;
        if self.b.is_zero() {
            return Some(a);
        }
        Some(m.add(a, m.mul(red(&self.b)?, m.omega)))
    }

    fn weight(&self) -> usize {
        (self.a.numer().bits() + self.a.denom().bits() + self.b.numer().bits() + self.b.denom().bits()) as usize / 32
            + 1
    }
}

impl fmt::Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn omega_squared_is_minus_one_minus_omega() {
        let w = Eisenstein::omega();
        let w2 = w.times(&w);
        assert_eq!(w2, Eisenstein::int(-1).minus(&w));
        assert_eq!(w2.times(&w), Eisenstein::one());
    }

    #[test]
    fn inverse_via_norm() {
        let z = Eisenstein::new(q(3, 2), q(-5, 7));
        let zi = z.inverse().unwrap();
        assert_eq!(z.times(&zi), Eisenstein::one());
        assert!(Eisenstein::zero().inverse().is_none());
    }

    #[test]
    fn conjugation_is_multiplicative() {
        let u = Eisenstein::new(q(1, 3), q(2, 1));
        let v = Eisenstein::new(q(-4, 1), q(1, 5));
        assert_eq!(u.times(&v).conjugate(), u.conjugate().times(&v.conjugate()));
        assert_eq!(u.plus(&v).conjugate(), u.conjugate().plus(&v.conjugate()));
    }

    #[test]
    fn reduction_respects_products() {
        let m = Modular::get();
        let u = Eisenstein::new(q(1, 3), q(2, 1));
        let v = Eisenstein::new(q(-4, 1), q(1, 5));
        let lhs = u.times(&v).reduce(m).unwrap();
        let rhs = m.mul(u.reduce(m).unwrap(), v.reduce(m).unwrap());
        assert_eq!(lhs, rhs);
    }
}
