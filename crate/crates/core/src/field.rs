//! The field abstraction shared by every coefficient layer, and the word-size
//! prime field used to certify coprimality without running Euclid.
//!
//! Every exact layer (`Eisenstein`, `ScalarK`, `RationalY`) reduces to
//! `F_p` by sending ω to a primitive cube root of unity mod p and each
//! adjoined variable to a fixed evaluation point. A gcd that has degree zero
//! after reduction (with non-vanishing leading coefficients) is one over the
//! original field, so the expensive exact Euclid only runs when a common
//! factor really exists.

use std::fmt;
use std::sync::OnceLock;

/// A commutative field with exact arithmetic.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    /// Number of variables adjoined on top of Q(ω).
    const LEVEL: usize;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// `None` exactly when `self` is zero.
    fn inverse(&self) -> Option<Self>;
    fn from_i64(n: i64) -> Self;

    /// Image in `F_p`, or `None` when a denominator vanishes there.
    fn reduce(&self, m: &Modular) -> Option<u64>;

    /// Rough storage size, used for pivot selection.
    fn weight(&self) -> usize {
        1
    }
}

/// Arithmetic in `F_p` for `p = 2^61 - 1`.
#[derive(Debug)]
pub struct Modular {
    pub p: u64,
    pub omega: u64,
    points: [u64; 4],
}

const MERSENNE_61: u64 = (1 << 61) - 1;

impl Modular {
    pub fn get() -> &'static Modular {
        static CTX: OnceLock<Modular> = OnceLock::new();
        CTX.get_or_init(Modular::new)
    }

    fn new() -> Modular {
        let p = MERSENNE_61;
        let exp = (p - 1) / 3;
        let mut omega = 1;
        let mut base = 2u64;
        while omega == 1 {
            omega = pow_mod(base, exp, p);
            base += 1;
        }
        Modular {
            p,
            omega,
            points: [0, 1_234_567_890_123_456_789 % p, 987_654_321_987_654_321 % p, 555_555_555_555_555_557 % p],
        }
    }

    /// Evaluation point for the variable adjoined at `level` (1 = t, 2 = y).
    pub fn point(&self, level: usize) -> u64 {
        self.points[level.min(self.points.len() - 1)]
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            None
        } else {
            Some(pow_mod(a, self.p - 2, self.p))
        }
    }

    pub fn pow(&self, a: u64, e: i64) -> Option<u64> {
        if e >= 0 {
            Some(pow_mod(a, e as u64, self.p))
        } else {
            self.inv(pow_mod(a, e.unsigned_abs(), self.p))
        }
    }

    /// Reduce a signed big integer.
    pub fn reduce_int(&self, n: &num_bigint::BigInt) -> u64 {
        use num_traits::ToPrimitive;
        let m = num_bigint::BigInt::from(self.p);
        let r = ((n % &m) + &m) % &m;
        r.to_u64().expect("residue fits in u64")
    }

    /// Degree of `gcd(a, b)` in `F_p[z]`; inputs are dense, low degree first.
    pub fn gcd_degree(&self, a: &[u64], b: &[u64]) -> usize {
        let mut r0 = trim(a.to_vec());
        let mut r1 = trim(b.to_vec());
        if r0.is_empty() {
            return r1.len().saturating_sub(1);
        }
        while !r1.is_empty() {
            let r = self.rem(&r0, &r1);
            r0 = r1;
            r1 = r;
        }
        r0.len().saturating_sub(1)
    }

    fn rem(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let lead_inv = self.inv(b[db]).expect("trimmed divisor");
        while r.len() > db && !r.is_empty() {
            let top = r.len() - 1;
            let factor = self.mul(r[top], lead_inv);
            let off = top - db;
            for (i, &bi) in b.iter().enumerate() {
                r[off + i] = self.sub(r[off + i], self.mul(factor, bi));
            }
            r = trim(r);
        }
        r
    }
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}
