//! Dense univariate polynomials over a [`Field`], lowest degree first.

use crate::field::{Field, Modular};

#[derive(Clone, PartialEq, Debug)]
pub struct Poly<C: Field> {
    coeffs: Vec<C>,
}

impl<C: Field> Poly<C> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c·z^k`.
    pub fn monomial(c: C, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
    }

    /// Number of low-order zero coefficients.
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divide by `z^k`; the caller guarantees `k <= low_order()`.
    pub fn shr(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        Poly { coeffs: self.coeffs[k.min(self.coeffs.len())..].to_vec() }
    }

    /// Multiply by `z^k`.
    pub fn shl(&self, k: usize) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.minus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.negated(),
                (None, None) => unreachable!(),
            });
        }
        Self::from_coeffs(out)
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| c.negated()).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a.times(c)).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.coeffs.len() == 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.coeffs.len() == 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        let mut out: Vec<Option<C>> = vec![None; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let p = a.times(b);
                out[i + j] = Some(match out[i + j].take() {
                    Some(acc) => acc.plus(&p),
                    None => p,
                });
            }
        }
        Self::from_coeffs(out.into_iter().map(|c| c.unwrap_or_else(C::zero)).collect())
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.coeffs.len().checked_sub(1).expect("division by the zero polynomial");
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let lead = d.coeffs[dd].clone();
        let lead_inv = if lead.is_one() { None } else { Some(lead.inverse().expect("nonzero lead")) };
        let mut r = self.coeffs.clone();
        let mut q = vec![C::zero(); r.len() - dd];
        for top in (dd..r.len()).rev() {
            if r[top].is_zero() {
                continue;
            }
            let factor = match &lead_inv {
                Some(li) => r[top].times(li),
                None => r[top].clone(),
            };
            let off = top - dd;
            for (i, di) in d.coeffs.iter().enumerate().take(dd) {
                if !di.is_zero() {
                    r[off + i] = r[off + i].minus(&factor.times(di));
                }
            }
            r[top] = C::zero();
            q[off] = factor;
        }
        r.truncate(dd);
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, d: &Self) -> Self {
        if d.is_one() {
            return self.clone();
        }
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Divide through by the leading coefficient; returns the quotient and that coefficient.
    pub fn monic(&self) -> (Self, C) {
        match self.lead() {
            None => (Self::zero(), C::one()),
            Some(l) if l.is_one() => (self.clone(), C::one()),
            Some(l) => {
                let l = l.clone();
                (self.scale(&l.inverse().expect("nonzero lead")), l)
            }
        }
    }

    /// `p(c·z)`.
    pub fn twist(&self, c: &C) -> Self {
        if c.is_one() {
            return self.clone();
        }
        let mut pw = C::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                pw = pw.times(c);
            }
            out.push(if a.is_zero() { C::zero() } else { a.times(&pw) });
        }
        Self::from_coeffs(out)
    }

    /// `z^deg · p(1/z)` with `deg = degree()`.
    pub fn reverse(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::from_coeffs(c)
    }

    pub fn map<D: Field>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// Horner evaluation at a field element.
    pub fn eval(&self, z: &C) -> C {
        let mut acc = C::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc.times(z).plus(a);
        }
        acc
    }

    /// Coefficients reduced to `F_p`.
    pub fn reduce_coeffs(&self, m: &Modular) -> Option<Vec<u64>> {
        self.coeffs.iter().map(|c| c.reduce(m)).collect()
    }

    /// Image in `F_p` with the variable sent to `point`.
    pub fn reduce_at(&self, m: &Modular, point: u64) -> Option<u64> {
        let mut acc = 0u64;
        for a in self.coeffs.iter().rev() {
            acc = m.add(m.mul(acc, point), a.reduce(m)?);
        }
        Some(acc)
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.monic().0;
        }
        if b.is_zero() {
            return a.monic().0;
        }
        if a.degree() == 0 || b.degree() == 0 || certainly_coprime(a, b) {
            return Self::one();
        }
        let (mut r0, mut r1) =
            if a.degree() >= b.degree() { (a.monic().0, b.monic().0) } else { (b.monic().0, a.monic().0) };
        while !r1.is_zero() {
            let (_, r) = r0.div_rem(&r1);
            r0 = r1;
            r1 = r.monic().0;
        }
        r0
    }

    pub fn weight(&self) -> usize {
        self.coeffs.iter().map(|c| c.weight()).sum()
    }
}

/// True when the reductions mod p have nonzero leading coefficients and a
/// trivial gcd. Then the resultant of `a` and `b` reduces to the (nonzero)
/// resultant of the images, so it is nonzero and `a`, `b` are coprime.
/// `false` means "unknown".
fn certainly_coprime<C: Field>(a: &Poly<C>, b: &Poly<C>) -> bool {
    let m = Modular::get();
    let (Some(ra), Some(rb)) = (a.reduce_coeffs(m), b.reduce_coeffs(m)) else {
        return false;
    };
    if ra.last() == Some(&0) || rb.last() == Some(&0) {
        return false;
    }
    m.gcd_degree(&ra, &rb) == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::Eisenstein;

    fn p(cs: &[i64]) -> Poly<Eisenstein> {
        Poly::from_coeffs(cs.iter().map(|&c| Eisenstein::int(c)).collect())
    }

    #[test]
    fn product_and_division_round_trip() {
        let a = p(&[1, 2, 3]);
        let b = p(&[-1, 0, 1]);
        let ab = a.mul(&b);
        let (q, r) = ab.div_rem(&b);
        assert_eq!(q, a);
        assert!(r.is_zero());
        let (q, r) = ab.add(&p(&[5])).div_rem(&b);
        assert_eq!(q, a);
        assert_eq!(r, p(&[5]));
    }

    #[test]
    fn gcd_finds_shared_linear_factor() {
        let common = p(&[2, 1]);
        let a = common.mul(&p(&[3, 1]));
        let b = common.mul(&p(&[-7, 0, 1]));
        assert_eq!(Poly::gcd(&a, &b), common);
        assert_eq!(Poly::gcd(&p(&[3, 1]), &p(&[-7, 0, 1])), Poly::one());
    }

    #[test]
    fn twist_and_reverse() {
        let a = p(&[1, 1, 1]);
        assert_eq!(a.twist(&Eisenstein::int(2)), p(&[1, 2, 4]));
        assert_eq!(p(&[1, 2, 3]).reverse(), p(&[3, 2, 1]));
        assert_eq!(p(&[0, 0, 5]).low_order(), 2);
        assert_eq!(p(&[0, 0, 5]).shr(2), p(&[5]));
    }
}
