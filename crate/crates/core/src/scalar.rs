//! The scalar field K = Q(ω)(t) with q = t⁶, q̂ = t³, ∛q = t².

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::eisenstein::Eisenstein;
use crate::field::Field;
use crate::ratfunc::RatFunc;

pub type ScalarK = RatFunc<Eisenstein>;

pub fn t_pow(e: i32) -> ScalarK {
    ScalarK::monomial(Eisenstein::one(), e)
}

/// `q^e = t^{6e}`.
pub fn q_pow(e: i32) -> ScalarK {
    t_pow(6 * e)
}

/// `q̂^e = t^{3e}`.
pub fn qh_pow(e: i32) -> ScalarK {
    t_pow(3 * e)
}

/// `p = ∛(q⁻¹) = t⁻²`.
pub fn p_pow(e: i32) -> ScalarK {
    t_pow(-2 * e)
}

pub fn omega() -> ScalarK {
    ScalarK::constant(Eisenstein::omega())
}

pub fn omega_pow(e: i32) -> ScalarK {
    match e.rem_euclid(3) {
        0 => ScalarK::one(),
        1 => omega(),
        _ => ScalarK::constant(Eisenstein::omega().times(&Eisenstein::omega())),
    }
}

pub fn int(n: i64) -> ScalarK {
    ScalarK::from_i64(n)
}

pub fn rational(n: i64, d: i64) -> ScalarK {
    ScalarK::constant(Eisenstein::rational(BigRational::new(BigInt::from(n), BigInt::from(d))))
}

/// Render a power of t using the most natural generator.
fn t_monomial(e: i32) -> String {
    if e % 6 == 0 {
        match e / 6 {
            1 => "q".into(),
            k => format!("q^{k}"),
        }
    } else if e % 3 == 0 {
        match e / 3 {
            1 => "qh".into(),
            k => format!("qh^{k}"),
        }
    } else {
        match e {
            1 => "t".into(),
            k => format!("t^{k}"),
        }
    }
}

/// Laurent polynomial in t (already shifted) as a sum of terms.
fn render_t_poly(shift: i32, coeffs: &[Eisenstein]) -> Vec<String> {
    let mut terms = Vec::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = shift + i as i32;
        let term = if e == 0 {
            c.render(false)
        } else if c.is_one() {
            t_monomial(e)
        } else if c.negated().is_one() {
            format!("-{}", t_monomial(e))
        } else if c.is_rational() {
            format!("{}*{}", c.render(false), t_monomial(e))
        } else {
            format!("{}*{}", c.render(true), t_monomial(e))
        };
        terms.push(term);
    }
    terms
}

pub(crate) fn join_terms(terms: &[String]) -> String {
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i == 0 {
            out.push_str(t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(t);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parseable rendering; `atomic` wraps sums in parentheses.
pub fn render_scalar(s: &ScalarK, atomic: bool) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let num_terms = render_t_poly(s.shift(), s.num().coeffs());
    let num = join_terms(&num_terms);
    if s.is_laurent() {
        if atomic && (num.starts_with('-') || !crate::rational_y::is_simple(&num)) {
            return format!("({num})");
        }
        return num;
    }
    let den = join_terms(&render_t_poly(0, s.den().coeffs()));
    crate::rational_y::render_fraction(&num, &den, atomic)
}
