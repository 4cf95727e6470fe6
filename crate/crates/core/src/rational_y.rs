//! The coefficient field K(y) and the shift α: y ↦ q·y.

use crate::field::Field;
use crate::ratfunc::RatFunc;
use crate::scalar::{self, join_terms, render_scalar, ScalarK};

pub type RationalY = RatFunc<ScalarK>;

pub fn y_pow(k: i32) -> RationalY {
    RationalY::monomial(ScalarK::one(), k)
}

pub fn konst(c: ScalarK) -> RationalY {
    RationalY::constant(c)
}

/// `α^j(f)`: substitute `y -> q^j·y`.
pub fn alpha_power(f: &RationalY, j: i32) -> RationalY {
    if j == 0 {
        return f.clone();
    }
    f.twist(&scalar::q_pow(j))
}

/// Substitute `y -> c·y^e` for `e = ±1`.
pub fn substitute_unit_monomial(f: &RationalY, c: &ScalarK, e: i32) -> RationalY {
    match e {
        1 => f.twist(c),
        -1 => f.twist_invert(c),
        _ => panic!("exponent must be ±1"),
    }
}

/// `Λ = y⁻¹ - q⁻¹·y`.
pub fn lambda() -> RationalY {
    RationalY::from_terms(&[(-1, ScalarK::one()), (1, scalar::q_pow(-1).negated())])
}

/// `y + y⁻¹`.
pub fn b_elem() -> RationalY {
    RationalY::from_terms(&[(-1, ScalarK::one()), (1, ScalarK::one())])
}

fn render_poly(var: &str, shift: i32, coeffs: &[ScalarK]) -> Vec<String> {
    let mut terms = Vec::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = shift + i as i32;
        let mono = match e {
            0 => String::new(),
            1 => var.to_string(),
            k => format!("{var}^{k}"),
        };
        let term = if mono.is_empty() {
            render_scalar(c, false)
        } else if c.is_one() {
            mono
        } else if c.negated().is_one() {
            format!("-{mono}")
        } else {
            let plain = render_scalar(c, false);
            if is_simple(&plain) {
                format!("{plain}*{mono}")
            } else {
                format!("({plain})*{mono}")
            }
        };
        terms.push(term);
    }
    terms
}

/// A single signed factor that can be followed by `*` without parentheses.
pub(crate) fn is_simple(s: &str) -> bool {
    let b = s.as_bytes();
    !s.contains([' ', '+', '(']) && b.iter().enumerate().all(|(i, &c)| c != b'-' || i == 0 || b[i - 1] == b'^')
}

/// Parseable rendering in the variable `var`; `atomic` wraps sums in parentheses.
pub fn render_rational(f: &RationalY, var: &str, atomic: bool) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let num_terms = render_poly(var, f.shift(), f.num().coeffs());
    let num = join_terms(&num_terms);
    if f.is_laurent() {
        if atomic && (num.starts_with('-') || !is_simple(&num)) {
            return format!("({num})");
        }
        return num;
    }
    let den = join_terms(&render_poly(var, 0, f.den().coeffs()));
    render_fraction(&num, &den, atomic)
}

/// `num·den⁻¹`, with parentheses only where the parser needs them.
pub(crate) fn render_fraction(num: &str, den: &str, atomic: bool) -> String {
    let body = match num {
        "1" => return format!("({den})^-1"),
        "-1" => format!("-({den})^-1"),
        n if is_simple(n) && !n.starts_with('-') => return format!("{n}*({den})^-1"),
        n if is_simple(n) => format!("{n}*({den})^-1"),
        n => format!("({n})*({den})^-1"),
    };
    if atomic {
        format!("({body})")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, q_pow};

    #[test]
    fn b_squared_minus_difference_squared_is_four() {
        let b = b_elem();
        let d = y_pow(1).minus(&y_pow(-1));
        assert_eq!(b.times(&b).minus(&d.times(&d)), konst(int(4)));
    }

    #[test]
    fn alpha_of_lambda() {
        let expected = RationalY::from_terms(&[(-1, q_pow(-1)), (1, int(-1))]);
        assert_eq!(alpha_power(&lambda(), 1), expected);
        let l = lambda();
        assert_eq!(alpha_power(&alpha_power(&l, 2), -2), l);
        assert!(l.times(&l.inverse().unwrap()).is_one());
    }

    #[test]
    fn unit_monomial_substitutions() {
        let got = substitute_unit_monomial(&lambda(), &int(-1), -1);
        let expected = RationalY::from_terms(&[(1, int(-1)), (-1, q_pow(-1))]);
        assert_eq!(got, expected);
        assert_eq!(substitute_unit_monomial(&b_elem(), &int(-1), -1), b_elem().negated());
        assert_eq!(substitute_unit_monomial(&y_pow(1), &int(1), 1), y_pow(1));
    }

    #[test]
    fn rendering_is_readable() {
        assert_eq!(render_rational(&lambda(), "y", false), "y^-1 - q^-1*y");
        let f = y_pow(1).plus(&konst(int(1))).inverse().unwrap();
        assert_eq!(render_rational(&f, "y", false), "(1 + y)^-1");
        let g = f.times(&y_pow(-1)).times(&konst(q_pow(1)));
        assert_eq!(render_rational(&g, "y", true), "q*y^-1*(1 + y)^-1");
        assert_eq!(render_rational(&g.negated(), "y", true), "(-q*y^-1*(1 + y)^-1)");
    }
}
