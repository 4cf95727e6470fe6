//! Standard-form pairs and the conjugating series `z` with `zFz⁻¹ = f_s·X^s`, `zGz⁻¹ = λ·Y^s`.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::morphism::{evaluate_rational_at, ElementaryKind, Morphism};
use crate::ratfunc::FieldPow;
use crate::rational_y::{alpha_power, render_rational, substitute_unit_monomial, y_pow, RationalY};
use crate::scalar::{self, ScalarK};
use crate::skew_laurent::{SkewLaurentPoly, VarPair};
use crate::skew_series::{SeriesCmp, SkewSeries};

#[derive(Clone, Debug)]
pub struct StandardFormPair {
    pub f: SkewSeries,
    pub g: SkewSeries,
    pub s: i32,
    pub lambda: ScalarK,
    pub f_s: RationalY,
}

impl StandardFormPair {
    pub fn vars(&self) -> VarPair {
        self.f.vars()
    }

    /// `g_i`, or `None` past the known window of `G`.
    pub fn g_coeff(&self, i: i32) -> Option<RationalY> {
        self.g.coeff(i)
    }
}

/// Which form of the `z_n` recursion to run.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Recursion {
    /// `z_n = λ⁻¹·Y^{-s}·(1 - q^{ns})⁻¹·(g_n + Σ z_j·α^j(g_i))`, from matching `x^n` in `z·G = λY^s·z`.
    #[default]
    Corrected,
    /// `z_n = Y^{-s}·(1 - q^s)⁻¹·(g_n + Σ z_j·α^j(g_i))`.
    Stated,
}

#[derive(Clone, Debug)]
pub struct Conjugator {
    pub coefficients: Vec<RationalY>,
    pub source: StandardFormPair,
    pub recursion: Recursion,
}

impl Conjugator {
    /// `Σ z_n·xⁿ` with precision `N + 1`.
    pub fn as_series(&self) -> SkewSeries {
        SkewSeries::new(self.source.vars(), 0, self.coefficients.len() as i32, self.coefficients.clone())
    }
}

/// Outcome of one conjugation post-condition.
#[derive(Clone, Debug, PartialEq)]
pub enum CheckOutcome {
    Holds(i32),
    DiffersAt(i32, RationalY),
    /// Equal as far as computed, which stops short of the requested exponent.
    Inconclusive(i32),
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, CheckOutcome::Holds(_))
    }
}

#[derive(Clone, Debug)]
pub struct ConjugationReport {
    /// `z·F` against `f_s·X^s·z`.
    pub f_check: CheckOutcome,
    /// `z·G` against `λ·Y^s·z`.
    pub g_check: CheckOutcome,
}

impl ConjugationReport {
    pub fn passed(&self) -> bool {
        self.f_check.passed() && self.g_check.passed()
    }
}

fn shape(msg: String) -> Error {
    Error::Shape(msg)
}

/// Read off `s`, `λ`, `f_s` from a q-commuting pair.
pub fn detect_standard_form(f: &Element, g: &Element, window: i32) -> Result<StandardFormPair> {
    let vars = f.vars();
    let fs = f.to_series(f.valuation().unwrap_or(0) + window);
    let gs = g.to_series(window);
    if fs.is_zero_to_precision() {
        return Err(shape("F is zero to precision".into()));
    }
    let s = fs.valuation();
    if s != 1 && s != -1 {
        return Err(shape(format!("F has valuation {s}; standard form needs valuation 1 or -1")));
    }
    if gs.valuation() < 0 {
        return Err(shape(format!(
            "G has a term in {}^{}; standard form has none below exponent 0",
            vars.x,
            gs.valuation()
        )));
    }
    let g0 = gs.coeff(0).unwrap_or_else(RationalY::zero);
    let lambda = match g0.as_monomial() {
        Some((c, e)) if e == s => c,
        _ => {
            return Err(shape(format!(
                "coefficient of {}^0 in G is {}, expected a nonzero multiple of {}^{s}",
                vars.x,
                render_rational(&g0, vars.y, false),
                vars.y
            )))
        }
    };
    let xy = fs.mul(&gs)?;
    let qyx = gs.mul(&fs)?.scale(&scalar::q_pow(1));
    if let SeriesCmp::DifferAt(k, d) = xy.equal_to_precision(&qyx)? {
        return Err(Error::NotQCommuting(format!(
            "F·G - q·G·F has coefficient {} at exponent {k}",
            render_rational(&d, vars.y, false)
        )));
    }
    let f_s = fs.leading_coeff().unwrap().clone();
    Ok(StandardFormPair { f: fs, g: gs, s, lambda, f_s })
}

/// `z_0..z_N` by the chosen recursion.
pub fn build_z(sf: &StandardFormPair, n: usize, recursion: Recursion) -> Result<Conjugator> {
    let known = sf.g.precision().max(0) as usize;
    if n >= known.max(1) {
        return Err(Error::Precision {
            have: sf.g.precision(),
            msg: format!("z_{n} needs g_1..g_{n}, but G is known only below exponent {}", sf.g.precision()),
        });
    }
    let s = sf.s;
    let lambda_inv = sf.lambda.inverse().ok_or(Error::DivisionByZero)?;
    let y_ms = y_pow(-s);
    let mut z = vec![RationalY::one()];
    for k in 1..=n {
        let mut acc = sf.g_coeff(k as i32).unwrap();
        for (j, zj) in z.iter().enumerate().skip(1) {
            let gi = sf.g_coeff((k - j) as i32).unwrap();
            if gi.is_zero() || zj.is_zero() {
                continue;
            }
            acc = acc.plus(&zj.times(&alpha_power(&gi, j as i32)));
        }
        let factor = match recursion {
            Recursion::Corrected => {
                let d = ScalarK::one().minus(&scalar::q_pow(1).pow_i32((k as i32) * s));
                lambda_inv.times(&d.inverse().ok_or(Error::DivisionByZero)?)
            }
            Recursion::Stated => {
                let d = ScalarK::one().minus(&scalar::q_pow(s));
                d.inverse().ok_or(Error::DivisionByZero)?
            }
        };
        z.push(y_ms.times(&acc).scale(&factor));
    }
    Ok(Conjugator { coefficients: z, source: sf.clone(), recursion })
}

fn outcome(cmp: SeriesCmp, want: i32) -> CheckOutcome {
    match cmp {
        SeriesCmp::DifferAt(k, d) => CheckOutcome::DiffersAt(k, d),
        SeriesCmp::Equal(p) if p >= want => CheckOutcome::Holds(p),
        SeriesCmp::Equal(p) => CheckOutcome::Inconclusive(p),
    }
}

/// Check `z·F = f_s·X^s·z` and `z·G = λ·Y^s·z` below exponent `precision`.
pub fn verify_conjugation(c: &Conjugator, precision: i32) -> Result<ConjugationReport> {
    let sf = &c.source;
    let vars = sf.vars();
    let z = c.as_series();
    let lead_f = SkewSeries::from_poly(&SkewLaurentPoly::term(vars, sf.f_s.clone(), sf.s), precision + 2);
    let lead_g =
        SkewSeries::from_poly(&SkewLaurentPoly::coefficient(vars, y_pow(sf.s).scale(&sf.lambda)), precision + 2);
    let zf = z.mul(&sf.f)?;
    let fz = lead_f.mul(&z)?;
    let zg = z.mul(&sf.g)?;
    let gz = lead_g.mul(&z)?;
    let want_f = precision + sf.s.min(0);
    Ok(ConjugationReport {
        f_check: outcome(zf.equal_to_precision(&fz)?, want_f),
        g_check: outcome(zg.equal_to_precision(&gz)?, precision),
    })
}

/// `z·p·z⁻¹`.
pub fn conjugate(z: &Element, p: &Element, window: i32) -> Result<Element> {
    let zi = z.inverse(window)?;
    z.mul(p)?.mul(&zi)
}

/// Scale `G` to `λ = 1` and list the corrections that bring `(F, G)` to
/// `λ = 1`, `f_s = 1`: `h_Y(λ⁻¹)`, then `h_X(b)` with `b(Y) = f_s(Y^s)⁻¹`.
///
/// `F` is returned unchanged. `h_X` fixes `Y`, so `z` is the same for the
/// fully normalized pair, and `z·F·z⁻¹ = f_s·X^s` is equivalent to
/// `z·b(G)·F·z⁻¹ = X^s`. This avoids expanding `b(G)·F`, whose coefficients
/// grow quickly.
pub fn normalize_lambda(
    image_x: &Element,
    image_y: &Element,
    window: i32,
) -> Result<(StandardFormPair, Vec<Morphism>)> {
    let vars = image_x.vars();
    let mut sf = detect_standard_form(image_x, image_y, window)?;
    let mut corrections = Vec::new();
    if !sf.lambda.is_one() {
        let inv = sf.lambda.inverse().ok_or(Error::DivisionByZero)?;
        corrections.push(Morphism::elementary(ElementaryKind::HY(RationalY::constant(inv.clone())), vars, window)?);
        sf.g = sf.g.scale(&inv);
        sf.lambda = ScalarK::one();
    }
    if !sf.f_s.is_one() {
        let b = leading_correction(&sf)?;
        corrections.push(Morphism::elementary(ElementaryKind::HX(b), vars, window)?);
    }
    Ok((sf, corrections))
}

/// `b(Y) = f_s(Y^s)⁻¹`.
fn leading_correction(sf: &StandardFormPair) -> Result<RationalY> {
    substitute_unit_monomial(&sf.f_s, &ScalarK::one(), sf.s).inverse().ok_or(Error::DivisionByZero)
}

/// Bring `(F, G)` to standard form with `λ = 1` and `f_s = 1`; see [`normalize_lambda`].
///
/// Returns the normalized pair and the corrections in the order applied.
pub fn normalize_to_standard_form(
    image_x: &Element,
    image_y: &Element,
    window: i32,
) -> Result<(StandardFormPair, Vec<Morphism>)> {
    let vars = image_x.vars();
    let (sf, corrections) = normalize_lambda(image_x, image_y, window)?;
    let mut f1 = sf.f.clone();
    if !sf.f_s.is_one() {
        let bg = evaluate_rational_at(&leading_correction(&sf)?, &sf.g)?;
        f1 = bg.mul(&f1)?;
    }
    let normalized = detect_standard_form(&Element::Series(f1), &Element::Series(sf.g), window)?;
    if !normalized.f_s.is_one() || !normalized.lambda.is_one() {
        return Err(shape(format!(
            "normalization left leading coefficient {} and λ = {}",
            render_rational(&normalized.f_s, vars.y, false),
            scalar::render_scalar(&normalized.lambda, false)
        )));
    }
    Ok((normalized, corrections))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational_y::konst;
    use crate::scalar::{int, q_pow};
    use crate::skew_laurent::XY;

    fn x() -> SkewLaurentPoly {
        SkewLaurentPoly::x(XY)
    }

    fn y() -> SkewLaurentPoly {
        SkewLaurentPoly::y(XY)
    }

    #[test]
    fn trivial_pair() {
        let sf = detect_standard_form(&x().into(), &y().into(), 8).unwrap();
        assert_eq!(sf.s, 1);
        assert!(sf.lambda.is_one());
        let z = build_z(&sf, 5, Recursion::Corrected).unwrap();
        assert!(z.coefficients[1..].iter().all(|c| c.is_zero()));
        assert!(verify_conjugation(&z, 5).unwrap().passed());
    }

    #[test]
    fn rejects_bad_valuation() {
        let x2 = x().mul(&x()).unwrap();
        assert!(matches!(detect_standard_form(&x2.into(), &y().into(), 8), Err(Error::Shape(_))));
    }

    #[test]
    fn conjugate_by_y() {
        let yx = conjugate(&y().into(), &x().into(), 4).unwrap();
        assert_eq!(yx, Element::Exact(x().scale(&q_pow(-1))));
    }

    #[test]
    fn normalization_adds_hx_for_nonunit_leading_coefficient() {
        let f = SkewLaurentPoly::term(XY, y_pow(1), 1);
        let (sf, corr) = normalize_to_standard_form(&f.into(), &y().into(), 6).unwrap();
        assert_eq!(corr.len(), 1);
        assert!(sf.f_s.is_one());
        let one_plus_y = y_pow(1).plus(&konst(int(1)));
        let f = SkewLaurentPoly::term(XY, one_plus_y, 1);
        let g = y().scale(&int(2));
        let (_, corr) = normalize_to_standard_form(&f.into(), &g.into(), 6).unwrap();
        assert_eq!(corr.len(), 2);
    }

    #[test]
    fn lambda_normalization_keeps_z() {
        // ψ after x ↦ (1+y)x, y ↦ 2y.
        let psi = crate::catalog::psi().unwrap();
        let one_plus_y = SkewLaurentPoly::coefficient(XY, y_pow(1).plus(&konst(int(1))));
        let f = psi.apply(&one_plus_y.mul(&x()).unwrap().into(), 8).unwrap();
        let g = psi.image_y().scale(&int(2));
        let (partial, corr) = normalize_lambda(&f, &g, 8).unwrap();
        assert_eq!(corr.len(), 2);
        assert!(partial.lambda.is_one());
        let (full, _) = normalize_to_standard_form(&f, &g, 8).unwrap();
        let z1 = build_z(&partial, 5, Recursion::Corrected).unwrap();
        let z2 = build_z(&full, 5, Recursion::Corrected).unwrap();
        assert_eq!(z1.coefficients, z2.coefficients);
        assert!(verify_conjugation(&z1, 5).unwrap().passed());
        assert!(verify_conjugation(&z2, 5).unwrap().passed());
    }
}
