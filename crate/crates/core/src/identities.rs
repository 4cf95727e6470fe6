//! Identity suites over the named elements.
//!
//! Each identity is a list of probes. An equality probe is evaluated at
//! window `P` and re-evaluated with a wider window until the two sides agree
//! on `P` coefficients past the lower valuation, disagree at some exponent,
//! or the window reaches `P + 40`.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{self, Context};
use crate::conjugation::{self, Recursion};
use crate::element::{Comparison, Element};
use crate::error::{Error, Result};
use crate::expr::eval_str;
use crate::field::Field;
use crate::morphism::{InnerObstruction, Morphism};
use crate::rational_y::{render_rational, y_pow, RationalY};
use crate::scalar::{self, int, q_pow};
use crate::skew_laurent::{SkewLaurentPoly, FG, XY};
use crate::skew_series::SkewSeries;
use crate::subalgebra::{subalgebra_express, Expression};

pub const SUITES: &[&str] = &["S1", "S2", "S3", "S4", "cross"];
const RAISE_STEP: i32 = 4;
const RAISE_LIMIT: i32 = 40;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// Lowest exponent where `lhs - rhs` is nonzero, and that coefficient.
    Fail {
        exponent: i32,
        witness: String,
    },
    /// Agreement stopped short of the requested precision.
    Inconclusive {
        reached: i32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Precision(i32),
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub suite: String,
    #[serde(flatten)]
    pub status: Status,
    pub mode: Mode,
    pub elapsed_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub type Side = Box<dyn Fn(i32) -> Result<Element> + Send + Sync>;

pub enum Probe {
    Equal {
        label: String,
        lhs: Side,
        rhs: Side,
    },
    /// A precomputed outcome; `exact` says whether it involved truncation.
    Verdict {
        label: String,
        status: Status,
        exact: bool,
        note: Option<String>,
    },
}

type Builder = Box<dyn Fn(i32) -> Result<Vec<Probe>> + Send + Sync>;

pub struct Identity {
    pub name: String,
    pub suite: String,
    build: Builder,
}

impl Identity {
    pub fn new(name: &str, suite: &str, build: impl Fn(i32) -> Result<Vec<Probe>> + Send + Sync + 'static) -> Self {
        Identity { name: name.into(), suite: suite.into(), build: Box::new(build) }
    }
}

fn text(ctx: Context, src: &str) -> Side {
    let src = src.to_string();
    Box::new(move |w| eval_str(&src, ctx, w))
}

fn eq_text(ctx: Context, lhs: &str, rhs: &str) -> Probe {
    Probe::Equal { label: format!("{lhs} = {rhs}"), lhs: text(ctx, lhs), rhs: text(ctx, rhs) }
}

fn eq(label: &str, lhs: Side, rhs: Side) -> Probe {
    Probe::Equal { label: label.into(), lhs, rhs }
}

fn constant(e: Element) -> Side {
    Box::new(move |_| Ok(e.clone()))
}

fn verdict(label: &str, ok: bool, exact: bool, witness: impl FnOnce() -> String) -> Probe {
    let status = if ok { Status::Pass } else { Status::Fail { exponent: 0, witness: witness() } };
    Probe::Verdict { label: label.into(), status, exact, note: None }
}

fn is_zero(e: &Element) -> bool {
    match e {
        Element::Exact(p) => p.is_zero(),
        Element::Series(s) => s.is_zero_to_precision(),
    }
}

fn witness(d: &RationalY, e: &Element) -> String {
    render_rational(d, e.vars().y, false)
}

/// Outcome of one equality probe and whether it was decided exactly.
pub fn check_equal(lhs: &Side, rhs: &Side, precision: i32) -> Result<(Status, bool)> {
    let mut window = precision;
    loop {
        let l = lhs(window)?;
        let r = rhs(window)?;
        match l.compare(&r)? {
            Comparison::ExactEqual => return Ok((Status::Pass, true)),
            Comparison::Differ(k, d) => {
                return Ok((Status::Fail { exponent: k, witness: witness(&d, &l) }, l.is_exact() && r.is_exact()))
            }
            Comparison::EqualTo(reached) => {
                let base = [&l, &r].into_iter().filter(|e| !is_zero(e)).filter_map(|e| e.valuation()).min();
                if reached >= precision + base.unwrap_or(0) {
                    return Ok((Status::Pass, false));
                }
                if window >= precision + RAISE_LIMIT {
                    return Ok((Status::Inconclusive { reached }, false));
                }
                window += RAISE_STEP;
            }
        }
    }
}

/// Run one identity; errors become inconclusive reports.
pub fn run_identity(id: &Identity, precision: i32) -> IdentityReport {
    let start = Instant::now();
    let mut status = Status::Pass;
    let mut exact = true;
    let mut notes = Vec::new();
    let outcome = (|| -> Result<()> {
        for probe in (id.build)(precision)? {
            let (label, s, e, note) = match probe {
                Probe::Equal { label, lhs, rhs } => {
                    let (s, e) = check_equal(&lhs, &rhs, precision)?;
                    (label, s, e, None)
                }
                Probe::Verdict { label, status, exact, note } => (label, status, exact, note),
            };
            exact &= e;
            if let Some(n) = note {
                notes.push(n);
            }
            if s != Status::Pass {
                notes.push(format!("failing: {label}"));
                if status == Status::Pass || matches!(s, Status::Fail { .. }) && !matches!(status, Status::Fail { .. })
                {
                    status = s;
                }
            }
        }
        Ok(())
    })();
    if let Err(e) = outcome {
        status = Status::Inconclusive { reached: 0 };
        exact = false;
        notes.push(format!("error: {e}"));
    }
    IdentityReport {
        name: id.name.clone(),
        suite: id.suite.clone(),
        status,
        mode: if exact { Mode::Exact } else { Mode::Precision(precision) },
        elapsed_ms: start.elapsed().as_millis(),
        detail: if notes.is_empty() { None } else { Some(notes.join("; ")) },
    }
}

/// Run identities in parallel; reports come back in input order.
pub fn run_identities(ids: &[Identity], precision: i32) -> Vec<IdentityReport> {
    ids.par_iter().map(|id| run_identity(id, precision)).collect()
}

/// `S1`..`S4`, `cross`, or `all`.
pub fn suite(name: &str) -> Result<Vec<Identity>> {
    Ok(match name {
        "S1" => suite_s1(),
        "S2" => suite_s2(),
        "S3" => suite_s3(),
        "S4" => suite_s4(),
        "cross" => suite_cross(),
        "all" => SUITES.iter().flat_map(|s| suite(s).unwrap()).collect(),
        other => {
            return Err(Error::Unknown {
                kind: "suite",
                name: other.into(),
                known: format!("{}, all", SUITES.join(", ")),
            })
        }
    })
}

pub fn run_suite(name: &str, precision: i32) -> Result<Vec<IdentityReport>> {
    Ok(run_identities(&suite(name)?, precision))
}

pub fn verify_identity(name: &str, precision: i32) -> Result<IdentityReport> {
    let ids = suite("all")?;
    let names: Vec<&str> = ids.iter().map(|i| i.name.as_str()).collect();
    let id = ids.iter().find(|i| i.name == name).ok_or_else(|| Error::Unknown {
        kind: "identity",
        name: name.into(),
        known: names.join(", "),
    })?;
    Ok(run_identity(id, precision))
}

const XYC: Context = Context::Xy;
const FGC: Context = Context::Fg;

fn text_identity(name: &str, suite: &str, ctx: Context, pairs: &'static [(&'static str, &'static str)]) -> Identity {
    Identity::new(name, suite, move |_| Ok(pairs.iter().map(|(l, r)| eq_text(ctx, l, r)).collect()))
}

fn xy_x() -> Element {
    SkewLaurentPoly::x(XY).into()
}

fn xy_y() -> Element {
    SkewLaurentPoly::y(XY).into()
}

fn suite_s1() -> Vec<Identity> {
    let s = "S1";
    vec![
        Identity::new("phi-order-2", s, |_| {
            let twice = |e: Element| -> Side {
                Box::new(move |w| {
                    let p = catalog::phi();
                    p.apply(&p.apply(&e, w)?, w)
                })
            };
            Ok(vec![
                eq("phi(phi(x)) = x", twice(xy_x()), constant(xy_x())),
                eq("phi(phi(y)) = y", twice(xy_y()), constant(xy_y())),
            ])
        }),
        text_identity("hg-relation", s, XYC, &[("a*b^-1*c - q*c*b^-1*a", "(1 - q)*b")]),
        text_identity("y-minus-yinv", s, XYC, &[("(a*b^-1*c - b)*(y - y^-1)", "q*c*b^-1*c - a*b^-1*a")]),
        text_identity("formula-for-x", s, XYC, &[("y^-1*h + q^-1*g", "x")]),
        Identity::new("lambda-xinv", s, |_| {
            let phi_of: Side = Box::new(|w| catalog::phi().apply(&eval_str("y^-1*h + q^-1*g", XYC, w)?, w));
            Ok(vec![
                eq("phi(y^-1*h + q^-1*g) = Lambda*x^-1", phi_of, text(XYC, "Lambda*x^-1")),
                eq_text(XYC, "Lambda*x^-1", "q^-1*g - y*h"),
            ])
        }),
        text_identity("x-plus-decomp", s, XYC, &[("x + Lambda*x^-1", "(y^-1 - y)*h + 2*q^-1*g")]),
        text_identity("xy-minus-decomp", s, XYC, &[("x*y - Lambda*x^-1*y^-1", "2*q*h + (y - y^-1)*g")]),
        text_identity("b-squared", s, XYC, &[("b^2", "(y - y^-1)^2 + 4")]),
        text_identity("ab-decomp", s, XYC, &[("a*b", "2*(x*y - Lambda*x^-1*y^-1) - (x + Lambda*x^-1)*(y - y^-1)")]),
        text_identity("cb-decomp", s, XYC, &[("c*b", "(x*y - Lambda*x^-1*y^-1)*(y - y^-1) + 2*(x + Lambda*x^-1)")]),
        text_identity(
            "gamma-welldef",
            s,
            XYC,
            &[
                ("b*h*b^-1", "(a*b)*(b^2)^-1"),
                ("b*g*b^-1", "(c*b)*(b^2)^-1"),
                ("b^-1*h*b", "(b^2)^-1*(a*b)"),
                ("b^-1*g*b", "(b^2)^-1*(c*b)"),
            ],
        ),
        text_identity(
            "quad-ext-conditions",
            s,
            XYC,
            &[("b^2*h*b^-2*mu", "mu*h"), ("b^2*g*b^-2*mu", "mu*g"), ("b*mu*b^-1", "mu"), ("mu", "-b^2")],
        ),
    ]
}

/// `θ₁·f` in the fg-ring, from the stated expansion of `θ₁` with `g` coefficient `g_coeff`.
fn theta1_times_f(g_coeff: &'static str) -> String {
    format!(
        "(w - w^2)^-1*qh^-2*g^-1*f^2 + ({g_coeff}*g + (qh + qh^-1)*g^-2)*f \
         + (w - w^2)*(qh^-2*g^3 + (qh^2 + 1) + qh^4*g^-3)"
    )
}

/// `θ₁·f₃ = embed(θ₁·f)`, which avoids inverting `f₃`.
fn theta1_in_fg(g_coeff: &'static str) -> impl Fn(i32) -> Result<Vec<Probe>> {
    move |_| {
        let rhs_fg = eval_str(&theta1_times_f(g_coeff), FGC, 4)?;
        let lhs: Side = Box::new(|w| Element::Exact(catalog::theta(1)).mul(&catalog::order3_f(w)?));
        let rhs: Side = Box::new(move |w| catalog::order3_embedding(w)?.apply(&rhs_fg, w));
        Ok(vec![eq("theta1*f = embed(theta1*f)", lhs, rhs)])
    }
}

fn sigma_probe(name: &'static str, factor: &'static str) -> Probe {
    let lhs: Side = Box::new(move |w| catalog::morphism("sigma", w)?.apply(&eval_str(name, XYC, w)?, w));
    eq(&format!("sigma({name}) = {factor}*{name}"), lhs, text(XYC, &format!("{factor}*{name}")))
}

fn suite_s2() -> Vec<Identity> {
    let s = "S2";
    vec![
        Identity::new("sigma-grading", s, |_| {
            let mut probes: Vec<Probe> =
                ["theta1", "theta2", "theta3"].into_iter().map(|n| sigma_probe(n, "1")).collect();
            probes.extend(["a3", "b3", "c3"].into_iter().map(|n| sigma_probe(n, "w^2")));
            Ok(probes)
        }),
        text_identity("comm-a-theta1", s, XYC, &[("a3*theta1", "theta1*a3 + (w - w^2)*(qh - qh^-1)*b3")]),
        text_identity("comm-a-theta2", s, XYC, &[("a3*theta2", "qh^2*theta2*a3 + (qh^-2 - qh^2)*c3")]),
        text_identity("comm-theta1-b", s, XYC, &[("theta1*b3", "qh^2*b3*theta1 + w*(qh^-2 - qh^2)*c3")]),
        text_identity("comm-theta2-b", s, XYC, &[("theta2*b3", "b3*theta2 + (w^2 - w)*(qh - qh^-1)*a3")]),
        text_identity(
            "g-theta1",
            s,
            XYC,
            &[("g3*theta1", "qh^-2*theta1*g3 - qh^-2*w*(qh^-2 - qh^2)*a3^-1*c3 - (w - w^2)*qh^-2*(qh - qh^-1)*g3^2")],
        ),
        text_identity(
            "g-theta2",
            s,
            XYC,
            &[("g3*theta2", "qh^-2*theta2*g3 - (w^2 - w)*(qh - qh^-1) - qh^-2*(qh^-2 - qh^2)*a3^-1*c3*g3")],
        ),
        text_identity("fg-q-commute", s, XYC, &[("f3*g3", "q*g3*f3")]),
        text_identity(
            "qgf-chain",
            s,
            XYC,
            &[
                ("qh^2*g3*f3", "qh^2*g3*theta2 - qh^2*w^2*g3*theta1*g3 + (w^2 - w)*qh*(w^2*g3^3 + qh^2)"),
                ("qh^2*g3*f3", "theta2*g3 - w^2*theta1*g3^2 + (w^2 - w)*qh^-1*(w^2*g3^3 + qh^2)"),
                ("theta2*g3 - w^2*theta1*g3^2 + (w^2 - w)*qh^-1*(w^2*g3^3 + qh^2)", "f3*g3"),
            ],
        ),
        Identity::new("theta1-in-fg", s, theta1_in_fg("(w^2*qh + w*qh^-1)")),
        Identity::new("theta1-in-fg-derived", s, theta1_in_fg("(w*qh + w^2*qh^-1)")),
        text_identity(
            "theta-bracket",
            s,
            XYC,
            &[("theta1*theta2 - qh^2*theta2*theta1", "(qh^-2 - qh^2)*theta3 - 3*qh^2 + 3")],
        ),
        Identity::new("baudry-express", s, |_| {
            let gens = [catalog::theta(1), catalog::theta(2), catalog::theta(3)];
            let mut probes = Vec::new();
            for name in ["R13", "R20", "R30"] {
                let found = subalgebra_express(&catalog::baudry(name), &gens, 4)?;
                let (ok, note) = match &found {
                    Expression::Combination(c) => (true, format!("{name} = {}", render_combination(c))),
                    Expression::NotFound => (false, format!("{name}: no combination of words of length <= 4")),
                };
                probes.push(Probe::Verdict {
                    label: format!("{name} in the algebra of theta1, theta2, theta3"),
                    status: if ok { Status::Pass } else { Status::Fail { exponent: 0, witness: "not found".into() } },
                    exact: true,
                    note: Some(note),
                });
            }
            Ok(probes)
        }),
    ]
}

/// `c*theta1*theta2 + ...`, words written with the generator names.
pub fn render_combination(c: &crate::subalgebra::Combination) -> String {
    let parts: Vec<String> = c
        .iter()
        .map(|(word, k)| {
            let w: Vec<String> = word.iter().map(|i| format!("theta{}", i + 1)).collect();
            let coeff = scalar::render_scalar(k, true);
            match (w.is_empty(), coeff.as_str()) {
                (true, _) => coeff,
                (false, "1") => w.join("*"),
                (false, _) => format!("{coeff}*{}", w.join("*")),
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn image(morphism: &'static str, arg: &'static str) -> Side {
    Box::new(move |w| catalog::morphism(morphism, w)?.apply(&eval_str(arg, XYC, w)?, w))
}

fn suite_s3() -> Vec<Identity> {
    let s = "S3";
    vec![
        Identity::new("rho-u", s, |_| Ok(vec![eq("rho(u) = -u^-1", image("rho", "u"), text(XYC, "-u^-1"))])),
        Identity::new("rho-v", s, |_| {
            Ok(vec![eq("rho(v) = (u^-1 - q*u)*v^-1", image("rho", "v"), text(XYC, "(u^-1 - q*u)*v^-1"))])
        }),
        Identity::new("eta-u", s, |_| Ok(vec![eq("eta(u) = -qh*v^-1", image("eta", "u"), text(XYC, "-qh*v^-1"))])),
        Identity::new("eta-v", s, |_| Ok(vec![eq("eta(v) = -v^-1*u", image("eta", "v"), text(XYC, "-v^-1*u"))])),
        Identity::new("eta-change-of-vars", s, |_| {
            Ok(vec![
                eq("eta(u1) = v1^-1", image("eta", "u1"), text(XYC, "v1^-1")),
                eq("eta(v1) = qh^-1*v1^-1*u1", image("eta", "v1"), text(XYC, "qh^-1*v1^-1*u1")),
            ])
        }),
    ]
}

/// `z_n` by matching the `xⁿ` coefficient of `z·G - λY^s·z`, which is affine in `z_n`.
pub fn z_oracle(sf: &conjugation::StandardFormPair, n: usize) -> Result<Vec<RationalY>> {
    let vars = sf.vars();
    let lead = SkewLaurentPoly::coefficient(vars, y_pow(sf.s).scale(&sf.lambda));
    let mut z = vec![RationalY::one()];
    for k in 1..=n {
        let residual = |zk: RationalY| -> Result<RationalY> {
            let mut c = z.clone();
            c.push(zk);
            let zs = SkewSeries::new(vars, 0, k as i32 + 1, c);
            let lhs = zs.mul(&sf.g.truncate(k as i32 + 1))?;
            let rhs = SkewSeries::from_poly(&lead, k as i32 + 1).mul(&zs)?;
            Ok(lhs.sub(&rhs)?.coeff(k as i32).unwrap_or_else(RationalY::zero))
        };
        let r0 = residual(RationalY::zero())?;
        let r1 = residual(RationalY::one())?;
        let slope = r1.minus(&r0);
        z.push(r0.negated().times(&slope.inverse().ok_or(Error::DivisionByZero)?));
    }
    Ok(z)
}

fn conjugation_verdicts(
    label: &str,
    sf: &conjugation::StandardFormPair,
    precision: i32,
    oracle_upto: usize,
) -> Result<Vec<Probe>> {
    let z = conjugation::build_z(sf, precision as usize, Recursion::Corrected)?;
    let report = conjugation::verify_conjugation(&z, precision)?;
    let mut probes = Vec::new();
    for (what, outcome) in [("z*F = f_s*X^s*z", &report.f_check), ("z*G = lambda*Y^s*z", &report.g_check)] {
        let status = match outcome {
            conjugation::CheckOutcome::Holds(_) => Status::Pass,
            conjugation::CheckOutcome::DiffersAt(k, d) => {
                Status::Fail { exponent: *k, witness: render_rational(d, sf.vars().y, false) }
            }
            conjugation::CheckOutcome::Inconclusive(p) => Status::Inconclusive { reached: *p },
        };
        probes.push(Probe::Verdict { label: format!("{label}: {what}"), status, exact: false, note: None });
    }
    if oracle_upto > 0 {
        let oracle = z_oracle(sf, oracle_upto)?;
        let mismatch = (0..=oracle_upto).find(|&n| oracle[n] != z.coefficients[n]);
        let status = match mismatch {
            None => Status::Pass,
            Some(n) => Status::Fail {
                exponent: n as i32,
                witness: render_rational(&z.coefficients[n].minus(&oracle[n]), sf.vars().y, false),
            },
        };
        probes.push(Probe::Verdict {
            label: format!("{label}: z_0..z_{oracle_upto} match coefficient matching"),
            status,
            exact: false,
            note: None,
        });
    }
    Ok(probes)
}

/// `c·g^e·f^k` in the fg-ring with `c` a product of `(q^a - g^4)` factors.
fn stated_leading(q_exp: i32) -> SkewLaurentPoly {
    let g4 = y_pow(4);
    let c = RationalY::constant(q_pow(3))
        .minus(&g4)
        .times(&RationalY::constant(q_pow(7)).minus(&g4))
        .times(&y_pow(-3))
        .scale(&q_pow(q_exp));
    SkewLaurentPoly::term(FG, c, -2)
}

fn leading_term(p: &SkewLaurentPoly) -> Result<SkewLaurentPoly> {
    let v = p.valuation()?;
    Ok(SkewLaurentPoly::term(p.vars(), p.coeff(v), v))
}

fn suite_s4() -> Vec<Identity> {
    let s = "S4";
    vec![
        Identity::new("psi-composition", s, |_| {
            let composed: Side = Box::new(|_| Ok(catalog::psi()?.image_x().clone()));
            let composed_y: Side = Box::new(|_| Ok(catalog::psi()?.image_y().clone()));
            Ok(vec![
                eq(
                    "psi(x) = x + q*y*((1 + y)*(1 + q*y))^-1*x^2",
                    composed,
                    text(XYC, "x + q*y*((1 + y)*(1 + q*y))^-1*x^2"),
                ),
                eq("psi(y) = y + q*y*(1 + y)^-1*x", composed_y, text(XYC, "y + q*y*(1 + y)^-1*x")),
            ])
        }),
        Identity::new("psi-fixed-point", s, |_| {
            let w = Element::Exact(catalog::psi_fixed());
            let psi_x: Side = Box::new(|_| Ok(catalog::psi()?.image_x().clone()));
            let cross: Side = Box::new(|_| {
                let p = catalog::psi()?;
                Element::scalar(XY, int(1)).add(p.image_y())?.mul(&Element::Exact(catalog::psi_fixed()))
            });
            let applied: Side = Box::new(move |win| catalog::psi()?.apply(&w, win));
            Ok(vec![
                eq("psi(x) = (1 + psi(y))*(1 + y)^-1*x", psi_x, cross),
                eq("psi((1 + y)^-1*x) = (1 + y)^-1*x", applied, constant(catalog::psi_fixed().into())),
            ])
        }),
        Identity::new("psi-induction", s, |_| {
            let mut probes = Vec::new();
            for n in 1..=6u32 {
                // psi fixes w, so psi(y*(1 + q*w)^(n-1)) = psi(y)*(1 + q*w)^(n-1), exactly.
                let step: Side = Box::new(move |_| {
                    let factor = eval_str("1 + q*(1 + y)^-1*x", XYC, 4)?.as_exact().unwrap().pow(n as i32 - 1)?;
                    catalog::psi()?.image_y().mul(&factor.into())
                });
                let closed: Side = Box::new(move |_| Ok(catalog::psi_power_y(n).into()));
                probes.push(eq(&format!("psi(y)*(1 + q*(1 + y)^-1*x)^{} = psi^{n}(y)", n - 1), step, closed));
                let applied: Side = Box::new(move |w| catalog::psi()?.apply(&catalog::psi_power_y(n - 1).into(), w));
                let closed: Side = Box::new(move |_| Ok(catalog::psi_power_y(n).into()));
                probes.push(eq(&format!("psi(psi^{}(y)) = psi^{n}(y)", n - 1), applied, closed));
            }
            Ok(probes)
        }),
        Identity::new("psi-degree", s, |_| {
            let mut probes = Vec::new();
            for n in 1..=6u32 {
                let d = catalog::psi_power_y(n).degree()?;
                probes.push(verdict(&format!("deg_x psi^{n}(y) = {n}"), d == n as i32, true, || format!("degree {d}")));
            }
            let obstruction = catalog::psi()?.degree_obstruction()?;
            probes.push(verdict("psi is not inner", obstruction == InnerObstruction::NotInner, true, || {
                "degree obstruction vanishes".into()
            }));
            Ok(probes)
        }),
        Identity::new("z-psi", s, |p| {
            let psi = catalog::psi()?;
            let sf = conjugation::detect_standard_form(psi.image_x(), psi.image_y(), p + 2)?;
            conjugation_verdicts("psi", &sf, p, 8)
        }),
        Identity::new("gamma-bsq-leading", s, |_| {
            let bsq = catalog::fg_element("bsq").unwrap();
            Ok(vec![eq(
                "leading f-term of b^2 = (q^3 - g^4)*(q^7 - g^4)*q^-6*g^-3*f^-2",
                constant(leading_term(&bsq)?.into()),
                constant(stated_leading(-6).into()),
            )])
        }),
        Identity::new("gamma-cb-leading", s, |_| {
            let cb = catalog::fg_element("cb").unwrap();
            Ok(vec![eq(
                "leading f-term of cb = (q^3 - g^4)*(q^7 - g^4)*q^-7*g^-3*f^-2",
                constant(leading_term(&cb)?.into()),
                constant(stated_leading(-7).into()),
            )])
        }),
        Identity::new("gamma-g-leading", s, |p| {
            let (_, gg) = catalog::gamma_images(p)?;
            let s = gg.to_series(gg.precision().unwrap_or(p));
            let v = s.valuation();
            let lead = SkewLaurentPoly::term(FG, s.leading_coeff().cloned().unwrap_or_else(RationalY::zero), v);
            Ok(vec![eq(
                "lowest term of (cb)*(b^2)^-1 = q*g",
                constant(lead.into()),
                constant(SkewLaurentPoly::coefficient(FG, y_pow(1).scale(&q_pow(1))).into()),
            )])
        }),
        Identity::new("z-gamma", s, |p| {
            let (gf, gg) = catalog::gamma_images(p + 2)?;
            let (sf, corrections) = conjugation::normalize_lambda(&gf, &gg, p + 2)?;
            let mut probes = conjugation_verdicts("gamma", &sf, p, 0)?;
            let names: Vec<String> = corrections.iter().map(describe_correction).collect();
            let z = conjugation::build_z(&sf, p as usize, Recursion::Corrected)?.as_series();
            probes.push(Probe::Verdict {
                label: "normalization".into(),
                status: Status::Pass,
                exact: false,
                note: Some(format!("corrections: {}; {}", names.join(", "), z_squared_note(&z)?)),
            });
            Ok(probes)
        }),
    ]
}

fn describe_correction(m: &Morphism) -> String {
    let vars = m.domain();
    format!("{}: {} -> {}, {} -> {}", m.name(), vars.x, m.image_x(), vars.y, m.image_y())
}

/// Whether `z²·(b²)^{±1}` is a scalar on the computed window.
fn z_squared_note(z: &SkewSeries) -> Result<String> {
    let bsq = Element::Exact(catalog::fg_element("bsq").unwrap());
    let z2 = Element::Series(z.mul(z)?);
    let mut parts = Vec::new();
    for (label, other) in [("z^2*b^2", bsq.clone()), ("z^2*b^-2", bsq.inverse(z.precision() + 4)?)] {
        let prod = z2.mul(&other)?.to_series(z.precision());
        let scalar =
            prod.terms().all(|(k, c)| if k == 0 { c.as_monomial().is_some_and(|(_, e)| e == 0) } else { c.is_zero() });
        let v = prod.valuation();
        parts.push(if scalar {
            format!("{label} is a scalar below f^{}", prod.precision())
        } else {
            format!("{label} is not a scalar (lowest term at f^{v})")
        });
    }
    Ok(parts.join(", "))
}

/// Replace whole-word names in an expression.
fn substitute(src: &str, images: &[(&str, &str)]) -> String {
    let mut out = String::new();
    let mut word = String::new();
    let flush = |word: &mut String, out: &mut String| {
        match images.iter().find(|(n, _)| *n == word.as_str()) {
            Some((_, img)) => out.push_str(&format!("({img})")),
            None => out.push_str(word),
        }
        word.clear();
    };
    for ch in src.chars() {
        if ch.is_ascii_alphanumeric() || ch == '_' {
            word.push(ch);
        } else {
            flush(&mut word, &mut out);
            out.push(ch);
        }
    }
    flush(&mut word, &mut out);
    out
}

fn embed_verdict(label: String, cmp: Comparison) -> Probe {
    match cmp {
        Comparison::Differ(k, d) => Probe::Verdict {
            label,
            status: Status::Fail { exponent: k, witness: render_rational(&d, "y", false) },
            exact: true,
            note: None,
        },
        Comparison::ExactEqual => Probe::Verdict { label, status: Status::Pass, exact: true, note: None },
        Comparison::EqualTo(r) => {
            Probe::Verdict { label, status: Status::Inconclusive { reached: r }, exact: false, note: None }
        }
    }
}

// Images of the fg generators already checked by `embedded`.
const EMBEDDED: &[(&str, &str)] = &[
    ("h", "h"),
    ("g", "g"),
    ("ymyinv", "y - y^-1"),
    ("xyminus", "x*y - Lambda*x^-1*y^-1"),
    ("xplus", "x + Lambda*x^-1"),
];

fn suite_cross() -> Vec<Identity> {
    let s = "cross";
    // embed(p) = target, checked exactly after clearing the f and g denominators of p.
    let embedded = |fg: &'static str, xy: &'static str| -> Result<Probe> {
        let p = eval_str(fg, FGC, 4)?;
        let t = eval_str(xy, XYC, 4)?;
        let (Some(p), Some(t)) = (p.as_exact(), t.as_exact()) else {
            return Err(Error::Unsupported(format!("`{fg}` and `{xy}` must both be exact")));
        };
        Ok(embed_verdict(format!("embed({fg}) = {xy}"), catalog::embed_compare(p, t)?))
    };
    // embed(name) = target through its fg definition, with the components replaced by their images.
    let via_definition = |name: &'static str, xy: &'static str| -> Result<Probe> {
        let def = catalog::definition(FGC, name)
            .ok_or_else(|| Error::Unsupported(format!("no fg definition for `{name}`")))?;
        Ok(eq_text(XYC, &substitute(def, EMBEDDED), xy))
    };
    vec![
        text_identity("fg-hg-relation", s, FGC, &[("h*g - q*g*h", "1 - q")]),
        Identity::new("fg-y-minus-yinv", s, move |_| {
            Ok(vec![eq_text(FGC, "(h*g - 1)*ymyinv", "q*g^2 - h^2"), embedded("ymyinv", "y - y^-1")?])
        }),
        Identity::new("fg-embedding", s, move |_| {
            Ok(vec![embedded("1", "1")?, embedded("g", "g")?, embedded("f*g - q*g*f", "0")?, embedded("h", "h")?])
        }),
        Identity::new("fg-x-plus", s, move |_| Ok(vec![via_definition("xplus", "x + Lambda*x^-1")?])),
        Identity::new("fg-xy-minus", s, move |_| Ok(vec![embedded("xyminus", "x*y - Lambda*x^-1*y^-1")?])),
        Identity::new("fg-b-squared", s, move |_| Ok(vec![via_definition("bsq", "b^2")?])),
        Identity::new("fg-ab", s, move |_| Ok(vec![via_definition("ab", "a*b")?])),
        Identity::new("fg-cb", s, move |_| Ok(vec![via_definition("cb", "c*b")?])),
    ]
}

/// Parse identities from lines `name | context | lhs | rhs | mode`, `#` starting a comment.
/// `mode` is `exact` or `series`; exact identities must compare exactly.
pub fn parse_suite_file(src: &str, suite_name: &str) -> Result<Vec<Identity>> {
    let mut out = Vec::new();
    for (lineno, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('|').map(str::trim).collect();
        let bad = |msg: String| Error::Parse { pos: lineno + 1, msg };
        if fields.len() != 5 {
            return Err(bad(format!("expected 5 `|`-separated fields, found {}", fields.len())));
        }
        let ctx = Context::parse(fields[1]).map_err(|e| bad(e.to_string()))?;
        let exact = match fields[4] {
            "exact" => true,
            "series" => false,
            m => return Err(bad(format!("mode must be `exact` or `series`, found `{m}`"))),
        };
        for side in [fields[2], fields[3]] {
            crate::expr::parse(side).map_err(|e| bad(format!("in `{side}`: {e}")))?;
        }
        let (lhs, rhs) = (fields[2].to_string(), fields[3].to_string());
        out.push(Identity::new(fields[0], suite_name, move |_| {
            let probe = eq_text(ctx, &lhs, &rhs);
            if !exact {
                return Ok(vec![probe]);
            }
            let (l, r) = (eval_str(&lhs, ctx, 4)?, eval_str(&rhs, ctx, 4)?);
            if !(l.is_exact() && r.is_exact()) {
                return Ok(vec![Probe::Verdict {
                    label: format!("{lhs} = {rhs}"),
                    status: Status::Inconclusive { reached: 0 },
                    exact: false,
                    note: Some("exact mode requested but a side is a truncated series".into()),
                }]);
            }
            Ok(vec![probe])
        }));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s1_is_exact_and_passes() {
        let reports = run_suite("S1", 12).unwrap();
        assert_eq!(reports.len(), 12);
        for r in &reports {
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.mode, Mode::Exact, "{}", r.name);
        }
    }

    #[test]
    fn empty_and_unknown_suites() {
        assert!(run_identities(&[], 8).is_empty());
        assert!(parse_suite_file("# nothing\n\n", "file").unwrap().is_empty());
        assert!(matches!(run_suite("S9", 8), Err(Error::Unknown { .. })));
    }

    #[test]
    fn failing_identity_has_witness() {
        let ids = parse_suite_file("bad | xy | x*y | y*x | exact", "file").unwrap();
        let r = run_identities(&ids, 8);
        assert_eq!(r[0].status, Status::Fail { exponent: 1, witness: "(-1 + q)*y".into() });
    }

    #[test]
    fn suite_file_rejects_bad_lines() {
        assert!(matches!(parse_suite_file("a | xy | x", "f"), Err(Error::Parse { pos: 1, .. })));
        assert!(parse_suite_file("a | zz | x | x | exact", "f").is_err());
        assert!(parse_suite_file("a | xy | x | x | fuzzy", "f").is_err());
        assert!(parse_suite_file("a | xy | x $ | x | exact", "f").is_err());
    }

    #[test]
    fn series_mode_from_file() {
        let ids = parse_suite_file("geo | xy | (1 - x)^-1*(1 - x) | 1 | series", "f").unwrap();
        let r = run_identities(&ids, 8);
        assert!(r[0].passed(), "{r:?}");
        assert_eq!(r[0].mode, Mode::Precision(8));
    }
}
