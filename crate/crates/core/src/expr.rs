//! Text expressions over the xy-ring and the fg-ring.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary ("*" unary)*
//! unary   := "-" unary | power
//! power   := atom ("^" ["-" | "+"] INT)?
//! atom    := INT | INT "/" INT | NAME | "(" expr ")"
//! ```
//!
//! `q`, `qh`, `w`, `t`, `p` are scalars (`q = t⁶`, `qh = t³`, `p = t⁻²`, `w = ω`).
//! `x`, `y` are the generators of the xy-ring and `f`, `g` of the fg-ring;
//! every other name is looked up in the catalog. Multiplication is always
//! written with `*`.

use std::fmt;

use crate::catalog::{self, Context};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::scalar::{self, ScalarK};
use crate::skew_laurent::SkewLaurentPoly;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TokenKind {
    Symbol,
    Integer,
    Rational,
    Operator,
    LParen,
    RParen,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub pos: usize,
}

pub const SCALAR_SYMBOLS: &[&str] = &["q", "qh", "w", "t", "p"];
pub const VARIABLES: &[&str] = &["x", "y", "f", "g"];

fn is_known_name(name: &str) -> bool {
    SCALAR_SYMBOLS.contains(&name)
        || VARIABLES.contains(&name)
        || catalog::XY_ELEMENTS.iter().chain(catalog::FG_ELEMENTS).any(|(n, _)| *n == name)
}

pub fn tokenize(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let take = |i: &mut usize, pred: &dyn Fn(char) -> bool| {
        let start = *i;
        while *i < chars.len() && pred(chars[*i].1) {
            *i += 1;
        }
        let end = chars.get(*i).map_or(src.len(), |c| c.0);
        &src[chars[start].0..end]
    };
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = |kind, text: &str| Token { kind, text: text.to_string(), pos };
        if c.is_ascii_digit() {
            let num = take(&mut i, &|c| c.is_ascii_digit()).to_string();
            if i + 1 < chars.len() && chars[i].1 == '/' && chars[i + 1].1.is_ascii_digit() {
                i += 1;
                let den = take(&mut i, &|c| c.is_ascii_digit());
                out.push(tok(TokenKind::Rational, &format!("{num}/{den}")));
            } else {
                out.push(tok(TokenKind::Integer, &num));
            }
        } else if c.is_ascii_alphabetic() {
            let name = take(&mut i, &|c| c.is_ascii_alphanumeric());
            if !is_known_name(name) {
                return Err(Error::Parse { pos, msg: format!("unknown name `{name}`") });
            }
            out.push(tok(TokenKind::Symbol, name));
        } else {
            let kind = match c {
                '+' | '-' | '*' | '^' => TokenKind::Operator,
                '(' => TokenKind::LParen,
                ')' => TokenKind::RParen,
                _ => return Err(Error::Parse { pos, msg: format!("unexpected character `{c}`") }),
            };
            out.push(tok(kind, &c.to_string()));
            i += 1;
        }
    }
    Ok(out)
}

#[derive(Clone, PartialEq, Debug)]
pub enum Literal {
    Int(i64),
    Rational(i64, i64),
    /// One of [`SCALAR_SYMBOLS`].
    Symbol(String),
}

#[derive(Clone, PartialEq, Debug)]
pub enum AstKind {
    Const(Literal),
    Var(String),
    Named(String),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, i32),
    Neg(Box<Ast>),
}

/// A node and the source position it came from. Equality ignores positions.
#[derive(Clone, Debug)]
pub struct Ast {
    pub kind: AstKind,
    pub pos: usize,
}

impl PartialEq for Ast {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

struct Parser<'a> {
    toks: &'a [Token],
    at: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.at)
    }

    fn pos(&self) -> usize {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn is_op(&self, op: &str) -> bool {
        self.peek().is_some_and(|t| t.kind == TokenKind::Operator && t.text == op)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        while self.is_op("+") || self.is_op("-") {
            let pos = self.pos();
            let plus = self.is_op("+");
            self.at += 1;
            let rhs = Box::new(self.term()?);
            let kind = if plus { AstKind::Add(Box::new(lhs), rhs) } else { AstKind::Sub(Box::new(lhs), rhs) };
            lhs = Ast { kind, pos };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        loop {
            if self.is_op("*") {
                let pos = self.pos();
                self.at += 1;
                let rhs = self.unary()?;
                lhs = Ast { kind: AstKind::Mul(Box::new(lhs), Box::new(rhs)), pos };
            } else if matches!(self.peek(), Some(t) if matches!(t.kind, TokenKind::Symbol | TokenKind::Integer | TokenKind::Rational | TokenKind::LParen))
            {
                return self.err("expected an operator; write multiplication as `*`");
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        if self.is_op("-") {
            let pos = self.pos();
            self.at += 1;
            let inner = self.unary()?;
            return Ok(Ast { kind: AstKind::Neg(Box::new(inner)), pos });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if !self.is_op("^") {
            return Ok(base);
        }
        let pos = self.pos();
        self.at += 1;
        let negative = self.is_op("-");
        if negative || self.is_op("+") {
            self.at += 1;
        }
        let Some(t) = self.peek().filter(|t| t.kind == TokenKind::Integer) else {
            return self.err("expected an integer exponent");
        };
        let e: i32 = match t.text.parse() {
            Ok(e) => e,
            Err(_) => return self.err("exponent out of range"),
        };
        self.at += 1;
        Ok(Ast { kind: AstKind::Pow(Box::new(base), if negative { -e } else { e }), pos })
    }

    fn atom(&mut self) -> Result<Ast> {
        let Some(t) = self.peek().cloned() else {
            return self.err("unexpected end of input");
        };
        let pos = t.pos;
        let int = |s: &str| s.parse::<i64>().map_err(|_| Error::Parse { pos, msg: "integer out of range".into() });
        let kind = match t.kind {
            TokenKind::Integer => AstKind::Const(Literal::Int(int(&t.text)?)),
            TokenKind::Rational => {
                let (n, d) = t.text.split_once('/').unwrap();
                let d = int(d)?;
                if d == 0 {
                    return Err(Error::Parse { pos, msg: "zero denominator".into() });
                }
                AstKind::Const(Literal::Rational(int(n)?, d))
            }
            TokenKind::Symbol if SCALAR_SYMBOLS.contains(&t.text.as_str()) => AstKind::Const(Literal::Symbol(t.text)),
            TokenKind::Symbol if VARIABLES.contains(&t.text.as_str()) => AstKind::Var(t.text),
            TokenKind::Symbol => AstKind::Named(t.text),
            TokenKind::LParen => {
                self.at += 1;
                let inner = self.expr()?;
                if self.peek().is_none_or(|t| t.kind != TokenKind::RParen) {
                    return Err(Error::Parse { pos, msg: "unbalanced parenthesis".into() });
                }
                self.at += 1;
                return Ok(inner);
            }
            TokenKind::RParen => return self.err("unexpected `)`"),
            TokenKind::Operator => return self.err(format!("dangling operator `{}`", t.text)),
        };
        self.at += 1;
        Ok(Ast { kind, pos })
    }
}

pub fn parse_tokens(toks: &[Token], src_len: usize) -> Result<Ast> {
    let mut p = Parser { toks, at: 0, end: src_len };
    let ast = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(ast)
}

pub fn parse(src: &str) -> Result<Ast> {
    parse_tokens(&tokenize(src)?, src.len())
}

fn literal_value(l: &Literal) -> ScalarK {
    match l {
        Literal::Int(n) => scalar::int(*n),
        Literal::Rational(n, d) => scalar::rational(*n, *d),
        Literal::Symbol(s) => match s.as_str() {
            "q" => scalar::q_pow(1),
            "qh" => scalar::qh_pow(1),
            "w" => scalar::omega(),
            "t" => scalar::t_pow(1),
            _ => scalar::p_pow(1),
        },
    }
}

/// Evaluate in `ctx`; results stay exact unless a non-unit is inverted, in
/// which case `window` coefficients are kept.
pub fn eval(ast: &Ast, ctx: Context, window: i32) -> Result<Element> {
    let vars = ctx.vars();
    let at = |e: Error| match e {
        Error::At { .. } => e,
        e => Error::At { pos: ast.pos, source: Box::new(e) },
    };
    Ok(match &ast.kind {
        AstKind::Const(l) => Element::scalar(vars, literal_value(l)),
        AstKind::Var(v) => match (ctx, v.as_str()) {
            (Context::Xy, "x") | (Context::Fg, "f") => SkewLaurentPoly::x(vars).into(),
            (Context::Xy, "y") | (Context::Fg, "g") => SkewLaurentPoly::y(vars).into(),
            (Context::Xy, n) => catalog::get_element(n, ctx, window).map_err(at)?.value,
            (Context::Fg, n) => {
                return Err(at(Error::Unknown { kind: "variable", name: n.into(), known: "f, g".into() }))
            }
        },
        AstKind::Named(n) => catalog::get_element(n, ctx, window).map_err(at)?.value,
        AstKind::Add(a, b) => eval(a, ctx, window)?.add(&eval(b, ctx, window)?).map_err(at)?,
        AstKind::Sub(a, b) => eval(a, ctx, window)?.sub(&eval(b, ctx, window)?).map_err(at)?,
        AstKind::Mul(a, b) => eval(a, ctx, window)?.mul(&eval(b, ctx, window)?).map_err(at)?,
        AstKind::Neg(a) => eval(a, ctx, window)?.neg(),
        AstKind::Pow(a, e) => eval(a, ctx, window)?.pow(*e, window).map_err(at)?,
    })
}

/// Parse and evaluate.
pub fn eval_str(src: &str, ctx: Context, window: i32) -> Result<Element> {
    eval(&parse(src)?, ctx, window)
}

fn prec(k: &AstKind) -> u8 {
    match k {
        AstKind::Add(..) | AstKind::Sub(..) => 1,
        AstKind::Mul(..) => 2,
        AstKind::Neg(..) => 3,
        AstKind::Pow(..) => 4,
        _ => 5,
    }
}

fn wrap(a: &Ast, min: u8) -> String {
    if prec(&a.kind) < min {
        format!("({a})")
    } else {
        a.to_string()
    }
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            AstKind::Const(Literal::Int(n)) if *n < 0 => write!(f, "({n})"),
            AstKind::Const(Literal::Int(n)) => write!(f, "{n}"),
            AstKind::Const(Literal::Rational(n, d)) if *n < 0 || *d < 0 => write!(f, "({n}/{d})"),
            AstKind::Const(Literal::Rational(n, d)) => write!(f, "{n}/{d}"),
            AstKind::Const(Literal::Symbol(s)) | AstKind::Var(s) | AstKind::Named(s) => f.write_str(s),
            AstKind::Add(a, b) => write!(f, "{} + {}", wrap(a, 1), wrap(b, 2)),
            AstKind::Sub(a, b) => write!(f, "{} - {}", wrap(a, 1), wrap(b, 2)),
            AstKind::Mul(a, b) => write!(f, "{}*{}", wrap(a, 2), wrap(b, 3)),
            AstKind::Neg(a) => write!(f, "-{}", wrap(a, 3)),
            AstKind::Pow(a, e) => write!(f, "{}^{e}", wrap(a, 5)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{get_element, phi};
    use crate::element::Comparison;
    use crate::field::Field;

    fn texts(src: &str) -> Vec<String> {
        tokenize(src).unwrap().into_iter().map(|t| t.text).collect()
    }

    #[test]
    fn tokens() {
        assert_eq!(texts("q^-1*y"), ["q", "^", "-", "1", "*", "y"]);
        assert_eq!(texts("theta1"), ["theta1"]);
        assert_eq!(texts("3/4*x"), ["3/4", "*", "x"]);
        assert_eq!(tokenize("x $ y"), Err(Error::Parse { pos: 2, msg: "unexpected character `$`".into() }));
        let toks = tokenize("qh*y^-1*x^-1").unwrap();
        assert!(toks.windows(2).all(|w| w[0].pos < w[1].pos));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse("x*(y"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse("x*"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse("x y"), Err(Error::Parse { .. })));
        assert!(matches!(parse("2x"), Err(Error::Parse { .. })));
        assert!(matches!(parse("x^y"), Err(Error::Parse { .. })));
        assert!(matches!(parse("x)"), Err(Error::Parse { .. })));
    }

    #[test]
    fn precedence() {
        assert_eq!(parse("-x^2").unwrap(), parse("-(x^2)").unwrap());
        let e = |s| eval_str(s, Context::Xy, 4).unwrap();
        assert_eq!(e("x*y^2"), e("x*(y^2)"));
        assert_ne!(e("x*y^2"), e("(x*y)^2"));
        assert_eq!(e("x - y - x"), e("-y"));
    }

    #[test]
    fn defining_relation_and_phi() {
        let zero = eval_str("x*y - q*y*x", Context::Xy, 4).unwrap();
        assert!(zero.as_exact().unwrap().is_zero());
        let px = eval_str("(y^-1 - q^-1*y)*x^-1", Context::Xy, 4).unwrap();
        assert_eq!(&px, phi().image_x());
    }

    #[test]
    fn geometric_series() {
        let s = eval_str("(1-x)^-1", Context::Xy, 4).unwrap();
        let Element::Series(s) = s else { panic!("expected a series") };
        assert_eq!(s.precision(), 4);
        assert!((0..4).all(|k| s.coeff(k).unwrap().is_one()));
    }

    #[test]
    fn fg_context() {
        let h = eval_str("g^-1*(1 - f)", Context::Fg, 4).unwrap();
        assert_eq!(h, get_element("h", Context::Fg, 4).unwrap().value);
        assert!(matches!(eval_str("x", Context::Fg, 4), Err(Error::At { pos: 0, .. })));
    }

    #[test]
    fn eval_error_positions() {
        let e = eval_str("x + (y - y)^-1", Context::Xy, 4).unwrap_err();
        assert!(matches!(e, Error::At { pos: 11, .. }), "{e:?}");
    }

    #[test]
    fn definitions_evaluate_to_catalog_values() {
        for ctx in [Context::Xy, Context::Fg] {
            let table = match ctx {
                Context::Xy => catalog::XY_ELEMENTS,
                Context::Fg => catalog::FG_ELEMENTS,
            };
            for (name, text) in table {
                let want = get_element(name, ctx, 6).unwrap().value;
                let got = eval_str(text, ctx, 6).unwrap();
                match got.compare(&want).unwrap() {
                    Comparison::ExactEqual => {}
                    Comparison::EqualTo(p) => assert!(!want.is_exact() && p >= 4, "{name}: equal only to {p}"),
                    Comparison::Differ(k, _) => panic!("{name} differs at x^{k}"),
                }
            }
        }
    }
}
