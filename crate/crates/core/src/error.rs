use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element with support {support:?} is not a unit of the Laurent ring; invert it as a series")]
    NotAUnit { support: Vec<i32> },
    #[error("variable pairs differ: {lhs} vs {rhs}")]
    VariableMismatch { lhs: String, rhs: String },
    #[error("series is zero to precision {0}")]
    ZeroSeries(i32),
    #[error("pole at substitution point: {0}")]
    Pole(String),
    #[error("zero element has no degree")]
    ZeroDegree,
    #[error("matrix ({a} {b}; {c} {d}) has determinant {det}, expected 1")]
    Determinant { a: i64, b: i64, c: i64, d: i64, det: i64 },
    #[error("images do not q-commute: {0}")]
    NotQCommuting(String),
    #[error("not in standard form: {0}")]
    Shape(String),
    #[error("cannot apply morphism: {0}")]
    Apply(String),
    #[error("unknown {kind} `{name}`; known: {known}")]
    Unknown { kind: &'static str, name: String, known: String },
    #[error("{0}")]
    Unsupported(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("at position {pos}: {source}")]
    At { pos: usize, source: Box<Error> },
    #[error("precision {have} is insufficient: {msg}")]
    Precision { have: i32, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
