//! Exact arithmetic in the q-division ring k_q(x, y) over K = Q(ω)(t), q = t⁶.

pub mod catalog;
pub mod conjugation;
pub mod eisenstein;
pub mod element;
pub mod error;
pub mod expr;
pub mod field;
pub mod identities;
pub mod linalg;
pub mod morphism;
pub mod poly;
pub mod ratfunc;
pub mod rational_y;
pub mod scalar;
pub mod skew_laurent;
pub mod skew_series;
pub mod subalgebra;

pub use error::{Error, Result};
pub use field::Field;
