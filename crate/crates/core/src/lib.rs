//! Exact computation of Grothendieck–Witt valued Euler characteristics of
//! smooth projective varieties over ℚ, with the quadratic-form, trace-form
//! and Hodge-number machinery they are built from.

pub mod acceptance;
pub mod arith;
pub mod chi;
pub mod cli;
pub mod error;
pub mod hodge;
pub mod quadform;
pub mod traceform;

pub use error::{Error, Result};
