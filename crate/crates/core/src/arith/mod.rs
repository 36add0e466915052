//! Exact base arithmetic: rationals, factorization, square classes, and the
//! Legendre and Hilbert symbols used for local classification over ℚ.

pub mod factor;
mod field;
pub mod rat;
mod square_class;
mod symbols;

pub use factor::{factorize, factorize_with, is_probable_prime, FactorBudget};
pub use field::FieldDesc;
pub use rat::{parse_rat, rat, ratio, Rat};
pub use square_class::{reduce_mod_p, square_class, SquareClass};
pub use symbols::{hilbert, legendre, Place};

pub(crate) use symbols::{hilbert_classes, is_local_square};
