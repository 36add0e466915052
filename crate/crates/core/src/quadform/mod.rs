//! Quadratic forms over the supported fields, the Grothendieck–Witt ring
//! and reduction to anisotropic Witt representatives.

mod diag;
mod gram;
mod gw;
mod local;
mod witt;

pub use diag::{DiagForm, FormInvariants};
pub use gram::{congruent, GramForm};
pub use gw::{lambda2, GwElement};
pub use witt::{witt_class, WittClass};

use crate::error::Result;

pub fn gw_sum(x: &GwElement, y: &GwElement) -> Result<GwElement> {
    x.sum(y)
}

pub fn gw_neg(x: &GwElement) -> GwElement {
    x.neg()
}

pub fn gw_tensor(x: &GwElement, y: &GwElement) -> Result<GwElement> {
    x.tensor(y)
}

pub fn gw_lambda2(q: &DiagForm) -> GwElement {
    lambda2(q)
}

pub fn gw_equal(x: &GwElement, y: &GwElement) -> Result<bool> {
    x.equal(y)
}

pub fn witt_equal(x: &GwElement, y: &GwElement) -> Result<bool> {
    x.witt_equal(y)
}
