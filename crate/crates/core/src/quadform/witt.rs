//! Reduction of GW elements to anisotropic Witt representatives.

use serde::Serialize;

use super::local::{hyperbolic_data, LocalData};
use super::{DiagForm, GwElement};
use crate::arith::{FieldDesc, SquareClass};
use crate::error::Result;

/// x = anisotropic ⊕ hyperbolic_count·H in GW(k).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WittClass {
    pub anisotropic: DiagForm,
    pub hyperbolic_count: i64,
}

pub fn witt_class(x: &GwElement) -> Result<WittClass> {
    let field = x.field();
    let q = x.witt_form();
    let n = q.rank();
    let anisotropic = match field {
        FieldDesc::QuadClosed => {
            DiagForm::from_classes(field.clone(), vec![SquareClass::Trivial; n % 2])
        }
        FieldDesc::Reals => {
            let s = q.signature().unwrap_or(0);
            let c = SquareClass::Real { negative: s < 0 };
            DiagForm::from_classes(field.clone(), vec![c; s.unsigned_abs() as usize])
        }
        FieldDesc::FiniteField(_) => {
            let entries = if n % 2 == 1 {
                let mut d = q.det_class();
                if ((n - 1) / 2) % 2 == 1 {
                    d = d.mul(&SquareClass::minus_one(field));
                }
                vec![d]
            } else {
                let disc = q.signed_disc();
                if disc.is_one() {
                    Vec::new()
                } else {
                    vec![
                        SquareClass::one(field),
                        disc.mul(&SquareClass::minus_one(field)),
                    ]
                }
            };
            DiagForm::from_classes(field.clone(), entries)
        }
        FieldDesc::Rationals => rational_anisotropic(&q)?,
    };
    let hyperbolic_count = (x.rank() - anisotropic.rank() as i64) / 2;
    Ok(WittClass {
        anisotropic,
        hyperbolic_count,
    })
}

/// Subsets of the input tried before searching for fresh diagonal entries.
const MAX_SUBSETS: usize = 20_000;

/// Index sets of size r in lexicographic order, at most MAX_SUBSETS of them.
fn subsets(n: usize, r: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut idx: Option<Vec<usize>> = (r <= n).then(|| (0..r).collect());
    std::iter::from_fn(move || {
        let cur = idx.clone()?;
        let mut next = cur.clone();
        idx = (0..r).rev().find(|&i| next[i] < n - r + i).map(|i| {
            next[i] += 1;
            for j in i + 1..r {
                next[j] = next[j - 1] + 1;
            }
            next
        });
        Some(cur)
    })
    .take(MAX_SUBSETS)
}

/// Splits hyperbolic planes off a rational form as long as the remaining
/// invariants are still realized by some form; the smallest such form is
/// the anisotropic part. A sub-form of the input with the right invariants
/// is preferred over a freshly constructed one.
fn rational_anisotropic(q: &DiagForm) -> Result<DiagForm> {
    let data = LocalData::of_form(q);
    let n = q.rank();
    let s = data.signature.unsigned_abs() as usize;
    for r in (s..=n).step_by(2) {
        let k = (n - r) / 2;
        let Some(w) = data.difference(&hyperbolic_data(k)) else {
            continue;
        };
        if w.is_realizable() {
            if k == 0 {
                return Ok(q.clone());
            }
            for idx in subsets(n, r) {
                let entries: Vec<SquareClass> =
                    idx.iter().map(|&i| q.entries()[i].clone()).collect();
                let sub = DiagForm::from_classes(FieldDesc::Rationals, entries);
                if LocalData::of_form(&sub) == w {
                    return Ok(sub);
                }
            }
            return Ok(DiagForm::from_classes(FieldDesc::Rationals, w.realize()?));
        }
    }
    Ok(q.clone())
}
