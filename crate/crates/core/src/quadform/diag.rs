//! Diagonal forms ⟨a₁, …, aₙ⟩ and their classical invariants.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::arith::rat::rat_vec;
use crate::arith::{hilbert_classes, square_class, FieldDesc, Place, Rat, SquareClass};
use crate::error::{Error, Result};

/// A diagonal form over `field`, stored as canonical square classes.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(try_from = "RawDiag")]
pub struct DiagForm {
    field: FieldDesc,
    entries: Vec<SquareClass>,
}

#[derive(Deserialize)]
struct RawDiag {
    #[serde(default = "default_field")]
    field: FieldDesc,
    #[serde(with = "rat_vec")]
    diag: Vec<Rat>,
}

fn default_field() -> FieldDesc {
    FieldDesc::Rationals
}

impl TryFrom<RawDiag> for DiagForm {
    type Error = Error;

    fn try_from(raw: RawDiag) -> Result<Self> {
        DiagForm::from_rats(raw.field, &raw.diag)
    }
}

impl Serialize for DiagForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DiagForm", 2)?;
        st.serialize_field("diag", &self.rep_strings())?;
        st.serialize_field("field", &self.field)?;
        st.end()
    }
}

impl DiagForm {
    pub fn empty(field: FieldDesc) -> DiagForm {
        DiagForm {
            field,
            entries: Vec::new(),
        }
    }

    pub fn from_classes(field: FieldDesc, entries: Vec<SquareClass>) -> DiagForm {
        DiagForm { field, entries }
    }

    pub fn from_rats(field: FieldDesc, diag: &[Rat]) -> Result<DiagForm> {
        let entries = diag
            .iter()
            .map(|a| square_class(a, &field))
            .collect::<Result<Vec<_>>>()?;
        Ok(DiagForm { field, entries })
    }

    pub fn from_ints(field: FieldDesc, diag: &[i64]) -> Result<DiagForm> {
        let rats: Vec<Rat> = diag.iter().map(|&a| crate::arith::rat(a)).collect();
        DiagForm::from_rats(field, &rats)
    }

    /// m·⟨1, −1⟩.
    pub fn hyperbolic(field: &FieldDesc, m: usize) -> DiagForm {
        let one = SquareClass::one(field);
        let minus = SquareClass::minus_one(field);
        let entries = (0..m).flat_map(|_| [one.clone(), minus.clone()]).collect();
        DiagForm {
            field: field.clone(),
            entries,
        }
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn entries(&self) -> &[SquareClass] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn reps(&self) -> Vec<BigInt> {
        self.entries.iter().map(|c| c.rep(&self.field)).collect()
    }

    fn rep_strings(&self) -> Vec<String> {
        self.reps().iter().map(ToString::to_string).collect()
    }

    pub fn direct_sum(&self, other: &DiagForm) -> Result<DiagForm> {
        self.field.ensure_same(&other.field)?;
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(DiagForm {
            field: self.field.clone(),
            entries,
        })
    }

    /// ⟨c⟩ ⊗ self.
    pub fn scaled(&self, c: &SquareClass) -> DiagForm {
        DiagForm {
            field: self.field.clone(),
            entries: self.entries.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn det_class(&self) -> SquareClass {
        self.entries
            .iter()
            .fold(SquareClass::one(&self.field), |acc, a| acc.mul(a))
    }

    /// Square class of (−1)^{n(n−1)/2}·det.
    pub fn signed_disc(&self) -> SquareClass {
        let n = self.rank();
        let det = self.det_class();
        if (n * n.saturating_sub(1) / 2) % 2 == 1 {
            det.mul(&SquareClass::minus_one(&self.field))
        } else {
            det
        }
    }

    /// Number of positive minus number of negative entries, over ℚ and ℝ.
    pub fn signature(&self) -> Option<i64> {
        if !self.field.is_ordered() {
            return None;
        }
        Some(
            self.entries
                .iter()
                .map(|a| i64::from(a.sign().unwrap_or(1)))
                .sum(),
        )
    }

    /// Places where a Hilbert symbol between entries can be nontrivial.
    pub(crate) fn support(&self) -> BTreeSet<Place> {
        let mut places = BTreeSet::from([Place::two(), Place::Infinity]);
        for a in &self.entries {
            for p in a.primes() {
                places.insert(Place::Prime(p.clone()));
            }
        }
        places
    }

    /// ∏_{i<j} (aᵢ, aⱼ)_v, for forms over ℚ.
    pub fn hasse_at(&self, place: &Place) -> i8 {
        let mut c = 1i8;
        let mut det = match self.entries.first() {
            Some(a) => a.clone(),
            None => return 1,
        };
        for a in &self.entries[1..] {
            c *= hilbert_classes(&det, a, place);
            det = det.mul(a);
        }
        c
    }

    pub fn invariants(&self) -> FormInvariants {
        let hasse = if self.field == FieldDesc::Rationals {
            let det = self.det_class();
            self.support()
                .into_iter()
                .map(|v| {
                    let c = self.hasse_at(&v);
                    (v, c)
                })
                .filter(|(v, c)| match v {
                    Place::Prime(p) if *c == 1 => det.primes().contains(p) || *v == Place::two(),
                    _ => true,
                })
                .collect()
        } else {
            BTreeMap::new()
        };
        FormInvariants {
            field: self.field.clone(),
            rank: self.rank(),
            det_class: self.det_class(),
            signed_disc: self.signed_disc(),
            signature: self.signature(),
            hasse,
        }
    }

    /// Isometry decision by classical invariants.
    pub fn is_isometric(&self, other: &DiagForm) -> Result<bool> {
        self.field.ensure_same(&other.field)?;
        if self.rank() != other.rank() {
            return Ok(false);
        }
        Ok(match &self.field {
            FieldDesc::QuadClosed => true,
            FieldDesc::Reals => self.signature() == other.signature(),
            FieldDesc::FiniteField(_) => self.det_class() == other.det_class(),
            FieldDesc::Rationals => {
                if self.signature() != other.signature()
                    || self.signed_disc() != other.signed_disc()
                {
                    return Ok(false);
                }
                let mut places = self.support();
                places.extend(other.support());
                places.iter().all(|v| self.hasse_at(v) == other.hasse_at(v))
            }
        })
    }
}

/// Rank, discriminants, signature and Hasse invariants of a diagonal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormInvariants {
    pub field: FieldDesc,
    pub rank: usize,
    pub det_class: SquareClass,
    pub signed_disc: SquareClass,
    pub signature: Option<i64>,
    /// Hasse invariant at 2, ∞, the primes of the determinant and every
    /// place where it is −1; unlisted places are +1.
    pub hasse: BTreeMap<Place, i8>,
}

impl Serialize for FormInvariants {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FormInvariants", 6)?;
        st.serialize_field("det_class", &self.det_class.rep(&self.field).to_string())?;
        st.serialize_field("field", &self.field)?;
        if self.field == FieldDesc::Rationals {
            st.serialize_field("hasse", &self.hasse)?;
        }
        st.serialize_field("rank", &self.rank)?;
        st.serialize_field("signature", &self.signature)?;
        st.serialize_field(
            "signed_disc",
            &self.signed_disc.rep(&self.field).to_string(),
        )?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(d: &[i64]) -> DiagForm {
        DiagForm::from_ints(FieldDesc::Rationals, d).unwrap()
    }

    fn rep(c: &SquareClass) -> BigInt {
        c.rep(&FieldDesc::Rationals)
    }

    #[test]
    fn invariant_examples() {
        let h = q(&[1, -1]).invariants();
        assert_eq!(h.rank, 2);
        assert_eq!(rep(&h.signed_disc), BigInt::from(1));
        assert_eq!(h.signature, Some(0));
        assert!(h.hasse.values().all(|&c| c == 1));

        let i2 = q(&[1, 1]).invariants();
        assert_eq!(rep(&i2.signed_disc), BigInt::from(-1));
        assert_eq!(i2.signature, Some(2));

        let h2 = q(&[2, -2]).invariants();
        assert_eq!(h2.signature, Some(0));
        assert_eq!(rep(&h2.signed_disc), BigInt::from(1));
    }

    #[test]
    fn invariant_bounds() {
        for d in [&[1, 2, -3][..], &[-5, -7], &[3, 3, 3, -1, 2]] {
            let inv = q(d).invariants();
            let s = inv.signature.unwrap();
            assert!(s.unsigned_abs() as usize <= inv.rank);
            assert_eq!((inv.rank as i64 - s) % 2, 0);
            assert!(inv.hasse.values().all(|&c| c == 1 || c == -1));
        }
    }

    #[test]
    fn isometry_examples() {
        assert!(q(&[1, -1]).is_isometric(&q(&[2, -2])).unwrap());
        assert!(!q(&[1, 1]).is_isometric(&q(&[1, -1])).unwrap());
        assert!(q(&[1, 1, 1, 1]).is_isometric(&q(&[2, 2, 2, 2])).unwrap());
        assert!(q(&[1, 1]).is_isometric(&q(&[2, 2])).unwrap());
        // same rank, signature and discriminant, different Hasse invariant at 3
        assert!(!q(&[1, 1]).is_isometric(&q(&[3, 3])).unwrap());
    }

    #[test]
    fn field_mismatch() {
        let r = DiagForm::from_ints(FieldDesc::Reals, &[1]).unwrap();
        assert!(matches!(
            q(&[1]).is_isometric(&r),
            Err(Error::FieldMismatch(_, _))
        ));
    }

    #[test]
    fn other_fields() {
        let f7 = FieldDesc::finite(7u32).unwrap();
        let a = DiagForm::from_ints(f7.clone(), &[1, 1]).unwrap();
        let b = DiagForm::from_ints(f7.clone(), &[3, 5]).unwrap();
        assert!(a.is_isometric(&b).unwrap());
        let c = DiagForm::from_ints(f7, &[1, 3]).unwrap();
        assert!(!a.is_isometric(&c).unwrap());

        let r = |d: &[i64]| DiagForm::from_ints(FieldDesc::Reals, d).unwrap();
        assert!(r(&[5, -3]).is_isometric(&r(&[1, -1])).unwrap());
        let c = |d: &[i64]| DiagForm::from_ints(FieldDesc::QuadClosed, d).unwrap();
        assert!(c(&[5, -3]).is_isometric(&c(&[1, 1])).unwrap());
    }
}
