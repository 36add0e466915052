//! Elements of the Grothendieck–Witt ring as formal differences of diagonal forms.

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use super::witt::{witt_class, WittClass};
use super::DiagForm;
use crate::arith::{FieldDesc, SquareClass};
use crate::error::{Error, Result};

/// `plus ⊖ minus` in GW(k). Stored unreduced; `equal` and `witt` canonicalize.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(try_from = "RawGw")]
pub struct GwElement {
    field: FieldDesc,
    plus: DiagForm,
    minus: DiagForm,
}

#[derive(Deserialize)]
struct RawGw {
    plus: DiagForm,
    #[serde(default)]
    minus: Option<DiagForm>,
}

impl TryFrom<RawGw> for GwElement {
    type Error = Error;

    fn try_from(raw: RawGw) -> Result<Self> {
        let field = raw.plus.field().clone();
        let minus = raw.minus.unwrap_or_else(|| DiagForm::empty(field.clone()));
        GwElement::new(raw.plus, minus)
    }
}

impl Serialize for GwElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GwElement", 2)?;
        st.serialize_field("minus", &self.minus)?;
        st.serialize_field("plus", &self.plus)?;
        st.end()
    }
}

impl From<DiagForm> for GwElement {
    fn from(q: DiagForm) -> Self {
        let field = q.field().clone();
        GwElement {
            minus: DiagForm::empty(field.clone()),
            field,
            plus: q,
        }
    }
}

impl GwElement {
    pub fn new(plus: DiagForm, minus: DiagForm) -> Result<GwElement> {
        plus.field().ensure_same(minus.field())?;
        Ok(GwElement {
            field: plus.field().clone(),
            plus,
            minus,
        })
    }

    pub fn zero(field: &FieldDesc) -> GwElement {
        GwElement::from(DiagForm::empty(field.clone()))
    }

    pub fn one(field: &FieldDesc) -> GwElement {
        GwElement::from(DiagForm::from_classes(
            field.clone(),
            vec![SquareClass::one(field)],
        ))
    }

    /// ⟨c⟩.
    pub fn unit(field: &FieldDesc, c: SquareClass) -> GwElement {
        GwElement::from(DiagForm::from_classes(field.clone(), vec![c]))
    }

    /// The hyperbolic plane H = ⟨1, −1⟩.
    pub fn hyperbolic(field: &FieldDesc) -> GwElement {
        GwElement::hyperbolic_multiple(field, 1)
    }

    /// m·H for any integer m.
    pub fn hyperbolic_multiple(field: &FieldDesc, m: i64) -> GwElement {
        let h = DiagForm::hyperbolic(field, m.unsigned_abs() as usize);
        let e = DiagForm::empty(field.clone());
        if m >= 0 {
            GwElement {
                field: field.clone(),
                plus: h,
                minus: e,
            }
        } else {
            GwElement {
                field: field.clone(),
                plus: e,
                minus: h,
            }
        }
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn plus(&self) -> &DiagForm {
        &self.plus
    }

    pub fn minus(&self) -> &DiagForm {
        &self.minus
    }

    pub fn rank(&self) -> i64 {
        self.plus.rank() as i64 - self.minus.rank() as i64
    }

    pub fn signature(&self) -> Option<i64> {
        Some(self.plus.signature()? - self.minus.signature()?)
    }

    pub fn sum(&self, other: &GwElement) -> Result<GwElement> {
        Ok(GwElement {
            field: self.field.clone(),
            plus: self.plus.direct_sum(&other.plus)?,
            minus: self.minus.direct_sum(&other.minus)?,
        })
    }

    pub fn neg(&self) -> GwElement {
        GwElement {
            field: self.field.clone(),
            plus: self.minus.clone(),
            minus: self.plus.clone(),
        }
    }

    pub fn difference(&self, other: &GwElement) -> Result<GwElement> {
        self.sum(&other.neg())
    }

    /// k·self for an integer k.
    pub fn times(&self, k: i64) -> GwElement {
        let base = if k >= 0 { self.clone() } else { self.neg() };
        let mut out = GwElement::zero(&self.field);
        for _ in 0..k.unsigned_abs() {
            out = out.sum(&base).expect("same field");
        }
        out
    }

    pub fn tensor(&self, other: &GwElement) -> Result<GwElement> {
        self.field.ensure_same(&other.field)?;
        let prod = |a: &DiagForm, b: &DiagForm| -> Vec<SquareClass> {
            a.entries()
                .iter()
                .flat_map(|x| b.entries().iter().map(move |y| x.mul(y)))
                .collect()
        };
        let mut plus = prod(&self.plus, &other.plus);
        plus.extend(prod(&self.minus, &other.minus));
        let mut minus = prod(&self.plus, &other.minus);
        minus.extend(prod(&self.minus, &other.plus));
        Ok(GwElement {
            field: self.field.clone(),
            plus: DiagForm::from_classes(self.field.clone(), plus),
            minus: DiagForm::from_classes(self.field.clone(), minus),
        })
    }

    /// ⟨c⟩ ⊗ self.
    pub fn scaled(&self, c: &SquareClass) -> GwElement {
        GwElement {
            field: self.field.clone(),
            plus: self.plus.scaled(c),
            minus: self.minus.scaled(c),
        }
    }

    /// Equality in GW(k): plus ⊕ other.minus ≅ other.plus ⊕ minus.
    pub fn equal(&self, other: &GwElement) -> Result<bool> {
        self.field.ensure_same(&other.field)?;
        let lhs = self.plus.direct_sum(&other.minus)?;
        let rhs = other.plus.direct_sum(&self.minus)?;
        lhs.is_isometric(&rhs)
    }

    pub fn witt(&self) -> Result<WittClass> {
        witt_class(self)
    }

    /// Equality of images in the Witt ring W(k).
    pub fn witt_equal(&self, other: &GwElement) -> Result<bool> {
        Ok(witt_class(&self.difference(other)?)?.anisotropic.is_empty())
    }

    /// A single form with the same Witt class: plus ⊕ ⟨−1⟩·minus.
    pub fn witt_form(&self) -> DiagForm {
        let m1 = SquareClass::minus_one(&self.field);
        self.plus
            .direct_sum(&self.minus.scaled(&m1))
            .expect("same field")
    }
}

/// λ² of a diagonal form: ⊕_{i<j} ⟨aᵢaⱼ⟩.
pub fn lambda2(q: &DiagForm) -> GwElement {
    let e = q.entries();
    let mut out = Vec::with_capacity(e.len() * e.len().saturating_sub(1) / 2);
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            out.push(e[i].mul(&e[j]));
        }
    }
    GwElement::from(DiagForm::from_classes(q.field().clone(), out))
}
