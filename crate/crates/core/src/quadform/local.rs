//! Isometry classes of rational forms described purely by their invariants
//! (rank, determinant, Hasse invariants, signature), with the
//! Hasse–Minkowski existence and representation criteria needed to split
//! off hyperbolic planes and to rebuild an explicit diagonal form.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use super::DiagForm;
use crate::arith::factor::small_primes;
use crate::arith::{hilbert_classes, is_local_square, FieldDesc, Place, SquareClass};
use crate::error::{Error, Result};

/// Invariants of a (possibly hypothetical) form over ℚ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct LocalData {
    pub rank: usize,
    pub det: SquareClass,
    /// Places where the Hasse invariant is −1.
    pub hasse_neg: BTreeSet<Place>,
    pub signature: i64,
}

/// How many squarefree integers to try before moving on to products of
/// primes in the support.
const SMALL_CANDIDATES: u64 = 200;
/// Largest number of support primes combined into candidate entries.
const MAX_SUPPORT: usize = 14;
/// Auxiliary primes tried for rank-2 constructions.
const AUX_PRIMES: usize = 5000;

fn minus_one() -> SquareClass {
    SquareClass::minus_one(&FieldDesc::Rationals)
}

fn is_squarefree(n: u64) -> bool {
    let mut p = 2;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

fn class_of_small(n: i64) -> SquareClass {
    let mut primes = Vec::new();
    let mut m = n.unsigned_abs();
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e % 2 == 1 {
            primes.push(BigUint::from(p));
        }
        p += 1;
    }
    if m > 1 {
        primes.push(BigUint::from(m));
    }
    SquareClass::rational_from_parts(n < 0, primes)
}

impl LocalData {
    pub fn of_form(q: &DiagForm) -> LocalData {
        debug_assert_eq!(q.field(), &FieldDesc::Rationals);
        let hasse_neg = q
            .support()
            .into_iter()
            .filter(|v| q.hasse_at(v) == -1)
            .collect();
        LocalData {
            rank: q.rank(),
            det: q.det_class(),
            hasse_neg,
            signature: q.signature().unwrap_or(0),
        }
    }

    fn one_dim(b: &SquareClass) -> LocalData {
        LocalData {
            rank: 1,
            det: b.clone(),
            hasse_neg: BTreeSet::new(),
            signature: if b.is_negative() { -1 } else { 1 },
        }
    }

    pub fn hasse_at(&self, v: &Place) -> i8 {
        if self.hasse_neg.contains(v) {
            -1
        } else {
            1
        }
    }

    fn negatives(&self) -> i64 {
        (self.rank as i64 - self.signature) / 2
    }

    fn places_with(&self, extra: &[&SquareClass]) -> BTreeSet<Place> {
        let mut places = BTreeSet::from([Place::two(), Place::Infinity]);
        for c in std::iter::once(&self.det).chain(extra.iter().copied()) {
            for p in c.primes() {
                places.insert(Place::Prime(p.clone()));
            }
        }
        places.extend(self.hasse_neg.iter().cloned());
        places
    }

    /// Invariants of the orthogonal sum self ⊕ other.
    #[cfg(test)]
    pub fn sum(&self, other: &LocalData) -> LocalData {
        let mut hasse_neg = BTreeSet::new();
        let mut places = self.places_with(&[&other.det]);
        places.extend(other.hasse_neg.iter().cloned());
        for v in places {
            let c =
                self.hasse_at(&v) * other.hasse_at(&v) * hilbert_classes(&self.det, &other.det, &v);
            if c == -1 {
                hasse_neg.insert(v);
            }
        }
        LocalData {
            rank: self.rank + other.rank,
            det: self.det.mul(&other.det),
            hasse_neg,
            signature: self.signature + other.signature,
        }
    }

    /// Invariants of W with W ⊕ other ≅ self.
    pub fn difference(&self, other: &LocalData) -> Option<LocalData> {
        let rank = self.rank.checked_sub(other.rank)?;
        let det = self.det.mul(&other.det);
        let mut hasse_neg = BTreeSet::new();
        let mut places = self.places_with(&[&other.det]);
        places.extend(other.hasse_neg.iter().cloned());
        for v in places {
            let c = self.hasse_at(&v) * other.hasse_at(&v) * hilbert_classes(&det, &other.det, &v);
            if c == -1 {
                hasse_neg.insert(v);
            }
        }
        Some(LocalData {
            rank,
            det,
            hasse_neg,
            signature: self.signature - other.signature,
        })
    }

    /// Whether some rational form has exactly these invariants.
    pub fn is_realizable(&self) -> bool {
        let r = self.rank as i64;
        let neg = self.negatives();
        if self.signature.abs() > r || (r - self.signature) % 2 != 0 {
            return false;
        }
        if self.det.is_negative() != (neg % 2 == 1) {
            return false;
        }
        let c_inf = if (neg * (neg - 1) / 2) % 2 == 0 {
            1
        } else {
            -1
        };
        if self.hasse_at(&Place::Infinity) != c_inf {
            return false;
        }
        if self.hasse_neg.len() % 2 != 0 {
            return false;
        }
        match self.rank {
            0 => self.det.is_one() && self.hasse_neg.is_empty(),
            1 => self.hasse_neg.is_empty(),
            2 => {
                let minus_d = self.det.mul(&minus_one());
                self.hasse_neg.iter().all(|v| !is_local_square(&minus_d, v))
            }
            _ => true,
        }
    }

    /// Whether the class represents b over ℚ (local criteria at every place).
    pub fn represents(&self, b: &SquareClass) -> bool {
        let pos = self.rank as i64 - self.negatives();
        if b.is_negative() && self.negatives() == 0 || !b.is_negative() && pos == 0 {
            return false;
        }
        match self.rank {
            0 => false,
            1 => &self.det == b,
            2 => {
                let minus_d = self.det.mul(&minus_one());
                self.places_with(&[b])
                    .iter()
                    .filter(|v| **v != Place::Infinity)
                    .all(|v| hilbert_classes(b, &minus_d, v) == self.hasse_at(v))
            }
            3 => {
                let minus_d = self.det.mul(&minus_one());
                let minus_bd = minus_d.mul(b);
                self.places_with(&[b])
                    .iter()
                    .filter(|v| **v != Place::Infinity)
                    .all(|v| {
                        !is_local_square(&minus_bd, v)
                            || hilbert_classes(&minus_one(), &minus_d, v) == self.hasse_at(v)
                    })
            }
            _ => true,
        }
    }

    /// Squarefree classes supported on 2, the determinant and the Hasse places.
    fn support_classes(&self) -> Vec<SquareClass> {
        let support: Vec<BigUint> = self
            .places_with(&[])
            .into_iter()
            .filter_map(|v| match v {
                Place::Prime(p) => Some(p),
                Place::Infinity => None,
            })
            .take(MAX_SUPPORT)
            .collect();
        let mut out = Vec::with_capacity(2 << support.len());
        for mask in 0u64..(1 << support.len()) {
            let primes: Vec<BigUint> = support
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, p)| p.clone())
                .collect();
            out.push(SquareClass::rational_from_parts(false, primes.clone()));
            out.push(SquareClass::rational_from_parts(true, primes));
        }
        out
    }

    /// Candidate diagonal entries: small squarefree integers first, then
    /// classes on the support, then those times one auxiliary prime.
    fn candidates(&self) -> impl Iterator<Item = SquareClass> + '_ {
        let small = (1..=SMALL_CANDIDATES)
            .filter(|&n| is_squarefree(n))
            .flat_map(|n| [n as i64, -(n as i64)])
            .map(class_of_small);
        let support = self.support_classes();
        let aux = {
            let support = support.clone();
            small_primes()
                .iter()
                .map(|&q| BigUint::from(q))
                .filter(move |q| !self.det.primes().contains(q))
                .take(AUX_PRIMES)
                .flat_map(move |q| {
                    let extra = SquareClass::rational_from_parts(false, vec![q]);
                    support.clone().into_iter().map(move |c| c.mul(&extra))
                })
        };
        small.chain(support).chain(aux)
    }

    /// An explicit diagonal form with these invariants.
    pub fn realize(&self) -> Result<Vec<SquareClass>> {
        debug_assert!(self.is_realizable(), "unrealizable invariants {self:?}");
        match self.rank {
            0 => return Ok(Vec::new()),
            1 => return Ok(vec![self.det.clone()]),
            _ => {}
        }
        for b in self.candidates() {
            if !self.represents(&b) {
                continue;
            }
            let Some(rest) = self.difference(&LocalData::one_dim(&b)) else {
                continue;
            };
            if !rest.is_realizable() {
                continue;
            }
            let mut out = vec![b];
            out.extend(rest.realize()?);
            return Ok(out);
        }
        Err(Error::ResourceLimit(format!(
            "no diagonal entry found for a rank-{} form within the search bound",
            self.rank
        )))
    }
}

/// Invariants of m·H.
pub(crate) fn hyperbolic_data(m: usize) -> LocalData {
    LocalData::of_form(&DiagForm::hyperbolic(&FieldDesc::Rationals, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(d: &[i64]) -> DiagForm {
        DiagForm::from_ints(FieldDesc::Rationals, d).unwrap()
    }

    #[test]
    fn sum_matches_concatenation() {
        let a = q(&[2, -3, 5]);
        let b = q(&[-7, 6]);
        let ab = a.direct_sum(&b).unwrap();
        assert_eq!(
            LocalData::of_form(&a).sum(&LocalData::of_form(&b)),
            LocalData::of_form(&ab)
        );
    }

    #[test]
    fn difference_inverts_sum() {
        let a = q(&[2, -3, 5, 11]);
        let b = q(&[-7, 6]);
        let ab = LocalData::of_form(&a.direct_sum(&b).unwrap());
        assert_eq!(
            ab.difference(&LocalData::of_form(&b)).unwrap(),
            LocalData::of_form(&a)
        );
    }

    #[test]
    fn forms_are_realizable_and_rebuild() {
        for d in [
            &[1, 1][..],
            &[3, 3],
            &[2, -5, 7],
            &[1, 1, 1, 1],
            &[-1, -2, -3, 7, 11],
        ] {
            let data = LocalData::of_form(&q(d));
            assert!(data.is_realizable());
            let rebuilt = DiagForm::from_classes(FieldDesc::Rationals, data.realize().unwrap());
            assert!(rebuilt.is_isometric(&q(d)).unwrap(), "{d:?}");
        }
    }

    #[test]
    fn unrealizable_data() {
        let mut data = LocalData::of_form(&q(&[1, 1]));
        // odd number of −1 Hasse places violates the product formula
        data.hasse_neg.insert(Place::Prime(BigUint::from(3u32)));
        assert!(!data.is_realizable());
        // rank 1 forms have trivial Hasse invariant
        let mut one = LocalData::of_form(&q(&[5]));
        one.hasse_neg.insert(Place::Prime(BigUint::from(3u32)));
        one.hasse_neg.insert(Place::Prime(BigUint::from(5u32)));
        assert!(!one.is_realizable());
    }

    #[test]
    fn representation() {
        let sum_two_squares = LocalData::of_form(&q(&[1, 1]));
        assert!(sum_two_squares.represents(&class_of_small(2)));
        assert!(sum_two_squares.represents(&class_of_small(5)));
        assert!(!sum_two_squares.represents(&class_of_small(3)));
        assert!(!sum_two_squares.represents(&class_of_small(-1)));
        let three_squares = LocalData::of_form(&q(&[1, 1, 1]));
        assert!(!three_squares.represents(&class_of_small(7)));
        assert!(three_squares.represents(&class_of_small(6)));
    }
}
