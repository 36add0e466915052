//! Quadratic Euler characteristics χ(X/ℚ) ∈ GW(ℚ) for a small catalog of
//! varieties, together with rank and signature cross-checks.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::rat::rat_vec;
use crate::arith::{rat, FieldDesc, Rat, SquareClass};
use crate::error::{Error, Result};
use crate::hodge::{self, HodgeDiamond};
use crate::quadform::{witt_class, DiagForm, GwElement, WittClass};
use crate::traceform::{transfer, EtaleAlgebra, Poly};

fn one_poly() -> Poly {
    Poly::from_ints(&[1])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum VarietySpec {
    Curve {
        genus: u64,
    },
    ProjSpace {
        n: usize,
    },
    Hypersurface {
        n: usize,
        d: u64,
    },
    QuadricSurface {
        #[serde(with = "rat_vec")]
        a: Vec<Rat>,
    },
    BlowupP2 {
        f: Poly,
    },
    ConicBundle {
        genus: u64,
        f: Poly,
        #[serde(default = "one_poly")]
        delta: Poly,
    },
    #[serde(alias = "cubic_surface")]
    CubicSurfaceWithLine {
        f: Poly,
        #[serde(default = "one_poly")]
        delta: Poly,
    },
}

/// χ(X/ℚ) as far as it is determined by the inputs.
///
/// `gw` and `witt` are absent exactly when the middle form is unknown.
/// When present, `gw` has rank `rank` and `witt` describes the same element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChiResult {
    pub rank: i64,
    pub gw: Option<GwElement>,
    pub witt: Option<WittClass>,
    pub middle_form: Option<DiagForm>,
    pub m: i64,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// A χ computation together with the diamond it was checked against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChiReport {
    #[serde(flatten)]
    pub result: ChiResult,
    pub diamond: Option<HodgeDiamond>,
    pub checks: Vec<CrossCheck>,
}

impl ChiReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn q() -> FieldDesc {
    FieldDesc::Rationals
}

/// gw = m·H ⊕ middle, reduced in W(ℚ).
fn assemble(m: i64, middle: DiagForm, notes: Vec<String>) -> Result<ChiResult> {
    let gw = GwElement::hyperbolic_multiple(&q(), m).sum(&GwElement::from(middle.clone()))?;
    let witt = witt_class(&gw)?;
    Ok(ChiResult {
        rank: gw.rank(),
        gw: Some(gw),
        witt: Some(witt),
        middle_form: Some(middle),
        m,
        notes,
    })
}

/// χ = m·H for odd-dimensional X.
pub fn chi_odd(d: &HodgeDiamond) -> Result<ChiResult> {
    if d.dim() % 2 == 0 {
        return Err(Error::invalid(format!(
            "chi_odd needs odd dimension, got {}",
            d.dim()
        )));
    }
    let m = hodge::m_coefficient(d);
    let gw = GwElement::hyperbolic_multiple(&q(), m);
    Ok(ChiResult {
        rank: 2 * m,
        witt: Some(WittClass {
            anisotropic: DiagForm::empty(q()),
            hyperbolic_count: m,
        }),
        gw: Some(gw),
        middle_form: None,
        m,
        notes: vec![format!("odd dimension: χ = {m}·H")],
    })
}

/// χ = m·H ⊕ Q for even-dimensional X with middle form Q.
pub fn chi_even(d: &HodgeDiamond, middle: &DiagForm) -> Result<ChiResult> {
    let Some(hnn) = d.middle() else {
        return Err(Error::invalid(format!(
            "chi_even needs even dimension, got {}",
            d.dim()
        )));
    };
    q().ensure_same(middle.field())?;
    if middle.rank() as u64 != hnn {
        return Err(Error::invalid(format!(
            "middle form has rank {} but h[n][n] = {hnn}",
            middle.rank()
        )));
    }
    let m = hodge::m_coefficient(d);
    assemble(
        m,
        middle.clone(),
        vec![format!("even dimension: χ = {m}·H ⊕ Q")],
    )
}

/// Diagonal quadric surface a₀x₀² + a₁x₁² + a₂x₂² + a₃x₃² = 0.
pub fn chi_quadric_surface(a: &[Rat]) -> Result<ChiResult> {
    if a.len() != 4 {
        return Err(Error::invalid(format!(
            "a quadric surface needs 4 coefficients, got {}",
            a.len()
        )));
    }
    if let Some(i) = a.iter().position(Zero::is_zero) {
        return Err(Error::invalid(format!("quadric coefficient a{i} is zero")));
    }
    let prod: Rat = a.iter().product();
    let middle = DiagForm::from_rats(q(), &[rat(2), rat(-2) * prod])?;
    let mut res = chi_even(&hodge::hodge_hypersurface(2, 2)?, &middle)?;
    res.notes.push("middle form ⟨2⟩ ⊕ ⟨−2·a₀a₁a₂a₃⟩".into());
    Ok(res)
}

/// ⟨−1⟩ ⊗ Tr(⟨δ⟩) as a diagonal form.
fn negated_transfer(f: &Poly, delta: &Poly) -> Result<DiagForm> {
    let t = transfer(&EtaleAlgebra::new(f.clone())?, delta)?;
    Ok(t.plus().scaled(&SquareClass::minus_one(&q())))
}

fn blowup_diamond(r: u64) -> HodgeDiamond {
    HodgeDiamond::new(2, vec![vec![1, 0, 0], vec![0, 1 + r, 0], vec![0, 0, 1]])
        .expect("symmetric by construction")
}

fn conic_bundle_diamond(g: u64, r: u64) -> HodgeDiamond {
    HodgeDiamond::new(2, vec![vec![1, g, 0], vec![g, 2 + r, g], vec![0, g, 1]])
        .expect("symmetric by construction")
}

fn poly_degree(f: &Poly) -> Result<usize> {
    f.degree()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::invalid("polynomial must have degree at least 1"))
}

/// ℙ² blown up in the closed subscheme Z = V(f) of a line.
pub fn chi_blowup_p2(f: &Poly) -> Result<ChiResult> {
    let r = poly_degree(f)? as u64;
    let middle = DiagForm::from_ints(q(), &[1])?.direct_sum(&negated_transfer(f, &one_poly())?)?;
    let mut res = chi_even(&blowup_diamond(r), &middle)?;
    res.notes
        .push("middle form ⟨1⟩ ⊕ ⟨−1⟩·Tr(⟨1⟩); Witt class ⟨1⟩ − Tr(⟨1⟩)".into());
    res.notes.push(format!(
        "includes the H summand so that rank = 3 + deg f = {}; the bare ⟨1⟩ − Tr(⟨1⟩) has rank {}",
        3 + r,
        1 - r as i64
    ));
    Ok(res)
}

/// Conic bundle over a genus-g curve with degenerate fibres over V(f), twisted by δ.
pub fn chi_conic_bundle(genus: u64, f: &Poly, delta: &Poly) -> Result<ChiResult> {
    let r = poly_degree(f)? as i64;
    let g = genus as i64;
    let rank = 4 - 4 * g + r;
    let tr = transfer(&EtaleAlgebra::new(f.clone())?, delta)?;
    let target = GwElement::hyperbolic_multiple(&q(), 2 - 2 * g).difference(&tr)?;
    let anisotropic = witt_class(&target)?.anisotropic;
    let count = (rank - anisotropic.rank() as i64) / 2;
    let gw =
        GwElement::from(anisotropic.clone()).sum(&GwElement::hyperbolic_multiple(&q(), count))?;
    let middle = DiagForm::hyperbolic(&q(), 1).direct_sum(&negated_transfer(f, delta)?)?;
    let m = 1 - 2 * g;
    Ok(ChiResult {
        rank,
        gw: Some(gw),
        witt: Some(WittClass {
            anisotropic,
            hyperbolic_count: count,
        }),
        middle_form: Some(middle),
        m,
        notes: vec![
            format!("rank 4 − 4g + deg f = {rank} from the fibration"),
            format!(
                "Witt class of (2 − 2g)·H − Tr(⟨δ⟩), padded with hyperbolic planes to rank {rank}"
            ),
            format!("middle form ⟨1, −1⟩ ⊕ ⟨−1⟩·Tr(⟨δ⟩) with m = 1 − 2g = {m}"),
        ],
    })
}

/// Smooth cubic surface containing a line, viewed as a conic bundle over ℙ¹
/// with degenerate fibres over V(f), deg f = 5.
pub fn chi_cubic_surface(f: &Poly, delta: &Poly) -> Result<ChiResult> {
    if f.degree() != Some(5) {
        return Err(Error::invalid(format!(
            "cubic surface needs a degree-5 polynomial, got degree {}",
            f.degree().map_or(-1, |d| d as i64)
        )));
    }
    let mut res = chi_conic_bundle(0, f, delta)?;
    debug_assert_eq!(res.rank, 9);
    let sig = res.gw.as_ref().and_then(GwElement::signature).unwrap_or(0);
    debug_assert!(sig.abs() <= 7, "signature {sig} exceeds h^{{1,1}} = 7");
    res.notes
        .push("conic bundle over ℙ¹ with five degenerate fibres; h^{1,1} = 7".into());
    Ok(res)
}

/// ⊕ᵢ Tr(⟨δᵢ⟩) over the given étale algebras.
pub fn twist_permutation_diagonal(parts: &[(EtaleAlgebra, Poly)]) -> Result<GwElement> {
    parts
        .iter()
        .try_fold(GwElement::zero(&q()), |acc, (a, delta)| {
            acc.sum(&transfer(a, delta)?)
        })
}

/// Rank, parity, middle-form and signature checks of a result.
pub fn verify_cross_checks(res: &ChiResult, d: Option<&HodgeDiamond>) -> Vec<CrossCheck> {
    let mut out = Vec::new();
    let mut check = |name: &str, passed: bool, detail: String| {
        out.push(CrossCheck {
            name: name.into(),
            passed,
            detail,
        })
    };
    if let Some(d) = d {
        let e = hodge::euler_rank(d);
        check(
            "rank_vs_euler_rank",
            e == res.rank,
            format!("rank {} vs euler_rank {e}", res.rank),
        );
    }
    if let Some(w) = &res.witt {
        let wr = w.anisotropic.rank() as i64;
        check(
            "parity",
            (res.rank - wr) % 2 == 0,
            format!("rank {} vs Witt representative rank {wr}", res.rank),
        );
    }
    if let Some(gw) = &res.gw {
        check(
            "gw_rank",
            gw.rank() == res.rank,
            format!("rank(gw) {} vs rank {}", gw.rank(), res.rank),
        );
        if let Some(mid) = &res.middle_form {
            let ok = GwElement::hyperbolic_multiple(gw.field(), res.m)
                .sum(&GwElement::from(mid.clone()))
                .and_then(|x| x.equal(gw))
                .unwrap_or(false);
            check("middle_decomposition", ok, format!("gw = {}·H ⊕ Q", res.m));
        }
        if let (Some(d), Some(sig)) = (d, gw.signature()) {
            if let Some(hnn) = d.middle() {
                check(
                    "signature_bound",
                    sig.unsigned_abs() <= hnn,
                    format!("|signature| {} ≤ h[n][n] = {hnn}", sig.abs()),
                );
            }
        }
    }
    out
}

/// The Hodge diamond used for cross-checks, when the catalog knows one.
pub fn diamond_of(spec: &VarietySpec) -> Result<Option<HodgeDiamond>> {
    Ok(Some(match spec {
        VarietySpec::Curve { genus } => hodge::curve(*genus),
        VarietySpec::ProjSpace { n } => hodge::proj_space(*n),
        VarietySpec::Hypersurface { n, d } => hodge::hodge_hypersurface(*n, *d)?,
        VarietySpec::QuadricSurface { .. } => hodge::hodge_hypersurface(2, 2)?,
        VarietySpec::BlowupP2 { f } => blowup_diamond(poly_degree(f)? as u64),
        VarietySpec::ConicBundle { genus, f, .. } => {
            conic_bundle_diamond(*genus, poly_degree(f)? as u64)
        }
        VarietySpec::CubicSurfaceWithLine { .. } => hodge::hodge_hypersurface(2, 3)?,
    }))
}

pub fn chi(spec: &VarietySpec) -> Result<ChiResult> {
    match spec {
        VarietySpec::Curve { genus } => chi_odd(&hodge::curve(*genus)),
        VarietySpec::ProjSpace { n } => {
            let d = hodge::proj_space(*n);
            if n % 2 == 1 {
                chi_odd(&d)
            } else {
                let mut res = chi_even(&d, &DiagForm::from_ints(q(), &[1])?)?;
                res.notes
                    .push("middle form ⟨1⟩ from the degree pairing".into());
                Ok(res)
            }
        }
        VarietySpec::Hypersurface { n, d } => {
            let diamond = hodge::hodge_hypersurface(*n, *d)?;
            if n % 2 == 1 {
                return chi_odd(&diamond);
            }
            let hnn = diamond.middle().unwrap_or(0);
            let m = hodge::m_coefficient(&diamond);
            Ok(ChiResult {
                rank: hodge::euler_rank(&diamond),
                gw: None,
                witt: None,
                middle_form: None,
                m,
                notes: vec![format!(
                    "middle form unknown: rank h[n][n] = {hnn} is determined but its isometry class depends on the equation"
                )],
            })
        }
        VarietySpec::QuadricSurface { a } => chi_quadric_surface(a),
        VarietySpec::BlowupP2 { f } => chi_blowup_p2(f),
        VarietySpec::ConicBundle { genus, f, delta } => chi_conic_bundle(*genus, f, delta),
        VarietySpec::CubicSurfaceWithLine { f, delta } => chi_cubic_surface(f, delta),
    }
}

/// χ with its cross-check report.
pub fn compute(spec: &VarietySpec) -> Result<ChiReport> {
    let result = chi(spec)?;
    let diamond = diamond_of(spec)?;
    let checks = verify_cross_checks(&result, diamond.as_ref());
    Ok(ChiReport {
        result,
        diamond,
        checks,
    })
}

/// chi_top of a hypersurface as an i64, for comparison with ranks.
pub fn chi_top_i64(n: usize, d: u64) -> Option<i64> {
    i64::try_from(hodge::chi_top_hypersurface(n, d)).ok()
}
