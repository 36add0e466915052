//! The eight acceptance criteria as runnable checks with seeded randomness.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{hilbert, rat, ratio, FieldDesc, Place, Rat};
use crate::chi::{chi_blowup_p2, chi_cubic_surface, chi_odd, chi_quadric_surface};
use crate::error::Result;
use crate::hodge::{self, chi_top_hypersurface, euler_rank, hodge_hypersurface};
use crate::quadform::{congruent, DiagForm, GramForm, GwElement};
use crate::traceform::{count_real_roots, transfer, EtaleAlgebra, Poly};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub limit_ms: Option<u128>,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let limit = self
            .limit_ms
            .map_or(String::new(), |l| format!(", limit {l} ms"));
        write!(
            f,
            "[{status}] {}. {}: {} ({} ms{limit})",
            self.id, self.name, self.detail, self.elapsed_ms
        )
    }
}

type Check = fn(&mut ChaCha8Rng) -> Result<std::result::Result<String, String>>;

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Option<Duration>,
    check: Check,
}

const CRITERIA: [Criterion; 8] = [
    Criterion {
        id: 1,
        name: "quadric surface Witt class",
        limit: Some(Duration::from_secs(5)),
        check: quadric_family,
    },
    Criterion {
        id: 2,
        name: "blow-up of the plane",
        limit: Some(Duration::from_secs(5)),
        check: blowup_family,
    },
    Criterion {
        id: 3,
        name: "cubic surface as conic bundle",
        limit: Some(Duration::from_secs(1)),
        check: cubic_surface,
    },
    Criterion {
        id: 4,
        name: "rank sweep Hodge vs Chern",
        limit: Some(Duration::from_secs(10)),
        check: rank_sweep,
    },
    Criterion {
        id: 5,
        name: "real signatures",
        limit: None,
        check: real_signatures,
    },
    Criterion {
        id: 6,
        name: "local-global engine",
        limit: Some(Duration::from_secs(30)),
        check: local_global,
    },
    Criterion {
        id: 7,
        name: "transfer signature and CRT",
        limit: None,
        check: transfer_checks,
    },
    Criterion {
        id: 8,
        name: "odd-dimensional χ = m·H",
        limit: None,
        check: odd_dimension,
    },
];

/// Runs one criterion; `id` is 1-based.
pub fn run_criterion(id: u8, seed: u64) -> Option<Outcome> {
    let c = CRITERIA.iter().find(|c| c.id == id)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(u64::from(id)));
    let start = Instant::now();
    let verdict = (c.check)(&mut rng);
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match verdict {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(e) => (false, format!("error: {e}")),
    };
    if let Some(limit) = c.limit {
        if elapsed > limit {
            passed = false;
            detail.push_str("; time limit exceeded");
        }
    }
    Some(Outcome {
        id: c.id,
        name: c.name,
        passed,
        detail,
        elapsed_ms: elapsed.as_millis(),
        limit_ms: c.limit.map(|l| l.as_millis()),
    })
}

pub fn run_all(seed: u64) -> Vec<Outcome> {
    CRITERIA
        .iter()
        .filter_map(|c| run_criterion(c.id, seed))
        .collect()
}

fn q() -> FieldDesc {
    FieldDesc::Rationals
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---- generators shared with the test suite ----

/// Nonzero p/q with |p|, q ≤ bound.
pub fn random_rat(rng: &mut impl Rng, bound: i64) -> Rat {
    let mut n = 0;
    while n == 0 {
        n = rng.gen_range(-bound..=bound);
    }
    ratio(n, rng.gen_range(1..=bound))
}

/// Monic squarefree polynomial of degree in [1, max_deg] with coefficients in [−bound, bound].
pub fn random_squarefree_monic(rng: &mut impl Rng, max_deg: usize, bound: i64) -> Poly {
    loop {
        let deg = rng.gen_range(1..=max_deg);
        let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-bound..=bound)).collect();
        c.push(1);
        let f = Poly::from_ints(&c);
        if f.is_squarefree() {
            return f;
        }
    }
}

/// Product of (x − rᵢ) for distinct integers rᵢ in [−bound, bound].
pub fn random_totally_real(rng: &mut impl Rng, deg: usize, bound: i64) -> Poly {
    let mut roots: Vec<i64> = (-bound..=bound).collect();
    roots.shuffle(rng);
    roots[..deg].iter().fold(Poly::from_ints(&[1]), |acc, &r| {
        acc.mul(&Poly::from_ints(&[-r, 1]))
    })
}

pub fn random_diag(rng: &mut impl Rng, max_rank: usize, bound: i64) -> DiagForm {
    let n = rng.gen_range(0..=max_rank);
    let entries: Vec<Rat> = (0..n).map(|_| random_rat(rng, bound)).collect();
    DiagForm::from_rats(q(), &entries).expect("nonzero entries")
}

/// Integer matrix with determinant ±1 built from elementary operations.
pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> Vec<Vec<Rat>> {
    let mut p: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| rat(i64::from(i == j))).collect())
        .collect();
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            p[0][0] = rat(-1);
        }
        return p;
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let c = rat(rng.gen_range(-3..=3));
        for row in p.iter_mut() {
            let add = &row[j] * &c;
            row[i] += add;
        }
        if rng.gen_bool(0.2) {
            for row in p.iter_mut() {
                row.swap(i, j);
            }
        }
    }
    p
}

/// Symmetric nondegenerate Gram matrix with integer entries in [−bound, bound].
pub fn random_gram(rng: &mut impl Rng, n: usize, bound: i64) -> GramForm {
    loop {
        let mut g = vec![vec![rat(0); n]; n];
        for i in 0..n {
            for j in i..n {
                let v = rat(rng.gen_range(-bound..=bound));
                g[i][j] = v.clone();
                g[j][i] = v;
            }
        }
        if let Ok(form) = GramForm::new(q(), g) {
            return form;
        }
    }
}

/// A form isometric to `d`, obtained by a random change of basis.
pub fn isometric_copy(rng: &mut impl Rng, d: &DiagForm) -> Result<DiagForm> {
    let n = d.rank();
    let reps = d.reps();
    let gram: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rat::from(reps[i].clone())
                    } else {
                        rat(0)
                    }
                })
                .collect()
        })
        .collect();
    let moved = congruent(&gram, &random_unimodular(rng, n));
    Ok(GramForm::new(q(), moved)?.diagonalize()?.0)
}

fn support_places(values: &[&Rat]) -> Result<Vec<Place>> {
    let mut places = std::collections::BTreeSet::from([Place::two(), Place::Infinity]);
    for v in values {
        for part in [v.numer(), v.denom()] {
            for p in crate::arith::factorize(part)? {
                places.insert(Place::Prime(p));
            }
        }
    }
    Ok(places.into_iter().collect())
}

// ---- criteria ----

fn quadric_family(rng: &mut ChaCha8Rng) -> Result<std::result::Result<String, String>> {
    for trial in 0..50 {
        let a: Vec<Rat> = (0..4).map(|_| random_rat(rng, 30)).collect();
        let res = chi_quadric_surface(&a)?;
        let prod: Rat = a.iter().product();
        let expected = GwElement::from(DiagForm::from_rats(q(), &[rat(2), rat(-2) * prod])?);
        let gw = res.gw.expect("quadric middle form is known");
        if !gw.witt_equal(&expected)? {
            return Ok(Err(format!(
                "trial {trial}: Witt classes differ for a = {a:?}"
            )));
        }
    }
    Ok(Ok("50 random tuples: Witt(χ) = Witt(⟨2⟩ ⊕ ⟨−2∏aᵢ⟩)".into()))
}

fn blowup_family(rng: &mut ChaCha8Rng) -> Result<std::result::Result<String, String>> {
    for trial in 0..30 {
        let f = random_squarefree_monic(rng, 5, 10);
        let r = f.degree().expect("nonzero") as i64;
        let res = chi_blowup_p2(&f)?;
        let tr = transfer(&EtaleAlgebra::new(f.clone())?, &Poly::from_ints(&[1]))?;
        let expected = GwElement::one(&q()).difference(&tr)?;
        let gw = res.gw.expect("blow-up middle form is known");
        if !gw.witt_equal(&expected)? {
            return Ok(Err(format!(
                "trial {trial}: Witt classes differ for f = {f}"
            )));
        }
        if res.rank != 3 + r {
            return Ok(Err(format!("trial {trial}: rank {} ≠ 3 + {r}", res.rank)));
        }
    }
    Ok(Ok(
        "30 random f: Witt(χ) = Witt(⟨1⟩ − Tr⟨1⟩), rank = 3 + deg f".into(),
    ))
}

fn cubic_surface(rng: &mut ChaCha8Rng) -> Result<std::result::Result<String, String>> {
    let chi_top = chi_top_hypersurface(2, 3);
    let h11 = hodge_hypersurface(2, 3)?.h(1, 1);
    let one = Poly::from_ints(&[1]);
    let check = || -> std::result::Result<(), String> {
        ensure(chi_top == BigInt::from(9), || {
            format!("chi_top(2,3) = {chi_top}")
        })?;
        ensure(h11 == 7, || format!("h11 = {h11}"))
    };
    if let Err(e) = check() {
        return Ok(Err(e));
    }
    let mut polys = vec![Poly::from_ints(&[0, 4, 0, -5, 0, 1])];
    polys.extend((0..5).map(|_| random_totally_real(rng, 5, 6)));
    for f in &polys {
        let res = chi_cubic_surface(f, &one)?;
        if BigInt::from(res.rank) != chi_top {
            return Ok(Err(format!("rank {} for f = {f}", res.rank)));
        }
        let sig = res.witt.as_ref().and_then(|w| w.anisotropic.signature());
        if sig != Some(-5) {
            return Ok(Err(format!("Witt signature {sig:?} for f = {f}")));
        }
        let gw_sig = res
            .gw
            .as_ref()
            .and_then(GwElement::signature)
            .unwrap_or(i64::MAX);
        if gw_sig.unsigned_abs() > h11 {
            return Ok(Err(format!("|signature| {gw_sig} exceeds h11 = {h11}")));
        }
    }
    // twisted and non-totally-real inputs keep rank 9 and the bound
    for _ in 0..5 {
        let f = loop {
            let f = random_squarefree_monic(rng, 5, 10);
            if f.degree() == Some(5) {
                break f;
            }
        };
        let delta = Poly::from_ints(&[rng.gen_range(1..=5), rng.gen_range(-3..=3)]);
        let res = match chi_cubic_surface(&f, &delta) {
            Ok(r) => r,
            Err(crate::Error::NonInvertibleTwist(_)) => continue,
            Err(e) => return Err(e),
        };
        let sig = res.gw.as_ref().and_then(GwElement::signature).unwrap_or(0);
        if res.rank != 9 || sig.unsigned_abs() > h11 {
            return Ok(Err(format!(
                "rank {} signature {sig} for f = {f}",
                res.rank
            )));
        }
    }
    Ok(Ok(
        "rank 9 = chi_top(2,3); totally real f gives Witt signature −5, |−5| ≤ 7".into(),
    ))
}

fn rank_sweep(_: &mut ChaCha8Rng) -> Result<std::result::Result<String, String>> {
    let mut pairs = 0;
    for n in 1..=6 {
        for d in 2..=8u64 {
            let e = euler_rank(&hodge_hypersurface(n, d)?);
            let c = chi_top_hypersurface(n, d);
            if BigInt::from(e) != c {
                return Ok(Err(format!(
                    "(n, d) = ({n}, {d}): euler_rank {e} vs chi_top {c}"
                )));
            }
            pairs += 1;
        }
    }
    for (n, d, v) in [(2, 3, 9), (2, 4, 24), (3, 5, -200)] {
        if euler_rank(&hodge_hypersurface(n, d)?) != v {
            return Ok(Err(format!("anchor ({n}, {d}) ≠ {v}")));
        }
    }
    Ok(Ok(format!("{pairs} pairs agree, anchors 9, 24, −200")))
}

fn real_signatures(_: &mut ChaCha8Rng) -> Result<std::result::Result<String, String>> {
    let sig = |r: crate::chi::ChiResult| r.gw.and_then(|g| g.signature());
    let quad = |a: [i64; 4]| chi_quadric_surface(&a.map(rat));
    let got = [
        sig(quad([1, 1, 1, -1])?),
        sig(quad([1, 1, 1, 1])?),
        sig(chi_blowup_p2(&Poly::from_ints(&[0, 1]))?),
        sig(chi_blowup_p2(&Poly::from_ints(&[1, 0, 1]))?),
        sig(chi_blowup_p2(&Poly::from_ints(&[-2, 0, 1]))?),
    ];
    let want = [2, 0, 0, 1, -1].map(Some);
    if got != want {
        return Ok(Err(format!("signatures {got:?}, expected {want:?}")));
    }
    Ok(Ok("quadrics 2, 0; blow-ups 0, 1, −1".into()))
}

fn local_global(rng: &mut ChaCha8Rng) -> Result<std::result::Result<String, String>> {
    for trial in 0..200 {
        let a = random_rat(rng, 1000);
        let b = random_rat(rng, 1000);
        let mut prod = 1i8;
        for v in support_places(&[&a, &b])? {
            prod *= hilbert(&a, &b, &v)?;
        }
        if prod != 1 {
            return Ok(Err(format!(
                "trial {trial}: ∏(a,b)_v = −1 for a = {a}, b = {b}"
            )));
        }
    }
    let mut positive = 0;
    for trial in 0..100 {
        let q1 = random_diag(rng, 4, 12);
        let q2 = if rng.gen_bool(0.5) {
            isometric_copy(rng, &q1)?
        } else {
            let mut d = random_diag(rng, 4, 12);
            while d.rank() != q1.rank() {
                d = random_diag(rng, 4, 12);
            }
            d
        };
        let extra = random_diag(rng, 4, 12);
        let lhs = q1
            .direct_sum(&extra)?
            .is_isometric(&q2.direct_sum(&extra)?)?;
        let rhs = q1.is_isometric(&q2)?;
        positive += usize::from(rhs);
        if lhs != rhs {
            return Ok(Err(format!("trial {trial}: cancellation fails")));
        }
    }
    for trial in 0..100 {
        let n = rng.gen_range(1..=4);
        let g = random_gram(rng, n, 6);
        let p = random_unimodular(rng, n);
        let moved = GramForm::new(q(), congruent(g.gram(), &p))?;
        let x = GwElement::from(g.diagonalize()?.0);
        let y = GwElement::from(moved.diagonalize()?.0);
        if !x.equal(&y)? {
            return Ok(Err(format!(
                "trial {trial}: congruent Gram matrices give different GW classes"
            )));
        }
    }
    Ok(Ok(format!(
        "200 product-formula pairs; 100 cancellation triples ({positive} isometric); 100 base changes"
    )))
}

fn transfer_checks(rng: &mut ChaCha8Rng) -> Result<std::result::Result<String, String>> {
    let one = Poly::from_ints(&[1]);
    for trial in 0..100 {
        let f = random_squarefree_monic(rng, 6, 10);
        let t = transfer(&EtaleAlgebra::new(f.clone())?, &one)?;
        let roots = count_real_roots(&f) as i64;
        if t.signature() != Some(roots) {
            return Ok(Err(format!(
                "trial {trial}: signature {:?} vs {roots} real roots for f = {f}",
                t.signature()
            )));
        }
    }
    let mut done = 0;
    while done < 50 {
        let g = random_squarefree_monic(rng, 3, 6);
        let h = random_squarefree_monic(rng, 3, 6);
        let gh = g.mul(&h);
        if !gh.is_squarefree() {
            continue;
        }
        let deg = gh.degree().expect("nonzero");
        let delta = Poly::from_ints(&(0..deg).map(|_| rng.gen_range(-4..=4)).collect::<Vec<_>>());
        let whole = match transfer(&EtaleAlgebra::new(gh.clone())?, &delta) {
            Ok(t) => t,
            Err(crate::Error::NonInvertibleTwist(_)) => continue,
            Err(e) => return Err(e),
        };
        let parts = transfer(&EtaleAlgebra::new(g.clone())?, &delta.rem(&g))?
            .sum(&transfer(&EtaleAlgebra::new(h.clone())?, &delta.rem(&h))?)?;
        if !whole.equal(&parts)? {
            return Ok(Err(format!("CRT fails for g = {g}, h = {h}, δ = {delta}")));
        }
        done += 1;
    }
    Ok(Ok(
        "100 Sylvester/Sturm comparisons; 50 coprime CRT pairs".into()
    ))
}

fn odd_dimension(_: &mut ChaCha8Rng) -> Result<std::result::Result<String, String>> {
    let mut diamonds: Vec<(String, hodge::HodgeDiamond)> = (0..=5)
        .map(|g| (format!("curve of genus {g}"), hodge::curve(g)))
        .collect();
    for d in 2..=6 {
        diamonds.push((
            format!("threefold of degree {d}"),
            hodge_hypersurface(3, d)?,
        ));
    }
    for (label, d) in &diamonds {
        let res = chi_odd(d)?;
        let expected = GwElement::hyperbolic_multiple(&q(), res.m);
        let gw = res.gw.as_ref().expect("odd dimension is always known");
        if !gw.equal(&expected)? || 2 * res.m != euler_rank(d) || res.rank != 2 * res.m {
            return Ok(Err(format!("{label}: χ ≠ m·H with 2m = euler_rank")));
        }
    }
    for g in 0..=5u64 {
        let res = chi_odd(&hodge::curve(g))?;
        if res.m != 1 - g as i64 {
            return Ok(Err(format!("curve of genus {g}: m = {}", res.m)));
        }
    }
    Ok(Ok(format!(
        "{} odd-dimensional diamonds give m·H with 2m = euler_rank",
        diamonds.len()
    )))
}
