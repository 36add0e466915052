use gw_euler::acceptance::{random_rat, random_squarefree_monic, random_totally_real};
use gw_euler::arith::{rat, ratio, FieldDesc, Rat};
use gw_euler::chi::{
    chi, chi_blowup_p2, chi_conic_bundle, chi_cubic_surface, chi_odd, chi_quadric_surface, compute,
    diamond_of, twist_permutation_diagonal, verify_cross_checks, ChiResult, VarietySpec,
};
use gw_euler::hodge::{chi_top_hypersurface, curve, euler_rank, hodge_hypersurface};
use gw_euler::quadform::{DiagForm, GwElement, WittClass};
use gw_euler::traceform::{transfer, EtaleAlgebra, Poly};
use gw_euler::Error;
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q() -> FieldDesc {
    FieldDesc::Rationals
}

fn one() -> Poly {
    Poly::from_ints(&[1])
}

fn form(d: &[Rat]) -> GwElement {
    DiagForm::from_rats(q(), d).unwrap().into()
}

fn tr(f: &Poly, delta: &Poly) -> GwElement {
    transfer(&EtaleAlgebra::new(f.clone()).unwrap(), delta).unwrap()
}

fn from_roots(roots: &[i64]) -> Poly {
    roots
        .iter()
        .fold(one(), |acc, &r| acc.mul(&Poly::from_ints(&[-r, 1])))
}

fn coefficient() -> impl Strategy<Value = Rat> {
    ((-30i64..=30).prop_filter("nonzero", |n| *n != 0), 1i64..=30).prop_map(|(n, d)| ratio(n, d))
}

fn random_spec(rng: &mut ChaCha8Rng) -> VarietySpec {
    match rng.gen_range(0..7) {
        0 => VarietySpec::Curve {
            genus: rng.gen_range(0..=5),
        },
        1 => VarietySpec::ProjSpace {
            n: rng.gen_range(0..=6),
        },
        2 => VarietySpec::Hypersurface {
            n: rng.gen_range(1..=5),
            d: rng.gen_range(2..=6),
        },
        3 => VarietySpec::QuadricSurface {
            a: (0..4).map(|_| random_rat(rng, 20)).collect(),
        },
        4 => VarietySpec::BlowupP2 {
            f: random_squarefree_monic(rng, 5, 6),
        },
        5 => VarietySpec::ConicBundle {
            genus: rng.gen_range(0..=2),
            f: random_squarefree_monic(rng, 5, 6),
            delta: one(),
        },
        _ => VarietySpec::CubicSurfaceWithLine {
            f: random_totally_real(rng, 5, 6),
            delta: one(),
        },
    }
}

#[test]
fn quadric_example() {
    let a = [rat(1), rat(2), rat(3), rat(5)];
    let res = chi_quadric_surface(&a).unwrap();
    assert_eq!(res.rank, 4);
    let gw = res.gw.unwrap();
    assert!(gw.witt_equal(&form(&[rat(2), rat(-60)])).unwrap());
    // ⟨2, −60⟩ ≅ ⟨2, −15⟩ since 60 = 15·2²
    assert_eq!(
        res.witt.unwrap().anisotropic,
        DiagForm::from_ints(q(), &[2, -15]).unwrap()
    );
}

#[test]
fn real_quadrics() {
    let sphere = chi_quadric_surface(&[rat(1), rat(1), rat(1), rat(-1)]).unwrap();
    assert_eq!(sphere.gw.unwrap().signature(), Some(2));
    let empty = chi_quadric_surface(&[rat(1), rat(1), rat(1), rat(1)]).unwrap();
    assert_eq!(empty.gw.unwrap().signature(), Some(0));
}

#[test]
fn blowup_real_examples() {
    for (f, sig) in [(&[0, 1][..], 0), (&[1, 0, 1], 1), (&[-2, 0, 1], -1)] {
        let res = chi_blowup_p2(&Poly::from_ints(f)).unwrap();
        assert_eq!(res.gw.unwrap().signature(), Some(sig), "f = {f:?}");
    }
}

#[test]
fn cubic_surface_totally_real() {
    let f = from_roots(&[-2, -1, 0, 1, 2]);
    let res = chi_cubic_surface(&f, &one()).unwrap();
    assert_eq!(res.rank, 9);
    assert_eq!(BigInt::from(res.rank), chi_top_hypersurface(2, 3));
    let w = res.witt.as_ref().unwrap();
    assert_eq!(w.anisotropic.signature(), Some(-5));
    let h11 = hodge_hypersurface(2, 3).unwrap().h(1, 1);
    assert_eq!(h11, 7);
    assert!(5 <= h11);
    let report = compute(&VarietySpec::CubicSurfaceWithLine { f, delta: one() }).unwrap();
    assert!(report.all_passed(), "{:?}", report.checks);
}

#[test]
fn odd_dimension() {
    for g in 0..=5u64 {
        let res = chi_odd(&curve(g)).unwrap();
        let want = GwElement::hyperbolic_multiple(&q(), 1 - g as i64);
        assert!(res.gw.unwrap().equal(&want).unwrap());
    }
    for d in 2..=6 {
        let diamond = hodge_hypersurface(3, d).unwrap();
        let res = chi_odd(&diamond).unwrap();
        assert_eq!(2 * res.m, euler_rank(&diamond));
        assert!(res
            .gw
            .unwrap()
            .equal(&GwElement::hyperbolic_multiple(&q(), res.m))
            .unwrap());
    }
    assert!(matches!(
        chi_odd(&hodge_hypersurface(2, 3).unwrap()),
        Err(Error::InvalidInput(_))
    ));
}

#[test]
fn even_hypersurfaces_leave_the_middle_form_open() {
    for (n, d) in [(2, 2), (2, 3), (2, 4), (4, 3)] {
        let res = chi(&VarietySpec::Hypersurface { n, d }).unwrap();
        assert!(res.gw.is_none() && res.witt.is_none() && res.middle_form.is_none());
        assert!(res.notes.iter().any(|s| s.contains("middle form unknown")));
        assert_eq!(BigInt::from(res.rank), chi_top_hypersurface(n, d));
    }
}

#[test]
fn projective_spaces() {
    for n in 0..=6usize {
        let res = chi(&VarietySpec::ProjSpace { n }).unwrap();
        assert_eq!(res.rank, n as i64 + 1);
        let sig = res.gw.unwrap().signature().unwrap();
        // real points: χ(ℝℙⁿ) = 1 for n even, 0 for n odd
        assert_eq!(sig, i64::from(n % 2 == 0));
    }
}

#[test]
fn parity_failure_is_reported() {
    let res = ChiResult {
        rank: 8,
        gw: None,
        witt: Some(WittClass {
            anisotropic: DiagForm::from_ints(q(), &[1, 1, 1, 1, 1]).unwrap(),
            hyperbolic_count: 0,
        }),
        middle_form: None,
        m: 0,
        notes: vec![],
    };
    let checks = verify_cross_checks(&res, None);
    let parity = checks.iter().find(|c| c.name == "parity").unwrap();
    assert!(!parity.passed);
}

#[test]
fn input_errors() {
    assert!(matches!(
        chi_quadric_surface(&[rat(1), rat(0), rat(1), rat(1)]),
        Err(Error::InvalidInput(_))
    ));
    assert!(matches!(
        chi_quadric_surface(&vec![rat(1); 3]),
        Err(Error::InvalidInput(_))
    ));
    assert!(matches!(
        chi_cubic_surface(&from_roots(&[0, 1, 2]), &one()),
        Err(Error::InvalidInput(_))
    ));
    assert!(matches!(
        chi_blowup_p2(&Poly::from_ints(&[1, 2, 1])),
        Err(Error::NotSquarefree(_))
    ));
    assert!(matches!(
        chi_conic_bundle(0, &Poly::from_ints(&[0, -1, 1]), &Poly::from_ints(&[0, 1])),
        Err(Error::NonInvertibleTwist(_))
    ));
}

#[test]
fn spec_json() {
    let spec: VarietySpec =
        serde_json::from_str(r#"{"type":"quadric_surface","a":["1","2","3","5"]}"#).unwrap();
    assert_eq!(chi(&spec).unwrap().rank, 4);
    let cubic: VarietySpec = serde_json::from_str(
        r#"{"type":"cubic_surface","f":{"coeffs":["0","4","0","-5","0","1"]}}"#,
    )
    .unwrap();
    assert!(matches!(cubic, VarietySpec::CubicSurfaceWithLine { .. }));
    let text = serde_json::to_string(&cubic).unwrap();
    assert_eq!(serde_json::from_str::<VarietySpec>(&text).unwrap(), cubic);
}

#[test]
fn twist_permutation_diagonal_is_a_sum_of_transfers() {
    let a = EtaleAlgebra::new(Poly::from_ints(&[-2, 0, 1])).unwrap();
    let b = EtaleAlgebra::new(Poly::from_ints(&[1, 0, 1])).unwrap();
    let got = twist_permutation_diagonal(&[(a, one()), (b, Poly::from_ints(&[0, 1]))]).unwrap();
    let want = form(&[rat(2), rat(1)])
        .sum(&GwElement::hyperbolic(&q()))
        .unwrap();
    assert!(got.equal(&want).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quadric_family_at_witt_level(a in prop::collection::vec(coefficient(), 4)) {
        let res = chi_quadric_surface(&a).unwrap();
        let prod: Rat = a.iter().product();
        let target = form(&[rat(2), rat(-2) * prod]);
        prop_assert!(res.gw.as_ref().unwrap().witt_equal(&target).unwrap());
        prop_assert_eq!(res.rank, 4);
    }

    #[test]
    fn quadric_signature_is_real_euler_characteristic(a in prop::collection::vec(coefficient(), 4)) {
        // real locus: empty (definite), sphere (3 + 1 signs) or torus (2 + 2)
        let pos = a.iter().filter(|x| x.is_positive()).count();
        let chi_real = match pos { 0 | 4 => 0, 1 | 3 => 2, _ => 0 };
        let res = chi_quadric_surface(&a).unwrap();
        prop_assert_eq!(res.gw.unwrap().signature(), Some(chi_real));
    }

    #[test]
    fn quadric_square_class_invariance(
        a in prop::collection::vec(coefficient(), 4),
        c in coefficient(),
        i in 0usize..4,
    ) {
        let mut b = a.clone();
        b[i] = &b[i] * &c * &c;
        let x = chi_quadric_surface(&a).unwrap().gw.unwrap();
        let y = chi_quadric_surface(&b).unwrap().gw.unwrap();
        prop_assert!(x.equal(&y).unwrap());
    }

    #[test]
    fn blowup_family(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_squarefree_monic(&mut rng, 5, 8);
        let r = f.degree().unwrap() as i64;
        let res = chi_blowup_p2(&f).unwrap();
        prop_assert_eq!(res.rank, 3 + r);
        let target = GwElement::one(&q()).difference(&tr(&f, &one())).unwrap();
        prop_assert!(res.gw.as_ref().unwrap().witt_equal(&target).unwrap());
    }

    #[test]
    fn blowup_signature_counts_real_centres(
        roots in prop::collection::btree_set(-9i64..=9, 0..=3),
        shifts in prop::collection::btree_set(1i64..=9, 0..=1),
    ) {
        // blowing up a real point lowers χ(X(ℝ)) by one; conjugate pairs leave it unchanged
        prop_assume!(!roots.is_empty() || !shifts.is_empty());
        let roots: Vec<i64> = roots.into_iter().collect();
        let f = shifts.iter().fold(from_roots(&roots), |acc, &s| acc.mul(&Poly::from_ints(&[s, 0, 1])));
        let res = chi_blowup_p2(&f).unwrap();
        prop_assert_eq!(res.gw.unwrap().signature(), Some(1 - roots.len() as i64));
    }

    #[test]
    fn conic_bundle_family(seed in any::<u64>(), genus in 0u64..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_squarefree_monic(&mut rng, 5, 6);
        let delta = if rng.gen_bool(0.5) { one() } else { Poly::constant(random_rat(&mut rng, 9)) };
        let res = chi_conic_bundle(genus, &f, &delta).unwrap();
        let r = f.degree().unwrap() as i64;
        prop_assert_eq!(res.rank, 4 - 4 * genus as i64 + r);
        let target = GwElement::hyperbolic_multiple(&q(), 2 - 2 * genus as i64)
            .difference(&tr(&f, &delta))
            .unwrap();
        let gw = res.gw.as_ref().unwrap();
        prop_assert!(gw.witt_equal(&target).unwrap());
        prop_assert_eq!(gw.rank(), res.rank);
    }

    #[test]
    fn catalog_cross_checks_pass(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = random_spec(&mut rng);
        let report = compute(&spec).unwrap();
        prop_assert!(report.all_passed(), "{:?}: {:?}", spec, report.checks);
        let diamond = diamond_of(&spec).unwrap().unwrap();
        prop_assert_eq!(report.result.rank, euler_rank(&diamond));
        if let VarietySpec::Hypersurface { n, d } = spec {
            prop_assert_eq!(BigInt::from(report.result.rank), chi_top_hypersurface(n, d));
        }
        if let Some(w) = &report.result.witt {
            prop_assert_eq!((report.result.rank - w.anisotropic.rank() as i64) % 2, 0);
        }
        if let (Some(gw), Some(hnn)) = (&report.result.gw, diamond.middle()) {
            prop_assert!(gw.signature().unwrap().unsigned_abs() <= hnn);
        }
    }
}
