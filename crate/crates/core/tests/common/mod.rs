//! Shared strategies and property checks, used by the property suites and by the
//! acceptance report.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestRunner};

use nctwist::families::{make_family, pbw_normal_form, pbw_normal_form_with, FamilyKind, QParams};
use nctwist::freealg::{hilbert_series, QuadraticAlgebra, Word};
use nctwist::linalg::Matrix;
use nctwist::scalars::parse_scalar;
use nctwist::twist::{twist_relations, LinearEndo};
use nctwist::{ParamRing, Scalar};

/// Seed for every randomized check; `NCTWIST_SEED` overrides the default 0.
pub fn seed() -> u64 {
    std::env::var("NCTWIST_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        rng_seed: RngSeed::Fixed(seed()),
        failure_persistence: None,
        ..Config::default()
    })
}

pub fn ab_ring() -> ParamRing {
    ParamRing::new(&["a", "b"], false).unwrap()
}

fn poly_in_ab() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-4i64..=4, 0i32..=2, 0i32..=2), 1..=3).prop_map(|terms| {
        terms.into_iter().fold(Scalar::zero(), |acc, (c, ea, eb)| {
            let m = &Scalar::param(0).pow(ea).unwrap() * &Scalar::param(1).pow(eb).unwrap();
            &acc + &(&Scalar::from(c) * &m)
        })
    })
}

/// Random rational functions in a, b with small integer coefficients.
pub fn scalar_ab() -> impl Strategy<Value = Scalar> {
    (poly_in_ab(), poly_in_ab()).prop_map(|(n, d)| if d.is_zero() { n } else { n.checked_div(&d).unwrap() })
}

pub fn scalar_axioms(cases: u32) -> Result<(), String> {
    let ring = ab_ring();
    runner(cases)
        .run(&(scalar_ab(), scalar_ab(), scalar_ab()), |(x, y, z)| {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x + &Scalar::zero(), x.clone());
            prop_assert_eq!(&x * &Scalar::one(), x.clone());
            prop_assert!((&x + &(-&x)).is_zero());
            if !x.is_zero() {
                prop_assert!((&x * &x.inv().unwrap()).is_one());
            }
            let printed = x.to_string_in(&ring);
            prop_assert_eq!(parse_scalar(&printed, &ring).unwrap(), x, "reparse of {}", printed);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Invertible 3×3 integer matrices.
pub fn invertible3() -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3i64..=3, 9)
        .prop_map(|v| Matrix::from_i64(&[&v[0..3], &v[3..6], &v[6..9]]))
        .prop_filter("invertible", |m| !m.det().unwrap().is_zero())
}

/// O_Q(P²) with integer Q, or Skl3 with integer (a, b, c), or k[x,y,z].
pub fn algebra3() -> impl Strategy<Value = QuadraticAlgebra> {
    let ring = ParamRing::rationals();
    (0usize..3, 1i64..=5, 1i64..=5, 1i64..=5).prop_map(move |(k, p, q, r)| {
        let s = |v: i64| Scalar::from(v);
        let kind = match k {
            0 => FamilyKind::Commutative(2),
            1 => FamilyKind::OQ {
                alpha: s(p),
                beta: s(q + 1),
                gamma: Scalar::from_ratio(1, r),
            },
            _ => FamilyKind::Skl3 {
                a: s(p),
                b: s(q),
                c: s(r + 1),
            },
        };
        make_family(&kind, &ring).unwrap().algebra
    })
}

pub fn twist_roundtrip(cases: u32) -> Result<(), String> {
    let ring = ParamRing::rationals();
    runner(cases)
        .run(&(algebra3(), invertible3()), |(a, m)| {
            let t = LinearEndo::new(&ring, m).unwrap();
            let back = twist_relations(&twist_relations(&a, &t).unwrap(), &t.inverse()).unwrap();
            prop_assert!(back.same_relation_space(&a));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn twist_composition(cases: u32) -> Result<(), String> {
    let ring = ParamRing::rationals();
    runner(cases)
        .run(&(algebra3(), invertible3(), invertible3()), |(a, m, n)| {
            let tm = LinearEndo::new(&ring, m).unwrap();
            let tn = LinearEndo::new(&ring, n).unwrap();
            let twice = twist_relations(&twist_relations(&a, &tm).unwrap(), &tn).unwrap();
            let once = twist_relations(&a, &tm.compose(&tn).unwrap()).unwrap();
            prop_assert!(twice.same_relation_space(&once));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Twists by graded automorphisms keep the Hilbert series: any invertible map for
/// k[x,y,z], torus elements for O_Q(P²).
pub fn hilbert_twist_invariance(cases: u32) -> Result<(), String> {
    let ring = ParamRing::rationals();
    let diag = prop::collection::vec(1i64..=5, 3)
        .prop_map(|v| Matrix::diagonal(&v.iter().map(|&x| Scalar::from(x)).collect::<Vec<_>>()));
    let strat = (any::<bool>(), invertible3(), diag, 1i64..=4);
    runner(cases)
        .run(&strat, |(commutative, g, d, q)| {
            let (a, m) = if commutative {
                (make_family(&FamilyKind::Commutative(2), &ring).unwrap().algebra, g)
            } else {
                let s = Scalar::from(q + 1);
                let kind = FamilyKind::OQ {
                    alpha: s.clone(),
                    beta: Scalar::from(2),
                    gamma: s.inv().unwrap(),
                };
                (make_family(&kind, &ring).unwrap().algebra, d)
            };
            prop_assert!(a.is_graded_automorphism(&m).unwrap());
            let tw = twist_relations(&a, &LinearEndo::new(&ring, m).unwrap()).unwrap();
            prop_assert_eq!(hilbert_series(&tw, 4).unwrap(), hilbert_series(&a, 4).unwrap());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn q_symbolic() -> (ParamRing, QParams) {
    let ring = ParamRing::new(&["alpha", "beta", "gamma"], false).unwrap();
    let p = |s| Scalar::named(&ring, s).unwrap();
    let q = QParams::new(&p("alpha"), &p("beta"), &p("gamma"));
    (ring, q)
}

/// Every swap order gives the leftmost-descent normal form.
pub fn pbw_confluence(cases: u32) -> Result<(), String> {
    let (_, q) = q_symbolic();
    let strat = (
        prop::collection::vec(0usize..3, 0..=6),
        prop::collection::vec(any::<usize>(), 20),
    );
    runner(cases)
        .run(&strat, |(letters, picks)| {
            let w = Word::new(&letters);
            let mut it = picks.into_iter().cycle();
            let other = pbw_normal_form_with(&w, &q, |d| it.next().unwrap() % d.len());
            prop_assert_eq!(other, pbw_normal_form(&w, &q));
            Ok(())
        })
        .map_err(|e| e.to_string())
}
