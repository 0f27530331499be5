mod common;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use nctwist::scalars::{identifiers, parse_scalar};
use nctwist::{Error, ParamRing, Scalar};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Arithmetic expressions in a, b, evaluated two ways.
#[derive(Clone, Debug)]
enum Expr {
    A,
    B,
    Int(i64),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![Just(Expr::A), Just(Expr::B), (-3i64..=3).prop_map(Expr::Int)];
    leaf.prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Expr::Add(x.into(), y.into())),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Expr::Sub(x.into(), y.into())),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Expr::Mul(x.into(), y.into())),
            (inner.clone(), inner).prop_map(|(x, y)| Expr::Div(x.into(), y.into())),
        ]
    })
}

fn symbolic(e: &Expr) -> Option<Scalar> {
    Some(match e {
        Expr::A => Scalar::param(0),
        Expr::B => Scalar::param(1),
        Expr::Int(v) => Scalar::from(*v),
        Expr::Add(x, y) => &symbolic(x)? + &symbolic(y)?,
        Expr::Sub(x, y) => &symbolic(x)? - &symbolic(y)?,
        Expr::Mul(x, y) => &symbolic(x)? * &symbolic(y)?,
        Expr::Div(x, y) => symbolic(x)?.checked_div(&symbolic(y)?).ok()?,
    })
}

/// Plain rational arithmetic at (a, b).
fn numeric(e: &Expr, a: &BigRational, b: &BigRational) -> Option<BigRational> {
    Some(match e {
        Expr::A => a.clone(),
        Expr::B => b.clone(),
        Expr::Int(v) => rat(*v, 1),
        Expr::Add(x, y) => numeric(x, a, b)? + numeric(y, a, b)?,
        Expr::Sub(x, y) => numeric(x, a, b)? - numeric(y, a, b)?,
        Expr::Mul(x, y) => numeric(x, a, b)? * numeric(y, a, b)?,
        Expr::Div(x, y) => {
            let d = numeric(y, a, b)?;
            if d == rat(0, 1) {
                return None;
            }
            numeric(x, a, b)? / d
        }
    })
}

#[test]
fn evaluation_commutes_with_arithmetic() {
    let ring = common::ab_ring();
    let strat = (expr(), -5i64..=5, 1i64..=4, -5i64..=5, 1i64..=4);
    common::runner(300)
        .run(&strat, |(e, an, ad, bn, bd)| {
            let (a, b) = (rat(an, ad), rat(bn, bd));
            let (Some(s), Some(v)) = (symbolic(&e), numeric(&e, &a, &b)) else {
                return Ok(());
            };
            let assignment = BTreeMap::from([("a".to_string(), a), ("b".to_string(), b)]);
            match s.eval_at(&ring, &assignment) {
                Ok(got) => prop_assert_eq!(got.as_rational(), Some(v)),
                // the reduced denominator divides the tree's denominators
                Err(err) => prop_assert!(false, "{err}"),
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn field_axioms() {
    common::scalar_axioms(200).unwrap();
}

#[test]
fn omega_is_a_primitive_cube_root() {
    let ring = ParamRing::new(&["q"], true).unwrap();
    let w = Scalar::omega();
    assert_eq!(&(&w * &w) + &(&w + &Scalar::one()), Scalar::zero());
    assert!(w.pow(3).unwrap().is_one());
    assert!(!w.is_one());
    assert_eq!(
        parse_scalar("omega^2", &ring).unwrap(),
        parse_scalar("-1-omega", &ring).unwrap()
    );
    let x = parse_scalar("(q - omega)/(q^2 + q*omega)", &ring).unwrap();
    assert!((&x * &x.inv().unwrap()).is_one());
}

#[test]
fn cancels_common_factors() {
    let ring = ParamRing::new(&["x", "y"], false).unwrap();
    let s = parse_scalar("(x^2 - y^2)/(x - y)", &ring).unwrap();
    assert_eq!(s, parse_scalar("x + y", &ring).unwrap());
    assert!(s.denom().is_one());
    let t = parse_scalar("(x*y + x)/(2*y + 2)", &ring).unwrap();
    assert_eq!(t.to_string_in(&ring), "1/2*x");
}

#[test]
fn printed_forms_reparse() {
    let ring = ParamRing::new(&["alpha", "beta", "gamma"], false).unwrap();
    for src in [
        "1/(alpha*beta*gamma)",
        "-alpha*beta*gamma + 1",
        "(alpha - 1)/(beta + 2)",
        "beta^3/(alpha^3*gamma^3)",
        "-3/7",
        "0",
    ] {
        let s = parse_scalar(src, &ring).unwrap();
        let printed = s.to_string_in(&ring);
        assert_eq!(parse_scalar(&printed, &ring).unwrap(), s, "{src} printed as {printed}");
    }
}

#[test]
fn errors() {
    let ring = ParamRing::new(&["q"], false).unwrap();
    assert_eq!(Scalar::zero().inv().unwrap_err(), Error::DivisionByZero);
    assert!(parse_scalar("q/(q-q)", &ring).is_err());
    assert!(parse_scalar("r + 1", &ring).is_err());
    assert!(parse_scalar("omega", &ring).is_err());
    assert!(parse_scalar("q +* 2", &ring).is_err());
    let s = parse_scalar("1/(q - 2)", &ring).unwrap();
    let at2 = BTreeMap::from([("q".to_string(), rat(2, 1))]);
    assert_eq!(s.eval_at(&ring, &at2).unwrap_err(), Error::Pole);
    assert!(ParamRing::new(&["q", "q"], false).is_err());
}

#[test]
fn negative_powers_and_substitution() {
    let ring = ParamRing::new(&["q", "t"], false).unwrap();
    let q = Scalar::named(&ring, "q").unwrap();
    assert_eq!(q.pow(-2).unwrap(), parse_scalar("1/q^2", &ring).unwrap());
    let s = parse_scalar("(q*t + 1)/t", &ring).unwrap();
    let sub = s.substitute(&[None, Some(q.clone())]).unwrap();
    assert_eq!(sub, parse_scalar("(q^2 + 1)/q", &ring).unwrap());
}

#[test]
fn identifier_scan() {
    assert_eq!(
        identifiers("alpha*x1 - 3*beta^2/(x1+omega)").unwrap(),
        ["alpha", "x1", "beta", "omega"]
    );
}
