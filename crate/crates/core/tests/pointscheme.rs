mod common;

use proptest::prelude::*;

use nctwist::families::{make_family, FamilyKind};
use nctwist::freealg::QuadraticAlgebra;
use nctwist::pointscheme::{
    coordinate_line_components, graph_check, multilinearize, point_scheme_equation, sigma_at, ProjPoint,
};
use nctwist::{Error, ParamRing, Scalar};

/// r̃(p, q) = Σ r_ij p_i q_j for every relation, straight from the terms.
fn on_graph(a: &QuadraticAlgebra, p: &[Scalar], q: &[Scalar]) -> bool {
    a.relations().iter().all(|r| {
        let v = r
            .terms()
            .iter()
            .fold(Scalar::zero(), |acc, (w, c)| &acc + &(&(c * &p[w.at(0)]) * &q[w.at(1)]));
        v.is_zero()
    })
}

fn p(ring: &ParamRing, name: &str) -> Scalar {
    Scalar::named(ring, name).unwrap()
}

fn oq_sym() -> (ParamRing, QuadraticAlgebra) {
    let ring = ParamRing::new(&["alpha", "beta", "gamma"], false).unwrap();
    let (a, b, c) = (p(&ring, "alpha"), p(&ring, "beta"), p(&ring, "gamma"));
    let alg = make_family(
        &FamilyKind::OQ {
            alpha: a,
            beta: b,
            gamma: c,
        },
        &ring,
    )
    .unwrap()
    .algebra;
    (ring, alg)
}

#[test]
fn sigma_lies_on_the_graph_for_numeric_lines() {
    let strat = (1i64..=6, 1i64..=6, 1i64..=6, 0usize..3, -5i64..=5, 1i64..=5);
    common::runner(60)
        .run(&strat, |(al, be, ga, line, tn, td)| {
            let ring = ParamRing::rationals();
            let fam = FamilyKind::OQ {
                alpha: al.into(),
                beta: be.into(),
                gamma: Scalar::from(ga),
            };
            let a = make_family(&fam, &ring).unwrap().algebra;
            if al * be * ga == 1 {
                return Ok(());
            }
            let t = Scalar::from_ratio(tn, td);
            let mut coords = vec![Scalar::one(), t.clone(), t.clone()];
            coords[line] = Scalar::zero();
            if t.is_zero() {
                return Ok(());
            }
            let pt = ProjPoint::new(coords).unwrap();
            let img = sigma_at(&a, &pt).unwrap();
            prop_assert!(on_graph(&a, pt.coords(), img.coords()));
            prop_assert!(graph_check(&a, &pt, &img).unwrap());
            // σ keeps each coordinate line
            prop_assert!(img.coords()[line].is_zero());
            Ok(())
        })
        .unwrap();
}

#[test]
fn sklyanin_sigma_on_symbolic_parameters() {
    let ring = ParamRing::new(&["a", "b", "c"], false).unwrap();
    let kind = FamilyKind::Skl3 {
        a: p(&ring, "a"),
        b: p(&ring, "b"),
        c: p(&ring, "c"),
    };
    let a = make_family(&kind, &ring).unwrap().algebra;
    let eq = point_scheme_equation(&a).unwrap();
    // x³ + y³ + z³ and xyz vanish at these three points for every (a, b, c)
    for pt in [[1, -1, 0], [0, 1, -1], [1, 0, -1]] {
        let pt = ProjPoint::from_i64(&pt).unwrap();
        assert!(eq.vanishes_at(pt.coords()).unwrap());
        let img = sigma_at(&a, &pt).unwrap();
        assert!(on_graph(&a, pt.coords(), img.coords()));
        assert!(eq.vanishes_at(img.coords()).unwrap());
        assert_ne!(img, pt);
    }
}

#[test]
fn commutative_sigma_is_identity() {
    let ring = ParamRing::new(&["s", "t"], false).unwrap();
    let a = make_family(&FamilyKind::Commutative(2), &ring).unwrap().algebra;
    let pt = ProjPoint::new(vec![Scalar::one(), p(&ring, "s"), p(&ring, "t")]).unwrap();
    assert_eq!(sigma_at(&a, &pt).unwrap(), pt);
}

#[test]
fn off_scheme_and_fat_points() {
    let (_, a) = oq_sym();
    let off = ProjPoint::from_i64(&[1, 1, 1]).unwrap();
    assert_eq!(sigma_at(&a, &off).unwrap_err(), Error::NotOnPointScheme);
    // the vertex has rank 2 and is fixed
    let vertex = ProjPoint::from_i64(&[1, 0, 0]).unwrap();
    assert_eq!(sigma_at(&a, &vertex).unwrap(), vertex);
    // R = {xy, yx, z²}: at (1:0:0) only q₁ = 0 is imposed
    let r = ParamRing::rationals();
    let fat = QuadraticAlgebra::parse(&r, &["x", "y", "z"], &["x*y", "y*x", "z*z"]).unwrap();
    assert_eq!(sigma_at(&fat, &vertex).unwrap_err(), Error::SigmaNotUnique);
    assert!(graph_check(&fat, &vertex, &ProjPoint::from_i64(&[3, 0, 5]).unwrap()).unwrap());
}

#[test]
fn coordinate_lines_split_off() {
    let (ring, a) = oq_sym();
    let eq = point_scheme_equation(&a).unwrap();
    let (lines, cof) = coordinate_line_components(&eq);
    assert_eq!(lines, [0, 1, 2]);
    let (al, be, ga) = (p(&ring, "alpha"), p(&ring, "beta"), p(&ring, "gamma"));
    let want = &Scalar::one() - &(&(&al * &be) * &ga);
    let ratio = cof.checked_div(&want).unwrap();
    assert!(ratio.is_constant(), "{}", cof.to_string_in(&eq.coords.ring));
}

#[test]
fn multilinearized_relation_evaluates() {
    let ring = ParamRing::new(&["q"], false).unwrap();
    let a = QuadraticAlgebra::parse(&ring, &["x", "y"], &["x*y - q*y*x"]).unwrap();
    let m = multilinearize(&a.relations()[0]).unwrap();
    let q = p(&ring, "q");
    let (pp, qq) = ([Scalar::from(2), Scalar::from(3)], [Scalar::from(5), Scalar::from(7)]);
    // 2·7 − q·3·5
    let want = &Scalar::from(14) - &(&q * &Scalar::from(15));
    assert_eq!(m.eval(&[&pp, &qq]).unwrap(), want);
}

#[test]
fn point_parsing() {
    let ring = ParamRing::new(&["q"], false).unwrap();
    let a = ProjPoint::parse("0:1:q", &ring).unwrap();
    assert_eq!(
        a,
        ProjPoint::new(vec![Scalar::zero(), Scalar::from(2), &p(&ring, "q") * &Scalar::from(2)]).unwrap()
    );
    assert!(ProjPoint::parse("0:0:0", &ring).is_err());
    assert!(ProjPoint::parse("1:r", &ring).is_err());
}
