mod common;

use proptest::prelude::*;

use nctwist::freealg::{
    hilbert_function, hilbert_series, ideal_degree_span, nc_multiply, NcPoly, QuadraticAlgebra, Word,
};
use nctwist::linalg::Echelon;
use nctwist::{Error, ParamRing, Scalar};

/// I_d spanned directly by every u·r·v with |u| + |v| = d - 2.
fn naive_dim_quotient(a: &QuadraticAlgebra, d: usize) -> usize {
    let n = a.ngens();
    let total = n.pow(d as u32);
    if d < 2 {
        return total;
    }
    let ring = a.ring();
    let mut rows = Vec::new();
    for left in 0..=d - 2 {
        let right = d - 2 - left;
        for ui in 0..n.pow(left as u32) {
            for vi in 0..n.pow(right as u32) {
                let u = NcPoly::term(ring, n, Word::from_index(ui, left, n), Scalar::one());
                let v = NcPoly::term(ring, n, Word::from_index(vi, right, n), Scalar::one());
                for r in a.relations() {
                    let p = u.mul(r).unwrap().mul(&v).unwrap();
                    rows.push(p.to_sparse(d).unwrap());
                }
            }
        }
    }
    total - Echelon::from_rows(total, rows).dim()
}

/// Random quadratic relations with small integer coefficients.
fn random_algebra() -> impl Strategy<Value = QuadraticAlgebra> {
    (2usize..=3).prop_flat_map(|n| {
        let nrel = 1..=(n * n - 1).min(4);
        prop::collection::vec(prop::collection::vec(-2i64..=2, n * n), nrel).prop_filter_map(
            "independent relations",
            move |rels| {
                let ring = ParamRing::rationals();
                let polys: Vec<NcPoly> = rels
                    .iter()
                    .map(|c| {
                        let v: Vec<(usize, Scalar)> = c
                            .iter()
                            .enumerate()
                            .filter(|(_, x)| **x != 0)
                            .map(|(i, x)| (i, Scalar::from(*x)))
                            .collect();
                        NcPoly::from_sparse(&ring, n, 2, &v)
                    })
                    .collect();
                let names = nctwist::freealg::default_generator_names(n);
                QuadraticAlgebra::new(&ring, names, polys, None).ok()
            },
        )
    })
}

#[test]
fn incremental_span_matches_naive_span() {
    common::runner(40)
        .run(&random_algebra(), |a| {
            let maxd = if a.ngens() == 2 { 5 } else { 4 };
            let got = hilbert_series(&a, maxd).unwrap();
            for (d, &g) in got.iter().enumerate() {
                prop_assert_eq!(g, naive_dim_quotient(&a, d), "degree {}", d);
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn symbolic_relations_against_naive_span() {
    let ring = ParamRing::new(&["q", "p"], false).unwrap();
    let a = QuadraticAlgebra::parse(
        &ring,
        &["x", "y", "z"],
        &["x*y - q*y*x", "y*z - p*z*y", "x*z - z*x + y*y"],
    )
    .unwrap();
    for d in 0..=4 {
        assert_eq!(
            hilbert_function(&a, d).unwrap(),
            naive_dim_quotient(&a, d),
            "degree {d}"
        );
    }
}

#[test]
fn known_series() {
    let r = ParamRing::rationals();
    // free algebra on 2 letters
    assert_eq!(
        hilbert_series(&QuadraticAlgebra::free(&r, 2), 4).unwrap(),
        [1, 2, 4, 8, 16]
    );
    // exterior algebra: x² = y² = xy + yx = 0
    let ext = QuadraticAlgebra::parse(&r, &["x", "y"], &["x*x", "y*y", "x*y + y*x"]).unwrap();
    assert_eq!(hilbert_series(&ext, 4).unwrap(), [1, 2, 1, 0, 0]);
    // Jordan plane: dim A_d = d + 1
    let jordan = QuadraticAlgebra::parse(&r, &["x", "y"], &["y*x - x*y - x*x"]).unwrap();
    assert_eq!(hilbert_series(&jordan, 5).unwrap(), [1, 2, 3, 4, 5, 6]);
    // x*y = 0 only: dims are Fibonacci numbers
    let mono = QuadraticAlgebra::parse(&r, &["x", "y"], &["x*y"]).unwrap();
    assert_eq!(hilbert_series(&mono, 6).unwrap(), [1, 2, 3, 4, 5, 6, 7]);
    let span = ideal_degree_span(&mono, 3).unwrap();
    assert_eq!(span.dim(), 4);
}

#[test]
fn products_and_parsing() {
    let ring = ParamRing::new(&["q"], false).unwrap();
    let names: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
    let f = NcPoly::parse("x + q*y", &ring, &names).unwrap();
    let g = NcPoly::parse("x - y", &ring, &names).unwrap();
    let want = NcPoly::parse("x*x - x*y + q*y*x - q*y*y", &ring, &names).unwrap();
    assert_eq!(nc_multiply(&f, &g).unwrap(), want);
    assert_ne!(nc_multiply(&g, &f).unwrap(), want);
    let printed = want.to_string_with(&names);
    assert_eq!(NcPoly::parse(&printed, &ring, &names).unwrap(), want, "{printed}");
    assert_eq!(NcPoly::parse("(x + y)^2", &ring, &names).unwrap().terms().len(), 4);
}

#[test]
fn relation_checks() {
    let r = ParamRing::rationals();
    assert_eq!(
        QuadraticAlgebra::parse(&r, &["x", "y"], &["x*y*x"]).unwrap_err(),
        Error::NotQuadratic { got: 3 }
    );
    assert_eq!(
        QuadraticAlgebra::parse(&r, &["x", "y"], &["x*y", "2*x*y"]).unwrap_err(),
        Error::DependentRelations
    );
    assert!(QuadraticAlgebra::parse(&r, &["x", "y"], &["x*y + x"]).is_err());
    let a = QuadraticAlgebra::parse(&r, &["x", "y"], &["x*y"]).unwrap();
    assert!(matches!(hilbert_function(&a, 40), Err(Error::TooLarge(_))));
}

#[test]
fn same_relation_space_ignores_basis() {
    let ring = ParamRing::new(&["q"], false).unwrap();
    let a = QuadraticAlgebra::parse(&ring, &["x", "y", "z"], &["x*y - q*y*x", "x*z - z*x"]).unwrap();
    let b = QuadraticAlgebra::parse(&ring, &["x", "y", "z"], &["x*y - q*y*x + x*z - z*x", "3*x*z - 3*z*x"]).unwrap();
    let c = QuadraticAlgebra::parse(&ring, &["x", "y", "z"], &["x*y - y*x", "x*z - z*x"]).unwrap();
    assert!(a.same_relation_space(&b));
    assert!(!a.same_relation_space(&c));
}
