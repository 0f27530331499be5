mod common;

use proptest::prelude::*;

use nctwist::autext::{
    extend_to_pgl, mori_check, reconstruct_relations, sigma_on_model, EAutomorphism, LinesModel, MoriVerdict,
};
use nctwist::families::{make_family, FamilyKind};
use nctwist::linalg::Matrix;
use nctwist::{ParamRing, Scalar};

fn p(ring: &ParamRing, name: &str) -> Scalar {
    Scalar::named(ring, name).unwrap()
}

/// Monomial matrices: a permutation times an invertible diagonal.
fn monomial(n1: usize) -> impl Strategy<Value = Matrix> {
    (
        Just((0..n1).collect::<Vec<usize>>()).prop_shuffle(),
        prop::collection::vec(prop_oneof![-3i64..=-1, 1i64..=3], n1),
    )
        .prop_map(move |(perm, d)| {
            let mut m = Matrix::zeros(n1, n1);
            for (j, &i) in perm.iter().enumerate() {
                m.set(i, j, Scalar::from(d[j]));
            }
            m
        })
}

#[test]
fn restriction_is_a_homomorphism() {
    for n in [2usize, 3] {
        let model = LinesModel::complete(n).unwrap();
        common::runner(40)
            .run(&(monomial(n + 1), monomial(n + 1)), |(w1, w2)| {
                let e1 = EAutomorphism::restrict(&model, &w1).unwrap();
                let e2 = EAutomorphism::restrict(&model, &w2).unwrap();
                let e12 = EAutomorphism::restrict(&model, &w1.mul(&w2).unwrap()).unwrap();
                prop_assert!(e1.compose(&e2).unwrap().proj_eq(&e12));
                prop_assert!(e1.compose(&e1.inverse()).unwrap().is_identity());
                prop_assert!(e1.pow(3).proj_eq(&e1.compose(&e1).unwrap().compose(&e1).unwrap()));
                // on a complete model the extension is unique up to scalar
                let v = extend_to_pgl(&e1).unwrap();
                prop_assert!(v.extends);
                prop_assert_eq!(v.solution_dim, 1);
                prop_assert!(v.witness.unwrap().proportional(&w1));
                Ok(())
            })
            .unwrap();
    }
}

#[test]
fn non_monomial_matrices_do_not_restrict() {
    let model = LinesModel::triangle();
    let shear = Matrix::from_i64(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
    assert!(EAutomorphism::restrict(&model, &shear).is_err());
}

#[test]
fn sigma_read_off_the_algebra() {
    let ring = ParamRing::new(&["alpha", "beta", "gamma"], false).unwrap();
    let (a, b, c) = (p(&ring, "alpha"), p(&ring, "beta"), p(&ring, "gamma"));
    let fam = make_family(
        &FamilyKind::OQ {
            alpha: a.clone(),
            beta: b.clone(),
            gamma: c.clone(),
        },
        &ring,
    )
    .unwrap();
    let sigma = sigma_on_model(&fam.algebra, &LinesModel::triangle()).unwrap();
    assert!(sigma.proj_eq(&EAutomorphism::mu_triangle(&a, &b, &c).unwrap()));
    // (E, σ) determines R
    let rec = reconstruct_relations(&sigma, &ring, fam.algebra.gen_names()).unwrap();
    assert!(rec.same_relation_space(&fam.algebra));
}

#[test]
fn reconstruction_of_quantum_projective_spaces() {
    let ring = ParamRing::new(&["q"], false).unwrap();
    for n in [2usize, 3] {
        let fam = make_family(&FamilyKind::Oq { n, q: p(&ring, "q") }, &ring).unwrap();
        let model = fam.model.clone().unwrap();
        let sigma = sigma_on_model(&fam.algebra, &model).unwrap();
        assert!(sigma.proj_eq(fam.sigma.as_ref().unwrap()));
        let rec = reconstruct_relations(&sigma, &ring, fam.algebra.gen_names()).unwrap();
        assert!(rec.same_relation_space(&fam.algebra));
    }
}

#[test]
fn triangle_extension_obstruction() {
    let ring = ParamRing::new(&["l1", "l2"], false).unwrap();
    let (l1, l2) = (p(&ring, "l1"), p(&ring, "l2"));
    // λ₃ = λ₁ breaks λ₁λ₂λ₃ = 1 for generic values
    let v = extend_to_pgl(&EAutomorphism::mu_triangle(&l1, &l2, &l1).unwrap()).unwrap();
    assert!(!v.extends);
    assert!(v.witness.is_none());
    let obs = v.obstructions();
    assert_eq!(obs.len(), 1);
    let o = Scalar::from_poly(obs[0].obstruction.clone());
    let want = &(&(&l1 * &l1) * &l2) - &Scalar::one();
    assert!(o == want || o == -&want, "{}", o.to_string_in(&ring));
    // after substituting l2 = 1/l1² the same map extends
    let l2v = (&l1 * &l1).inv().unwrap();
    let e = EAutomorphism::mu_triangle(&l1, &l2v, &l1).unwrap();
    let v = extend_to_pgl(&e).unwrap();
    assert!(v.extends);
    let w = v.witness.unwrap();
    assert!(EAutomorphism::restrict(e.model(), &w).unwrap().proj_eq(&e));
}

#[test]
fn partial_models() {
    // two lines through the vertex 0 in P²: every torus element extends
    let ring = ParamRing::new(&["s", "t"], false).unwrap();
    let model = LinesModel::new(2, &[(0, 1), (0, 2)]).unwrap();
    let e = EAutomorphism::mu(&model, &[p(&ring, "s"), p(&ring, "t")]).unwrap();
    let v = extend_to_pgl(&e).unwrap();
    assert!(v.extends);
    assert!(LinesModel::new(2, &[(0, 3)]).is_err());
    assert!(LinesModel::new(2, &[(1, 1)]).is_err());
    assert!(LinesModel::new(2, &[(0, 1), (1, 0)]).is_err());
}

#[test]
fn text_format_roundtrip() {
    let ring = ParamRing::new(&["alpha", "beta", "gamma"], false).unwrap();
    let (a, b, c) = (p(&ring, "alpha"), p(&ring, "beta"), p(&ring, "gamma"));
    let mu = EAutomorphism::mu_triangle(&a, &b, &c).unwrap();
    let swap = EAutomorphism::coordinate_permutation(mu.model(), &[1, 0, 2]).unwrap();
    for e in [mu.clone(), swap.compose(&mu).unwrap()] {
        let text = e.to_text(&ring);
        assert_eq!(EAutomorphism::parse(&text, &ring).unwrap(), e, "{text}");
    }
    let written = "dim: 2\n1-2 -> 1-2: alpha, 0; 0, 1\n0-2 -> 0-2: 1, 0; 0, beta\n0-1 -> 0-1: gamma, 0; 0, 1\n";
    assert!(EAutomorphism::parse(written, &ring).unwrap().proj_eq(&mu));
    assert!(EAutomorphism::parse("dim: 2\n1-2 -> 1-2: 1, 0; 0, 1\n", &ring).is_err());
}

#[test]
fn mori_on_trivial_data() {
    let ring = ParamRing::new(&["alpha", "beta", "gamma"], false).unwrap();
    let (a, b, c) = (p(&ring, "alpha"), p(&ring, "beta"), p(&ring, "gamma"));
    let mu = EAutomorphism::mu_triangle(&a, &b, &c).unwrap();
    let id = EAutomorphism::identity(mu.model());
    match mori_check(&mu, &mu, &id, 4).unwrap() {
        MoriVerdict::EquivalentWithPeriod { period, increment } => {
            assert_eq!(period, 1);
            assert!(increment.is_identity());
        }
        v => panic!("{v:?}"),
    }
    // a non-extending ρ₀ fails at m = 0
    let bad = EAutomorphism::mu_triangle(&Scalar::from(2), &Scalar::one(), &Scalar::one()).unwrap();
    assert!(matches!(
        mori_check(&mu, &mu, &bad, 4).unwrap(),
        MoriVerdict::FailsAt { m: 0, .. }
    ));
}
