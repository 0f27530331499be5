mod common;

use nctwist::autext::generate_system_from_geometric;
use nctwist::families::{make_family, FamilyKind};
use nctwist::freealg::{hilbert_series, NcPoly, QuadraticAlgebra, Word};
use nctwist::linalg::Matrix;
use nctwist::twist::{
    algebraic_system, solve_second_map, twist_relations, twisting_step_check, twisting_system_check, LinearEndo,
    TwistingSystem,
};
use nctwist::{ParamRing, Scalar};

fn p(ring: &ParamRing, name: &str) -> Scalar {
    Scalar::named(ring, name).unwrap()
}

/// x_i x_j ↦ x_i · t⁻¹(x_j), written out term by term.
fn twist_oracle(a: &QuadraticAlgebra, t: &Matrix) -> QuadraticAlgebra {
    let n = a.ngens();
    let ring = a.ring();
    let inv = t.inverse().unwrap();
    let rels = a
        .relations()
        .iter()
        .map(|r| {
            let mut out = NcPoly::zero(ring, n);
            for (w, c) in r.terms() {
                let (i, j) = (w.at(0), w.at(1));
                for k in 0..n {
                    let coeff = c * inv.get(k, j);
                    let term = NcPoly::term(ring, n, Word::new(&[i, k]), coeff);
                    out = out.add(&term).unwrap();
                }
            }
            out
        })
        .collect();
    QuadraticAlgebra::new(ring, a.gen_names().to_vec(), rels, None).unwrap()
}

#[test]
fn twist_matches_term_by_term_oracle() {
    let ring = ParamRing::new(&["q", "s"], false).unwrap();
    let q = p(&ring, "q");
    let oq = make_family(&FamilyKind::Oq { n: 2, q: q.clone() }, &ring)
        .unwrap()
        .algebra;
    let maps = [
        Matrix::diagonal(&[Scalar::one(), p(&ring, "s"), q.clone()]),
        LinearEndo::permutation(&ring, &[1, 2, 0]).unwrap().matrix().clone(),
        Matrix::from_i64(&[&[1, 2, 0], &[0, 1, 0], &[3, 0, 1]]),
    ];
    for m in &maps {
        let t = LinearEndo::new(&ring, m.clone()).unwrap();
        let got = twist_relations(&oq, &t).unwrap();
        assert!(got.same_relation_space(&twist_oracle(&oq, m)));
    }
}

#[test]
fn cyclic_shift_of_sklyanin() {
    let ring = ParamRing::new(&["a", "b", "c"], false).unwrap();
    let (a, b, c) = (p(&ring, "a"), p(&ring, "b"), p(&ring, "c"));
    let skl = |a: &Scalar, b: &Scalar, c: &Scalar| {
        make_family(
            &FamilyKind::Skl3 {
                a: a.clone(),
                b: b.clone(),
                c: c.clone(),
            },
            &ring,
        )
        .unwrap()
        .algebra
    };
    let shift = LinearEndo::permutation(&ring, &[1, 2, 0]).unwrap();
    let tw = twist_relations(&skl(&a, &b, &c), &shift).unwrap();
    assert!(tw.same_relation_space(&skl(&b, &c, &a)));
    assert!(!tw.same_relation_space(&skl(&a, &b, &c)));
    assert!(tw.same_relation_space(&twist_oracle(&skl(&a, &b, &c), shift.matrix())));
}

#[test]
fn twisting_by_identity_and_scalars_is_trivial() {
    let ring = ParamRing::new(&["q", "s"], false).unwrap();
    let oq = make_family(&FamilyKind::Oq { n: 2, q: p(&ring, "q") }, &ring)
        .unwrap()
        .algebra;
    assert!(twist_relations(&oq, &LinearEndo::identity(&ring, 3))
        .unwrap()
        .same_relation_space(&oq));
    let s = p(&ring, "s");
    let scal = LinearEndo::diagonal(&ring, &[s.clone(), s.clone(), s]).unwrap();
    assert!(twist_relations(&oq, &scal).unwrap().same_relation_space(&oq));
}

#[test]
fn algebraic_systems_of_automorphisms_pass() {
    let ring = ParamRing::new(&["q", "s", "u"], false).unwrap();
    let oq = make_family(&FamilyKind::Oq { n: 2, q: p(&ring, "q") }, &ring)
        .unwrap()
        .algebra;
    let d = LinearEndo::diagonal(&ring, &[Scalar::one(), p(&ring, "s"), p(&ring, "u")]).unwrap();
    assert!(oq.is_graded_automorphism(d.matrix()).unwrap());
    assert!(twisting_system_check(&oq, &algebraic_system(&d, 4).unwrap()).unwrap());
    // a shear is not an automorphism of O_q, and its powers fail the step check
    let shear = LinearEndo::new(&ring, Matrix::from_i64(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
    assert!(!oq.is_graded_automorphism(shear.matrix()).unwrap());
    assert!(!twisting_system_check(&oq, &algebraic_system(&shear, 3).unwrap()).unwrap());
}

#[test]
fn second_map_on_quantum_line() {
    let ring = ParamRing::new(&["q", "a", "b", "c", "d"], false).unwrap();
    let q = p(&ring, "q");
    let a = Matrix::from_rows(vec![
        vec![p(&ring, "a"), p(&ring, "b")],
        vec![p(&ring, "c"), p(&ring, "d")],
    ])
    .unwrap();
    let m1 = LinearEndo::new(&ring, a.clone()).unwrap();
    let oq = make_family(&FamilyKind::Oq { n: 1, q: q.clone() }, &ring)
        .unwrap()
        .algebra;
    let sols = solve_second_map(&oq, &m1).unwrap();
    assert_eq!(sols.len(), 1);
    let m2 = LinearEndo::new(&ring, sols[0].clone()).unwrap();
    assert!(twisting_step_check(&oq, &m1, &m2, &m1).unwrap());
    let dq = Matrix::diagonal(&[Scalar::one(), q]);
    let expected = dq
        .inverse()
        .unwrap()
        .mul(&a)
        .unwrap()
        .mul(&dq)
        .unwrap()
        .mul(&a)
        .unwrap();
    assert!(sols[0].proportional(&expected));
    // for A = I the step map is I ⊗ B; check B = diag(1,q) by hand: x⊗y − q·y⊗x ↦ q·x⊗y − q·y⊗x
    let id = LinearEndo::identity(&ring, 2);
    let bad = LinearEndo::new(&ring, dq).unwrap();
    assert!(!twisting_step_check(&oq, &id, &bad, &id).unwrap());
}

#[test]
fn geometric_system_from_a_three_cycle() {
    let ring = ParamRing::new(&["q"], false).unwrap();
    let fam = make_family(&FamilyKind::Oq { n: 2, q: p(&ring, "q") }, &ring).unwrap();
    let cycle = LinearEndo::permutation(&ring, &[1, 2, 0]).unwrap();
    let sys = generate_system_from_geometric(&fam.algebra, fam.sigma.as_ref().unwrap(), &cycle, 4).unwrap();
    assert_eq!(sys.len(), 4);
    assert!(twisting_system_check(&fam.algebra, &sys).unwrap());
    let m1 = &sys.maps()[0];
    assert!(m1.matrix().proportional(cycle.matrix()));
    // M₂ is not a multiple of M₁², so the system is not algebraic
    let sq = m1.matrix().pow(2).unwrap();
    assert!(!sys.maps()[1].matrix().proportional(&sq));
    // still it twists to an algebra with the same Hilbert series
    let tw = twist_relations(&fam.algebra, m1).unwrap();
    assert_eq!(hilbert_series(&tw, 4).unwrap(), [1, 3, 6, 10, 15]);
}

#[test]
fn system_file_format() {
    let ring = ParamRing::new(&["q"], false).unwrap();
    let sys = TwistingSystem::parse("1, 0\n0, q\n\n1, 0\n0, q^2\n", &ring).unwrap();
    assert_eq!(sys.len(), 2);
    assert_eq!(sys.maps()[1].matrix().get(1, 1), &p(&ring, "q").pow(2).unwrap());
    assert!(TwistingSystem::parse("1, 0\n0, 0\n", &ring).is_err());
}

#[test]
fn roundtrip_and_composition_properties() {
    common::twist_roundtrip(32).unwrap();
    common::twist_composition(32).unwrap();
}
