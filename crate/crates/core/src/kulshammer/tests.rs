use super::*;
use crate::{Char2Field, Gf16, Gf4};
use num_traits::{One, Zero};


#[test]
fn e6_group_order_and_relations() {
    let fam = E6Family::<Gf4>::new().unwrap();
    assert_eq!(fam.closure_order(&fam.h_prime()).unwrap(), 1458);
    let (rels, _) = fam.h_prime_relations().unwrap();
    assert_eq!(rels.len(), 28);
    for r in &rels {
        assert!(r.holds, "{}", r.relation);
    }
}

#[test]
fn e6_torus_part_is_elementary_abelian() {
    let fam = E6Family::<Gf4>::new().unwrap();
    let t: Vec<_> = fam.h_prime().into_iter().take(5).collect();
    assert_eq!(fam.closure_order(&t).unwrap(), 243);
}

#[test]
fn e6_rho_is_well_defined() {
    let fam = E6Family::<Gf4>::new().unwrap();
    for a in Gf4::elements() {
        fam.gamma().verify(fam.parabolic(), &fam.rho(a).unwrap().images).unwrap();
    }
    // s_2 ↦ q_2 ε_21(a) at a = 0 is q_2 itself
    let r0 = fam.rho(Gf4::zero()).unwrap();
    assert!(r0.images[6].unipotent().is_identity());
}

#[test]
fn e6_sylow_restrictions_are_conjugate() {
    let fam = E6Family::<Gf16>::new().unwrap();
    for a in Gf16::elements() {
        assert!(fam.sylow_check(a, Gf16::zero()).unwrap());
    }
    assert!(fam.sylow_conjugator(Gf16::zero()).unwrap().unipotent().is_identity());
    let fam4 = E6Family::<Gf4>::new().unwrap();
    for a in Gf4::elements() {
        for b in Gf4::elements() {
            assert!(fam4.sylow_check(a, b).unwrap());
        }
    }
}

#[test]
fn e6_torus_tuple_centralizer() {
    let fam = E6Family::<Gf4>::new().unwrap();
    let c = fam.torus_tuple_centralizer().unwrap();
    assert_eq!(c.roots, vec![21, -21]);
    assert_eq!(c.weyl_stabilizer, 2);
    assert!(c.weyl_in_s21);
}

#[test]
fn e6_fixed_cocharacters_are_the_coroot_of_21() {
    let fam = E6Family::<Gf4>::new().unwrap();
    let sys = fam.parabolic().system();
    let r21 = sys.root(sys.root_of_label(21).unwrap());
    let fixed = fam.fixed_cocharacters();
    assert_eq!(fixed.len(), 1);
    let v: Vec<i64> = r21.0.iter().map(|&x| x as i64).collect();
    let neg: Vec<i64> = v.iter().map(|x| -x).collect();
    assert!(fixed[0] == v || fixed[0] == neg);
    // Z(G) ≅ μ_3 times 21∨(GF(4)^*)
    assert_eq!(fam.fixed_torus().len(), 9);
    let central = fam
        .fixed_torus()
        .into_iter()
        .filter(|t| (0..sys.num_roots()).all(|i| t.eval(sys, sys.root(i)).is_one()))
        .count();
    assert_eq!(central, 3);
    assert!(fam.report().unwrap().all_checks_pass());
}

#[test]
fn e6_nonconjugacy() {
    let fam = E6Family::<Gf4>::new().unwrap();
    for a in Gf4::elements() {
        for b in Gf4::elements() {
            let n = fam.nonconjugacy(a, b).unwrap();
            assert_eq!(n.nonconjugate, a != b);
            if a == b {
                assert!(n.witness_replayed);
            } else {
                assert!(n.conjugator.is_none());
            }
        }
    }
}

#[test]
fn a2_graph_automorphism() {
    let x = Gf4::generator();
    let s = AugmentedMatrix::<Gf4>::sigma();
    assert_eq!(s.conj(&elementary(1, 2, x)), elementary(2, 3, x));
    assert_eq!(s.conj(&elementary(2, 3, x)), elementary(1, 2, x));
    assert_eq!(s.mul(&s), AugmentedMatrix::identity());
    let fam = A2Family::<Gf4>::new(3).unwrap();
    assert_eq!(s.conj(&fam.t), fam.t.inv());
    let g = elementary(1, 2, x).mul(&elementary(3, 1, Gf4::one()));
    assert_eq!(g.mul(&s).mul(&g.mul(&s).inv()), AugmentedMatrix::identity());
}

#[test]
fn a2_relators_and_sylow() {
    let fam = A2Family::<Gf4>::new(3).unwrap();
    for a in Gf4::elements() {
        fam.gamma().verify(&A2Ops, &fam.rho(a)).unwrap();
        assert!(fam.sylow_check(a));
    }
    let fam5 = A2Family::<Gf16>::new(5).unwrap();
    for a in Gf16::elements() {
        fam5.gamma().verify(&A2Ops, &fam5.rho(a)).unwrap();
        assert!(fam5.sylow_check(a));
    }
    assert!(A2Family::<Gf4>::new(5).is_err());
    assert!(A2Family::<Gf4>::new(4).is_err());
}

#[test]
fn a2_centralizer_sizes() {
    // d = 3: t = c·I is central, so C(t) is SL_3(4) with no σ-coset
    let fam = A2Family::<Gf4>::new(3).unwrap();
    assert_eq!(fam.centralizer_of_t().len(), 60480);
    assert_eq!(A2Family::<Gf4>::all_elements().len(), 120960);
    // d = 5: t = diag(c, c³, c), centralizer S(GL_2 × GL_1)
    let fam5 = A2Family::<Gf16>::new(5).unwrap();
    assert_eq!(fam5.centralizer_of_t().len(), 61200);
}

#[test]
fn a2_order_five_family_is_pairwise_nonconjugate() {
    let r = A2Family::<Gf16>::new(5).unwrap().report(false).unwrap();
    assert!(!r.t_central);
    assert!(r.rho_well_defined && r.sylow_conjugates);
    assert!(r.nonconjugate_off_diagonal, "{:?}", r.conjugate_pairs);
}

/// With d = 3 the torus element is scalar, and u(√(a+b)) conjugates ρ_a
/// to ρ_b outright. Both searches find it.
#[test]
fn a2_order_three_family_collapses() {
    let r = A2Family::<Gf4>::new(3).unwrap().report(true).unwrap();
    assert!(r.t_central);
    assert_eq!(r.methods_agree, Some(true));
    assert_eq!(r.conjugate_pairs.len(), 12);
    let fam = A2Family::<Gf4>::new(3).unwrap();
    for a in Gf4::elements() {
        for b in Gf4::elements() {
            let u = fam.sylow_conjugator(a + b);
            let (ra, rb) = (fam.rho(a), fam.rho(b));
            assert!((0..3).all(|i| u.conj(&ra[i]) == rb[i]));
        }
    }
}
