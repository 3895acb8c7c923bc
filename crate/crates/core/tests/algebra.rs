//! Property suites for the group-ring and lattice toolkit.

mod common;

use common::*;
use proptest::prelude::*;
use weil_stark::arith::{q, Z};
use weil_stark::groupring::{FiniteAbelianGroup, GroupAlgebra, GroupRingElement};
use weil_stark::lattice::{classical_fitting_ideal, FiniteGModule, GLattice, Lattice, Presentation};
use weil_stark::matrix::ZMatrix;

fn check(o: Outcome) -> Result<(), TestCaseError> {
    o.map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minor_construction_matches_classical(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_group(&mut r);
        let p = random_presentation(&mut r, &g);
        check(minor_matches_classical(&p))?;
    }

    #[test]
    fn fitting_ideals_depend_only_on_the_module(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_group(&mut r);
        let p = random_presentation(&mut r, &g);
        check(fitting_presentation_independent(&mut r, &p))?;
    }

    #[test]
    fn hnf_is_canonical(seed in any::<u64>()) {
        check(hnf_canonical(&mut rng(seed)))?;
    }

    #[test]
    fn reduced_norm_is_multiplicative_abelian(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let g = random_group(&mut r);
        check(nrd_multiplicative(&mut r, &GroupAlgebra::Abelian(g), n))?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reduced_norm_is_multiplicative_nonabelian(seed in any::<u64>(), n in 1usize..=2, dihedral in any::<bool>()) {
        let alg = GroupAlgebra::Semisimple(wedderburn(if dihedral { "D4" } else { "S3" }));
        check(nrd_multiplicative(&mut rng(seed), &alg, n))?;
    }

    #[test]
    fn rubin_lattice_is_the_exterior_power_on_free_modules(seed in any::<u64>(), k in 1usize..=2, r in 0usize..=2) {
        let mut rg = rng(seed);
        let g = FiniteAbelianGroup::new(GROUPS[..5].iter().copied().nth(seed as usize % 5).unwrap()).unwrap();
        check(rubin_equals_exterior_on_free(&mut rg, &g, k, r))?;
    }
}

#[test]
fn idempotents_of_every_test_group() {
    for inv in GROUPS {
        let g = FiniteAbelianGroup::new(inv).unwrap();
        idempotents_complete(&GroupAlgebra::Abelian(g)).unwrap();
    }
    for name in ["S3", "D4"] {
        idempotents_complete(&GroupAlgebra::Semisimple(wedderburn(name))).unwrap();
    }
}

#[test]
fn wedderburn_fixtures_describe_the_expected_groups() {
    let s3 = wedderburn("S3");
    assert_eq!(s3.group.order(), 6);
    assert!(!s3.group.is_abelian());
    assert_eq!(s3.components.iter().map(|c| c.degree).collect::<Vec<_>>(), vec![1, 1, 2]);
    let d4 = wedderburn("D4");
    assert_eq!(d4.group.order(), 8);
    assert_eq!(d4.components.iter().filter(|c| c.degree == 1).count(), 4);
    assert_eq!(d4.components.iter().filter(|c| c.degree == 2).count(), 1);
}

#[test]
fn reduced_norm_of_scalars_and_group_elements() {
    // Nrd(g) for a transposition in S3: +1 on the trivial component, −1 on
    // the sign, and −1 on the two-dimensional one
    let w = wedderburn("S3");
    let alg = GroupAlgebra::Semisimple(w.clone());
    let s = w.group.index_of("s").unwrap();
    let x = GroupRingElement::from_group_element(w.group.clone(), s);
    let nrd = alg.reduced_norm(&vec![vec![x]]).unwrap();
    let e: Vec<_> = w.components.iter().map(|c| c.idempotent.clone()).collect();
    let expected = e[0].sub(&e[1]).sub(&e[2]);
    assert_eq!(nrd, expected);
    let two = GroupRingElement::from_rational(w.group.clone(), q(2));
    let nrd2 = alg.reduced_norm(&vec![vec![two]]).unwrap();
    // 2 on the degree-one components and 4 on the degree-two one
    assert_eq!(nrd2, e[0].scale(&q(2)).add(&e[1].scale(&q(2))).add(&e[2].scale(&q(4))));
}

#[test]
fn presentation_of_a_cyclic_module() {
    // Z[C2]/(2): Fit^0 is 2·Z[C2] and Fit^1 is the unit ideal
    let g = FiniteAbelianGroup::new(&[2]).unwrap();
    let t = g.table().clone();
    let two = GroupRingElement::from_i64(t.clone(), &[2, 0]).unwrap();
    let p = Presentation::new(GroupAlgebra::Abelian(g), vec![vec![two]], 1).unwrap();
    let fit = classical_fitting_ideal(&p, 0).unwrap();
    assert_eq!(fit.lattice.basis().to_rows(), vec![vec![q(2), q(0)], vec![q(0), q(2)]]);
    assert!(classical_fitting_ideal(&p, 1).unwrap().lattice == Lattice::standard(2));
}

#[test]
fn finite_module_action_and_annihilators() {
    // Z/3 with the generator of C2 acting by −1
    let g = FiniteAbelianGroup::new(&[2]).unwrap();
    let t = g.table().clone();
    let m = FiniteGModule::new(g.clone(), vec![Z::from(3)], &[ZMatrix::from_i64(&[vec![-1]])]).unwrap();
    assert_eq!(m.order(), Z::from(3));
    let one_plus = GroupRingElement::from_i64(t.clone(), &[1, 1]).unwrap();
    let one_minus = GroupRingElement::from_i64(t.clone(), &[1, -1]).unwrap();
    assert!(m.annihilates(&one_plus).unwrap());
    assert!(!m.annihilates(&one_minus).unwrap());
    assert_eq!(m.act(&one_minus, &[Z::from(1)]).unwrap(), vec![Z::from(2)]);
    assert!(m.annihilates(&m.scalar(&Z::from(3))).unwrap());
    assert_eq!(m.annihilation_witness(&one_minus).unwrap(), Some(0));

    // ill-defined or non-group actions are rejected
    assert!(FiniteGModule::new(g.clone(), vec![Z::from(3)], &[ZMatrix::from_i64(&[vec![2]])]).is_ok());
    assert!(FiniteGModule::new(g.clone(), vec![Z::from(4)], &[ZMatrix::from_i64(&[vec![3]])]).is_ok());
    assert!(FiniteGModule::new(g.clone(), vec![Z::from(5)], &[ZMatrix::from_i64(&[vec![2]])]).is_err());
    assert!(FiniteGModule::new(g.clone(), vec![Z::from(2), Z::from(4)], &[ZMatrix::from_i64(&[vec![1, 1], vec![0, 1]])]).is_err());
    assert!(FiniteGModule::new(g.clone(), vec![Z::from(1)], &[ZMatrix::from_i64(&[vec![1]])]).is_err());
    assert!(FiniteGModule::zero(g).is_trivial());
}

#[test]
fn finite_module_as_lattice_quotient() {
    // Z[C2] / 2·Z[C2] is (Z/2)^2 with the swap action
    let g = FiniteAbelianGroup::new(&[2]).unwrap();
    let big = GLattice::free(g.clone(), 1);
    let small = big.with_lattice(big.lattice().scale(&q(2))).unwrap();
    let quo = FiniteGModule::quotient(&big, &small).unwrap();
    assert_eq!(quo.invariants(), &[Z::from(2), Z::from(2)]);
    let norm = GroupRingElement::from_i64(g.table().clone(), &[1, 1]).unwrap();
    assert!(!quo.annihilates(&norm).unwrap());
    assert!(quo.annihilates(&norm.scale(&q(2))).unwrap());
}
