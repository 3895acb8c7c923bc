//! Every verifier on every shipped fixture, plus the negative controls.

use weil_stark::fixtures::{default_dir, discover, FieldFixtures};
use weil_stark::numberfield::SUnitBasis;
use weil_stark::numeric::NumCtx;
use weil_stark::weilstark::{
    cyclotomic_element, fe_dimension_check, module_invariance, regulator_identity, regulator_identity_of,
    verify_annihilation, verify_fitting_equality, verify_integrality, SelmerFixture, WeilStarkElement,
};

fn fields() -> Vec<FieldFixtures> {
    discover(&default_dir()).unwrap()
}

fn base(f: &FieldFixtures, ctx: &mut NumCtx) -> WeilStarkElement {
    let basis = SUnitBasis::load(f.units.as_ref().unwrap()).unwrap();
    cyclotomic_element(&basis, ctx).unwrap()
}

#[test]
fn regulator_identity_holds_for_every_conductor() {
    let mut ctx = NumCtx::new(60).unwrap();
    for f in fields() {
        let basis = SUnitBasis::load(f.units.as_ref().unwrap()).unwrap();
        let report = regulator_identity(&basis, &mut ctx, 30).unwrap();
        assert!(report.passed, "{}: {}", f.stem(), report.details);
        let eps = cyclotomic_element(&basis, &mut ctx).unwrap();
        assert!(!regulator_identity_of(&eps.corrupted(), &mut ctx, 30).unwrap().passed);
        assert!(eps.is_e_pi_fixed(), "{}", f.stem());
        assert!(module_invariance(&eps).unwrap(), "{}", f.stem());
    }
}

#[test]
fn dimension_formula_holds_for_a_up_to_two() {
    for f in fields() {
        let basis = SUnitBasis::load(f.units.as_ref().unwrap()).unwrap();
        for a in 0..=2 {
            let r = fe_dimension_check(&basis, a).unwrap();
            assert!(r.passed, "{} a={a}: {}", f.stem(), r.details);
        }
    }
}

#[test]
fn integrality_fitting_and_annihilation_on_every_t() {
    let mut ctx = NumCtx::new(60).unwrap();
    let mut nontrivial = 0;
    for f in fields() {
        let eps = base(&f, &mut ctx);
        for (t, path) in &f.t_units {
            let t_basis = SUnitBasis::load(path).unwrap();
            let eps_t = eps.t_modified(&t_basis, &mut ctx).unwrap();
            let r = verify_integrality(&eps_t).unwrap();
            assert!(r.passed, "{} T={t:?}: {}", f.stem(), r.details);
            let selmer = SelmerFixture::load(&f.selmer[t]).unwrap();
            if selmer.cl_st.is_trivial() {
                let r = verify_fitting_equality(&eps_t, &selmer).unwrap();
                assert!(r.passed, "{} T={t:?}: {}", f.stem(), r.details);
                let bad = verify_fitting_equality(&eps_t.corrupted(), &selmer).unwrap();
                assert!(!bad.passed, "{} T={t:?}: corrupted element passed", f.stem());
            }
            let r = verify_annihilation(&eps_t, &selmer).unwrap();
            assert!(r.passed, "{} T={t:?}: {}", f.stem(), r.details);
            if !selmer.cl_sprime_t.is_trivial() {
                nontrivial += 1;
            }
        }
    }
    assert!(nontrivial >= 2);
}
