//! L-derivatives, the Weil-Stark element and its T-modification against
//! closed forms and exact cyclotomic identities.

use proptest::prelude::*;
use weil_stark::arith::{q, qr, Q};
use weil_stark::cyclotomic::CyclotomicNumber;
use weil_stark::fixtures::{default_dir, find};
use weil_stark::groupring::{all_characters, GroupRingElement};
use weil_stark::lseries::{equivariant_leading_term, l_derivative_at_zero, leading_term_by_classes, vanishing_order};
use weil_stark::numberfield::places::canonical_places;
use weil_stark::numberfield::{RealAbelianField, SUnitBasis};
use weil_stark::numeric::{NumCtx, Real};
use weil_stark::weilstark::{cyclotomic_element, cyclotomic_norm, expected_rank, gamma_t, WeilStarkElement};

fn field(m: u64) -> RealAbelianField {
    RealAbelianField::new(m, &[m - 1]).unwrap()
}

fn element(m: u64, ctx: &mut NumCtx) -> WeilStarkElement {
    let f = find(&default_dir(), m, None).unwrap();
    cyclotomic_element(&SUnitBasis::load(f.units.as_ref().unwrap()).unwrap(), ctx).unwrap()
}

fn close(a: &Real, b: &Real, ctx: &NumCtx, digits: u32) -> bool {
    (a - b).abs_lt(&ctx.ten_pow_neg(digits))
}

/// `√d` for `d ∈ {5, 3}` as a cyclotomic number, from a Gauss sum and
/// `2cos(π/6)` respectively.
fn sqrt_in_cyclotomic(d: u64) -> CyclotomicNumber {
    let z = |m: u64, k: i64| CyclotomicNumber::zeta_power(m, k);
    match d {
        5 => z(5, 1).sub(&z(5, 2)).sub(&z(5, 3)).add(&z(5, 4)),
        3 => z(12, 1).add(&z(12, 11)),
        _ => unreachable!(),
    }
}

#[test]
fn closed_forms_for_conductor_five() {
    let f = field(5);
    let mut ctx = NumCtx::new(60).unwrap();
    let chars = all_characters(f.group());
    let (trivial, quadratic) = (&chars[0], &chars[1]);
    assert!(trivial.is_trivial());
    let l1 = l_derivative_at_zero(trivial, &f, &mut ctx).unwrap();
    let lchi = l_derivative_at_zero(quadratic, &f, &mut ctx).unwrap();
    let half_log5 = &ctx.ln_int(5) / &ctx.int(2);
    assert!(close(&l1.re, &-&half_log5, &ctx, 30));
    let sqrt5 = ctx.sqrt(&ctx.int(5));
    let phi = &(&ctx.int(1) + &sqrt5) / &ctx.int(2);
    let log_phi = ctx.ln(&phi).unwrap();
    assert!(close(&lchi.re, &log_phi, &ctx, 30));
    assert!(lchi.im.abs_lt(&ctx.ten_pow_neg(30)));
}

#[test]
fn quadratic_character_of_conductor_twelve() {
    let f = field(12);
    let mut ctx = NumCtx::new(60).unwrap();
    let s = canonical_places(&f);
    let chars = all_characters(f.group());
    let chi = chars.iter().find(|c| !c.is_trivial()).unwrap();
    let l = l_derivative_at_zero(chi, &f, &mut ctx).unwrap();
    let two_plus_sqrt3 = &ctx.int(2) + &ctx.sqrt(&ctx.int(3));
    let expected = ctx.ln(&two_plus_sqrt3).unwrap();
    assert!(close(&l.re, &expected, &ctx, 30));
    // S = {∞, 2, 3}; the trivial character vanishes to order |S| − 1
    assert_eq!(vanishing_order(&chars[0], &f, &s), 2);
    assert_eq!(vanishing_order(chi, &f, &s), 1);
}

#[test]
fn conjugate_characters_give_conjugate_values() {
    for m in [7, 11, 13, 21] {
        let f = field(m);
        let mut ctx = NumCtx::new(40).unwrap();
        for chi in all_characters(f.group()) {
            let a = l_derivative_at_zero(&chi, &f, &mut ctx).unwrap();
            let b = l_derivative_at_zero(&chi.conj(), &f, &mut ctx).unwrap();
            assert!(close(&a.re, &b.re, &ctx, 35), "m={m} {}", chi.label());
            assert!(close(&a.im, &-&b.im, &ctx, 35), "m={m} {}", chi.label());
        }
    }
}

#[test]
fn doubling_the_precision_confirms_the_digits() {
    for m in [8, 15, 24] {
        let f = field(m);
        let mut lo = NumCtx::new(40).unwrap();
        let mut hi = NumCtx::new(80).unwrap();
        for chi in all_characters(f.group()) {
            let a = l_derivative_at_zero(&chi, &f, &mut lo).unwrap();
            let b = l_derivative_at_zero(&chi, &f, &mut hi).unwrap();
            assert!(close(&a.re, &b.re, &hi, 35), "m={m} {}", chi.label());
            assert!(close(&a.im, &b.im, &hi, 35), "m={m} {}", chi.label());
        }
    }
}

#[test]
fn leading_term_by_characters_equals_the_direct_sum() {
    for m in [5, 7, 8, 11, 12, 13, 15, 20, 21, 24] {
        let f = field(m);
        let mut ctx = NumCtx::new(50).unwrap();
        let (theta, imag) = equivariant_leading_term(&f, &mut ctx).unwrap();
        let direct = leading_term_by_classes(&f, &mut ctx).unwrap();
        assert!(imag.abs_lt(&ctx.ten_pow_neg(40)));
        for (a, b) in theta.iter().zip(&direct) {
            assert!(close(a, b, &ctx, 40), "m={m}");
        }
    }
}

#[test]
fn element_of_conductor_five_is_exact() {
    let mut ctx = NumCtx::new(60).unwrap();
    let eps = element(5, &mut ctx);
    assert_eq!(eps.element.exponents, vec![qr(-1, 2), qr(1, 2)]);
    // ε² = N(1 − ζ_5) = (5 − √5)/2, exactly
    let square = eps.basis.evaluate(&eps.element.pow(&q(2))).unwrap();
    let expected = CyclotomicNumber::from_rational(5, q(5)).sub(&sqrt_in_cyclotomic(5)).scale(&qr(1, 2));
    assert_eq!(square, expected);
    assert_eq!(cyclotomic_norm(eps.field()), expected);
}

#[test]
fn element_of_conductor_twelve_is_exact() {
    let mut ctx = NumCtx::new(60).unwrap();
    let eps = element(12, &mut ctx);
    // ε² = (1 − ζ_12)(1 − ζ_12^{-1}) = 2 − √3, a unit
    let expected = CyclotomicNumber::from_rational(12, q(2)).sub(&sqrt_in_cyclotomic(3));
    assert_eq!(cyclotomic_norm(eps.field()), expected);
    let square = eps.basis.evaluate(&eps.element.pow(&q(2))).unwrap();
    assert_eq!(square, expected);
    assert!(eps.element.exponents.iter().all(|e| (e * q(2)).is_integer()));
    assert!(!eps.element.is_integral(), "2 − √3 is not a square in L");
}

#[test]
fn every_element_squares_to_the_norm() {
    let mut ctx = NumCtx::new(60).unwrap();
    for m in [5, 7, 8, 11, 12, 13, 15, 20, 21, 24] {
        let eps = element(m, &mut ctx);
        // the torsion of L is {±1}, invisible in exponent coordinates
        let square = eps.basis.evaluate(&eps.element.pow(&q(2))).unwrap();
        let norm = cyclotomic_norm(eps.field());
        assert!(square == norm || square == norm.neg(), "m={m}");
        assert!(eps.is_e_pi_fixed());
    }
}

#[test]
fn rank_of_the_unit_module() {
    let ranks = [(5, 2), (7, 3), (8, 2), (11, 5), (12, 3), (13, 6), (15, 5), (20, 5), (21, 7), (24, 5)];
    for (m, r) in ranks {
        let f = field(m);
        let s = canonical_places(&f);
        assert_eq!(expected_rank(&f, &s, 1), r, "m={m}");
        assert_eq!(expected_rank(&f, &s, 0), f.degree());
    }
}

#[test]
fn gamma_t_rejects_bad_primes() {
    let f = field(12);
    assert!(gamma_t(&f, &[4]).is_err());
    assert!(gamma_t(&f, &[3]).is_err());
    assert_eq!(gamma_t(&f, &[]).unwrap(), GroupRingElement::one(f.group().table().clone()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// `γ_{T ∪ T′} = γ_T·γ_{T′}` and `γ_{{v}}` has augmentation `1 − v`.
    #[test]
    fn gamma_t_is_multiplicative(m_idx in 0usize..10, i in 0usize..8, j in 0usize..8) {
        let m = [5u64, 7, 8, 11, 12, 13, 15, 20, 21, 24][m_idx];
        let f = field(m);
        let primes: Vec<u64> = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37].into_iter().filter(|p| !m.is_multiple_of(*p)).collect();
        let (a, b) = (primes[i % primes.len()], primes[j % primes.len()]);
        let ga = gamma_t(&f, &[a]).unwrap();
        let gb = gamma_t(&f, &[b]).unwrap();
        prop_assert_eq!(gamma_t(&f, &[a, b]).unwrap(), ga.mul(&gb));
        prop_assert_eq!(ga.augmentation(), Q::from_integer((1 - a as i64).into()));
    }
}
