//! Acceptance harness: one PASS/FAIL line per criterion, nonzero exit if
//! any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use weil_stark::arith::{q, qr};
use weil_stark::cyclotomic::CyclotomicNumber;
use weil_stark::fixtures::{default_dir, discover, FieldFixtures};
use weil_stark::groupring::{all_characters, FiniteAbelianGroup, GroupAlgebra};
use weil_stark::lseries::l_derivative_at_zero;
use weil_stark::numberfield::{RealAbelianField, SUnitBasis};
use weil_stark::numeric::NumCtx;
use weil_stark::weilstark::{
    cyclotomic_element, cyclotomic_norm, fe_dimension_check, regulator_identity, regulator_identity_of, verify_annihilation,
    verify_fitting_equality, verify_integrality, SelmerFixture, WeilStarkElement,
};

const CONDUCTORS: [u64; 10] = [5, 7, 8, 11, 12, 13, 15, 20, 21, 24];

type Verdict = Result<String, String>;

fn fields() -> Vec<FieldFixtures> {
    discover(&default_dir()).expect("fixture directory")
}

fn element_of(f: &FieldFixtures, ctx: &mut NumCtx) -> Result<WeilStarkElement, String> {
    let basis = SUnitBasis::load(f.units.as_ref().ok_or("missing S-unit fixture")?).map_err(|e| e.to_string())?;
    cyclotomic_element(&basis, ctx).map_err(|e| e.to_string())
}

/// Every `(field, T)` pair with its T-modified element and class group data.
fn t_pairs(ctx: &mut NumCtx) -> Result<Vec<(String, WeilStarkElement, SelmerFixture)>, String> {
    let mut out = Vec::new();
    for f in fields() {
        let eps = element_of(&f, ctx)?;
        for (t, path) in &f.t_units {
            let t_basis = SUnitBasis::load(path).map_err(|e| e.to_string())?;
            let eps_t = eps.t_modified(&t_basis, ctx).map_err(|e| e.to_string())?;
            let selmer_path = f.selmer.get(t).ok_or(format!("{}: no class group fixture for T={t:?}", f.stem()))?;
            let selmer = SelmerFixture::load(selmer_path).map_err(|e| e.to_string())?;
            out.push((format!("m={} T={t:?}", f.conductor), eps_t, selmer));
        }
    }
    Ok(out)
}

fn regulator_identity_all() -> Verdict {
    let start = Instant::now();
    let mut ctx = NumCtx::new(60).map_err(|e| e.to_string())?;
    let found: Vec<u64> = fields().iter().map(|f| f.conductor).collect();
    if found != CONDUCTORS {
        return Err(format!("fixtures cover {found:?}"));
    }
    let mut worst = String::new();
    for f in fields() {
        let basis = SUnitBasis::load(f.units.as_ref().unwrap()).map_err(|e| e.to_string())?;
        let r = regulator_identity(&basis, &mut ctx, 30).map_err(|e| e.to_string())?;
        if !r.passed {
            return Err(format!("m={}: {}", f.conductor, r.details));
        }
        let eps = cyclotomic_element(&basis, &mut ctx).map_err(|e| e.to_string())?;
        if regulator_identity_of(&eps.corrupted(), &mut ctx, 30).map_err(|e| e.to_string())?.passed {
            return Err(format!("m={}: corrupted element passed", f.conductor));
        }
        worst = format!("{worst} m={}:{}", f.conductor, r.details["max_error"].as_str().unwrap_or("?"));
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("10 conductors, 60 digits, tolerance 1e-30, {elapsed:.1?};{worst}"))
}

fn closed_form_values() -> Verdict {
    let f = RealAbelianField::new(5, &[4]).map_err(|e| e.to_string())?;
    let mut ctx = NumCtx::new(60).map_err(|e| e.to_string())?;
    let tol = ctx.ten_pow_neg(30);
    let chars = all_characters(f.group());
    let trivial = chars.iter().find(|c| c.is_trivial()).unwrap();
    let quadratic = chars.iter().find(|c| !c.is_trivial()).unwrap();
    let l1 = l_derivative_at_zero(trivial, &f, &mut ctx).map_err(|e| e.to_string())?;
    let lchi = l_derivative_at_zero(quadratic, &f, &mut ctx).map_err(|e| e.to_string())?;
    let expected1 = -&(&ctx.ln_int(5) / &ctx.int(2));
    let sqrt5 = ctx.sqrt(&ctx.int(5));
    let phi = &(&ctx.int(1) + &sqrt5) / &ctx.int(2);
    let expected_chi = ctx.ln(&phi).map_err(|e| e.to_string())?;
    let e1 = (&l1.re - &expected1).abs();
    let e2 = (&lchi.re - &expected_chi).abs();
    let ok = e1.lt(&tol) && e2.lt(&tol) && l1.im.abs_lt(&tol) && lchi.im.abs_lt(&tol);
    let msg = format!("|L'(1) + log5/2| = {}, |L'(chi_5) - log phi| = {}", ctx.format(&e1, 3), ctx.format(&e2, 3));
    if ok { Ok(msg) } else { Err(msg) }
}

fn element_exactness() -> Verdict {
    let mut ctx = NumCtx::new(60).map_err(|e| e.to_string())?;
    let all = fields();
    let get = |m: u64| all.iter().find(|f| f.conductor == m).ok_or(format!("no fixture for m={m}"));
    let z = |m: u64, k: i64| CyclotomicNumber::zeta_power(m, k);

    let eps5 = element_of(get(5)?, &mut ctx)?;
    if eps5.element.exponents != vec![qr(-1, 2), qr(1, 2)] {
        return Err(format!("m=5 exponents {:?}", eps5.element.to_strings()));
    }
    let phi = z(5, 2).add(&z(5, 3)).neg();
    let sqrt5 = z(5, 1).sub(&z(5, 2)).sub(&z(5, 3)).add(&z(5, 4));
    if eps5.basis.elements() != [phi, sqrt5.clone()] {
        return Err("m=5 basis is not (phi, sqrt 5)".into());
    }
    let target5 = CyclotomicNumber::from_rational(5, q(5)).sub(&sqrt5).scale(&qr(1, 2));
    let sq5 = eps5.basis.evaluate(&eps5.element.pow(&q(2))).map_err(|e| e.to_string())?;
    if sq5 != target5 || cyclotomic_norm(eps5.field()) != target5 {
        return Err("m=5: eps^2 differs from (5 - sqrt 5)/2".into());
    }

    let eps12 = element_of(get(12)?, &mut ctx)?;
    let target12 = CyclotomicNumber::from_rational(12, q(2)).sub(&z(12, 1).add(&z(12, 11)));
    let sq12 = eps12.basis.evaluate(&eps12.element.pow(&q(2))).map_err(|e| e.to_string())?;
    if sq12 != target12 || cyclotomic_norm(eps12.field()) != target12 {
        return Err("m=12: eps^2 differs from 2 - sqrt 3".into());
    }
    Ok(format!(
        "m=5 exponents (-1/2, 1/2), eps^2 = (5 - sqrt5)/2; m=12 exponents ({}), eps^2 = 2 - sqrt3",
        eps12.element.to_strings().join(", ")
    ))
}

fn integrality() -> Verdict {
    let mut ctx = NumCtx::new(60).map_err(|e| e.to_string())?;
    let pairs = t_pairs(&mut ctx)?;
    for (name, eps_t, _) in &pairs {
        let r = verify_integrality(eps_t).map_err(|e| e.to_string())?;
        if !r.passed {
            return Err(format!("{name}: {}", r.details));
        }
        let (k, control) = eps_t.fractional_control();
        if verify_integrality(&control).map_err(|e| e.to_string())?.passed {
            return Err(format!("{name}: eps_T/{k} was accepted"));
        }
    }
    Ok(format!("{} (field, T) pairs; every eps_T/k control rejected", pairs.len()))
}

fn fitting_equality() -> Verdict {
    let mut ctx = NumCtx::new(60).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for (name, eps_t, selmer) in t_pairs(&mut ctx)? {
        if !selmer.cl_st.is_trivial() {
            continue;
        }
        let r = verify_fitting_equality(&eps_t, &selmer).map_err(|e| e.to_string())?;
        if !r.passed {
            return Err(format!("{name}: {}", r.details));
        }
        if verify_fitting_equality(&eps_t.corrupted(), &selmer).map_err(|e| e.to_string())?.passed {
            return Err(format!("{name}: corrupted element passed"));
        }
        checked += 1;
    }
    if checked == 0 {
        return Err("no fixture with trivial ray class group".into());
    }
    Ok(format!("{checked} fixtures with trivial Cl^T_S; exact HNF equality; corrupted elements rejected"))
}

fn annihilation() -> Verdict {
    let mut ctx = NumCtx::new(60).map_err(|e| e.to_string())?;
    let mut nontrivial = Vec::new();
    let mut total = 0;
    for (name, eps_t, selmer) in t_pairs(&mut ctx)? {
        let r = verify_annihilation(&eps_t, &selmer).map_err(|e| e.to_string())?;
        if !r.passed {
            return Err(format!("{name}: {}", r.details));
        }
        total += 1;
        if !selmer.cl_sprime_t.is_trivial() {
            let inv: Vec<String> = selmer.cl_sprime_t.invariants().iter().map(ToString::to_string).collect();
            nontrivial.push(format!("{name} [{}]", inv.join(",")));
        }
    }
    if nontrivial.len() < 2 {
        return Err(format!("only {} nontrivial class groups", nontrivial.len()));
    }
    Ok(format!("{total} pairs, {} nontrivial: {}", nontrivial.len(), nontrivial.join("; ")))
}

fn dimension_formula() -> Verdict {
    let mut n = 0;
    for f in fields() {
        let basis = SUnitBasis::load(f.units.as_ref().unwrap()).map_err(|e| e.to_string())?;
        for a in 0..=2 {
            let r = fe_dimension_check(&basis, a).map_err(|e| e.to_string())?;
            if !r.passed {
                return Err(format!("m={} a={a}: {}", f.conductor, r.details));
            }
            n += 1;
        }
    }
    Ok(format!("{n} (field, a) cases, a in {{0, 1, 2}}"))
}

fn algebra_suites() -> Verdict {
    use common::*;
    let start = Instant::now();
    let mut r = rng(0x5eed);
    let (mut minor, mut indep, mut nrd, mut hnf, mut rubin) = (0, 0, 0, 0, 0);
    while minor < 200 {
        let g = random_group(&mut r);
        let p = random_presentation(&mut r, &g);
        minor_matches_classical(&p)?;
        minor += 1;
        if minor % 2 == 0 {
            fitting_presentation_independent(&mut r, &p)?;
            indep += 1;
        }
    }
    for i in 0..60 {
        let alg = match i % 3 {
            0 => GroupAlgebra::Abelian(random_group(&mut r)),
            1 => GroupAlgebra::Semisimple(wedderburn("S3")),
            _ => GroupAlgebra::Semisimple(wedderburn("D4")),
        };
        nrd_multiplicative(&mut r, &alg, 1 + i % 2)?;
        nrd += 1;
    }
    for inv in GROUPS {
        idempotents_complete(&GroupAlgebra::Abelian(FiniteAbelianGroup::new(inv).unwrap()))?;
    }
    idempotents_complete(&GroupAlgebra::Semisimple(wedderburn("S3")))?;
    idempotents_complete(&GroupAlgebra::Semisimple(wedderburn("D4")))?;
    for _ in 0..100 {
        hnf_canonical(&mut r)?;
        hnf += 1;
    }
    for inv in &GROUPS[..5] {
        let g = FiniteAbelianGroup::new(inv).unwrap();
        for k in 1..=2 {
            for deg in 0..=k {
                rubin_equals_exterior_on_free(&mut r, &g, k, deg)?;
                rubin += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(120) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "minor = classical on {minor}, presentation independence on {indep}, Nrd on {nrd}, idempotents on {} algebras, HNF on {hnf}, Rubin = exterior on {rubin}; {elapsed:.1?}",
        GROUPS.len() + 2
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 8] = [
        ("regulator / L-value identity on all shipped conductors", regulator_identity_all),
        ("closed-form L-derivatives for conductor 5", closed_form_values),
        ("exactness of the Weil-Stark element (m = 5, 12)", element_exactness),
        ("integrality in the Rubin lattice on every (field, T)", integrality),
        ("Fitting equality where Cl^T_S is trivial", fitting_equality),
        ("annihilation of Cl^T_S' by the evaluation ideal", annihilation),
        ("dimension formula for a = 0, 1, 2", dimension_formula),
        ("algebra property suites", algebra_suites),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let verdict = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match verdict {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", 8 - failed, 8);
    if failed > 0 {
        std::process::exit(1);
    }
}
