//! Verifiers for the cyclotomic Weil-Stark element. Each returns a
//! [`CheckReport`] with pass/fail, indices and witnesses as JSON.

use num_traits::One;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{binomial, format_rational, Q, Z};
use crate::error::{Error, Result};
use crate::groupring::{all_characters, GroupRingElement, IdealLattice};
use crate::lattice::exterior::psi;
use crate::lattice::hom::apply_hom;
use crate::lattice::normal_form::integer_left_kernel_q;
use crate::lattice::presentation::presentation_of_lattice;
use crate::lattice::{classical_fitting_ideal, hom_lattice, quotient_invariants, rubin_lattice, GLattice, Lattice};
use crate::lseries::{equivariant_leading_term, vanishing_order};
use crate::matrix::QMatrix;
use crate::numberfield::places::canonical_places;
use crate::numberfield::{dirichlet_regulator, Place, SUnitBasis, REGULATOR_SIGN};
use crate::numeric::NumCtx;
use crate::weilstark::element::{cyclotomic_element, WeilStarkElement};
use crate::weilstark::selmer::SelmerFixture;

/// Outcome of one verification.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub subject: String,
    pub passed: bool,
    pub details: Value,
}

impl CheckReport {
    fn new(check: &str, subject: &str, passed: bool, details: Value) -> Self {
        CheckReport { check: check.into(), subject: subject.into(), passed, details }
    }
}

fn ideal_json(ideal: &IdealLattice) -> Value {
    Value::Array(
        ideal
            .lattice
            .basis()
            .rows_iter()
            .map(|r| Value::Array(r.iter().map(|c| Value::String(format_rational(c))).collect()))
            .collect(),
    )
}

fn z_list(v: &[Z]) -> Value {
    Value::Array(v.iter().map(|z| Value::String(z.to_string())).collect())
}

/// `‖R_{L,S}(ε) − REGULATOR_SIGN·θ·(w_∞ − w_0)‖_∞ < 10^{−tolerance}`.
pub fn regulator_identity(basis: &SUnitBasis, ctx: &mut NumCtx, tolerance: u32) -> Result<CheckReport> {
    let eps = cyclotomic_element(basis, ctx)?;
    regulator_identity_of(&eps, ctx, tolerance)
}

/// The regulator identity for given exponents (used for negative controls).
pub fn regulator_identity_of(eps: &WeilStarkElement, ctx: &mut NumCtx, tolerance: u32) -> Result<CheckReport> {
    let basis = &eps.basis;
    let reg = dirichlet_regulator(&eps.element, basis, ctx)?;
    let (theta, imag) = equivariant_leading_term(basis.field(), ctx)?;
    let modules = basis.regulator_map().modules();
    let mut rhs = vec![ctx.zero(); modules.dimension()];
    for (g, (inf, w0)) in modules.difference_coordinates()?.into_iter().enumerate() {
        let t = theta[g].scale_i64(REGULATOR_SIGN as i64);
        rhs[inf] = &rhs[inf] + &t;
        rhs[w0] = &rhs[w0] - &t;
    }
    let diff = reg.coords.iter().zip(&rhs).map(|(a, b)| (a - b).abs());
    let err = diff.fold(ctx.zero(), |m, d| if m.lt(&d) { d } else { m });
    let tol = ctx.ten_pow_neg(tolerance);
    let passed = err.lt(&tol) && imag.lt(&tol);
    let details = json!({
        "max_error": ctx.format(&err, 6),
        "imaginary_residue": ctx.format(&imag, 6),
        "tolerance": format!("1e-{tolerance}"),
        "regulator_sign": REGULATOR_SIGN,
        "exponents": eps.element.to_strings(),
        "theta": theta.iter().map(|t| ctx.format(t, 25)).collect::<Vec<_>>(),
    });
    Ok(CheckReport::new("regulator", basis.source(), passed, details))
}

/// `Ψ(ε)` flattened into `Q[G]^n`.
fn psi_flat(u: &GLattice, exps: &[Q]) -> Result<Vec<Q>> {
    Ok(psi(u, exps)?.iter().flat_map(|x| x.to_vector()).collect())
}

/// The sublattice of `l` fixed by `e` under the ambient action of `m`.
fn fixed_part(module: &GLattice, e: &GroupRingElement) -> Result<Lattice> {
    let b = module.lattice().basis();
    let dim = module.ambient_dim();
    if b.nrows() == 0 {
        return Ok(Lattice::zero(dim));
    }
    let rows: Vec<Vec<Q>> = b
        .rows_iter()
        .map(|r| {
            let er = module.act(e, r);
            r.iter().zip(er).map(|(x, y)| x - y).collect()
        })
        .collect();
    let k = integer_left_kernel_q(&QMatrix::from_rows(rows, dim)?);
    if k.nrows() == 0 {
        return Ok(Lattice::zero(dim));
    }
    Ok(Lattice::from_generators(&k.to_q().mul(b)))
}

/// `Z[G]·ε_T ⊆ ∩¹ O^×_{L,S,T}` by HNF membership, plus the index
/// invariants of `Z[G]·ε_T` inside `(∩¹)^{e_π}` and a scaled negative control.
pub fn verify_integrality(eps_t: &WeilStarkElement) -> Result<CheckReport> {
    if eps_t.t_primes().is_empty() {
        return Err(Error::Unsupported("integrality is only asserted for T ≠ ∅".into()));
    }
    let u = eps_t.basis.unit_lattice()?;
    let rubin = rubin_lattice(&u, 1)?;
    let member = |exps: &[Q]| -> Result<bool> {
        let v = psi_flat(&u, exps)?;
        let w = rubin.module.submodule(&[v])?;
        Ok(rubin.module.lattice().contains_lattice(w.lattice()))
    };
    let exps = &eps_t.element.exponents;
    let is_member = member(exps)?;
    let w = rubin.module.submodule(&[psi_flat(&u, exps)?])?;
    let projected = fixed_part(&rubin.module, &eps_t.e_pi)?;
    let index = if is_member && w.rank() == projected.rank() && projected.contains_lattice(w.lattice()) {
        Some(quotient_invariants(&projected, w.lattice())?)
    } else {
        None
    };
    let (k, control) = eps_t.fractional_control();
    let control_rejected = !member(&control.element.exponents)?;
    let details = json!({
        "member": is_member,
        "exponents": eps_t.element.to_strings(),
        "index_invariants_in_e_pi_part": index.as_ref().map(|v| z_list(v)),
        "negative_control": {"scale": format!("1/{k}"), "rejected": control_rejected},
    });
    Ok(CheckReport::new("integrality", eps_t.basis.source(), is_member && control_rejected, details))
}

/// `{φ(ε_T) : φ ∈ Hom_{Z[G]}(O^×_{L,S,T}, Z[G])}` as an ideal of `Z[G]`.
pub fn evaluation_ideal(eps_t: &WeilStarkElement) -> Result<IdealLattice> {
    let u = eps_t.basis.unit_lattice()?;
    let group = u.group().clone();
    let hom = hom_lattice(&u, &GLattice::free(group.clone(), 1))?;
    let n = u.rank();
    let order = group.order();
    let gens: Vec<GroupRingElement> = hom
        .lattice()
        .basis()
        .rows_iter()
        .map(|f| {
            let v = apply_hom(f, n, order, &eps_t.element.exponents);
            GroupRingElement::from_coeffs(group.table().clone(), v)
        })
        .collect::<Result<_>>()?;
    Ok(IdealLattice::generated_by(group.table(), &gens))
}

/// Presentation of the transpose Selmer module: the fixture's own, which
/// must agree with `X_{L,S}` on every Fitting ideal, or `X_{L,S}` itself.
fn selmer_presentation(selmer: &SelmerFixture) -> Result<crate::lattice::Presentation> {
    let x = crate::numberfield::build_yx(&selmer.field, &selmer.s)?.x;
    let from_x = presentation_of_lattice(&x)?;
    let Some(p) = &selmer.presentation else { return Ok(from_x) };
    for a in 0..=p.generator_count().max(from_x.generator_count()) {
        if classical_fitting_ideal(p, a)? != classical_fitting_ideal(&from_x, a)? {
            return Err(Error::fixture(&selmer.source, "selmer_presentation", format!("Fit^{a} differs from that of X_{{L,S}}")));
        }
    }
    Ok(p.clone())
}

/// Exact HNF comparison of the evaluation ideal with `Fit¹` of the
/// transpose Selmer module (which is `X_{L,S}` when `Cl^T_S(L) = 0`).
pub fn verify_fitting_equality(eps_t: &WeilStarkElement, selmer: &SelmerFixture) -> Result<CheckReport> {
    if !selmer.cl_st.is_trivial() {
        return Err(Error::Unsupported("Fitting equality needs a fixture with trivial Cl^T_S".into()));
    }
    if selmer.t != eps_t.t_primes() || selmer.s != eps_t.basis.places() {
        return Err(Error::invalid("Selmer fixture and unit basis disagree on S or T"));
    }
    let eval = evaluation_ideal(eps_t)?;
    let pres = selmer_presentation(selmer)?;
    let fit1 = classical_fitting_ideal(&pres, 1)?;
    let fit0 = classical_fitting_ideal(&pres, 0)?;
    let equal = eval == fit1;
    let eval_in_fit = fit1.lattice.contains_lattice(&eval.lattice);
    let fit_in_eval = eval.lattice.contains_lattice(&fit1.lattice);
    let idx = |big: &IdealLattice, small: &IdealLattice| -> Option<Value> {
        (big.lattice.contains_lattice(&small.lattice) && big.lattice.rank() == small.lattice.rank())
            .then(|| quotient_invariants(&big.lattice, &small.lattice).ok().map(|v| z_list(&v)))
            .flatten()
    };
    let monotone = fit1.lattice.contains_lattice(&fit0.lattice);
    let details = json!({
        "equal": equal,
        "evaluation_in_fit1": eval_in_fit,
        "fit1_in_evaluation": fit_in_eval,
        "index_if_contained": if eval_in_fit { idx(&fit1, &eval) } else { idx(&eval, &fit1) },
        "fit0_in_fit1": monotone,
        "evaluation_ideal_hnf": ideal_json(&eval),
        "fit1_hnf": ideal_json(&fit1),
    });
    Ok(CheckReport::new("fitting", &selmer.source, equal && monotone, details))
}

/// Every generator `φ(ε_T)` of the evaluation ideal is integral and
/// annihilates `Cl^T_{S′}(L)`, with `S′ = {∞, v_0}`.
pub fn verify_annihilation(eps_t: &WeilStarkElement, selmer: &SelmerFixture) -> Result<CheckReport> {
    if selmer.t != eps_t.t_primes() {
        return Err(Error::invalid("Selmer fixture and unit basis disagree on T"));
    }
    let v0 = selmer.field.ramified_primes()[0];
    if selmer.s_prime != [Place::Infinite, Place::Finite(v0)] {
        return Err(Error::fixture(&selmer.source, "places", format!("S′ must be {{∞, {v0}}}")));
    }
    let module = &selmer.cl_sprime_t;
    let eval = evaluation_ideal(eps_t)?;
    let gens = eval.generators(module.group().table());
    let mut failures = Vec::new();
    for (i, x) in gens.iter().enumerate() {
        if !x.is_integral() {
            failures.push(json!({"generator": i, "reason": "non-integral", "element": x.to_table()}));
            continue;
        }
        if let Some(w) = module.annihilation_witness(x)? {
            failures.push(json!({"generator": i, "reason": "not annihilating", "module_generator": w, "element": x.to_table()}));
        }
    }
    let baseline = module.annihilates(&module.scalar(&module.order()))?;
    let details = json!({
        "cl_invariants": z_list(module.invariants()),
        "generators_checked": gens.len(),
        "failures": failures,
        "order_annihilates": baseline,
    });
    Ok(CheckReport::new("annihilation", &selmer.source, failures.is_empty() && baseline, details))
}

/// `dim e_χ(C·∩^a O^×_{L,S}) = C(r_S(χ), a)` for every character.
pub fn fe_dimension_check(basis: &SUnitBasis, a: usize) -> Result<CheckReport> {
    let field = basis.field();
    let s = canonical_places(field);
    let u = basis.unit_lattice()?;
    let rubin = rubin_lattice(&u, a)?;
    let mut rows = Vec::new();
    let mut ok = true;
    for chi in all_characters(field.group()) {
        let r = vanishing_order(&chi, field, &s);
        let dim = rubin.module.character_multiplicity(&chi)? as usize;
        let expected = binomial(r, a);
        ok &= dim == expected;
        rows.push(json!({"character": chi.label(), "r_S": r, "dimension": dim, "expected": expected}));
    }
    Ok(CheckReport::new(&format!("dimensions(a={a})"), basis.source(), ok, Value::Array(rows)))
}

/// `σ(ε) ∈ Z[G]·ε` for all `σ`, and `Z[G]·ε = Z[G]·ε⁻¹`.
pub fn module_invariance(eps: &WeilStarkElement) -> Result<bool> {
    let m = eps.module()?;
    let inv = eps.with_element(eps.element.inverse()).module()?;
    let stable = eps
        .field()
        .group()
        .elements()
        .all(|g| m.lattice().contains(&eps.element.act(&eps.basis, g).exponents));
    Ok(stable && *m.lattice() == *inv.lattice())
}

/// Whether `x` lies in `Z[G]` (integer coefficients).
pub fn is_integral_element(x: &GroupRingElement) -> bool {
    x.coeffs().iter().all(|c| c.denom().is_one())
}
