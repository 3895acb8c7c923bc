//! S-truncated Dirichlet L-functions at `s = 0` for `S = {∞} ∪ {p | m}`.
//!
//! Characters of `G = (Z/m)^×/H` are inflated to `(Z/m)^×` and never made
//! primitive: the imprimitive sum already carries the Euler factors at the
//! primes dividing `m`.

use serde_json::{json, Value};

use crate::error::Result;
use crate::groupring::{all_characters, Character};
use crate::numberfield::{Place, RealAbelianField};
use crate::numeric::{Complex, NumCtx, Real};

/// `r_S(χ)`: for `χ ≠ 1` the number of `v ∈ S` with `χ|_{G_v} = 1`, else `|S| − 1`.
pub fn vanishing_order(chi: &Character, field: &RealAbelianField, s: &[Place]) -> usize {
    if chi.is_trivial() {
        return s.len().saturating_sub(1);
    }
    let group = field.group();
    s.iter()
        .filter(|v| match v {
            Place::Infinite => true,
            Place::Finite(p) => chi.is_trivial_on(group, &field.decomposition_group(*p)),
        })
        .count()
}

/// `χ(g)` as a complex number.
pub fn character_value(chi: &Character, field: &RealAbelianField, g: usize, ctx: &mut NumCtx) -> Complex {
    let k = chi.value_exponent(field.group(), g);
    ctx.root_of_unity(k as i64, chi.value_conductor())
}

/// `L′_S(χ, 0) = −½ Σ_{a ∈ (Z/m)^×} χ(a)·log|1 − ζ_m^a|`.
pub fn l_derivative_at_zero(chi: &Character, field: &RealAbelianField, ctx: &mut NumCtx) -> Result<Complex> {
    let m = field.conductor();
    let mut acc = ctx.complex_zero();
    for a in crate::arith::units_mod(m) {
        let g = field.class_of(a)?;
        let v = character_value(chi, field, g, ctx);
        let l = ctx.log_abs_one_minus_root(a as i64, m)?;
        acc = acc.add(&v.scale(&l));
    }
    let half = &ctx.int(-1) / &ctx.int(2);
    Ok(acc.scale(&half))
}

/// One character's vanishing order and first derivative.
#[derive(Clone, Debug)]
pub struct LValueReport {
    pub label: String,
    pub vanishing_order: usize,
    pub derivative: Complex,
    pub digits: u32,
}

impl LValueReport {
    pub fn compute(chi: &Character, field: &RealAbelianField, s: &[Place], ctx: &mut NumCtx) -> Result<Self> {
        Ok(LValueReport {
            label: chi.label(),
            vanishing_order: vanishing_order(chi, field, s),
            derivative: l_derivative_at_zero(chi, field, ctx)?,
            digits: ctx.digits(),
        })
    }

    pub fn to_json(&self, ctx: &mut NumCtx) -> Value {
        json!({
            "character": self.label,
            "vanishing_order": self.vanishing_order,
            "derivative": {"re": ctx.show(&self.derivative.re), "im": ctx.show(&self.derivative.im)},
            "digits": self.digits,
        })
    }
}

/// Reports for every character of `G`, in the order of `all_characters`.
pub fn l_value_reports(field: &RealAbelianField, s: &[Place], ctx: &mut NumCtx) -> Result<Vec<LValueReport>> {
    all_characters(field.group())
        .iter()
        .map(|chi| LValueReport::compute(chi, field, s, ctx))
        .collect()
}

/// Coefficients `θ_g` of `θ = Σ_χ L′_S(χ⁻¹, 0)·e_χ`, assembled from the
/// character values. The imaginary parts cancel; their size is returned as
/// a consistency witness.
pub fn equivariant_leading_term(field: &RealAbelianField, ctx: &mut NumCtx) -> Result<(Vec<Real>, Real)> {
    let group = field.group();
    let chars = all_characters(group);
    let mut derivs = Vec::with_capacity(chars.len());
    for chi in &chars {
        derivs.push(l_derivative_at_zero(&chi.conj(), field, ctx)?);
    }
    let order = ctx.int(group.order() as i64);
    let mut coeffs = Vec::with_capacity(group.order());
    let mut imag = Vec::with_capacity(group.order());
    for g in group.elements() {
        // e_χ has coefficient χ(g⁻¹)/|G| at g
        let mut acc = ctx.complex_zero();
        for (chi, d) in chars.iter().zip(&derivs) {
            let v = character_value(chi, field, group.inv(g), ctx);
            acc = acc.add(&d.mul(&v));
        }
        coeffs.push(&acc.re / &order);
        imag.push(&acc.im / &order);
    }
    let witness = Real::max_abs(&imag, ctx.bits());
    Ok((coeffs, witness))
}

/// `θ_g = −½ Σ_{[a] = g⁻¹} log|1 − ζ_m^a|`, computed without characters.
pub fn leading_term_by_classes(field: &RealAbelianField, ctx: &mut NumCtx) -> Result<Vec<Real>> {
    let m = field.conductor();
    let group = field.group();
    let mut coeffs = vec![ctx.zero(); group.order()];
    for a in crate::arith::units_mod(m) {
        let g = group.inv(field.class_of(a)?);
        let l = ctx.log_abs_one_minus_root(a as i64, m)?;
        coeffs[g] = &coeffs[g] + &l;
    }
    let half = &ctx.int(-1) / &ctx.int(2);
    Ok(coeffs.iter().map(|c| c * &half).collect())
}
