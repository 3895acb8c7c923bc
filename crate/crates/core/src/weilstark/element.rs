//! The cyclotomic Weil-Stark element `ε = N_{Q(ζ_m)/L}(1 − ζ_m)^{1/2}`, its
//! T-modification and the idempotent `e_π`.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{binomial, is_prime, qr, Q, Z};
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::groupring::character::from_character_values;
use crate::groupring::element::to_rational;
use crate::groupring::{all_characters, GroupRingElement};
use crate::lattice::GLattice;
use crate::lseries::vanishing_order;
use crate::matrix::ZMatrix;
use crate::numberfield::places::canonical_places;
use crate::numberfield::{build_yx, express_in_basis, FormalProduct, MultiplicativeElement, Place, RealAbelianField, SUnitBasis};
use crate::numeric::NumCtx;

/// `N = Π_{a ∈ H} (1 − ζ_m^a)`.
pub fn cyclotomic_norm(field: &RealAbelianField) -> CyclotomicNumber {
    let m = field.conductor();
    let one = CyclotomicNumber::one(m);
    field
        .subgroup()
        .iter()
        .fold(one.clone(), |acc, &a| acc.mul(&one.sub(&CyclotomicNumber::zeta_power(m, a as i64))))
}

/// `e_π = Σ_{χ : r_S(χ) = 1} e_χ`, cross-checked against the character
/// multiplicities `r_S(χ) − 1` of `ker(π)`.
pub fn compute_e_pi(field: &RealAbelianField, s: &[Place]) -> Result<GroupRingElement> {
    let group = field.group();
    let modules = build_yx(field, s)?;
    let kernel = modules.kernel_of_projection()?;
    let e = group.exponent();
    let mut values = Vec::new();
    for chi in all_characters(group) {
        let r = vanishing_order(&chi, field, s);
        let mult = kernel.character_multiplicity(&chi)? as usize;
        if mult + 1 != r {
            return Err(Error::invalid(format!(
                "ker(π) has χ-multiplicity {mult} but r_S({}) = {r}",
                chi.label()
            )));
        }
        let v = if mult == 0 { CyclotomicNumber::one(e) } else { CyclotomicNumber::zero(e) };
        values.push((chi, v));
    }
    let x = from_character_values(group, &values);
    to_rational(&x).ok_or_else(|| Error::invalid("e_π is not rational"))
}

/// `γ_T = Π_{v ∈ T} (1 − v·σ_v⁻¹)` in `Z[G]`.
pub fn gamma_t(field: &RealAbelianField, t: &[u64]) -> Result<GroupRingElement> {
    let group = field.group();
    let table = group.table().clone();
    let mut acc = GroupRingElement::one(table.clone());
    for &v in t {
        if !is_prime(v) {
            return Err(Error::invalid(format!("{v} is not prime")));
        }
        if field.conductor().is_multiple_of(v) {
            return Err(Error::invalid(format!("T-prime {v} divides the conductor")));
        }
        let frob = field.frobenius(v)?;
        let term = GroupRingElement::one(table.clone())
            .sub(&GroupRingElement::from_group_element(table.clone(), group.inv(frob)).scale(&Q::from_integer(v.into())));
        acc = acc.mul(&term);
    }
    Ok(acc)
}

/// Integer matrix whose row `i` is the `i`-th T-basis element in S-basis
/// exponents, checked to intertwine the two Galois actions.
pub fn change_of_basis(t_basis: &SUnitBasis, s_basis: &SUnitBasis, ctx: &mut NumCtx) -> Result<ZMatrix> {
    if t_basis.field().conductor() != s_basis.field().conductor()
        || t_basis.field().subgroup() != s_basis.field().subgroup()
        || t_basis.places() != s_basis.places()
    {
        return Err(Error::invalid("bases belong to different fields or place sets"));
    }
    let n = s_basis.rank();
    let mut rows = Vec::with_capacity(n);
    for b in t_basis.elements() {
        let e = express_in_basis(&FormalProduct::single(b.clone(), Q::one()), s_basis, ctx, 1)?;
        rows.push(e.exponents.iter().map(|x| x.to_integer()).collect());
    }
    let c = ZMatrix::from_rows(rows, n)?;
    if c.det().is_zero() {
        return Err(Error::invalid("T-basis does not have full rank in the S-units"));
    }
    for g in s_basis.field().group().elements() {
        if c.mul(s_basis.action(g)) != t_basis.action(g).mul(&c) {
            return Err(Error::invalid(format!("change of basis is not equivariant at group element {g}")));
        }
    }
    Ok(c)
}

/// `ε` (or `ε_T`) in exponent coordinates over a fixture basis.
#[derive(Clone, Debug)]
pub struct WeilStarkElement {
    pub basis: SUnitBasis,
    pub element: MultiplicativeElement,
    pub e_pi: GroupRingElement,
}

/// `ε_L = N^{1/2}` expressed in an S-unit basis with `T = ∅`.
pub fn cyclotomic_element(basis: &SUnitBasis, ctx: &mut NumCtx) -> Result<WeilStarkElement> {
    let field = basis.field();
    if !basis.t_primes().is_empty() {
        return Err(Error::invalid("the Weil-Stark element is built over a basis with T = ∅"));
    }
    let s = canonical_places(field);
    if basis.places() != s.as_slice() {
        return Err(Error::invalid("the basis must be for S = {∞} ∪ {p | m}"));
    }
    let n = cyclotomic_norm(field);
    let element = express_in_basis(&FormalProduct::single(n, qr(1, 2)), basis, ctx, 2)
        .map_err(|e| Error::fixture(basis.source(), "express_in_basis", e.to_string()))?;
    let e_pi = compute_e_pi(field, &s)?;
    Ok(WeilStarkElement { basis: basis.clone(), element, e_pi })
}

impl WeilStarkElement {
    pub fn field(&self) -> &RealAbelianField {
        self.basis.field()
    }

    pub fn t_primes(&self) -> &[u64] {
        self.basis.t_primes()
    }

    /// `ε_T = γ_T·ε` re-expressed over a basis of `O^×_{L,S,T}`.
    pub fn t_modified(&self, t_basis: &SUnitBasis, ctx: &mut NumCtx) -> Result<WeilStarkElement> {
        if !self.t_primes().is_empty() {
            return Err(Error::invalid("element is already T-modified"));
        }
        let c = change_of_basis(t_basis, &self.basis, ctx)?;
        let gamma = gamma_t(self.field(), t_basis.t_primes())?;
        let in_s = self.element.act_group_ring(&self.basis, &gamma);
        let f = c
            .to_q()
            .solve_left(&in_s.exponents)
            .ok_or_else(|| Error::invalid("γ_T·ε is not in the span of the T-basis"))?;
        Ok(WeilStarkElement { basis: t_basis.clone(), element: MultiplicativeElement::new(f), e_pi: self.e_pi.clone() })
    }

    /// The same data with different exponents (for controls and variants).
    pub fn with_element(&self, element: MultiplicativeElement) -> WeilStarkElement {
        WeilStarkElement { basis: self.basis.clone(), element, e_pi: self.e_pi.clone() }
    }

    /// `Z[G]·ε` inside `Q ⊗ O^×` in exponent coordinates.
    pub fn module(&self) -> Result<GLattice> {
        self.basis.unit_lattice()?.submodule(std::slice::from_ref(&self.element.exponents))
    }

    /// `e_π·ε = ε`, exactly.
    pub fn is_e_pi_fixed(&self) -> bool {
        self.element.act_group_ring(&self.basis, &self.e_pi) == self.element
    }

    /// Deliberately wrong element: exponent `+1` on the first basis unit for
    /// which this changes the module `Z[G]·ε` (a perturbation that keeps the
    /// module is invisible to every module-level check).
    pub fn corrupted(&self) -> WeilStarkElement {
        let own = self.module().ok().map(|m| m.lattice().clone());
        let perturb = |i: usize| {
            let mut e = self.element.clone();
            e.exponents[i] += Q::one();
            self.with_element(e)
        };
        (0..self.element.exponents.len())
            .map(perturb)
            .find(|w| w.module().ok().map(|m| m.lattice().clone()) != own)
            .unwrap_or_else(|| perturb(0))
    }

    /// `ε/k` for the smallest prime `k` not dividing the content of the
    /// exponent vector; never integral when `ε` is.
    pub fn fractional_control(&self) -> (u64, WeilStarkElement) {
        let content = self.element.exponents.iter().fold(Z::zero(), |acc, e| acc.gcd(e.numer()));
        let k = (2u64..).find(|&p| is_prime(p) && !(&content % Z::from(p)).is_zero()).expect("a prime exists");
        (k, self.with_element(self.element.pow(&qr(1, k as i64))))
    }
}

/// `Σ_χ C(r_S(χ), a)`, the expected rank of `∩^a O^×_{L,S}`.
pub fn expected_rank(field: &RealAbelianField, s: &[Place], a: usize) -> usize {
    all_characters(field.group())
        .iter()
        .map(|chi| binomial(vanishing_order(chi, field, s), a))
        .sum()
}
