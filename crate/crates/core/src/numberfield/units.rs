//! S-unit bases loaded from JSON fixtures, multiplicative elements in
//! exponent coordinates, and numerical-then-exact basis expression.

use std::collections::{BTreeMap, VecDeque};
use std::path::Path;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{common_denominator, format_rational, parse_rational, Q, Z};
use crate::cyclotomic::{denominators_supported_on, reduce_mod_prime, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::groupring::GroupRingElement;
use crate::lattice::GLattice;
use crate::matrix::ZMatrix;
use crate::numberfield::regulator::{RegulatorMap, RegulatorVector};
use crate::numberfield::{Place, RealAbelianField};
use crate::numeric::{solve_left_real, NumCtx, Real};

/// `{"conductor": m, "subgroup_gens": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub conductor: u64,
    pub subgroup_gens: Vec<u64>,
}

impl FieldSpec {
    pub fn build(&self) -> Result<RealAbelianField> {
        RealAbelianField::new(self.conductor, &self.subgroup_gens)
    }
}

/// A place of `Q` as written in fixtures: `"inf"` or a prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PlaceJson {
    Prime(u64),
    Name(String),
}

impl PlaceJson {
    pub fn to_place(&self) -> Result<Place> {
        match self {
            PlaceJson::Prime(p) => p.to_string().parse(),
            PlaceJson::Name(s) => s.parse(),
        }
    }

    pub fn from_place(p: Place) -> Self {
        match p {
            Place::Infinite => PlaceJson::Name("inf".into()),
            Place::Finite(p) => PlaceJson::Prime(p),
        }
    }
}

/// `σ(b_i) = signs[i] · Π_j b_j^{matrix[i][j]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionJson {
    pub matrix: Vec<Vec<i64>>,
    pub signs: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SUnitBasisJson {
    pub field: FieldSpec,
    #[serde(rename = "S")]
    pub s: Vec<PlaceJson>,
    #[serde(rename = "T", default)]
    pub t: Vec<u64>,
    pub basis: Vec<Vec<String>>,
    pub action: BTreeMap<String, ActionJson>,
}

/// A Z-basis of `O^×_{L,S,T}` (modulo `±1` when `T = ∅`) with its Galois
/// action, every invariant re-verified at load time.
#[derive(Clone, Debug)]
pub struct SUnitBasis {
    source: String,
    field: RealAbelianField,
    s: Vec<Place>,
    t: Vec<u64>,
    elements: Vec<CyclotomicNumber>,
    /// Exponent action `e ↦ e·M_g`, indexed by group element.
    actions: Vec<ZMatrix>,
    signs: Vec<Vec<i64>>,
    regulator: RegulatorMap,
}

fn power_product(elements: &[CyclotomicNumber], exps: &[Z], m: u64) -> Result<CyclotomicNumber> {
    let mut acc = CyclotomicNumber::one(m);
    for (b, e) in elements.iter().zip(exps) {
        if e.is_zero() {
            continue;
        }
        let e: i64 = e.try_into().map_err(|_| Error::invalid("exponent too large for exact evaluation"))?;
        acc = acc.mul(&b.pow(e)?);
    }
    Ok(acc)
}

impl SUnitBasis {
    pub fn load(path: &Path) -> Result<Self> {
        let file = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: file.clone(), source })?;
        let json: SUnitBasisJson = serde_json::from_str(&text).map_err(|source| Error::Json { path: file.clone(), source })?;
        Self::from_json(&json, &file)
    }

    /// Builds and verifies a basis; `source` names the fixture in errors.
    pub fn from_json(json: &SUnitBasisJson, source: &str) -> Result<Self> {
        let fail = |inv: &str, detail: String| Error::fixture(source, inv, detail);
        let field = json.field.build().map_err(|e| fail("field", e.to_string()))?;
        let m = field.conductor();
        let mut s: Vec<Place> = json
            .s
            .iter()
            .map(PlaceJson::to_place)
            .collect::<Result<_>>()
            .map_err(|e| fail("places", e.to_string()))?;
        s.sort();
        s.dedup();
        let s_primes: Vec<u64> = s.iter().filter_map(|p| if let Place::Finite(p) = p { Some(*p) } else { None }).collect();
        for p in field.ramified_primes() {
            if !s_primes.contains(&p) {
                return Err(fail("places", format!("S must contain the ramified prime {p}")));
            }
        }
        for &q in &json.t {
            if m % q == 0 || s_primes.contains(&q) || !crate::arith::is_prime(q) {
                return Err(fail("t_congruence", format!("T-prime {q} must be a prime outside S")));
            }
        }
        let regulator = RegulatorMap::new(&field, &s).map_err(|e| fail("places", e.to_string()))?;
        let rank = regulator.modules().dimension() - 1;
        if json.basis.len() != rank {
            return Err(fail("rank", format!("expected {rank} basis elements (|S_L| − 1), found {}", json.basis.len())));
        }
        let phi = CyclotomicNumber::zero(m).coeffs().len();
        let mut elements = Vec::with_capacity(rank);
        for (i, coeffs) in json.basis.iter().enumerate() {
            if coeffs.len() != phi {
                return Err(fail("coefficients", format!("basis element {i} has {} coefficients, expected {phi}", coeffs.len())));
            }
            let c: Vec<Q> = coeffs
                .iter()
                .map(|x| parse_rational(x))
                .collect::<Result<_>>()
                .map_err(|e| fail("coefficients", e.to_string()))?;
            let b = CyclotomicNumber::from_coeffs(m, c)?;
            if b.is_zero() {
                return Err(fail("s_unit", format!("basis element {i} is zero")));
            }
            if !field.contains(&b) {
                return Err(fail("in_field", format!("basis element {i} is not fixed by H")));
            }
            let inv = b.inverse()?;
            if !denominators_supported_on(&b, &s_primes) || !denominators_supported_on(&inv, &s_primes) {
                return Err(fail("s_unit", format!("basis element {i} is not an S-unit")));
            }
            for &q in &json.t {
                let d = b.sub(&CyclotomicNumber::one(m));
                let ok = reduce_mod_prime(&d, q).is_some_and(|v| v.iter().all(|&c| c == 0));
                if !ok {
                    return Err(fail("t_congruence", format!("basis element {i} is not ≡ 1 modulo {q}")));
                }
            }
            elements.push(b);
        }

        let group = field.group().clone();
        let n_el = group.order();
        let mut actions: Vec<Option<ZMatrix>> = vec![None; n_el];
        let mut signs: Vec<Option<Vec<i64>>> = vec![None; n_el];
        actions[group.identity()] = Some(ZMatrix::identity(rank));
        signs[group.identity()] = Some(vec![1; rank]);
        for (label, act) in &json.action {
            let g = field.element_from_label(label).map_err(|e| fail("galois_action", e.to_string()))?;
            if act.matrix.len() != rank || act.matrix.iter().any(|r| r.len() != rank) || act.signs.len() != rank {
                return Err(fail("galois_action", format!("action of {label} has the wrong shape")));
            }
            if act.signs.iter().any(|&x| x != 1 && x != -1) {
                return Err(fail("galois_action", format!("signs of {label} must be ±1")));
            }
            if !json.t.is_empty() && act.signs.iter().any(|&x| x != 1) {
                return Err(fail("galois_action", format!("T-units are torsion-free but {label} has a sign −1")));
            }
            let mat = ZMatrix::from_i64(&act.matrix);
            for (i, b) in elements.iter().enumerate() {
                let image = field.act(g, b);
                let expected = power_product(&elements, mat.row(i), m)?.scale(&Q::from_integer(act.signs[i].into()));
                if image != expected {
                    return Err(fail("galois_action", format!("σ_{label} of basis element {i} does not match its matrix row")));
                }
            }
            if actions[g].as_ref().is_some_and(|a| *a != mat) {
                return Err(fail("galois_action", format!("two actions given for the class of {label}")));
            }
            actions[g] = Some(mat);
            signs[g] = Some(act.signs.clone());
        }
        // close under composition: M_{ab} = M_b·M_a, sign_{ab,i} = s^b_i·Π_j (s^a_j)^{M^b_ij}
        let given: Vec<usize> = (0..n_el).filter(|&g| actions[g].is_some() && g != group.identity()).collect();
        let mut queue: VecDeque<usize> = (0..n_el).filter(|&g| actions[g].is_some()).collect();
        while let Some(b) = queue.pop_front() {
            for &a in &given {
                let ab = group.mul(a, b);
                let (ma, mb) = (actions[a].clone().expect("given"), actions[b].clone().expect("reached"));
                let (sa, sb) = (signs[a].clone().expect("given"), signs[b].clone().expect("reached"));
                let mab = mb.mul(&ma);
                let sab: Vec<i64> = (0..rank)
                    .map(|i| {
                        let neg = (0..rank).filter(|&j| sa[j] == -1 && mb[(i, j)].is_odd()).count();
                        sb[i] * if neg % 2 == 0 { 1 } else { -1 }
                    })
                    .collect();
                match &actions[ab] {
                    Some(existing) => {
                        if *existing != mab || signs[ab].as_ref() != Some(&sab) {
                            return Err(fail("galois_action", format!("action is not a group action at element {}", group.name(ab))));
                        }
                    }
                    None => {
                        actions[ab] = Some(mab);
                        signs[ab] = Some(sab);
                        queue.push_back(ab);
                    }
                }
            }
        }
        if actions.iter().any(Option::is_none) {
            return Err(fail("galois_action", "the given actions do not generate the Galois group".into()));
        }
        let basis = SUnitBasis {
            source: source.to_string(),
            field,
            s,
            t: json.t.clone(),
            elements,
            actions: actions.into_iter().map(|a| a.expect("closed")).collect(),
            signs: signs.into_iter().map(|a| a.expect("closed")).collect(),
            regulator,
        };
        basis.check_independence().map_err(|e| fail("independence", e.to_string()))?;
        Ok(basis)
    }

    /// The log vectors span a lattice of full rank in `R·X`.
    fn check_independence(&self) -> Result<()> {
        let mut ctx = NumCtx::new(40)?;
        let logs = self.log_matrix(&mut ctx)?;
        let tol = ctx.ten_pow_neg(20);
        for (i, row) in logs.iter().enumerate() {
            if !row.coordinate_sum(&ctx).abs_lt(&tol) {
                return Err(Error::invalid(format!("basis element {i} violates the product formula")));
            }
        }
        let n = self.rank();
        let square: Vec<Vec<Real>> = logs.iter().map(|r| r.coords[..n].to_vec()).collect();
        let rhs = vec![ctx.zero(); n];
        solve_left_real(&square, &rhs, &ctx.ten_pow_neg(10)).map(|_| ())
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn field(&self) -> &RealAbelianField {
        &self.field
    }

    pub fn places(&self) -> &[Place] {
        &self.s
    }

    pub fn t_primes(&self) -> &[u64] {
        &self.t
    }

    pub fn rank(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[CyclotomicNumber] {
        &self.elements
    }

    /// `M_g`, acting on exponent row vectors.
    pub fn action(&self, g: usize) -> &ZMatrix {
        &self.actions[g]
    }

    pub fn signs(&self, g: usize) -> &[i64] {
        &self.signs[g]
    }

    pub fn regulator_map(&self) -> &RegulatorMap {
        &self.regulator
    }

    /// The exponent lattice `Z^n` as a G-lattice.
    pub fn unit_lattice(&self) -> Result<GLattice> {
        let group = self.field.group().clone();
        let gens: Vec<ZMatrix> = group.generators().iter().map(|&g| self.actions[g].clone()).collect();
        if gens.is_empty() {
            return GLattice::new(crate::lattice::Lattice::standard(self.rank()), group, &[]);
        }
        GLattice::from_integer_action(group, &gens)
    }

    /// `R_{L,S}(b_i)` for each basis element.
    pub fn log_matrix(&self, ctx: &mut NumCtx) -> Result<Vec<RegulatorVector>> {
        self.elements.iter().map(|b| self.regulator.log_embedding(b, ctx)).collect()
    }

    /// Exact value of a multiplicative element with integral exponents.
    pub fn evaluate(&self, u: &MultiplicativeElement) -> Result<CyclotomicNumber> {
        if !u.is_integral() {
            return Err(Error::invalid("exact evaluation needs integral exponents"));
        }
        let exps: Vec<Z> = u.exponents.iter().map(|e| e.to_integer()).collect();
        power_product(&self.elements, &exps, self.field.conductor())
    }
}

/// `Π b_i^{e_i}` in `Q ⊗ O^×`, as a rational exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicativeElement {
    pub exponents: Vec<Q>,
}

impl MultiplicativeElement {
    pub fn new(exponents: Vec<Q>) -> Self {
        MultiplicativeElement { exponents }
    }

    pub fn identity(rank: usize) -> Self {
        MultiplicativeElement { exponents: vec![Q::zero(); rank] }
    }

    pub fn basis_element(rank: usize, i: usize) -> Self {
        let mut e = Self::identity(rank);
        e.exponents[i] = Q::one();
        e
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.exponents.iter().all(|e| e.is_integer())
    }

    /// Product in `Q ⊗ O^×` (sum of exponents).
    pub fn mul(&self, other: &Self) -> Self {
        MultiplicativeElement { exponents: self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect() }
    }

    pub fn pow(&self, q: &Q) -> Self {
        MultiplicativeElement { exponents: self.exponents.iter().map(|e| e * q).collect() }
    }

    pub fn inverse(&self) -> Self {
        self.pow(&-Q::one())
    }

    /// `σ_g(u)`.
    pub fn act(&self, basis: &SUnitBasis, g: usize) -> Self {
        let m = basis.action(g);
        let n = self.exponents.len();
        let exps = (0..n)
            .map(|j| (0..n).fold(Q::zero(), |acc, i| acc + &self.exponents[i] * Q::from_integer(m[(i, j)].clone())))
            .collect();
        MultiplicativeElement { exponents: exps }
    }

    /// `x·u` for `x ∈ Q[G]`.
    pub fn act_group_ring(&self, basis: &SUnitBasis, x: &GroupRingElement) -> Self {
        let mut acc = Self::identity(self.exponents.len());
        for (g, c) in x.support() {
            acc = acc.mul(&self.act(basis, g).pow(c));
        }
        acc
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.exponents.iter().map(format_rational).collect()
    }
}

/// `Π x_k^{q_k}` with `x_k ∈ L^×` and rational `q_k`.
#[derive(Clone, Debug)]
pub struct FormalProduct(pub Vec<(CyclotomicNumber, Q)>);

impl FormalProduct {
    pub fn single(x: CyclotomicNumber, q: Q) -> Self {
        FormalProduct(vec![(x, q)])
    }
}

/// Solves for the exponents of `x` numerically, rounds them to rationals
/// with denominator at most `max_den`, then certifies exactly that
/// `x^D = ±Π b_j^{D·e_j}` for the common denominator `D`.
pub fn express_in_basis(x: &FormalProduct, basis: &SUnitBasis, ctx: &mut NumCtx, max_den: u64) -> Result<MultiplicativeElement> {
    let n = basis.rank();
    let map = basis.regulator_map();
    let mut target = RegulatorVector::zero(map.modules().dimension(), ctx);
    for (y, q) in &x.0 {
        let l = map.log_embedding(y, ctx)?;
        let c = ctx.rational(q);
        target.add_scaled(&l, &c);
    }
    let logs = basis.log_matrix(ctx)?;
    let square: Vec<Vec<Real>> = logs.iter().map(|r| r.coords[..n].to_vec()).collect();
    let eps = ctx.ten_pow_neg(ctx.digits() / 2);
    let sol = solve_left_real(&square, &target.coords[..n], &eps)?;
    // residual on every coordinate, including the dropped one
    let mut fitted = RegulatorVector::zero(target.coords.len(), ctx);
    for (s, row) in sol.iter().zip(&logs) {
        fitted.add_scaled(row, s);
    }
    let resid = fitted.sub(&target).max_abs(ctx);
    if !resid.abs_lt(&eps) {
        return Err(Error::NotInSpan(format!("log-embedding residual {} exceeds tolerance", ctx.format(&resid, 6))));
    }
    let exps: Vec<Q> = sol
        .iter()
        .enumerate()
        .map(|(i, s)| {
            ctx.reconstruct_rational(s, max_den, &eps).ok_or_else(|| {
                let shown = ctx.format(s, 20);
                Error::Reconstruction(format!("exponent {i} ≈ {shown} has no denominator ≤ {max_den}"))
            })
        })
        .collect::<Result<_>>()?;
    let d = common_denominator(exps.iter().chain(x.0.iter().map(|(_, q)| q)));
    let m = basis.field().conductor();
    let mut lhs = CyclotomicNumber::one(m);
    for (y, q) in &x.0 {
        let e: i64 = (q * Q::from_integer(d.clone())).to_integer().try_into().map_err(|_| Error::invalid("exponent overflow"))?;
        lhs = lhs.mul(&y.pow(e)?);
    }
    let scaled: Vec<Z> = exps.iter().map(|e| (e * Q::from_integer(d.clone())).to_integer()).collect();
    let rhs = power_product(basis.elements(), &scaled, m)?;
    if lhs != rhs && lhs != rhs.neg() {
        return Err(Error::NotInSpan("exact verification failed: the powers differ by more than a sign".into()));
    }
    Ok(MultiplicativeElement { exponents: exps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qr;

    fn golden_basis() -> SUnitBasisJson {
        serde_json::from_str(
            r#"{"field": {"conductor": 5, "subgroup_gens": [4]}, "S": ["inf", 5], "T": [],
                "basis": [["0", "0", "-1", "-1"], ["-1", "0", "-2", "-2"]],
                "action": {"2": {"matrix": [[-1, 0], [0, 1]], "signs": [-1, -1]}}}"#,
        )
        .unwrap()
    }

    #[test]
    fn golden_ratio_basis_loads() {
        let b = SUnitBasis::from_json(&golden_basis(), "inline").unwrap();
        assert_eq!(b.rank(), 2);
        let g = b.field().class_of(2).unwrap();
        let u = MultiplicativeElement::new(vec![qr(1, 2), qr(3, 1)]);
        assert_eq!(u.act(&b, g).exponents, vec![qr(-1, 2), qr(3, 1)]);
        assert_eq!(u.act(&b, g).act(&b, g), u);
    }

    #[test]
    fn corrupted_fixtures_name_the_invariant() {
        let mut j = golden_basis();
        j.basis[0][0] = "1/7".into();
        match SUnitBasis::from_json(&j, "bad") {
            Err(Error::Fixture { invariant, .. }) => assert_eq!(invariant, "s_unit"),
            other => panic!("unexpected {other:?}"),
        }
        let mut j = golden_basis();
        j.action.get_mut("2").unwrap().signs[0] = 1;
        match SUnitBasis::from_json(&j, "bad") {
            Err(Error::Fixture { invariant, .. }) => assert_eq!(invariant, "galois_action"),
            other => panic!("unexpected {other:?}"),
        }
        let mut j = golden_basis();
        j.basis.pop();
        assert!(matches!(SUnitBasis::from_json(&j, "bad"), Err(Error::Fixture { .. })));
    }

    #[test]
    fn half_norm_of_one_minus_zeta_five() {
        let b = SUnitBasis::from_json(&golden_basis(), "inline").unwrap();
        let one = CyclotomicNumber::one(5);
        let n = one.sub(&CyclotomicNumber::zeta_power(5, 1)).mul(&one.sub(&CyclotomicNumber::zeta_power(5, 4)));
        let mut ctx = NumCtx::new(60).unwrap();
        let e = express_in_basis(&FormalProduct::single(n, qr(1, 2)), &b, &mut ctx, 2).unwrap();
        assert_eq!(e.exponents, vec![qr(-1, 2), qr(1, 2)]);
        let e1 = express_in_basis(&FormalProduct::single(b.elements()[1].clone(), qr(1, 1)), &b, &mut ctx, 2).unwrap();
        assert_eq!(e1, MultiplicativeElement::basis_element(2, 1));
        // 2 is not an S-unit for S = {∞, 5}
        let two = CyclotomicNumber::from_rational(5, qr(2, 1));
        assert!(express_in_basis(&FormalProduct::single(two, qr(1, 1)), &b, &mut ctx, 2).is_err());
    }
}
