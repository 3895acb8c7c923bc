//! Elements of a group ring `K[G]` with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arith::{format_rational, parse_rational, Q};
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::groupring::group::FiniteGroup;

/// Exact coefficient ring for group-ring elements.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational_like(&self, q: &Q) -> Self;
}

impl Coeff for Q {
    fn zero_like(&self) -> Self {
        Q::zero()
    }
    fn one_like(&self) -> Self {
        Q::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational_like(&self, q: &Q) -> Self {
        q.clone()
    }
}

impl Coeff for CyclotomicNumber {
    fn zero_like(&self) -> Self {
        CyclotomicNumber::zero(self.conductor())
    }
    fn one_like(&self) -> Self {
        CyclotomicNumber::one(self.conductor())
    }
    fn is_zero(&self) -> bool {
        CyclotomicNumber::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        CyclotomicNumber::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        CyclotomicNumber::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        CyclotomicNumber::mul(self, o)
    }
    fn neg(&self) -> Self {
        CyclotomicNumber::neg(self)
    }
    fn from_rational_like(&self, q: &Q) -> Self {
        CyclotomicNumber::from_rational(self.conductor(), q.clone())
    }
}

/// `Σ_g c_g g` stored densely, indexed by group element.
#[derive(Clone)]
pub struct GroupRingElement<C: Coeff = Q> {
    group: Arc<FiniteGroup>,
    coeffs: Vec<C>,
}

/// Element of `Q[G]` (also used for `Z[G]`).
pub type RationalGroupRingElement = GroupRingElement<Q>;

impl<C: Coeff> PartialEq for GroupRingElement<C> {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group)
            && self.coeffs == other.coeffs
    }
}

impl<C: Coeff> fmt::Debug for GroupRingElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .support()
            .map(|(g, c)| format!("({c:?})*{}", self.group.name(g)))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl<C: Coeff> GroupRingElement<C> {
    /// From dense coefficients indexed by group element.
    pub fn from_coeffs(group: Arc<FiniteGroup>, coeffs: Vec<C>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::Dimension(format!(
                "group of order {} needs {} coefficients, got {}",
                group.order(),
                group.order(),
                coeffs.len()
            )));
        }
        Ok(GroupRingElement { group, coeffs })
    }

    pub fn zero_with(group: Arc<FiniteGroup>, like: &C) -> Self {
        let z = like.zero_like();
        let n = group.order();
        GroupRingElement { group, coeffs: vec![z; n] }
    }

    pub fn basis_element(group: Arc<FiniteGroup>, g: usize, like: &C) -> Self {
        let mut x = Self::zero_with(group, like);
        x.coeffs[g] = like.one_like();
        x
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coefficient(&self, g: usize) -> &C {
        &self.coeffs[g]
    }

    /// Nonzero terms `(g, c_g)`.
    pub fn support(&self) -> impl Iterator<Item = (usize, &C)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn same_group(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.group, &other.group) || self.group == other.group,
            "group ring elements over different groups"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_group(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect();
        GroupRingElement { group: self.group.clone(), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_group(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect();
        GroupRingElement { group: self.group.clone(), coeffs }
    }

    pub fn neg(&self) -> Self {
        GroupRingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        GroupRingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_group(other);
        let like = &self.coeffs[0];
        let mut out = vec![like.zero_like(); self.group.order()];
        for (g, a) in self.support() {
            for (h, b) in other.support() {
                let k = self.group.mul(g, h);
                out[k] = out[k].add(&a.mul(b));
            }
        }
        GroupRingElement { group: self.group.clone(), coeffs: out }
    }

    /// Left multiplication by a group element.
    pub fn translate(&self, g: usize) -> Self {
        let like = &self.coeffs[0];
        let mut out = vec![like.zero_like(); self.group.order()];
        for (h, c) in self.coeffs.iter().enumerate() {
            out[self.group.mul(g, h)] = c.clone();
        }
        GroupRingElement { group: self.group.clone(), coeffs: out }
    }

    /// The involution `g ↦ g^{-1}` extended linearly.
    pub fn involution(&self) -> Self {
        let like = &self.coeffs[0];
        let mut out = vec![like.zero_like(); self.group.order()];
        for (h, c) in self.coeffs.iter().enumerate() {
            out[self.group.inv(h)] = c.clone();
        }
        GroupRingElement { group: self.group.clone(), coeffs: out }
    }

    /// Augmentation `Σ c_g`.
    pub fn augmentation(&self) -> C {
        let like = &self.coeffs[0];
        self.coeffs.iter().fold(like.zero_like(), |a, c| a.add(c))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> GroupRingElement<D> {
        GroupRingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        let like = &self.coeffs[0];
        let mut acc = Self::basis_element(self.group.clone(), self.group.identity(), like);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl GroupRingElement<Q> {
    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        Self::zero_with(group, &Q::zero())
    }

    pub fn one(group: Arc<FiniteGroup>) -> Self {
        let e = group.identity();
        Self::basis_element(group, e, &Q::zero())
    }

    pub fn from_group_element(group: Arc<FiniteGroup>, g: usize) -> Self {
        Self::basis_element(group, g, &Q::zero())
    }

    pub fn from_rational(group: Arc<FiniteGroup>, c: Q) -> Self {
        Self::one(group).scale(&c)
    }

    pub fn from_i64(group: Arc<FiniteGroup>, coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(group, coeffs.iter().map(|&c| crate::arith::q(c)).collect())
    }

    /// Whether all coefficients are integers, i.e. the element lies in `Z[G]`.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// The norm element `Σ_g g`.
    pub fn norm_element(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        Self::from_coeffs(group, vec![Q::one(); n]).expect("sized")
    }

    /// Coefficient table keyed by element name, `"p/q"` values, zeros omitted.
    pub fn to_table(&self) -> BTreeMap<String, String> {
        self.support()
            .map(|(g, c)| (self.group.name(g).to_string(), format_rational(c)))
            .collect()
    }

    /// Parses a coefficient table keyed by element name.
    pub fn from_table(group: Arc<FiniteGroup>, table: &BTreeMap<String, String>) -> Result<Self> {
        let mut x = Self::zero(group.clone());
        for (name, v) in table {
            let g = group
                .index_of(name)
                .ok_or_else(|| Error::Parse(format!("unknown group element {name:?}")))?;
            x.coeffs[g] = parse_rational(v)?;
        }
        Ok(x)
    }

    /// Coefficient vector as a point of `Q^{|G|}`.
    pub fn to_vector(&self) -> Vec<Q> {
        self.coeffs.clone()
    }

    /// Matrix of left multiplication by `self` on row vectors in `Q^{|G|}`:
    /// `v * M = coeffs(self · v)`.
    pub fn multiplication_matrix(&self) -> crate::matrix::QMatrix {
        let n = self.group.order();
        let mut m = crate::matrix::QMatrix::zeros(n, n);
        for h in 0..n {
            for (g, c) in self.support() {
                let k = self.group.mul(g, h);
                m[(h, k)] += c;
            }
        }
        m
    }
}

/// Embeds a rational element into cyclotomic coefficients.
pub fn to_cyclotomic(x: &GroupRingElement<Q>, conductor: u64) -> GroupRingElement<CyclotomicNumber> {
    x.map_coeffs(|c| CyclotomicNumber::from_rational(conductor, c.clone()))
}

/// Recovers rational coefficients, if every coefficient is rational.
pub fn to_rational(x: &GroupRingElement<CyclotomicNumber>) -> Option<GroupRingElement<Q>> {
    let coeffs: Option<Vec<Q>> = x.coeffs().iter().map(|c| c.as_rational().cloned()).collect();
    Some(GroupRingElement::from_coeffs(x.group().clone(), coeffs?).expect("sized"))
}
