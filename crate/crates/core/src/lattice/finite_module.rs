//! Finite `Z[G]`-modules `⊕ Z/d_i` with an integer action.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{Q, Z};
use crate::error::{Error, Result};
use crate::groupring::{FiniteAbelianGroup, GroupRingElement};
use crate::lattice::glattice::GLattice;
use crate::lattice::normal_form::snf;
use crate::matrix::ZMatrix;

/// `A = ⊕_i Z/d_i` (each `d_i > 1`) with `G` acting by `x ↦ x·A_g mod d`.
#[derive(Clone, Debug)]
pub struct FiniteGModule {
    group: FiniteAbelianGroup,
    invariants: Vec<Z>,
    /// Action of every group element, indexed by element.
    actions: Vec<ZMatrix>,
}

fn reduce(v: &mut [Z], inv: &[Z]) {
    for (x, d) in v.iter_mut().zip(inv) {
        *x = x.mod_floor(d);
    }
}

impl FiniteGModule {
    /// Checks well-definedness (`d_i·A_{ij} ≡ 0 mod d_j`), invertibility and
    /// the group relations of the generator matrices.
    pub fn new(group: FiniteAbelianGroup, invariants: Vec<Z>, generator_actions: &[ZMatrix]) -> Result<Self> {
        let k = invariants.len();
        if invariants.iter().any(|d| d <= &Z::one()) {
            return Err(Error::invalid("finite module invariants must exceed 1"));
        }
        if generator_actions.len() != group.invariants().len() {
            return Err(Error::Dimension(format!(
                "{} action matrices for {} group generators",
                generator_actions.len(),
                group.invariants().len()
            )));
        }
        for a in generator_actions {
            if a.nrows() != k || a.ncols() != k {
                return Err(Error::Dimension("action matrix size differs from the invariant count".into()));
            }
            for i in 0..k {
                for j in 0..k {
                    if !(&invariants[i] * &a[(i, j)]).is_multiple_of(&invariants[j]) {
                        return Err(Error::invalid(format!("action entry ({i},{j}) is not well defined modulo the invariants")));
                    }
                }
            }
        }
        let mut m = FiniteGModule { group: group.clone(), invariants, actions: Vec::new() };
        let id = ZMatrix::identity(k);
        for (a, &d) in generator_actions.iter().zip(group.invariants()) {
            if !m.congruent(&a.pow(d), &id) {
                return Err(Error::invalid(format!("generator action does not have order dividing {d}")));
            }
        }
        for i in 0..generator_actions.len() {
            for j in 0..i {
                let (a, b) = (&generator_actions[i], &generator_actions[j]);
                if !m.congruent(&a.mul(b), &b.mul(a)) {
                    return Err(Error::invalid("generator actions do not commute"));
                }
            }
        }
        m.actions = group
            .elements()
            .map(|g| {
                group
                    .exponents(g)
                    .iter()
                    .zip(generator_actions)
                    .fold(ZMatrix::identity(k), |acc, (&e, a)| acc.mul(&a.pow(e)))
            })
            .collect();
        Ok(m)
    }

    /// Row-wise congruence modulo the column invariants.
    fn congruent(&self, a: &ZMatrix, b: &ZMatrix) -> bool {
        (0..a.nrows()).all(|i| (0..a.ncols()).all(|j| (&a[(i, j)] - &b[(i, j)]).is_multiple_of(&self.invariants[j])))
    }

    /// The trivial module.
    pub fn zero(group: FiniteAbelianGroup) -> Self {
        let n = group.order();
        FiniteGModule { group, invariants: Vec::new(), actions: vec![ZMatrix::identity(0); n] }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn invariants(&self) -> &[Z] {
        &self.invariants
    }

    pub fn order(&self) -> Z {
        self.invariants.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    /// Image of `v` under `x ∈ Z[G]`, reduced.
    pub fn act(&self, x: &GroupRingElement, v: &[Z]) -> Result<Vec<Z>> {
        if !x.is_integral() {
            return Err(Error::invalid("only integral group-ring elements act on a finite module"));
        }
        let mut out = vec![Z::zero(); v.len()];
        for (g, c) in x.support() {
            let w = self.actions[g].apply(v);
            for (o, wi) in out.iter_mut().zip(w) {
                *o += c.numer() * wi;
            }
        }
        reduce(&mut out, &self.invariants);
        Ok(out)
    }

    /// Whether `x` kills every generator.
    pub fn annihilates(&self, x: &GroupRingElement) -> Result<bool> {
        let k = self.invariants.len();
        for i in 0..k {
            let mut e = vec![Z::zero(); k];
            e[i] = Z::one();
            if self.act(x, &e)?.iter().any(|c| !c.is_zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// First generator not killed by `x`, if any.
    pub fn annihilation_witness(&self, x: &GroupRingElement) -> Result<Option<usize>> {
        let k = self.invariants.len();
        for i in 0..k {
            let mut e = vec![Z::zero(); k];
            e[i] = Z::one();
            if self.act(x, &e)?.iter().any(|c| !c.is_zero()) {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// `L1 / L2` for G-lattices with the same ambient action, in Smith
    /// coordinates.
    pub fn quotient(l1: &GLattice, l2: &GLattice) -> Result<Self> {
        let s = l1.lattice().sublattice_matrix(l2.lattice())?;
        if s.nrows() != s.ncols() {
            return Err(Error::invalid("quotient of lattices of different rank is infinite"));
        }
        let f = snf(&s);
        // new coordinates y = x·V; keep components with d ≠ 1
        let v = f.v.clone();
        let vinv = v.to_q().inverse()?.to_z().ok_or_else(|| Error::invalid("non-unimodular Smith transform"))?;
        let keep: Vec<usize> = (0..f.diagonal.len()).filter(|&i| !f.diagonal[i].is_one()).collect();
        if f.diagonal.iter().any(|d| d.is_zero()) {
            return Err(Error::invalid("quotient is infinite"));
        }
        let invariants: Vec<Z> = keep.iter().map(|&i| f.diagonal[i].clone()).collect();
        let group = l1.group().clone();
        let gens: Vec<ZMatrix> = group
            .generators()
            .iter()
            .map(|&g| {
                let t = l1.lattice_matrix(g)?;
                let full = vinv.mul(&t).mul(&v);
                Ok(ZMatrix::from_fn(keep.len(), keep.len(), |a, b| full[(keep[a], keep[b])].clone()))
            })
            .collect::<Result<_>>()?;
        if invariants.is_empty() {
            return Ok(FiniteGModule::zero(group));
        }
        FiniteGModule::new(group, invariants, &gens)
    }

    /// Scalar multiplication by `n` as a group-ring element.
    pub fn scalar(&self, n: &Z) -> GroupRingElement {
        GroupRingElement::from_rational(self.group.table().clone(), Q::from_integer(n.clone()))
    }
}
