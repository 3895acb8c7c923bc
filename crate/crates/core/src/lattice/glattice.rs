//! Lattices stable under a finite abelian group action.

use num_traits::{One, Zero};

use crate::arith::{Q, Z};
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::groupring::{Character, FiniteAbelianGroup, GroupRingElement};
use crate::lattice::Lattice;
use crate::matrix::{QMatrix, ZMatrix};

/// A Z-lattice `M ⊂ Q^n` with `G` acting on `Q^n` by `v ↦ v·A_g`.
#[derive(Clone, Debug)]
pub struct GLattice {
    lattice: Lattice,
    group: FiniteAbelianGroup,
    /// Ambient matrix of every group element, indexed by element.
    actions: Vec<QMatrix>,
}

impl GLattice {
    /// Builds from the ambient action of the invariant-factor generators.
    /// Checks the group relations and that `M` is stable.
    pub fn new(lattice: Lattice, group: FiniteAbelianGroup, generator_actions: &[QMatrix]) -> Result<Self> {
        let n = lattice.ambient_dim();
        let gens = group.invariants();
        if generator_actions.len() != gens.len() {
            return Err(Error::Dimension(format!(
                "{} generator matrices for a group with {} generators",
                generator_actions.len(),
                gens.len()
            )));
        }
        for (a, &d) in generator_actions.iter().zip(gens) {
            if a.nrows() != n || a.ncols() != n {
                return Err(Error::Dimension("action matrix size".into()));
            }
            if a.pow(d) != QMatrix::identity(n) {
                return Err(Error::invalid(format!("generator action does not have order dividing {d}")));
            }
        }
        for i in 0..generator_actions.len() {
            for j in 0..i {
                let (a, b) = (&generator_actions[i], &generator_actions[j]);
                if a.mul(b) != b.mul(a) {
                    return Err(Error::invalid("generator actions do not commute"));
                }
            }
        }
        let actions = group
            .elements()
            .map(|g| {
                group
                    .exponents(g)
                    .iter()
                    .zip(generator_actions)
                    .fold(QMatrix::identity(n), |acc, (&k, a)| acc.mul(&a.pow(k)))
            })
            .collect();
        let gl = GLattice { lattice, group, actions };
        for g in gl.group.generators() {
            gl.lattice_matrix(g)?;
        }
        Ok(gl)
    }

    /// `Z^n` with integer matrices for the generators.
    pub fn from_integer_action(group: FiniteAbelianGroup, generator_actions: &[ZMatrix]) -> Result<Self> {
        let n = generator_actions.first().map_or(0, |a| a.nrows());
        let q: Vec<QMatrix> = generator_actions.iter().map(|a| a.to_q()).collect();
        GLattice::new(Lattice::standard(n), group, &q)
    }

    /// Free module `Z[G]^k` with the left regular action on each copy.
    pub fn free(group: FiniteAbelianGroup, k: usize) -> Self {
        let n = group.order();
        let gens: Vec<QMatrix> = group
            .generators()
            .iter()
            .map(|&g| {
                let m = GroupRingElement::from_group_element(group.table().clone(), g).multiplication_matrix();
                block_diagonal(&m, k)
            })
            .collect();
        GLattice::new(Lattice::standard(n * k), group, &gens).expect("regular action is valid")
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.lattice.ambient_dim()
    }

    pub fn ambient_action(&self, g: usize) -> &QMatrix {
        &self.actions[g]
    }

    /// Integer matrix `T_g` with `B·A_g = T_g·B` for the basis `B`.
    pub fn lattice_matrix(&self, g: usize) -> Result<ZMatrix> {
        let b = self.lattice.basis();
        let img = b.mul(&self.actions[g]);
        let mut rows = Vec::with_capacity(b.nrows());
        for (i, r) in img.rows_iter().enumerate() {
            let c = self
                .lattice
                .coordinates(r)
                .ok_or_else(|| Error::invalid(format!("group element {g} does not preserve the span (row {i})")))?;
            if c.iter().any(|x| !x.denom().is_one()) {
                return Err(Error::invalid(format!("lattice not stable under group element {g} (row {i})")));
            }
            rows.push(c.into_iter().map(|x| x.numer().clone()).collect());
        }
        ZMatrix::from_rows(rows, b.nrows())
    }

    /// Action of `x ∈ Q[G]` on an ambient vector.
    pub fn act(&self, x: &GroupRingElement<Q>, v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); v.len()];
        for (g, c) in x.support() {
            let w = self.actions[g].apply(v);
            for (o, wi) in out.iter_mut().zip(w) {
                *o += c * wi;
            }
        }
        out
    }

    /// Z[G]-submodule generated by ambient vectors.
    pub fn submodule(&self, gens: &[Vec<Q>]) -> Result<GLattice> {
        let mut rows = Vec::new();
        for v in gens {
            for g in self.group.elements() {
                rows.push(self.actions[g].apply(v));
            }
        }
        let l = Lattice::from_generators(&QMatrix::from_rows(rows, self.ambient_dim())?);
        self.with_lattice(l)
    }

    /// Same ambient action on a different stable lattice.
    pub fn with_lattice(&self, lattice: Lattice) -> Result<GLattice> {
        let gens: Vec<QMatrix> = self.group.generators().iter().map(|&g| self.actions[g].clone()).collect();
        GLattice::new(lattice, self.group.clone(), &gens)
    }

    /// Character of the representation `Q ⊗ M`, as traces.
    pub fn traces(&self) -> Result<Vec<Z>> {
        self.group.elements().map(|g| Ok(self.lattice_matrix(g)?.trace())).collect()
    }

    /// Multiplicity of `χ` in `Q(ζ_e) ⊗ M`.
    pub fn character_multiplicity(&self, chi: &Character) -> Result<u64> {
        let tr = self.traces()?;
        let e = chi.value_conductor();
        let conj = chi.conj();
        let mut acc = CyclotomicNumber::zero(e);
        for (g, t) in tr.iter().enumerate() {
            acc = acc.add(&conj.value(&self.group, g).scale(&Q::from_integer(t.clone())));
        }
        let acc = acc.scale(&Q::new(Z::one(), Z::from(self.group.order() as u64)));
        acc.as_rational()
            .filter(|q| q.denom().is_one() && q.numer() >= &Z::zero())
            .and_then(|q| num_traits::ToPrimitive::to_u64(q.numer()))
            .ok_or_else(|| Error::invalid("character multiplicity is not a natural number"))
    }
}

pub fn block_diagonal(m: &QMatrix, k: usize) -> QMatrix {
    let n = m.nrows();
    QMatrix::from_fn(n * k, n * k, |i, j| {
        if i / n == j / n {
            m[(i % n, j % n)].clone()
        } else {
            Q::zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupring::all_characters;

    #[test]
    fn free_module_multiplicities() {
        let g = FiniteAbelianGroup::new(&[2, 2]).unwrap();
        let f = GLattice::free(g.clone(), 2);
        for chi in all_characters(&g) {
            assert_eq!(f.character_multiplicity(&chi).unwrap(), 2);
        }
    }

    #[test]
    fn unstable_lattice_is_rejected() {
        let g = FiniteAbelianGroup::new(&[2]).unwrap();
        let swap = QMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
        let l = Lattice::from_rows(vec![vec![Q::one(), Q::zero()], vec![Q::zero(), Q::from_integer(2.into())]], 2).unwrap();
        assert!(GLattice::new(l, g, &[swap]).is_err());
    }
}
