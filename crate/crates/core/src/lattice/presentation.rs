//! Finite presentations `Z[G]^d → Z[G]^{d'} → M → 0`.

use crate::arith::Q;
use crate::error::{Error, Result};
use crate::groupring::{GroupAlgebra, GroupRingElement, GroupRingMatrix};
use crate::lattice::glattice::GLattice;
use crate::lattice::normal_form::integer_left_kernel;
use crate::lattice::Lattice;
use crate::matrix::{QMatrix, ZMatrix};

/// Relation matrix with `d >= d'` rows; row `i` is the image of the `i`-th
/// basis vector of `Z[G]^d` in `Z[G]^{d'}`.
#[derive(Clone, Debug)]
pub struct Presentation {
    algebra: GroupAlgebra,
    relations: GroupRingMatrix,
    generators: usize,
}

impl Presentation {
    pub fn new(algebra: GroupAlgebra, relations: GroupRingMatrix, generators: usize) -> Result<Self> {
        if relations.len() < generators {
            return Err(Error::invalid(format!(
                "presentation needs at least as many relations as generators ({} < {generators})",
                relations.len()
            )));
        }
        if relations.iter().any(|r| r.len() != generators) {
            return Err(Error::Dimension("relation row length differs from generator count".into()));
        }
        let g = algebra.group().clone();
        for r in &relations {
            for x in r {
                if x.group().order() != g.order() || !x.is_integral() {
                    return Err(Error::invalid("relation entries must lie in Z[G] for the given group"));
                }
            }
        }
        Ok(Presentation { algebra, relations, generators })
    }

    pub fn algebra(&self) -> &GroupAlgebra {
        &self.algebra
    }

    pub fn relations(&self) -> &GroupRingMatrix {
        &self.relations
    }

    /// `d'`.
    pub fn generator_count(&self) -> usize {
        self.generators
    }

    /// `d`.
    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }
}

/// Flattens `x ∈ Z[G]^k` to `Z^{k|G|}` (block `k`, coordinate `g`).
fn flatten(row: &[GroupRingElement]) -> Vec<Q> {
    row.iter().flat_map(|x| x.to_vector()).collect()
}

/// Z-span of `g·x` for `x` in `rows`, inside `Z^{k|G|}`.
fn submodule_of_free(rows: &[Vec<GroupRingElement>], k: usize, n: usize) -> Lattice {
    let mut gens = Vec::new();
    for r in rows {
        for g in 0..n {
            gens.push(flatten(&r.iter().map(|x| x.translate(g)).collect::<Vec<_>>()));
        }
    }
    Lattice::from_generators(&QMatrix::from_rows(gens, k * n).expect("sized rows"))
}

/// A presentation of a G-lattice over its (abelian) group ring, with a
/// greedily chosen generating set and a greedily thinned relation set.
pub fn presentation_of_lattice(m: &GLattice) -> Result<Presentation> {
    let group = m.group().clone();
    let n = group.order();
    let r = m.rank();
    let t: Vec<ZMatrix> = group.elements().map(|g| m.lattice_matrix(g)).collect::<Result<_>>()?;
    // generators, in lattice coordinates
    let mut gens: Vec<Vec<crate::arith::Z>> = Vec::new();
    let mut span = Lattice::zero(r);
    for i in 0..r {
        let mut e = vec![crate::arith::Z::from(0); r];
        e[i] = crate::arith::Z::from(1);
        let eq: Vec<Q> = e.iter().map(|x| Q::from_integer(x.clone())).collect();
        if span.contains(&eq) {
            continue;
        }
        gens.push(e);
        let rows: Vec<Vec<Q>> = gens
            .iter()
            .flat_map(|v| t.iter().map(move |tg| tg.apply(v).into_iter().map(Q::from_integer).collect()))
            .collect();
        span = Lattice::from_generators(&QMatrix::from_rows(rows, r)?);
    }
    let k = gens.len();
    // the surjection Z^{k|G|} → Z^r, row (j, g) = g·m_j
    let mut rows = Vec::with_capacity(k * n);
    for v in &gens {
        for tg in &t {
            rows.push(tg.apply(v));
        }
    }
    let surj = ZMatrix::from_rows(rows, r)?;
    let kernel = integer_left_kernel(&surj);
    let table = group.table().clone();
    let to_row = |v: &[crate::arith::Z]| -> Vec<GroupRingElement> {
        (0..k)
            .map(|j| {
                let c = (0..n).map(|g| Q::from_integer(v[j * n + g].clone())).collect();
                GroupRingElement::from_coeffs(table.clone(), c).expect("sized")
            })
            .collect()
    };
    let full = Lattice::from_generators(&kernel.to_q());
    let mut chosen: Vec<Vec<GroupRingElement>> = Vec::new();
    let mut cur = Lattice::zero(k * n);
    for row in kernel.rows_iter() {
        if cur == full {
            break;
        }
        let cand = to_row(row);
        let v = flatten(&cand);
        if cur.contains(&v) {
            continue;
        }
        chosen.push(cand);
        cur = submodule_of_free(&chosen, k, n);
    }
    while chosen.len() < k {
        chosen.push((0..k).map(|_| GroupRingElement::zero(table.clone())).collect());
    }
    Presentation::new(GroupAlgebra::Abelian(group), chosen, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupring::FiniteAbelianGroup;

    #[test]
    fn trivial_module_presentation() {
        // Z with trivial C_2 action: one generator, relation (σ - 1)
        let g = FiniteAbelianGroup::new(&[2]).unwrap();
        let m = GLattice::from_integer_action(g, &[ZMatrix::identity(1)]).unwrap();
        let p = presentation_of_lattice(&m).unwrap();
        assert_eq!(p.generator_count(), 1);
        assert_eq!(p.relation_count(), 1);
        let rel = &p.relations()[0][0];
        assert_eq!(rel.augmentation(), Q::from_integer(0.into()));
        assert!(!rel.is_zero());
    }
}
