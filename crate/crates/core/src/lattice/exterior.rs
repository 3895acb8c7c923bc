//! Exterior powers over `Q[G]`, the determinant pairing with equivariant
//! functionals, and Rubin lattices.
//!
//! A G-lattice `M` of rank `n` is embedded in `Q[G]^n` by
//! `Ψ(m)_i = Σ_g ℓ_i(g^{-1} m)·g`, where `ℓ_i` are the coordinate
//! functionals of the lattice basis. Then `∧^r_{Q[G]} (Q ⊗ M)` sits inside
//! `∧^r Q[G]^n = Q[G]^{C(n, r)}`, whose coordinates are the `r × r` minors.
//! Every equivariant `φ: M → Z[G]` equals `Σ_i f_i Ψ_i` with the integers
//! `f_i = ε_1(φ(b_i))` (coefficient of the identity), so pairings reduce
//! to integer minors of the functional matrix.

use num_traits::Zero;

use crate::arith::{binomial, subsets, Q};
use crate::error::{Error, Result};
use crate::groupring::{det_commutative, FiniteAbelianGroup, GroupRingElement, GroupRingMatrix};
use crate::lattice::glattice::{block_diagonal, GLattice};
use crate::lattice::hom::hom_lattice;
use crate::lattice::normal_form::lattice_basis;
use crate::lattice::Lattice;
use crate::matrix::QMatrix;

/// A lattice inside `Q[G]^{C(n, r)}` attached to `∧^r` of a rank-`n` module.
#[derive(Clone, Debug)]
pub struct ExteriorPower {
    pub module: GLattice,
    /// Rank `n` of the underlying lattice.
    pub base_rank: usize,
    pub degree: usize,
    /// The `r`-subsets of `0..n` indexing the `Q[G]` blocks.
    pub blocks: Vec<Vec<usize>>,
}

impl ExteriorPower {
    /// The `Q[G]` coordinate of block `b` of an ambient vector.
    pub fn block(&self, v: &[Q], b: usize) -> GroupRingElement {
        let n = self.module.group().order();
        GroupRingElement::from_coeffs(self.module.group().table().clone(), v[b * n..(b + 1) * n].to_vec())
            .expect("sized")
    }
}

/// Translation action of `G` on `Q[G]^k` (block-diagonal regular action).
fn regular_actions(group: &FiniteAbelianGroup, k: usize) -> Vec<QMatrix> {
    group
        .generators()
        .iter()
        .map(|&g| {
            let m = GroupRingElement::from_group_element(group.table().clone(), g).multiplication_matrix();
            block_diagonal(&m, k)
        })
        .collect()
}

/// `Ψ(c) ∈ Q[G]^n` for lattice coordinates `c`.
pub fn psi(m: &GLattice, coords: &[Q]) -> Result<Vec<GroupRingElement>> {
    let group = m.group();
    let n = m.rank();
    let table = group.table().clone();
    let mut comps = vec![vec![Q::zero(); group.order()]; n];
    for g in group.elements() {
        let t = m.lattice_matrix(group.inv(g))?.to_q();
        let v = t.apply(coords);
        for i in 0..n {
            comps[i][g] = v[i].clone();
        }
    }
    Ok(comps
        .into_iter()
        .map(|c| GroupRingElement::from_coeffs(table.clone(), c).expect("sized"))
        .collect())
}

/// Coordinates of `v_1 ∧ … ∧ v_r` for `v_j ∈ Q[G]^n`, flattened.
pub fn wedge(vectors: &[Vec<GroupRingElement>], group: &FiniteAbelianGroup, n: usize) -> Vec<Q> {
    let r = vectors.len();
    let mut out = Vec::with_capacity(binomial(n, r) * group.order());
    for j in subsets(n, r) {
        let mat: GroupRingMatrix = j.iter().map(|&i| vectors.iter().map(|v| v[i].clone()).collect()).collect();
        out.extend(det_commutative(&mat, group.table()).to_vector());
    }
    out
}

/// Image of `∧^r_{Z[G]} M` in `Q[G]^{C(n, r)}`.
pub fn exterior_power(m: &GLattice, r: usize) -> Result<ExteriorPower> {
    let group = m.group().clone();
    let n = m.rank();
    let order = group.order();
    let blocks = subsets(n, r);
    let dim = blocks.len() * order;
    let psis: Vec<Vec<GroupRingElement>> = (0..n)
        .map(|j| {
            let mut e = vec![Q::zero(); n];
            e[j] = Q::from_integer(1.into());
            psi(m, &e)
        })
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for s in &blocks {
        let vs: Vec<Vec<GroupRingElement>> = s.iter().map(|&j| psis[j].clone()).collect();
        let w = wedge(&vs, &group, n);
        for g in group.elements() {
            rows.push(translate_flat(&w, &group, g));
        }
    }
    let lattice = if rows.is_empty() {
        Lattice::zero(dim)
    } else {
        Lattice::from_generators(&QMatrix::from_rows(rows, dim)?)
    };
    let module = GLattice::new(lattice, group.clone(), &regular_actions(&group, blocks.len()))?;
    Ok(ExteriorPower { module, base_rank: n, degree: r, blocks })
}

fn translate_flat(v: &[Q], group: &FiniteAbelianGroup, g: usize) -> Vec<Q> {
    let n = group.order();
    let mut out = vec![Q::zero(); v.len()];
    for (b, chunk) in v.chunks(n).enumerate() {
        for (h, c) in chunk.iter().enumerate() {
            out[b * n + group.mul(g, h)] = c.clone();
        }
    }
    out
}

/// Identity coefficients `f_i = ε_1(φ(b_i))` of a Hom element into `Z[G]`
/// (flattened `rank(M) × |G|` matrix).
pub fn functional_of(flat: &[Q], rank_m: usize, group: &FiniteAbelianGroup) -> Vec<Q> {
    let n = group.order();
    (0..rank_m).map(|i| flat[i * n + group.identity()].clone()).collect()
}

/// `(φ_1 ∧ … ∧ φ_r)(a)` for `a` in `Q[G]^{C(n, r)}`, with each `φ_k` given by
/// its identity coefficients `f_k ∈ Q^n`.
pub fn wedge_pairing(functionals: &[Vec<Q>], a: &[Q], group: &FiniteAbelianGroup, n: usize) -> Result<GroupRingElement> {
    let r = functionals.len();
    let order = group.order();
    let blocks = subsets(n, r);
    if a.len() != blocks.len() * order {
        return Err(Error::Dimension(format!(
            "element of length {} is not in Q[G]^C({n},{r})",
            a.len()
        )));
    }
    let mut acc = vec![Q::zero(); order];
    for (b, j) in blocks.iter().enumerate() {
        let minor = QMatrix::from_fn(r, r, |k, s| functionals[k][j[s]].clone()).det();
        if minor.is_zero() {
            continue;
        }
        for h in 0..order {
            acc[h] += &minor * &a[b * order + h];
        }
    }
    GroupRingElement::from_coeffs(group.table().clone(), acc)
}

/// `det(φ_k(m_j))` over `Q[G]`, for Hom elements given flattened and
/// module elements given by lattice coordinates.
pub fn pairing_decomposable(m: &GLattice, homs: &[Vec<Q>], elements: &[Vec<Q>]) -> Result<GroupRingElement> {
    let group = m.group();
    let order = group.order();
    let rm = m.rank();
    let table = group.table().clone();
    let mat: GroupRingMatrix = homs
        .iter()
        .map(|f| {
            elements
                .iter()
                .map(|c| {
                    let v = crate::lattice::hom::apply_hom(f, rm, order, c);
                    GroupRingElement::from_coeffs(table.clone(), v).expect("sized")
                })
                .collect()
        })
        .collect();
    Ok(det_commutative(&mat, &table))
}

/// `{a ∈ Q ⊗ ∧^r M : (φ_1 ∧ … ∧ φ_r)(a) ∈ Z[G] for all φ_k ∈ Hom(M, Z[G])}`.
pub fn rubin_lattice(m: &GLattice, r: usize) -> Result<ExteriorPower> {
    let group = m.group().clone();
    let order = group.order();
    let n = m.rank();
    if r == 0 {
        let module = GLattice::new(Lattice::standard(order), group.clone(), &regular_actions(&group, 1))?;
        return Ok(ExteriorPower { module, base_rank: n, degree: 0, blocks: vec![vec![]] });
    }
    let ext = exterior_power(m, r)?;
    let dim = ext.module.ambient_dim();
    // Q-basis of the ambient span W
    let span = if ext.module.rank() == 0 {
        QMatrix::zeros(0, dim)
    } else {
        ext.module.lattice().basis().row_space()
    };
    let w = span.nrows();
    if w == 0 {
        return Ok(ext);
    }
    let hom = hom_lattice(m, &GLattice::free(group.clone(), 1))?;
    let funcs: Vec<Vec<Q>> = hom
        .lattice()
        .basis()
        .rows_iter()
        .map(|f| functional_of(f, n, &group))
        .collect();
    // columns of Φ: one per (tuple, group element)
    let mut cols: Vec<Vec<Q>> = Vec::new();
    for k in subsets(funcs.len(), r) {
        let chosen: Vec<Vec<Q>> = k.iter().map(|&i| funcs[i].clone()).collect();
        let images: Vec<GroupRingElement> = span
            .rows_iter()
            .map(|row| wedge_pairing(&chosen, row, &group, n))
            .collect::<Result<_>>()?;
        for h in 0..order {
            cols.push(images.iter().map(|x| x.coefficient(h).clone()).collect());
        }
    }
    let lam = lattice_basis(&QMatrix::from_rows(cols, w)?);
    if lam.nrows() != w {
        return Err(Error::invalid("functionals do not separate the exterior power"));
    }
    // dual lattice in span coordinates: rows of (Λ^{-1})^T
    let dual = lam.inverse()?.transpose();
    let ambient_rows = dual.mul(&span);
    let lattice = Lattice::from_generators(&ambient_rows);
    let module = GLattice::new(lattice, group.clone(), &regular_actions(&group, ext.blocks.len()))?;
    Ok(ExteriorPower { module, base_rank: n, degree: r, blocks: ext.blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::matrix::ZMatrix;

    #[test]
    fn degree_zero_is_the_group_ring() {
        let g = FiniteAbelianGroup::new(&[3]).unwrap();
        let m = GLattice::free(g, 2);
        let r0 = rubin_lattice(&m, 0).unwrap();
        assert_eq!(*r0.module.lattice(), Lattice::standard(3));
    }

    #[test]
    fn dual_basis_pairs_to_one_on_free_module() {
        let g = FiniteAbelianGroup::new(&[2]).unwrap();
        let m = GLattice::free(g.clone(), 2);
        let ext = exterior_power(&m, 2).unwrap();
        // b_1 and b_2 are the identity elements of the two copies
        let e1: Vec<Q> = vec![q(1), q(0), q(0), q(0)];
        let e2: Vec<Q> = vec![q(0), q(0), q(1), q(0)];
        let w = wedge(&[psi(&m, &e1).unwrap(), psi(&m, &e2).unwrap()], &g, 4);
        assert!(ext.module.lattice().contains(&w));
        let f1 = vec![q(1), q(0), q(0), q(0)];
        let f2 = vec![q(0), q(0), q(1), q(0)];
        let v = wedge_pairing(&[f1, f2], &w, &g, 4).unwrap();
        assert_eq!(v, GroupRingElement::one(g.table().clone()));
    }

    #[test]
    fn trivial_module_over_c2() {
        let g = FiniteAbelianGroup::new(&[2]).unwrap();
        let m = GLattice::from_integer_action(g, &[ZMatrix::identity(1)]).unwrap();
        let rubin = rubin_lattice(&m, 1).unwrap();
        let ext = exterior_power(&m, 1).unwrap();
        assert_eq!(rubin.module.lattice(), ext.module.lattice());
        // the image of 1 ∈ M is 1 + c
        assert_eq!(rubin.module.lattice().basis().to_rows(), vec![vec![q(1), q(1)]]);
    }

    #[test]
    fn rank_exceeding_wedge_is_zero() {
        let g = FiniteAbelianGroup::new(&[2]).unwrap();
        let m = GLattice::free(g, 1);
        assert!(exterior_power(&m, 2).unwrap().module.lattice().is_zero());
        assert!(rubin_lattice(&m, 2).unwrap().module.lattice().is_zero());
    }
}
