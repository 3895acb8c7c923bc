//! Fitting ideals: the classical minor ideal for commutative group rings,
//! and the column-replacement construction with reduced norms.

use crate::arith::subsets;
use crate::error::{Error, Result};
use crate::groupring::{det_commutative, GroupAlgebra, GroupRingElement, GroupRingMatrix, IdealLattice};
use crate::groupring::{whitehead_sublattice, WhiteheadBudget};
use crate::lattice::presentation::Presentation;
use crate::lattice::Lattice;
use crate::matrix::QMatrix;

/// Bound on the functionals used to replace columns: each is a standard
/// dual basis functional times one of the first `group_elements` group
/// elements (in index order). Larger budgets give larger ideals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhiBudget {
    pub group_elements: usize,
    /// Bound for the Whitehead-order factor in the non-commutative case.
    pub whitehead: WhiteheadBudget,
}

impl Default for PhiBudget {
    fn default() -> Self {
        PhiBudget { group_elements: 1, whitehead: WhiteheadBudget::default() }
    }
}

fn submatrix(m: &GroupRingMatrix, rows: &[usize], cols: &[usize]) -> GroupRingMatrix {
    rows.iter().map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect()).collect()
}

/// Ideal of `Z[G]` generated by the `(d' - a)`-minors of the relation
/// matrix; `G` must be abelian.
pub fn classical_fitting_ideal(p: &Presentation, a: usize) -> Result<IdealLattice> {
    let GroupAlgebra::Abelian(group) = p.algebra() else {
        return Err(Error::Unsupported("classical Fitting ideals need a commutative group ring".into()));
    };
    let table = group.table();
    let n = group.order();
    let (d, dp) = (p.relation_count(), p.generator_count());
    if a >= dp {
        return Ok(IdealLattice::unit(n));
    }
    let k = dp - a;
    if k > d {
        return Ok(IdealLattice::zero(n));
    }
    let m = p.relations();
    let mut minors = Vec::new();
    for rows in subsets(d, k) {
        for cols in subsets(dp, k) {
            let det = det_commutative(&submatrix(m, &rows, &cols), table);
            if !det.is_zero() {
                minors.push(det);
            }
        }
    }
    Ok(IdealLattice::generated_by(table, &minors))
}

/// `M(J, φ)` for `φ_s = g_s · b_{l_s}^*`: column `J[s]` becomes `g_s` times
/// the `l_s`-th standard basis vector of `Z[G]^d`.
fn replaced_matrix(m: &GroupRingMatrix, cols: &[usize], funcs: &[(usize, usize)], alg: &GroupAlgebra) -> GroupRingMatrix {
    let g = alg.group();
    let mut out = m.clone();
    for (&c, &(l, h)) in cols.iter().zip(funcs) {
        for (i, row) in out.iter_mut().enumerate() {
            row[c] = if i == l {
                GroupRingElement::from_group_element(g.clone(), h)
            } else {
                GroupRingElement::zero(g.clone())
            };
        }
    }
    out
}

/// The `a`-th Fitting invariant from reduced norms of the `d'×d'` minors of
/// every `M(J, φ)` with `|J| = t <= a`.
pub fn minor_fitting_invariant(p: &Presentation, a: usize, budget: &PhiBudget) -> Result<IdealLattice> {
    let alg = p.algebra();
    let g = alg.group().clone();
    let n = g.order();
    let (d, dp) = (p.relation_count(), p.generator_count());
    let m = p.relations();
    // identity first, then the remaining elements in index order
    let elems: Vec<usize> = std::iter::once(g.identity())
        .chain((0..n).filter(|&h| h != g.identity()))
        .take(budget.group_elements.max(1))
        .collect();
    let funcs: Vec<(usize, usize)> = (0..d).flat_map(|l| elems.iter().map(move |&h| (l, h))).collect();
    let row_sets = subsets(d, dp);
    let mut values: Vec<GroupRingElement> = Vec::new();
    for t in 0..=a.min(dp) {
        for cols in subsets(dp, t) {
            let mut idx = vec![0usize; t];
            loop {
                let chosen: Vec<(usize, usize)> = idx.iter().map(|&i| funcs[i]).collect();
                let mj = replaced_matrix(m, &cols, &chosen, alg);
                for rows in &row_sets {
                    let sub = submatrix(&mj, rows, &(0..dp).collect::<Vec<_>>());
                    let v = alg.reduced_norm(&sub)?;
                    if !v.is_zero() {
                        values.push(v);
                    }
                }
                let mut k = 0;
                while k < t {
                    idx[k] += 1;
                    if idx[k] < funcs.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == t {
                    break;
                }
            }
        }
    }
    if alg.is_commutative() {
        return Ok(IdealLattice::generated_by(&g, &values));
    }
    // ξ-span: products with a Whitehead sublattice basis (all central)
    let xi = whitehead_sublattice(alg, &budget.whitehead)?;
    let mut rows = Vec::new();
    for b in xi.basis().rows_iter() {
        let bx = GroupRingElement::from_coeffs(g.clone(), b.to_vec())?;
        for v in &values {
            rows.push(bx.mul(v).to_vector());
        }
    }
    Ok(IdealLattice { lattice: Lattice::from_generators(&QMatrix::from_rows(rows, n)?) })
}
