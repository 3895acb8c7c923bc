//! The Whitehead order `ξ(A)` generated by reduced norms of integral matrices.

use std::collections::BTreeSet;

use crate::arith::{q, Q};
use crate::error::Result;
use crate::groupring::element::GroupRingElement;
use crate::groupring::nrd::{GroupAlgebra, GroupRingMatrix};
use crate::lattice::Lattice;
use crate::matrix::QMatrix;

/// Enumeration bound for non-commutative Whitehead sublattices. Each field
/// enlarges the generating set, so the resulting lattice grows monotonically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WhiteheadBudget {
    /// Largest matrix size `n` for `M ∈ M_n(Z[G])`.
    pub max_dim: usize,
    /// Entries have coefficients in `[-max_height, max_height]`.
    pub max_height: i64,
    /// Entries have at most this many nonzero coefficients.
    pub max_support: usize,
}

impl Default for WhiteheadBudget {
    fn default() -> Self {
        WhiteheadBudget { max_dim: 1, max_height: 1, max_support: 2 }
    }
}

impl WhiteheadBudget {
    pub fn dominates(&self, other: &WhiteheadBudget) -> bool {
        self.max_dim >= other.max_dim && self.max_height >= other.max_height && self.max_support >= other.max_support
    }
}

/// Integral group-ring elements allowed as matrix entries.
fn entries(alg: &GroupAlgebra, b: &WhiteheadBudget) -> Vec<GroupRingElement<Q>> {
    let g = alg.group();
    let n = g.order();
    let mut out = vec![GroupRingElement::zero(g.clone())];
    let supports = crate::arith::subsets(n, 0)
        .into_iter()
        .chain((1..=b.max_support.min(n)).flat_map(|k| crate::arith::subsets(n, k)));
    for s in supports {
        if s.is_empty() {
            continue;
        }
        // all nonzero coefficient choices on this support
        let h = b.max_height;
        let choices: Vec<i64> = (-h..=h).filter(|&c| c != 0).collect();
        let mut idx = vec![0usize; s.len()];
        loop {
            let mut x = GroupRingElement::zero(g.clone());
            for (k, &gi) in s.iter().enumerate() {
                x = x.add(&GroupRingElement::from_group_element(g.clone(), gi).scale(&q(choices[idx[k]])));
            }
            out.push(x);
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < choices.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    out
}

/// `ξ(A)` for commutative `A = Z[G]` (exactly `Z[G]`), otherwise the
/// Z-span of `Nrd(M)` over the budgeted family of integral matrices.
pub fn whitehead_sublattice(alg: &GroupAlgebra, budget: &WhiteheadBudget) -> Result<Lattice> {
    let n = alg.group().order();
    if alg.is_commutative() {
        return Ok(Lattice::standard(n));
    }
    let ents = entries(alg, budget);
    let mut seen: BTreeSet<Vec<Q>> = BTreeSet::new();
    for dim in 1..=budget.max_dim.max(1) {
        let cells = dim * dim;
        let mut idx = vec![0usize; cells];
        loop {
            let m: GroupRingMatrix = (0..dim)
                .map(|i| (0..dim).map(|j| ents[idx[i * dim + j]].clone()).collect())
                .collect();
            let v = alg.reduced_norm(&m)?.to_vector();
            seen.insert(v);
            let mut k = 0;
            while k < cells {
                idx[k] += 1;
                if idx[k] < ents.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == cells {
                break;
            }
        }
    }
    let rows: Vec<Vec<Q>> = seen.into_iter().collect();
    let gens = QMatrix::from_rows(rows, n)?;
    Ok(Lattice::from_generators(&gens))
}
