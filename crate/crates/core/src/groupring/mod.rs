//! Group rings `Z[G] ⊂ Q[G] ⊂ Q(ζ_e)[G]`, characters, reduced norms and
//! Whitehead orders.

pub mod character;
pub mod element;
pub mod group;
pub mod nrd;
pub mod quadratic;
pub mod wedderburn;
pub mod whitehead;

pub use character::{all_characters, idempotent, Character};
pub use element::{Coeff, GroupRingElement, RationalGroupRingElement};
pub use group::{abelian_structure, FiniteAbelianGroup, FiniteGroup};
pub use nrd::{det_commutative, GroupAlgebra, GroupRingMatrix};
pub use wedderburn::WedderburnData;
pub use whitehead::{whitehead_sublattice, WhiteheadBudget};

use crate::lattice::Lattice;

/// A two-sided ideal of `Z[G]` (or a Z-submodule of `Q[G]`), as a lattice
/// in `Q^{|G|}` on the group-element basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealLattice {
    pub lattice: Lattice,
}

impl IdealLattice {
    /// Z[G]-ideal generated by `gens`: the Z-span of all `g·x·h`.
    pub fn generated_by(group: &std::sync::Arc<FiniteGroup>, gens: &[GroupRingElement]) -> Self {
        let n = group.order();
        let mut rows = Vec::new();
        for x in gens {
            for g in 0..n {
                let gx = x.translate(g);
                if group.is_abelian() {
                    rows.push(gx.to_vector());
                } else {
                    for h in 0..n {
                        let r = gx.mul(&GroupRingElement::from_group_element(group.clone(), h));
                        rows.push(r.to_vector());
                    }
                }
            }
        }
        let m = crate::matrix::QMatrix::from_rows(rows, n).expect("sized rows");
        IdealLattice { lattice: Lattice::from_generators(&m) }
    }

    /// Z-span of the given elements (no ideal closure).
    pub fn span(n: usize, gens: &[GroupRingElement]) -> Self {
        let rows = gens.iter().map(|x| x.to_vector()).collect();
        let m = crate::matrix::QMatrix::from_rows(rows, n).expect("sized rows");
        IdealLattice { lattice: Lattice::from_generators(&m) }
    }

    pub fn unit(n: usize) -> Self {
        IdealLattice { lattice: Lattice::standard(n) }
    }

    pub fn zero(n: usize) -> Self {
        IdealLattice { lattice: Lattice::zero(n) }
    }

    pub fn contains(&self, x: &GroupRingElement) -> bool {
        self.lattice.contains(&x.to_vector())
    }

    /// Basis elements as group-ring elements.
    pub fn generators(&self, group: &std::sync::Arc<FiniteGroup>) -> Vec<GroupRingElement> {
        self.lattice
            .basis()
            .rows_iter()
            .map(|r| GroupRingElement::from_coeffs(group.clone(), r.to_vec()).expect("sized"))
            .collect()
    }
}
