//! Z-lattices, G-lattices, Fitting ideals and exterior-power lattices.

pub mod exterior;
pub mod finite_module;
pub mod fitting;
pub mod glattice;
pub mod hom;
pub mod normal_form;
pub mod presentation;

use num_traits::{One, Zero};

use crate::arith::{Q, Z};
use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use normal_form::{lattice_basis, snf};

pub use exterior::{exterior_power, rubin_lattice, wedge_pairing, ExteriorPower};
pub use finite_module::FiniteGModule;
pub use fitting::{classical_fitting_ideal, minor_fitting_invariant, PhiBudget};
pub use glattice::GLattice;
pub use hom::hom_lattice;
pub use presentation::Presentation;

/// A Z-lattice in `Q^n`, stored by its canonical HNF basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient: usize,
    basis: QMatrix,
}

impl std::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Lattice(dim {}, {:?})", self.ambient, self.basis)
    }
}

impl Lattice {
    /// Z-span of arbitrary generators (rows).
    pub fn from_generators(gens: &QMatrix) -> Self {
        Lattice {
            ambient: gens.ncols(),
            basis: lattice_basis(gens),
        }
    }

    pub fn from_rows(rows: Vec<Vec<Q>>, ambient: usize) -> Result<Self> {
        Ok(Self::from_generators(&QMatrix::from_rows(rows, ambient)?))
    }

    pub fn zero(ambient: usize) -> Self {
        Lattice {
            ambient,
            basis: QMatrix::zeros(0, ambient),
        }
    }

    /// The standard lattice `Z^n`.
    pub fn standard(n: usize) -> Self {
        Lattice {
            ambient: n,
            basis: QMatrix::identity(n),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    /// Rational coordinates of `v` in the lattice basis, if `v` lies in its Q-span.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        if v.len() != self.ambient {
            return None;
        }
        self.basis.solve_left(v)
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.coordinates(v)
            .is_some_and(|c| c.iter().all(|x| x.denom().is_one()))
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.rows_iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        Lattice::from_generators(&self.basis.vstack(&other.basis))
    }

    pub fn scale(&self, c: &Q) -> Lattice {
        Lattice::from_generators(&self.basis.scale(c))
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    /// Coordinates of every basis row of `sub` in this basis, integral.
    pub fn sublattice_matrix(&self, sub: &Lattice) -> Result<crate::matrix::ZMatrix> {
        let mut rows = Vec::with_capacity(sub.rank());
        for (i, r) in sub.basis.rows_iter().enumerate() {
            let c = self
                .coordinates(r)
                .filter(|c| c.iter().all(|x| x.denom().is_one()))
                .ok_or(Error::NotSublattice { row: i })?;
            rows.push(c.into_iter().map(|x| x.numer().clone()).collect());
        }
        crate::matrix::ZMatrix::from_rows(rows, self.rank())
    }
}

/// Invariant factors (all `> 1`) of `l1 / l2` for `l2 ⊆ l1` of finite index.
pub fn quotient_invariants(l1: &Lattice, l2: &Lattice) -> Result<Vec<Z>> {
    let m = l1.sublattice_matrix(l2)?;
    if l2.rank() != l1.rank() {
        return Err(Error::invalid(format!(
            "quotient of a rank-{} lattice by a rank-{} sublattice is infinite",
            l1.rank(),
            l2.rank()
        )));
    }
    let s = snf(&m);
    if s.diagonal.iter().any(|d| d.is_zero()) {
        return Err(Error::invalid("sublattice does not have finite index"));
    }
    Ok(s.diagonal.into_iter().filter(|d| !d.is_one()).collect())
}

/// Index `[l1 : l2]` for `l2 ⊆ l1` of finite index.
pub fn index(l1: &Lattice, l2: &Lattice) -> Result<Z> {
    Ok(quotient_invariants(l1, l2)?.iter().fold(Z::one(), |a, b| a * b))
}
