//! `Hom_{Z[G]}(M, N)` as a G-lattice of integer matrices.

use num_traits::Zero;

use crate::arith::Q;
use crate::error::{Error, Result};
use crate::lattice::glattice::GLattice;
use crate::lattice::normal_form::integer_left_kernel;
use crate::lattice::Lattice;
use crate::matrix::{QMatrix, ZMatrix};

/// Equivariant homomorphisms `M → N`.
///
/// A map is stored in lattice-basis coordinates as an `rank(M) × rank(N)`
/// matrix `F` (row `i` is the image of the `i`-th basis vector of `M`),
/// flattened row-major into the ambient `Q^{rank(M)·rank(N)}`. The group
/// acts by `F ↦ F·T^N_g`.
pub fn hom_lattice(m: &GLattice, n: &GLattice) -> Result<GLattice> {
    if m.group() != n.group() {
        return Err(Error::invalid("Hom between modules over different groups"));
    }
    let group = m.group().clone();
    let (rm, rn) = (m.rank(), n.rank());
    let unknowns = rm * rn;
    let gens = group.generators();
    let mut cols: Vec<Vec<crate::arith::Z>> = Vec::new();
    for &g in &gens {
        let tm = m.lattice_matrix(g)?;
        let tn = n.lattice_matrix(g)?;
        // equation (i, j):  Σ_k TM[i][k] F[k][j] - Σ_l F[i][l] TN[l][j] = 0
        for i in 0..rm {
            for j in 0..rn {
                let mut col = vec![crate::arith::Z::zero(); unknowns];
                for k in 0..rm {
                    col[k * rn + j] += &tm[(i, k)];
                }
                for l in 0..rn {
                    col[i * rn + l] -= &tn[(l, j)];
                }
                cols.push(col);
            }
        }
    }
    let kernel = if cols.is_empty() {
        ZMatrix::identity(unknowns)
    } else {
        let c = ZMatrix::from_rows(cols, unknowns)?.transpose();
        integer_left_kernel(&c)
    };
    let lattice = Lattice::from_generators(&kernel.to_q());
    let actions: Vec<QMatrix> = gens
        .iter()
        .map(|&g| {
            let tn = n.lattice_matrix(g).expect("checked above").to_q();
            QMatrix::from_fn(unknowns, unknowns, |r, c| {
                let (i, l) = (r / rn, r % rn);
                let (i2, j) = (c / rn, c % rn);
                if i == i2 {
                    tn[(l, j)].clone()
                } else {
                    Q::zero()
                }
            })
        })
        .collect();
    GLattice::new(lattice, group, &actions)
}

/// Reshapes a flattened Hom element into its `rank(M) × rank(N)` matrix.
pub fn hom_matrix(flat: &[Q], rank_m: usize, rank_n: usize) -> QMatrix {
    QMatrix::from_fn(rank_m, rank_n, |i, j| flat[i * rank_n + j].clone())
}

/// Applies a Hom element (flattened) to lattice coordinates of `m`,
/// returning lattice coordinates in `N`.
pub fn apply_hom(flat: &[Q], rank_m: usize, rank_n: usize, coords: &[Q]) -> Vec<Q> {
    hom_matrix(flat, rank_m, rank_n).apply(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupring::FiniteAbelianGroup;

    #[test]
    fn hom_from_free_module_to_group_ring() {
        // Hom_{Z[G]}(Z[G], Z[G]) ≅ Z[G], rank |G|
        let g = FiniteAbelianGroup::new(&[3]).unwrap();
        let f = GLattice::free(g.clone(), 1);
        let h = hom_lattice(&f, &f).unwrap();
        assert_eq!(h.rank(), 3);
        // trivial module Z: Hom(Z, Z[G]) = Z·N, rank 1
        let triv = GLattice::from_integer_action(g, &[ZMatrix::identity(1)]).unwrap();
        let h2 = hom_lattice(&triv, &f).unwrap();
        assert_eq!(h2.rank(), 1);
        let row = h2.lattice().basis().row(0).to_vec();
        assert!(row.iter().all(|x| x == &row[0]));
    }
}
