//! Fitting ideals of a Z[C2]-module given by a 2 x 2 relation matrix:
//! the classical minor ideals next to the column-replacement construction.

use weil_stark::groupring::{FiniteAbelianGroup, GroupAlgebra, GroupRingElement};
use weil_stark::lattice::{classical_fitting_ideal, minor_fitting_invariant, PhiBudget, Presentation};

fn main() -> weil_stark::Result<()> {
    let g = FiniteAbelianGroup::new(&[2])?;
    let t = g.table().clone();
    let el = |c: &[i64]| GroupRingElement::from_i64(t.clone(), c);
    // M = Z[C2]^2 / ⟨(1 - g, 2), (0, 1 + g)⟩
    let rel = vec![vec![el(&[1, -1])?, el(&[2, 0])?], vec![el(&[0, 0])?, el(&[1, 1])?]];
    let p = Presentation::new(GroupAlgebra::Abelian(g), rel, 2)?;
    for a in 0..=2 {
        let classical = classical_fitting_ideal(&p, a)?;
        let minors = minor_fitting_invariant(&p, a, &PhiBudget::default())?;
        println!("Fit^{a}: HNF {:?}  (constructions agree: {})", classical.lattice.basis(), classical == minors);
    }
    Ok(())
}
