//! Exterior powers and Rubin lattices of the trivial-action lattice Z^2
//! over C3, where the two differ.

use weil_stark::groupring::FiniteAbelianGroup;
use weil_stark::lattice::{exterior_power, quotient_invariants, rubin_lattice, GLattice};
use weil_stark::matrix::ZMatrix;

fn main() -> weil_stark::Result<()> {
    let g = FiniteAbelianGroup::new(&[3])?;
    let m = GLattice::from_integer_action(g, &[ZMatrix::identity(2)])?;
    for r in 0..=2 {
        let ext = exterior_power(&m, r)?;
        let rubin = rubin_lattice(&m, r)?;
        let idx = quotient_invariants(rubin.module.lattice(), ext.module.lattice())?;
        println!("r = {r}: rank {} ; ∧^r inside ∩^r with quotient invariants {idx:?}", rubin.module.rank());
    }
    Ok(())
}
