//! The element ε for a shipped conductor, its T-modification and the
//! evaluation ideal {φ(ε_T)}.

use weil_stark::fixtures::{default_dir, find};
use weil_stark::numberfield::SUnitBasis;
use weil_stark::numeric::NumCtx;
use weil_stark::weilstark::{cyclotomic_element, evaluation_ideal};

fn main() -> weil_stark::Result<()> {
    let m: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    let fx = find(&default_dir(), m, None)?;
    let mut ctx = NumCtx::new(60)?;
    let basis = SUnitBasis::load(fx.units.as_ref().expect("unit fixture"))?;
    let eps = cyclotomic_element(&basis, &mut ctx)?;
    println!("ε = {:?} over the fixture basis", eps.element.to_strings());
    println!("e_π = {:?}", eps.e_pi.to_table());
    println!("Z[G]·ε has HNF\n{:?}", eps.module()?.lattice().basis());
    for (t, path) in &fx.t_units {
        let eps_t = eps.t_modified(&SUnitBasis::load(path)?, &mut ctx)?;
        println!("T = {t:?}: ε_T = {:?}", eps_t.element.to_strings());
        println!("  evaluation ideal HNF\n{:?}", evaluation_ideal(&eps_t)?.lattice.basis());
    }
    Ok(())
}
