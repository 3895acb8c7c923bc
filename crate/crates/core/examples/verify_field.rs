//! All checks on one shipped field, printed as JSON reports.

use weil_stark::fixtures::{default_dir, find};
use weil_stark::numberfield::SUnitBasis;
use weil_stark::numeric::NumCtx;
use weil_stark::weilstark::{
    cyclotomic_element, fe_dimension_check, regulator_identity, verify_annihilation, verify_fitting_equality,
    verify_integrality, SelmerFixture,
};

fn main() -> weil_stark::Result<()> {
    let m: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(12);
    let fx = find(&default_dir(), m, None)?;
    let mut ctx = NumCtx::new(60)?;
    let basis = SUnitBasis::load(fx.units.as_ref().expect("unit fixture"))?;
    let mut reports = vec![regulator_identity(&basis, &mut ctx, 30)?];
    for a in 0..=2 {
        reports.push(fe_dimension_check(&basis, a)?);
    }
    let eps = cyclotomic_element(&basis, &mut ctx)?;
    for (t, path) in &fx.t_units {
        let eps_t = eps.t_modified(&SUnitBasis::load(path)?, &mut ctx)?;
        let selmer = SelmerFixture::load(&fx.selmer[t])?;
        reports.push(verify_integrality(&eps_t)?);
        if selmer.cl_st.is_trivial() {
            reports.push(verify_fitting_equality(&eps_t, &selmer)?);
        }
        reports.push(verify_annihilation(&eps_t, &selmer)?);
    }
    for r in &reports {
        println!("{:<16} {:<32} {}", r.check, std::path::Path::new(&r.subject).file_name().unwrap().to_string_lossy(), if r.passed { "pass" } else { "FAIL" });
    }
    println!("{}", serde_json::to_string_pretty(&reports).expect("serializable"));
    Ok(())
}
