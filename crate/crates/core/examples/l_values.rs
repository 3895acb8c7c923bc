//! First derivatives at s = 0 of the S-truncated L-functions of Q(ζ_m)^+,
//! with vanishing orders and the equivariant leading term θ.

use weil_stark::lseries::{equivariant_leading_term, l_value_reports};
use weil_stark::numberfield::places::canonical_places;
use weil_stark::numberfield::RealAbelianField;
use weil_stark::numeric::NumCtx;

fn main() -> weil_stark::Result<()> {
    let m: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(12);
    let field = RealAbelianField::new(m, &[m - 1])?;
    let s = canonical_places(&field);
    let mut ctx = NumCtx::new(40)?;
    for report in l_value_reports(&field, &s, &mut ctx)? {
        println!("{}", report.to_json(&mut ctx));
    }
    let (theta, _) = equivariant_leading_term(&field, &mut ctx)?;
    for (g, t) in theta.iter().enumerate() {
        println!("θ[{}] = {}", field.group().name(g), ctx.format(t, 30));
    }
    Ok(())
}
