//! Logarithmic embedding of S-units into `R·Y_{L,S}`.
//!
//! Normalisation: at the real place `g·w_∞` the absolute value is `|σ_g⁻¹(x)|`
//! for the embedding `ζ_m ↦ e^{2πi/m}`; at a finite place `g·w` over `p` it is
//! `Nw^{-ord_w(x)}`. With these choices the product formula holds exactly.

use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::numberfield::valuation::{valuation_in_subfield, PrimeAbove};
use crate::numberfield::{build_yx, MultiplicativeElement, Place, PlaceModules, RealAbelianField, SUnitBasis};
use crate::numeric::{Complex, NumCtx, Real};

/// Global sign relating `R_{L,S}(ε)` to the character-sum side: with
/// `ε = N^{1/2}` one has `R(ε) = REGULATOR_SIGN · θ·(w_∞ − w_0)` where
/// `θ = Σ_χ L′_S(χ⁻¹, 0)·e_χ`.
pub const REGULATOR_SIGN: i32 = -1;

/// A vector of `R ⊗ Y_{L,S}` in the place basis.
#[derive(Clone, Debug)]
pub struct RegulatorVector {
    pub coords: Vec<Real>,
}

impl RegulatorVector {
    pub fn zero(dim: usize, ctx: &NumCtx) -> Self {
        RegulatorVector { coords: vec![ctx.zero(); dim] }
    }

    pub fn coordinate_sum(&self, ctx: &NumCtx) -> Real {
        self.coords.iter().fold(ctx.zero(), |a, b| &a + b)
    }

    pub fn max_abs(&self, ctx: &NumCtx) -> Real {
        Real::max_abs(&self.coords, ctx.bits())
    }

    pub fn sub(&self, other: &RegulatorVector) -> RegulatorVector {
        RegulatorVector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn add_scaled(&mut self, other: &RegulatorVector, c: &Real) {
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            *a = &*a + &(b * c);
        }
    }

    /// Permutation action of `g` on the place basis.
    pub fn act(&self, modules: &PlaceModules, g: usize) -> RegulatorVector {
        let mut out = self.coords.clone();
        for b in &modules.blocks {
            for (ci, c) in b.cosets.iter().enumerate() {
                let target = b.coordinate(modules.y.group().mul(g, c[0]));
                out[target] = self.coords[b.offset + ci].clone();
            }
        }
        RegulatorVector { coords: out }
    }
}

/// Numerical value of `x` under `ζ_m ↦ e^{2πik/m}`.
pub fn evaluate(x: &CyclotomicNumber, k: i64, ctx: &mut NumCtx) -> Complex {
    let m = x.conductor();
    let mut acc = ctx.complex_zero();
    for (j, c) in x.coeffs().iter().enumerate() {
        if num_traits::Zero::is_zero(c) {
            continue;
        }
        let z = ctx.root_of_unity(k * j as i64, m);
        let c = ctx.rational(c);
        acc = acc.add(&z.scale(&c));
    }
    acc
}

/// The log map for one field and one `S`, with the primes `𝔓` fixed once.
#[derive(Clone, Debug)]
pub struct RegulatorMap {
    field: RealAbelianField,
    modules: PlaceModules,
    /// Per block: the prime above `p` and `e(L/Q)` at `p`.
    primes: Vec<Option<(PrimeAbove, usize)>>,
}

impl RegulatorMap {
    pub fn new(field: &RealAbelianField, s: &[Place]) -> Result<Self> {
        let modules = build_yx(field, s)?;
        let primes = modules
            .blocks
            .iter()
            .map(|b| match b.place {
                Place::Infinite => Ok(None),
                Place::Finite(p) => {
                    let e_l = field.inertia_group(p).len();
                    Ok(Some((PrimeAbove::new(field.conductor(), p)?, e_l)))
                }
            })
            .collect::<Result<_>>()?;
        Ok(RegulatorMap { field: field.clone(), modules, primes })
    }

    pub fn field(&self) -> &RealAbelianField {
        &self.field
    }

    pub fn modules(&self) -> &PlaceModules {
        &self.modules
    }

    /// `log‖x‖_{g·w}` for the place `g·w` of `L` above `place`.
    pub fn log_abs(&self, x: &CyclotomicNumber, place: Place, g: usize, ctx: &mut NumCtx) -> Result<Real> {
        if x.is_zero() {
            return Err(Error::invalid("log of zero"));
        }
        if !self.field.contains(x) {
            return Err(Error::invalid("element does not lie in the field"));
        }
        let bi = self
            .modules
            .blocks
            .iter()
            .position(|b| b.place == place)
            .ok_or_else(|| Error::invalid(format!("place {place} is not in S")))?;
        let g_inv = self.field.group().inv(g);
        match place {
            Place::Infinite => {
                let a = self.field.representative(g_inv);
                let v = evaluate(x, a as i64, ctx);
                let l = ctx.ln(&v.abs_sq())?;
                Ok(&l / &ctx.int(2))
            }
            Place::Finite(p) => {
                let (prime, e_l) = self.primes[bi].as_ref().expect("finite block has a prime");
                let y = self.field.act(g_inv, x);
                let ord = valuation_in_subfield(prime, *e_l, &y)?;
                let f = self.modules.blocks[bi].residue_degree as i64;
                let lp = ctx.ln_int(p);
                Ok(lp.scale_i64(-ord * f))
            }
        }
    }

    /// `Σ_{w ∈ S_L} log‖x‖_w · w`.
    pub fn log_embedding(&self, x: &CyclotomicNumber, ctx: &mut NumCtx) -> Result<RegulatorVector> {
        let mut coords = vec![ctx.zero(); self.modules.dimension()];
        for b in &self.modules.blocks {
            for (ci, c) in b.cosets.iter().enumerate() {
                coords[b.offset + ci] = self.log_abs(x, b.place, c[0], ctx)?;
            }
        }
        Ok(RegulatorVector { coords })
    }
}

/// `log‖x‖_{g·w}` without a prebuilt map.
pub fn log_abs(field: &RealAbelianField, s: &[Place], x: &CyclotomicNumber, place: Place, g: usize, ctx: &mut NumCtx) -> Result<Real> {
    RegulatorMap::new(field, s)?.log_abs(x, place, g, ctx)
}

/// Log embedding without a prebuilt map.
pub fn log_embedding(field: &RealAbelianField, s: &[Place], x: &CyclotomicNumber, ctx: &mut NumCtx) -> Result<RegulatorVector> {
    RegulatorMap::new(field, s)?.log_embedding(x, ctx)
}

/// `R_{L,S}(u) = Σ_i e_i·R_{L,S}(b_i)`.
pub fn dirichlet_regulator(u: &MultiplicativeElement, basis: &SUnitBasis, ctx: &mut NumCtx) -> Result<RegulatorVector> {
    if u.exponents.len() != basis.rank() {
        return Err(Error::Dimension(format!(
            "element has {} exponents, basis has rank {}",
            u.exponents.len(),
            basis.rank()
        )));
    }
    let logs = basis.log_matrix(ctx)?;
    let mut out = RegulatorVector::zero(basis.regulator_map().modules().dimension(), ctx);
    for (e, row) in u.exponents.iter().zip(&logs) {
        let c = ctx.rational(e);
        out.add_scaled(row, &c);
    }
    Ok(out)
}
