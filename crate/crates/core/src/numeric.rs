//! Arbitrary-precision reals and complex numbers on top of `astro-float`.
//!
//! Every value carries its own working precision in bits; binary operations
//! use the larger of the two. Transcendental functions need the shared
//! constant cache, so they live on [`NumCtx`].

use std::collections::HashMap;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_traits::{Signed, Zero};

use crate::arith::{Q, Z};
use crate::error::{Error, Result};

/// Extra bits carried beyond the requested decimal precision.
pub const GUARD_BITS: usize = 64;
/// Smallest accepted working precision, in decimal digits.
pub const MIN_DIGITS: u32 = 20;

const RM: RoundingMode = RoundingMode::ToEven;

/// Bits needed for `digits` decimal digits plus guard bits.
pub fn bits_for_digits(digits: u32) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + GUARD_BITS
}

#[derive(Clone, Debug)]
pub struct Real {
    v: BigFloat,
    p: usize,
}

impl Real {
    fn new(v: BigFloat, p: usize) -> Self {
        Real { v, p }
    }

    pub fn precision_bits(&self) -> usize {
        self.p
    }

    pub fn raw(&self) -> &BigFloat {
        &self.v
    }

    pub fn abs(&self) -> Real {
        Real::new(self.v.abs(), self.p)
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative() && !self.v.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    /// `|self| < bound`.
    pub fn abs_lt(&self, bound: &Real) -> bool {
        matches!(self.v.abs().cmp(&bound.v), Some(c) if c < 0)
    }

    pub fn lt(&self, other: &Real) -> bool {
        matches!(self.v.cmp(&other.v), Some(c) if c < 0)
    }

    pub fn max_abs<'a>(values: impl IntoIterator<Item = &'a Real>, p: usize) -> Real {
        values
            .into_iter()
            .fold(Real::new(BigFloat::from_i64(0, p), p), |acc, x| if acc.lt(&x.abs()) { x.abs() } else { acc })
    }

    pub fn scale_i64(&self, k: i64) -> Real {
        Real::new(self.v.mul(&BigFloat::from_i64(k, self.p), self.p, RM), self.p)
    }

    /// Nearest integer (ties to even).
    pub fn round_to_integer(&self, ctx: &mut NumCtx) -> Z {
        let r = self.v.round(0, RM);
        let s = r.format(Radix::Dec, RM, &mut ctx.cc).unwrap_or_else(|_| "0".into());
        parse_scientific_integer(&s)
    }

    /// Approximate `f64` value (for diagnostics only).
    pub fn to_f64(&self, ctx: &mut NumCtx) -> f64 {
        let s = self.v.format(Radix::Dec, RM, &mut ctx.cc).unwrap_or_else(|_| "NaN".into());
        f64::from_str(&s).unwrap_or(f64::NAN)
    }
}

/// Parses astro-float's `d.ddd e±x` output of an integral value.
fn parse_scientific_integer(s: &str) -> Z {
    let (mant, exp) = match s.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => (s, 0),
    };
    let neg = mant.starts_with('-');
    let mant = mant.trim_start_matches(['-', '+']);
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    let mut digits = format!("{ip}{fp}");
    let shift = exp - fp.len() as i64;
    if shift >= 0 {
        digits.push_str(&"0".repeat(shift as usize));
    } else {
        let keep = digits.len() as i64 + shift;
        digits.truncate(keep.max(0) as usize);
    }
    let z = Z::from_str(if digits.is_empty() { "0" } else { &digits }).unwrap_or_default();
    if neg {
        -z
    } else {
        z
    }
}

macro_rules! real_binop {
    ($tr:ident, $f:ident, $method:ident) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $f(self, o: &Real) -> Real {
                let p = self.p.max(o.p);
                Real::new(self.v.$method(&o.v, p, RM), p)
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $f(self, o: Real) -> Real {
                (&self).$f(&o)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $f(self, o: &Real) -> Real {
                (&self).$f(o)
            }
        }
    };
}

real_binop!(Add, add, add);
real_binop!(Sub, sub, sub);
real_binop!(Mul, mul, mul);
real_binop!(Div, div, div);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::new(-self.v.clone(), self.p)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

/// `re + i·im`.
#[derive(Clone, Debug)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn add(&self, o: &Complex) -> Complex {
        Complex { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &Complex) -> Complex {
        Complex { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul(&self, o: &Complex) -> Complex {
        Complex {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }

    pub fn scale(&self, r: &Real) -> Complex {
        Complex { re: &self.re * r, im: &self.im * r }
    }

    pub fn conj(&self) -> Complex {
        Complex { re: self.re.clone(), im: -&self.im }
    }

    pub fn abs_sq(&self) -> Real {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }
}

/// Working precision plus the constant and root-of-unity caches.
pub struct NumCtx {
    digits: u32,
    bits: usize,
    cc: Consts,
    roots: HashMap<(u64, u64), (Real, Real)>,
}

impl std::fmt::Debug for NumCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "NumCtx({} digits, {} bits)", self.digits, self.bits)
    }
}

impl NumCtx {
    pub fn new(digits: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::Precision(format!("{digits} digits is below the floor of {MIN_DIGITS}")));
        }
        let cc = Consts::new().map_err(|e| Error::Precision(format!("constant cache: {e:?}")))?;
        Ok(NumCtx { digits, bits: bits_for_digits(digits), cc, roots: HashMap::new() })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn zero(&self) -> Real {
        self.int(0)
    }

    pub fn int(&self, k: i64) -> Real {
        Real::new(BigFloat::from_i64(k, self.bits), self.bits)
    }

    pub fn integer(&mut self, z: &Z) -> Real {
        Real::new(BigFloat::parse(&z.to_string(), Radix::Dec, self.bits, RM, &mut self.cc), self.bits)
    }

    pub fn rational(&mut self, q: &Q) -> Real {
        let n = self.integer(q.numer());
        let d = self.integer(q.denom());
        &n / &d
    }

    pub fn complex_zero(&self) -> Complex {
        Complex { re: self.zero(), im: self.zero() }
    }

    pub fn complex_real(&self, r: Real) -> Complex {
        Complex { re: r, im: self.zero() }
    }

    pub fn pi(&mut self) -> Real {
        Real::new(self.cc.pi(self.bits, RM), self.bits)
    }

    /// `10^{-k}`.
    pub fn ten_pow_neg(&self, k: u32) -> Real {
        let ten = BigFloat::from_i64(10, self.bits);
        Real::new(ten.powi(k as usize, self.bits, RM).reciprocal(self.bits, RM), self.bits)
    }

    /// Natural log of a positive real.
    pub fn ln(&mut self, x: &Real) -> Result<Real> {
        if x.is_zero() || x.is_negative() || !x.is_finite() {
            return Err(Error::invalid("logarithm of a non-positive number"));
        }
        Ok(Real::new(x.v.ln(self.bits, RM, &mut self.cc), self.bits))
    }

    pub fn ln_int(&mut self, k: u64) -> Real {
        let x = Real::new(BigFloat::from_u64(k, self.bits), self.bits);
        self.ln(&x).expect("positive integer")
    }

    pub fn sqrt(&mut self, x: &Real) -> Real {
        Real::new(x.v.sqrt(self.bits, RM), self.bits)
    }

    /// `(cos 2πk/m, sin 2πk/m)`, cached.
    pub fn cos_sin_2pi(&mut self, k: i64, m: u64) -> (Real, Real) {
        let k = k.rem_euclid(m as i64) as u64;
        if let Some(v) = self.roots.get(&(k, m)) {
            return v.clone();
        }
        let pi = self.pi();
        let angle = &pi.scale_i64(2 * k as i64) / &self.int(m as i64);
        let c = Real::new(angle.v.cos(self.bits, RM, &mut self.cc), self.bits);
        let s = Real::new(angle.v.sin(self.bits, RM, &mut self.cc), self.bits);
        self.roots.insert((k, m), (c.clone(), s.clone()));
        (c, s)
    }

    /// `exp(2πi·k/m)`.
    pub fn root_of_unity(&mut self, k: i64, m: u64) -> Complex {
        let (re, im) = self.cos_sin_2pi(k, m);
        Complex { re, im }
    }

    /// `log|1 − ζ_m^a| = log(2·sin(π·a/m))` for `a ≢ 0 mod m`.
    pub fn log_abs_one_minus_root(&mut self, a: i64, m: u64) -> Result<Real> {
        let a = a.rem_euclid(m as i64);
        if a == 0 {
            return Err(Error::invalid("1 − ζ^0 vanishes"));
        }
        let pi = self.pi();
        let angle = &pi.scale_i64(a) / &self.int(m as i64);
        let s = Real::new(angle.v.sin(self.bits, RM, &mut self.cc), self.bits);
        self.ln(&s.scale_i64(2))
    }

    /// Scientific decimal string with `sig` significant digits.
    pub fn format(&mut self, x: &Real, sig: usize) -> String {
        let raw = x.v.format(Radix::Dec, RM, &mut self.cc).unwrap_or_else(|_| "NaN".into());
        round_scientific(&raw, sig)
    }

    /// Default formatting at the context precision.
    pub fn show(&mut self, x: &Real) -> String {
        let sig = self.digits as usize;
        self.format(x, sig)
    }

    /// The rational `p/q` with `q <= max_den` closest to `x`, if it lies
    /// within `tol`.
    pub fn reconstruct_rational(&mut self, x: &Real, max_den: u64, tol: &Real) -> Option<Q> {
        for d in 1..=max_den {
            let xd = x.scale_i64(d as i64);
            let n = xd.round_to_integer(self);
            let diff = &xd - &self.integer(&n);
            if diff.abs_lt(&tol.scale_i64(d as i64)) {
                return Some(Q::new(n, Z::from(d)));
            }
        }
        None
    }
}

/// Rounds astro-float scientific output to `sig` significant digits.
fn round_scientific(raw: &str, sig: usize) -> String {
    let (mant, exp) = match raw.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => return raw.to_string(),
    };
    let neg = mant.starts_with('-');
    let body = mant.trim_start_matches(['-', '+']);
    let digits: Vec<u8> = body.bytes().filter(u8::is_ascii_digit).map(|b| b - b'0').collect();
    if digits.iter().all(|&d| d == 0) {
        return "0".into();
    }
    let sig = sig.max(1);
    let mut kept: Vec<u8> = digits.iter().copied().chain(std::iter::repeat(0)).take(sig).collect();
    let mut exp = exp;
    if digits.get(sig).is_some_and(|&d| d >= 5) {
        let mut i = sig;
        loop {
            if i == 0 {
                kept.insert(0, 1);
                kept.pop();
                exp += 1;
                break;
            }
            i -= 1;
            if kept[i] == 9 {
                kept[i] = 0;
            } else {
                kept[i] += 1;
                break;
            }
        }
    }
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push((b'0' + kept[0]) as char);
    if kept.len() > 1 {
        s.push('.');
        s.extend(kept[1..].iter().map(|&d| (b'0' + d) as char));
    }
    s.push_str(&format!("e{exp:+}"));
    s
}

/// `|a − b|` for rationals approximated in `ctx`.
pub fn rational_distance(ctx: &mut NumCtx, x: &Real, q: &Q) -> Real {
    let r = ctx.rational(q);
    (x - &r).abs()
}

/// Sign of an exact rational as `-1`, `0` or `1`.
pub fn rational_signum(q: &Q) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_negative() {
        -1
    } else {
        1
    }
}

/// Solves the square system `x·A = b` (row-vector convention) by Gaussian
/// elimination with partial pivoting. Fails if a pivot is below `eps`.
pub fn solve_left_real(a: &[Vec<Real>], b: &[Real], eps: &Real) -> Result<Vec<Real>> {
    let n = a.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if a.iter().any(|r| r.len() != n) || b.len() != n {
        return Err(Error::Dimension("square system expected".into()));
    }
    // x·A = b  ⇔  Aᵀ·xᵀ = bᵀ; eliminate on the augmented transpose
    let mut m: Vec<Vec<Real>> = (0..n)
        .map(|i| (0..n).map(|j| a[j][i].clone()).chain(std::iter::once(b[i].clone())).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| if m[i][col].abs().lt(&m[j][col].abs()) { std::cmp::Ordering::Less } else { std::cmp::Ordering::Greater })
            .expect("nonempty");
        if m[piv][col].abs_lt(eps) {
            return Err(Error::Precision("linear system is numerically singular".into()));
        }
        m.swap(col, piv);
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = &m[r][col] / &m[col][col];
            if f.is_zero() {
                continue;
            }
            for c in col..=n {
                let t = &f * &m[col][c];
                m[r][c] = &m[r][c] - &t;
            }
        }
    }
    Ok((0..n).map(|i| &m[i][n] / &m[i][i]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn logarithms_and_roots() {
        let mut ctx = NumCtx::new(40).unwrap();
        let tol = ctx.ten_pow_neg(35);
        let l5 = ctx.ln_int(5);
        let expected = "1.609437912434100374600759333226187639525601354268517721912647891474178987707657764630133878093179";
        let parsed = Real::new(BigFloat::parse(expected, Radix::Dec, ctx.bits, RM, &mut ctx.cc), ctx.bits);
        assert!((&l5 - &parsed).abs_lt(&tol));
        // |1 − ζ_5| = 2 sin(π/5)
        let v = ctx.log_abs_one_minus_root(1, 5).unwrap();
        let direct = ctx.ln(&Real::new(BigFloat::from_f64(1.1755705045849463, ctx.bits), ctx.bits)).unwrap();
        assert!((&v - &direct).abs_lt(&ctx.ten_pow_neg(14)));
        assert!(ctx.log_abs_one_minus_root(0, 5).is_err());
    }

    #[test]
    fn formatting_and_rounding() {
        assert_eq!(round_scientific("1.2345e+4", 3), "1.23e+4");
        assert_eq!(round_scientific("9.996e-1", 3), "1.00e+0");
        assert_eq!(round_scientific("-2.5e+0", 1), "-3e+0");
        assert_eq!(parse_scientific_integer("-1.2345e+4"), Z::from(-12345));
        assert_eq!(parse_scientific_integer("3e+0"), Z::from(3));
        let mut ctx = NumCtx::new(30).unwrap();
        let x = ctx.rational(&Q::new(Z::from(-7), Z::from(2)));
        let tol = ctx.ten_pow_neg(20);
        assert_eq!(ctx.reconstruct_rational(&x, 2, &tol), Some(Q::new(Z::from(-7), Z::from(2))));
        let third = ctx.rational(&Q::new(Z::from(1), Z::from(3)));
        assert_eq!(ctx.reconstruct_rational(&third, 2, &tol), None);
        assert!(NumCtx::new(10).is_err());
    }
}
