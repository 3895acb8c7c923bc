//! Exact arithmetic in `Q(ζ_m)` on the power basis `1, ζ, …, ζ^{φ(m)-1}`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{gcd_u64, Q, Z};
use crate::error::{Error, Result};

/// The field `Q(ζ_m)` with its reduction data.
pub struct CyclotomicField {
    conductor: u64,
    degree: usize,
    /// Coefficients of `Φ_m`, constant term first (monic).
    minpoly: Vec<Z>,
    /// `ζ^k` reduced to the power basis, for `0 <= k < max(m, 2·degree)`.
    powers: Vec<Vec<Q>>,
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.conductor)
    }
}

/// Exact division of integer polynomials, `b` monic.
fn poly_div_z(a: &[Z], b: &[Z]) -> Vec<Z> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut quot = vec![Z::zero(); a.len() - db];
    for k in (0..quot.len()).rev() {
        let c = rem[k + db].clone();
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[k + j] -= &c * bj;
            }
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|x| x.is_zero()));
    quot
}

/// `Φ_m` via `x^m - 1 = Π_{d | m} Φ_d`.
pub fn cyclotomic_polynomial(m: u64) -> Vec<Z> {
    let mut p = vec![Z::zero(); m as usize + 1];
    p[0] = -Z::one();
    p[m as usize] = Z::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = poly_div_z(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

impl CyclotomicField {
    /// Shared instance for conductor `m >= 1`.
    pub fn get(m: u64) -> Arc<CyclotomicField> {
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CyclotomicField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = cache.lock().unwrap().get(&m) {
            return f.clone();
        }
        let f = Arc::new(CyclotomicField::build(m));
        cache.lock().unwrap().entry(m).or_insert(f).clone()
    }

    fn build(m: u64) -> Self {
        assert!(m >= 1, "conductor must be positive");
        let minpoly = cyclotomic_polynomial(m);
        let degree = minpoly.len() - 1;
        let n_pow = (m as usize).max(2 * degree);
        let mut powers = Vec::with_capacity(n_pow);
        let mut cur = vec![Q::zero(); degree];
        cur[0] = Q::one();
        for _ in 0..n_pow {
            powers.push(cur.clone());
            // multiply by x
            let top = cur[degree - 1].clone();
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = Q::zero();
            if !top.is_zero() {
                for i in 0..degree {
                    cur[i] -= &top * Q::from_integer(minpoly[i].clone());
                }
            }
        }
        CyclotomicField {
            conductor: m,
            degree,
            minpoly,
            powers,
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn minpoly(&self) -> &[Z] {
        &self.minpoly
    }

    fn reduce(&self, poly: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.degree];
        for (k, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < self.degree {
                out[k] += c;
            } else {
                let pw = self.power_vec(k as u64);
                for (o, p) in out.iter_mut().zip(pw) {
                    if !p.is_zero() {
                        *o += c * p;
                    }
                }
            }
        }
        out
    }

    fn power_vec(&self, k: u64) -> &[Q] {
        let k = (k % self.conductor) as usize;
        &self.powers[k]
    }
}

/// An element of `Q(ζ_m)`.
#[derive(Clone)]
pub struct CyclotomicNumber {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Q>,
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.coeffs == other.coeffs
    }
}
impl Eq for CyclotomicNumber {}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z{}", self.field.conductor)?,
                _ => write!(f, "({c})*z{}^{i}", self.field.conductor)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl CyclotomicNumber {
    pub fn zero(m: u64) -> Self {
        let field = CyclotomicField::get(m);
        let coeffs = vec![Q::zero(); field.degree];
        CyclotomicNumber { field, coeffs }
    }

    pub fn from_rational(m: u64, c: Q) -> Self {
        let mut x = Self::zero(m);
        x.coeffs[0] = c;
        x
    }

    pub fn one(m: u64) -> Self {
        Self::from_rational(m, Q::one())
    }

    /// `ζ_m^k` for any integer `k`.
    pub fn zeta_power(m: u64, k: i64) -> Self {
        let field = CyclotomicField::get(m);
        let k = k.rem_euclid(m as i64) as u64;
        let coeffs = field.power_vec(k).to_vec();
        CyclotomicNumber { field, coeffs }
    }

    /// From power-basis coefficients; the length must be `φ(m)`.
    pub fn from_coeffs(m: u64, coeffs: Vec<Q>) -> Result<Self> {
        let field = CyclotomicField::get(m);
        if coeffs.len() != field.degree {
            return Err(Error::Dimension(format!(
                "Q(zeta_{m}) needs {} coefficients, got {}",
                field.degree,
                coeffs.len()
            )));
        }
        Ok(CyclotomicNumber { field, coeffs })
    }

    /// Reduces an arbitrary polynomial in `ζ_m` (constant term first).
    pub fn from_poly(m: u64, poly: &[Q]) -> Self {
        let field = CyclotomicField::get(m);
        let coeffs = field.reduce(poly);
        CyclotomicNumber { field, coeffs }
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<&Q> {
        self.coeffs[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| &self.coeffs[0])
    }

    fn check(&self, other: &Self) {
        assert_eq!(
            self.field.conductor, other.field.conductor,
            "mixing cyclotomic fields"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        CyclotomicNumber { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        CyclotomicNumber { field: self.field.clone(), coeffs }
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let d = self.field.degree;
        let mut prod = vec![Q::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.field.reduce(&prod),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::invalid("inverse of zero"));
        }
        let f: Vec<Q> = self.field.minpoly.iter().map(|c| Q::from_integer(c.clone())).collect();
        let (g, s) = poly_ext_gcd(&trim(self.coeffs.clone()), &f);
        // g is a nonzero constant since Φ_m is irreducible
        debug_assert_eq!(g.len(), 1);
        let inv_g = g[0].recip();
        let s: Vec<Q> = s.into_iter().map(|c| c * &inv_g).collect();
        Ok(CyclotomicNumber::from_poly(self.conductor(), &s))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.conductor());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    /// Galois action `ζ ↦ ζ^a` for `a` coprime to `m`.
    pub fn galois(&self, a: u64) -> Self {
        let m = self.conductor();
        assert!(m <= 2 || gcd_u64(a % m, m) == 1, "exponent not a unit");
        let mut out = vec![Q::zero(); self.field.degree];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let pw = self.field.power_vec(a * i as u64);
            for (o, p) in out.iter_mut().zip(pw) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        CyclotomicNumber { field: self.field.clone(), coeffs: out }
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(self.conductor() - 1)
    }

    /// Image in `Q(ζ_n)` for `m | n`, via `ζ_m = ζ_n^{n/m}`.
    pub fn embed(&self, n: u64) -> Result<Self> {
        let m = self.conductor();
        if !n.is_multiple_of(m) {
            return Err(Error::invalid(format!("cannot embed Q(zeta_{m}) in Q(zeta_{n})")));
        }
        let k = n / m;
        let mut poly = vec![Q::zero(); (self.field.degree - 1) * k as usize + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * k as usize] = c.clone();
        }
        Ok(CyclotomicNumber::from_poly(n, &poly))
    }

    /// Norm to `Q`.
    pub fn norm(&self) -> Q {
        let m = self.conductor();
        if m <= 2 {
            return self.coeffs[0].clone();
        }
        let mut acc = Self::one(m);
        for a in 1..m {
            if gcd_u64(a, m) == 1 {
                acc = acc.mul(&self.galois(a));
            }
        }
        acc.as_rational().expect("norm is rational").clone()
    }

    /// Trace to `Q`.
    pub fn trace(&self) -> Q {
        let m = self.conductor();
        if m <= 2 {
            return self.coeffs[0].clone();
        }
        let mut acc = Self::zero(m);
        for a in 1..m {
            if gcd_u64(a, m) == 1 {
                acc = acc.add(&self.galois(a));
            }
        }
        acc.as_rational().expect("trace is rational").clone()
    }

    /// Least common denominator of the coefficients.
    pub fn denominator(&self) -> Z {
        crate::arith::common_denominator(self.coeffs.iter())
    }
}

fn trim(mut p: Vec<Q>) -> Vec<Q> {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_divmod(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![Q::zero()], r);
    }
    let lead = b[db].recip();
    let mut qv = vec![Q::zero(); r.len() - db];
    for k in (0..qv.len()).rev() {
        let c = &r[k + db] * &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                let v = &r[k + j] - &c * bj;
                r[k + j] = v;
            }
        }
        qv[k] = c;
    }
    (trim(qv), trim(r))
}

fn poly_sub_mul(a: &[Q], q: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(q.len() + b.len() - 1);
    let mut out = vec![Q::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in q.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] -= x * y;
        }
    }
    trim(out)
}

/// Returns `(g, s)` with `s*a ≡ g (mod f)`, `g = gcd(a, f)`.
fn poly_ext_gcd(a: &[Q], f: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let (mut r0, mut r1) = (f.to_vec(), a.to_vec());
    let (mut s0, mut s1) = (vec![Q::zero()], vec![Q::one()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (qv, r) = poly_divmod(&r0, &r1);
        let s = poly_sub_mul(&s0, &qv, &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    (r0, s0)
}

/// Reduces coefficients modulo a prime: returns `None` if some denominator
/// is divisible by `q`.
pub fn reduce_mod_prime(x: &CyclotomicNumber, q: u64) -> Option<Vec<u64>> {
    let qz = Z::from(q);
    x.coeffs
        .iter()
        .map(|c| {
            let d = c.denom().mod_floor(&qz);
            if d.is_zero() {
                return None;
            }
            let d: u64 = d.try_into().ok()?;
            let inv = crate::arith::inv_mod(d, q)?;
            let n: u64 = c.numer().mod_floor(&qz).try_into().ok()?;
            Some((n as u128 * inv as u128 % q as u128) as u64)
        })
        .collect()
}

/// Whether `x` is `q`-integral with every coefficient divisible by `q`.
pub fn divisible_by_prime(x: &CyclotomicNumber, q: u64) -> bool {
    reduce_mod_prime(x, q).is_some_and(|v| v.iter().all(|&c| c == 0))
}

/// Whether all coefficients have denominators supported on `primes`.
pub fn denominators_supported_on(x: &CyclotomicNumber, primes: &[u64]) -> bool {
    x.coeffs
        .iter()
        .all(|c| crate::arith::is_supported_on(c.denom(), primes))
}

/// Sign of a totally real rational, used by callers that know `x` is rational.
pub fn rational_sign(x: &Q) -> i32 {
    if x.is_negative() {
        -1
    } else if x.is_zero() {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qr};

    #[test]
    fn cyclotomic_polynomials() {
        let p = |m| cyclotomic_polynomial(m).iter().map(|c| c.try_into().unwrap()).collect::<Vec<i64>>();
        assert_eq!(p(1), vec![-1, 1]);
        assert_eq!(p(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(p(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(p(15).len() - 1, crate::arith::totient(15) as usize);
    }

    #[test]
    fn golden_ratio_in_q_zeta5() {
        // φ = -ζ^2 - ζ^3 and √5 = 2φ - 1
        let z2 = CyclotomicNumber::zeta_power(5, 2);
        let z3 = CyclotomicNumber::zeta_power(5, 3);
        let phi = z2.add(&z3).neg();
        assert_eq!(phi.mul(&phi), phi.add(&CyclotomicNumber::one(5)));
        let s5 = phi.scale(&q(2)).sub(&CyclotomicNumber::one(5));
        assert_eq!(s5.mul(&s5).as_rational(), Some(&q(5)));
        assert_eq!(phi.norm(), q(1));
        assert_eq!(phi.galois(4), phi);
        let inv = phi.inverse().unwrap();
        assert!(inv.mul(&phi).is_one());
        assert_eq!(phi.pow(-2).unwrap().mul(&phi.pow(2).unwrap()), CyclotomicNumber::one(5));
    }

    #[test]
    fn embedding_and_trace() {
        let i = CyclotomicNumber::zeta_power(4, 1);
        let i12 = i.embed(12).unwrap();
        assert_eq!(i12, CyclotomicNumber::zeta_power(12, 3));
        assert_eq!(CyclotomicNumber::zeta_power(7, 1).trace(), q(-1));
        let h = CyclotomicNumber::from_rational(3, qr(1, 2));
        assert_eq!(h.norm(), qr(1, 4));
        let x = CyclotomicNumber::from_rational(5, qr(3, 10));
        assert!(reduce_mod_prime(&x, 2).is_none());
        assert_eq!(reduce_mod_prime(&x, 7).unwrap()[0], 3 * 5 % 7);
    }
}
