//! Exact valuations at a prime of `Z[ζ_m]` above `p`.
//!
//! `Z[ζ_m]` is the maximal order, so a prime above `p` is `(p, h(ζ_m))` for
//! an irreducible factor `h` of `Φ_m mod p` (Kummer–Dedekind). Membership in
//! its powers is an HNF test on coefficient vectors.

use num_traits::Zero;

use crate::arith::{rational_valuation, totient, Q, Z};
use crate::cyclotomic::{cyclotomic_polynomial, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::matrix::QMatrix;

/// Remainder of `a` modulo monic `b` over `F_p` (coefficients ascending).
fn poly_rem_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.iter().map(|c| c % p).collect();
    let db = b.len() - 1;
    while r.len() > db {
        let c = *r.last().expect("nonempty");
        let shift = r.len() - 1 - db;
        if c != 0 {
            for (i, bi) in b.iter().enumerate() {
                let t = (c as u128 * *bi as u128 % p as u128) as u64;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
        r.pop();
    }
    r
}

/// Lexicographically smallest monic irreducible factor of degree `f` of
/// `target mod p`.
fn smallest_factor(target: &[u64], f: usize, p: u64) -> Vec<u64> {
    let count = (p as usize).pow(f as u32);
    for idx in 0..count {
        let mut h: Vec<u64> = Vec::with_capacity(f + 1);
        let mut k = idx;
        for _ in 0..f {
            h.push((k % p as usize) as u64);
            k /= p as usize;
        }
        h.push(1);
        if poly_rem_mod(target, &h, p).iter().all(|&c| c == 0) {
            // degree-f factors of Φ_{m'} mod p are irreducible
            return h;
        }
    }
    unreachable!("Φ_m' splits into factors of degree f modulo p")
}

/// A fixed prime `𝔓` of `Z[ζ_m]` above `p`.
#[derive(Clone, Debug)]
pub struct PrimeAbove {
    conductor: u64,
    p: u64,
    ramification: usize,
    residue_degree: usize,
    factor: Vec<u64>,
    ideal: Lattice,
}

impl PrimeAbove {
    pub fn new(conductor: u64, p: u64) -> Result<Self> {
        let m = conductor;
        let mut mp = m;
        let mut pk = 1;
        while mp.is_multiple_of(p) {
            mp /= p;
            pk *= p;
        }
        let ramification = totient(pk) as usize;
        let residue_degree = (1..=mp.max(1))
            .find(|&f| crate::arith::pow_mod(p, f, mp.max(1)) == 1 % mp.max(1))
            .expect("p is a unit mod m'") as usize;
        let target: Vec<u64> = cyclotomic_polynomial(mp)
            .iter()
            .map(|c| {
                let r = c % Z::from(p);
                let r = if r < Z::zero() { r + Z::from(p) } else { r };
                r.try_into().expect("small residue")
            })
            .collect();
        let factor = smallest_factor(&target, residue_degree, p);
        let n = CyclotomicNumber::zero(m).coeffs().len();
        let h = CyclotomicNumber::from_poly(m, &factor.iter().map(|&c| Q::from_integer(c.into())).collect::<Vec<_>>());
        let mut gens = Vec::with_capacity(2 * n);
        for j in 0..n {
            let zj = CyclotomicNumber::zeta_power(m, j as i64);
            gens.push(zj.scale(&Q::from_integer(p.into())).coeffs().to_vec());
            gens.push(h.mul(&zj).coeffs().to_vec());
        }
        let ideal = Lattice::from_generators(&QMatrix::from_rows(gens, n)?);
        Ok(PrimeAbove { conductor: m, p, ramification, residue_degree, factor, ideal })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// `e(𝔓 / p)` in `Q(ζ_m)`.
    pub fn ramification(&self) -> usize {
        self.ramification
    }

    /// `f(𝔓 / p)` in `Q(ζ_m)`.
    pub fn residue_degree(&self) -> usize {
        self.residue_degree
    }

    /// The factor `h` with `𝔓 = (p, h(ζ_m))`, ascending coefficients mod `p`.
    pub fn factor(&self) -> &[u64] {
        &self.factor
    }

    fn multiply_by_prime(&self, ideal: &Lattice) -> Result<Lattice> {
        let m = self.conductor;
        let n = ideal.ambient_dim();
        let h = CyclotomicNumber::from_poly(m, &self.factor.iter().map(|&c| Q::from_integer(c.into())).collect::<Vec<_>>());
        let mut gens = Vec::with_capacity(2 * ideal.rank());
        for b in ideal.basis().rows_iter() {
            let x = CyclotomicNumber::from_coeffs(m, b.to_vec())?;
            gens.push(x.scale(&Q::from_integer(self.p.into())).coeffs().to_vec());
            gens.push(x.mul(&h).coeffs().to_vec());
        }
        Ok(Lattice::from_generators(&QMatrix::from_rows(gens, n)?))
    }

    /// `ord_𝔓(x)` for nonzero `x ∈ Q(ζ_m)`.
    pub fn valuation(&self, x: &CyclotomicNumber) -> Result<i64> {
        if x.conductor() != self.conductor {
            return Err(Error::invalid("element lives in a different cyclotomic field"));
        }
        if x.is_zero() {
            return Err(Error::invalid("valuation of zero"));
        }
        // x = p^a · y with y integral and not divisible by p
        let content = x
            .coeffs()
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| rational_valuation(c, self.p))
            .min()
            .expect("nonzero");
        let scale = if content >= 0 {
            Q::from_integer(Z::from(self.p).pow(content as u32)).recip()
        } else {
            Q::from_integer(Z::from(self.p).pow((-content) as u32))
        };
        let y = x.scale(&scale);
        // clear the prime-to-p denominator (a unit at 𝔓)
        let y = y.scale(&Q::from_integer(y.denominator()));
        // f·ord_𝔓(y) ≤ v_p(N(y)) bounds the search
        let cap = norm_valuation(&y, self.p) / self.residue_degree as i64;
        let mut v = 0i64;
        let mut power = self.ideal.clone();
        while v < cap && power.contains(y.coeffs()) {
            v += 1;
            power = self.multiply_by_prime(&power)?;
        }
        Ok(content * self.ramification as i64 + v)
    }
}

/// `ord_P(x)` at the place `P = 𝔓 ∩ L` for `x ∈ L`, where `L` has
/// ramification index `e_l` at `p`.
pub fn valuation_in_subfield(prime: &PrimeAbove, e_l: usize, x: &CyclotomicNumber) -> Result<i64> {
    let v = prime.valuation(x)?;
    let rel = (prime.ramification() / e_l) as i64;
    if v % rel != 0 {
        return Err(Error::invalid("valuation is not divisible by the relative ramification index"));
    }
    Ok(v / rel)
}

/// `p`-adic valuation of a rational norm (helper for cross-checks).
pub fn norm_valuation(x: &CyclotomicNumber, p: u64) -> i64 {
    let n = x.norm();
    if n.is_zero() {
        return i64::MIN;
    }
    rational_valuation(&n, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    #[test]
    fn valuation_of_one_minus_zeta() {
        // (1 − ζ_5) is the unique prime above 5, totally ramified
        let pr = PrimeAbove::new(5, 5).unwrap();
        let x = CyclotomicNumber::one(5).sub(&CyclotomicNumber::zeta_power(5, 1));
        assert_eq!(pr.valuation(&x).unwrap(), 1);
        assert_eq!(pr.valuation(&CyclotomicNumber::from_rational(5, q(5))).unwrap(), 4);
        assert_eq!(pr.valuation(&CyclotomicNumber::from_rational(5, crate::arith::qr(3, 25))).unwrap(), -8);
        // 1 − ζ_15 is a unit
        let pr3 = PrimeAbove::new(15, 3).unwrap();
        let u = CyclotomicNumber::one(15).sub(&CyclotomicNumber::zeta_power(15, 1));
        assert_eq!(pr3.valuation(&u).unwrap(), 0);
        // 1 − ζ_15^5 = 1 − ζ_3 has valuation 1 at each prime above 3
        let w = CyclotomicNumber::one(15).sub(&CyclotomicNumber::zeta_power(15, 5));
        assert_eq!(pr3.valuation(&w).unwrap(), 1);
    }

    #[test]
    fn valuations_sum_to_norm_valuation() {
        // 2 splits in Q(ζ_7) into two primes of degree 3
        let m = 7;
        let pr = PrimeAbove::new(m, 2).unwrap();
        assert_eq!(pr.residue_degree(), 3);
        let x = CyclotomicNumber::from_coeffs(m, vec![q(1), q(1), q(0), q(1), q(0), q(0)]).unwrap();
        let total: i64 = [1u64, 3]
            .iter()
            .map(|&a| pr.valuation(&x.galois(a)).unwrap() * pr.residue_degree() as i64)
            .sum();
        assert_eq!(total, norm_valuation(&x, 2));
    }
}
