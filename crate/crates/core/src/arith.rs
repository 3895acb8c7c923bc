//! Small exact-arithmetic helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;
pub type Z = BigInt;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn z(n: i64) -> Z {
    BigInt::from(n)
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Canonical `"p/q"` (or `"p"`) string.
pub fn format_rational(x: &Q) -> String {
    x.to_string()
}

pub fn is_integral(x: &Q) -> bool {
    x.denom().is_one()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Q>) -> Z {
    xs.into_iter().fold(Z::one(), |acc, x| acc.lcm(x.denom()))
}

/// `(g, s, t)` with `s*a + t*b = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: &Z, b: &Z) -> (Z, Z, Z) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Prime factorisation by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (g, s, _) = ext_gcd(&Z::from(a), &Z::from(m));
    if !g.is_one() {
        return None;
    }
    s.mod_floor(&Z::from(m)).to_u64()
}

/// Units of `Z/m`, ascending.
pub fn units_mod(m: u64) -> Vec<u64> {
    if m == 1 {
        return vec![0];
    }
    (1..m).filter(|a| a.gcd(&m) == 1).collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Exact p-adic valuation of a nonzero rational.
pub fn rational_valuation(x: &Q, p: u64) -> i64 {
    let p = Z::from(p);
    let count = |mut n: Z| {
        let mut k = 0i64;
        while !n.is_zero() && (&n % &p).is_zero() {
            n /= &p;
            k += 1;
        }
        k
    };
    count(x.numer().abs()) - count(x.denom().clone())
}

/// Whether every prime factor of the integer `n` lies in `primes`.
pub fn is_supported_on(n: &Z, primes: &[u64]) -> bool {
    let mut n = n.abs();
    if n.is_zero() {
        return false;
    }
    for &p in primes {
        let p = Z::from(p);
        while (&n % &p).is_zero() {
            n /= &p;
        }
    }
    n.is_one()
}

/// Rational approximation with denominator at most `bound` (best by error).
pub fn small_denominator(num: &Z, den: &Z, bound: u64) -> Q {
    let x = Q::new(num.clone(), den.clone());
    let mut best = Q::from_integer(x.round().to_integer());
    let mut err = (&x - &best).abs();
    for d in 2..=bound.max(1) {
        let dd = Q::from_integer(Z::from(d));
        let cand = (&x * &dd).round() / dd;
        let e = (&x - &cand).abs();
        if e < err {
            best = cand;
            err = e;
        }
    }
    best
}
