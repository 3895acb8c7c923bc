//! `Q(√d)` arithmetic for representation matrices, plus a generic
//! determinant over exact fields.

use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{parse_rational, Q};
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::groupring::element::Coeff;

/// A coefficient type that is a field.
pub trait FieldElem: Coeff {
    fn inv(&self) -> Result<Self>;
}

impl FieldElem for Q {
    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(Error::invalid("division by zero"));
        }
        Ok(self.recip())
    }
}

impl FieldElem for CyclotomicNumber {
    fn inv(&self) -> Result<Self> {
        self.inverse()
    }
}

/// `a + b√d` with `d` a squarefree integer other than 0, 1.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadraticNumber {
    pub a: Q,
    pub b: Q,
    pub d: i64,
}

impl fmt::Debug for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}*sqrt({})", self.a, self.b, self.d)
    }
}

impl QuadraticNumber {
    pub fn rational(d: i64, a: Q) -> Self {
        QuadraticNumber { a, b: Q::zero(), d }
    }

    /// Parses `"x"`, `"x+y*sqrt(d)"` or `"x-y*sqrt(d)"` (rationals as `p/q`).
    pub fn parse(s: &str, d: i64) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let tag = format!("*sqrt({d})");
        if let Some(body) = t.strip_suffix(&tag) {
            // split at the last sign that is not the leading one
            let cut = body
                .char_indices()
                .skip(1)
                .filter(|(_, c)| *c == '+' || *c == '-')
                .map(|(i, _)| i)
                .last();
            let (a, b) = match cut {
                Some(i) => (parse_rational(&body[..i])?, parse_rational(body[i..].trim_start_matches('+'))?),
                None => (Q::zero(), parse_rational(body)?),
            };
            Ok(QuadraticNumber { a, b, d })
        } else if t.contains("sqrt") {
            Err(Error::Parse(format!("bad quadratic entry {s:?} for sqrt({d})")))
        } else {
            Ok(QuadraticNumber::rational(d, parse_rational(&t)?))
        }
    }

    pub fn as_rational(&self) -> Option<&Q> {
        Zero::is_zero(&self.b).then_some(&self.a)
    }
}

impl Coeff for QuadraticNumber {
    fn zero_like(&self) -> Self {
        QuadraticNumber::rational(self.d, Q::zero())
    }
    fn one_like(&self) -> Self {
        QuadraticNumber::rational(self.d, Q::one())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn add(&self, o: &Self) -> Self {
        QuadraticNumber { a: &self.a + &o.a, b: &self.b + &o.b, d: self.d }
    }
    fn sub(&self, o: &Self) -> Self {
        QuadraticNumber { a: &self.a - &o.a, b: &self.b - &o.b, d: self.d }
    }
    fn mul(&self, o: &Self) -> Self {
        let d = Q::from_integer(self.d.into());
        QuadraticNumber {
            a: &self.a * &o.a + &self.b * &o.b * d,
            b: &self.a * &o.b + &self.b * &o.a,
            d: self.d,
        }
    }
    fn neg(&self) -> Self {
        QuadraticNumber { a: -&self.a, b: -&self.b, d: self.d }
    }
    fn from_rational_like(&self, q: &Q) -> Self {
        QuadraticNumber::rational(self.d, q.clone())
    }
}

impl FieldElem for QuadraticNumber {
    fn inv(&self) -> Result<Self> {
        let d = Q::from_integer(self.d.into());
        let n = &self.a * &self.a - &self.b * &self.b * d;
        if Zero::is_zero(&n) {
            return Err(Error::invalid("division by zero"));
        }
        Ok(QuadraticNumber { a: &self.a / &n, b: -&self.b / &n, d: self.d })
    }
}

/// Determinant by Gaussian elimination over an exact field.
pub fn det_field<F: FieldElem>(rows: &[Vec<F>], like: &F) -> Result<F> {
    let n = rows.len();
    let mut a: Vec<Vec<F>> = rows.to_vec();
    let mut det = like.one_like();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Ok(like.zero_like());
        };
        if p != c {
            a.swap(p, c);
            det = det.neg();
        }
        det = det.mul(&a[c][c]);
        let inv = a[c][c].inv()?;
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].mul(&inv);
            for j in c..n {
                let v = a[i][j].sub(&f.mul(&a[c][j]));
                a[i][j] = v;
            }
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qr};

    #[test]
    fn parse_and_invert() {
        let x = QuadraticNumber::parse("1/2-3/2*sqrt(5)", 5).unwrap();
        assert_eq!(x.a, qr(1, 2));
        assert_eq!(x.b, qr(-3, 2));
        let y = x.inv().unwrap();
        assert_eq!(x.mul(&y), x.one_like());
        assert_eq!(QuadraticNumber::parse("2*sqrt(3)", 3).unwrap().b, q(2));
        assert!(QuadraticNumber::parse("1+sqrt(2)", 3).is_err());
    }

    #[test]
    fn determinant_over_rationals() {
        let m = vec![vec![q(0), q(2)], vec![q(3), q(1)]];
        assert_eq!(det_field(&m, &q(0)).unwrap(), q(-6));
    }
}
