//! Finite groups given by multiplication tables, and finite abelian groups
//! in invariant-factor form.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::ToPrimitive;

use crate::arith::Z;
use crate::error::{Error, Result};
use crate::lattice::normal_form::snf;
use crate::matrix::ZMatrix;

/// A finite group by its Cayley table. Elements are `0..order`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
    names: Vec<String>,
    abelian: bool,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {}, {:?})", self.order, self.names)
    }
}

impl FiniteGroup {
    /// Validates the group axioms on a Cayley table (`mul[a*n + b] = a·b`).
    pub fn from_table(names: Vec<String>, mul: Vec<usize>) -> Result<Self> {
        let n = names.len();
        if n == 0 || mul.len() != n * n || mul.iter().any(|&x| x >= n) {
            return Err(Error::invalid("malformed Cayley table"));
        }
        let at = |a: usize, b: usize| mul[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or_else(|| Error::invalid("Cayley table has no identity"))?;
        let mut inv = vec![0; n];
        for a in 0..n {
            inv[a] = (0..n)
                .find(|&b| at(a, b) == identity)
                .ok_or_else(|| Error::invalid("Cayley table has a non-invertible element"))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::invalid("Cayley table is not associative"));
                    }
                }
            }
        }
        let abelian = (0..n).all(|a| (0..n).all(|b| at(a, b) == at(b, a)));
        Ok(FiniteGroup {
            order: n,
            mul,
            inv,
            identity,
            names,
            abelian,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        (0..e).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.order).filter(|&i| seen[i]).collect()
    }
}

/// A finite abelian group `Z/d_1 × … × Z/d_k` with `d_1 | d_2 | … | d_k`,
/// all `d_i > 1`. Element `i` has exponent vector given by mixed radix,
/// first coordinate least significant.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    invariants: Vec<u64>,
    table: Arc<FiniteGroup>,
}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteAbelianGroup{:?}", self.invariants)
    }
}

impl FiniteAbelianGroup {
    pub fn new(invariants: &[u64]) -> Result<Self> {
        Self::with_names(invariants, None)
    }

    /// Same group with custom element names (indexed by element).
    pub fn with_names(invariants: &[u64], names: Option<Vec<String>>) -> Result<Self> {
        if invariants.iter().any(|&d| d < 2) {
            return Err(Error::invalid(format!(
                "invariant factors must exceed 1: {invariants:?}"
            )));
        }
        if invariants.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::invalid(format!(
                "invariant factors must form a divisibility chain: {invariants:?}"
            )));
        }
        let order: usize = invariants.iter().product::<u64>() as usize;
        let names = match names {
            Some(n) if n.len() == order => n,
            Some(_) => return Err(Error::invalid("wrong number of element names")),
            None => (0..order).map(|i| default_name(invariants, i)).collect(),
        };
        let exps: Vec<Vec<u64>> = (0..order).map(|i| to_exponents(invariants, i)).collect();
        let mut mul = Vec::with_capacity(order * order);
        for a in &exps {
            for b in &exps {
                let c: Vec<u64> = a
                    .iter()
                    .zip(b)
                    .zip(invariants)
                    .map(|((x, y), d)| (x + y) % d)
                    .collect();
                mul.push(from_exponents(invariants, &c));
            }
        }
        let table = FiniteGroup::from_table(names, mul)?;
        Ok(FiniteAbelianGroup {
            invariants: invariants.to_vec(),
            table: Arc::new(table),
        })
    }

    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    /// Exponent of the group (1 for the trivial group).
    pub fn exponent(&self) -> u64 {
        self.invariants.last().copied().unwrap_or(1)
    }

    pub fn table(&self) -> &Arc<FiniteGroup> {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.table.identity()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table.mul(a, b)
    }

    pub fn inv(&self, a: usize) -> usize {
        self.table.inv(a)
    }

    pub fn exponents(&self, a: usize) -> Vec<u64> {
        to_exponents(&self.invariants, a)
    }

    pub fn element(&self, exps: &[u64]) -> usize {
        let reduced: Vec<u64> = exps
            .iter()
            .zip(&self.invariants)
            .map(|(e, d)| e % d)
            .collect();
        from_exponents(&self.invariants, &reduced)
    }

    /// The `j`-th invariant-factor generator.
    pub fn generator(&self, j: usize) -> usize {
        let mut e = vec![0; self.invariants.len()];
        e[j] = 1;
        self.element(&e)
    }

    pub fn generators(&self) -> Vec<usize> {
        (0..self.invariants.len()).map(|j| self.generator(j)).collect()
    }

    pub fn name(&self, a: usize) -> &str {
        self.table.name(a)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }
}

fn to_exponents(inv: &[u64], mut i: usize) -> Vec<u64> {
    inv.iter()
        .map(|&d| {
            let e = (i as u64) % d;
            i /= d as usize;
            e
        })
        .collect()
}

fn from_exponents(inv: &[u64], e: &[u64]) -> usize {
    let mut idx = 0usize;
    for (k, d) in e.iter().zip(inv).rev() {
        idx = idx * (*d as usize) + *k as usize;
    }
    idx
}

fn default_name(inv: &[u64], i: usize) -> String {
    let e = to_exponents(inv, i);
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(j, &k)| if k == 1 { format!("g{j}") } else { format!("g{j}^{k}") })
        .collect();
    if parts.is_empty() {
        "e".to_string()
    } else {
        parts.join("*")
    }
}

/// Invariant-factor structure of a finite abelian group given abstractly by
/// its elements and multiplication. Returns the group (named by `name`) and,
/// for each input element, its index in the new group.
pub fn abelian_structure<T, M, N>(elements: &[T], mul: M, name: N) -> Result<(FiniteAbelianGroup, Vec<usize>)>
where
    T: Clone + Eq + std::hash::Hash,
    M: Fn(&T, &T) -> T,
    N: Fn(&T) -> String,
{
    let n = elements.len();
    let pos: HashMap<T, usize> = elements.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
    if pos.len() != n {
        return Err(Error::invalid("duplicate group elements"));
    }
    let idx = |x: &T| -> Result<usize> {
        pos.get(x).copied().ok_or_else(|| Error::invalid("set is not closed under multiplication"))
    };
    let identity = (0..n)
        .find(|&e| (0..n).all(|a| mul(&elements[e], &elements[a]) == elements[a]))
        .ok_or_else(|| Error::invalid("no identity"))?;
    let power = |a: usize, k: u64| -> Result<usize> {
        let mut x = identity;
        for _ in 0..k {
            x = idx(&mul(&elements[x], &elements[a]))?;
        }
        Ok(x)
    };
    // greedy generating set with triangular relations
    let mut gens: Vec<usize> = Vec::new();
    let mut span: Vec<Vec<i64>> = vec![Vec::new(); n]; // exponent vectors over gens, for reached elements
    let mut reached = vec![false; n];
    reached[identity] = true;
    let mut relations: Vec<Vec<i64>> = Vec::new();
    for cand in 0..n {
        if reached[cand] {
            continue;
        }
        // smallest k with cand^k in the current span
        let mut k = 1u64;
        let mut x = cand;
        while !reached[x] {
            x = idx(&mul(&elements[x], &elements[cand]))?;
            k += 1;
        }
        let g = gens.len();
        let mut rel = span[x].iter().map(|c| -c).collect::<Vec<_>>();
        rel.resize(g, 0);
        rel.push(k as i64);
        for r in relations.iter_mut() {
            r.push(0);
        }
        relations.push(rel);
        gens.push(cand);
        // extend span by powers of the new generator
        let old: Vec<usize> = (0..n).filter(|&i| reached[i]).collect();
        for j in 1..k {
            let gj = power(cand, j)?;
            for &o in &old {
                let y = idx(&mul(&elements[o], &elements[gj]))?;
                if !reached[y] {
                    reached[y] = true;
                    let mut v = span[o].clone();
                    v.resize(g, 0);
                    v.push(j as i64);
                    span[y] = v;
                }
            }
        }
        for i in 0..n {
            span[i].resize(g + 1, 0);
        }
    }
    let k = gens.len();
    if k == 0 {
        let g = FiniteAbelianGroup::with_names(&[], Some(vec![name(&elements[identity])]))?;
        return Ok((g, vec![0; n]));
    }
    let rel = ZMatrix::from_i64(&relations);
    let s = snf(&rel);
    // new coordinates y = x * V; keep coordinates with d > 1
    let keep: Vec<usize> = (0..k).filter(|&i| s.diagonal[i] > Z::from(1)).collect();
    let invariants: Vec<u64> = keep.iter().map(|&i| s.diagonal[i].to_u64().unwrap()).collect();
    let mut map = vec![0usize; n];
    let mut names = vec![String::new(); n];
    for i in 0..n {
        let x: Vec<Z> = span[i].iter().map(|&c| Z::from(c)).collect();
        let yv: Vec<Z> = (0..k).map(|c| (0..k).map(|r| &x[r] * &s.v[(r, c)]).sum()).collect();
        let exps: Vec<u64> = keep
            .iter()
            .zip(&invariants)
            .map(|(&c, &d)| {
                let dz = Z::from(d);
                ((yv[c].clone() % &dz + &dz) % &dz).to_u64().unwrap()
            })
            .collect();
        map[i] = from_exponents(&invariants, &exps);
        names[map[i]] = name(&elements[i]);
    }
    let group = FiniteAbelianGroup::with_names(&invariants, Some(names))?;
    Ok((group, map))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_four_and_cyclic() {
        let v4 = FiniteAbelianGroup::new(&[2, 2]).unwrap();
        assert_eq!(v4.order(), 4);
        assert!(v4.elements().all(|a| v4.mul(a, a) == v4.identity()));
        let c6 = FiniteAbelianGroup::new(&[6]).unwrap();
        assert_eq!(c6.table().element_order(c6.generator(0)), 6);
        assert!(FiniteAbelianGroup::new(&[2, 3]).is_err());
        assert!(FiniteAbelianGroup::new(&[1]).is_err());
    }

    #[test]
    fn structure_of_unit_groups() {
        // (Z/24)^x = (Z/2)^3, (Z/7)^x = Z/6, (Z/15)^x = Z/2 x Z/4
        for (m, inv) in [(24u64, vec![2u64, 2, 2]), (7, vec![6]), (15, vec![2, 4])] {
            let els = crate::arith::units_mod(m);
            let (g, map) = abelian_structure(&els, |a, b| a * b % m, |a| a.to_string()).unwrap();
            assert_eq!(g.invariants(), &inv[..]);
            for (i, a) in els.iter().enumerate() {
                for (j, b) in els.iter().enumerate() {
                    let k = els.iter().position(|c| *c == a * b % m).unwrap();
                    assert_eq!(g.mul(map[i], map[j]), map[k]);
                }
            }
        }
    }
}
