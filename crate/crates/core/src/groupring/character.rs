//! Characters of finite abelian groups and their idempotents.

use num_traits::One;

use crate::arith::Q;
use crate::cyclotomic::CyclotomicNumber;
use crate::groupring::element::GroupRingElement;
use crate::groupring::group::FiniteAbelianGroup;

/// `χ(g_j) = ζ_{d_j}^{k_j}` on the invariant-factor generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    invariants: Vec<u64>,
    /// `k_j` with `0 <= k_j < d_j`.
    exps: Vec<u64>,
}

impl Character {
    pub fn new(group: &FiniteAbelianGroup, exps: Vec<u64>) -> Self {
        let inv = group.invariants().to_vec();
        assert_eq!(exps.len(), inv.len());
        let exps = exps.iter().zip(&inv).map(|(k, d)| k % d).collect();
        Character { invariants: inv, exps }
    }

    pub fn trivial(group: &FiniteAbelianGroup) -> Self {
        Self::new(group, vec![0; group.invariants().len()])
    }

    pub fn exps(&self) -> &[u64] {
        &self.exps
    }

    /// Conductor of the value field `Q(ζ_e)`, `e` the group exponent.
    pub fn value_conductor(&self) -> u64 {
        self.invariants.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&k| k == 0)
    }

    /// `χ(g) = ζ_e^{value_exponent(g)}`.
    pub fn value_exponent(&self, group: &FiniteAbelianGroup, g: usize) -> u64 {
        let e = self.value_conductor();
        let a = group.exponents(g);
        self.exps
            .iter()
            .zip(&a)
            .zip(&self.invariants)
            .map(|((k, x), d)| k * x % d * (e / d))
            .sum::<u64>()
            % e
    }

    pub fn value(&self, group: &FiniteAbelianGroup, g: usize) -> CyclotomicNumber {
        CyclotomicNumber::zeta_power(self.value_conductor(), self.value_exponent(group, g) as i64)
    }

    pub fn conj(&self) -> Self {
        Character {
            invariants: self.invariants.clone(),
            exps: self
                .exps
                .iter()
                .zip(&self.invariants)
                .map(|(k, d)| (d - k) % d)
                .collect(),
        }
    }

    /// Order of `χ` in the character group.
    pub fn order(&self) -> u64 {
        self.exps
            .iter()
            .zip(&self.invariants)
            .map(|(&k, &d)| d / crate::arith::gcd_u64(k, d))
            .fold(1, crate::arith::lcm_u64)
    }

    /// Whether `χ` is trivial on every element of `subgroup`.
    pub fn is_trivial_on(&self, group: &FiniteAbelianGroup, subgroup: &[usize]) -> bool {
        subgroup.iter().all(|&g| self.value_exponent(group, g) == 0)
    }

    pub fn label(&self) -> String {
        format!("chi{:?}", self.exps)
    }
}

/// All characters, in the mixed-radix order of their exponent vectors.
pub fn all_characters(group: &FiniteAbelianGroup) -> Vec<Character> {
    group
        .elements()
        .map(|i| Character::new(group, group.exponents(i)))
        .collect()
}

/// `e_χ = |G|^{-1} Σ_g χ(g) g^{-1}` in `Q(ζ_e)[G]`.
pub fn idempotent(group: &FiniteAbelianGroup, chi: &Character) -> GroupRingElement<CyclotomicNumber> {
    let n = Q::new(One::one(), (group.order() as i64).into());
    let coeffs = group
        .elements()
        .map(|h| {
            // coefficient of h is χ(h^{-1}) / |G|
            chi.value(group, group.inv(h)).scale(&n)
        })
        .collect();
    GroupRingElement::from_coeffs(group.table().clone(), coeffs).expect("sized")
}

/// `χ` extended linearly to `Q[G] → Q(ζ_e)`.
pub fn evaluate(group: &FiniteAbelianGroup, chi: &Character, x: &GroupRingElement<Q>) -> CyclotomicNumber {
    let e = chi.value_conductor();
    x.support().fold(CyclotomicNumber::zero(e), |acc, (g, c)| {
        acc.add(&chi.value(group, g).scale(c))
    })
}

/// `χ` extended linearly to `Q(ζ_e)[G] → Q(ζ_e)`.
pub fn evaluate_cyclotomic(
    group: &FiniteAbelianGroup,
    chi: &Character,
    x: &GroupRingElement<CyclotomicNumber>,
) -> CyclotomicNumber {
    let e = chi.value_conductor();
    x.support().fold(CyclotomicNumber::zero(e), |acc, (g, c)| {
        let c = if c.conductor() == e { c.clone() } else { c.embed(e).expect("value field") };
        acc.add(&chi.value(group, g).mul(&c))
    })
}

/// Rebuilds `x ∈ Q(ζ_e)[G]` from its character values: `x = Σ_χ χ(x) e_χ`.
pub fn from_character_values(
    group: &FiniteAbelianGroup,
    values: &[(Character, CyclotomicNumber)],
) -> GroupRingElement<CyclotomicNumber> {
    let e = group.exponent();
    let mut acc = GroupRingElement::zero_with(group.table().clone(), &CyclotomicNumber::zero(e));
    for (chi, v) in values {
        acc = acc.add(&idempotent(group, chi).scale(v));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupring::element::to_rational;

    #[test]
    fn idempotents_of_c4_are_orthogonal() {
        let g = FiniteAbelianGroup::new(&[4]).unwrap();
        let chars = all_characters(&g);
        let ids: Vec<_> = chars.iter().map(|c| idempotent(&g, c)).collect();
        let sum = ids.iter().skip(1).fold(ids[0].clone(), |a, b| a.add(b));
        let one = to_rational(&sum).unwrap();
        assert_eq!(one, GroupRingElement::one(g.table().clone()));
        for (i, a) in ids.iter().enumerate() {
            for (j, b) in ids.iter().enumerate() {
                let p = a.mul(b);
                if i == j {
                    assert_eq!(&p, a);
                } else {
                    assert!(p.is_zero());
                }
            }
        }
    }

    #[test]
    fn evaluation_is_multiplicative() {
        let g = FiniteAbelianGroup::new(&[2, 2]).unwrap();
        let t = g.table().clone();
        let a = GroupRingElement::from_i64(t.clone(), &[1, 2, 0, -1]).unwrap();
        let b = GroupRingElement::from_i64(t, &[3, 0, 1, 1]).unwrap();
        for chi in all_characters(&g) {
            assert_eq!(
                evaluate(&g, &chi, &a.mul(&b)),
                evaluate(&g, &chi, &a).mul(&evaluate(&g, &chi, &b))
            );
        }
    }
}
