//! Reduced norms and determinants of matrices over group rings.

use std::sync::Arc;

use crate::arith::Q;
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::groupring::character::{all_characters, evaluate, from_character_values};
use crate::groupring::element::{to_rational, GroupRingElement};
use crate::groupring::group::{FiniteAbelianGroup, FiniteGroup};
use crate::groupring::quadratic::det_field;
use crate::groupring::wedderburn::WedderburnData;

/// Square matrix over `Q[G]`, as rows.
pub type GroupRingMatrix = Vec<Vec<GroupRingElement<Q>>>;

/// The algebra `Q[G]` together with the data needed for reduced norms.
#[derive(Clone, Debug)]
pub enum GroupAlgebra {
    Abelian(FiniteAbelianGroup),
    Semisimple(Arc<WedderburnData>),
}

impl GroupAlgebra {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        match self {
            GroupAlgebra::Abelian(g) => g.table(),
            GroupAlgebra::Semisimple(w) => &w.group,
        }
    }

    pub fn is_commutative(&self) -> bool {
        matches!(self, GroupAlgebra::Abelian(_))
    }

    pub fn reduced_norm(&self, m: &GroupRingMatrix) -> Result<GroupRingElement<Q>> {
        check_square(m)?;
        match self {
            GroupAlgebra::Abelian(g) => reduced_norm_abelian(g, m),
            GroupAlgebra::Semisimple(w) => w.reduced_norm(m),
        }
    }
}

fn check_square(m: &GroupRingMatrix) -> Result<()> {
    if m.iter().any(|r| r.len() != m.len()) {
        return Err(Error::Dimension("reduced norm of a non-square matrix".into()));
    }
    Ok(())
}

/// Per-character determinants reassembled through the idempotents `e_χ`.
pub fn reduced_norm_abelian(group: &FiniteAbelianGroup, m: &GroupRingMatrix) -> Result<GroupRingElement<Q>> {
    let n = m.len();
    if n == 0 {
        return Ok(GroupRingElement::one(group.table().clone()));
    }
    let e = group.exponent();
    let mut values = Vec::new();
    for chi in all_characters(group) {
        let rows: Vec<Vec<CyclotomicNumber>> = m
            .iter()
            .map(|r| r.iter().map(|x| evaluate(group, &chi, x)).collect())
            .collect();
        let d = det_field(&rows, &CyclotomicNumber::zero(e))?;
        values.push((chi, d));
    }
    let x = from_character_values(group, &values);
    to_rational(&x).ok_or_else(|| Error::invalid("reduced norm left Q[G]; character data inconsistent"))
}

/// Determinant over the commutative ring `Q[G]` by cofactor expansion.
pub fn det_commutative(m: &GroupRingMatrix, group: &Arc<FiniteGroup>) -> GroupRingElement<Q> {
    let n = m.len();
    match n {
        0 => GroupRingElement::one(group.clone()),
        1 => m[0][0].clone(),
        2 => m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0])),
        _ => {
            let mut acc = GroupRingElement::zero(group.clone());
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: GroupRingMatrix = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = m[0][j].mul(&det_commutative(&minor, group));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    #[test]
    fn abelian_reduced_norm_of_group_element_matrix() {
        let g = FiniteAbelianGroup::new(&[2]).unwrap();
        let t = g.table().clone();
        let sigma = GroupRingElement::from_group_element(t.clone(), 1);
        let zero = GroupRingElement::zero(t.clone());
        // [[σ, 0], [0, σ]] has reduced norm σ^2 = 1
        let m = vec![vec![sigma.clone(), zero.clone()], vec![zero, sigma]];
        let alg = GroupAlgebra::Abelian(g);
        assert_eq!(alg.reduced_norm(&m).unwrap(), GroupRingElement::one(t.clone()));
        let two = GroupRingElement::from_rational(t.clone(), q(2));
        assert_eq!(alg.reduced_norm(&vec![vec![two]]).unwrap(), GroupRingElement::from_rational(t, q(2)));
    }
}
