//! Random instances and the algebraic properties they must satisfy, shared
//! by the proptest suites and the acceptance harness. Every property
//! returns `Err(description)` on a counterexample.

#![allow(dead_code)]

use std::sync::Arc;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weil_stark::arith::Q;
use weil_stark::groupring::character::idempotent;
use weil_stark::groupring::element::to_rational;
use weil_stark::groupring::{
    all_characters, FiniteAbelianGroup, FiniteGroup, GroupAlgebra, GroupRingElement, GroupRingMatrix, WedderburnData,
};
use weil_stark::lattice::{classical_fitting_ideal, exterior_power, minor_fitting_invariant, rubin_lattice};
use weil_stark::lattice::{GLattice, Lattice, PhiBudget, Presentation};
use weil_stark::matrix::{QMatrix, ZMatrix};
use weil_stark::fixtures::default_dir;

pub type Outcome = Result<(), String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Abelian groups small enough for exhaustive minors.
pub const GROUPS: &[&[u64]] = &[&[], &[2], &[3], &[4], &[2, 2], &[5], &[6], &[2, 4]];

pub fn random_group(rng: &mut ChaCha8Rng) -> FiniteAbelianGroup {
    FiniteAbelianGroup::new(GROUPS.choose(rng).unwrap()).unwrap()
}

pub fn wedderburn(name: &str) -> Arc<WedderburnData> {
    Arc::new(WedderburnData::load(&default_dir().join(format!("wedderburn_{name}.json"))).unwrap())
}

/// Integer element with at most `support` nonzero coefficients in `[-h, h]`.
pub fn random_element(rng: &mut ChaCha8Rng, group: &Arc<FiniteGroup>, h: i64, support: usize) -> GroupRingElement {
    let n = group.order();
    let mut coeffs = vec![Q::zero(); n];
    for _ in 0..support {
        coeffs[rng.gen_range(0..n)] = Q::from_integer(rng.gen_range(-h..=h).into());
    }
    GroupRingElement::from_coeffs(group.clone(), coeffs).unwrap()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, group: &Arc<FiniteGroup>, rows: usize, cols: usize, h: i64) -> GroupRingMatrix {
    let support = group.order().min(3);
    (0..rows).map(|_| (0..cols).map(|_| random_element(rng, group, h, support)).collect()).collect()
}

/// A presentation `Z[G]^d → Z[G]^{d'}` with `1 ≤ d' ≤ 2` and `d ∈ {d', d'+1}`.
pub fn random_presentation(rng: &mut ChaCha8Rng, group: &FiniteAbelianGroup) -> Presentation {
    let dp = rng.gen_range(1..=2);
    let d = dp + rng.gen_range(0..=1);
    let m = random_matrix(rng, group.table(), d, dp, 3);
    Presentation::new(GroupAlgebra::Abelian(group.clone()), m, dp).unwrap()
}

pub fn mat_mul(a: &GroupRingMatrix, b: &GroupRingMatrix) -> GroupRingMatrix {
    let g = a[0][0].group().clone();
    (0..a.len())
        .map(|i| {
            (0..b[0].len())
                .map(|j| (0..b.len()).fold(GroupRingElement::zero(g.clone()), |acc, k| acc.add(&a[i][k].mul(&b[k][j]))))
                .collect()
        })
        .collect()
}

/// The column-replacement construction agrees with the classical minor
/// ideal for every index `a ≤ d'`.
pub fn minor_matches_classical(p: &Presentation) -> Outcome {
    for a in 0..=p.generator_count() {
        let classical = classical_fitting_ideal(p, a).map_err(|e| e.to_string())?;
        let minor = minor_fitting_invariant(p, a, &PhiBudget::default()).map_err(|e| e.to_string())?;
        if classical != minor {
            return Err(format!("Fit^{a}: minors {:?} vs replacement {:?}", classical.lattice, minor.lattice));
        }
    }
    Ok(())
}

/// A second presentation of the same module: random row and column
/// operations over `Z[G]`, a redundant relation, a shuffle of the relations
/// and a stabilising generator killed by its own relation.
pub fn equivalent_presentation(rng: &mut ChaCha8Rng, p: &Presentation) -> Presentation {
    let alg = p.algebra().clone();
    let g = alg.group().clone();
    let mut m = p.relations().clone();
    let (d, dp) = (m.len(), p.generator_count());
    for _ in 0..3 {
        if d > 1 {
            let (i, j) = (rng.gen_range(0..d), rng.gen_range(0..d));
            if i != j {
                let x = random_element(rng, &g, 2, 2);
                let rj = m[j].clone();
                for (mik, mjk) in m[i].iter_mut().zip(&rj) {
                    *mik = mik.add(&x.mul(mjk));
                }
            }
        }
        if dp > 1 {
            let (k, l) = (rng.gen_range(0..dp), rng.gen_range(0..dp));
            if k != l {
                let y = random_element(rng, &g, 2, 2);
                for row in m.iter_mut() {
                    row[k] = row[k].add(&row[l].mul(&y));
                }
            }
        }
    }
    // a relation that is a combination of the others
    let mut combo: Vec<GroupRingElement> = (0..dp).map(|_| GroupRingElement::zero(g.clone())).collect();
    for row in &m {
        let x = random_element(rng, &g, 1, 2);
        for (c, e) in combo.iter_mut().zip(row) {
            *c = c.add(&x.mul(e));
        }
    }
    m.push(combo);
    m.shuffle(rng);
    // stabilise: new generator with relation (c_1, .., c_{d'}, 1)
    for row in m.iter_mut() {
        row.push(random_element(rng, &g, 2, 1));
    }
    let mut last: Vec<GroupRingElement> = (0..dp).map(|_| GroupRingElement::zero(g.clone())).collect();
    last.push(GroupRingElement::one(g.clone()));
    // the last relation kills the new generator, so the module is unchanged
    m.push(last);
    Presentation::new(alg, m, dp + 1).unwrap()
}

/// `Fit^a` depends only on the module.
pub fn fitting_presentation_independent(rng: &mut ChaCha8Rng, p: &Presentation) -> Outcome {
    let q = equivalent_presentation(rng, p);
    for a in 0..=p.generator_count() + 1 {
        let x = classical_fitting_ideal(p, a).map_err(|e| e.to_string())?;
        let y = classical_fitting_ideal(&q, a).map_err(|e| e.to_string())?;
        if x != y {
            return Err(format!("Fit^{a} changed: {:?} vs {:?}", x.lattice, y.lattice));
        }
    }
    Ok(())
}

/// `Nrd(AB) = Nrd(A)·Nrd(B)` for random square matrices of size `n`.
pub fn nrd_multiplicative(rng: &mut ChaCha8Rng, alg: &GroupAlgebra, n: usize) -> Outcome {
    let g = alg.group().clone();
    let a = random_matrix(rng, &g, n, n, 2);
    let b = random_matrix(rng, &g, n, n, 2);
    let nrd = |m: &GroupRingMatrix| alg.reduced_norm(m).map_err(|e| e.to_string());
    let (na, nb, nab) = (nrd(&a)?, nrd(&b)?, nrd(&mat_mul(&a, &b))?);
    if nab != na.mul(&nb) {
        return Err(format!("Nrd(AB) = {nab:?} but Nrd(A)Nrd(B) = {:?}", na.mul(&nb)));
    }
    // the reduced norm of the identity is 1, and it is central
    let id: GroupRingMatrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { GroupRingElement::one(g.clone()) } else { GroupRingElement::zero(g.clone()) }).collect())
        .collect();
    if nrd(&id)? != GroupRingElement::one(g.clone()) {
        return Err("Nrd(1) ≠ 1".into());
    }
    for h in 0..g.order() {
        let x = GroupRingElement::from_group_element(g.clone(), h);
        if x.mul(&na) != na.mul(&x) {
            return Err(format!("Nrd(A) does not commute with group element {h}"));
        }
    }
    Ok(())
}

/// Primitive central idempotents: idempotent, orthogonal, complete and
/// central. Abelian groups use the character idempotents in `Q(ζ_e)[G]`.
pub fn idempotents_complete(alg: &GroupAlgebra) -> Outcome {
    match alg {
        GroupAlgebra::Abelian(group) => {
            let ids: Vec<_> = all_characters(group).iter().map(|c| idempotent(group, c)).collect();
            let sum = ids[1..].iter().fold(ids[0].clone(), |a, b| a.add(b));
            if to_rational(&sum) != Some(GroupRingElement::one(group.table().clone())) {
                return Err("character idempotents do not sum to 1".into());
            }
            for (i, a) in ids.iter().enumerate() {
                for (j, b) in ids.iter().enumerate() {
                    let p = a.mul(b);
                    if (i == j && &p != a) || (i != j && !p.is_zero()) {
                        return Err(format!("e_{i}·e_{j} is wrong"));
                    }
                }
            }
            Ok(())
        }
        GroupAlgebra::Semisimple(w) => {
            let g = w.group.clone();
            let ids: Vec<_> = w.components.iter().map(|c| c.idempotent.clone()).collect();
            let sum = ids.iter().fold(GroupRingElement::zero(g.clone()), |a, b| a.add(b));
            if sum != GroupRingElement::one(g.clone()) {
                return Err("component idempotents do not sum to 1".into());
            }
            for (i, a) in ids.iter().enumerate() {
                for (j, b) in ids.iter().enumerate() {
                    let p = a.mul(b);
                    if (i == j && &p != a) || (i != j && !p.is_zero()) {
                        return Err(format!("e_{i}·e_{j} is wrong"));
                    }
                }
                for h in 0..g.order() {
                    let x = GroupRingElement::from_group_element(g.clone(), h);
                    if x.mul(a) != a.mul(&x) {
                        return Err(format!("e_{i} is not central"));
                    }
                }
            }
            let dim: usize = w.components.iter().map(|c| c.degree * c.degree * if c.field_d == 1 { 1 } else { 2 }).sum();
            if dim != g.order() {
                return Err(format!("component dimensions sum to {dim}, not |G| = {}", g.order()));
            }
            Ok(())
        }
    }
}

pub fn random_int_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, h: i64) -> ZMatrix {
    let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-h..=h)).collect()).collect();
    ZMatrix::from_i64(&data)
}

/// The HNF basis is determined by the lattice: unchanged under a random
/// unimodular transformation, a shuffle and redundant generators, and it
/// has the normal-form shape.
pub fn hnf_canonical(rng: &mut ChaCha8Rng) -> Outcome {
    let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
    let a = random_int_matrix(rng, r, c, 6).to_q();
    let base = Lattice::from_generators(&a);
    let mut rows = a.to_rows();
    for _ in 0..6 {
        let (i, j) = (rng.gen_range(0..r), rng.gen_range(0..r));
        if i != j {
            let f = Q::from_integer(rng.gen_range(-3i64..=3).into());
            let rj = rows[j].clone();
            for (x, y) in rows[i].iter_mut().zip(&rj) {
                *x += &f * y;
            }
        }
    }
    if rng.gen_bool(0.5) {
        let k = rng.gen_range(0..r);
        rows[k] = rows[k].iter().map(|x| -x).collect();
    }
    let extra: Vec<Q> = (0..c).map(|j| rows.iter().fold(Q::zero(), |acc, row| acc + &row[j] * Q::from_integer(2.into()))).collect();
    rows.push(extra);
    rows.shuffle(rng);
    let other = Lattice::from_generators(&QMatrix::from_rows(rows, c).unwrap());
    if base != other {
        return Err(format!("{base:?} vs {other:?}"));
    }
    // normal-form shape: strictly increasing pivots, positive, reduced above
    let b = base.basis();
    let mut last: Option<usize> = None;
    for i in 0..b.nrows() {
        let p = (0..c).find(|&j| !b[(i, j)].is_zero()).ok_or("zero row in a basis")?;
        if last.is_some_and(|l| p <= l) || b[(i, p)] <= Q::zero() {
            return Err(format!("row {i} breaks the echelon shape"));
        }
        for k in 0..i {
            if b[(k, p)] < Q::zero() || b[(k, p)] >= b[(i, p)] {
                return Err(format!("entry ({k},{p}) is not reduced by the pivot"));
            }
        }
        last = Some(p);
    }
    Ok(())
}

/// On a free module `F ≅ Z[G]^k` (embedded through a random injective
/// equivariant map and scaled), the Rubin lattice `∩^r F` equals `∧^r F`.
pub fn rubin_equals_exterior_on_free(rng: &mut ChaCha8Rng, group: &FiniteAbelianGroup, k: usize, r: usize) -> Outcome {
    let n = group.order();
    let ambient = GLattice::free(group.clone(), k);
    let free = loop {
        let a = random_matrix(rng, group.table(), k, k, 2);
        let scale = Q::from_integer(rng.gen_range(1i64..=3).into());
        let gens: Vec<Vec<Q>> = a.iter().map(|row| row.iter().flat_map(|x| x.to_vector()).map(|c| c * &scale).collect()).collect();
        let m = ambient.submodule(&gens).map_err(|e| e.to_string())?;
        if m.rank() == k * n {
            break m;
        }
    };
    let rubin = rubin_lattice(&free, r).map_err(|e| e.to_string())?;
    let ext = exterior_power(&free, r).map_err(|e| e.to_string())?;
    if rubin.module.lattice() != ext.module.lattice() {
        return Err(format!("k={k}, r={r}: {:?} vs {:?}", rubin.module.lattice(), ext.module.lattice()));
    }
    Ok(())
}
