//! Real abelian fields `L = Q(ζ_m)^H`, their places over `S`, S-unit
//! fixtures and the Dirichlet regulator.

pub mod places;
pub mod regulator;
pub mod units;
pub mod valuation;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_integer::Integer;

use crate::arith::{factorize, units_mod};
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::groupring::{abelian_structure, FiniteAbelianGroup};

pub use places::{build_yx, Place, PlaceBlock, PlaceModules};
pub use regulator::{dirichlet_regulator, log_abs, log_embedding, RegulatorMap, RegulatorVector, REGULATOR_SIGN};
pub use units::{express_in_basis, FieldSpec, FormalProduct, MultiplicativeElement, PlaceJson, SUnitBasis, SUnitBasisJson};
pub use valuation::PrimeAbove;

/// `L = Q(ζ_m)^H` with `G = (Z/m)^× / H`, elements labelled by the
/// smallest residue in their coset.
#[derive(Clone)]
pub struct RealAbelianField {
    conductor: u64,
    subgroup_gens: Vec<u64>,
    subgroup: Vec<u64>,
    group: FiniteAbelianGroup,
    class_of: HashMap<u64, usize>,
    representatives: Vec<u64>,
}

impl fmt::Debug for RealAbelianField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})^<{:?}>", self.conductor, self.subgroup_gens)
    }
}

/// Subgroup of `(Z/m)^×` generated by `gens`, ascending.
pub fn generated_units(m: u64, gens: &[u64]) -> Vec<u64> {
    let mut seen: BTreeSet<u64> = BTreeSet::from([1 % m]);
    let mut frontier = vec![1 % m];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = (x * (g % m)) % m;
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

impl RealAbelianField {
    /// Validates reality (`−1 ∈ H`) and minimality of the conductor.
    pub fn new(conductor: u64, subgroup_gens: &[u64]) -> Result<Self> {
        let m = conductor;
        if m < 3 {
            return Err(Error::invalid(format!("conductor {m} does not define a non-trivial real abelian field")));
        }
        for &g in subgroup_gens {
            if g.gcd(&m) != 1 {
                return Err(Error::invalid(format!("subgroup generator {g} is not a unit modulo {m}")));
            }
        }
        let subgroup = generated_units(m, subgroup_gens);
        if !subgroup.contains(&(m - 1)) {
            return Err(Error::invalid(format!("field is not real: -1 is not in the subgroup generated by {subgroup_gens:?} mod {m}")));
        }
        for (p, _) in factorize(m) {
            let mp = m / p;
            let kernel: Vec<u64> = units_mod(m).into_iter().filter(|a| mp == 1 || a % mp == 1).collect();
            if kernel.iter().all(|a| subgroup.binary_search(a).is_ok()) {
                return Err(Error::invalid(format!(
                    "{m} is not the conductor: the field is already contained in Q(zeta_{mp})"
                )));
            }
        }
        let units = units_mod(m);
        let coset_min = |a: u64| subgroup.iter().map(|h| a * h % m).min().expect("nonempty");
        let reps: Vec<u64> = units.iter().map(|&a| coset_min(a)).collect::<BTreeSet<_>>().into_iter().collect();
        let (group, map) = abelian_structure(&reps, |a, b| coset_min(a * b % m), |a| a.to_string())?;
        let mut representatives = vec![0; reps.len()];
        for (r, &g) in reps.iter().zip(&map) {
            representatives[g] = *r;
        }
        let class_of = units.iter().map(|&a| (a, map[reps.binary_search(&coset_min(a)).expect("rep")])).collect();
        Ok(RealAbelianField {
            conductor: m,
            subgroup_gens: subgroup_gens.to_vec(),
            subgroup,
            group,
            class_of,
            representatives,
        })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn subgroup_gens(&self) -> &[u64] {
        &self.subgroup_gens
    }

    /// Elements of `H`, ascending.
    pub fn subgroup(&self) -> &[u64] {
        &self.subgroup
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.group.order()
    }

    /// Group element of the residue `a` (coprime to `m`).
    pub fn class_of(&self, a: u64) -> Result<usize> {
        self.class_of
            .get(&(a % self.conductor))
            .copied()
            .ok_or_else(|| Error::invalid(format!("{a} is not a unit modulo {}", self.conductor)))
    }

    /// Smallest residue in the coset of `g`.
    pub fn representative(&self, g: usize) -> u64 {
        self.representatives[g]
    }

    /// Group element from its residue label (as written in fixtures).
    pub fn element_from_label(&self, label: &str) -> Result<usize> {
        let a: u64 = label
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("group label `{label}` is not a residue")))?;
        self.class_of(a)
    }

    /// Whether `x ∈ Q(ζ_m)` is fixed by `H`.
    pub fn contains(&self, x: &CyclotomicNumber) -> bool {
        x.conductor() == self.conductor && self.subgroup_gens.iter().all(|&h| x.galois(h) == *x)
    }

    /// `σ_g(x)` for `x ∈ L`.
    pub fn act(&self, g: usize, x: &CyclotomicNumber) -> CyclotomicNumber {
        x.galois(self.representative(g))
    }

    /// Primes dividing the conductor, ascending.
    pub fn ramified_primes(&self) -> Vec<u64> {
        factorize(self.conductor).into_iter().map(|(p, _)| p).collect()
    }

    /// Image in `G` of a set of residues, as a sorted set of elements.
    fn image(&self, residues: &[u64]) -> Vec<usize> {
        let set: BTreeSet<usize> = residues.iter().map(|&a| self.class_of[&(a % self.conductor)]).collect();
        set.into_iter().collect()
    }

    /// `m = p^k·m'` with `p ∤ m'`.
    fn split_conductor(&self, p: u64) -> (u64, u32, u64) {
        let mut k = 0;
        let mut mp = self.conductor;
        while mp.is_multiple_of(p) {
            mp /= p;
            k += 1;
        }
        (self.conductor / mp, k, mp)
    }

    /// Residue `≡ x mod m'` and `≡ y mod p^k`.
    fn crt(&self, pk: u64, mp: u64, x_mod_mp: u64, y_mod_pk: u64) -> u64 {
        (0..self.conductor)
            .find(|a| a % mp == x_mod_mp % mp && a % pk == y_mod_pk % pk)
            .expect("coprime moduli")
    }

    /// Inertia subgroup at `p`: image of `{a ≡ 1 mod m'}`.
    pub fn inertia_group(&self, p: u64) -> Vec<usize> {
        let (_, _, mp) = self.split_conductor(p);
        let res: Vec<u64> = units_mod(self.conductor).into_iter().filter(|a| mp == 1 || a % mp == 1).collect();
        self.image(&res)
    }

    /// Decomposition subgroup at `p`: generated by the inertia residues and
    /// the Frobenius lift `≡ p mod m'`, `≡ 1 mod p^k`.
    pub fn decomposition_group(&self, p: u64) -> Vec<usize> {
        let (pk, _, mp) = self.split_conductor(p);
        let mut res: Vec<u64> = units_mod(self.conductor).into_iter().filter(|a| mp == 1 || a % mp == 1).collect();
        if mp > 1 {
            let frob = self.crt(pk, mp, p % mp, 1);
            res = generated_units(self.conductor, &[res.clone(), vec![frob]].concat());
        }
        self.image(&res)
    }

    /// Frobenius element at a prime not dividing `m`.
    pub fn frobenius(&self, p: u64) -> Result<usize> {
        if self.conductor.is_multiple_of(p) {
            return Err(Error::invalid(format!("{p} ramifies in the field")));
        }
        self.class_of(p % self.conductor)
    }

    /// `(e, f, g)` of `p` in `L`.
    pub fn splitting_data(&self, p: u64) -> (usize, usize, usize) {
        let e = self.inertia_group(p).len();
        let d = self.decomposition_group(p).len();
        (e, d / e, self.degree() / d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conductor_five() {
        let f = RealAbelianField::new(5, &[4]).unwrap();
        assert_eq!(f.degree(), 2);
        assert_eq!(f.decomposition_group(11), vec![0]);
        assert_eq!(f.decomposition_group(3).len(), 2);
        assert_eq!(f.decomposition_group(5).len(), 2);
        let c = f.class_of(2).unwrap();
        assert_ne!(c, f.group().identity());
        assert_eq!(f.class_of(3).unwrap(), c);
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(RealAbelianField::new(0, &[]).is_err());
        // Q(ζ_5) itself is not real
        assert!(RealAbelianField::new(5, &[1]).is_err());
        // conductor 10 gives the same field as 5
        assert!(RealAbelianField::new(10, &[9]).is_err());
        // H = all units gives Q
        assert!(RealAbelianField::new(7, &[3]).is_err());
    }

    #[test]
    fn local_degrees_multiply_out() {
        for (m, h) in [(12u64, vec![11u64]), (15, vec![14]), (21, vec![20]), (24, vec![23])] {
            let f = RealAbelianField::new(m, &h).unwrap();
            for p in [2u64, 3, 5, 7, 11, 13, 17, 19] {
                let (e, fp, g) = f.splitting_data(p);
                assert_eq!(e * fp * g, f.degree());
                if m % p != 0 {
                    assert_eq!(e, 1);
                }
            }
        }
    }
}
