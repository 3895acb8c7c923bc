//! Places of `L` above a set `S` of places of `Q`, and the permutation
//! modules `Y_{L,S}` and `X_{L,S}`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::arith::{is_prime, Q};
use crate::error::{Error, Result};
use crate::lattice::{GLattice, Lattice};
use crate::matrix::QMatrix;
use crate::numberfield::RealAbelianField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinite,
    Finite(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinite => write!(f, "inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "inf" || s == "infinity" {
            return Ok(Place::Infinite);
        }
        let p: u64 = s.parse().map_err(|_| Error::Parse(format!("`{s}` is neither `inf` nor a prime")))?;
        if !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        Ok(Place::Finite(p))
    }
}

/// The canonical `S = {∞} ∪ {p | m}`.
pub fn canonical_places(field: &RealAbelianField) -> Vec<Place> {
    std::iter::once(Place::Infinite)
        .chain(field.ramified_primes().into_iter().map(Place::Finite))
        .collect()
}

/// Places of `L` above one place `v` of `Q`: the cosets `g·G_v`.
#[derive(Clone, Debug)]
pub struct PlaceBlock {
    pub place: Place,
    pub decomposition: Vec<usize>,
    /// Cosets of `G_v`; the first contains the identity.
    pub cosets: Vec<Vec<usize>>,
    /// First coordinate of this block in `Y`.
    pub offset: usize,
    /// Residue degree in `L` (1 at infinity).
    pub residue_degree: usize,
}

impl PlaceBlock {
    /// Coordinate of the place `g·w_v`.
    pub fn coordinate(&self, g: usize) -> usize {
        self.offset + self.cosets.iter().position(|c| c.contains(&g)).expect("cosets cover G")
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }
}

/// `Y_{L,S}`, `X_{L,S}` and the projection `π` onto the infinite block.
#[derive(Clone, Debug)]
pub struct PlaceModules {
    pub blocks: Vec<PlaceBlock>,
    pub y: GLattice,
    pub x: GLattice,
    /// `Y_{L,{∞}} = Z[G]`.
    pub y_infinity: GLattice,
}

impl PlaceModules {
    pub fn dimension(&self) -> usize {
        self.y.ambient_dim()
    }

    pub fn block(&self, place: Place) -> Option<&PlaceBlock> {
        self.blocks.iter().find(|b| b.place == place)
    }

    /// `π` on an ambient vector of `Y`.
    pub fn project_infinity(&self, v: &[Q]) -> Vec<Q> {
        let b = &self.blocks[0];
        v[b.offset..b.offset + b.len()].to_vec()
    }

    /// `ker(π|_X)` as a G-lattice.
    pub fn kernel_of_projection(&self) -> Result<GLattice> {
        let n = self.blocks[0].len();
        let dim = self.dimension();
        // X ∩ {∞-block = 0}: the sum-zero vectors supported on finite blocks
        let rows: Vec<Vec<Q>> = (n + 1..dim)
            .map(|j| {
                let mut v = vec![Q::zero(); dim];
                v[n] = -Q::one();
                v[j] = Q::one();
                v
            })
            .collect();
        let lattice = if rows.is_empty() { Lattice::zero(dim) } else { Lattice::from_rows(rows, dim)? };
        self.y.with_lattice(lattice)
    }

    /// The fixed place `w_0`: the identity coset over the smallest finite
    /// prime of `S`.
    pub fn base_finite_place(&self) -> Option<&PlaceBlock> {
        self.blocks.iter().find(|b| matches!(b.place, Place::Finite(_)))
    }

    /// For each `g`, the coordinates of `g·w_∞` and `g·w_0`.
    pub fn difference_coordinates(&self) -> Result<Vec<(usize, usize)>> {
        let w0 = self
            .base_finite_place()
            .ok_or_else(|| Error::invalid("S has no finite place"))?;
        let inf = &self.blocks[0];
        Ok((0..inf.len()).map(|g| (inf.coordinate(g), w0.coordinate(g))).collect())
    }
}

/// `Y = ⊕_{v∈S} Z[G/G_v]` with permutation action, `X` its sum-zero
/// sublattice.
pub fn build_yx(field: &RealAbelianField, s: &[Place]) -> Result<PlaceModules> {
    if !s.contains(&Place::Infinite) {
        return Err(Error::invalid("S must contain the infinite place"));
    }
    let mut places: Vec<Place> = s.to_vec();
    places.sort();
    places.dedup();
    let group = field.group();
    let mut blocks = Vec::new();
    let mut offset = 0;
    for &place in &places {
        let (decomposition, residue_degree) = match place {
            Place::Infinite => (vec![group.identity()], 1),
            Place::Finite(p) => {
                let d = field.decomposition_group(p);
                let e = field.inertia_group(p).len();
                let f = d.len() / e;
                (d, f)
            }
        };
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for g in group.elements() {
            if cosets.iter().any(|c| c.contains(&g)) {
                continue;
            }
            let mut c: Vec<usize> = decomposition.iter().map(|&h| group.mul(g, h)).collect();
            c.sort();
            cosets.push(c);
        }
        let len = cosets.len();
        blocks.push(PlaceBlock { place, decomposition, cosets, offset, residue_degree });
        offset += len;
    }
    let dim = offset;
    let gens: Vec<QMatrix> = group
        .generators()
        .iter()
        .map(|&h| {
            let mut a = QMatrix::zeros(dim, dim);
            for b in &blocks {
                for (ci, c) in b.cosets.iter().enumerate() {
                    let target = b.coordinate(group.mul(h, c[0]));
                    a.row_mut(b.offset + ci)[target] = Q::one();
                }
            }
            a
        })
        .collect();
    let y = GLattice::new(Lattice::standard(dim), group.clone(), &gens)?;
    let x_rows: Vec<Vec<Q>> = (1..dim)
        .map(|j| {
            let mut v = vec![Q::zero(); dim];
            v[0] = -Q::one();
            v[j] = Q::one();
            v
        })
        .collect();
    let x_lattice = if x_rows.is_empty() { Lattice::zero(dim) } else { Lattice::from_rows(x_rows, dim)? };
    let x = y.with_lattice(x_lattice)?;
    let y_infinity = GLattice::free(group.clone(), 1);
    Ok(PlaceModules { blocks, y, x, y_infinity })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_for_conductor_five() {
        let f = RealAbelianField::new(5, &[4]).unwrap();
        let pm = build_yx(&f, &canonical_places(&f)).unwrap();
        assert_eq!(pm.y.rank(), 3);
        assert_eq!(pm.x.rank(), 2);
        assert_eq!(pm.kernel_of_projection().unwrap().rank(), 0);
    }

    #[test]
    fn ranks_for_conductor_twelve() {
        let f = RealAbelianField::new(12, &[11]).unwrap();
        let pm = build_yx(&f, &canonical_places(&f)).unwrap();
        assert_eq!(pm.y.rank(), 4);
        assert_eq!(pm.x.rank(), 3);
        assert_eq!(pm.kernel_of_projection().unwrap().rank(), 1);
        assert!("x".parse::<Place>().is_err());
        assert_eq!("inf".parse::<Place>().unwrap(), Place::Infinite);
    }
}
