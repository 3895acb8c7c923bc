//! Wedderburn decompositions of `Q[G]` for small non-abelian groups, read
//! from JSON: central idempotents plus an absolutely irreducible matrix
//! representation for each simple component.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::Q;
use crate::error::{Error, Result};
use crate::groupring::element::{Coeff, GroupRingElement};
use crate::groupring::group::FiniteGroup;
use crate::groupring::quadratic::{det_field, QuadraticNumber};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupPresentationJson {
    pub generators: Vec<String>,
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepresentationJson {
    /// `"Q"` or `"Q(sqrt(d))"`.
    pub field: String,
    pub matrices: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentJson {
    pub idempotent: BTreeMap<String, String>,
    pub rep: RepresentationJson,
    pub degree: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WedderburnJson {
    pub group: GroupPresentationJson,
    pub components: Vec<ComponentJson>,
}

type QMat = Vec<Vec<QuadraticNumber>>;

fn mat_mul(a: &QMat, b: &QMat) -> QMat {
    let n = a.len();
    let like = &a[0][0];
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(like.zero_like(), |acc, k| acc.add(&a[i][k].mul(&b[k][j]))))
                .collect()
        })
        .collect()
}

fn mat_identity(n: usize, d: i64) -> QMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| QuadraticNumber::rational(d, if i == j { Q::from_integer(1.into()) } else { Q::from_integer(0.into()) }))
                .collect()
        })
        .collect()
}

/// One simple component `A_i = Q[G] e_i ≅ M_n(K)`.
#[derive(Clone, Debug)]
pub struct Component {
    pub idempotent: GroupRingElement<Q>,
    pub degree: usize,
    /// `d` for `K = Q(√d)`, or `1` for `K = Q`.
    pub field_d: i64,
    /// Image of every group element.
    pub images: Vec<QMat>,
}

/// Validated Wedderburn data with the group it defines.
#[derive(Clone, Debug)]
pub struct WedderburnData {
    pub group: Arc<FiniteGroup>,
    pub components: Vec<Component>,
}

fn parse_field(s: &str) -> Result<i64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "Q" {
        return Ok(1);
    }
    t.strip_prefix("Q(sqrt(")
        .and_then(|r| r.strip_suffix("))"))
        .and_then(|d| d.parse::<i64>().ok())
        .filter(|&d| d != 0 && d != 1)
        .ok_or_else(|| Error::Parse(format!("unknown representation field {s:?}")))
}

/// Splits a word into generator names (longest match first); `"e"` or `"1"`
/// is the empty word.
fn tokenize(word: &str, gens: &[String]) -> Result<Vec<usize>> {
    if word == "e" || word == "1" || word.is_empty() {
        return Ok(Vec::new());
    }
    let mut order: Vec<usize> = (0..gens.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(gens[i].len()));
    let mut out = Vec::new();
    let mut rest = word;
    while !rest.is_empty() {
        let i = order
            .iter()
            .copied()
            .find(|&i| rest.starts_with(gens[i].as_str()))
            .ok_or_else(|| Error::Parse(format!("cannot read word {word:?}")))?;
        out.push(i);
        rest = &rest[gens[i].len()..];
    }
    Ok(out)
}

impl WedderburnData {
    pub fn from_json(j: &WedderburnJson, file: &str) -> Result<Self> {
        let gens = &j.group.generators;
        if gens.is_empty() || j.components.is_empty() {
            return Err(Error::fixture(file, "nonempty", "no generators or no components"));
        }
        // generator images per component
        let mut comp_gens: Vec<(i64, usize, Vec<QMat>)> = Vec::new();
        for (ci, c) in j.components.iter().enumerate() {
            let d = parse_field(&c.rep.field)?;
            let mut mats = Vec::new();
            for g in gens {
                let raw = c.rep.matrices.get(g).ok_or_else(|| {
                    Error::fixture(file, "rep_complete", format!("component {ci} lacks generator {g}"))
                })?;
                if raw.len() != c.degree || raw.iter().any(|r| r.len() != c.degree) {
                    return Err(Error::fixture(file, "rep_degree", format!("component {ci}, generator {g}")));
                }
                let m: QMat = raw
                    .iter()
                    .map(|r| r.iter().map(|s| QuadraticNumber::parse(s, d)).collect::<Result<Vec<_>>>())
                    .collect::<Result<_>>()?;
                mats.push(m);
            }
            comp_gens.push((d, c.degree, mats));
        }
        // enumerate the group inside the direct sum of the representations
        type Key = Vec<QMat>;
        let identity: Key = comp_gens.iter().map(|(d, n, _)| mat_identity(*n, *d)).collect();
        let gen_keys: Vec<Key> = (0..gens.len())
            .map(|k| comp_gens.iter().map(|(_, _, m)| m[k].clone()).collect())
            .collect();
        let mul = |a: &Key, b: &Key| -> Key { a.iter().zip(b).map(|(x, y)| mat_mul(x, y)).collect() };
        let key_str = |k: &Key| format!("{k:?}");
        let mut elements: Vec<Key> = vec![identity.clone()];
        let mut names: Vec<String> = vec!["e".to_string()];
        let mut index: HashMap<String, usize> = HashMap::from([(key_str(&identity), 0)]);
        let mut frontier = 0;
        while frontier < elements.len() {
            for (k, gk) in gen_keys.iter().enumerate() {
                let y = mul(&elements[frontier], gk);
                let s = key_str(&y);
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(s) {
                    if elements.len() > 4096 {
                        return Err(Error::fixture(file, "finite_group", "representation generates a group larger than 4096"));
                    }
                    let nm = if names[frontier] == "e" { gens[k].clone() } else { format!("{}{}", names[frontier], gens[k]) };
                    e.insert(elements.len());
                    elements.push(y);
                    names.push(nm);
                }
            }
            frontier += 1;
        }
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                table.push(index[&key_str(&mul(a, b))]);
            }
        }
        let group = Arc::new(FiniteGroup::from_table(names, table)?);
        let eval_word = |w: &str| -> Result<usize> {
            let t = tokenize(w, gens)?;
            Ok(t.iter().fold(group.identity(), |acc, &k| group.mul(acc, index[&key_str(&gen_keys[k])])))
        };
        for r in &j.group.relations {
            if eval_word(r)? != group.identity() {
                return Err(Error::fixture(file, "relations", format!("relation {r:?} fails in the representation")));
            }
        }
        let mut components = Vec::new();
        for (ci, (c, (d, deg, _))) in j.components.iter().zip(&comp_gens).enumerate() {
            let mut idem = GroupRingElement::zero(group.clone());
            for (w, v) in &c.idempotent {
                let g = eval_word(w)?;
                let e = GroupRingElement::from_group_element(group.clone(), g).scale(&crate::arith::parse_rational(v)?);
                idem = idem.add(&e);
            }
            let images = elements.iter().map(|k| k[ci].clone()).collect();
            components.push(Component { idempotent: idem, degree: *deg, field_d: *d, images });
        }
        let data = WedderburnData { group, components };
        data.validate(file)?;
        Ok(data)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let file = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: file.clone(), source })?;
        let j: WedderburnJson = serde_json::from_str(&text).map_err(|source| Error::Json { path: file.clone(), source })?;
        Self::from_json(&j, &file)
    }

    /// Idempotents central, orthogonal, summing to 1, and acting as the
    /// identity on their own component and as zero elsewhere.
    fn validate(&self, file: &str) -> Result<()> {
        let g = &self.group;
        let one = GroupRingElement::one(g.clone());
        let mut sum = GroupRingElement::zero(g.clone());
        for (i, c) in self.components.iter().enumerate() {
            let e = &c.idempotent;
            sum = sum.add(e);
            if e.mul(e) != *e {
                return Err(Error::fixture(file, "idempotent", format!("component {i}")));
            }
            for h in 0..g.order() {
                let x = GroupRingElement::from_group_element(g.clone(), h);
                if x.mul(e) != e.mul(&x) {
                    return Err(Error::fixture(file, "central", format!("component {i}")));
                }
            }
            for (k, other) in self.components.iter().enumerate() {
                let img = self.represent(k, e);
                let expect_identity = k == i;
                let ok = (0..other.degree).all(|r| {
                    (0..other.degree).all(|s| {
                        let want = if expect_identity && r == s { 1 } else { 0 };
                        img[r][s].as_rational() == Some(&Q::from_integer(want.into()))
                    })
                });
                if !ok {
                    return Err(Error::fixture(file, "idempotent_image", format!("component {i} under representation {k}")));
                }
            }
        }
        if sum != one {
            return Err(Error::fixture(file, "complete", "idempotents do not sum to 1"));
        }
        if self.components.iter().all(|c| c.field_d == 1) {
            let total: usize = self.components.iter().map(|c| c.degree * c.degree).sum();
            if total != g.order() {
                return Err(Error::fixture(file, "dimension", format!("sum of squared degrees {total} != |G| = {}", g.order())));
            }
        }
        Ok(())
    }

    /// `ρ_k(x)` for `x ∈ Q[G]`.
    pub fn represent(&self, k: usize, x: &GroupRingElement<Q>) -> QMat {
        let c = &self.components[k];
        let zero = QuadraticNumber::rational(c.field_d, Q::from_integer(0.into()));
        let mut out = vec![vec![zero.clone(); c.degree]; c.degree];
        for (g, coef) in x.support() {
            let s = zero.from_rational_like(coef);
            for r in 0..c.degree {
                for t in 0..c.degree {
                    out[r][t] = out[r][t].add(&c.images[g][r][t].mul(&s));
                }
            }
        }
        out
    }

    /// `Nrd(M) = Σ_k det(ρ_k(M)) e_k` for a square matrix over `Q[G]`.
    pub fn reduced_norm(&self, m: &[Vec<GroupRingElement<Q>>]) -> Result<GroupRingElement<Q>> {
        let n = m.len();
        let mut acc = GroupRingElement::zero(self.group.clone());
        for (k, c) in self.components.iter().enumerate() {
            let deg = c.degree;
            let zero = QuadraticNumber::rational(c.field_d, Q::from_integer(0.into()));
            let mut big = vec![vec![zero.clone(); n * deg]; n * deg];
            for i in 0..n {
                for j in 0..n {
                    let blk = self.represent(k, &m[i][j]);
                    for r in 0..deg {
                        for t in 0..deg {
                            big[i * deg + r][j * deg + t] = blk[r][t].clone();
                        }
                    }
                }
            }
            let d = det_field(&big, &zero)?;
            let d = d.as_rational().cloned().ok_or_else(|| {
                Error::Unsupported(format!("component {k} has a non-rational centre value"))
            })?;
            acc = acc.add(&c.idempotent.scale(&d));
        }
        Ok(acc)
    }
}
