//! Ray class group fixtures `Cl^T_S(L)`, `Cl^T_{S′}(L)` and an optional
//! presentation of the transpose Selmer module.

use std::collections::{BTreeMap, VecDeque};
use std::path::Path;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::Z;
use crate::error::{Error, Result};
use crate::groupring::{GroupAlgebra, GroupRingElement};
use crate::lattice::{FiniteGModule, Presentation};
use crate::matrix::ZMatrix;
use crate::numberfield::{FieldSpec, Place, PlaceJson, RealAbelianField};

/// A finite G-module: invariants and `v ↦ v·A_σ` per residue label.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiniteModuleJson {
    pub invariants: Vec<u64>,
    #[serde(default)]
    pub action: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SelmerFixtureJson {
    pub field: FieldSpec,
    #[serde(rename = "S")]
    pub s: Vec<PlaceJson>,
    #[serde(rename = "T")]
    pub t: Vec<u64>,
    #[serde(rename = "Sprime")]
    pub s_prime: Vec<PlaceJson>,
    #[serde(rename = "cl_ST")]
    pub cl_st: FiniteModuleJson,
    #[serde(rename = "cl_SprimeT")]
    pub cl_sprime_t: FiniteModuleJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selmer_presentation: Option<Vec<Vec<BTreeMap<String, String>>>>,
}

#[derive(Clone, Debug)]
pub struct SelmerFixture {
    pub source: String,
    pub field: RealAbelianField,
    pub s: Vec<Place>,
    pub t: Vec<u64>,
    pub s_prime: Vec<Place>,
    pub cl_st: FiniteGModule,
    pub cl_sprime_t: FiniteGModule,
    pub presentation: Option<Presentation>,
}

fn reduce_columns(a: &mut ZMatrix, invariants: &[Z]) {
    for i in 0..a.nrows() {
        for (j, d) in invariants.iter().enumerate() {
            a[(i, j)] = a[(i, j)].mod_floor(d);
        }
    }
}

/// Closes the given actions under composition and returns one matrix per
/// group generator.
fn module_from_json(field: &RealAbelianField, j: &FiniteModuleJson, source: &str, name: &str) -> Result<FiniteGModule> {
    let fail = |detail: String| Error::fixture(source, name, detail);
    let group = field.group().clone();
    if j.invariants.is_empty() {
        return Ok(FiniteGModule::zero(group));
    }
    let invariants: Vec<Z> = j.invariants.iter().map(|&d| Z::from(d)).collect();
    let k = invariants.len();
    let n = group.order();
    let mut actions: Vec<Option<ZMatrix>> = vec![None; n];
    actions[group.identity()] = Some(ZMatrix::identity(k));
    let mut given = Vec::new();
    for (label, rows) in &j.action {
        let g = field.element_from_label(label).map_err(|e| fail(e.to_string()))?;
        if rows.len() != k || rows.iter().any(|r| r.len() != k) {
            return Err(fail(format!("action of {label} has the wrong shape")));
        }
        let mut a = ZMatrix::from_i64(rows);
        reduce_columns(&mut a, &invariants);
        if actions[g].as_ref().is_some_and(|b| *b != a) {
            return Err(fail(format!("conflicting actions for the class of {label}")));
        }
        actions[g] = Some(a);
        given.push(g);
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&g| actions[g].is_some()).collect();
    while let Some(b) = queue.pop_front() {
        for &a in &given {
            let ab = group.mul(a, b);
            let mut m = actions[a].clone().expect("given").mul(actions[b].as_ref().expect("reached"));
            reduce_columns(&mut m, &invariants);
            match &actions[ab] {
                Some(existing) if *existing != m => {
                    return Err(fail(format!("action is not a group action at {}", group.name(ab))));
                }
                Some(_) => {}
                None => {
                    actions[ab] = Some(m);
                    queue.push_back(ab);
                }
            }
        }
    }
    if actions.iter().any(Option::is_none) {
        return Err(fail("actions do not cover the Galois group".into()));
    }
    let gens: Vec<ZMatrix> = group.generators().iter().map(|&g| actions[g].clone().expect("closed")).collect();
    FiniteGModule::new(group, invariants, &gens).map_err(|e| fail(e.to_string()))
}

fn places_of(list: &[PlaceJson]) -> Result<Vec<Place>> {
    let mut v: Vec<Place> = list.iter().map(PlaceJson::to_place).collect::<Result<_>>()?;
    v.sort();
    v.dedup();
    Ok(v)
}

impl SelmerFixture {
    pub fn load(path: &Path) -> Result<Self> {
        let file = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: file.clone(), source })?;
        let json: SelmerFixtureJson = serde_json::from_str(&text).map_err(|source| Error::Json { path: file.clone(), source })?;
        Self::from_json(&json, &file)
    }

    pub fn from_json(json: &SelmerFixtureJson, source: &str) -> Result<Self> {
        let field = json.field.build().map_err(|e| Error::fixture(source, "field", e.to_string()))?;
        let s = places_of(&json.s).map_err(|e| Error::fixture(source, "places", e.to_string()))?;
        let s_prime = places_of(&json.s_prime).map_err(|e| Error::fixture(source, "places", e.to_string()))?;
        if !s.contains(&Place::Infinite) || !s_prime.contains(&Place::Infinite) {
            return Err(Error::fixture(source, "places", "S and S′ must contain ∞"));
        }
        for &q in &json.t {
            if field.conductor() % q == 0 || s.contains(&Place::Finite(q)) || s_prime.contains(&Place::Finite(q)) {
                return Err(Error::fixture(source, "t_congruence", format!("T-prime {q} meets S or divides m")));
            }
        }
        let cl_st = module_from_json(&field, &json.cl_st, source, "cl_ST")?;
        let cl_sprime_t = module_from_json(&field, &json.cl_sprime_t, source, "cl_SprimeT")?;
        let presentation = match &json.selmer_presentation {
            None => None,
            Some(rows) => {
                let table = field.group().table().clone();
                let width = rows.first().map_or(0, Vec::len);
                let m: Vec<Vec<GroupRingElement>> = rows
                    .iter()
                    .map(|r| r.iter().map(|t| GroupRingElement::from_table(table.clone(), t)).collect::<Result<_>>())
                    .collect::<Result<_>>()
                    .map_err(|e| Error::fixture(source, "selmer_presentation", e.to_string()))?;
                Some(
                    Presentation::new(GroupAlgebra::Abelian(field.group().clone()), m, width)
                        .map_err(|e| Error::fixture(source, "selmer_presentation", e.to_string()))?,
                )
            }
        };
        Ok(SelmerFixture { source: source.to_string(), field, s, t: json.t.clone(), s_prime, cl_st, cl_sprime_t, presentation })
    }
}
