//! Fixture discovery by file name: `field_m<m>_H<g1-g2..>_units.json` for
//! the S-units, `field_m<m>_H<..>_T<q1-q2..>_units.json` for the T-units and
//! `field_m<m>_H<..>_T<..>_selmer.json` for the class group data.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

/// The fixtures shipped with this crate.
pub fn default_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// Every fixture file found for one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldFixtures {
    pub conductor: u64,
    pub subgroup_gens: Vec<u64>,
    pub units: Option<PathBuf>,
    pub t_units: BTreeMap<Vec<u64>, PathBuf>,
    pub selmer: BTreeMap<Vec<u64>, PathBuf>,
}

impl FieldFixtures {
    /// `field_m<m>_H<gens>` as used in file names and reports.
    pub fn stem(&self) -> String {
        format!("field_m{}_H{}", self.conductor, join(&self.subgroup_gens))
    }
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join("-")
}

fn numbers(s: &str) -> Option<Vec<u64>> {
    s.split('-').map(|t| t.parse().ok()).collect()
}

#[derive(Debug, PartialEq, Eq)]
enum Kind {
    Units(Option<Vec<u64>>),
    Selmer(Vec<u64>),
}

/// Parses a fixture file name into `(m, H generators, kind)`.
fn parse_name(name: &str) -> Option<(u64, Vec<u64>, Kind)> {
    let rest = name.strip_prefix("field_m")?.strip_suffix(".json")?;
    let parts: Vec<&str> = rest.split('_').collect();
    let m = parts.first()?.parse().ok()?;
    let gens = numbers(parts.get(1)?.strip_prefix('H')?)?;
    match parts[2..] {
        ["units"] => Some((m, gens, Kind::Units(None))),
        [t, "units"] => Some((m, gens, Kind::Units(Some(numbers(t.strip_prefix('T')?)?)))),
        [t, "selmer"] => Some((m, gens, Kind::Selmer(numbers(t.strip_prefix('T')?)?))),
        _ => None,
    }
}

/// Groups the fixture files of `dir` by field, sorted by conductor and
/// subgroup; files not following the convention are ignored.
pub fn discover(dir: &Path) -> Result<Vec<FieldFixtures>> {
    let entries = std::fs::read_dir(dir).map_err(|source| Error::Io { path: dir.display().to_string(), source })?;
    let mut fields: BTreeMap<(u64, Vec<u64>), FieldFixtures> = BTreeMap::new();
    for entry in entries {
        let entry = entry.map_err(|source| Error::Io { path: dir.display().to_string(), source })?;
        let name = entry.file_name().to_string_lossy().into_owned();
        let Some((m, gens, kind)) = parse_name(&name) else { continue };
        let slot = fields.entry((m, gens.clone())).or_insert_with(|| FieldFixtures {
            conductor: m,
            subgroup_gens: gens,
            units: None,
            t_units: BTreeMap::new(),
            selmer: BTreeMap::new(),
        });
        let path = entry.path();
        match kind {
            Kind::Units(None) => slot.units = Some(path),
            Kind::Units(Some(t)) => {
                slot.t_units.insert(t, path);
            }
            Kind::Selmer(t) => {
                slot.selmer.insert(t, path);
            }
        }
    }
    Ok(fields.into_values().collect())
}

/// The fixtures of the field with the given conductor and subgroup
/// generators (any subgroup when `gens` is `None`).
pub fn find(dir: &Path, conductor: u64, gens: Option<&[u64]>) -> Result<FieldFixtures> {
    discover(dir)?
        .into_iter()
        .find(|f| f.conductor == conductor && gens.is_none_or(|g| f.subgroup_gens == g))
        .ok_or_else(|| Error::invalid(format!("no fixtures for conductor {conductor} in {}", dir.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_follow_the_convention() {
        assert_eq!(parse_name("field_m12_H11_units.json"), Some((12, vec![11], Kind::Units(None))));
        assert_eq!(parse_name("field_m12_H11_T5-7_units.json"), Some((12, vec![11], Kind::Units(Some(vec![5, 7])))));
        assert_eq!(parse_name("field_m5_H4_T3_selmer.json"), Some((5, vec![4], Kind::Selmer(vec![3]))));
        assert_eq!(parse_name("field_m5_H4_T3_other.json"), None);
        assert_eq!(parse_name("wedderburn_S3.json"), None);
    }

    #[test]
    fn shipped_fixtures_are_found() {
        let all = discover(&default_dir()).unwrap();
        let conductors: Vec<u64> = all.iter().map(|f| f.conductor).collect();
        assert_eq!(conductors, vec![5, 7, 8, 11, 12, 13, 15, 20, 21, 24]);
        assert!(all.iter().all(|f| f.units.is_some() && !f.t_units.is_empty()));
        assert_eq!(find(&default_dir(), 5, None).unwrap().stem(), "field_m5_H4");
    }
}
