//! Command-line front end: `element`, `verify` and `fit`.
//!
//! Every command writes one JSON document (keys sorted, reals as decimal
//! strings, rationals as `p/q`). Exit codes: 0 when everything selected
//! passes, 1 on a verification failure, 2 on any input error.

use std::collections::{BTreeMap, BTreeSet};
use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::arith::{format_rational, parse_rational, Q};
use crate::error::Error;
use crate::fixtures::{default_dir, discover, FieldFixtures};
use crate::groupring::{FiniteAbelianGroup, GroupAlgebra, GroupRingElement, IdealLattice, WedderburnData};
use crate::lattice::{classical_fitting_ideal, minor_fitting_invariant, PhiBudget, Presentation};
use crate::matrix::QMatrix;
use crate::numberfield::places::canonical_places;
use crate::numberfield::{RealAbelianField, SUnitBasis};
use crate::numeric::NumCtx;
use crate::weilstark::{
    cyclotomic_element, fe_dimension_check, regulator_identity_of, verify_annihilation, verify_fitting_equality,
    verify_integrality, CheckReport, SelmerFixture,
};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

/// Anything that makes a run impossible; always exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Library(#[from] Error),
    #[error("cannot write {path}: {source}")]
    Output {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    fn to_json(&self) -> Value {
        let kind = match self {
            CliError::Config(_) => "config",
            CliError::Output { .. } => "output",
            CliError::Library(Error::Fixture { .. }) => "fixture",
            CliError::Library(_) => "input",
        };
        let mut err = json!({"kind": kind, "message": self.to_string()});
        if let CliError::Library(Error::Fixture { file, invariant, .. }) = self {
            err["invariant"] = json!(invariant);
            err["file"] = json!(file_name(file));
        }
        json!({ "error": err })
    }
}

/// One verification family selectable with `--only`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    Regulator,
    Integrality,
    Fitting,
    Annihilation,
    Dimensions,
}

impl Check {
    pub const ALL: [Check; 5] = [Check::Regulator, Check::Integrality, Check::Fitting, Check::Annihilation, Check::Dimensions];

    pub fn name(self) -> &'static str {
        match self {
            Check::Regulator => "regulator",
            Check::Integrality => "integrality",
            Check::Fitting => "fitting",
            Check::Annihilation => "annihilation",
            Check::Dimensions => "dimensions",
        }
    }
}

/// Non-empty set of checks, parsed from `all` or a comma-separated list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection(BTreeSet<Check>);

impl Selection {
    pub fn all() -> Self {
        Selection(Check::ALL.into_iter().collect())
    }

    pub fn contains(&self, c: Check) -> bool {
        self.0.contains(&c)
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.0.iter().map(|c| c.name()).collect()
    }
}

impl FromStr for Selection {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let mut set = BTreeSet::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                set.extend(Check::ALL);
                continue;
            }
            let c = Check::ALL
                .into_iter()
                .find(|c| c.name() == part)
                .ok_or_else(|| CliError::Config(format!("unknown check `{part}`")))?;
            set.insert(c);
        }
        if set.is_empty() {
            return Err(CliError::Config("empty check selection".into()));
        }
        Ok(Selection(set))
    }
}

impl fmt::Display for Selection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names().join(","))
    }
}

/// Validated run settings shared by all subcommands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub fixtures: PathBuf,
    /// Working precision in decimal digits.
    pub precision: u32,
    /// Numerical checks pass below `10^{-tolerance}`.
    pub tolerance: u32,
    pub selection: Selection,
    pub out: Option<PathBuf>,
    pub negative_control: bool,
}

impl RunConfig {
    pub const MIN_PRECISION: u32 = 20;

    pub fn new(
        fixtures: PathBuf,
        precision: u32,
        tolerance: u32,
        selection: Selection,
        out: Option<PathBuf>,
        negative_control: bool,
    ) -> Result<Self, CliError> {
        if precision < Self::MIN_PRECISION {
            return Err(CliError::Config(format!("precision {precision} is below {}", Self::MIN_PRECISION)));
        }
        if 2 * tolerance > precision {
            return Err(CliError::Config(format!("tolerance {tolerance} exceeds half the precision {precision}")));
        }
        Ok(RunConfig { fixtures, precision, tolerance, selection, out, negative_control })
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig::new(default_dir(), 60, 30, Selection::all(), None, false).expect("defaults are valid")
    }
}

#[derive(Debug, Parser)]
#[command(name = "weilstark", version, about = "Cyclotomic Weil-Stark elements: construction and verification")]
struct Cli {
    #[command(flatten)]
    options: GlobalOptions,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOptions {
    /// Fixture directory (defaults to the fixtures shipped with the crate).
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,
    /// Working precision in decimal digits (at least 20).
    #[arg(long, global = true, default_value_t = 60)]
    precision: u32,
    /// Tolerance exponent: numerical identities must hold to 10^-tolerance.
    #[arg(long, global = true, default_value_t = 30)]
    tolerance: u32,
    /// Comma-separated checks: regulator, integrality, fitting, annihilation, dimensions or all.
    #[arg(long, global = true, default_value = "all")]
    only: String,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run the checks on deliberately wrong elements; they must fail.
    #[arg(long, global = true)]
    negative_control: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print ε's exponents, e_π and the HNF of the module Z[G]·ε.
    Element {
        conductor: u64,
        /// Generators of H ⊂ (Z/m)^× (default: -1, the maximal real subfield).
        #[arg(long, value_delimiter = ',')]
        subgroup: Option<Vec<u64>>,
    },
    /// Run the selected checks on every fixture.
    Verify,
    /// Fitting invariant of a presentation read from a JSON matrix file.
    Fit {
        matrix: PathBuf,
        /// Fitting index a.
        #[arg(short = 'a', long = "index", default_value_t = 0)]
        a: usize,
        /// `trivial`, invariant factors such as `2,4`, `S3`, `D4`, or a Wedderburn JSON file.
        #[arg(long, default_value = "trivial")]
        group: String,
        /// Group elements used for the replacement functionals (non-abelian groups).
        #[arg(long, default_value_t = 1)]
        phi_elements: usize,
    },
}

/// Runs the command line `args` (program name first), writing the report
/// to `stdout` (or `--out`) and errors to `stderr`; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return EXIT_INPUT;
            }
            let _ = write!(stdout, "{e}");
            return EXIT_PASS;
        }
    };
    match execute(cli) {
        Ok((report, code)) => match emit(&report, stdout) {
            Ok(()) => code,
            Err(e) => fail(&e, stderr),
        },
        Err((e, report)) => {
            if let Some(r) = report {
                let _ = emit(&r, stdout);
            }
            fail(&e, stderr)
        }
    }
}

fn fail(e: &CliError, stderr: &mut dyn Write) -> u8 {
    let _ = writeln!(stderr, "{}", serde_json::to_string_pretty(&e.to_json()).expect("serializable"));
    EXIT_INPUT
}

/// A report destined for standard output or the `--out` file.
struct Report {
    body: Value,
    out: Option<PathBuf>,
}

fn emit(r: &Report, stdout: &mut dyn Write) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(&r.body).expect("serializable") + "\n";
    match &r.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Output { path: path.display().to_string(), source }),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Output { path: "<stdout>".into(), source }),
    }
}

type Failure = (CliError, Option<Report>);

fn execute(cli: Cli) -> Result<(Report, u8), Failure> {
    let o = cli.options;
    let selection: Selection = o.only.parse().map_err(|e| (e, None))?;
    let fixtures = o.fixtures.unwrap_or_else(default_dir);
    let config = RunConfig::new(fixtures, o.precision, o.tolerance, selection, o.out, o.negative_control).map_err(|e| (e, None))?;
    let wrap = |body: Value| Report { body, out: config.out.clone() };
    match cli.command {
        Command::Element { conductor, subgroup } => {
            let gens = subgroup.unwrap_or_else(|| vec![conductor.saturating_sub(1)]);
            cmd_element(conductor, &gens, &config).map(|b| (wrap(b), EXIT_PASS)).map_err(|e| (e, None))
        }
        Command::Verify => {
            let (body, passed) = cmd_verify(&config).map_err(|e| (e, None))?;
            Ok((wrap(body), if passed { EXIT_PASS } else { EXIT_FAILURE }))
        }
        Command::Fit { matrix, a, group, phi_elements } => {
            let budget = PhiBudget { group_elements: phi_elements, ..PhiBudget::default() };
            cmd_fit(&matrix, a, &group, &budget, &config).map(|b| (wrap(b), EXIT_PASS)).map_err(|e| (e, None))
        }
    }
}

fn file_name(path: &str) -> String {
    Path::new(path).file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_else(|| path.to_string())
}

fn q_rows(m: &QMatrix) -> Value {
    Value::Array(m.rows_iter().map(|r| json!(r.iter().map(format_rational).collect::<Vec<_>>())).collect())
}

/// The fixtures whose field equals `field` (same conductor and subgroup).
fn fixtures_for(field: &RealAbelianField, dir: &Path) -> Result<FieldFixtures, CliError> {
    for f in discover(dir)? {
        if f.conductor != field.conductor() {
            continue;
        }
        if RealAbelianField::new(f.conductor, &f.subgroup_gens).is_ok_and(|g| g.subgroup() == field.subgroup()) {
            return Ok(f);
        }
    }
    Err(CliError::Library(Error::invalid(format!(
        "no unit fixture for conductor {} and H = {:?} in {}",
        field.conductor(),
        field.subgroup(),
        dir.display()
    ))))
}

/// `ε` for the field `(m, H)`: exponents, `e_π` and the module `Z[G]·ε`.
pub fn cmd_element(conductor: u64, subgroup_gens: &[u64], config: &RunConfig) -> Result<Value, CliError> {
    let field = RealAbelianField::new(conductor, subgroup_gens)?;
    let f = fixtures_for(&field, &config.fixtures)?;
    let path = f.units.as_ref().ok_or_else(|| Error::invalid(format!("{} has no S-unit fixture", f.stem())))?;
    let basis = SUnitBasis::load(path)?;
    let mut ctx = NumCtx::new(config.precision)?;
    let mut eps = cyclotomic_element(&basis, &mut ctx)?;
    if config.negative_control {
        eps = eps.corrupted();
    }
    let module = eps.module()?;
    let group = field.group();
    Ok(json!({
        "field": {
            "conductor": conductor,
            "subgroup_gens": subgroup_gens,
            "degree": field.degree(),
            "group_invariants": group.invariants(),
            "group_elements": group.elements().map(|g| group.name(g).to_string()).collect::<Vec<_>>(),
        },
        "fixture": file_name(basis.source()),
        "S": canonical_places(&field).iter().map(ToString::to_string).collect::<Vec<_>>(),
        "negative_control": config.negative_control,
        "exponents": eps.element.to_strings(),
        "e_pi": eps.e_pi.to_table(),
        "e_pi_fixed": eps.is_e_pi_fixed(),
        "module_hnf": q_rows(module.lattice().basis()),
    }))
}

/// Runs the selection on every discovered field, one thread per field.
/// Returns the report and whether every check passed.
pub fn cmd_verify(config: &RunConfig) -> Result<(Value, bool), CliError> {
    let fields = discover(&config.fixtures)?;
    let fields: Vec<FieldFixtures> = fields.into_iter().filter(|f| f.units.is_some()).collect();
    if fields.is_empty() {
        return Err(CliError::Library(Error::invalid(format!("no unit fixtures in {}", config.fixtures.display()))));
    }
    let results: Vec<Result<Vec<CheckReport>, Error>> = std::thread::scope(|scope| {
        let handles: Vec<_> = fields.iter().map(|f| scope.spawn(move || verify_field(f, config))).collect();
        handles.into_iter().map(|h| h.join().expect("verification thread panicked")).collect()
    });
    let mut reports = Vec::new();
    for r in results {
        reports.extend(r?);
    }
    for r in &mut reports {
        r.subject = file_name(&r.subject);
    }
    reports.sort_by(|a, b| (&a.subject, &a.check).cmp(&(&b.subject, &b.check)));
    let failures: Vec<Value> =
        reports.iter().filter(|r| !r.passed).map(|r| json!({"check": r.check, "subject": r.subject})).collect();
    let passed = failures.is_empty();
    let body = json!({
        "config": {
            "precision": config.precision,
            "tolerance": config.tolerance,
            "selection": config.selection.names(),
            "negative_control": config.negative_control,
        },
        "passed": passed,
        "checks_run": reports.len(),
        "failures": failures,
        "reports": reports,
    });
    Ok((body, passed))
}

/// Every selected check on one field and each of its T choices.
fn verify_field(f: &FieldFixtures, config: &RunConfig) -> Result<Vec<CheckReport>, Error> {
    let sel = &config.selection;
    let neg = config.negative_control;
    let mut out = Vec::new();
    let basis = SUnitBasis::load(f.units.as_ref().expect("filtered"))?;
    if sel.contains(Check::Dimensions) {
        for a in 0..=2 {
            out.push(fe_dimension_check(&basis, a)?);
        }
    }
    let needs_element = [Check::Regulator, Check::Integrality, Check::Fitting, Check::Annihilation].into_iter().any(|c| sel.contains(c));
    if !needs_element {
        return Ok(out);
    }
    let mut ctx = NumCtx::new(config.precision)?;
    let eps = cyclotomic_element(&basis, &mut ctx)?;
    if sel.contains(Check::Regulator) {
        let e = if neg { eps.corrupted() } else { eps.clone() };
        out.push(regulator_identity_of(&e, &mut ctx, config.tolerance)?);
    }
    if ![Check::Integrality, Check::Fitting, Check::Annihilation].into_iter().any(|c| sel.contains(c)) {
        return Ok(out);
    }
    for (t, path) in &f.t_units {
        let t_basis = SUnitBasis::load(path)?;
        let eps_t = eps.t_modified(&t_basis, &mut ctx)?;
        let fractional = eps_t.fractional_control().1;
        if sel.contains(Check::Integrality) {
            out.push(verify_integrality(if neg { &fractional } else { &eps_t })?);
        }
        if !sel.contains(Check::Fitting) && !sel.contains(Check::Annihilation) {
            continue;
        }
        let selmer_path = f
            .selmer
            .get(t)
            .ok_or_else(|| Error::invalid(format!("{} has T-units for T = {t:?} but no class group fixture", f.stem())))?;
        let selmer = SelmerFixture::load(selmer_path)?;
        if sel.contains(Check::Fitting) && selmer.cl_st.is_trivial() {
            let e = if neg { eps_t.corrupted() } else { eps_t.clone() };
            out.push(verify_fitting_equality(&e, &selmer)?);
        }
        if sel.contains(Check::Annihilation) {
            out.push(verify_annihilation(if neg { &fractional } else { &eps_t }, &selmer)?);
        }
    }
    Ok(out)
}

/// One relation matrix entry: an integer, a `p/q` scalar or a coefficient
/// table keyed by group element names.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum EntryJson {
    Integer(i64),
    Scalar(String),
    Table(BTreeMap<String, String>),
}

/// `{"generators": d', "relations": [[entry; d']; d]}`.
#[derive(Clone, Debug, Deserialize)]
pub struct MatrixJson {
    pub generators: Option<usize>,
    pub relations: Vec<Vec<EntryJson>>,
}

fn entry(group: &Arc<crate::groupring::FiniteGroup>, e: &EntryJson) -> Result<GroupRingElement, Error> {
    match e {
        EntryJson::Integer(k) => Ok(GroupRingElement::from_rational(group.clone(), Q::from_integer((*k).into()))),
        EntryJson::Scalar(s) => Ok(GroupRingElement::from_rational(group.clone(), parse_rational(s)?)),
        EntryJson::Table(t) => GroupRingElement::from_table(group.clone(), t),
    }
}

/// Group ring for a `--group` spec.
pub fn parse_group(spec: &str, fixtures: &Path) -> Result<GroupAlgebra, Error> {
    let spec = spec.trim();
    if spec == "trivial" || spec == "1" {
        return Ok(GroupAlgebra::Abelian(FiniteAbelianGroup::new(&[])?));
    }
    let cyclic: Option<Vec<u64>> =
        spec.split([',', 'x']).map(|p| p.trim().trim_start_matches('C').parse().ok()).collect();
    if let Some(inv) = cyclic {
        return Ok(GroupAlgebra::Abelian(FiniteAbelianGroup::new(&inv)?));
    }
    let path = if spec.ends_with(".json") { PathBuf::from(spec) } else { fixtures.join(format!("wedderburn_{spec}.json")) };
    if !path.exists() {
        return Err(Error::invalid(format!("unknown group `{spec}` (no {})", path.display())));
    }
    Ok(GroupAlgebra::Semisimple(Arc::new(WedderburnData::load(&path)?)))
}

/// Reads a presentation over the group ring named by `group_spec`.
pub fn load_presentation(matrix: &Path, group_spec: &str, fixtures: &Path) -> Result<Presentation, Error> {
    let text = std::fs::read_to_string(matrix).map_err(|source| Error::Io { path: matrix.display().to_string(), source })?;
    let j: MatrixJson = serde_json::from_str(&text).map_err(|source| Error::Json { path: matrix.display().to_string(), source })?;
    let algebra = parse_group(group_spec, fixtures)?;
    let g = algebra.group().clone();
    let generators = j.generators.or_else(|| j.relations.first().map(Vec::len)).unwrap_or(0);
    let rows = j.relations.iter().map(|r| r.iter().map(|e| entry(&g, e)).collect()).collect::<Result<_, _>>()?;
    Presentation::new(algebra, rows, generators)
}

/// `Fit^a` of a presentation: classical minors for abelian groups (with
/// the column-replacement construction as a cross-check), the
/// column-replacement construction with reduced norms otherwise.
pub fn cmd_fit(matrix: &Path, a: usize, group_spec: &str, budget: &PhiBudget, config: &RunConfig) -> Result<Value, CliError> {
    let p = load_presentation(matrix, group_spec, &config.fixtures)?;
    let g = p.algebra().group().clone();
    let (ideal, construction, agrees): (IdealLattice, &str, Option<bool>) = if p.algebra().is_commutative() {
        let classical = classical_fitting_ideal(&p, a)?;
        let minor = minor_fitting_invariant(&p, a, budget)?;
        let same = minor == classical;
        (classical, "minors", Some(same))
    } else {
        (minor_fitting_invariant(&p, a, budget)?, "reduced norms", None)
    };
    let mut body = json!({
        "group": group_spec,
        "group_elements": g.names(),
        "a": a,
        "relations": p.relation_count(),
        "generators": p.generator_count(),
        "construction": construction,
        "hnf": q_rows(ideal.lattice.basis()),
        "ideal_generators": ideal.generators(&g).iter().map(|x| x.to_table()).collect::<Vec<_>>(),
        "is_unit_ideal": ideal == IdealLattice::unit(g.order()),
    });
    if let Some(same) = agrees {
        body["agrees_with_reduced_norm_construction"] = json!(same);
    }
    Ok(body)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection_parsing() {
        assert_eq!("all".parse::<Selection>().unwrap(), Selection::all());
        let s: Selection = "fitting, regulator".parse().unwrap();
        assert_eq!(s.names(), vec!["regulator", "fitting"]);
        assert!("bogus".parse::<Selection>().is_err());
        assert!("".parse::<Selection>().is_err());
    }

    #[test]
    fn config_invariants() {
        let cfg = |p, t| RunConfig::new(default_dir(), p, t, Selection::all(), None, false);
        assert!(cfg(60, 30).is_ok());
        assert!(cfg(20, 10).is_ok());
        assert!(cfg(19, 5).is_err());
        assert!(cfg(60, 31).is_err());
    }

    #[test]
    fn group_specs() {
        let dir = default_dir();
        assert_eq!(parse_group("trivial", &dir).unwrap().group().order(), 1);
        assert_eq!(parse_group("2,4", &dir).unwrap().group().order(), 8);
        assert_eq!(parse_group("C6", &dir).unwrap().group().order(), 6);
        assert!(!parse_group("S3", &dir).unwrap().is_commutative());
        assert!(parse_group("2,3", &dir).is_err());
        assert!(parse_group("Q8", &dir).is_err());
    }
}
