//! Suite files, the mutation suite, and verdict reports.
//!
//! ```toml
//! version = 1
//!
//! [[run]]
//! algebra = "../algebras/f2_x2.toml"   # relative to the suite file
//! seed = 1
//! sizes = "default"                    # minimal | default | large
//! checks = ["T1", "T2", "mutations"]   # or "all" for T1..T12 plus mutations
//! properties = [{ selector = "socle", property = "hereditary" }]
//! ```

use std::fmt::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::format::{load_algebra, LoadError, ParseError};
use crate::lab::{Lab, Mutation};
use crate::selectors::parse_selector;

use super::battery::{Battery, Sizes};
use super::props::{check_property, Property, PropertyVerdict};
use super::theorems::{builtin_env, verify_theorem, Context, TheoremId};

pub const SUITE_VERSION: u32 = 1;

/// Text attached to every PASS: the suite searches for counterexamples and
/// cannot prove anything.
pub const PASS_LABEL: &str = "no counterexample in battery";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    Theorem(TheoremId),
    Mutations,
    Property { selector: String, property: Property },
}

impl Check {
    pub fn id(&self) -> String {
        match self {
            Check::Theorem(t) => t.to_string(),
            Check::Mutations => "mutations".into(),
            Check::Property { selector, property } => format!("{property}({selector})"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteRun {
    /// The algebra reference as written in the suite file.
    pub label: String,
    pub algebra: Arc<Algebra>,
    pub seed: u64,
    pub sizes: Sizes,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone)]
pub struct Suite {
    pub runs: Vec<SuiteRun>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SuiteFile {
    version: Option<u32>,
    #[serde(default)]
    run: Vec<RunFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RunFile {
    algebra: String,
    seed: u64,
    sizes: Option<String>,
    #[serde(default)]
    checks: Vec<String>,
    #[serde(default)]
    properties: Vec<PropertyFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PropertyFile {
    selector: String,
    property: String,
}

fn plain(message: String) -> ParseError {
    ParseError {
        line: None,
        key: None,
        message,
    }
}

fn keyed(key: &str, message: String) -> ParseError {
    ParseError {
        line: None,
        key: Some(key.into()),
        message,
    }
}

/// A run before its algebra is loaded.
#[derive(Debug)]
struct RawRun {
    algebra: String,
    seed: u64,
    sizes: Sizes,
    checks: Vec<Check>,
}

fn parse_runs(src: &str) -> Result<Vec<RawRun>, ParseError> {
    let f: SuiteFile = toml::from_str(src).map_err(|e| {
        let line = e.span().map(|s| src[..s.start].matches('\n').count() + 1);
        ParseError {
            line,
            key: None,
            message: e.message().trim().to_string(),
        }
    })?;
    if let Some(v) = f.version {
        if v != SUITE_VERSION {
            return Err(keyed("version", format!("unsupported suite version {v}")));
        }
    }
    if f.run.is_empty() {
        return Err(plain("suite has no [[run]] entries".into()));
    }
    f.run
        .into_iter()
        .map(|r| {
            let sizes = match r.sizes {
                Some(s) => s.parse().map_err(|e: String| keyed("sizes", e))?,
                None => Sizes::Default,
            };
            let mut checks = Vec::new();
            for c in &r.checks {
                if c == "all" {
                    checks.extend(TheoremId::ALL.map(Check::Theorem));
                    checks.push(Check::Mutations);
                } else if c == "mutations" {
                    checks.push(Check::Mutations);
                } else {
                    checks.push(Check::Theorem(c.parse().map_err(|e: String| keyed("checks", e))?));
                }
            }
            for p in r.properties {
                parse_selector(&p.selector).map_err(|e| keyed("properties", format!("{}: {e}", p.selector)))?;
                checks.push(Check::Property {
                    property: p.property.parse().map_err(|e: String| keyed("properties", e))?,
                    selector: p.selector,
                });
            }
            checks.dedup();
            Ok(RawRun {
                algebra: r.algebra,
                seed: r.seed,
                sizes,
                checks,
            })
        })
        .collect()
}

impl Suite {
    /// Parses suite text, resolving algebra paths against `base`.
    pub fn parse(src: &str, base: &Path) -> Result<Suite, LoadError> {
        let raw = parse_runs(src).map_err(|error| LoadError::Parse {
            path: base.to_path_buf(),
            error,
        })?;
        let dir = base.parent().unwrap_or(Path::new("."));
        let runs = raw
            .into_iter()
            .map(|r| {
                Ok(SuiteRun {
                    algebra: load_algebra(&dir.join(&r.algebra))?,
                    label: r.algebra,
                    seed: r.seed,
                    sizes: r.sizes,
                    checks: r.checks,
                })
            })
            .collect::<Result<_, LoadError>>()?;
        Ok(Suite { runs })
    }

    pub fn load(path: &Path) -> Result<Suite, LoadError> {
        let src = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
            path: PathBuf::from(path),
            source,
        })?;
        Suite::parse(&src, path)
    }

    /// Replaces the seed of every run.
    pub fn with_seed(mut self, seed: u64) -> Suite {
        self.runs.iter_mut().for_each(|r| r.seed = seed);
        self
    }

    /// Replaces the battery sizes of every run.
    pub fn with_sizes(mut self, sizes: Sizes) -> Suite {
        self.runs.iter_mut().for_each(|r| r.sizes = sizes);
        self
    }
}

// ---------------------------------------------------------------- mutation suite

/// The theorem checks each seeded defect is aimed at.
pub fn mutation_targets(m: Mutation) -> &'static [TheoremId] {
    use TheoremId::*;
    match m {
        Mutation::SmileSkipsPerp => &[T3, T4, T5, T9],
        Mutation::QuotientWrongComplement => &[T1, T2],
        Mutation::TensorSkipsRelations => &[T8],
        Mutation::TraceSkipsSpan => &[T8],
        Mutation::DirectSumTransposed => &[T6],
        Mutation::MeetIsSum => &[T10],
        Mutation::JoinDropsSecond => &[T10],
        Mutation::AnnihilatorFirstVector => &[T11],
        Mutation::SaturationSkipsProducts => &[T12],
        Mutation::BaseChangeSkipsRelations => &[T7],
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MutationRow {
    pub mutation: String,
    pub targets: Vec<String>,
    /// Targets that reported FAIL under the mutation.
    pub failed: Vec<String>,
    /// The first failing target's witness clause, as `T3 [clause #index]`.
    pub first_witness: Option<String>,
}

impl MutationRow {
    pub fn killed(&self) -> bool {
        !self.failed.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MutationReport {
    pub rows: Vec<MutationRow>,
    pub survivors: Vec<String>,
    /// Theorems no mutation made FAIL.
    pub uncovered: Vec<String>,
}

impl MutationReport {
    pub fn passed(&self) -> bool {
        self.survivors.is_empty() && self.uncovered.is_empty()
    }
}

/// Runs every seeded defect against its target checks on one battery.
pub fn mutation_suite(battery: &Arc<Battery>) -> MutationReport {
    let mut rows = Vec::new();
    let mut covered = Vec::new();
    for m in Mutation::ALL {
        let ctx = Context::new(battery.clone(), Lab::mutated(m));
        let mut failed = Vec::new();
        let mut first_witness = None;
        for &t in mutation_targets(m) {
            let v = verify_theorem(t, &ctx);
            if let Some(w) = v.witness() {
                failed.push(t.to_string());
                covered.push(t);
                first_witness.get_or_insert_with(|| format!("{t} [{} #{}]", w.clause, w.index));
            }
        }
        rows.push(MutationRow {
            mutation: m.name().to_string(),
            targets: mutation_targets(m).iter().map(|t| t.to_string()).collect(),
            failed,
            first_witness,
        });
    }
    let survivors = rows.iter().filter(|r| !r.killed()).map(|r| r.mutation.clone()).collect();
    let uncovered = TheoremId::ALL
        .into_iter()
        .filter(|t| !covered.contains(t))
        .map(|t| t.to_string())
        .collect();
    MutationReport {
        rows,
        survivors,
        uncovered,
    }
}

// ---------------------------------------------------------------- reports

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub clause: String,
    pub index: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub title: String,
    pub passed: bool,
    pub checked: usize,
    pub witness: Option<WitnessReport>,
    pub mutations: Option<MutationReport>,
}

impl CheckReport {
    fn from_verdict(id: String, title: String, v: PropertyVerdict) -> CheckReport {
        CheckReport {
            id,
            title,
            passed: v.passed(),
            checked: v.checked,
            witness: v.witness().map(|w| WitnessReport {
                clause: w.clause.clone(),
                index: w.index,
                detail: w.detail.clone(),
            }),
            mutations: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatterySummary {
    pub modules: usize,
    pub maps: usize,
    pub pairs: usize,
    pub triples: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub algebra: String,
    pub basis: Vec<String>,
    pub p: u32,
    pub seed: u64,
    pub sizes: String,
    pub battery: BatterySummary,
    pub checks: Vec<CheckReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub version: u32,
    pub runs: Vec<RunReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.runs.iter().all(|r| r.checks.iter().all(|c| c.passed))
    }

    pub fn counts(&self) -> (usize, usize) {
        let all: Vec<bool> = self.runs.iter().flat_map(|r| r.checks.iter().map(|c| c.passed)).collect();
        let pass = all.iter().filter(|&&p| p).count();
        (pass, all.len() - pass)
    }

    /// Deterministic structured text.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite version {}, {} run(s)", self.version, self.runs.len());
        for (i, r) in self.runs.iter().enumerate() {
            let _ = writeln!(
                out,
                "\nrun {}: algebra {} (F_{}, basis {}), seed {}, sizes {}",
                i + 1,
                r.algebra,
                r.p,
                r.basis.join(" "),
                r.seed,
                r.sizes
            );
            let b = &r.battery;
            let _ = writeln!(
                out,
                "  battery: {} modules, {} maps, {} pairs, {} triples",
                b.modules, b.maps, b.pairs, b.triples
            );
            for c in &r.checks {
                render_check(&mut out, c);
            }
        }
        let (pass, fail) = self.counts();
        let _ = writeln!(
            out,
            "\nsummary: {} checks, {pass} PASS, {fail} FAIL: {}",
            pass + fail,
            if fail == 0 { "PASS" } else { "FAIL" }
        );
        out
    }
}

fn render_check(out: &mut String, c: &CheckReport) {
    if let Some(m) = &c.mutations {
        let status = if c.passed {
            "PASS (every mutant killed, every theorem covered)".to_string()
        } else {
            format!("FAIL (survivors: [{}], uncovered: [{}])", m.survivors.join(" "), m.uncovered.join(" "))
        };
        let _ = writeln!(out, "  {:<26} {status}", c.id);
        for row in &m.rows {
            let _ = writeln!(
                out,
                "    {:<28} targets {:<12} failed {:<12} {}",
                row.mutation,
                row.targets.join(","),
                if row.failed.is_empty() { "-".into() } else { row.failed.join(",") },
                match &row.first_witness {
                    Some(w) => format!("killed by {w}"),
                    None => "SURVIVED".into(),
                }
            );
        }
        return;
    }
    if c.passed {
        let _ = writeln!(out, "  {:<26} PASS ({PASS_LABEL}; {} items) {}", c.id, c.checked, c.title);
    } else {
        let _ = writeln!(out, "  {:<26} FAIL {}", c.id, c.title);
        if let Some(w) = &c.witness {
            let _ = writeln!(out, "      witness: clause `{}` item {}: {}", w.clause, w.index, w.detail);
        }
    }
}

/// Runs one check on a prepared context.
pub fn run_check(check: &Check, ctx: &Context) -> CheckReport {
    match check {
        Check::Theorem(t) => CheckReport::from_verdict(t.to_string(), t.title().to_string(), verify_theorem(*t, ctx)),
        Check::Mutations => {
            let m = mutation_suite(&ctx.battery);
            CheckReport {
                id: "mutations".into(),
                title: "every theorem check fails under a seeded defect".into(),
                passed: m.passed(),
                checked: m.rows.len(),
                witness: None,
                mutations: Some(m),
            }
        }
        Check::Property { selector, property } => {
            let title = format!("{property} on the battery");
            match builtin_env(&ctx.battery, Lab::exact()).compile(selector) {
                Ok(s) => CheckReport::from_verdict(check.id(), title, check_property(&s, *property, &ctx.battery)),
                Err(e) => CheckReport {
                    id: check.id(),
                    title,
                    passed: false,
                    checked: 0,
                    witness: Some(WitnessReport {
                        clause: "compile".into(),
                        index: 0,
                        detail: e.to_string(),
                    }),
                    mutations: None,
                },
            }
        }
    }
}

pub fn run_suite(suite: &Suite) -> SuiteReport {
    let runs = suite
        .runs
        .iter()
        .map(|run| {
            let battery = Arc::new(Battery::generate(&run.algebra, run.seed, run.sizes));
            let ctx = Context::new(battery.clone(), Lab::exact());
            RunReport {
                algebra: run.label.clone(),
                basis: run.algebra.labels().to_vec(),
                p: run.algebra.p(),
                seed: run.seed,
                sizes: run.sizes.to_string(),
                battery: BatterySummary {
                    modules: battery.modules.len(),
                    maps: battery.maps.len(),
                    pairs: battery.pairs.len(),
                    triples: battery.triples.len(),
                },
                checks: run.checks.iter().map(|c| run_check(c, &ctx)).collect(),
            }
        })
        .collect();
    SuiteReport {
        version: SUITE_VERSION,
        runs,
    }
}
