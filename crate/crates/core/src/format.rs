//! TOML file formats for algebras, modules, vector lists and ideals.
//!
//! Algebra file:
//!
//! ```toml
//! p = 2
//! dim = 2
//! labels = ["1", "x"]          # optional
//! mult = [                     # mult[i][j] = coefficients of e_i e_j
//!   [[1, 0], [0, 1]],
//!   [[0, 1], [0, 0]],
//! ]
//! ```
//!
//! Module file (`algebra` is a path relative to the module file, one
//! row-major matrix per algebra basis element, acting on column vectors):
//!
//! ```toml
//! algebra = "../algebras/f2_x2.toml"
//! dim = 2
//! actions = [
//!   [[1, 0], [0, 1]],
//!   [[0, 0], [1, 0]],
//! ]
//! ```
//!
//! Vector list: `vectors = [[1, 0], [0, 1]]`. Ideal: `ideal = [[0, 1]]`
//! (generators, as algebra coordinate vectors).

use std::fmt;
use std::fs;
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;
use toml::Spanned;

use crate::algebra::{Algebra, AlgebraTable, Ideal};
use crate::exactlin::FpMatrix;
use crate::modrep::ModuleRep;

/// A syntax or shape error, located by line and key where possible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: Option<usize>,
    pub key: Option<String>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.line, &self.key) {
            (Some(l), Some(k)) => write!(f, "line {l}, key `{k}`: {}", self.message),
            (Some(l), None) => write!(f, "line {l}: {}", self.message),
            (None, Some(k)) => write!(f, "key `{k}`: {}", self.message),
            (None, None) => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {error}")]
    Parse { path: PathBuf, error: ParseError },
    /// The file parsed but the object fails its axioms.
    #[error("{path}: {message}")]
    Invalid { path: PathBuf, message: String },
}

impl LoadError {
    fn at(path: &Path, e: FileError) -> LoadError {
        let path = path.to_path_buf();
        match e {
            FileError::Parse(error) => LoadError::Parse { path, error },
            FileError::Invalid(message) => LoadError::Invalid { path, message },
        }
    }
}

/// Error from parsing text alone, before a path is known.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FileError {
    #[error("{0}")]
    Parse(ParseError),
    #[error("{0}")]
    Invalid(String),
}

impl From<ParseError> for FileError {
    fn from(e: ParseError) -> Self {
        FileError::Parse(e)
    }
}

fn line_of(src: &str, offset: usize) -> usize {
    src[..offset.min(src.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

/// The key assigned on the nearest line at or above `line` that has one.
fn key_above(src: &str, line: usize) -> Option<String> {
    let lines: Vec<&str> = src.lines().collect();
    (0..line.min(lines.len())).rev().find_map(|i| {
        let (lhs, _) = lines[i].split_once('=')?;
        let k = lhs.trim();
        let ok = !k.is_empty() && k.chars().all(|c| c.is_ascii_alphanumeric() || "_-.\"".contains(c));
        ok.then(|| k.trim_matches('"').to_string())
    })
}

fn backticked(message: &str) -> Option<String> {
    let start = message.find('`')? + 1;
    let len = message[start..].find('`')?;
    Some(message[start..start + len].to_string())
}

fn from_toml(src: &str, e: toml::de::Error) -> ParseError {
    let message = e.message().trim().to_string();
    let line = e.span().map(|s| line_of(src, s.start));
    let key = if message.starts_with("missing field") || message.starts_with("unknown field") {
        backticked(&message)
    } else {
        line.and_then(|l| key_above(src, l))
    };
    ParseError { line, key, message }
}

fn shape_error(src: &str, key: &str, span: Range<usize>, message: impl Into<String>) -> ParseError {
    ParseError {
        line: Some(line_of(src, span.start)),
        key: Some(key.to_string()),
        message: message.into(),
    }
}

fn parse<'a, T: Deserialize<'a>>(src: &'a str) -> Result<T, ParseError> {
    toml::from_str(src).map_err(|e| from_toml(src, e))
}

fn reduce(x: i64, p: u64) -> u32 {
    x.rem_euclid(p as i64) as u32
}

fn check_vectors(
    src: &str,
    key: &str,
    vs: &Spanned<Vec<Vec<i64>>>,
    len: usize,
    p: u64,
) -> Result<Vec<Vec<u32>>, ParseError> {
    if let Some(v) = vs.get_ref().iter().find(|v| v.len() != len) {
        return Err(shape_error(
            src,
            key,
            vs.span(),
            format!("vectors must have length {len}, found one of length {}", v.len()),
        ));
    }
    Ok(vs.get_ref().iter().map(|v| v.iter().map(|&x| reduce(x, p)).collect()).collect())
}

// ---------------------------------------------------------------- algebras

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    p: Spanned<u64>,
    dim: Spanned<usize>,
    labels: Option<Spanned<Vec<String>>>,
    mult: Spanned<Vec<Vec<Vec<i64>>>>,
}

/// Parses an algebra table, checking shapes but not axioms.
pub fn parse_algebra_table(src: &str) -> Result<AlgebraTable, ParseError> {
    let f: AlgebraFile = parse(src)?;
    let p = *f.p.get_ref();
    if p < 2 {
        return Err(shape_error(src, "p", f.p.span(), "p must be a prime"));
    }
    let d = *f.dim.get_ref();
    let mult = f.mult.get_ref();
    if mult.len() != d {
        return Err(shape_error(
            src,
            "mult",
            f.mult.span(),
            format!("expected {d} rows (dim), found {}", mult.len()),
        ));
    }
    for (i, row) in mult.iter().enumerate() {
        if row.len() != d {
            return Err(shape_error(
                src,
                "mult",
                f.mult.span(),
                format!("row {i} has {} entries, expected {d}", row.len()),
            ));
        }
        if let Some((j, v)) = row.iter().enumerate().find(|(_, v)| v.len() != d) {
            return Err(shape_error(
                src,
                "mult",
                f.mult.span(),
                format!("product e_{i} e_{j} has {} coefficients, expected {d}", v.len()),
            ));
        }
    }
    let labels = match f.labels {
        Some(l) if l.get_ref().len() != d => {
            return Err(shape_error(
                src,
                "labels",
                l.span(),
                format!("expected {d} labels, found {}", l.get_ref().len()),
            ))
        }
        Some(l) => l.into_inner(),
        None => (0..d).map(|i| format!("e{i}")).collect(),
    };
    let mult = mult
        .iter()
        .map(|row| row.iter().map(|v| v.iter().map(|&x| reduce(x, p)).collect()).collect())
        .collect();
    Ok(AlgebraTable { p, labels, mult })
}

/// Parses and validates an algebra.
pub fn parse_algebra(src: &str) -> Result<Algebra, FileError> {
    Algebra::new(parse_algebra_table(src)?).map_err(|report| FileError::Invalid(report.to_string()))
}

fn read(path: &Path) -> Result<String, LoadError> {
    fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_algebra(path: &Path) -> Result<Arc<Algebra>, LoadError> {
    let src = read(path)?;
    parse_algebra(&src).map(Arc::new).map_err(|e| LoadError::at(path, e))
}

pub fn write_algebra(r: &Algebra) -> String {
    let labels: Vec<String> = r.labels().iter().map(|l| format!("{l:?}")).collect();
    let mut out = format!("p = {}\ndim = {}\nlabels = [{}]\nmult = [\n", r.p(), r.dim(), labels.join(", "));
    for row in r.structure_constants() {
        let cells: Vec<String> = row.iter().map(|v| vector(v)).collect();
        out.push_str(&format!("  [{}],\n", cells.join(", ")));
    }
    out.push_str("]\n");
    out
}

// ---------------------------------------------------------------- modules

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleFile {
    algebra: Spanned<String>,
    dim: Spanned<usize>,
    actions: Spanned<Vec<Vec<Vec<i64>>>>,
}

/// The algebra path a module file refers to, as written.
pub fn module_algebra_ref(src: &str) -> Result<String, ParseError> {
    let f: ModuleFile = parse(src)?;
    Ok(f.algebra.into_inner())
}

/// Parses a module over an already loaded algebra and validates the
/// representation axioms.
pub fn parse_module(src: &str, algebra: &Arc<Algebra>) -> Result<ModuleRep, FileError> {
    let f: ModuleFile = parse(src)?;
    let n = *f.dim.get_ref();
    let d = algebra.dim();
    let p = algebra.p() as u64;
    let acts = f.actions.get_ref();
    if acts.len() != d {
        return Err(shape_error(
            src,
            "actions",
            f.actions.span(),
            format!("expected {d} matrices (one per algebra basis element), found {}", acts.len()),
        )
        .into());
    }
    let mut actions = Vec::with_capacity(d);
    for (i, a) in acts.iter().enumerate() {
        if a.len() != n || a.iter().any(|row| row.len() != n) {
            return Err(shape_error(src, "actions", f.actions.span(), format!("matrix {i} is not {n}x{n}")).into());
        }
        let rows: Vec<Vec<i64>> = a.iter().map(|r| r.iter().map(|&x| reduce(x, p) as i64).collect()).collect();
        actions.push(FpMatrix::from_rows(algebra.p(), n, &rows).map_err(|e| FileError::Invalid(e.to_string()))?);
    }
    ModuleRep::new(algebra.clone(), n, actions).map_err(|e| FileError::Invalid(e.to_string()))
}

fn resolve(base: &Path, reference: &str) -> PathBuf {
    base.parent().unwrap_or(Path::new(".")).join(reference)
}

/// A module together with the algebra file it names.
#[derive(Debug, Clone)]
pub struct LoadedModule {
    pub algebra_path: PathBuf,
    pub algebra: Arc<Algebra>,
    pub module: Arc<ModuleRep>,
}

pub fn load_module(path: &Path) -> Result<LoadedModule, LoadError> {
    let src = read(path)?;
    let reference = module_algebra_ref(&src).map_err(|error| LoadError::Parse {
        path: path.to_path_buf(),
        error,
    })?;
    let algebra_path = resolve(path, &reference);
    let algebra = load_algebra(&algebra_path)?;
    let module = parse_module(&src, &algebra).map_err(|e| LoadError::at(path, e))?;
    Ok(LoadedModule {
        algebra_path,
        algebra,
        module: Arc::new(module),
    })
}

fn vector(v: &[u32]) -> String {
    format!("[{}]", v.iter().map(u32::to_string).collect::<Vec<_>>().join(", "))
}

/// Serializes a module in the module file format.
pub fn write_module(m: &ModuleRep, algebra_ref: &str) -> String {
    let mut out = format!("algebra = {algebra_ref:?}\ndim = {}\nactions = [\n", m.dim());
    for a in m.actions() {
        let rows: Vec<String> = a.row_vectors().iter().map(|r| vector(r)).collect();
        out.push_str(&format!("  [{}],\n", rows.join(", ")));
    }
    out.push_str("]\n");
    out
}

// ---------------------------------------------------------------- vectors and ideals

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VectorsFile {
    vectors: Spanned<Vec<Vec<i64>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IdealFile {
    ideal: Spanned<Vec<Vec<i64>>>,
}

/// Parses a vector list, checking every vector has length `len`.
pub fn parse_vectors(src: &str, len: usize, p: u32) -> Result<Vec<Vec<u32>>, ParseError> {
    let f: VectorsFile = parse(src)?;
    check_vectors(src, "vectors", &f.vectors, len, p as u64)
}

pub fn parse_ideal(src: &str, algebra: &Algebra) -> Result<Ideal, ParseError> {
    let f: IdealFile = parse(src)?;
    let gens = check_vectors(src, "ideal", &f.ideal, algebra.dim(), algebra.p() as u64)?;
    Ok(algebra.ideal(&gens))
}

pub fn write_vectors(vs: &[Vec<u32>]) -> String {
    let rows: Vec<String> = vs.iter().map(|v| vector(v)).collect();
    format!("vectors = [{}]\n", rows.join(", "))
}

/// What a file holds, decided by its top-level keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    Algebra,
    Module,
    Vectors,
    Ideal,
}

pub fn detect_kind(src: &str) -> Result<FileKind, ParseError> {
    let table: toml::Table = parse(src)?;
    for (key, kind) in [
        ("mult", FileKind::Algebra),
        ("actions", FileKind::Module),
        ("vectors", FileKind::Vectors),
        ("ideal", FileKind::Ideal),
    ] {
        if table.contains_key(key) {
            return Ok(kind);
        }
    }
    Err(ParseError {
        line: None,
        key: None,
        message: "expected one of the keys `mult`, `actions`, `vectors` or `ideal`".into(),
    })
}

/// Reads a file and reports its kind, for callers dispatching on content.
pub fn read_with_kind(path: &Path) -> Result<(String, FileKind), LoadError> {
    let src = read(path)?;
    let kind = detect_kind(&src).map_err(|error| LoadError::Parse {
        path: path.to_path_buf(),
        error,
    })?;
    Ok((src, kind))
}

#[cfg(test)]
mod tests {
    use super::*;

    const X2: &str = "p = 2\ndim = 2\nlabels = [\"1\", \"x\"]\nmult = [\n  [[1, 0], [0, 1]],\n  [[0, 1], [0, 0]],\n]\n";

    #[test]
    fn algebra_round_trip() {
        let r = parse_algebra(X2).unwrap();
        assert_eq!(r, Algebra::truncated_polynomial(2, 2));
        assert_eq!(parse_algebra(&write_algebra(&r)).unwrap(), r);
    }

    #[test]
    fn x_squared_equals_one_is_not_local() {
        let src = X2.replace("[[0, 1], [0, 0]]", "[[0, 1], [1, 0]]");
        match parse_algebra(&src) {
            Err(FileError::Invalid(msg)) => assert!(msg.contains("m not nilpotent"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_line_and_key() {
        let src = "p = 2\ndim = 2\nmult = [\n  [[1, 0], [0, 1]],\n  [[0, 1], [0, 0]\n]\n";
        let e = parse_algebra_table(src).unwrap_err();
        assert!(e.line.is_some(), "{e}");
        let e = parse_algebra_table("p = 2\ndim = \"two\"\nmult = []\n").unwrap_err();
        assert_eq!((e.line, e.key.as_deref()), (Some(2), Some("dim")), "{e}");
        let e = parse_algebra_table("p = 2\ndim = 2\n").unwrap_err();
        assert_eq!(e.key.as_deref(), Some("mult"), "{e}");
        let e = parse_algebra_table("p = 2\ndim = 3\nmult = [\n  [[1, 0], [0, 1]],\n  [[0, 1], [0, 0]],\n]\n").unwrap_err();
        assert_eq!((e.line, e.key.as_deref()), (Some(3), Some("mult")), "{e}");
    }

    #[test]
    fn module_round_trip_and_axioms() {
        let r = Arc::new(parse_algebra(X2).unwrap());
        let reg = ModuleRep::regular(&r);
        let text = write_module(&reg, "x2.toml");
        assert_eq!(module_algebra_ref(&text).unwrap(), "x2.toml");
        assert_eq!(parse_module(&text, &r).unwrap(), reg);
        // x acting by the identity breaks x^2 = 0
        let bad = text.replace("[[0, 0], [1, 0]]", "[[1, 0], [0, 1]]");
        assert!(matches!(parse_module(&bad, &r), Err(FileError::Invalid(_))));
    }

    #[test]
    fn vectors_and_kinds() {
        assert_eq!(parse_vectors("vectors = [[1, 3], [0, -1]]", 2, 2).unwrap(), vec![vec![1, 1], vec![0, 1]]);
        let e = parse_vectors("vectors = [[1, 0, 0]]", 2, 2).unwrap_err();
        assert_eq!(e.key.as_deref(), Some("vectors"));
        assert_eq!(detect_kind(X2).unwrap(), FileKind::Algebra);
        assert_eq!(detect_kind("ideal = [[0, 1]]").unwrap(), FileKind::Ideal);
        let r = parse_algebra(X2).unwrap();
        assert_eq!(parse_ideal("ideal = [[0, 1]]", &r).unwrap(), r.maximal_ideal());
    }
}
