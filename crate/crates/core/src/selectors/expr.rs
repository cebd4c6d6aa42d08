//! The selector mini-language.
//!
//! ```text
//! expr   := ATOM | NAME '(' args ')'
//! ATOM   := zero | id | socle | star
//! calls  := trace(MOD [; S = SET]) | tom(MOD [; S = SET])
//!         | mul(IDEAL) | ann(IDEAL) | h0(IDEAL) | adic(IDEAL)
//!         | tto(SET) | dv(SET) | dimgate(INT) | dimcap(INT)
//!         | smile(expr) | fin(expr [, INT]) | join(expr, expr) | meet(expr, expr)
//! IDEAL  := (NAME | 0 | SET-literal) ['^' INT]
//! SET    := NAME | '{' vec (',' vec)* '}'      vec := '[' INT (',' INT)* ']'
//! ```
//!
//! Parsing is one-token lookahead into a generic call tree; arity and
//! argument kinds are checked while lowering to [`SelectorExpr`]. Every
//! error carries a byte offset into the source.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::{builtin, Selector, SelectorError};
use crate::algebra::{Algebra, Ideal};
use crate::duality::{injective_hull, smile};
use crate::lab::Lab;
use crate::modrep::ModuleRep;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at offset {pos}: expected {expected}, found {found}")]
    Syntax {
        pos: usize,
        expected: String,
        found: String,
    },
    #[error("unknown selector `{name}` at offset {pos}")]
    UnknownSelector { name: String, pos: usize },
    #[error("unbound name `{name}` at offset {pos}")]
    Unbound { name: String, pos: usize },
    #[error("`{name}` at offset {pos} takes {expected} argument(s), found {found}")]
    Arity {
        name: String,
        pos: usize,
        expected: &'static str,
        found: usize,
    },
    #[error("argument at offset {pos} should be {expected}")]
    Kind { pos: usize, expected: &'static str },
    #[error("vector at offset {pos} has length {found}, expected {expected}")]
    VectorLength {
        pos: usize,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Selector(#[from] SelectorError),
}

type Result<T> = std::result::Result<T, ExprError>;

// ---------------------------------------------------------------- lexing

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Punct(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Punct(c) => write!(f, "`{c}`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), start));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = src[start..i].parse().map_err(|_| ExprError::Syntax {
                pos: start,
                expected: "an integer that fits in 64 bits".into(),
                found: src[start..i].to_string(),
            })?;
            out.push((Tok::Int(n), start));
        } else if "(),;={}[]^".contains(c) {
            out.push((Tok::Punct(c), i));
            i += 1;
        } else {
            let ch = src[i..].chars().next().expect("in bounds");
            return Err(ExprError::Syntax {
                pos: i,
                expected: "a name, integer or punctuation".into(),
                found: format!("`{ch}`"),
            });
        }
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

// ---------------------------------------------------------------- call tree

#[derive(Debug, Clone)]
enum Term {
    Name { name: String, power: Option<u64>, pos: usize },
    Call { name: String, args: Vec<Term>, source: Option<Box<Term>>, pos: usize },
    Int { value: u64, power: Option<u64>, pos: usize },
    Vectors { vectors: Vec<Vec<u64>>, power: Option<u64>, pos: usize },
}

impl Term {
    fn pos(&self) -> usize {
        match self {
            Term::Name { pos, .. } | Term::Call { pos, .. } | Term::Int { pos, .. } | Term::Vectors { pos, .. } => *pos,
        }
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T> {
        Err(ExprError::Syntax {
            pos: self.pos(),
            expected: expected.into(),
            found: self.peek().to_string(),
        })
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if *self.peek() == Tok::Punct(c) {
            self.bump();
            Ok(())
        } else {
            self.fail(&format!("`{c}`"))
        }
    }

    fn int(&mut self) -> Result<u64> {
        match self.peek() {
            Tok::Int(n) => {
                let n = *n;
                self.bump();
                Ok(n)
            }
            _ => self.fail("an integer"),
        }
    }

    fn power(&mut self) -> Result<Option<u64>> {
        if *self.peek() == Tok::Punct('^') {
            self.bump();
            Ok(Some(self.int()?))
        } else {
            Ok(None)
        }
    }

    fn vector(&mut self) -> Result<Vec<u64>> {
        self.expect('[')?;
        let mut v = vec![self.int()?];
        while *self.peek() == Tok::Punct(',') {
            self.bump();
            v.push(self.int()?);
        }
        self.expect(']')?;
        Ok(v)
    }

    fn term(&mut self) -> Result<Term> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() == Tok::Punct('(') {
                    self.bump();
                    let mut args = Vec::new();
                    let mut source = None;
                    if !matches!(self.peek(), Tok::Punct(')') | Tok::Punct(';')) {
                        args.push(self.term()?);
                        while *self.peek() == Tok::Punct(',') {
                            self.bump();
                            args.push(self.term()?);
                        }
                    }
                    if *self.peek() == Tok::Punct(';') {
                        self.bump();
                        match self.peek() {
                            Tok::Ident(s) if s == "S" => {
                                self.bump();
                            }
                            _ => return self.fail("`S`"),
                        }
                        self.expect('=')?;
                        source = Some(Box::new(self.term()?));
                    }
                    self.expect(')')?;
                    Ok(Term::Call { name, args, source, pos })
                } else {
                    let power = self.power()?;
                    Ok(Term::Name { name, power, pos })
                }
            }
            Tok::Int(value) => {
                self.bump();
                let power = self.power()?;
                Ok(Term::Int { value, power, pos })
            }
            Tok::Punct('{') => {
                self.bump();
                let mut vectors = Vec::new();
                if *self.peek() != Tok::Punct('}') {
                    vectors.push(self.vector()?);
                    while *self.peek() == Tok::Punct(',') {
                        self.bump();
                        vectors.push(self.vector()?);
                    }
                }
                self.expect('}')?;
                let power = self.power()?;
                Ok(Term::Vectors { vectors, power, pos })
            }
            _ => self.fail("a selector, name, integer or `{`"),
        }
    }
}

// ---------------------------------------------------------------- AST

/// A bare name with its source offset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Named {
    pub name: String,
    pub pos: usize,
}

/// A finite set of vectors: a bound name or a literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetExpr {
    Name(Named),
    Literal { vectors: Vec<Vec<u64>>, pos: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealBase {
    Name(Named),
    Zero,
    Generators { vectors: Vec<Vec<u64>>, pos: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealExpr {
    pub base: IdealBase,
    pub power: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SelectorExpr {
    Zero,
    Id,
    Socle,
    Star,
    Trace { module: Named, source: Option<SetExpr> },
    Tom { module: Named, source: Option<SetExpr> },
    Mul(IdealExpr),
    Ann(IdealExpr),
    H0(IdealExpr),
    Adic(IdealExpr),
    Tto(SetExpr),
    Dv(SetExpr),
    DimGate(u64),
    DimCap(u64),
    Smile(Box<SelectorExpr>),
    Fin(Box<SelectorExpr>, Option<u64>),
    Join(Box<SelectorExpr>, Box<SelectorExpr>),
    Meet(Box<SelectorExpr>, Box<SelectorExpr>),
}

fn write_vectors(f: &mut fmt::Formatter<'_>, vs: &[Vec<u64>]) -> fmt::Result {
    f.write_str("{")?;
    for (i, v) in vs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        let parts: Vec<String> = v.iter().map(u64::to_string).collect();
        write!(f, "[{}]", parts.join(","))?;
    }
    f.write_str("}")
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetExpr::Name(n) => f.write_str(&n.name),
            SetExpr::Literal { vectors, .. } => write_vectors(f, vectors),
        }
    }
}

impl fmt::Display for IdealExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.base {
            IdealBase::Name(n) => f.write_str(&n.name)?,
            IdealBase::Zero => f.write_str("0")?,
            IdealBase::Generators { vectors, .. } => write_vectors(f, vectors)?,
        }
        if let Some(k) = self.power {
            write!(f, "^{k}")?;
        }
        Ok(())
    }
}

impl fmt::Display for SelectorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SelectorExpr::*;
        match self {
            Zero => f.write_str("zero"),
            Id => f.write_str("id"),
            Socle => f.write_str("socle"),
            Star => f.write_str("star"),
            Trace { module, source } | Tom { module, source } => {
                let head = if matches!(self, Trace { .. }) { "trace" } else { "tom" };
                write!(f, "{head}({}", module.name)?;
                if let Some(s) = source {
                    write!(f, ";S={s}")?;
                }
                f.write_str(")")
            }
            Mul(i) => write!(f, "mul({i})"),
            Ann(i) => write!(f, "ann({i})"),
            H0(i) => write!(f, "h0({i})"),
            Adic(i) => write!(f, "adic({i})"),
            Tto(w) => write!(f, "tto({w})"),
            Dv(w) => write!(f, "dv({w})"),
            DimGate(n) => write!(f, "dimgate({n})"),
            DimCap(n) => write!(f, "dimcap({n})"),
            Smile(e) => write!(f, "smile({e})"),
            Fin(e, None) => write!(f, "fin({e})"),
            Fin(e, Some(c)) => write!(f, "fin({e},{c})"),
            Join(a, b) => write!(f, "join({a},{b})"),
            Meet(a, b) => write!(f, "meet({a},{b})"),
        }
    }
}

// ---------------------------------------------------------------- lowering

fn arity(name: &str, pos: usize, args: &[Term], expected: &'static str, ok: bool) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(ExprError::Arity {
            name: name.into(),
            pos,
            expected,
            found: args.len(),
        })
    }
}

fn no_source(source: &Option<Box<Term>>) -> Result<()> {
    match source {
        Some(t) => Err(ExprError::Syntax {
            pos: t.pos(),
            expected: "`)`; only trace and tom take `; S = ...`".into(),
            found: "`S`".into(),
        }),
        None => Ok(()),
    }
}

fn lower_set(t: &Term) -> Result<SetExpr> {
    match t {
        Term::Name { name, power: None, pos } => Ok(SetExpr::Name(Named {
            name: name.clone(),
            pos: *pos,
        })),
        Term::Vectors { vectors, power: None, pos } => Ok(SetExpr::Literal {
            vectors: vectors.clone(),
            pos: *pos,
        }),
        other => Err(ExprError::Kind {
            pos: other.pos(),
            expected: "a name or a `{[..], ..}` vector list",
        }),
    }
}

fn lower_ideal(t: &Term) -> Result<IdealExpr> {
    match t {
        Term::Name { name, power, pos } => Ok(IdealExpr {
            base: IdealBase::Name(Named {
                name: name.clone(),
                pos: *pos,
            }),
            power: *power,
        }),
        Term::Int { value: 0, power, .. } => Ok(IdealExpr {
            base: IdealBase::Zero,
            power: *power,
        }),
        Term::Vectors { vectors, power, pos } => Ok(IdealExpr {
            base: IdealBase::Generators {
                vectors: vectors.clone(),
                pos: *pos,
            },
            power: *power,
        }),
        other => Err(ExprError::Kind {
            pos: other.pos(),
            expected: "an ideal: a name, `0`, or generators `{[..], ..}`, optionally `^n`",
        }),
    }
}

fn lower_int(t: &Term) -> Result<u64> {
    match t {
        Term::Int { value, power: None, .. } => Ok(*value),
        other => Err(ExprError::Kind {
            pos: other.pos(),
            expected: "an integer",
        }),
    }
}

fn lower_module(t: &Term) -> Result<Named> {
    match t {
        Term::Name { name, power: None, pos } => Ok(Named {
            name: name.clone(),
            pos: *pos,
        }),
        other => Err(ExprError::Kind {
            pos: other.pos(),
            expected: "a module name",
        }),
    }
}

fn lower(t: &Term) -> Result<SelectorExpr> {
    use SelectorExpr as E;
    match t {
        Term::Name { name, power: None, pos } => match name.as_str() {
            "zero" => Ok(E::Zero),
            "id" => Ok(E::Id),
            "socle" => Ok(E::Socle),
            "star" => Ok(E::Star),
            "trace" | "tom" | "mul" | "ann" | "h0" | "adic" | "tto" | "dv" | "dimgate" | "dimcap" | "smile" | "fin"
            | "join" | "meet" => Err(ExprError::Arity {
                name: name.clone(),
                pos: *pos,
                expected: "at least 1",
                found: 0,
            }),
            _ => Err(ExprError::UnknownSelector {
                name: name.clone(),
                pos: *pos,
            }),
        },
        Term::Call { name, args, source, pos } => {
            let pos = *pos;
            let one = |expected| arity(name, pos, args, expected, args.len() == 1);
            match name.as_str() {
                "zero" | "id" | "socle" | "star" => Err(ExprError::Arity {
                    name: name.clone(),
                    pos,
                    expected: "0",
                    found: args.len(),
                }),
                "trace" | "tom" => {
                    one("1")?;
                    let module = lower_module(&args[0])?;
                    let source = source.as_deref().map(lower_set).transpose()?;
                    Ok(if name == "trace" {
                        E::Trace { module, source }
                    } else {
                        E::Tom { module, source }
                    })
                }
                _ => {
                    no_source(source)?;
                    match name.as_str() {
                        "mul" | "ann" | "h0" | "adic" => {
                            one("1")?;
                            let i = lower_ideal(&args[0])?;
                            Ok(match name.as_str() {
                                "mul" => E::Mul(i),
                                "ann" => E::Ann(i),
                                "h0" => E::H0(i),
                                _ => E::Adic(i),
                            })
                        }
                        "tto" | "dv" => {
                            one("1")?;
                            let w = lower_set(&args[0])?;
                            Ok(if name == "tto" { E::Tto(w) } else { E::Dv(w) })
                        }
                        "dimgate" | "dimcap" => {
                            one("1")?;
                            let n = lower_int(&args[0])?;
                            Ok(if name == "dimgate" { E::DimGate(n) } else { E::DimCap(n) })
                        }
                        "smile" => {
                            one("1")?;
                            Ok(E::Smile(Box::new(lower(&args[0])?)))
                        }
                        "fin" => {
                            arity(name, pos, args, "1 or 2", matches!(args.len(), 1 | 2))?;
                            let cap = args.get(1).map(lower_int).transpose()?;
                            Ok(E::Fin(Box::new(lower(&args[0])?), cap))
                        }
                        "join" | "meet" => {
                            arity(name, pos, args, "2", args.len() == 2)?;
                            let a = Box::new(lower(&args[0])?);
                            let b = Box::new(lower(&args[1])?);
                            Ok(if name == "join" { E::Join(a, b) } else { E::Meet(a, b) })
                        }
                        _ => Err(ExprError::UnknownSelector { name: name.clone(), pos }),
                    }
                }
            }
        }
        other => Err(ExprError::Kind {
            pos: other.pos(),
            expected: "a selector",
        }),
    }
}

/// Parses `src` into a selector expression without resolving names.
pub fn parse_selector(src: &str) -> Result<SelectorExpr> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    let t = p.term()?;
    if *p.peek() != Tok::End {
        return p.fail("end of input");
    }
    lower(&t)
}

// ---------------------------------------------------------------- evaluation

/// A value a name can be bound to.
#[derive(Debug, Clone)]
pub enum Value {
    Module(Arc<ModuleRep>),
    Vectors(Vec<Vec<u32>>),
    Ideal(Ideal),
}

/// Names visible to selector expressions over one algebra.
///
/// `R` (regular module), `E` (injective hull), `k` (residue field) and `m`
/// (maximal ideal) are bound on construction; later bindings shadow them.
#[derive(Debug, Clone)]
pub struct Env {
    algebra: Arc<Algebra>,
    lab: Lab,
    bindings: BTreeMap<String, Value>,
    /// Submodule enumeration budget for `fin`.
    pub budget: usize,
}

pub const DEFAULT_FIN_BUDGET: usize = 20_000;

impl Env {
    pub fn new(algebra: &Arc<Algebra>) -> Env {
        Env::with_lab(algebra, Lab::exact())
    }

    pub fn with_lab(algebra: &Arc<Algebra>, lab: Lab) -> Env {
        let mut bindings = BTreeMap::new();
        bindings.insert("R".into(), Value::Module(Arc::new(ModuleRep::regular(algebra))));
        bindings.insert("k".into(), Value::Module(Arc::new(ModuleRep::residue_field(algebra))));
        if let Ok(e) = injective_hull(algebra) {
            bindings.insert("E".into(), Value::Module(e));
        }
        bindings.insert("m".into(), Value::Ideal(algebra.maximal_ideal()));
        Env {
            algebra: algebra.clone(),
            lab,
            bindings,
            budget: DEFAULT_FIN_BUDGET,
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn lab(&self) -> Lab {
        self.lab
    }

    pub fn bind(&mut self, name: impl Into<String>, value: Value) {
        self.bindings.insert(name.into(), value);
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.bindings.get(name)
    }

    /// Parses and evaluates in one step.
    pub fn compile(&self, src: &str) -> Result<Selector> {
        self.eval(&parse_selector(src)?)
    }

    fn lookup(&self, n: &Named) -> Result<&Value> {
        self.bindings.get(&n.name).ok_or_else(|| ExprError::Unbound {
            name: n.name.clone(),
            pos: n.pos,
        })
    }

    fn module(&self, n: &Named) -> Result<Arc<ModuleRep>> {
        match self.lookup(n)? {
            Value::Module(m) => Ok(m.clone()),
            _ => Err(ExprError::Kind {
                pos: n.pos,
                expected: "a module name",
            }),
        }
    }

    fn reduce_vectors(&self, vectors: &[Vec<u64>], len: usize, pos: usize) -> Result<Vec<Vec<u32>>> {
        let p = self.algebra.p() as u64;
        vectors
            .iter()
            .map(|v| {
                if v.len() != len {
                    return Err(ExprError::VectorLength {
                        pos,
                        expected: len,
                        found: v.len(),
                    });
                }
                Ok(v.iter().map(|&x| (x % p) as u32).collect())
            })
            .collect()
    }

    fn set(&self, s: &SetExpr, len: usize) -> Result<Vec<Vec<u32>>> {
        match s {
            SetExpr::Literal { vectors, pos } => self.reduce_vectors(vectors, len, *pos),
            SetExpr::Name(n) => match self.lookup(n)? {
                Value::Vectors(vs) => {
                    if let Some(v) = vs.iter().find(|v| v.len() != len) {
                        return Err(ExprError::VectorLength {
                            pos: n.pos,
                            expected: len,
                            found: v.len(),
                        });
                    }
                    Ok(vs.clone())
                }
                Value::Ideal(i) if len == self.algebra.dim() => Ok(i.basis()),
                _ => Err(ExprError::Kind {
                    pos: n.pos,
                    expected: "a vector list",
                }),
            },
        }
    }

    fn ideal(&self, i: &IdealExpr) -> Result<Ideal> {
        let base = match &i.base {
            IdealBase::Zero => self.algebra.zero_ideal(),
            IdealBase::Generators { vectors, pos } => {
                let gens = self.reduce_vectors(vectors, self.algebra.dim(), *pos)?;
                self.algebra.ideal(&gens)
            }
            IdealBase::Name(n) => match self.bindings.get(&n.name) {
                Some(Value::Ideal(i)) => i.clone(),
                Some(Value::Vectors(vs)) if vs.iter().all(|v| v.len() == self.algebra.dim()) => self.algebra.ideal(vs),
                None if n.name == "R" => self.algebra.unit_ideal(),
                Some(Value::Module(m)) if n.name == "R" && **m == ModuleRep::regular(&self.algebra) => {
                    self.algebra.unit_ideal()
                }
                None => {
                    return Err(ExprError::Unbound {
                        name: n.name.clone(),
                        pos: n.pos,
                    })
                }
                Some(_) => {
                    return Err(ExprError::Kind {
                        pos: n.pos,
                        expected: "an ideal",
                    })
                }
            },
        };
        Ok(match i.power {
            Some(k) => self.algebra.ideal_power(&base, k as usize),
            None => base,
        })
    }

    /// Resolves names and builds the selector.
    pub fn eval(&self, e: &SelectorExpr) -> Result<Selector> {
        use SelectorExpr as E;
        let lab = &self.lab;
        let alg = &self.algebra;
        let name = e.to_string();
        let s = match e {
            E::Zero => builtin::zero(),
            E::Id => builtin::identity(),
            E::Socle => builtin::socle(),
            E::Star => builtin::frobenius_star(alg),
            E::Trace { module, source } | E::Tom { module, source } => {
                let l = self.module(module)?;
                let s = match source {
                    Some(s) => self.set(s, l.dim())?,
                    None => l.full_submodule().basis(),
                };
                if matches!(e, E::Trace { .. }) {
                    builtin::trace(lab, &module.name, l, s)?
                } else {
                    builtin::tom(lab, &module.name, l, s)?
                }
            }
            E::Mul(i) => builtin::mul(&i.to_string(), self.ideal(i)?),
            E::Ann(i) => builtin::annsel(&i.to_string(), self.ideal(i)?),
            E::H0(i) => builtin::h0(alg, &i.to_string(), self.ideal(i)?),
            E::Adic(i) => builtin::adic_kernel(alg, &i.to_string(), self.ideal(i)?),
            E::Tto(w) => builtin::tto(lab, alg, &w.to_string(), &self.set(w, alg.dim())?),
            E::Dv(w) => builtin::dv(lab, alg, &w.to_string(), &self.set(w, alg.dim())?),
            E::DimGate(n) => builtin::dimension_gate(*n as usize),
            E::DimCap(n) => builtin::dimension_cap(*n as usize),
            E::Smile(a) => smile(lab, &self.eval(a)?),
            E::Fin(a, cap) => builtin::finitistic(&self.eval(a)?, cap.map_or(usize::MAX, |c| c as usize), self.budget),
            E::Join(a, b) => builtin::join(lab, &self.eval(a)?, &self.eval(b)?),
            E::Meet(a, b) => builtin::meet(lab, &self.eval(a)?, &self.eval(b)?),
        };
        Ok(s.renamed(name))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env() -> Env {
        Env::new(&Arc::new(Algebra::truncated_polynomial(2, 3)))
    }

    #[test]
    fn round_trips_through_display() {
        for src in [
            "zero",
            "smile(smile(star))",
            "join(zero,id)",
            "trace(R;S={[0,1,0]})",
            "tom(E)",
            "mul(m^2)",
            "ann({[0,0,1]})",
            "fin(socle,2)",
            "meet(h0(m),adic(0))",
            "tto({[1,1,0]})",
        ] {
            let e = parse_selector(src).unwrap();
            assert_eq!(e.to_string(), src);
            assert_eq!(parse_selector(&e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn whitespace_is_ignored() {
        assert_eq!(
            parse_selector(" join ( zero , smile( id ) ) ").unwrap(),
            parse_selector("join(zero,smile(id))").unwrap()
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_selector("join(zero id)") {
            Err(ExprError::Syntax { pos, .. }) => assert_eq!(pos, 10),
            other => panic!("{other:?}"),
        }
        match parse_selector("smile(id") {
            Err(ExprError::Syntax { pos, .. }) => assert_eq!(pos, 8),
            other => panic!("{other:?}"),
        }
        match parse_selector("id $") {
            Err(ExprError::Syntax { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_selector("id id"), Err(ExprError::Syntax { pos: 3, .. })));
    }

    #[test]
    fn arity_and_unknown_names() {
        assert!(matches!(parse_selector("join(id)"), Err(ExprError::Arity { found: 1, .. })));
        assert!(matches!(parse_selector("smile"), Err(ExprError::Arity { found: 0, .. })));
        assert!(matches!(parse_selector("id(zero)"), Err(ExprError::Arity { .. })));
        assert!(matches!(parse_selector("frob"), Err(ExprError::UnknownSelector { .. })));
        assert!(matches!(parse_selector("mul(m;S=x)"), Err(ExprError::Syntax { .. })));
    }

    #[test]
    fn unbound_names_are_reported_at_eval() {
        let env = env();
        let e = parse_selector("trace(L)").unwrap();
        assert_eq!(
            env.eval(&e).unwrap_err(),
            ExprError::Unbound {
                name: "L".into(),
                pos: 6
            }
        );
        assert!(matches!(env.compile("mul(J)"), Err(ExprError::Unbound { .. })));
        assert!(matches!(env.compile("mul({[1,0]})"), Err(ExprError::VectorLength { .. })));
    }

    #[test]
    fn evaluation_matches_builtins() {
        let env = env();
        let r = env.algebra().clone();
        let e = match env.get("E") {
            Some(Value::Module(e)) => e.clone(),
            _ => unreachable!(),
        };
        let join = env.compile("join(zero, id)").unwrap();
        assert!(join.eval(&e).unwrap().is_full());
        let a = env.compile("smile(trace(k))").unwrap();
        let b = env.compile("tom(k)").unwrap();
        assert_eq!(a.eval(&e).unwrap(), b.eval(&e).unwrap());
        let m2 = env.compile("mul(m^2)").unwrap().eval(&e).unwrap();
        assert_eq!(m2, e.ideal_times_module(&r.m_power_ideal(2)));
        assert!(env.compile("mul(R)").unwrap().eval(&e).unwrap().is_full());
        assert!(env.compile("ann(0)").unwrap().eval(&e).unwrap().is_full());
        assert_eq!(env.compile("smile(smile(star))").unwrap().name(), "smile(smile(star))");
    }
}
