//! Named artifacts bound with `--bind NAME=PATH`, resolved over one algebra.

use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;

use smilelab::algebra::Algebra;
use smilelab::format::{self, FileKind, LoadError};
use smilelab::modrep::ModuleRep;
use smilelab::selectors::{Env, Selector, Value};

use crate::error::{CliError, CliResult};

pub struct Workspace {
    pub env: Env,
    modules: Vec<Arc<ModuleRep>>,
}

fn split(bind: &str) -> CliResult<(&str, &Path)> {
    let (name, path) = bind
        .split_once('=')
        .ok_or_else(|| CliError::usage(format!("--bind expects NAME=PATH, got `{bind}`")))?;
    let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !valid {
        return Err(CliError::usage(format!("`{name}` is not a valid name")));
    }
    Ok((name, Path::new(path)))
}

fn parse_error(path: &Path, error: format::ParseError) -> CliError {
    LoadError::Parse {
        path: path.to_path_buf(),
        error,
    }
    .into()
}

impl Workspace {
    /// Loads every binding; names must be unique and every artifact must
    /// pass its checks over `algebra`.
    pub fn new(algebra: &Arc<Algebra>, binds: &[String], budget: usize) -> CliResult<Workspace> {
        let mut env = Env::new(algebra);
        env.budget = budget;
        let mut seen = BTreeSet::new();
        let mut modules = Vec::new();
        for b in binds {
            let (name, path) = split(b)?;
            if !seen.insert(name.to_string()) {
                return Err(CliError::usage(format!("`{name}` is bound twice")));
            }
            let (src, kind) = format::read_with_kind(path)?;
            let value = match kind {
                FileKind::Module => {
                    let loaded = format::load_module(path)?;
                    if *loaded.algebra != **algebra {
                        return Err(CliError::usage(format!(
                            "{}: module is over {}, not the working algebra",
                            path.display(),
                            loaded.algebra_path.display()
                        )));
                    }
                    modules.push(loaded.module.clone());
                    Value::Module(loaded.module)
                }
                FileKind::Vectors => {
                    // Lengths are checked against the module the vectors are used with.
                    let table: toml::Table =
                        toml::from_str(&src).map_err(|e| CliError::parse(format!("{}: {}", path.display(), e.message())))?;
                    let len = table["vectors"]
                        .as_array()
                        .and_then(|a| a.first())
                        .and_then(|v| v.as_array())
                        .map_or(0, Vec::len);
                    Value::Vectors(format::parse_vectors(&src, len, algebra.p()).map_err(|e| parse_error(path, e))?)
                }
                FileKind::Ideal => Value::Ideal(format::parse_ideal(&src, algebra).map_err(|e| parse_error(path, e))?),
                FileKind::Algebra => {
                    return Err(CliError::usage(format!(
                        "{}: algebras cannot be bound to names",
                        path.display()
                    )))
                }
            };
            env.bind(name, value);
        }
        Ok(Workspace { env, modules })
    }

    /// The algebra of the first bound module, for commands without a module argument.
    pub fn algebra_of_first_module(binds: &[String]) -> CliResult<Arc<Algebra>> {
        for b in binds {
            let (_, path) = split(b)?;
            if format::read_with_kind(path)?.1 == FileKind::Module {
                return Ok(format::load_module(path)?.algebra);
            }
        }
        Err(CliError::usage("no algebra given: pass --algebra PATH or bind a module"))
    }

    pub fn compile(&self, src: &str) -> CliResult<Selector> {
        Ok(self.env.compile(src)?)
    }

    pub fn modules(&self) -> Vec<Arc<ModuleRep>> {
        self.modules.clone()
    }
}
