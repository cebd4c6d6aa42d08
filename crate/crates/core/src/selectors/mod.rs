//! Submodule selectors: opaque, composable rules picking a submodule of every
//! module, with the built-in families and a small expression language.

mod builtin;
mod expr;

pub use builtin::*;
pub use expr::{parse_selector, Env, ExprError, SelectorExpr, Value};

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::exactlin::{EnumerationBudget, FpMatrix};
use crate::modrep::{ModuleError, ModuleRep, Submodule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SelectorError {
    #[error("{selector} returned a subspace of the wrong ambient space")]
    WrongAmbient { selector: String },
    #[error("{selector} returned a subspace not closed under e_{generator}")]
    NotActionClosed { selector: String, generator: usize },
    #[error("vectors of S must have length {expected} (dimension of L), found {found}")]
    NotInSource { expected: usize, found: usize },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Budget(#[from] EnumerationBudget),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

pub type Result<T> = std::result::Result<T, SelectorError>;

type EvalFn = dyn Fn(&Arc<ModuleRep>) -> Result<Submodule> + Send + Sync;

/// A rule `M ↦ α(M) ⊆ M`.
///
/// Results are memoized per module (keyed by the action matrices), which is
/// invisible to callers because evaluation is a pure function of the module.
#[derive(Clone)]
pub struct Selector {
    name: String,
    provenance: String,
    eval: Arc<EvalFn>,
    cache: Arc<Mutex<HashMap<(u64, Vec<FpMatrix>), Result<Submodule>>>>,
}

impl fmt::Debug for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Selector({})", self.name)
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl Selector {
    pub fn new<F>(name: impl Into<String>, provenance: impl Into<String>, eval: F) -> Selector
    where
        F: Fn(&Arc<ModuleRep>) -> Result<Submodule> + Send + Sync + 'static,
    {
        Selector {
            name: name.into(),
            provenance: provenance.into(),
            eval: Arc::new(eval),
            cache: Arc::new(Mutex::new(HashMap::new())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn renamed(&self, name: impl Into<String>) -> Selector {
        Selector {
            name: name.into(),
            ..self.clone()
        }
    }

    /// Evaluates and asserts the result is an action-closed subspace of `m`.
    pub fn eval(&self, m: &Arc<ModuleRep>) -> Result<Submodule> {
        let key = (m.algebra().fingerprint(), m.actions().to_vec());
        if let Some(hit) = self.cache.lock().expect("cache lock").get(&key) {
            return hit.clone();
        }
        let out = self.eval_uncached(m);
        self.cache.lock().expect("cache lock").insert(key, out.clone());
        out
    }

    fn eval_uncached(&self, m: &Arc<ModuleRep>) -> Result<Submodule> {
        let s = (self.eval)(m)?;
        if s.ambient_dim() != m.dim() {
            return Err(SelectorError::WrongAmbient {
                selector: self.name.clone(),
            });
        }
        if let Some(generator) = m.invariance_failure(s.space()) {
            return Err(SelectorError::NotActionClosed {
                selector: self.name.clone(),
                generator,
            });
        }
        Ok(s)
    }
}
