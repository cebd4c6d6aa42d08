//! The eight selector properties as exhaustive checks over a battery.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use crate::modrep::{ModMap, ModuleRep, Submodule};
use crate::selectors::Selector;

use super::battery::Battery;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    OrderPreserving,
    SurjectionFunctorial,
    Functorial,
    Idempotent,
    CoIdempotent,
    Hereditary,
    Cohereditary,
    IsoEquivariant,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::OrderPreserving,
        Property::SurjectionFunctorial,
        Property::Functorial,
        Property::Idempotent,
        Property::CoIdempotent,
        Property::Hereditary,
        Property::Cohereditary,
        Property::IsoEquivariant,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::OrderPreserving => "order-preserving",
            Property::SurjectionFunctorial => "surjection-functorial",
            Property::Functorial => "functorial",
            Property::Idempotent => "idempotent",
            Property::CoIdempotent => "co-idempotent",
            Property::Hereditary => "hereditary",
            Property::Cohereditary => "cohereditary",
            Property::IsoEquivariant => "iso-equivariant",
        }
    }

    /// Which battery family the property quantifies over.
    pub fn family(self) -> Family {
        match self {
            Property::OrderPreserving | Property::Hereditary | Property::Cohereditary => Family::Pair,
            Property::SurjectionFunctorial | Property::Functorial | Property::IsoEquivariant => Family::Map,
            Property::Idempotent | Property::CoIdempotent => Family::Module,
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown property `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Module,
    Map,
    Pair,
    Triple,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Module => "module",
            Family::Map => "map",
            Family::Pair => "pair",
            Family::Triple => "triple",
        }
    }
}

/// The first violating item of a check, in deterministic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Which clause of the check failed (the property name for property checks).
    pub clause: String,
    pub index: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(Witness),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyVerdict {
    pub name: String,
    pub outcome: Outcome,
    /// Number of items examined.
    pub checked: usize,
}

impl PropertyVerdict {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.outcome {
            Outcome::Pass => None,
            Outcome::Fail(w) => Some(w),
        }
    }
}

pub(crate) type ItemResult = Result<(), String>;

/// Index and detail of the first `i < n` with `check(i)` failing.
pub(crate) fn first_failure<F>(n: usize, check: F) -> Option<(usize, String)>
where
    F: Fn(usize) -> ItemResult + Sync,
{
    (0..n).into_par_iter().find_map_first(|i| {
        // Seeded defects can hand malformed modules to code that assumes
        // module axioms; a panic there is a detected violation.
        let outcome = quietly(|| std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| check(i))))
            .unwrap_or_else(|e| Err(format!("panicked: {}", panic_message(&e))));
        outcome.err().map(|d| (i, d))
    })
}

thread_local! {
    static QUIET: std::cell::Cell<bool> = const { std::cell::Cell::new(false) };
}

/// Runs `f` with the panic hook muted on this thread, so caught panics from
/// item checks do not reach stderr.
fn quietly<T>(f: impl FnOnce() -> T) -> T {
    static HOOK: std::sync::Once = std::sync::Once::new();
    HOOK.call_once(|| {
        let previous = std::panic::take_hook();
        std::panic::set_hook(Box::new(move |info| {
            if !QUIET.with(|q| q.get()) {
                previous(info);
            }
        }));
    });
    let before = QUIET.with(|q| q.replace(true));
    let out = f();
    QUIET.with(|q| q.set(before));
    out
}

fn panic_message(e: &Box<dyn std::any::Any + Send>) -> String {
    e.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| e.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "unknown payload".into())
}

pub fn fmt_sub(s: &Submodule) -> String {
    let vs: Vec<String> = s
        .basis()
        .iter()
        .map(|v| format!("[{}]", v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    format!("<{}>", vs.join(","))
}

/// Module serialized as its dimension and the matrices of the algebra basis.
pub fn fmt_module(name: &str, m: &ModuleRep) -> String {
    let acts: Vec<String> = m
        .algebra()
        .generators()
        .iter()
        .map(|&g| {
            let a = m.action(g);
            let rows: Vec<String> = (0..a.rows())
                .map(|i| format!("[{}]", a.row(i).iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
                .collect();
            format!("{}=[{}]", m.algebra().labels()[g], rows.join(","))
        })
        .collect();
    format!("{name} (dim {}; {})", m.dim(), acts.join("; "))
}

pub fn fmt_map(name: &str, f: &ModMap) -> String {
    let a = f.matrix();
    let rows: Vec<String> = (0..a.rows())
        .map(|i| format!("[{}]", a.row(i).iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    format!("{name} ({}x{} [{}])", a.rows(), a.cols(), rows.join(","))
}

pub(crate) fn eval(alpha: &Selector, m: &Arc<ModuleRep>) -> Result<Submodule, String> {
    alpha.eval(m).map_err(|e| format!("{} failed to evaluate: {e}", alpha.name()))
}

/// `α(L)` pushed into `M` for a submodule `L ⊆ M`.
pub(crate) fn eval_on_sub(alpha: &Selector, m: &Arc<ModuleRep>, l: &Submodule) -> Result<Submodule, String> {
    let sm = m.submodule_as_module(l);
    Ok(sm.inclusion.image(&eval(alpha, &sm.module)?))
}

fn check_item(alpha: &Selector, prop: Property, b: &Battery, i: usize) -> ItemResult {
    let a = alpha.name();
    match prop {
        Property::OrderPreserving | Property::Hereditary | Property::Cohereditary => {
            let pr = &b.pairs[i];
            let m = b.module(pr.module);
            let mname = &b.modules[pr.module].name;
            let am = eval(alpha, m)?;
            match prop {
                Property::OrderPreserving => {
                    let al = eval_on_sub(alpha, m, &pr.sub)?;
                    if !al.is_submodule_of(&am) {
                        return Err(format!(
                            "{}, L = {}: {a}(L) = {} is not inside {a}(M) = {}",
                            fmt_module(mname, m),
                            fmt_sub(&pr.sub),
                            fmt_sub(&al),
                            fmt_sub(&am)
                        ));
                    }
                }
                Property::Hereditary => {
                    let al = eval_on_sub(alpha, m, &pr.sub)?;
                    let cap = pr.sub.intersection(&am);
                    if al != cap {
                        return Err(format!(
                            "{}, L = {}: {a}(L) = {} but L ∩ {a}(M) = {}",
                            fmt_module(mname, m),
                            fmt_sub(&pr.sub),
                            fmt_sub(&al),
                            fmt_sub(&cap)
                        ));
                    }
                }
                _ => {
                    let q = m.quotient(&pr.sub);
                    let lhs = eval(alpha, &q.module)?;
                    let rhs = q.proj.image(&am);
                    if lhs != rhs {
                        return Err(format!(
                            "{}, L = {}: {a}(M/L) = {} but (L + {a}(M))/L = {}",
                            fmt_module(mname, m),
                            fmt_sub(&pr.sub),
                            fmt_sub(&lhs),
                            fmt_sub(&rhs)
                        ));
                    }
                }
            }
        }
        Property::SurjectionFunctorial | Property::Functorial | Property::IsoEquivariant => {
            let f = &b.maps[i];
            let applies = match prop {
                Property::SurjectionFunctorial => f.is_surjective(),
                Property::IsoEquivariant => f.is_surjective() && f.is_injective(),
                _ => true,
            };
            if !applies {
                return Ok(());
            }
            let src = eval(alpha, f.map.source())?;
            let tgt = eval(alpha, f.map.target())?;
            let img = f.map.image(&src);
            let ok = if prop == Property::IsoEquivariant {
                img == tgt
            } else {
                img.is_submodule_of(&tgt)
            };
            if !ok {
                return Err(format!(
                    "{}: g({a}(M)) = {} vs {a}(N) = {}",
                    fmt_map(&f.name, &f.map),
                    fmt_sub(&img),
                    fmt_sub(&tgt)
                ));
            }
        }
        Property::Idempotent | Property::CoIdempotent => {
            let m = b.module(i);
            let mname = &b.modules[i].name;
            let am = eval(alpha, m)?;
            if prop == Property::Idempotent {
                let aam = eval_on_sub(alpha, m, &am)?;
                if aam != am {
                    return Err(format!(
                        "{}: {a}(M) = {} but {a}({a}(M)) = {}",
                        fmt_module(mname, m),
                        fmt_sub(&am),
                        fmt_sub(&aam)
                    ));
                }
            } else {
                let q = m.quotient(&am);
                let v = eval(alpha, &q.module)?;
                if !v.is_zero() {
                    return Err(format!(
                        "{}: {a}(M/{a}(M)) = {} is nonzero",
                        fmt_module(mname, m),
                        fmt_sub(&v)
                    ));
                }
            }
        }
    }
    Ok(())
}

fn domain_len(prop: Property, b: &Battery) -> usize {
    match prop.family() {
        Family::Module => b.modules.len(),
        Family::Map => b.maps.len(),
        Family::Pair => b.pairs.len(),
        Family::Triple => b.triples.len(),
    }
}

/// Checks `prop` for `α` on every relevant battery item; FAIL carries the
/// first violation.
pub fn check_property(alpha: &Selector, prop: Property, b: &Battery) -> PropertyVerdict {
    let n = domain_len(prop, b);
    let outcome = match first_failure(n, |i| check_item(alpha, prop, b, i)) {
        None => Outcome::Pass,
        Some((index, detail)) => Outcome::Fail(Witness {
            clause: format!("{} {}", prop.family().name(), index),
            index,
            detail,
        }),
    };
    PropertyVerdict {
        name: format!("{}: {}", alpha.name(), prop),
        outcome,
        checked: n,
    }
}

/// Re-runs the single item named by a FAIL witness; `true` if it still fails.
pub fn replay_property(alpha: &Selector, prop: Property, b: &Battery, w: &Witness) -> bool {
    w.index < domain_len(prop, b) && check_item(alpha, prop, b, w.index).is_err()
}
