//! One registered check per theorem, each a list of clauses quantified over
//! battery families. A clause item fails with a human-readable detail.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{FreeExtension, MultSet};
use crate::duality::{dual_map, dual_module, perp_in_dual, smile, smile_via_quotient};
use crate::lab::Lab;
use crate::modrep::{ModMap, ModuleRep, Quotient, Submodule};
use crate::residual::{
    closure, colon_closure, divisible_closure, identity_closure, indiscrete_closure, interior, module_closure,
    plus_closure, rho, sigma, test_ideal, torsion_closure, direct_sum_closure_holds, ResidualOp, TestIdealOptions,
};
use crate::selectors::{self, Env, Selector, Value};

use super::battery::Battery;
use super::props::{
    check_property, eval, eval_on_sub, first_failure, fmt_module, fmt_sub, ItemResult, Outcome, Property,
    PropertyVerdict, Witness,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    T9,
    T10,
    T11,
    T12,
}

impl TheoremId {
    pub const ALL: [TheoremId; 12] = [
        TheoremId::T1,
        TheoremId::T2,
        TheoremId::T3,
        TheoremId::T4,
        TheoremId::T5,
        TheoremId::T6,
        TheoremId::T7,
        TheoremId::T8,
        TheoremId::T9,
        TheoremId::T10,
        TheoremId::T11,
        TheoremId::T12,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::T1 => "T1",
            TheoremId::T2 => "T2",
            TheoremId::T3 => "T3",
            TheoremId::T4 => "T4",
            TheoremId::T5 => "T5",
            TheoremId::T6 => "T6",
            TheoremId::T7 => "T7",
            TheoremId::T8 => "T8",
            TheoremId::T9 => "T9",
            TheoremId::T10 => "T10",
            TheoremId::T11 => "T11",
            TheoremId::T12 => "T12",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            TheoremId::T1 => "rho/sigma round trips",
            TheoremId::T2 => "selector/residual property correspondence",
            TheoremId::T3 => "smile involution and property exchange",
            TheoremId::T4 => "two descriptions of the smile dual agree",
            TheoremId::T5 => "closure/interior duality",
            TheoremId::T6 => "preradicals and closures commute with direct sums",
            TheoremId::T7 => "trace commutes with free base change",
            TheoremId::T8 => "smile of trace is module torsion",
            TheoremId::T9 => "hereditary dual to cohereditary",
            TheoremId::T10 => "finite limits exchanged by smile",
            TheoremId::T11 => "test ideal chain",
            TheoremId::T12 => "torsion and divisibility",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown theorem `{s}` (expected T1..T12)"))
    }
}

/// Built-in selector expressions checked on every algebra, with whether each
/// is a preradical. `units` is bound to `{1+e1}` and `nil` to `{e1}`.
pub const BUILTINS: [(&str, bool); 24] = [
    ("zero", true),
    ("id", true),
    ("socle", true),
    ("star", true),
    ("mul(m)", true),
    ("ann(m)", true),
    ("mul(m^2)", true),
    ("ann(m^2)", true),
    ("trace(k)", true),
    ("tom(k)", true),
    ("trace(E)", true),
    ("tom(E)", true),
    ("trace(R;S=m)", true),
    ("h0(m)", true),
    ("adic(m)", true),
    ("tto(units)", true),
    ("dv(units)", true),
    ("tto(nil)", true),
    ("dv(nil)", true),
    ("dimgate(2)", false),
    ("dimcap(1)", false),
    ("fin(socle)", true),
    ("join(socle,mul(m))", true),
    ("meet(socle,mul(m))", true),
];

#[derive(Debug, Clone)]
pub struct Builtin {
    pub expr: String,
    pub selector: Selector,
    pub functorial: bool,
}

/// `e1`, the first non-identity basis element.
fn e1(alg: &crate::algebra::Algebra) -> Vec<u32> {
    alg.basis_element(1.min(alg.dim() - 1))
}

/// The environment the built-ins are compiled in.
pub fn builtin_env(battery: &Battery, lab: Lab) -> Env {
    let alg = &battery.algebra;
    let mut env = Env::with_lab(alg, lab);
    let one_plus = alg.add(&alg.one(), &e1(alg));
    env.bind("units", Value::Vectors(vec![one_plus]));
    env.bind("nil", Value::Vectors(vec![e1(alg)]));
    env
}

/// Everything a theorem check needs: the battery, the lab the operations
/// route through, and the built-ins compiled under that lab.
pub struct Context {
    pub battery: Arc<Battery>,
    pub lab: Lab,
    pub env: Env,
    pub builtins: Vec<Builtin>,
    pub compile_errors: Vec<String>,
    ext: FreeExtension,
    surj_pairs: Vec<(usize, usize)>,
    map_pairs: Vec<(usize, usize)>,
    sum_pairs: Vec<(usize, usize)>,
    closure_pairs: Vec<(usize, usize)>,
    verdicts: Mutex<HashMap<(String, Property), bool>>,
}

fn spread<T: Clone>(items: Vec<T>, cap: usize) -> Vec<T> {
    if items.len() <= cap {
        return items;
    }
    let step = items.len().div_ceil(cap);
    items.into_iter().step_by(step).collect()
}

impl Context {
    pub fn new(battery: Arc<Battery>, lab: Lab) -> Context {
        let env = builtin_env(&battery, lab);
        let mut builtins = Vec::new();
        let mut compile_errors = Vec::new();
        for (expr, functorial) in BUILTINS {
            match env.compile(expr) {
                Ok(selector) => builtins.push(Builtin {
                    expr: expr.to_string(),
                    selector,
                    functorial,
                }),
                Err(e) => compile_errors.push(format!("{expr}: {e}")),
            }
        }
        let b = &battery;
        let mut surj_pairs = Vec::new();
        let mut map_pairs = Vec::new();
        for (fi, f) in b.maps.iter().enumerate() {
            for (pi, pr) in b.pairs.iter().enumerate() {
                if pr.module == f.source {
                    map_pairs.push((fi, pi));
                    if f.is_surjective() {
                        surj_pairs.push((fi, pi));
                    }
                }
            }
        }
        let mut sum_pairs = Vec::new();
        for i in 0..b.modules.len() {
            for j in i..b.modules.len() {
                let (di, dj) = (b.module(i).dim(), b.module(j).dim());
                if di > 0 && dj > 0 && di + dj <= 6 {
                    sum_pairs.push((i, j));
                }
            }
        }
        let mut closure_pairs = Vec::new();
        for i in 0..b.pairs.len() {
            for j in i..b.pairs.len() {
                let (di, dj) = (b.module(b.pairs[i].module).dim(), b.module(b.pairs[j].module).dim());
                if di > 0 && dj > 0 && di + dj <= 6 {
                    closure_pairs.push((i, j));
                }
            }
        }
        Context {
            ext: FreeExtension::dual_numbers(&battery.algebra),
            surj_pairs: spread(surj_pairs, 600),
            map_pairs: spread(map_pairs, 600),
            sum_pairs: spread(sum_pairs, 60),
            closure_pairs: spread(closure_pairs, 60),
            battery,
            lab,
            env,
            builtins,
            compile_errors,
            verdicts: Mutex::new(HashMap::new()),
        }
    }

    fn b(&self) -> &Battery {
        &self.battery
    }

    /// Memoized battery verdict for a property of a selector.
    fn holds(&self, s: &Selector, p: Property) -> bool {
        let key = (s.name().to_string(), p);
        if let Some(&v) = self.verdicts.lock().expect("verdict lock").get(&key) {
            return v;
        }
        let v = check_property(s, p, &self.battery).passed();
        self.verdicts.lock().expect("verdict lock").insert(key, v);
        v
    }
}

struct Clause<'a> {
    name: String,
    len: usize,
    check: Box<dyn Fn(usize) -> ItemResult + Sync + Send + 'a>,
}

fn clause<'a, F>(name: impl Into<String>, len: usize, f: F) -> Clause<'a>
where
    F: Fn(usize) -> ItemResult + Sync + Send + 'a,
{
    Clause {
        name: name.into(),
        len,
        check: Box::new(f),
    }
}

// ---------------------------------------------------------------- helpers

fn res(r: &ResidualOp, l: &Submodule, m: &Arc<ModuleRep>) -> Result<Submodule, String> {
    r.apply(l, m).map_err(|e| format!("{} failed: {e}", r.name()))
}

fn same(what: &str, a: &Submodule, b: &Submodule) -> ItemResult {
    if a == b {
        Ok(())
    } else {
        Err(format!("{what}: {} vs {}", fmt_sub(a), fmt_sub(b)))
    }
}

/// Two statements that must have the same truth value on this item.
fn agree(left: &str, a: bool, right: &str, b: bool, context: String) -> ItemResult {
    if a == b {
        Ok(())
    } else {
        Err(format!("{context}: `{left}` is {a} but `{right}` is {b}"))
    }
}

/// The map `M/L → N/L'` induced by `f: M → N` with `f(L) ⊆ L'`.
fn induced(q1: &Quotient, q2: &Quotient, f: &ModMap) -> ModMap {
    let m = q2
        .proj
        .matrix()
        .mul(f.matrix())
        .and_then(|x| x.mul(&q1.section))
        .expect("composable shapes");
    ModMap::new_unchecked(q1.module.clone(), q2.module.clone(), m)
}

/// `L^r_M` for `L ⊆ M ⊆ N`, computed with ambient `M` and pushed into `N`.
fn res_in_middle(r: &ResidualOp, n: &Arc<ModuleRep>, l: &Submodule, m: &Submodule) -> Result<Submodule, String> {
    let sm = n.submodule_as_module(m);
    let l_in_m = sm.inclusion.preimage(l);
    Ok(sm.inclusion.image(&res(r, &l_in_m, &sm.module)?))
}

fn describe_triple(b: &Battery, i: usize) -> String {
    let t = &b.triples[i];
    format!(
        "{}, L = {}, M = {}",
        fmt_module(&b.modules[t.module].name, b.module(t.module)),
        fmt_sub(&t.inner),
        fmt_sub(&t.middle)
    )
}

fn describe_pair(b: &Battery, i: usize) -> String {
    let p = &b.pairs[i];
    format!("{}, L = {}", fmt_module(&b.modules[p.module].name, b.module(p.module)), fmt_sub(&p.sub))
}

fn describe_module(b: &Battery, i: usize) -> String {
    fmt_module(&b.modules[i].name, b.module(i))
}

/// `α(M) = β(M)` on every battery module.
fn selectors_agree<'a>(name: String, ctx: &'a Context, a: Selector, b: Selector) -> Clause<'a> {
    let bat = ctx.b();
    clause(name, bat.modules.len(), move |i| {
        let m = bat.module(i);
        same(
            &format!("{}: {} vs {}", describe_module(bat, i), a.name(), b.name()),
            &eval(&a, m)?,
            &eval(&b, m)?,
        )
    })
}

// ---------------------------------------------------------------- T1

fn t1(ctx: &Context) -> Vec<Clause<'_>> {
    let bat = ctx.b();
    let lab = ctx.lab;
    let alg = &bat.algebra;
    let mut out = Vec::new();
    for bi in &ctx.builtins {
        let a = bi.selector.clone();
        let r = rho(&lab, &a);
        out.push(selectors_agree(format!("sigma(rho({})) = {}", bi.expr, bi.expr), ctx, sigma(&r), a.clone()));
        out.push(clause(format!("rho({}) is extensive", bi.expr), bat.pairs.len(), move |i| {
            let p = &bat.pairs[i];
            let m = bat.module(p.module);
            let v = res(&r, &p.sub, m)?;
            if p.sub.is_submodule_of(&v) {
                Ok(())
            } else {
                Err(format!("{}: L^r = {}", describe_pair(bat, i), fmt_sub(&v)))
            }
        }));
    }
    let exact_units = alg.saturate(&[alg.add(&alg.one(), &e1(alg))]);
    let exact_nil = alg.saturate(&[e1(alg)]);
    let k = Arc::new(ModuleRep::residue_field(alg));
    let e = crate::duality::injective_hull(alg).expect("local algebra");
    let oracles: Vec<(&str, ResidualOp)> = vec![
        ("zero", identity_closure()),
        ("id", indiscrete_closure()),
        ("mul(m)", plus_closure("m", alg.maximal_ideal())),
        ("ann(m)", colon_closure("m", alg.maximal_ideal())),
        ("mul(m^2)", plus_closure("m^2", alg.m_power_ideal(2))),
        ("ann(m^2)", colon_closure("m^2", alg.m_power_ideal(2))),
        ("tto(units)", torsion_closure("units", exact_units.clone())),
        ("dv(units)", divisible_closure("units", exact_units)),
        ("tto(nil)", torsion_closure("nil", exact_nil.clone())),
        ("dv(nil)", divisible_closure("nil", exact_nil)),
        ("tom(k)", module_closure("k", k.clone(), k.full_submodule().basis())),
        ("tom(E)", module_closure("E", e.clone(), e.full_submodule().basis())),
    ];
    for (expr, oracle) in oracles {
        let o = oracle.clone();
        out.push(clause(format!("rho(sigma({})) = {}", o.name(), o.name()), bat.pairs.len(), move |i| {
            let p = &bat.pairs[i];
            let m = bat.module(p.module);
            let round = rho(&lab, &sigma(&o));
            same(&format!("{}: rho(sigma(r)) vs r", describe_pair(bat, i)), &res(&round, &p.sub, m)?, &res(&o, &p.sub, m)?)
        }));
        if let Some(bi) = ctx.builtins.iter().find(|b| b.expr == expr) {
            let r = rho(&lab, &bi.selector);
            let o = oracle.clone();
            out.push(clause(format!("rho({expr}) = {}", o.name()), bat.pairs.len(), move |i| {
                let p = &bat.pairs[i];
                let m = bat.module(p.module);
                same(&format!("{}: rho vs closed form", describe_pair(bat, i)), &res(&r, &p.sub, m)?, &res(&o, &p.sub, m)?)
            }));
        }
    }
    out
}

// ---------------------------------------------------------------- T2

fn t2(ctx: &Context) -> Vec<Clause<'_>> {
    let bat = ctx.b();
    let lab = ctx.lab;
    let mut out = Vec::new();
    for bi in &ctx.builtins {
        let a = bi.selector.clone();
        let r = rho(&lab, &a);
        let x = bi.expr.clone();

        // (1) alpha order-preserving <-> r order-preserving on ambient modules.
        let (a1, r1) = (a.clone(), r.clone());
        out.push(clause(format!("(1) {x}"), bat.triples.len(), move |i| {
            let t = &bat.triples[i];
            let n = bat.module(t.module);
            let lhs = res_in_middle(&r1, n, &t.inner, &t.middle)?.is_submodule_of(&res(&r1, &t.inner, n)?);
            let q = n.quotient(&t.inner);
            let ml = q.proj.image(&t.middle);
            let rhs = eval_on_sub(&a1, &q.module, &ml)?.is_submodule_of(&eval(&a1, &q.module)?);
            agree("L^r_M <= L^r_N", lhs, "alpha(M/L) <= alpha(N/L)", rhs, describe_triple(bat, i))
        }));

        // (2) r order-preserving on submodules <-> alpha surjection-functorial <-> r surjection-functorial.
        let (a2, r2) = (a.clone(), r.clone());
        out.push(clause(format!("(2a-2b) {x}"), bat.triples.len(), move |i| {
            let t = &bat.triples[i];
            let n = bat.module(t.module);
            let lhs = res(&r2, &t.inner, n)?.is_submodule_of(&res(&r2, &t.middle, n)?);
            let (q1, q2) = (n.quotient(&t.inner), n.quotient(&t.middle));
            let g = induced(&q1, &q2, &ModMap::identity(n));
            let rhs = g.image(&eval(&a2, &q1.module)?).is_submodule_of(&eval(&a2, &q2.module)?);
            agree("L^r_N <= M^r_N", lhs, "alpha(N/L) -> alpha(N/M)", rhs, describe_triple(bat, i))
        }));
        let (a3, r3) = (a.clone(), r.clone());
        out.push(clause(format!("(2c-2b) {x}"), ctx.surj_pairs.len(), move |i| {
            let (fi, pi) = ctx.surj_pairs[i];
            let f = &bat.maps[fi];
            let l = &bat.pairs[pi].sub;
            let (m, p) = (f.map.source(), f.map.target());
            let fl = f.map.image(l);
            let lhs = f.map.image(&res(&r3, l, m)?).is_submodule_of(&res(&r3, &fl, p)?);
            let (q1, q2) = (m.quotient(l), p.quotient(&fl));
            let g = induced(&q1, &q2, &f.map);
            let rhs = g.image(&eval(&a3, &q1.module)?).is_submodule_of(&eval(&a3, &q2.module)?);
            agree(
                "pi(L^r_M) <= pi(L)^r_P",
                lhs,
                "alpha(M/L) -> alpha(P/pi(L))",
                rhs,
                format!("map {}, L = {}", f.name, fmt_sub(l)),
            )
        }));
        let (a4, r4) = (a.clone(), r.clone());
        out.push(clause(format!("(2) verdicts {x}"), 1, move |_| {
            let va = first_failure(bat.triples.len(), |i| {
                let t = &bat.triples[i];
                let n = bat.module(t.module);
                if res(&r4, &t.inner, n)?.is_submodule_of(&res(&r4, &t.middle, n)?) {
                    Ok(())
                } else {
                    Err(String::new())
                }
            })
            .is_none();
            let vb = ctx.holds(&a4, Property::SurjectionFunctorial);
            let vc = first_failure(ctx.surj_pairs.len(), |i| {
                let (fi, pi) = ctx.surj_pairs[i];
                let f = &bat.maps[fi];
                let l = &bat.pairs[pi].sub;
                let fl = f.map.image(l);
                if f.map.image(&res(&r4, l, f.map.source())?).is_submodule_of(&res(&r4, &fl, f.map.target())?) {
                    Ok(())
                } else {
                    Err(String::new())
                }
            })
            .is_none();
            if va == vb && vb == vc {
                Ok(())
            } else {
                Err(format!(
                    "battery insufficiency: order-preserving on submodules {va}, alpha surjection-functorial {vb}, r surjection-functorial {vc}"
                ))
            }
        }));

        // (3) alpha co-idempotent <-> r idempotent.
        let (a5, r5) = (a.clone(), r.clone());
        out.push(clause(format!("(3) {x}"), bat.pairs.len(), move |i| {
            let p = &bat.pairs[i];
            let m = bat.module(p.module);
            let lr = res(&r5, &p.sub, m)?;
            let lhs = res(&r5, &lr, m)? == lr;
            let q = m.quotient(&p.sub);
            let aq = eval(&a5, &q.module)?;
            let qq = q.module.quotient(&aq);
            let rhs = eval(&a5, &qq.module)?.is_zero();
            agree("(L^r)^r = L^r", lhs, "alpha(Q/alpha(Q)) = 0", rhs, describe_pair(bat, i))
        }));

        // (4) alpha idempotent <-> L^r_{L^r_M} = L^r_M.
        let (a6, r6) = (a, r);
        out.push(clause(format!("(4) {x}"), bat.pairs.len(), move |i| {
            let p = &bat.pairs[i];
            let m = bat.module(p.module);
            let lr = res(&r6, &p.sub, m)?;
            let lhs = res_in_middle(&r6, m, &p.sub, &lr)? == lr;
            let q = m.quotient(&p.sub);
            let aq = eval(&a6, &q.module)?;
            let rhs = eval_on_sub(&a6, &q.module, &aq)? == aq;
            agree("L^r_{L^r_M} = L^r_M", lhs, "alpha(alpha(Q)) = alpha(Q)", rhs, describe_pair(bat, i))
        }));
    }
    out
}

// ---------------------------------------------------------------- T3

fn t3(ctx: &Context) -> Vec<Clause<'_>> {
    let bat = ctx.b();
    let lab = ctx.lab;
    let mut out = Vec::new();
    for bi in &ctx.builtins {
        let a = bi.selector.clone();
        let s = smile(&lab, &a);
        let x = bi.expr.clone();
        out.push(selectors_agree(format!("smile(smile({x})) = {x}"), ctx, smile(&lab, &s), a.clone()));

        let (a1, s1) = (a.clone(), s.clone());
        out.push(clause(format!("{x} surjection-functorial <-> smile order-preserving"), bat.pairs.len(), move |i| {
            let p = &bat.pairs[i];
            let m = bat.module(p.module);
            let lhs = eval_on_sub(&s1, m, &p.sub)?.is_submodule_of(&eval(&s1, m)?);
            let sm = m.submodule_as_module(&p.sub);
            let d = dual_map(&sm.inclusion);
            let rhs = d.image(&eval(&a1, d.source())?).is_submodule_of(&eval(&a1, d.target())?);
            agree("smile(L) <= smile(M)", lhs, "alpha along M^v -> L^v", rhs, describe_pair(bat, i))
        }));
        let (a2, s2) = (a.clone(), s.clone());
        out.push(clause(format!("{x} order-preserving <-> smile surjection-functorial"), bat.pairs.len(), move |i| {
            let p = &bat.pairs[i];
            let m = bat.module(p.module);
            let lhs = eval_on_sub(&a2, m, &p.sub)?.is_submodule_of(&eval(&a2, m)?);
            let sm = m.submodule_as_module(&p.sub);
            let d = dual_map(&sm.inclusion);
            let rhs = d.image(&eval(&s2, d.source())?).is_submodule_of(&eval(&s2, d.target())?);
            agree("alpha(L) <= alpha(M)", lhs, "smile along M^v -> L^v", rhs, describe_pair(bat, i))
        }));
        let (a3, s3) = (a, s);
        out.push(clause(format!("{x} idempotent <-> smile co-idempotent"), bat.modules.len(), move |i| {
            let m = bat.module(i);
            let sm = eval(&s3, m)?;
            let q = m.quotient(&sm);
            let lhs = eval(&s3, &q.module)?.is_zero();
            let d = dual_module(m);
            let ad = eval(&a3, &d)?;
            let rhs = eval_on_sub(&a3, &d, &ad)? == ad;
            agree("smile(M/smile(M)) = 0", lhs, "alpha(alpha(M^v)) = alpha(M^v)", rhs, describe_module(bat, i))
        }));
    }
    out
}

// ---------------------------------------------------------------- T4

fn t4(ctx: &Context) -> Vec<Clause<'_>> {
    let bat = ctx.b();
    let lab = ctx.lab;
    let mut out = Vec::new();
    for bi in &ctx.builtins {
        let a = bi.selector.clone();
        let s = smile(&lab, &a);
        out.push(clause(format!("smile({}) two ways", bi.expr), bat.modules.len(), move |i| {
            let m = bat.module(i);
            let direct = eval(&s, m)?;
            let via = smile_via_quotient(&lab, &a, m).map_err(|e| e.to_string())?;
            same(&format!("{}: common kernel vs (M^v/alpha(M^v))^v", describe_module(bat, i)), &direct, &via)
        }));
    }
    out
}

// ---------------------------------------------------------------- T5

fn t5(ctx: &Context) -> Vec<Clause<'_>> {
    let bat = ctx.b();
    let lab = ctx.lab;
    let mut out = Vec::new();
    for bi in &ctx.builtins {
        let a = bi.selector.clone();
        let r = rho(&lab, &a);
        let j = interior(&lab, &r);
        let x = bi.expr.clone();

        let (r1, j1) = (r.clone(), j.clone());
        out.push(clause(format!("(1) {x}"), bat.triples.len(), move |i| {
            let t = &bat.triples[i];
            let n = bat.module(t.module);
            let lhs = res(&r1, &t.inner, n)?.is_submodule_of(&res(&r1, &t.middle, n)?);
            let (q1, q2) = (n.quotient(&t.inner), n.quotient(&t.middle));
            let g = dual_map(&induced(&q1, &q2, &ModMap::identity(n)));
            let rhs = g.image(&eval(&j1, g.source())?).is_submodule_of(&eval(&j1, g.target())?);
            agree("L^r_N <= M^r_N", lhs, "i(r) along (N/M)^v -> (N/L)^v", rhs, describe_triple(bat, i))
        }));
        let (r2, j2) = (r.clone(), j.clone());
        out.push(clause(format!("(2) {x}"), bat.pairs.len(), move |i| {
            let p = &bat.pairs[i];
            let m = bat.module(p.module);
            let lr = res(&r2, &p.sub, m)?;
            let lhs = res(&r2, &lr, m)? == lr;
            let dq = dual_module(&m.quotient(&p.sub).module);
            let jd = eval(&j2, &dq)?;
            let rhs = eval_on_sub(&j2, &dq, &jd)? == jd;
            agree("r idempotent at (L, M)", lhs, "i(r) idempotent at (M/L)^v", rhs, describe_pair(bat, i))
        }));
        let (r3, j3) = (r.clone(), j.clone());
        out.push(clause(format!("(4) ambient {x}"), bat.triples.len(), move |i| {
            let t = &bat.triples[i];
            let n = bat.module(t.module);
            let lhs = res_in_middle(&r3, n, &t.inner, &t.middle)?.is_submodule_of(&res(&r3, &t.inner, n)?);
            let q = n.quotient(&t.inner);
            let sm = q.module.submodule_as_module(&q.proj.image(&t.middle));
            let d = dual_map(&sm.inclusion);
            let rhs = d.image(&eval(&j3, d.source())?).is_submodule_of(&eval(&j3, d.target())?);
            agree("L^r_M <= L^r_N", lhs, "i(r) along (N/L)^v ->> (M/L)^v", rhs, describe_triple(bat, i))
        }));
        let (a4, r4, j4) = (a.clone(), r.clone(), j.clone());
        out.push(clause(format!("(4) functorial {x}"), 1, move |_| {
            let is_closure = ctx.holds(&a4, Property::SurjectionFunctorial) && ctx.holds(&a4, Property::CoIdempotent);
            if !is_closure {
                return Ok(());
            }
            let vr = first_failure(ctx.map_pairs.len(), |i| {
                let (fi, pi) = ctx.map_pairs[i];
                let f = &bat.maps[fi];
                let l = &bat.pairs[pi].sub;
                let lhs = f.map.image(&res(&r4, l, f.map.source())?);
                if lhs.is_submodule_of(&res(&r4, &f.map.image(l), f.map.target())?) {
                    Ok(())
                } else {
                    Err(String::new())
                }
            })
            .is_none();
            let vj = ctx.holds(&j4, Property::Functorial);
            if vr == vj {
                Ok(())
            } else {
                Err(format!("battery insufficiency: r functorial {vr}, i(r) functorial {vj}"))
            }
        }));
        let r5 = r.clone();
        out.push(clause(format!("c(i(r)) = r for {x}"), bat.pairs.len(), move |i| {
            let p = &bat.pairs[i];
            let m = bat.module(p.module);
            let back = closure(&lab, &interior(&lab, &r5));
            same(&format!("{}: c(i(r)) vs r", describe_pair(bat, i)), &res(&back, &p.sub, m)?, &res(&r5, &p.sub, m)?)
        }));
        out.push(selectors_agree(format!("i(c(j)) = j for {x}"), ctx, interior(&lab, &closure(&lab, &a)), a));
    }
    out
}

// ---------------------------------------------------------------- T6

fn t6(ctx: &Context) -> Vec<Clause<'_>> {
    let bat = ctx.b();
    let lab = ctx.lab;
    let mut out = Vec::new();
    for bi in ctx.builtins.iter().filter(|b| b.functorial) {
        let a = bi.selector.clone();
        out.push(clause(format!("{}(M+N) = {}(M)+{}(N)", bi.expr, bi.expr, bi.expr), ctx.sum_pairs.len(), move |i| {
            let (u, v) = ctx.sum_pairs[i];
            let (m, n) = (bat.module(u), bat.module(v));
            let ds = lab.direct_sum(m, n);
            let whole = eval(&a, &ds.module)?;
            let parts = ds.sum_of(&eval(&a, m)?, &eval(&a, n)?);
            same(
                &format!("{} + {}", bat.modules[u].name, bat.modules[v].name),
                &whole,
                &parts,
            )
        }));
        let r = rho(&lab, &bi.selector);
        out.push(clause(format!("rho({}) commutes with direct sums", bi.expr), ctx.closure_pairs.len(), move |i| {
            let (p, q) = ctx.closure_pairs[i];
            let (pp, qq) = (&bat.pairs[p], &bat.pairs[q]);
            let ok = direct_sum_closure_holds(
                &lab,
                &r,
                (&pp.sub, bat.module(pp.module)),
                (&qq.sub, bat.module(qq.module)),
            )
            .map_err(|e| e.to_string())?;
            if ok {
                Ok(())
            } else {
                Err(format!("{} and {}", describe_pair(bat, p), describe_pair(bat, q)))
            }
        }));
    }
    out
}

// ---------------------------------------------------------------- T7

/// `(X, B, M)` with `X ⊆ B` given by battery module indices.
fn base_change_triples(ctx: &Context) -> Vec<(usize, Vec<Vec<u32>>, usize)> {
    let bat = ctx.b();
    let p = bat.algebra.p();
    let mut rng = ChaCha8Rng::seed_from_u64(bat.seed ^ 0x7417);
    let small: Vec<usize> = (0..bat.modules.len())
        .filter(|&i| (1..=3).contains(&bat.module(i).dim()))
        .collect();
    let mut out = Vec::new();
    for (n, &bi) in small.iter().enumerate() {
        let mi = small[(n * 5 + 1) % small.len()];
        let b = bat.module(bi);
        let xs = if n % 2 == 0 {
            b.full_submodule().basis()
        } else {
            vec![(0..b.dim()).map(|_| rng.gen_range(0..p)).collect()]
        };
        out.push((bi, xs, mi));
        if out.len() >= 12 {
            break;
        }
    }
    out
}

fn t7(ctx: &Context) -> Vec<Clause<'_>> {
    let bat = ctx.b();
    let lab = ctx.lab;
    let triples = base_change_triples(ctx);
    vec![clause("trace and base change", triples.len(), move |i| {
        let (bi, xs, mi) = &triples[i];
        let (b, m) = (bat.module(*bi), bat.module(*mi));
        let ext = &ctx.ext;
        let context = format!(
            "B = {}, X = {:?}, M = {}",
            bat.modules[*bi].name, xs, bat.modules[*mi].name
        );
        let bm = lab.base_change(m, ext);
        let bb = lab.base_change(b, ext);
        if bm.module.dim() != ext.rank() * m.dim() || bb.module.dim() != ext.rank() * b.dim() {
            return Err(format!(
                "{context}: base change has dimension {} (expected rank {} times {})",
                bm.module.dim(),
                ext.rank(),
                m.dim()
            ));
        }
        let tr = selectors::trace(&lab, "B", b.clone(), xs.clone()).map_err(|e| e.to_string())?;
        let t = eval(&tr, m)?;
        let images: Vec<Vec<u32>> = t
            .basis()
            .iter()
            .map(|z| bm.unit_map.mul_vec(z).expect("unit map shape"))
            .collect();
        let lhs = bm.module.generated(&images).map_err(|e| e.to_string())?;
        let mut xprime = Vec::new();
        for x in xs {
            let ux = bb.unit_map.mul_vec(x).expect("unit map shape");
            for s in ext.basis() {
                xprime.push(bb.module.act(s).mul_vec(&ux).expect("action shape"));
            }
        }
        let tr_s = selectors::trace(&lab, "B⊗S", bb.module.clone(), xprime).map_err(|e| e.to_string())?;
        let rhs = eval(&tr_s, &bm.module)?;
        same(&format!("{context}: image of tr(M)⊗S vs tr_(X', B⊗S)(M⊗S)"), &lhs, &rhs)
    })]
}

// ---------------------------------------------------------------- T8

/// Sampled `(S, L)` with `L` a battery module.
fn trace_sources(ctx: &Context) -> Vec<(usize, Vec<Vec<u32>>)> {
    let bat = ctx.b();
    let p = bat.algebra.p();
    let mut rng = ChaCha8Rng::seed_from_u64(bat.seed ^ 0x7ace);
    let mut out = Vec::new();
    for i in 0..bat.modules.len() {
        let l = bat.module(i);
        if l.dim() == 0 || l.dim() > 4 {
            continue;
        }
        out.push((i, l.full_submodule().basis()));
        out.push((i, vec![(0..l.dim()).map(|_| rng.gen_range(0..p)).collect()]));
        if out.len() >= 24 {
            break;
        }
    }
    out
}

fn t8(ctx: &Context) -> Vec<Clause<'_>> {
    let bat = ctx.b();
    let lab = ctx.lab;
    let alg = bat.algebra.clone();
    let nm = bat.modules.len();
    let mut sources = Vec::new();
    for (li, s) in trace_sources(ctx) {
        let l = bat.module(li).clone();
        let name = &bat.modules[li].name;
        match (
            selectors::trace(&lab, name, l.clone(), s.clone()),
            selectors::tom(&lab, name, l, s.clone()),
        ) {
            (Ok(tr), Ok(tm)) => sources.push((format!("L = {name}, S = {s:?}"), smile(&lab, &tr), tm)),
            (Err(e), _) | (_, Err(e)) => sources.push((format!("L = {name}: {e}"), selectors::zero(), selectors::identity())),
        }
    }
    let mut out = vec![clause("smile(trace(S,L)) = tom(S,L)", sources.len() * nm, move |i| {
        let (label, st, tm) = &sources[i / nm];
        let n = i % nm;
        let m = bat.module(n);
        same(&format!("{label}, N = {}", describe_module(bat, n)), &eval(st, m)?, &eval(tm, m)?)
    })];
    let mut anchors = Vec::new();
    for ideal in alg.enumerate_ideals(10_000).expect("small algebra") {
        let cyc = Arc::new(ModuleRep::cyclic(&alg, &ideal));
        let basis = cyc.full_submodule().basis();
        let label = alg.format_ideal(&ideal);
        let tr = selectors::trace(&lab, "R/I", cyc.clone(), basis.clone()).map_err(|e| e.to_string());
        let tm = selectors::tom(&lab, "R/I", cyc, basis).map_err(|e| e.to_string());
        anchors.push((label, ideal, tr, tm));
    }
    let anchors = Arc::new(anchors);
    let na = anchors.len();
    let a2 = anchors.clone();
    out.push(clause("trace(R/I) = (0 :_N I)", na * nm, move |i| {
        let (label, ideal, tr, _) = &anchors[i / nm];
        let n = bat.module(i % nm);
        let tr = tr.as_ref().map_err(|e| e.clone())?;
        same(
            &format!("I = {label}, N = {}", describe_module(bat, i % nm)),
            &eval(tr, n)?,
            &n.annihilated_by(ideal),
        )
    }));
    out.push(clause("tom(R/I) = IN", na * nm, move |i| {
        let (label, ideal, _, tm) = &a2[i / nm];
        let n = bat.module(i % nm);
        let tm = tm.as_ref().map_err(|e| e.clone())?;
        same(
            &format!("I = {label}, N = {}", describe_module(bat, i % nm)),
            &eval(tm, n)?,
            &n.ideal_times_module(ideal),
        )
    }));
    out
}

// ---------------------------------------------------------------- T9

fn t9(ctx: &Context) -> Vec<Clause<'_>> {
    let bat = ctx.b();
    let lab = ctx.lab;
    let mut out = Vec::new();
    for bi in ctx.builtins.iter().filter(|b| b.functorial) {
        let a = bi.selector.clone();
        let s = smile(&lab, &a);
        out.push(clause(format!("smile({}) hereditary <-> cohereditary", bi.expr), bat.pairs.len(), move |i| {
            let p = &bat.pairs[i];
            let m = bat.module(p.module);
            let lhs = eval_on_sub(&s, m, &p.sub)? == p.sub.intersection(&eval(&s, m)?);
            let d = dual_module(m);
            let perp = perp_in_dual(&p.sub);
            let q = d.quotient(&perp);
            let rhs = eval(&a, &q.module)? == q.proj.image(&eval(&a, &d)?);
            agree(
                "smile(L) = L ∩ smile(M)",
                lhs,
                "alpha(M^v/L^perp) = image of alpha(M^v)",
                rhs,
                describe_pair(bat, i),
            )
        }));
    }
    out
}

// ---------------------------------------------------------------- T10

fn t10(ctx: &Context) -> Vec<Clause<'_>> {
    let bat = ctx.b();
    let lab = ctx.lab;
    let alg = bat.algebra.clone();
    let mut out = Vec::new();
    let bs = &ctx.builtins;
    for (ia, x) in bs.iter().enumerate() {
        for y in &bs[ia + 1..] {
            let (a, b) = (x.selector.clone(), y.selector.clone());
            let (sa, sb) = (smile(&lab, &a), smile(&lab, &b));
            let join = selectors::join(&lab, &a, &b);
            let meet = selectors::meet(&lab, &a, &b);
            out.push(selectors_agree(
                format!("smile(join({},{})) = meet of smiles", x.expr, y.expr),
                ctx,
                smile(&lab, &join),
                selectors::meet(&lab, &sa, &sb),
            ));
            out.push(selectors_agree(
                format!("smile(meet({},{})) = join of smiles", x.expr, y.expr),
                ctx,
                smile(&lab, &meet),
                selectors::join(&lab, &sa, &sb),
            ));
            let (a2, b2, sa2, sb2) = (a.clone(), b.clone(), sa.clone(), sb.clone());
            out.push(clause(format!("order reversal {} {}", x.expr, y.expr), 1, move |_| {
                for (lo, hi, slo, shi) in [(&a2, &b2, &sa2, &sb2), (&b2, &a2, &sb2, &sa2)] {
                    let below = (0..bat.modules.len()).all(|i| match (lo.eval(bat.module(i)), hi.eval(bat.module(i))) {
                        (Ok(u), Ok(v)) => u.is_submodule_of(&v),
                        _ => false,
                    });
                    if !below {
                        continue;
                    }
                    if let Some((i, d)) = first_failure(bat.modules.len(), |i| {
                        let m = bat.module(i);
                        if eval(shi, m)?.is_submodule_of(&eval(slo, m)?) {
                            Ok(())
                        } else {
                            Err(String::new())
                        }
                    }) {
                        return Err(format!(
                            "{} <= {} but smile({}) not >= smile({}) on {} {d}",
                            lo.name(),
                            hi.name(),
                            lo.name(),
                            hi.name(),
                            describe_module(bat, i)
                        ));
                    }
                }
                Ok(())
            }));
            let comparable = {
                let le = |u: &Selector, v: &Selector| {
                    (0..bat.modules.len()).all(|i| match (u.eval(bat.module(i)), v.eval(bat.module(i))) {
                        (Ok(p), Ok(q)) => p.is_submodule_of(&q),
                        _ => false,
                    })
                };
                le(&a, &b) || le(&b, &a)
            };
            let both_functorial = x.functorial && y.functorial;
            let mut carried: Vec<(Property, Selector, &'static str)> = Vec::new();
            for p in [Property::OrderPreserving, Property::SurjectionFunctorial, Property::Functorial] {
                carried.push((p, join.clone(), "join"));
                carried.push((p, meet.clone(), "meet"));
            }
            carried.push((Property::Hereditary, meet.clone(), "meet"));
            if both_functorial && comparable {
                carried.push((Property::Hereditary, join.clone(), "join"));
            }
            if both_functorial {
                carried.push((Property::Cohereditary, join.clone(), "join"));
            }
            for (p, lim, kind) in carried {
                let (a3, b3) = (a.clone(), b.clone());
                out.push(clause(format!("{kind}({},{}) keeps {p}", x.expr, y.expr), 1, move |_| {
                    if !(ctx.holds(&a3, p) && ctx.holds(&b3, p)) {
                        return Ok(());
                    }
                    let v = check_property(&lim, p, bat);
                    match v.outcome {
                        Outcome::Pass => Ok(()),
                        Outcome::Fail(w) => Err(format!("both have {p}, {} does not: {}", lim.name(), w.detail)),
                    }
                }));
            }
        }
    }
    for ideal in alg.enumerate_ideals(10_000).expect("small algebra") {
        let label = alg.format_ideal(&ideal);
        out.push(selectors_agree(
            format!("smile(h0({label})) = adic({label})"),
            ctx,
            smile(&lab, &selectors::h0(&alg, &label, ideal.clone())),
            selectors::adic_kernel(&alg, &label, ideal),
        ));
    }
    out
}

// ---------------------------------------------------------------- T11

fn t11(ctx: &Context) -> Vec<Clause<'_>> {
    let bat = ctx.b();
    let lab = ctx.lab;
    let functorial: Vec<&Builtin> = ctx.builtins.iter().filter(|b| b.functorial).collect();
    let modules = bat.module_arcs();
    let alg = bat.algebra.clone();
    vec![clause("test ideal chain", functorial.len(), move |i| {
        let bi = functorial[i];
        let rep = test_ideal(&lab, &bi.selector, &modules, true, &TestIdealOptions::default()).map_err(|e| e.to_string())?;
        if rep.passed() {
            Ok(())
        } else {
            let failed: Vec<&str> = rep.relations.iter().filter(|r| !r.holds).map(|r| r.name).collect();
            Err(format!("{}: {} fails\n{}", bi.expr, failed.join("; "), rep.render(&alg)))
        }
    })]
}

// ---------------------------------------------------------------- T12

fn t12(ctx: &Context) -> Vec<Clause<'_>> {
    let bat = ctx.b();
    let lab = ctx.lab;
    let alg = bat.algebra.clone();
    let one_plus = alg.add(&alg.one(), &e1(&alg));
    let families: Vec<(&str, Vec<Vec<u32>>)> = vec![
        ("one", vec![alg.one()]),
        ("units", vec![one_plus.clone()]),
        ("nil", vec![e1(&alg)]),
        ("mixed", vec![one_plus, e1(&alg)]),
    ];
    let mut out = Vec::new();
    for (label, gens) in families {
        let w: MultSet = alg.saturate(&gens);
        let tto = selectors::tto(&lab, &alg, label, &gens);
        let dv = selectors::dv(&lab, &alg, label, &gens);
        let lab_w = lab.saturate(&alg, &gens);
        let (alg1, w1) = (alg.clone(), w.clone());
        out.push(clause(format!("W = {label}: saturation and dichotomy"), 1, move |_| {
            if !lab_w.is_saturated(&alg1) {
                return Err(format!("saturation of {label} is not multiplicatively closed"));
            }
            if w1.units_only() == w1.contains_zero() {
                return Err(format!(
                    "W = {label} is neither all units nor contains 0 (units {}, zero {})",
                    w1.units_only(),
                    w1.contains_zero()
                ));
            }
            Ok(())
        }));
        // W^{-1}R is R when W consists of units and 0 when 0 ∈ W.
        let loc = Arc::new(if w.units_only() { ModuleRep::regular(&alg) } else { ModuleRep::zero(&alg) });
        let tr = selectors::trace(&lab, "W^-1R", loc.clone(), loc.full_submodule().basis()).expect("vectors of loc");
        let mult = |m: &Arc<ModuleRep>, x: &[u32]| m.act(x);
        let (tto1, w2) = (tto.clone(), w.clone());
        out.push(clause(format!("W = {label} (1) torsion-free iff tto = 0"), bat.modules.len(), move |i| {
            let m = bat.module(i);
            let tf = w2.elements().iter().all(|x| mult(m, x).rank() == m.dim());
            agree("torsion-free", tf, "tto(M) = 0", eval(&tto1, m)?.is_zero(), describe_module(bat, i))
        }));
        let (dv1, w3) = (dv.clone(), w.clone());
        out.push(clause(format!("W = {label} (2) divisible iff dv = M"), bat.modules.len(), move |i| {
            let m = bat.module(i);
            let div = w3.elements().iter().all(|x| mult(m, x).rank() == m.dim());
            agree("divisible", div, "dv(M) = M", eval(&dv1, m)?.is_full(), describe_module(bat, i))
        }));
        let (tr1, loc1) = (tr.clone(), loc.clone());
        out.push(clause(format!("W = {label} (3) h-divisible iff trace = M"), bat.modules.len(), move |i| {
            let m = bat.module(i);
            let hom = loc1.hom(m).map_err(|e| e.to_string())?;
            let hdiv = if loc1.dim() == 0 {
                m.dim() == 0
            } else {
                let one = loc1.algebra().one();
                let images: Vec<Vec<u32>> = hom.basis_maps().iter().map(|f| f.apply(&one)).collect();
                crate::exactlin::Subspace::span(m.p(), m.dim(), &images).map_err(|e| e.to_string())?.is_full()
            };
            agree("h-divisible", hdiv, "trace(M) = M", eval(&tr1, m)?.is_full(), describe_module(bat, i))
        }));
        let (tr2, dv2) = (tr.clone(), dv.clone());
        out.push(clause(format!("W = {label} (4) trace <= dv"), bat.modules.len(), move |i| {
            let m = bat.module(i);
            let (t, d) = (eval(&tr2, m)?, eval(&dv2, m)?);
            if t.is_submodule_of(&d) {
                Ok(())
            } else {
                Err(format!("{}: trace {} not in dv {}", describe_module(bat, i), fmt_sub(&t), fmt_sub(&d)))
            }
        }));
        let mut traces = Vec::new();
        for x in w.elements() {
            let cyc = Arc::new(ModuleRep::cyclic(&alg, &alg.ideal(&[x.clone()])));
            traces.push(selectors::trace(&lab, "R/(w)", cyc.clone(), cyc.full_submodule().basis()).expect("vectors of R/(w)"));
        }
        let (tto2, w4) = (tto.clone(), w.clone());
        out.push(clause(format!("W = {label} (5) tto = union of trace(R/(w))"), bat.modules.len(), move |i| {
            let m = bat.module(i);
            let mut via_trace = m.zero_submodule();
            for t in &traces {
                via_trace = via_trace.sum(&eval(t, m)?);
            }
            let mut via_kernels = m.zero_submodule();
            for x in w4.elements() {
                via_kernels = via_kernels.sum(&m.submodule(mult(m, x).kernel()).map_err(|e| e.to_string())?);
            }
            let t = eval(&tto2, m)?;
            same(&format!("{}: tto vs union of trace(R/(w))", describe_module(bat, i)), &t, &via_trace)?;
            same(&format!("{}: tto vs union of (0 :_M w)", describe_module(bat, i)), &t, &via_kernels)
        }));
        for (sel, props) in [
            (dv.clone(), vec![Property::Idempotent, Property::Functorial]),
            (tto.clone(), vec![Property::Idempotent, Property::Functorial, Property::CoIdempotent]),
        ] {
            for p in props {
                let s = sel.clone();
                out.push(clause(format!("W = {label} ({}) {} {p}", if s.name().starts_with("dv") { 6 } else { 7 }, s.name()), 1, move |_| {
                    match check_property(&s, p, bat).outcome {
                        Outcome::Pass => Ok(()),
                        Outcome::Fail(w) => Err(w.detail),
                    }
                }));
            }
        }
        let (dv3, tr3) = (dv.clone(), tr.clone());
        out.push(clause(format!("W = {label} (8) dv = trace"), bat.modules.len(), move |i| {
            let m = bat.module(i);
            same(&format!("{}: dv vs trace(W^-1R)", describe_module(bat, i)), &eval(&dv3, m)?, &eval(&tr3, m)?)
        }));
        out.push(selectors_agree(format!("W = {label} (9) tto = smile(dv)"), ctx, tto.clone(), smile(&lab, &dv)));
        let (dv4, w5) = (dv, w);
        out.push(clause(format!("W = {label} (10) dv = intersection of wM"), bat.modules.len(), move |i| {
            let m = bat.module(i);
            let mut acc = m.full_submodule();
            for x in w5.elements() {
                acc = acc.intersection(&m.submodule(mult(m, x).image()).map_err(|e| e.to_string())?);
            }
            same(&format!("{}: dv vs intersection of wM", describe_module(bat, i)), &eval(&dv4, m)?, &acc)
        }));
    }
    out
}

// ---------------------------------------------------------------- dispatch

fn clauses(id: TheoremId, ctx: &Context) -> Vec<Clause<'_>> {
    let mut out = Vec::new();
    if !ctx.compile_errors.is_empty() {
        let errs = ctx.compile_errors.clone();
        out.push(clause("built-ins compile", 1, move |_| Err(errs.join("; "))));
    }
    out.extend(match id {
        TheoremId::T1 => t1(ctx),
        TheoremId::T2 => t2(ctx),
        TheoremId::T3 => t3(ctx),
        TheoremId::T4 => t4(ctx),
        TheoremId::T5 => t5(ctx),
        TheoremId::T6 => t6(ctx),
        TheoremId::T7 => t7(ctx),
        TheoremId::T8 => t8(ctx),
        TheoremId::T9 => t9(ctx),
        TheoremId::T10 => t10(ctx),
        TheoremId::T11 => t11(ctx),
        TheoremId::T12 => t12(ctx),
    });
    out
}

/// Runs every clause of a theorem; FAIL reports the first failing clause in
/// registration order and its first failing item.
pub fn verify_theorem(id: TheoremId, ctx: &Context) -> PropertyVerdict {
    let cs = clauses(id, ctx);
    let checked = cs.iter().map(|c| c.len).sum();
    let failures: Vec<Option<(usize, String)>> =
        cs.par_iter().map(|c| first_failure(c.len, |i| (c.check)(i))).collect();
    let outcome = cs
        .iter()
        .zip(failures)
        .find_map(|(c, f)| {
            f.map(|(index, detail)| Witness {
                clause: c.name.clone(),
                index,
                detail,
            })
        })
        .map_or(Outcome::Pass, Outcome::Fail);
    PropertyVerdict {
        name: format!("{}: {}", id, id.title()),
        outcome,
        checked,
    }
}

/// Re-runs the single clause item named by a witness; `true` if it still fails.
pub fn replay_theorem(id: TheoremId, ctx: &Context, w: &Witness) -> bool {
    clauses(id, ctx)
        .iter()
        .find(|c| c.name == w.clause)
        .is_some_and(|c| w.index < c.len && (c.check)(w.index).is_err())
}
