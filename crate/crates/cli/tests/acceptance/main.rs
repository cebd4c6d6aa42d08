//! Acceptance criteria 1-8, one PASS/FAIL line each. Criteria run
//! sequentially so the runtime limits measure one workload at a time.

mod oracle;

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use smilelab::algebra::{Algebra, FreeExtension, Ideal};
use smilelab::duality::smile;
use smilelab::format::load_algebra;
use smilelab::lab::Lab;
use smilelab::modrep::ModuleRep;
use smilelab::proplab::{
    builtin_env, check_property, verify_theorem, Battery, Context, Property, Sizes, TheoremId, BUILTINS,
};
use smilelab::residual::{rho, sigma, test_ideal, TestIdealOptions};
use smilelab::selectors::{self, Selector};

type Outcome = Result<String, String>;

const ALGEBRAS: [&str; 3] = ["f2_x2", "f2_x3", "f2_xy"];

fn data() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn algebra(name: &str) -> Arc<Algebra> {
    load_algebra(&data().join(format!("algebras/{name}.toml"))).expect("shipped algebra loads")
}

fn battery(name: &str) -> Arc<Battery> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<Battery>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().unwrap().get(name) {
        return b.clone();
    }
    let b = Arc::new(Battery::generate(&algebra(name), 1, Sizes::Default));
    cache.lock().unwrap().insert(name.to_string(), b.clone());
    b
}

fn builtins(b: &Battery) -> Result<Vec<(String, Selector)>, String> {
    let env = builtin_env(b, Lab::exact());
    BUILTINS
        .iter()
        .map(|(e, _)| env.compile(e).map(|s| (e.to_string(), s)).map_err(|err| format!("{e}: {err}")))
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn eval(s: &Selector, m: &Arc<ModuleRep>) -> Result<oracle::Set, String> {
    s.eval(m)
        .map(|x| oracle::elements_of(&x, m.p()))
        .map_err(|e| format!("{}: {e}", s.name()))
}

fn as_ideal(r: &Algebra, set: &oracle::Set) -> Ideal {
    r.ideal(&set.iter().cloned().collect::<Vec<_>>())
}

fn theorems_pass(ids: &[TheoremId]) -> Result<usize, String> {
    let mut items = 0;
    for name in ALGEBRAS {
        let ctx = Context::new(battery(name), Lab::exact());
        for &t in ids {
            let v = verify_theorem(t, &ctx);
            if let Some(w) = v.witness() {
                return Err(format!("{t} on {name}: [{} #{}] {}", w.clause, w.index, w.detail));
            }
            items += v.checked;
        }
    }
    Ok(items)
}

// ---------------------------------------------------------------- criteria

fn involution() -> Outcome {
    let start = Instant::now();
    let lab = Lab::exact();
    let mut evaluations = 0;
    for name in ALGEBRAS {
        let b = battery(name);
        ensure(b.modules.len() >= 12 && b.maps.len() >= 40, || {
            format!("{name}: battery too small ({})", b.summary())
        })?;
        for (expr, alpha) in builtins(&b)? {
            let twice = smile(&lab, &smile(&lab, &alpha));
            for (i, m) in b.module_arcs().iter().enumerate() {
                ensure(eval(&twice, m)? == eval(&alpha, m)?, || {
                    format!("{name}: smile(smile({expr})) differs on module {i} ({})", b.modules[i].name)
                })?;
                evaluations += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}, limit 10 s"))?;
    Ok(format!("{evaluations} module evaluations, {} builtins", BUILTINS.len()))
}

fn trace_torsion() -> Outcome {
    let lab = Lab::exact();
    let mut report = Vec::new();
    for name in ALGEBRAS {
        let b = battery(name);
        let r = b.algebra.clone();
        let mods = b.module_arcs();
        let sources: Vec<usize> = (0..mods.len()).filter(|&i| (1..=3).contains(&mods[i].dim())).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut pairs = 0;
        for _ in 0..24 {
            let l = mods[sources[rng.gen_range(0..sources.len())]].clone();
            let count = rng.gen_range(1..=2);
            let s: Vec<Vec<u32>> = (0..count).map(|_| (0..l.dim()).map(|_| rng.gen_range(0..r.p())).collect()).collect();
            let tr = selectors::trace(&lab, "L", l.clone(), s.clone()).map_err(|e| e.to_string())?;
            let tm = selectors::tom(&lab, "L", l.clone(), s.clone()).map_err(|e| e.to_string())?;
            let dual = smile(&lab, &tr);
            for (i, n) in mods.iter().enumerate() {
                ensure(eval(&dual, n)? == eval(&tm, n)?, || {
                    format!("{name}: smile(trace) != tom on module {i}, L of dim {}, S = {s:?}", l.dim())
                })?;
            }
            pairs += 1;
        }
        // Anchors: trace(R/I) = (0 :_N I) and tom(R/I) = IN, against brute force.
        let ideals = oracle::ideals(&r);
        for i in &ideals {
            let cyc = Arc::new(ModuleRep::cyclic(&r, &as_ideal(&r, i)));
            let full = cyc.full_submodule().basis();
            let tr = selectors::trace(&lab, "R/I", cyc.clone(), full.clone()).map_err(|e| e.to_string())?;
            let tm = selectors::tom(&lab, "R/I", cyc.clone(), full).map_err(|e| e.to_string())?;
            for (k, n) in mods.iter().enumerate() {
                ensure(eval(&tr, n)? == oracle::annihilated(n, i), || {
                    format!("{name}: trace(R/I) != (0 :_N I) on module {k}, I = {i:?}")
                })?;
                ensure(eval(&tm, n)? == oracle::ideal_times(n, i), || {
                    format!("{name}: tom(R/I) != IN on module {k}, I = {i:?}")
                })?;
                ensure(eval(&smile(&lab, &tr), n)? == eval(&tm, n)?, || {
                    format!("{name}: smile(trace(R/I)) != tom(R/I) on module {k}")
                })?;
            }
        }
        report.push(format!("{name}: {pairs} (S, L) pairs, {} ideal anchors", ideals.len()));
    }
    Ok(report.join("; "))
}

fn test_ideal_chain() -> Outcome {
    let lab = Lab::exact();
    let mut report = Vec::new();
    for name in ALGEBRAS {
        let b = battery(name);
        let r = b.algebra.clone();
        let env = builtin_env(&b, lab);
        // Gorenstein iff the socle (0 :_R m) is one-dimensional.
        let m: Vec<Vec<u32>> = (1..r.dim()).map(|i| r.basis_element(i)).collect();
        let gorenstein =
            oracle::annihilated(&ModuleRep::regular(&r), &oracle::ideal_generated(&r, &m)).len() == r.p() as usize;
        let mut star_ideal = String::new();
        for expr in ["socle", "mul(m)", "star", "tom(k)", "tom(E)"] {
            let alpha = env.compile(expr).map_err(|e| e.to_string())?;
            let functorial = check_property(&alpha, Property::Functorial, &b).passed();
            ensure(functorial, || format!("{name}: {expr} not functorial on the battery"))?;
            let rep = test_ideal(&lab, &alpha, &b.module_arcs(), functorial, &TestIdealOptions::default())
                .map_err(|e| e.to_string())?;
            let text = rep.render(&r);
            ensure(rep.hypotheses_verified && rep.passed(), || format!("{name}: {expr}\n{text}"))?;
            ensure(rep.via_smile == rep.via_ann_e, || format!("{name}: {expr}: via_smile != via_annE"))?;
            ensure(rep.gorenstein == gorenstein, || format!("{name}: Gorenstein flag {}", rep.gorenstein))?;
            let clause = rep.relations.iter().any(|rel| rel.name.contains("Gorenstein") && rel.holds);
            ensure(clause == gorenstein, || format!("{name}: {expr}: Gorenstein clause asserted = {clause}"))?;
            if expr == "star" {
                star_ideal = r.format_ideal(&rep.via_smile);
                let tau = oracle::frobenius_test_ideal(&r);
                let got = oracle::span(r.p(), r.dim(), &rep.via_smile.basis());
                ensure(got == tau, || format!("{name}: star test ideal {got:?}, brute force {tau:?}"))?;
                if name == "f2_x2" {
                    let x: oracle::Set = [vec![0, 0], vec![0, 1]].into_iter().collect();
                    ensure(got == x, || format!("test ideal of star over F_2[x]/(x^2) is {got:?}, not (x)"))?;
                }
            }
        }
        report.push(format!("{name}: star test ideal {}", star_ideal));
    }
    Ok(report.join("; "))
}

fn round_trips() -> Outcome {
    let lab = Lab::exact();
    let mut evaluations = 0;
    for name in ALGEBRAS {
        let b = battery(name);
        for (expr, alpha) in builtins(&b)? {
            let back = sigma(&rho(&lab, &alpha));
            for (i, m) in b.module_arcs().iter().enumerate() {
                ensure(eval(&back, m)? == eval(&alpha, m)?, || {
                    format!("{name}: sigma(rho({expr})) differs on module {i}")
                })?;
                evaluations += 1;
            }
        }
    }
    let items = theorems_pass(&[TheoremId::T1, TheoremId::T2, TheoremId::T5])?;
    Ok(format!("T1, T2, T5 PASS over {items} items; {evaluations} direct round trips"))
}

fn duality_exchange() -> Outcome {
    let items = theorems_pass(&[TheoremId::T9, TheoremId::T10, TheoremId::T12])?;
    let lab = Lab::exact();
    let mut anchors = 0;
    for name in ALGEBRAS {
        let b = battery(name);
        let r = b.algebra.clone();
        let n = r.dim() + 1;
        for i in oracle::ideals(&r) {
            let ideal = as_ideal(&r, &i);
            let h0 = selectors::h0(&r, "I", ideal.clone());
            let adic = selectors::adic_kernel(&r, "I", ideal);
            let dual = smile(&lab, &h0);
            let power = oracle::ideal_power(&r, &i, n);
            for (k, m) in b.module_arcs().iter().enumerate() {
                let a = eval(&adic, m)?;
                ensure(eval(&dual, m)? == a, || format!("{name}: smile(h0(I)) != adic(I) on module {k}, I = {i:?}"))?;
                ensure(a == oracle::ideal_times(m, &power), || format!("{name}: adic(I) != I^n M on module {k}"))?;
                ensure(eval(&h0, m)? == oracle::annihilated(m, &power), || {
                    format!("{name}: h0(I) != (0 :_M I^n) on module {k}")
                })?;
                anchors += 1;
            }
        }
        // Dichotomy: a nilpotent element saturates to a set containing 0,
        // a unit 1 + e1 saturates to units only.
        let nil = vec![r.basis_element(1)];
        let unit = vec![r.one().iter().zip(&nil[0]).map(|(a, b)| (a + b) % r.p()).collect()];
        ensure(oracle::power(&r, &nil[0], r.dim() as u64) == r.zero(), || "e1 is not nilpotent".into())?;
        let sat_nil = lab.saturate(&r, &nil);
        let sat_unit = lab.saturate(&r, &unit);
        ensure(sat_nil.contains_zero() && !sat_nil.units_only(), || format!("{name}: nil saturation flags"))?;
        ensure(sat_unit.units_only() && !sat_unit.contains_zero(), || format!("{name}: unit saturation flags"))?;
        let cases = [
            (selectors::tto(&lab, &r, "nil", &nil), true),
            (selectors::dv(&lab, &r, "nil", &nil), false),
            (selectors::tto(&lab, &r, "units", &unit), false),
            (selectors::dv(&lab, &r, "units", &unit), true),
        ];
        for (s, everything) in &cases {
            for m in b.module_arcs() {
                let want = if *everything {
                    oracle::all_vectors(m.p(), m.dim()).into_iter().collect()
                } else {
                    oracle::span(m.p(), m.dim(), &[])
                };
                ensure(eval(s, &m)? == want, || format!("{name}: {} is not degenerate", s.name()))?;
            }
        }
    }
    Ok(format!("T9, T10, T12 PASS over {items} items; {anchors} h0/adic comparisons"))
}

fn base_change() -> Outcome {
    let lab = Lab::exact();
    let mut report = Vec::new();
    for name in ALGEBRAS {
        let b = battery(name);
        let r = b.algebra.clone();
        let ctx = Context::new(b.clone(), lab);
        let v = verify_theorem(TheoremId::T7, &ctx);
        if let Some(w) = v.witness() {
            return Err(format!("T7 on {name}: [{} #{}] {}", w.clause, w.index, w.detail));
        }
        ensure(v.checked >= 10, || format!("{name}: only {} triples", v.checked))?;
        let ext = FreeExtension::dual_numbers(&r);
        ensure(ext.rank() == 2, || format!("{name}: R[y]/(y^2) has rank {}", ext.rank()))?;
        let reg = Arc::new(ModuleRep::regular(&r));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in b.module_arcs().iter().filter(|m| m.dim() <= 4) {
            let bc = lab.base_change(m, &ext);
            ensure(bc.module.dim() == 2 * m.dim(), || format!("{name}: S (x) M has the wrong dimension"))?;
            // With B = R, tr_X(M) = (X) M.
            let x: Vec<u32> = (0..r.dim()).map(|_| rng.gen_range(0..r.p())).collect();
            let tr = selectors::trace(&lab, "R", reg.clone(), vec![x.clone()]).map_err(|e| e.to_string())?;
            ensure(eval(&tr, m)? == oracle::ideal_times(m, &oracle::ideal_generated(&r, &[x.clone()])), || {
                format!("{name}: trace of R at {x:?} is not (x)M")
            })?;
        }
        report.push(format!("{name}: {} triples", v.checked));
    }
    Ok(report.join("; "))
}

fn run_verify() -> (Duration, std::process::Output) {
    let suite = data().join("suites/suite-default.toml");
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_smilelab"))
        .args(["verify", "--format", "machine"])
        .arg(&suite)
        .output()
        .expect("smilelab runs");
    (start.elapsed(), out)
}

static FIRST_REPORT: Mutex<Option<Vec<u8>>> = Mutex::new(None);

fn mutation_suite() -> Outcome {
    let (elapsed, out) = run_verify();
    *FIRST_REPORT.lock().unwrap() = Some(out.stdout.clone());
    ensure(out.status.code() == Some(0), || {
        format!("verify exited with {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr))
    })?;
    ensure(elapsed < Duration::from_secs(60), || format!("verify took {elapsed:?}, limit 60 s"))?;
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let mut rows_seen = 0;
    for run in json["report"]["runs"].as_array().ok_or("no runs")? {
        let checks = run["checks"].as_array().ok_or("no checks")?;
        let m = checks
            .iter()
            .find_map(|c| c["mutations"].as_object())
            .ok_or("run without a mutation suite")?;
        let rows = m["rows"].as_array().ok_or("no rows")?;
        ensure(rows.len() >= 8, || format!("only {} mutations shipped", rows.len()))?;
        let mut covered: Vec<String> = Vec::new();
        for row in rows {
            let failed = row["failed"].as_array().ok_or("no failed list")?;
            ensure(!failed.is_empty(), || format!("mutant {} survived", row["mutation"]))?;
            covered.extend(failed.iter().filter_map(|t| t.as_str()).map(String::from));
        }
        for t in TheoremId::ALL {
            ensure(covered.contains(&t.to_string()), || format!("{t} never fails under a mutation"))?;
        }
        ensure(m["survivors"].as_array().is_some_and(Vec::is_empty), || "survivors reported".into())?;
        rows_seen = rows.len();
    }
    Ok(format!("{rows_seen} mutations per run, all killed, every theorem covered; verify took {:.1} s", elapsed.as_secs_f64()))
}

fn determinism() -> Outcome {
    let first = match FIRST_REPORT.lock().unwrap().clone() {
        Some(f) => f,
        None => run_verify().1.stdout,
    };
    let second = run_verify().1.stdout;
    ensure(!first.is_empty() && first == second, || {
        format!("reports differ ({} vs {} bytes)", first.len(), second.len())
    })?;
    Ok(format!("two verify runs produced identical {}-byte reports", first.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("involution suite", involution),
        ("trace-torsion duality", trace_torsion),
        ("test ideal chain", test_ideal_chain),
        ("rho/sigma round trips and correspondence", round_trips),
        ("duality-exchange suite", duality_exchange),
        ("free base change trace equality", base_change),
        ("mutation suite", mutation_suite),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS [{secs:.1} s] {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {} ({name}): FAIL [{secs:.1} s] {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria PASS", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
