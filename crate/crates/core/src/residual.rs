//! Residual operations on pairs `L ⊆ M`, the `ρ/σ` correspondence with
//! selectors, closure/interior correspondents and test ideals.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{Ideal, MultSet};
use crate::duality::{injective_hull, smile, DualityError};
use crate::exactlin::{EnumerationBudget, FpMatrix};
use crate::lab::Lab;
use crate::modrep::{ModuleError, ModuleRep, Submodule};
use crate::selectors::{finitistic, Selector, SelectorError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResidualError {
    #[error("submodule lives in dimension {found}, module has dimension {expected}")]
    WrongAmbient { expected: usize, found: usize },
    #[error("subspace is not a submodule (not closed under e_{0})")]
    NotSubmodule(usize),
    #[error(transparent)]
    Selector(#[from] SelectorError),
    #[error(transparent)]
    Budget(#[from] EnumerationBudget),
    #[error(transparent)]
    Duality(#[from] DualityError),
}

pub type Result<T> = std::result::Result<T, ResidualError>;

type PairFn = dyn Fn(&Submodule, &Arc<ModuleRep>) -> Result<Submodule> + Send + Sync;

#[derive(Clone)]
enum Kind {
    /// `L ↦ π^{-1}(α(M/L))`.
    FromSelector(Lab, Selector),
    /// A closed formula, used as an independent oracle.
    Direct(Arc<PairFn>),
}

/// An extensive operation `(L, M) ↦ L^r_M`.
#[derive(Clone)]
pub struct ResidualOp {
    name: String,
    kind: Kind,
}

impl fmt::Debug for ResidualOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ResidualOp({})", self.name)
    }
}

impl ResidualOp {
    /// An operation given by a formula in `(L, M)`.
    pub fn direct<F>(name: impl Into<String>, f: F) -> ResidualOp
    where
        F: Fn(&Submodule, &Arc<ModuleRep>) -> Result<Submodule> + Send + Sync + 'static,
    {
        ResidualOp {
            name: name.into(),
            kind: Kind::Direct(Arc::new(f)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The selector this operation was built from, if any.
    pub fn selector(&self) -> Option<&Selector> {
        match &self.kind {
            Kind::FromSelector(_, s) => Some(s),
            Kind::Direct(_) => None,
        }
    }

    /// `L^r_M`.
    pub fn apply(&self, l: &Submodule, m: &Arc<ModuleRep>) -> Result<Submodule> {
        if l.ambient_dim() != m.dim() {
            return Err(ResidualError::WrongAmbient {
                expected: m.dim(),
                found: l.ambient_dim(),
            });
        }
        if let Some(g) = m.invariance_failure(l.space()) {
            return Err(ResidualError::NotSubmodule(g));
        }
        match &self.kind {
            Kind::FromSelector(lab, alpha) => {
                let q = lab.quotient(m, l);
                let selected = alpha.eval(&q.module)?;
                Ok(q.proj.preimage(&selected))
            }
            Kind::Direct(f) => f(l, m),
        }
    }
}

/// `ρ(α)`.
pub fn rho(lab: &Lab, alpha: &Selector) -> ResidualOp {
    ResidualOp {
        name: format!("rho({})", alpha.name()),
        kind: Kind::FromSelector(*lab, alpha.clone()),
    }
}

/// `σ(r): M ↦ 0^r_M`.
pub fn sigma(r: &ResidualOp) -> Selector {
    let r2 = r.clone();
    Selector::new(format!("sigma({})", r.name), "zero submodule under a residual operation", move |m| {
        r2.apply(&m.zero_submodule(), m).map_err(|e| match e {
            ResidualError::Selector(s) => s,
            other => SelectorError::Invalid(other.to_string()),
        })
    })
}

/// `i(r) = σ(r)^⌣`.
pub fn interior(lab: &Lab, r: &ResidualOp) -> Selector {
    smile(lab, &sigma(r)).renamed(format!("i({})", r.name))
}

/// `c(j) = ρ(j^⌣)`.
pub fn closure(lab: &Lab, j: &Selector) -> ResidualOp {
    let mut r = rho(lab, &smile(lab, j));
    r.name = format!("c({})", j.name());
    r
}

// ---------------------------------------------------------------- oracles

pub fn identity_closure() -> ResidualOp {
    ResidualOp::direct("L", |l, _| Ok(l.clone()))
}

pub fn indiscrete_closure() -> ResidualOp {
    ResidualOp::direct("M", |_, m| Ok(m.full_submodule()))
}

/// `L + IM`.
pub fn plus_closure(label: &str, ideal: Ideal) -> ResidualOp {
    ResidualOp::direct(format!("L+({label})M"), move |l, m| Ok(l.sum(&m.ideal_times_module(&ideal))))
}

/// `(L :_M I)`.
pub fn colon_closure(label: &str, ideal: Ideal) -> ResidualOp {
    ResidualOp::direct(format!("(L:{label})"), move |l, m| Ok(m.colon(l, &ideal)))
}

/// `⋃_{w ∈ W} (L :_M w)`.
pub fn torsion_closure(label: &str, w: MultSet) -> ResidualOp {
    ResidualOp::direct(format!("tto-cl({label})"), move |l, m| {
        let mut acc = l.clone();
        for x in w.elements() {
            acc = acc.sum(&m.colon_element(l, x));
        }
        Ok(acc)
    })
}

/// `⋂_{w ∈ W} (L + wM)`.
pub fn divisible_closure(label: &str, w: MultSet) -> ResidualOp {
    ResidualOp::direct(format!("dv-cl({label})"), move |l, m| {
        let mut acc = m.full_submodule();
        for x in w.elements() {
            let wm = m.submodule(m.act(x).image()).expect("wM is a submodule");
            acc = acc.intersection(&l.sum(&wm));
        }
        Ok(acc)
    })
}

/// Module closure `L^{cl}_M = {u : s ⊗ u ∈ im(Q ⊗ L → Q ⊗ M) for all s ∈ S}`,
/// computed directly in `Q ⊗ M`.
pub fn module_closure(label: &str, q: Arc<ModuleRep>, s: Vec<Vec<u32>>) -> ResidualOp {
    ResidualOp::direct(format!("cl({label})"), move |l, m| {
        let t = q.tensor(m).map_err(SelectorError::from)?;
        let id_q = FpMatrix::identity(m.p(), q.dim()).map_err(ModuleError::from).map_err(SelectorError::from)?;
        let incl = id_q.kron(l.space().basis()).map_err(ModuleError::from).map_err(SelectorError::from)?;
        let image = t.proj.mul(&incl).map_err(ModuleError::from).map_err(SelectorError::from)?.image();
        let mut acc = m.full_submodule();
        for v in &s {
            let pre = image
                .preimage(&t.left_slice(v))
                .map_err(ModuleError::from)
                .map_err(SelectorError::from)?;
            acc = acc.intersection(&m.submodule(pre).map_err(SelectorError::from)?);
        }
        Ok(acc)
    })
}

// ---------------------------------------------------------------- direct sums and separation

/// Whether `U^r_L ⊕ V^r_M = (U ⊕ V)^r_{L ⊕ M}`.
pub fn direct_sum_closure_holds(
    lab: &Lab,
    r: &ResidualOp,
    (u, l): (&Submodule, &Arc<ModuleRep>),
    (v, m): (&Submodule, &Arc<ModuleRep>),
) -> Result<bool> {
    let ds = lab.direct_sum(l, m);
    let left = ds.sum_of(&r.apply(u, l)?, &r.apply(v, m)?);
    let uv = ds.sum_of(u, v);
    if let Some(g) = ds.module.invariance_failure(uv.space()) {
        return Err(ResidualError::NotSubmodule(g));
    }
    Ok(left == r.apply(&uv, &ds.module)?)
}

/// Certificate that `Q/JQ` is `m`-adically separated: `m^N (Q/JQ) = 0` at
/// the nilpotency index `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationCertificate {
    pub nilpotency_index: usize,
    pub holds: bool,
}

pub fn separated_quotient_check(q: &Arc<ModuleRep>, j: &Ideal) -> SeparationCertificate {
    let alg = q.algebra();
    let n = alg.nilpotency_index();
    let jq = q.ideal_times_module(j);
    let quot = q.quotient(&jq);
    SeparationCertificate {
        nilpotency_index: n,
        holds: quot.module.ideal_times_module(&alg.m_power_ideal(n)).is_zero(),
    }
}

// ---------------------------------------------------------------- test ideals

/// One asserted relation among the test-ideal fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub name: &'static str,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct TestIdealOptions {
    /// Submodule enumeration budget for `E` and for `fin`.
    pub budget: usize,
    /// Ideal enumeration budget.
    pub ideal_budget: usize,
}

impl Default for TestIdealOptions {
    fn default() -> Self {
        TestIdealOptions {
            budget: 20_000,
            ideal_budget: 5_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TestIdealReport {
    pub selector: String,
    /// `α^⌣(R)`.
    pub via_smile: Ideal,
    /// `ann α(E)`.
    pub via_ann_e: Ideal,
    /// `⋂ ann α(M)` over the supplied modules and every submodule of `E`.
    pub via_modules: Ideal,
    /// `ann α_f(E)`.
    pub finitistic: Ideal,
    /// `α_f^⌣(R)`.
    pub finitistic_via_smile: Ideal,
    /// `⋂_I ann α(R/I)`.
    pub via_cyclic: Ideal,
    /// `⋂_I (I : I^cl)` with `cl = ρ(α)`.
    pub via_ideal_colons: Ideal,
    pub gorenstein: bool,
    /// False when `α` failed the functoriality check supplied by the caller;
    /// relations are still computed but not asserted.
    pub hypotheses_verified: bool,
    /// False when `E` was too large to enumerate and `via_modules` only ranges
    /// over the supplied modules.
    pub complete_enumeration: bool,
    pub relations: Vec<Relation>,
}

impl TestIdealReport {
    /// Every asserted relation holds (vacuously true when hypotheses fail).
    pub fn passed(&self) -> bool {
        !self.hypotheses_verified || self.relations.iter().all(|r| r.holds)
    }
}

/// `ann_R` of a submodule, through the lab.
fn ann(lab: &Lab, m: &ModuleRep, l: &Submodule) -> Ideal {
    lab.annihilator_of(m, l)
}

pub fn test_ideal(
    lab: &Lab,
    alpha: &Selector,
    modules: &[Arc<ModuleRep>],
    functorial: bool,
    opts: &TestIdealOptions,
) -> Result<TestIdealReport> {
    let r = modules
        .first()
        .map(|m| m.algebra().clone())
        .expect("at least one module to fix the algebra");
    let reg = Arc::new(ModuleRep::regular(&r));
    let e = injective_hull(&r)?;
    let as_ideal = |s: Submodule| r.ideal_from_space(s.space().clone()).expect("submodule of R is an ideal");

    let via_smile = as_ideal(smile(lab, alpha).eval(&reg)?);
    let via_ann_e = ann(lab, &e, &alpha.eval(&e)?);

    let mut via_modules = r.unit_ideal();
    for m in modules {
        via_modules = r.ideal_intersection(&via_modules, &ann(lab, m, &alpha.eval(m)?));
    }
    let complete_enumeration = match e.enumerate_submodules(e.dim(), opts.budget) {
        Ok(subs) => {
            for l in subs {
                let sm = e.submodule_as_module(&l);
                via_modules = r.ideal_intersection(&via_modules, &ann(lab, &sm.module, &alpha.eval(&sm.module)?));
            }
            true
        }
        Err(_) => false,
    };
    via_modules = r.ideal_intersection(&via_modules, &via_ann_e);

    let fin = finitistic(alpha, usize::MAX, opts.budget);
    let finitistic = ann(lab, &e, &fin.eval(&e)?);
    let finitistic_via_smile = as_ideal(smile(lab, &fin).eval(&reg)?);

    let cl = rho(lab, alpha);
    let mut via_cyclic = r.unit_ideal();
    let mut via_ideal_colons = r.unit_ideal();
    for i in r.enumerate_ideals(opts.ideal_budget)? {
        let cyc = Arc::new(ModuleRep::cyclic(&r, &i));
        via_cyclic = r.ideal_intersection(&via_cyclic, &ann(lab, &cyc, &alpha.eval(&cyc)?));
        let i_sub = reg.submodule(i.space().clone()).expect("ideal is a submodule of R");
        let i_cl = as_ideal(cl.apply(&i_sub, &reg)?);
        via_ideal_colons = r.ideal_intersection(&via_ideal_colons, &r.colon(&i, &i_cl));
    }

    let gorenstein = r.is_gorenstein();
    let mut relations = vec![
        Relation {
            name: "smile(alpha)(R) = ann alpha(E)",
            holds: via_smile == via_ann_e,
        },
        Relation {
            name: "ann alpha(E) = intersection of ann alpha(M)",
            holds: via_ann_e == via_modules,
        },
        Relation {
            name: "intersection of ann alpha(M) <= ann alpha_f(E)",
            holds: via_modules.is_subideal_of(&finitistic),
        },
        Relation {
            name: "smile(alpha_f)(R) = ann alpha_f(E)",
            holds: finitistic_via_smile == finitistic,
        },
        Relation {
            name: "ann alpha_f(E) <= intersection of ann alpha(R/I)",
            holds: finitistic.is_subideal_of(&via_cyclic),
        },
    ];
    if gorenstein {
        relations.push(Relation {
            name: "ann alpha_f(E) = intersection of ann alpha(R/I) (Gorenstein)",
            holds: finitistic == via_cyclic,
        });
    }
    relations.push(Relation {
        name: "intersection of ann alpha(R/I) = intersection of (I : I^cl)",
        holds: via_cyclic == via_ideal_colons,
    });
    Ok(TestIdealReport {
        selector: alpha.name().to_string(),
        via_smile,
        via_ann_e,
        via_modules,
        finitistic,
        finitistic_via_smile,
        via_cyclic,
        via_ideal_colons,
        gorenstein,
        hypotheses_verified: functorial,
        complete_enumeration,
        relations,
    })
}

impl TestIdealReport {
    /// Structured text with each ideal given by its canonical generators.
    pub fn render(&self, r: &crate::algebra::Algebra) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "selector: {}", self.selector);
        let _ = writeln!(out, "gorenstein: {}", self.gorenstein);
        let _ = writeln!(
            out,
            "hypotheses: {}",
            if self.hypotheses_verified {
                "functorial on battery"
            } else {
                "hypotheses unverified (functoriality check failed)"
            }
        );
        if !self.complete_enumeration {
            let _ = writeln!(out, "via_modules: battery-approximate");
        }
        for (k, v) in [
            ("via_smile", &self.via_smile),
            ("via_annE", &self.via_ann_e),
            ("via_modules", &self.via_modules),
            ("finitistic", &self.finitistic),
            ("finitistic_via_smile", &self.finitistic_via_smile),
            ("via_cyclic", &self.via_cyclic),
            ("via_ideal_colons", &self.via_ideal_colons),
        ] {
            let _ = writeln!(out, "{k}: {}", r.format_ideal(v));
        }
        for rel in &self.relations {
            let status = match (self.hypotheses_verified, rel.holds) {
                (false, _) => "NOT ASSERTED",
                (true, true) => "PASS",
                (true, false) => "FAIL",
            };
            let _ = writeln!(out, "{status} {}", rel.name);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::selectors::{annsel, frobenius_star, identity, mul, socle, tom, zero};

    fn sample(r: &Arc<Algebra>) -> Vec<Arc<ModuleRep>> {
        let mut v = vec![
            Arc::new(ModuleRep::regular(r)),
            Arc::new(ModuleRep::residue_field(r)),
            Arc::new(ModuleRep::free(r, 2)),
        ];
        v.push(injective_hull(r).unwrap());
        v
    }

    fn pairs(mods: &[Arc<ModuleRep>]) -> Vec<(Submodule, Arc<ModuleRep>)> {
        let mut out = Vec::new();
        for m in mods {
            for l in m.enumerate_submodules(m.dim(), 10_000).unwrap() {
                out.push((l, m.clone()));
            }
        }
        out
    }

    #[test]
    fn rho_of_zero_and_identity() {
        let r = Arc::new(Algebra::truncated_polynomial(2, 3));
        let lab = Lab::exact();
        for (l, m) in pairs(&sample(&r)) {
            assert_eq!(rho(&lab, &zero()).apply(&l, &m).unwrap(), l);
            assert!(rho(&lab, &identity()).apply(&l, &m).unwrap().is_full());
        }
    }

    #[test]
    fn rho_matches_closed_forms() {
        let r = Arc::new(Algebra::square_zero(2, 2));
        let lab = Lab::exact();
        let m = r.maximal_ideal();
        let k = Arc::new(ModuleRep::residue_field(&r));
        let cases = [
            (rho(&lab, &mul("m", m.clone())), plus_closure("m", m.clone())),
            (rho(&lab, &annsel("m", m.clone())), colon_closure("m", m.clone())),
            (
                rho(&lab, &tom(&lab, "k", k.clone(), vec![vec![1]]).unwrap()),
                module_closure("k", k, vec![vec![1]]),
            ),
        ];
        for (l, mm) in pairs(&sample(&r)) {
            for (a, b) in &cases {
                assert_eq!(a.apply(&l, &mm).unwrap(), b.apply(&l, &mm).unwrap(), "{} vs {}", a.name(), b.name());
            }
        }
    }

    #[test]
    fn module_closure_of_zero_over_dual_numbers() {
        // 0^{cl_k}_R = {z : 1 ⊗ z = 0 in k ⊗ R} = (x)
        let r = Arc::new(Algebra::truncated_polynomial(2, 2));
        let reg = Arc::new(ModuleRep::regular(&r));
        let k = Arc::new(ModuleRep::residue_field(&r));
        let cl = module_closure("k", k, vec![vec![1]]).apply(&reg.zero_submodule(), &reg).unwrap();
        assert_eq!(cl.basis(), vec![vec![0, 1]]);
    }

    #[test]
    fn sigma_rho_round_trip() {
        let r = Arc::new(Algebra::truncated_polynomial(2, 3));
        let lab = Lab::exact();
        for m in sample(&r) {
            let s = socle();
            assert_eq!(sigma(&rho(&lab, &s)).eval(&m).unwrap(), s.eval(&m).unwrap());
        }
        let direct = colon_closure("m", r.maximal_ideal());
        let back = rho(&lab, &sigma(&direct));
        for (l, m) in pairs(&sample(&r)) {
            assert_eq!(back.apply(&l, &m).unwrap(), direct.apply(&l, &m).unwrap());
        }
    }

    #[test]
    fn interior_of_plus_closure_is_annihilator() {
        let r = Arc::new(Algebra::truncated_polynomial(2, 3));
        let lab = Lab::exact();
        let m2 = r.m_power_ideal(2);
        let i = interior(&lab, &rho(&lab, &mul("m^2", m2.clone())));
        for m in sample(&r) {
            assert_eq!(i.eval(&m).unwrap(), m.annihilated_by(&m2));
        }
    }

    #[test]
    fn direct_sums_and_separation() {
        let r = Arc::new(Algebra::truncated_polynomial(2, 2));
        let lab = Lab::exact();
        let cl = plus_closure("m", r.maximal_ideal());
        let ps = pairs(&sample(&r));
        for (u, l) in ps.iter().take(6) {
            for (v, m) in ps.iter().take(6) {
                assert!(direct_sum_closure_holds(&lab, &cl, (u, l), (v, m)).unwrap());
            }
        }
        let e = injective_hull(&r).unwrap();
        for j in r.enumerate_ideals(100).unwrap() {
            assert!(separated_quotient_check(&e, &j).holds);
        }
    }

    #[test]
    fn test_ideal_of_zero_and_identity() {
        let r = Arc::new(Algebra::truncated_polynomial(2, 3));
        let lab = Lab::exact();
        let mods = sample(&r);
        let opts = TestIdealOptions::default();
        let z = test_ideal(&lab, &zero(), &mods, true, &opts).unwrap();
        assert!(z.passed());
        assert_eq!(z.via_smile, r.unit_ideal());
        assert_eq!(z.via_cyclic, r.unit_ideal());
        let id = test_ideal(&lab, &identity(), &mods, true, &opts).unwrap();
        assert!(id.passed());
        assert!(id.via_ann_e.is_zero());
        assert!(id.via_cyclic.is_zero());
    }

    #[test]
    fn frobenius_test_ideal_over_dual_numbers() {
        let r = Arc::new(Algebra::truncated_polynomial(2, 2));
        let rep = test_ideal(&Lab::exact(), &frobenius_star(&r), &sample(&r), true, &TestIdealOptions::default()).unwrap();
        assert!(rep.passed(), "{}", rep.render(&r));
        assert_eq!(rep.via_smile.basis(), vec![vec![0, 1]]);
        assert!(rep.render(&r).contains("via_smile: (x)"));
    }
}
