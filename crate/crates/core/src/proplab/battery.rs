//! Deterministic finite families of modules, maps, pairs and triples over
//! which every universally quantified statement is checked.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::duality::{dual_map, dual_module, injective_hull, perp_in_dual};
use crate::exactlin::FpMatrix;
use crate::modrep::{ModMap, ModuleRep, Submodule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sizes {
    Minimal,
    Default,
    Large,
}

impl Sizes {
    pub fn name(self) -> &'static str {
        match self {
            Sizes::Minimal => "minimal",
            Sizes::Default => "default",
            Sizes::Large => "large",
        }
    }

    fn random_modules(self) -> usize {
        match self {
            Sizes::Minimal => 0,
            Sizes::Default => 4,
            Sizes::Large => 10,
        }
    }

    fn random_maps(self) -> usize {
        match self {
            Sizes::Minimal => 0,
            Sizes::Default => 14,
            Sizes::Large => 40,
        }
    }

    fn iso_copies(self) -> usize {
        match self {
            Sizes::Minimal => 0,
            Sizes::Default => 3,
            Sizes::Large => 6,
        }
    }

    /// Largest module whose submodules are all enumerated into pairs.
    fn pair_enumeration_dim(self) -> usize {
        match self {
            Sizes::Minimal => 3,
            Sizes::Default => 4,
            Sizes::Large => 6,
        }
    }
}

impl fmt::Display for Sizes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Sizes {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "minimal" => Ok(Sizes::Minimal),
            "default" => Ok(Sizes::Default),
            "large" => Ok(Sizes::Large),
            other => Err(format!("unknown sizes `{other}` (expected minimal, default or large)")),
        }
    }
}

/// Largest module dimension admitted into a battery.
pub const MAX_MODULE_DIM: usize = 6;

#[derive(Debug, Clone)]
pub struct BatteryModule {
    pub name: String,
    pub module: Arc<ModuleRep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapTag {
    Iso,
    Injective,
    Surjective,
    General,
}

impl MapTag {
    fn of(f: &ModMap) -> MapTag {
        match (f.is_injective(), f.is_surjective()) {
            (true, true) => MapTag::Iso,
            (true, false) => MapTag::Injective,
            (false, true) => MapTag::Surjective,
            (false, false) => MapTag::General,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BatteryMap {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub map: ModMap,
    pub tag: MapTag,
}

impl BatteryMap {
    pub fn is_surjective(&self) -> bool {
        matches!(self.tag, MapTag::Iso | MapTag::Surjective)
    }

    pub fn is_injective(&self) -> bool {
        matches!(self.tag, MapTag::Iso | MapTag::Injective)
    }
}

/// `L ⊆ M` with `M` a battery module.
#[derive(Debug, Clone)]
pub struct Pair {
    pub module: usize,
    pub sub: Submodule,
}

/// `L ⊆ M ⊆ N` inside the battery module `N`.
#[derive(Debug, Clone)]
pub struct Triple {
    pub module: usize,
    pub inner: Submodule,
    pub middle: Submodule,
}

#[derive(Debug, Clone)]
pub struct Battery {
    pub algebra: Arc<Algebra>,
    pub seed: u64,
    pub sizes: Sizes,
    pub modules: Vec<BatteryModule>,
    pub maps: Vec<BatteryMap>,
    pub pairs: Vec<Pair>,
    pub triples: Vec<Triple>,
}

struct Builder {
    algebra: Arc<Algebra>,
    modules: Vec<BatteryModule>,
    index: HashMap<(usize, Vec<FpMatrix>), usize>,
    maps: Vec<BatteryMap>,
    map_keys: HashMap<(usize, usize, FpMatrix), usize>,
}

impl Builder {
    fn add_module(&mut self, name: impl Into<String>, m: Arc<ModuleRep>) -> Option<usize> {
        if m.dim() > MAX_MODULE_DIM {
            return None;
        }
        let key = (m.dim(), m.actions().to_vec());
        if let Some(&i) = self.index.get(&key) {
            return Some(i);
        }
        let i = self.modules.len();
        self.modules.push(BatteryModule { name: name.into(), module: m });
        self.index.insert(key, i);
        Some(i)
    }

    fn find(&self, m: &ModuleRep) -> Option<usize> {
        self.index.get(&(m.dim(), m.actions().to_vec())).copied()
    }

    /// Adds `f`, registering its endpoints as needed. Returns `None` if an
    /// endpoint is too large.
    fn add_map(&mut self, name: impl Into<String>, f: ModMap, source_name: &str, target_name: &str) -> Option<usize> {
        let s = self.add_module(source_name, f.source().clone())?;
        let t = self.add_module(target_name, f.target().clone())?;
        let key = (s, t, f.matrix().clone());
        if let Some(&i) = self.map_keys.get(&key) {
            return Some(i);
        }
        // Re-anchor on the stored modules so that identical modules share one Arc.
        let map = ModMap::new_unchecked(
            self.modules[s].module.clone(),
            self.modules[t].module.clone(),
            f.matrix().clone(),
        );
        let i = self.maps.len();
        self.maps.push(BatteryMap {
            name: name.into(),
            source: s,
            target: t,
            tag: MapTag::of(&map),
            map,
        });
        self.map_keys.insert(key, i);
        Some(i)
    }

    fn module(&self, i: usize) -> Arc<ModuleRep> {
        self.modules[i].module.clone()
    }

    fn name(&self, i: usize) -> String {
        self.modules[i].name.clone()
    }
}

fn random_vector<G: Rng>(rng: &mut G, p: u32, n: usize) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(0..p)).collect()
}

impl Battery {
    /// Deterministic in `(algebra, seed, sizes)`.
    pub fn generate(algebra: &Arc<Algebra>, seed: u64, sizes: Sizes) -> Battery {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = algebra;
        let p = r.p();
        let mut b = Builder {
            algebra: r.clone(),
            modules: Vec::new(),
            index: HashMap::new(),
            maps: Vec::new(),
            map_keys: HashMap::new(),
        };

        let zero = Arc::new(ModuleRep::zero(r));
        let k = Arc::new(ModuleRep::residue_field(r));
        let reg = Arc::new(ModuleRep::regular(r));
        let e = injective_hull(r).expect("local algebras have a one-dimensional socle in R^∨");
        b.add_module("0", zero.clone());
        b.add_module("k", k.clone());
        b.add_module("R", reg.clone());
        b.add_module("E", e.clone());

        // Canonical maps: R → k, k → E onto the socle, 0 → M, M → 0.
        let m_sub = reg.submodule(r.maximal_ideal().space().clone()).expect("m is an ideal");
        let r_to_k = reg.quotient(&m_sub);
        b.add_map("R->k", r_to_k.proj.clone(), "R", "k");
        let soc_e = e.socle();
        let k_to_e = ModMap::new(k.clone(), e.clone(), soc_e.space().basis().clone()).expect("socle inclusion");
        b.add_map("k->E", k_to_e, "k", "E");

        if sizes != Sizes::Minimal {
            // R/I and I for every ideal.
            let ideals = r.enumerate_ideals(10_000).expect("small algebra");
            for i in &ideals {
                let label = r.format_ideal(i);
                let sub = reg.submodule(i.space().clone()).expect("ideal");
                let q = reg.quotient(&sub);
                b.add_map(format!("R->R/{label}"), q.proj.clone(), "R", &format!("R/{label}"));
                let sm = reg.submodule_as_module(&sub);
                b.add_map(format!("{label}->R"), sm.inclusion.clone(), &label, "R");
            }
            // Socles and m as modules.
            for (name, m) in [("R", reg.clone()), ("E", e.clone())] {
                let soc = m.socle();
                let sm = m.submodule_as_module(&soc);
                b.add_map(format!("soc({name})->{name}"), sm.inclusion, &format!("soc({name})"), name);
                let mm = m.ideal_times_module(&r.maximal_ideal());
                let sm = m.submodule_as_module(&mm);
                b.add_map(format!("m{name}->{name}"), sm.inclusion, &format!("m{name}"), name);
            }
            // Direct sums.
            for (x, y, xn, yn) in [
                (reg.clone(), k.clone(), "R", "k"),
                (e.clone(), k.clone(), "E", "k"),
                (k.clone(), k.clone(), "k", "k"),
                (reg.clone(), e.clone(), "R", "E"),
            ] {
                let ds = x.direct_sum(&y).expect("one algebra");
                if ds.module.dim() > MAX_MODULE_DIM {
                    continue;
                }
                let sn = format!("{xn}+{yn}");
                b.add_map(format!("{xn}->{sn}"), ds.inj[0].clone(), xn, &sn);
                b.add_map(format!("{yn}->{sn}#2"), ds.inj[1].clone(), yn, &sn);
                b.add_map(format!("{sn}->{xn}"), ds.proj[0].clone(), &sn, xn);
                b.add_map(format!("{sn}->{yn}#2"), ds.proj[1].clone(), &sn, yn);
            }
            // Random cyclic submodules and their quotients.
            let hosts: Vec<usize> = (0..b.modules.len()).filter(|&i| b.modules[i].module.dim() >= 3).collect();
            for n in 0..sizes.random_modules() {
                if hosts.is_empty() {
                    break;
                }
                let h = hosts[rng.gen_range(0..hosts.len())];
                let host = b.module(h);
                let hn = b.name(h);
                let v = random_vector(&mut rng, p, host.dim());
                let l = host.generated(&[v]).expect("host vector");
                let sm = host.submodule_as_module(&l);
                b.add_map(format!("sub{n}->{hn}"), sm.inclusion, &format!("sub{n}"), &hn);
                let q = host.quotient(&l);
                b.add_map(format!("{hn}->quo{n}"), q.proj, &hn, &format!("quo{n}"));
            }
            // Random isomorphic copies.
            let candidates: Vec<usize> = (0..b.modules.len()).filter(|&i| b.modules[i].module.dim() >= 2).collect();
            for n in 0..sizes.iso_copies() {
                if candidates.is_empty() {
                    break;
                }
                let c = candidates[rng.gen_range(0..candidates.len())];
                let cn = b.name(c);
                let f = b.module(c).random_iso_copy(&mut rng);
                b.add_map(format!("{cn}->iso{n}"), f, &cn, &format!("iso{n}"));
            }
            // Random intertwiners.
            let small: Vec<usize> = (0..b.modules.len()).filter(|&i| b.modules[i].module.dim() <= 4).collect();
            let mut made = 0;
            let mut attempts = 0;
            while made < sizes.random_maps() && attempts < 20 * sizes.random_maps() {
                attempts += 1;
                let s = small[rng.gen_range(0..small.len())];
                let t = small[rng.gen_range(0..small.len())];
                let hom = b.module(s).hom(&b.module(t)).expect("one algebra");
                if hom.dim() == 0 {
                    continue;
                }
                let coords = random_vector(&mut rng, p, hom.dim());
                if coords.iter().all(|&c| c == 0) {
                    continue;
                }
                let f = hom.map_from_coords(&coords);
                let (sn, tn) = (b.name(s), b.name(t));
                if b.add_map(format!("rand{made}:{sn}->{tn}"), f, &sn, &tn).is_some() {
                    made += 1;
                }
            }
        }

        // Pairs: all submodules of small modules, a few canonical ones elsewhere.
        let enum_dim = sizes.pair_enumeration_dim();
        let mut pairs: Vec<Pair> = Vec::new();
        let mut seen: HashMap<(usize, Submodule), ()> = HashMap::new();
        let mut push_pair = |pairs: &mut Vec<Pair>, module: usize, sub: Submodule| {
            if seen.insert((module, sub.clone()), ()).is_none() {
                pairs.push(Pair { module, sub });
            }
        };
        for i in 0..b.modules.len() {
            let m = b.module(i);
            let subs = if m.dim() <= enum_dim {
                m.enumerate_submodules(m.dim(), 2_000).unwrap_or_default()
            } else {
                Vec::new()
            };
            if subs.is_empty() {
                for s in [
                    m.zero_submodule(),
                    m.full_submodule(),
                    m.socle(),
                    m.ideal_times_module(&r.maximal_ideal()),
                ] {
                    push_pair(&mut pairs, i, s);
                }
            } else {
                for s in subs {
                    push_pair(&mut pairs, i, s);
                }
            }
        }

        // Inclusions and projections for every pair so far.
        let base_pairs = if sizes == Sizes::Minimal { Vec::new() } else { pairs.clone() };
        for (n, pr) in base_pairs.iter().enumerate() {
            let m = b.module(pr.module);
            let mn = b.name(pr.module);
            let sm = m.submodule_as_module(&pr.sub);
            b.add_map(format!("pair{n}:incl"), sm.inclusion, &format!("L{n}<{mn}"), &mn);
            let q = m.quotient(&pr.sub);
            b.add_map(format!("pair{n}:proj"), q.proj, &mn, &format!("{mn}/L{n}"));
        }

        // Close modules and maps under duals.
        for i in 0..b.modules.len() {
            let d = dual_module(&b.module(i));
            let name = format!("D({})", b.name(i));
            b.add_module(name, d);
        }
        for i in 0..b.maps.len() {
            let f = dual_map(&b.maps[i].map);
            let name = format!("D({})", b.maps[i].name);
            let (sn, tn) = (
                format!("D({})", b.name(b.maps[i].target)),
                format!("D({})", b.name(b.maps[i].source)),
            );
            b.add_map(name, f, &sn, &tn);
        }

        // Kernels of surjections and images of injections become pairs.
        for f in &b.maps {
            if f.is_surjective() && !f.is_injective() {
                push_pair(&mut pairs, f.source, f.map.kernel());
            }
            if f.is_injective() && !f.is_surjective() {
                push_pair(&mut pairs, f.target, f.map.full_image());
            }
        }
        // Every module has its trivial pairs.
        for i in 0..b.modules.len() {
            let m = b.module(i);
            push_pair(&mut pairs, i, m.zero_submodule());
            push_pair(&mut pairs, i, m.full_submodule());
        }
        // Close pairs under (L, M) ↦ (L^⊥, M^∨).
        let snapshot = pairs.clone();
        for pr in snapshot {
            let d = dual_module(&b.module(pr.module));
            let di = b.find(&d).expect("modules are closed under duals");
            push_pair(&mut pairs, di, perp_in_dual(&pr.sub));
        }

        // Triples: (0, L, M) for every pair, plus chains among pairs of one module.
        let mut triples = Vec::new();
        for pr in &pairs {
            let m = b.module(pr.module);
            triples.push(Triple {
                module: pr.module,
                inner: m.zero_submodule(),
                middle: pr.sub.clone(),
            });
        }
        let mut by_module: HashMap<usize, Vec<&Submodule>> = HashMap::new();
        for pr in &pairs {
            by_module.entry(pr.module).or_default().push(&pr.sub);
        }
        let mut keys: Vec<usize> = by_module.keys().copied().collect();
        keys.sort();
        let chain_cap = match sizes {
            Sizes::Minimal => 8,
            Sizes::Default => 24,
            Sizes::Large => 64,
        };
        for i in keys {
            let subs = &by_module[&i];
            let mut count = 0;
            for a in subs {
                for c in subs {
                    if count >= chain_cap {
                        break;
                    }
                    if !a.is_zero() && a != c && a.is_submodule_of(c) {
                        triples.push(Triple {
                            module: i,
                            inner: (*a).clone(),
                            middle: (*c).clone(),
                        });
                        count += 1;
                    }
                }
            }
        }

        let _ = &b.algebra;
        Battery {
            algebra: r.clone(),
            seed,
            sizes,
            modules: b.modules,
            maps: b.maps,
            pairs,
            triples,
        }
    }

    pub fn module(&self, i: usize) -> &Arc<ModuleRep> {
        &self.modules[i].module
    }

    pub fn module_arcs(&self) -> Vec<Arc<ModuleRep>> {
        self.modules.iter().map(|m| m.module.clone()).collect()
    }

    /// Index of a module equal to `m`, if present.
    pub fn find(&self, m: &ModuleRep) -> Option<usize> {
        self.modules.iter().position(|x| *x.module == *m)
    }

    pub fn summary(&self) -> String {
        format!(
            "{} modules, {} maps, {} pairs, {} triples",
            self.modules.len(),
            self.maps.len(),
            self.pairs.len(),
            self.triples.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_battery_is_the_four_basic_modules() {
        let r = Arc::new(Algebra::truncated_polynomial(2, 3));
        let b = Battery::generate(&r, 1, Sizes::Minimal);
        let names: Vec<&str> = b.modules.iter().map(|m| m.name.as_str()).collect();
        for n in ["0", "k", "R", "E"] {
            assert!(names.contains(&n), "{names:?}");
        }
        assert_eq!(b.modules.len(), 4, "{names:?}");
    }

    #[test]
    fn default_battery_is_large_enough_and_contains_the_named_modules() {
        let r = Arc::new(Algebra::truncated_polynomial(2, 3));
        let b = Battery::generate(&r, 7, Sizes::Default);
        assert!(b.modules.len() >= 12, "{}", b.summary());
        assert!(b.maps.len() >= 40, "{}", b.summary());
        let reg = Arc::new(ModuleRep::regular(&r));
        for i in r.enumerate_ideals(100).unwrap() {
            assert!(b.find(&ModuleRep::cyclic(&r, &i)).is_some());
        }
        let k = Arc::new(ModuleRep::residue_field(&r));
        assert!(b.find(&reg.direct_sum(&k).unwrap().module).is_some());
    }

    #[test]
    fn generation_is_deterministic() {
        let r = Arc::new(Algebra::square_zero(2, 2));
        let a = Battery::generate(&r, 11, Sizes::Default);
        let b = Battery::generate(&r, 11, Sizes::Default);
        assert_eq!(a.summary(), b.summary());
        for (x, y) in a.maps.iter().zip(&b.maps) {
            assert_eq!(x.name, y.name);
            assert_eq!(x.map.matrix(), y.map.matrix());
        }
    }

    #[test]
    fn families_are_closed_under_duals() {
        let r = Arc::new(Algebra::truncated_polynomial(2, 2));
        let b = Battery::generate(&r, 3, Sizes::Default);
        for m in &b.modules {
            assert!(b.find(&dual_module(&m.module)).is_some());
        }
        for f in &b.maps {
            let d = dual_map(&f.map);
            assert!(b
                .maps
                .iter()
                .any(|g| *g.map.source() == *d.source() && *g.map.target() == *d.target() && g.map.matrix() == d.matrix()));
            assert!(f.map.linearity_failure().is_none(), "{}", f.name);
        }
        for pr in &b.pairs {
            let di = b.find(&dual_module(b.module(pr.module))).unwrap();
            let perp = perp_in_dual(&pr.sub);
            assert!(b.pairs.iter().any(|q| q.module == di && q.sub == perp));
        }
    }
}
