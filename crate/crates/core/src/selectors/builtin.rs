use std::sync::Arc;

use super::{Result, Selector, SelectorError};
use crate::algebra::{Algebra, Ideal};
use crate::exactlin::Subspace;
use crate::lab::{Lab, Mutation};
use crate::modrep::{ModuleRep, Submodule};

pub fn zero() -> Selector {
    Selector::new("zero", "M ↦ 0", |m| Ok(m.zero_submodule()))
}

pub fn identity() -> Selector {
    Selector::new("id", "M ↦ M", |m| Ok(m.full_submodule()))
}

fn check_source(l: &ModuleRep, s: &[Vec<u32>]) -> Result<()> {
    for v in s {
        if v.len() != l.dim() {
            return Err(SelectorError::NotInSource {
                expected: l.dim(),
                found: v.len(),
            });
        }
    }
    Ok(())
}

/// `tr_{S,L}(N) = Σ_{f ∈ Hom(L,N)} R f(S)`.
pub fn trace(lab: &Lab, label: &str, l: Arc<ModuleRep>, s: Vec<Vec<u32>>) -> Result<Selector> {
    check_source(&l, &s)?;
    let lab = *lab;
    Ok(Selector::new(
        format!("trace({label})"),
        "sum of images of S under all maps out of L",
        move |n| {
            let hom = l.hom(n)?;
            let maps = if lab.is(Mutation::TraceSkipsSpan) {
                // Only minimal generators of Hom as an R-module.
                let m_hom = hom.module.ideal_times_module(&hom.module.algebra().maximal_ideal());
                m_hom
                    .space()
                    .complement_coords()
                    .into_iter()
                    .map(|c| {
                        let mut e = vec![0u32; hom.dim()];
                        e[c] = 1;
                        hom.map_from_coords(&e)
                    })
                    .collect()
            } else {
                hom.basis_maps()
            };
            let images: Vec<Vec<u32>> = maps.iter().flat_map(|f| s.iter().map(move |v| f.apply(v))).collect();
            let span = Subspace::span(n.p(), n.dim(), &images).map_err(crate::modrep::ModuleError::from)?;
            if lab.is(Mutation::TraceSkipsSpan) {
                return Ok(Submodule::from_space(span));
            }
            Ok(n.closure_of(&span))
        },
    ))
}

/// `tom_{S,L}(M) = {z : s ⊗ z = 0 in L ⊗_R M for all s ∈ S}`.
pub fn tom(lab: &Lab, label: &str, l: Arc<ModuleRep>, s: Vec<Vec<u32>>) -> Result<Selector> {
    check_source(&l, &s)?;
    let lab = *lab;
    Ok(Selector::new(
        format!("tom({label})"),
        "elements killed by tensoring with S inside L ⊗ M",
        move |m| {
            let t = lab.tensor(&l, m);
            let mut acc = m.full_submodule();
            for v in &s {
                acc = acc.intersection(&Submodule::from_space(t.left_slice(v).kernel()));
            }
            Ok(acc)
        },
    ))
}

/// `M ↦ I M`.
pub fn mul(label: &str, ideal: Ideal) -> Selector {
    Selector::new(format!("mul({label})"), "M ↦ IM", move |m| Ok(m.ideal_times_module(&ideal)))
}

/// `M ↦ (0 :_M I)`.
pub fn annsel(label: &str, ideal: Ideal) -> Selector {
    Selector::new(format!("ann({label})"), "M ↦ (0 :_M I)", move |m| Ok(m.annihilated_by(&ideal)))
}

pub fn socle() -> Selector {
    Selector::new("socle", "M ↦ (0 :_M m)", |m| Ok(m.socle()))
}

pub fn join(lab: &Lab, a: &Selector, b: &Selector) -> Selector {
    let (lab, a2, b2) = (*lab, a.clone(), b.clone());
    Selector::new(format!("join({}, {})", a.name(), b.name()), "M ↦ α(M) + β(M)", move |m| {
        Ok(lab.join(&a2.eval(m)?, &b2.eval(m)?))
    })
}

pub fn meet(lab: &Lab, a: &Selector, b: &Selector) -> Selector {
    let (lab, a2, b2) = (*lab, a.clone(), b.clone());
    Selector::new(format!("meet({}, {})", a.name(), b.name()), "M ↦ α(M) ∩ β(M)", move |m| {
        Ok(lab.meet(&a2.eval(m)?, &b2.eval(m)?))
    })
}

/// `M ↦ ⋃_n (0 :_M I^n)`, `n` running up to the nilpotency index.
pub fn h0(algebra: &Arc<Algebra>, label: &str, ideal: Ideal) -> Selector {
    let alg = algebra.clone();
    Selector::new(format!("h0({label})"), "I-power torsion", move |m| {
        let mut acc = m.zero_submodule();
        for n in 1..=alg.nilpotency_index() {
            acc = acc.sum(&m.annihilated_by(&alg.ideal_power(&ideal, n)));
        }
        Ok(acc)
    })
}

/// `M ↦ ⋂_n I^n M`, `n` running up to the nilpotency index.
pub fn adic_kernel(algebra: &Arc<Algebra>, label: &str, ideal: Ideal) -> Selector {
    let alg = algebra.clone();
    Selector::new(format!("adic({label})"), "kernel of I-adic completion", move |m| {
        let mut acc = m.full_submodule();
        for n in 1..=alg.nilpotency_index() {
            acc = acc.intersection(&m.ideal_times_module(&alg.ideal_power(&ideal, n)));
        }
        Ok(acc)
    })
}

/// `W`-torsion `M ↦ ⋃_{w ∈ W} (0 :_M w)` over the saturation of `gens`.
pub fn tto(lab: &Lab, algebra: &Algebra, label: &str, gens: &[Vec<u32>]) -> Selector {
    let w = lab.saturate(algebra, gens);
    Selector::new(format!("tto({label})"), "W-torsion", move |m| {
        let mut acc = m.zero_submodule();
        for x in w.elements() {
            acc = acc.sum(&m.colon_element(&m.zero_submodule(), x));
        }
        Ok(acc)
    })
}

/// `W`-divisible part `M ↦ ⋂_{w ∈ W} wM` over the saturation of `gens`.
pub fn dv(lab: &Lab, algebra: &Algebra, label: &str, gens: &[Vec<u32>]) -> Selector {
    let w = lab.saturate(algebra, gens);
    Selector::new(format!("dv({label})"), "W-divisible part", move |m| {
        let mut acc = m.full_submodule();
        for x in w.elements() {
            acc = acc.intersection(&Submodule::from_space(m.act(x).image()));
        }
        Ok(acc)
    })
}

/// Frobenius closure of zero, `{u : u^q = 0 in F^e(M)}` at the stable `q`.
pub fn frobenius_star(algebra: &Arc<Algebra>) -> Selector {
    let alg = algebra.clone();
    Selector::new("star", "Frobenius-power closure of 0", move |m| {
        let q = alg.frobenius_q();
        let pres = m
            .try_presentation()
            .ok_or_else(|| SelectorError::Invalid("module has no minimal presentation".into()))?;
        let b = pres.rank();
        let d = alg.dim();
        let frob_rel: Vec<Vec<u32>> = pres
            .rel
            .iter()
            .map(|r| r.iter().flat_map(|x| alg.pow(x, q)).collect())
            .collect();
        let free = ModuleRep::free(&alg, b);
        let relations = free.closure_of(&Subspace::span(alg.p(), b * d, &frob_rel).map_err(crate::modrep::ModuleError::from)?);
        let images: Vec<Vec<u32>> = (0..m.dim())
            .map(|j| {
                let mut e = vec![0u32; m.dim()];
                e[j] = 1;
                let lifted: Vec<u32> = pres.lift_coords(&e).iter().flat_map(|x| alg.pow(x, q)).collect();
                relations.space().reduce(&lifted)
            })
            .collect();
        if m.dim() == 0 {
            return Ok(m.zero_submodule());
        }
        let map = crate::exactlin::FpMatrix::from_columns(alg.p(), b * d, &images).map_err(crate::modrep::ModuleError::from)?;
        Ok(Submodule::from_space(map.kernel()))
    })
}

/// `α_f(M) = Σ α(L)` over submodules `L ≤ M` of dimension at most `cap`.
pub fn finitistic(alpha: &Selector, cap: usize, budget: usize) -> Selector {
    let inner = alpha.clone();
    Selector::new(
        format!("fin({}, {cap})", alpha.name()),
        "sum of values on small submodules",
        move |m| {
            let mut acc = m.zero_submodule();
            for l in m.enumerate_submodules(cap.min(m.dim()), budget)? {
                let sub = m.submodule_as_module(&l);
                acc = acc.sum(&sub.inclusion.image(&inner.eval(&sub.module)?));
            }
            Ok(acc)
        },
    )
}

/// `M` when `dim M ≥ threshold`, else `0`. Isomorphism-invariant but not
/// functorial; used to keep equivalence checks from passing vacuously.
pub fn dimension_gate(threshold: usize) -> Selector {
    Selector::new(format!("dimgate({threshold})"), "M if dim M ≥ threshold", move |m| {
        Ok(if m.dim() >= threshold {
            m.full_submodule()
        } else {
            m.zero_submodule()
        })
    })
}

/// `M` when `dim M ≤ bound`, else `0`.
pub fn dimension_cap(bound: usize) -> Selector {
    Selector::new(format!("dimcap({bound})"), "M if dim M ≤ bound", move |m| {
        Ok(if m.dim() <= bound {
            m.full_submodule()
        } else {
            m.zero_submodule()
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::{injective_hull, smile};

    fn setup() -> (Arc<Algebra>, Vec<Arc<ModuleRep>>) {
        let r = Arc::new(Algebra::truncated_polynomial(2, 3));
        let e = injective_hull(&r).unwrap();
        let mods = vec![
            Arc::new(ModuleRep::regular(&r)),
            Arc::new(ModuleRep::residue_field(&r)),
            e,
            Arc::new(ModuleRep::cyclic(&r, &r.m_power_ideal(2))),
            Arc::new(ModuleRep::free(&r, 2)),
        ];
        (r, mods)
    }

    #[test]
    fn trace_and_tom_closed_forms() {
        let (r, mods) = setup();
        let lab = Lab::exact();
        let reg = mods[0].clone();
        for i in r.enumerate_ideals(100).unwrap() {
            let cyc = Arc::new(ModuleRep::cyclic(&r, &i));
            let gen = if cyc.dim() == 0 { vec![] } else { vec![{
                let mut v = vec![0; cyc.dim()];
                v[0] = 1;
                v
            }] };
            let tr = trace(&lab, "R/I", cyc.clone(), gen.clone()).unwrap();
            let tm = tom(&lab, "R/I", cyc.clone(), gen).unwrap();
            let tr_i = trace(&lab, "I", reg.clone(), i.basis()).unwrap();
            let tm_i = tom(&lab, "I", reg.clone(), i.basis()).unwrap();
            for m in &mods {
                assert_eq!(tr.eval(m).unwrap(), m.annihilated_by(&i));
                assert_eq!(tm.eval(m).unwrap(), m.ideal_times_module(&i));
                assert_eq!(tr_i.eval(m).unwrap(), m.ideal_times_module(&i));
                assert_eq!(tm_i.eval(m).unwrap(), m.annihilated_by(&i));
            }
        }
    }

    #[test]
    fn free_trace_and_tom() {
        let (r, mods) = setup();
        let lab = Lab::exact();
        let reg = mods[0].clone();
        let tr = trace(&lab, "R", reg.clone(), vec![r.one()]).unwrap();
        let tm = tom(&lab, "R", reg, vec![r.one()]).unwrap();
        for m in &mods {
            assert!(tr.eval(m).unwrap().is_full());
            assert!(tm.eval(m).unwrap().is_zero());
        }
    }

    #[test]
    fn degenerate_limits_and_torsion() {
        let (r, mods) = setup();
        let lab = Lab::exact();
        let m = r.maximal_ideal();
        for x in &mods {
            assert!(h0(&r, "m", m.clone()).eval(x).unwrap().is_full());
            assert!(adic_kernel(&r, "m", m.clone()).eval(x).unwrap().is_zero());
            assert!(h0(&r, "R", r.unit_ideal()).eval(x).unwrap().is_zero());
            assert!(tto(&lab, &r, "units", &[vec![1, 1, 0]]).eval(x).unwrap().is_zero());
            assert!(dv(&lab, &r, "units", &[vec![1, 1, 0]]).eval(x).unwrap().is_full());
            assert!(tto(&lab, &r, "x", &[vec![0, 1, 0]]).eval(x).unwrap().is_full());
            assert!(dv(&lab, &r, "x", &[vec![0, 1, 0]]).eval(x).unwrap().is_zero());
        }
    }

    #[test]
    fn star_on_dual_numbers_by_enumeration() {
        let r = Arc::new(Algebra::truncated_polynomial(2, 2));
        let reg = Arc::new(ModuleRep::regular(&r));
        let star = frobenius_star(&r).eval(&reg).unwrap();
        // u = a + bx has u^2 = a; keep the u with u^2 = 0.
        let oracle: Vec<Vec<u32>> = [[0u32, 0], [0, 1], [1, 0], [1, 1]]
            .into_iter()
            .filter(|u| r.pow(u, 2).iter().all(|&c| c == 0))
            .map(|u| u.to_vec())
            .collect();
        assert_eq!(star, reg.submodule_spanned(&oracle).unwrap());
        assert_eq!(star.basis(), vec![vec![0, 1]]);
    }

    #[test]
    fn star_over_a_field_is_zero() {
        let f = Arc::new(Algebra::truncated_polynomial(5, 1));
        let m = Arc::new(ModuleRep::free(&f, 3));
        assert!(frobenius_star(&f).eval(&m).unwrap().is_zero());
    }

    #[test]
    fn scalar_selector_identities() {
        let (r, mods) = setup();
        let lab = Lab::exact();
        for m in &mods {
            assert!(mul("R", r.unit_ideal()).eval(m).unwrap().is_full());
            assert!(annsel("0", r.zero_ideal()).eval(m).unwrap().is_full());
            for i in r.enumerate_ideals(100).unwrap() {
                let dual = smile(&lab, &annsel("I", i.clone()));
                assert_eq!(dual.eval(m).unwrap(), mul("I", i).eval(m).unwrap());
            }
        }
    }

    #[test]
    fn finitistic_agrees_with_order_preserving_selectors() {
        let (_, mods) = setup();
        let f = finitistic(&socle(), 8, 10_000);
        for m in &mods {
            assert_eq!(f.eval(m).unwrap(), socle().eval(m).unwrap());
        }
        assert!(finitistic(&zero(), 2, 100).eval(&mods[4]).unwrap().is_zero());
    }

    #[test]
    fn source_vectors_must_live_in_l() {
        let (r, mods) = setup();
        let err = trace(&Lab::exact(), "R", mods[0].clone(), vec![vec![1, 0]]).unwrap_err();
        assert_eq!(err, SelectorError::NotInSource { expected: 3, found: 2 });
        let _ = r;
    }
}
