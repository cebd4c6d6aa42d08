use std::sync::Arc;

use super::{ModMap, ModuleRep, Submodule};
use crate::exactlin::{FpMatrix, Subspace};

/// `M ≅ coker(R^a → R^b)` on minimal generators.
///
/// Elements of `R^b` are vectors of length `b·d`, coordinate `k` occupying
/// positions `k·d .. (k+1)·d`.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub module: Arc<ModuleRep>,
    /// Lifts of a basis of `M/mM`.
    pub gens: Vec<Vec<u32>>,
    /// Minimal generators of the kernel of `R^b → M`, each a `b`-tuple of ring elements.
    pub rel: Vec<Vec<Vec<u32>>>,
    /// `R^b → M`.
    pub map: FpMatrix,
    /// A fixed linear section `M → R^b` of `map`.
    pub lift: FpMatrix,
    /// `R^b / R·rel → M`.
    pub iso: ModMap,
}

impl Presentation {
    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    /// `R`-coordinates of a lift of `u` along the generators.
    pub fn lift_coords(&self, u: &[u32]) -> Vec<Vec<u32>> {
        let d = self.module.algebra().dim();
        let flat = self.lift.mul_vec(u).expect("module vector");
        flat.chunks(d).map(|c| c.to_vec()).collect()
    }

    /// `R·rel ⊆ R^b`.
    pub fn relation_submodule(&self) -> Submodule {
        let d = self.module.algebra().dim();
        let free = ModuleRep::free(self.module.algebra(), self.rank());
        free.closure_of(&Subspace::from_vectors_unchecked(
            self.module.p(),
            self.rank() * d,
            self.rel.iter().map(|r| r.concat()).collect(),
        ))
    }

    /// Re-derives the round trip: the stored map from the cokernel is an
    /// isomorphism of modules.
    pub fn check(&self) -> bool {
        self.iso.linearity_failure().is_none() && self.iso.is_iso()
    }
}

fn split(v: &[u32], d: usize) -> Vec<Vec<u32>> {
    v.chunks(d).map(|c| c.to_vec()).collect()
}

impl ModuleRep {
    pub fn presentation(self: &Arc<Self>) -> Presentation {
        self.try_presentation().expect("generators of M/mM generate M")
    }

    /// `None` when lifts of generators of `M/mM` fail to generate `M`, which
    /// happens only if the actions are not those of a module over a local ring.
    pub fn try_presentation(self: &Arc<Self>) -> Option<Presentation> {
        let alg = self.algebra().clone();
        let p = self.p();
        let d = alg.dim();
        let n = self.dim();
        let mm = self.ideal_times_module(&alg.maximal_ideal());
        let gens: Vec<Vec<u32>> = mm
            .space()
            .complement_coords()
            .into_iter()
            .map(|c| {
                let mut e = vec![0u32; n];
                e[c] = 1;
                e
            })
            .collect();
        let b = gens.len();
        let mut columns = Vec::with_capacity(b * d);
        for g in &gens {
            for i in 0..d {
                columns.push(self.action(i).mul_vec(g).expect("module vector"));
            }
        }
        let map = FpMatrix::from_columns(p, n, &columns).expect("module vectors");
        let free = Arc::new(ModuleRep::free(&alg, b));
        let kernel = map.kernel();
        let mut m_kernel_vs = Vec::new();
        for v in kernel.basis_vectors() {
            for j in 1..d {
                m_kernel_vs.push(free.action(j).mul_vec(&v).expect("free module vector"));
            }
        }
        let mut span = Subspace::from_vectors_unchecked(p, b * d, m_kernel_vs);
        let mut rel = Vec::new();
        for v in kernel.basis_vectors() {
            if !span.contains(&v) {
                span = span
                    .sum(&Subspace::from_vectors_unchecked(p, b * d, vec![v.clone()]))
                    .expect("same ambient");
                rel.push(split(&v, d));
            }
        }
        debug_assert_eq!(span, kernel);
        let lift_columns: Vec<Vec<u32>> = (0..n)
            .map(|j| {
                let mut e = vec![0u32; n];
                e[j] = 1;
                map.solve(&e)
            })
            .collect::<Option<_>>()?;
        let lift = FpMatrix::from_columns(p, b * d, &lift_columns).expect("free module vectors");
        let relations = free.closure_of(&Subspace::from_vectors_unchecked(p, b * d, rel.iter().map(|r| r.concat()).collect()));
        let coker = free.quotient(&relations);
        let iso_matrix = map.mul(&coker.section).expect("consistent shapes");
        let iso = ModMap::new_unchecked(coker.module.clone(), self.clone(), iso_matrix);
        Some(Presentation {
            module: self.clone(),
            gens,
            rel,
            map,
            lift,
            iso,
        })
    }
}
