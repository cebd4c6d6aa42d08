use std::sync::Arc;

use super::{same_algebra, ModMap, ModuleError, ModuleRep, Result};
use crate::exactlin::{FpMatrix, Subspace};

/// `Hom_R(M, N)` as a module, with `(r f)(z) = r f(z)`.
///
/// Maps are vectorized row-major: entry `(r, c)` of an `n_N × n_M` matrix sits
/// at index `r * n_M + c`.
#[derive(Debug, Clone)]
pub struct Hom {
    pub source: Arc<ModuleRep>,
    pub target: Arc<ModuleRep>,
    pub module: Arc<ModuleRep>,
    space: Subspace,
}

impl Hom {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Solution space inside `k^{n_N n_M}`.
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    fn matrix_of(&self, v: &[u32]) -> FpMatrix {
        FpMatrix::from_vec(self.source.p(), self.target.dim(), self.source.dim(), v.to_vec())
            .expect("vectorized map has the right length")
    }

    /// The map for basis element `i` of the Hom module.
    pub fn extract(&self, i: usize) -> ModMap {
        let v = self.space.basis().column(i);
        ModMap::new_unchecked(self.source.clone(), self.target.clone(), self.matrix_of(&v))
    }

    pub fn basis_maps(&self) -> Vec<ModMap> {
        (0..self.dim()).map(|i| self.extract(i)).collect()
    }

    /// The map with the given coordinates in the Hom module.
    pub fn map_from_coords(&self, coords: &[u32]) -> ModMap {
        let v = self.space.basis().mul_vec(coords).expect("coordinate vector");
        ModMap::new_unchecked(self.source.clone(), self.target.clone(), self.matrix_of(&v))
    }

    pub fn coords_of(&self, f: &FpMatrix) -> Option<Vec<u32>> {
        self.space.coordinates(&f.to_vec())
    }
}

impl ModuleRep {
    /// Solves `X A^M_g = A^N_g X` over the algebra generators.
    pub fn hom(self: &Arc<Self>, target: &Arc<ModuleRep>) -> Result<Hom> {
        if !same_algebra(self.algebra(), target.algebra()) {
            return Err(ModuleError::AlgebraMismatch);
        }
        let p = self.p();
        let (nm, nn) = (self.dim(), target.dim());
        let vars = nm * nn;
        let space = if vars == 0 {
            Subspace::zero(p, 0)?
        } else {
            let id_m = FpMatrix::identity(p, nm)?;
            let id_n = FpMatrix::identity(p, nn)?;
            let mut system: Option<FpMatrix> = None;
            for &g in self.algebra().generators() {
                let block = id_n
                    .kron(&self.action(g).transpose())?
                    .sub(&target.action(g).kron(&id_m)?)?;
                system = Some(match system {
                    None => block,
                    Some(s) => s.vstack(&block)?,
                });
            }
            match system {
                Some(s) => s.kernel(),
                None => Subspace::full(p, vars)?,
            }
        };
        let id_m = FpMatrix::identity(p, nm)?;
        let basis = space.basis_vectors();
        let mut actions = Vec::with_capacity(self.algebra().dim());
        for i in 0..self.algebra().dim() {
            let big = target.action(i).kron(&id_m)?;
            let mut a = FpMatrix::zeros(p, basis.len(), basis.len())?;
            for (j, s) in basis.iter().enumerate() {
                let image = big.mul_vec(s)?;
                let c = space.coordinates(&image).expect("Hom is closed under the action");
                for (row, x) in c.into_iter().enumerate() {
                    a.set(row, j, x);
                }
            }
            actions.push(a);
        }
        let module = Arc::new(ModuleRep::new_unchecked(self.algebra().clone(), basis.len(), actions));
        Ok(Hom {
            source: self.clone(),
            target: target.clone(),
            module,
            space,
        })
    }
}
