use std::sync::Arc;

use super::{same_algebra, ModMap, ModuleError, ModuleRep, Result, Submodule};
use crate::exactlin::FpMatrix;

/// `M ⊕ N` with its canonical injections and projections.
#[derive(Debug, Clone)]
pub struct DirectSum {
    pub module: Arc<ModuleRep>,
    pub inj: [ModMap; 2],
    pub proj: [ModMap; 2],
}

impl DirectSum {
    /// `ι_1(U) + ι_2(V)`.
    pub fn sum_of(&self, u: &Submodule, v: &Submodule) -> Submodule {
        self.inj[0].image(u).sum(&self.inj[1].image(v))
    }
}

/// A submodule viewed as a module in its own right, in the coordinates of its
/// canonical basis.
#[derive(Debug, Clone)]
pub struct SubmoduleModule {
    pub module: Arc<ModuleRep>,
    pub inclusion: ModMap,
}

impl ModuleRep {
    pub fn direct_sum(self: &Arc<Self>, other: &Arc<ModuleRep>) -> Result<DirectSum> {
        if !same_algebra(self.algebra(), other.algebra()) {
            return Err(ModuleError::AlgebraMismatch);
        }
        let p = self.p();
        let (a, b) = (self.dim(), other.dim());
        let actions = self
            .actions()
            .iter()
            .zip(other.actions())
            .map(|(x, y)| x.block_diag(y))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let module = Arc::new(ModuleRep::new_unchecked(self.algebra().clone(), a + b, actions));
        let mut i1 = FpMatrix::zeros(p, a + b, a)?;
        let mut i2 = FpMatrix::zeros(p, a + b, b)?;
        for k in 0..a {
            i1.set(k, k, 1);
        }
        for k in 0..b {
            i2.set(a + k, k, 1);
        }
        let (p1, p2) = (i1.transpose(), i2.transpose());
        Ok(DirectSum {
            inj: [
                ModMap::new_unchecked(self.clone(), module.clone(), i1),
                ModMap::new_unchecked(other.clone(), module.clone(), i2),
            ],
            proj: [
                ModMap::new_unchecked(module.clone(), self.clone(), p1),
                ModMap::new_unchecked(module.clone(), other.clone(), p2),
            ],
            module,
        })
    }

    pub fn submodule_as_module(self: &Arc<Self>, l: &Submodule) -> SubmoduleModule {
        let basis = l.space().basis();
        let pivots = l.space().pivots();
        let actions = self
            .actions()
            .iter()
            .map(|a| {
                let image = a.mul(basis).expect("submodule of this module");
                let mut restricted = FpMatrix::zeros_unchecked(self.p(), pivots.len(), pivots.len());
                for (row, &r) in pivots.iter().enumerate() {
                    for col in 0..pivots.len() {
                        restricted.set(row, col, image.get(r, col));
                    }
                }
                restricted
            })
            .collect();
        let module = Arc::new(ModuleRep::new_unchecked(self.algebra().clone(), l.dim(), actions));
        SubmoduleModule {
            inclusion: ModMap::new_unchecked(module.clone(), self.clone(), basis.clone()),
            module,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;

    #[test]
    fn injections_and_projections() {
        let r = Arc::new(Algebra::truncated_polynomial(2, 3));
        let m = Arc::new(ModuleRep::regular(&r));
        let k = Arc::new(ModuleRep::residue_field(&r));
        let s = m.direct_sum(&k).unwrap();
        assert_eq!(s.module.dim(), 4);
        for i in 0..2 {
            for j in 0..2 {
                let c = s.proj[i].compose(&s.inj[j]);
                if i == j {
                    assert_eq!(c.matrix(), ModMap::identity(c.source()).matrix());
                } else {
                    assert!(c.matrix().is_zero());
                }
            }
            assert!(s.inj[i].linearity_failure().is_none());
            assert!(s.proj[i].linearity_failure().is_none());
        }
        let z = Arc::new(ModuleRep::zero(&r));
        assert_eq!(*m.direct_sum(&z).unwrap().module, *m);
    }

    #[test]
    fn submodule_restriction() {
        let r = Arc::new(Algebra::truncated_polynomial(2, 3));
        let m = Arc::new(ModuleRep::regular(&r));
        let x = m.generated(&[vec![0, 1, 0]]).unwrap();
        let sm = m.submodule_as_module(&x);
        assert_eq!(sm.module.dim(), 2);
        assert!(ModuleRep::new(r.clone(), 2, sm.module.actions().to_vec()).is_ok());
        assert!(sm.inclusion.linearity_failure().is_none());
        assert_eq!(sm.inclusion.full_image(), x);
    }
}
