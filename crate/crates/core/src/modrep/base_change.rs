use std::sync::Arc;

use super::tensor::tensor_relations;
use super::{quotient_of_space, same_algebra, ModuleError, ModuleRep, Result};
use crate::algebra::FreeExtension;
use crate::exactlin::FpMatrix;

/// `M ⊗_R S` as an `S`-module together with `m ↦ m ⊗ 1`.
#[derive(Debug, Clone)]
pub struct BaseChange {
    pub module: Arc<ModuleRep>,
    /// `k`-linear map `M → M ⊗_R S`.
    pub unit_map: FpMatrix,
}

/// `S` viewed as an `R`-module through the structure map.
pub(crate) fn restricted_ext(ext: &FreeExtension) -> ModuleRep {
    let base = ext.base();
    let s = ext.ext();
    let actions = (0..base.dim())
        .map(|i| s.mult_matrix(&ext.phi(&base.basis_element(i))))
        .collect();
    ModuleRep::new_unchecked(base.clone(), s.dim(), actions)
}

impl ModuleRep {
    pub fn base_change(self: &Arc<Self>, ext: &FreeExtension) -> Result<BaseChange> {
        if !same_algebra(self.algebra(), ext.base()) {
            return Err(ModuleError::AlgebraMismatch);
        }
        let p = self.p();
        let s = ext.ext();
        let s_over_r = restricted_ext(ext);
        let rel = tensor_relations(self, &s_over_r);
        let id_m = FpMatrix::identity(p, self.dim())?;
        let s_actions: Vec<FpMatrix> = s
            .regular_actions()
            .iter()
            .map(|a| id_m.kron(a))
            .collect::<std::result::Result<_, _>>()?;
        let (actions, proj, _) = quotient_of_space(&s_actions, &rel);
        assert_eq!(
            proj.rows(),
            self.dim() * ext.rank(),
            "free base change multiplies the dimension by the rank"
        );
        let one = FpMatrix::from_columns(p, s.dim(), &[s.one()])?;
        let unit_map = proj.mul(&id_m.kron(&one)?)?;
        let module = Arc::new(ModuleRep::new_unchecked(s.clone(), proj.rows(), actions));
        Ok(BaseChange { module, unit_map })
    }
}
