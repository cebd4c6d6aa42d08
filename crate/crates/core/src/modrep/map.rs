use std::fmt;
use std::sync::Arc;

use super::{same_algebra, ModuleError, ModuleRep, Result, Submodule};
use crate::exactlin::{FpMatrix, Subspace};

/// An `R`-linear map between two modules.
#[derive(Clone)]
pub struct ModMap {
    source: Arc<ModuleRep>,
    target: Arc<ModuleRep>,
    matrix: FpMatrix,
}

impl fmt::Debug for ModMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModMap({} -> {}) {:?}", self.source.dim(), self.target.dim(), self.matrix)
    }
}

impl ModMap {
    /// Checks shape and `R`-linearity against every algebra generator.
    pub fn new(source: Arc<ModuleRep>, target: Arc<ModuleRep>, matrix: FpMatrix) -> Result<Self> {
        if !same_algebra(source.algebra(), target.algebra()) {
            return Err(ModuleError::AlgebraMismatch);
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(ModuleError::MapShape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                expected_rows: target.dim(),
                expected_cols: source.dim(),
            });
        }
        let map = ModMap {
            source,
            target,
            matrix,
        };
        if let Some(i) = map.linearity_failure() {
            return Err(ModuleError::NotLinear(i));
        }
        Ok(map)
    }

    pub(crate) fn new_unchecked(source: Arc<ModuleRep>, target: Arc<ModuleRep>, matrix: FpMatrix) -> Self {
        debug_assert_eq!(matrix.rows(), target.dim());
        debug_assert_eq!(matrix.cols(), source.dim());
        ModMap {
            source,
            target,
            matrix,
        }
    }

    /// First generator index where `f A^M_g ≠ A^N_g f`.
    pub fn linearity_failure(&self) -> Option<usize> {
        self.source.algebra().generators().iter().copied().find(|&g| {
            let lhs = self.matrix.mul(self.source.action(g)).expect("shapes checked");
            let rhs = self.target.action(g).mul(&self.matrix).expect("shapes checked");
            lhs != rhs
        })
    }

    pub fn identity(module: &Arc<ModuleRep>) -> Self {
        let id = FpMatrix::identity(module.p(), module.dim()).expect("validated prime");
        ModMap::new_unchecked(module.clone(), module.clone(), id)
    }

    pub fn zero(source: &Arc<ModuleRep>, target: &Arc<ModuleRep>) -> Self {
        let z = FpMatrix::zeros(source.p(), target.dim(), source.dim()).expect("validated prime");
        ModMap::new_unchecked(source.clone(), target.clone(), z)
    }

    pub fn source(&self) -> &Arc<ModuleRep> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ModuleRep> {
        &self.target
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        self.matrix.mul_vec(v).expect("vector of the source module")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModMap) -> ModMap {
        let m = self.matrix.mul(&other.matrix).expect("composable maps");
        ModMap::new_unchecked(other.source.clone(), self.target.clone(), m)
    }

    pub fn image(&self, u: &Submodule) -> Submodule {
        Submodule::from_space(u.space().image(&self.matrix).expect("submodule of the source"))
    }

    pub fn full_image(&self) -> Submodule {
        Submodule::from_space(self.matrix.image())
    }

    pub fn kernel(&self) -> Submodule {
        Submodule::from_space(self.matrix.kernel())
    }

    pub fn preimage(&self, v: &Submodule) -> Submodule {
        Submodule::from_space(v.space().preimage(&self.matrix).expect("submodule of the target"))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn inverse(&self) -> Option<ModMap> {
        let inv = self.matrix.inverse()?;
        Some(ModMap::new_unchecked(self.target.clone(), self.source.clone(), inv))
    }

    /// Image of a subspace (not necessarily a submodule) of the source.
    pub fn image_space(&self, s: &Subspace) -> Subspace {
        s.image(&self.matrix).expect("subspace of the source")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;

    #[test]
    fn multiplication_by_x_is_linear_and_not_injective() {
        let r = Arc::new(Algebra::truncated_polynomial(2, 2));
        let m = Arc::new(ModuleRep::regular(&r));
        let f = ModMap::new(m.clone(), m.clone(), r.regular_action(1).clone()).unwrap();
        assert_eq!(f.rank(), 1);
        assert_eq!(f.kernel(), f.full_image());
        let bad = FpMatrix::from_rows(2, 2, &[[0i64, 1], [0, 0]]).unwrap();
        assert_eq!(ModMap::new(m.clone(), m, bad).unwrap_err(), ModuleError::NotLinear(1));
    }
}
