//! Matlis duality for finite-length modules and the smile dual of selectors.
//!
//! Over a finite local algebra the Matlis dual is the vector-space dual with
//! transposed actions, and the evaluation pairing is the identity matrix in
//! dual bases.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::Algebra;
use crate::exactlin::FpMatrix;
use crate::lab::Lab;
use crate::modrep::{ModMap, ModuleError, ModuleRep, Submodule};
use crate::selectors::{self, Selector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("socle of the injective hull has dimension {0}, expected 1")]
    SocleDimension(usize),
    #[error("dual of the injective hull is not the regular module")]
    NotReflexive,
    #[error("Hom into the injective hull is not isomorphic to the transpose dual")]
    HomRealization,
    #[error(transparent)]
    Module(#[from] ModuleError),
}

#[derive(Debug, Clone)]
pub struct DualPackage {
    pub module: Arc<ModuleRep>,
    pub dual: Arc<ModuleRep>,
    /// `⟨g, z⟩ = gᵀ P z` for `g ∈ M^∨`, `z ∈ M`.
    pub pairing: FpMatrix,
    pub double_dual_iso: ModMap,
}

pub fn dual_module(m: &ModuleRep) -> Arc<ModuleRep> {
    let actions = m.actions().iter().map(FpMatrix::transpose).collect();
    Arc::new(ModuleRep::new_unchecked(m.algebra().clone(), m.dim(), actions))
}

pub fn matlis_dual(m: &Arc<ModuleRep>) -> DualPackage {
    let dual = dual_module(m);
    let double = dual_module(&dual);
    let id = FpMatrix::identity(m.p(), m.dim()).expect("validated prime");
    let double_dual_iso = ModMap::new(m.clone(), double, id.clone()).expect("transposing twice is the identity");
    debug_assert!(double_dual_iso.is_iso());
    DualPackage {
        module: m.clone(),
        dual,
        pairing: id,
        double_dual_iso,
    }
}

/// `E = R^∨`, checked to have a one-dimensional socle and `E^∨ = R`.
pub fn injective_hull(algebra: &Arc<Algebra>) -> Result<Arc<ModuleRep>, DualityError> {
    let r = ModuleRep::regular(algebra);
    let e = dual_module(&r);
    let socle = e.socle().dim();
    if socle != 1 {
        return Err(DualityError::SocleDimension(socle));
    }
    if *dual_module(&e) != r {
        return Err(DualityError::NotReflexive);
    }
    Ok(e)
}

/// `f^∨: N^∨ → M^∨`.
pub fn dual_map(f: &ModMap) -> ModMap {
    ModMap::new(dual_module(f.target()), dual_module(f.source()), f.matrix().transpose())
        .expect("transpose of a module map is a module map")
}

/// `L^⊥ = {g ∈ M^∨ : g(L) = 0}`, the dual of `M/L` inside `M^∨`.
pub fn perp_in_dual(l: &Submodule) -> Submodule {
    Submodule::from_space(l.space().annihilator())
}

/// `α^⌣(M) = {z : g(z) = 0 for all g ∈ α(M^∨)}`.
pub fn smile(lab: &Lab, alpha: &Selector) -> Selector {
    let lab = *lab;
    let inner = alpha.clone();
    Selector::new(
        format!("smile({})", alpha.name()),
        format!("smile dual of {}", alpha.name()),
        move |m| {
            let d = dual_module(m);
            let selected = inner.eval(&d)?;
            Ok(Submodule::from_space(lab.smile_space(&selected)))
        },
    )
}

/// `(M^∨/α(M^∨))^∨` embedded in `M` through the dual of the projection.
pub fn smile_via_quotient(lab: &Lab, alpha: &Selector, m: &Arc<ModuleRep>) -> selectors::Result<Submodule> {
    let d = dual_module(m);
    let selected = alpha.eval(&d)?;
    let q = lab.quotient(&d, &selected);
    Ok(Submodule::from_space(q.proj.matrix().transpose().image()))
}

/// The isomorphism `Hom_R(M, E) → M^∨` sending `f` to the functional
/// `z ↦ f(z)(1)`, i.e. row 0 of the matrix of `f`.
pub fn hom_realization(m: &Arc<ModuleRep>) -> Result<ModMap, DualityError> {
    let e = injective_hull(m.algebra())?;
    let hom = m.hom(&e)?;
    let columns: Vec<Vec<u32>> = hom.basis_maps().iter().map(|f| f.matrix().row(0)).collect();
    let matrix = FpMatrix::from_columns(m.p(), m.dim(), &columns).map_err(ModuleError::from)?;
    let f = ModMap::new(hom.module.clone(), dual_module(m), matrix).map_err(|_| DualityError::HomRealization)?;
    if !f.is_iso() {
        return Err(DualityError::HomRealization);
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_of_zero_and_field() {
        let r = Arc::new(Algebra::truncated_polynomial(2, 2));
        assert_eq!(dual_module(&ModuleRep::zero(&r)).dim(), 0);
        let f = Arc::new(Algebra::truncated_polynomial(3, 1));
        assert_eq!(*injective_hull(&f).unwrap(), ModuleRep::regular(&f));
    }

    #[test]
    fn hull_of_square_zero_algebra() {
        let r = Arc::new(Algebra::square_zero(2, 2));
        let e = injective_hull(&r).unwrap();
        assert_eq!(e.dim(), 3);
        assert_eq!(e.socle().dim(), 1);
        assert_eq!(ModuleRep::regular(&r).socle().dim(), 2);
    }

    #[test]
    fn gorenstein_hull_is_regular_up_to_iso() {
        let r = Arc::new(Algebra::truncated_polynomial(2, 3));
        let reg = Arc::new(ModuleRep::regular(&r));
        let e = injective_hull(&r).unwrap();
        // Solve the intertwining system and look for an invertible solution.
        let hom = reg.hom(&e).unwrap();
        let found = (1u32..(1 << hom.dim())).any(|mask| {
            let coords: Vec<u32> = (0..hom.dim()).map(|i| (mask >> i) & 1).collect();
            hom.map_from_coords(&coords).is_iso()
        });
        assert!(found);
    }

    #[test]
    fn dual_map_is_contravariant() {
        let r = Arc::new(Algebra::truncated_polynomial(2, 3));
        let reg = Arc::new(ModuleRep::regular(&r));
        let x = ModMap::new(reg.clone(), reg.clone(), r.regular_action(1).clone()).unwrap();
        let x2 = x.compose(&x);
        assert_eq!(dual_map(&x2).matrix(), dual_map(&x).compose(&dual_map(&x)).matrix());
        let id = ModMap::identity(&reg);
        assert_eq!(dual_map(&id).matrix(), id.matrix());
    }

    #[test]
    fn dual_of_residue_projection_is_socle_inclusion() {
        let r = Arc::new(Algebra::truncated_polynomial(2, 3));
        let reg = Arc::new(ModuleRep::regular(&r));
        let q = reg.quotient(&reg.submodule(r.maximal_ideal().space().clone()).unwrap());
        let inc = dual_map(&q.proj);
        assert!(inc.is_injective());
        let e = injective_hull(&r).unwrap();
        assert_eq!(**inc.target(), *e);
        assert_eq!(inc.full_image(), e.socle());
    }

    #[test]
    fn hom_into_hull_matches_transpose_dual() {
        let r = Arc::new(Algebra::square_zero(2, 2));
        for m in [ModuleRep::regular(&r), ModuleRep::residue_field(&r), ModuleRep::free(&r, 2)] {
            let m = Arc::new(m);
            assert!(hom_realization(&m).unwrap().is_iso());
        }
    }
}
