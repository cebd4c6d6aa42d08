//! Finite-length modules as representations: one action matrix per basis
//! element of the algebra.

mod base_change;
mod hom;
mod map;
mod presentation;
mod quotient;
mod sum;
mod tensor;

pub use base_change::BaseChange;
pub use hom::Hom;
pub use map::ModMap;
pub use presentation::Presentation;
pub use quotient::Quotient;
pub use sum::{DirectSum, SubmoduleModule};
pub use tensor::Tensor;

pub(crate) use quotient::quotient_of_space;

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::algebra::{Algebra, Ideal};
use crate::exactlin::{invariant_closure, enumerate_invariant_subspaces, EnumerationBudget, FpMatrix, LinAlgError, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("expected {expected} action matrices, found {found}")]
    ActionCount { expected: usize, found: usize },
    #[error("action {index} has shape {rows}x{cols}, expected {dim}x{dim}")]
    ActionShape {
        index: usize,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("action of the unit e_0 is not the identity")]
    UnitNotIdentity,
    #[error("representation law fails for (e_{0}, e_{1})")]
    RepresentationLaw(usize, usize),
    #[error("actions of e_{0} and e_{1} do not commute")]
    NotCommuting(usize, usize),
    #[error("subspace is not closed under the action of e_{0}")]
    NotInvariant(usize),
    #[error("vector of length {found} does not live in a module of dimension {expected}")]
    VectorLength { expected: usize, found: usize },
    #[error("map is not R-linear: it fails to commute with e_{0}")]
    NotLinear(usize),
    #[error("map has shape {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    MapShape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

pub type Result<T> = std::result::Result<T, ModuleError>;

/// An action-closed subspace of some module, in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Submodule {
    space: Subspace,
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Submodule{:?}", self.space.basis_vectors())
    }
}

impl Submodule {
    pub(crate) fn from_space(space: Subspace) -> Self {
        Submodule { space }
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.space.ambient_dim()
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }

    pub fn is_full(&self) -> bool {
        self.space.is_full()
    }

    pub fn basis(&self) -> Vec<Vec<u32>> {
        self.space.basis_vectors()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.space.contains(v)
    }

    pub fn is_submodule_of(&self, other: &Submodule) -> bool {
        self.space.is_subspace_of(&other.space)
    }

    pub fn sum(&self, other: &Submodule) -> Submodule {
        Submodule {
            space: self.space.sum(&other.space).expect("submodules of one module"),
        }
    }

    pub fn intersection(&self, other: &Submodule) -> Submodule {
        Submodule {
            space: self.space.intersection(&other.space).expect("submodules of one module"),
        }
    }
}

/// A module over a finite local algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleRep {
    algebra: Arc<Algebra>,
    dim: usize,
    actions: Vec<FpMatrix>,
}

impl fmt::Debug for ModuleRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleRep(dim {}, actions {:?})", self.dim, self.actions)
    }
}

pub(crate) fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl ModuleRep {
    /// Validates shapes, the unit action, the representation law and
    /// commutativity.
    pub fn new(algebra: Arc<Algebra>, dim: usize, actions: Vec<FpMatrix>) -> Result<Self> {
        let d = algebra.dim();
        if actions.len() != d {
            return Err(ModuleError::ActionCount {
                expected: d,
                found: actions.len(),
            });
        }
        for (index, a) in actions.iter().enumerate() {
            if a.rows() != dim || a.cols() != dim {
                return Err(ModuleError::ActionShape {
                    index,
                    rows: a.rows(),
                    cols: a.cols(),
                    dim,
                });
            }
            if a.p() != algebra.p() {
                return Err(LinAlgError::PrimeMismatch(a.p(), algebra.p()).into());
            }
        }
        if actions[0] != FpMatrix::identity(algebra.p(), dim)? {
            return Err(ModuleError::UnitNotIdentity);
        }
        let m = ModuleRep { algebra, dim, actions };
        for i in 0..d {
            for j in 0..d {
                let lhs = m.actions[i].mul(&m.actions[j])?;
                let rhs = m.act(&m.algebra.structure_constants()[i][j]);
                if lhs != rhs {
                    return Err(ModuleError::RepresentationLaw(i, j));
                }
                if j > i && lhs != m.actions[j].mul(&m.actions[i])? {
                    return Err(ModuleError::NotCommuting(i, j));
                }
            }
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(algebra: Arc<Algebra>, dim: usize, actions: Vec<FpMatrix>) -> Self {
        debug_assert_eq!(actions.len(), algebra.dim());
        ModuleRep { algebra, dim, actions }
    }

    pub fn regular(algebra: &Arc<Algebra>) -> Self {
        ModuleRep::new_unchecked(algebra.clone(), algebra.dim(), algebra.regular_actions().to_vec())
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Self {
        let p = algebra.p();
        let actions = (0..algebra.dim())
            .map(|_| FpMatrix::zeros(p, 0, 0).expect("validated prime"))
            .collect();
        ModuleRep::new_unchecked(algebra.clone(), 0, actions)
    }

    /// `k = R/m`.
    pub fn residue_field(algebra: &Arc<Algebra>) -> Self {
        let p = algebra.p();
        let actions = (0..algebra.dim())
            .map(|i| FpMatrix::from_rows(p, 1, &[[i64::from(i == 0)]]).expect("validated prime"))
            .collect();
        ModuleRep::new_unchecked(algebra.clone(), 1, actions)
    }

    /// `R/I`.
    pub fn cyclic(algebra: &Arc<Algebra>, ideal: &Ideal) -> Self {
        let r = Arc::new(ModuleRep::regular(algebra));
        let (actions, _, _) = quotient_of_space(&r.actions, ideal.space());
        let dim = algebra.dim() - ideal.dim();
        ModuleRep::new_unchecked(algebra.clone(), dim, actions)
    }

    /// `R^n`.
    pub fn free(algebra: &Arc<Algebra>, n: usize) -> Self {
        let p = algebra.p();
        let d = algebra.dim();
        let actions = algebra
            .regular_actions()
            .iter()
            .map(|a| {
                let mut acc = FpMatrix::zeros(p, 0, 0).expect("validated prime");
                for _ in 0..n {
                    acc = acc.block_diag(a).expect("same prime");
                }
                acc
            })
            .collect();
        ModuleRep::new_unchecked(algebra.clone(), n * d, actions)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn p(&self) -> u32 {
        self.algebra.p()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &FpMatrix {
        &self.actions[i]
    }

    pub fn actions(&self) -> &[FpMatrix] {
        &self.actions
    }

    /// Actions of the algebra generators; a subspace stable under these is
    /// stable under the whole algebra.
    pub fn generator_actions(&self) -> Vec<FpMatrix> {
        self.algebra.generators().iter().map(|&i| self.actions[i].clone()).collect()
    }

    /// Matrix of `z ↦ a z`.
    pub fn act(&self, a: &[u32]) -> FpMatrix {
        let mut out = FpMatrix::zeros_unchecked(self.p(), self.dim, self.dim);
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                out.add_scaled(&self.actions[i], c).expect("same shape");
            }
        }
        out
    }

    pub fn zero_submodule(&self) -> Submodule {
        Submodule::from_space(Subspace::zero(self.p(), self.dim).expect("validated prime"))
    }

    pub fn full_submodule(&self) -> Submodule {
        Submodule::from_space(Subspace::full(self.p(), self.dim).expect("validated prime"))
    }

    fn check_vectors(&self, vectors: &[Vec<u32>]) -> Result<()> {
        for v in vectors {
            if v.len() != self.dim {
                return Err(ModuleError::VectorLength {
                    expected: self.dim,
                    found: v.len(),
                });
            }
        }
        Ok(())
    }

    /// Smallest submodule containing `vectors`.
    pub fn generated(&self, vectors: &[Vec<u32>]) -> Result<Submodule> {
        self.check_vectors(vectors)?;
        let seed = Subspace::span(self.p(), self.dim, vectors)?;
        Ok(self.closure_of(&seed))
    }

    pub(crate) fn closure_of(&self, seed: &Subspace) -> Submodule {
        Submodule::from_space(invariant_closure(&self.generator_actions(), seed))
    }

    /// First algebra basis index whose action does not preserve `space`.
    pub fn invariance_failure(&self, space: &Subspace) -> Option<usize> {
        self.algebra.generators().iter().copied().find(|&i| {
            space
                .image(&self.actions[i])
                .map(|im| !im.is_subspace_of(space))
                .unwrap_or(true)
        })
    }

    /// Accepts `space` as a submodule after checking it is action-closed.
    pub fn submodule(&self, space: Subspace) -> Result<Submodule> {
        if space.ambient_dim() != self.dim {
            return Err(ModuleError::VectorLength {
                expected: self.dim,
                found: space.ambient_dim(),
            });
        }
        match self.invariance_failure(&space) {
            Some(i) => Err(ModuleError::NotInvariant(i)),
            None => Ok(Submodule::from_space(space)),
        }
    }

    /// Submodule from an explicit spanning list, which must already be closed.
    pub fn submodule_spanned(&self, vectors: &[Vec<u32>]) -> Result<Submodule> {
        self.check_vectors(vectors)?;
        self.submodule(Subspace::span(self.p(), self.dim, vectors)?)
    }

    /// `I L` for a submodule `L` (all of `M` when `L` is omitted).
    pub fn ideal_times(&self, ideal: &Ideal, l: &Submodule) -> Submodule {
        let mut vs = Vec::new();
        for b in ideal.basis() {
            let a = self.act(&b);
            for z in l.basis() {
                vs.push(a.mul_vec(&z).expect("module vector"));
            }
        }
        Submodule::from_space(Subspace::from_vectors_unchecked(self.p(), self.dim, vs))
    }

    /// `I M`.
    pub fn ideal_times_module(&self, ideal: &Ideal) -> Submodule {
        self.ideal_times(ideal, &self.full_submodule())
    }

    /// `(L :_M I) = {z : I z ⊆ L}`.
    pub fn colon(&self, l: &Submodule, ideal: &Ideal) -> Submodule {
        let mut acc = Subspace::full(self.p(), self.dim).expect("validated prime");
        for b in ideal.basis() {
            let pre = l.space.preimage(&self.act(&b)).expect("module shapes");
            acc = acc.intersection(&pre).expect("same ambient");
        }
        Submodule::from_space(acc)
    }

    /// `(L :_M w) = {z : w z ∈ L}`.
    pub fn colon_element(&self, l: &Submodule, w: &[u32]) -> Submodule {
        Submodule::from_space(l.space.preimage(&self.act(w)).expect("module shapes"))
    }

    /// `ann_M(I) = (0 :_M I)`.
    pub fn annihilated_by(&self, ideal: &Ideal) -> Submodule {
        self.colon(&self.zero_submodule(), ideal)
    }

    /// `ann_M(m)`.
    pub fn socle(&self) -> Submodule {
        self.annihilated_by(&self.algebra.maximal_ideal())
    }

    /// `ann_R(L)` for a submodule `L`: solves `Σ r_i A_i z = 0` for every basis vector `z` of `L`.
    pub fn annihilator_of(&self, l: &Submodule) -> Ideal {
        let d = self.algebra.dim();
        let basis = l.basis();
        let mut rows = Vec::with_capacity(basis.len() * self.dim);
        for z in &basis {
            let images: Vec<Vec<u32>> = self.actions.iter().map(|a| a.mul_vec(z).expect("module vector")).collect();
            for r in 0..self.dim {
                rows.push((0..d).map(|i| images[i][r]).collect::<Vec<u32>>());
            }
        }
        let system = FpMatrix::from_row_vectors(self.p(), d, &rows).expect("validated rows");
        let space = if rows.is_empty() {
            Subspace::full(self.p(), d).expect("validated prime")
        } else {
            system.kernel()
        };
        self.algebra.ideal_from_space(space).expect("annihilators are ideals")
    }

    /// `ann_R(M)`.
    pub fn annihilator(&self) -> Ideal {
        self.annihilator_of(&self.full_submodule())
    }

    /// `ann_R(z)`.
    pub fn annihilator_of_element(&self, z: &[u32]) -> Ideal {
        let l = Submodule::from_space(Subspace::from_vectors_unchecked(self.p(), self.dim, vec![z.to_vec()]));
        self.annihilator_of(&l)
    }

    /// Every submodule of dimension at most `max_dim`, in canonical order.
    pub fn enumerate_submodules(&self, max_dim: usize, budget: usize) -> std::result::Result<Vec<Submodule>, EnumerationBudget> {
        let subs = enumerate_invariant_subspaces(self.p(), self.dim, &self.generator_actions(), max_dim, budget)?;
        Ok(subs.into_iter().map(Submodule::from_space).collect())
    }

    /// A module isomorphic to this one through a random change of basis.
    pub fn random_iso_copy<G: Rng>(self: &Arc<Self>, rng: &mut G) -> ModMap {
        let p = self.p();
        let n = self.dim;
        let g = loop {
            let data = (0..n * n).map(|_| rng.gen_range(0..p)).collect();
            let g = FpMatrix::from_vec(p, n, n, data).expect("validated prime");
            if g.is_invertible() {
                break g;
            }
        };
        let g_inv = g.inverse().expect("checked invertible");
        let actions = self
            .actions
            .iter()
            .map(|a| g.mul(a).and_then(|x| x.mul(&g_inv)).expect("square shapes"))
            .collect();
        let copy = Arc::new(ModuleRep::new_unchecked(self.algebra.clone(), n, actions));
        ModMap::new_unchecked(self.clone(), copy, g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic() -> Arc<Algebra> {
        Arc::new(Algebra::truncated_polynomial(2, 3))
    }

    #[test]
    fn generated_submodules() {
        let r = cubic();
        let m = ModuleRep::regular(&r);
        assert!(m.generated(&[vec![0, 0, 0]]).unwrap().is_zero());
        assert!(m.generated(&[vec![1, 0, 0]]).unwrap().is_full());
        let x = m.generated(&[vec![0, 1, 0]]).unwrap();
        assert_eq!(x, m.submodule_spanned(&[vec![0, 1, 0], vec![0, 0, 1]]).unwrap());
    }

    #[test]
    fn annihilator_examples() {
        let r = cubic();
        let m = ModuleRep::regular(&r);
        assert!(m.annihilator().is_zero());
        let x2 = r.ideal(&[vec![0, 0, 1]]);
        let ann = m.annihilated_by(&x2);
        assert_eq!(ann.basis(), vec![vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(m.socle().dim(), 1);
        assert_eq!(m.annihilator_of_element(&[0, 1, 0]), x2);
    }

    #[test]
    fn validation_catches_broken_actions() {
        let r = cubic();
        let mut actions = ModuleRep::regular(&r).actions().to_vec();
        actions[2] = FpMatrix::zeros(2, 3, 3).unwrap();
        assert!(matches!(
            ModuleRep::new(r.clone(), 3, actions),
            Err(ModuleError::RepresentationLaw(_, _))
        ));
        let mut bad_unit = ModuleRep::regular(&r).actions().to_vec();
        bad_unit[0] = FpMatrix::zeros(2, 3, 3).unwrap();
        assert_eq!(ModuleRep::new(r, 3, bad_unit), Err(ModuleError::UnitNotIdentity));
    }

    #[test]
    fn free_and_cyclic_dims() {
        let r = cubic();
        assert_eq!(ModuleRep::free(&r, 2).dim(), 6);
        let x = r.maximal_ideal();
        let k = ModuleRep::cyclic(&r, &x);
        assert_eq!(k, ModuleRep::residue_field(&r));
    }
}
