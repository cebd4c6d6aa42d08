use std::sync::Arc;

use super::{quotient_of_space, same_algebra, ModuleError, ModuleRep, Result};
use crate::exactlin::{FpMatrix, Subspace};

/// `M ⊗_R N` as a quotient of `M ⊗_k N`; index `a * n_N + b` holds `m_a ⊗ n_b`.
#[derive(Debug, Clone)]
pub struct Tensor {
    pub left: Arc<ModuleRep>,
    pub right: Arc<ModuleRep>,
    pub module: Arc<ModuleRep>,
    /// Projection `M ⊗_k N → M ⊗_R N`.
    pub proj: FpMatrix,
}

impl Tensor {
    /// Class of `m ⊗ n`.
    pub fn pure(&self, m: &[u32], n: &[u32]) -> Vec<u32> {
        let p = self.left.p();
        let a = FpMatrix::from_columns(p, m.len(), &[m.to_vec()]).expect("left vector");
        let b = FpMatrix::from_columns(p, n.len(), &[n.to_vec()]).expect("right vector");
        let t = a.kron(&b).expect("same prime").column(0);
        self.proj.mul_vec(&t).expect("tensor shape")
    }

    /// Matrix of `z ↦ m ⊗ z`.
    pub fn left_slice(&self, m: &[u32]) -> FpMatrix {
        let p = self.left.p();
        let a = FpMatrix::from_columns(p, m.len(), &[m.to_vec()]).expect("left vector");
        let id = FpMatrix::identity(p, self.right.dim()).expect("validated prime");
        self.proj.mul(&a.kron(&id).expect("same prime")).expect("tensor shape")
    }
}

/// Span of `(A_g m) ⊗ n − m ⊗ (B_g n)` over the generators `g`.
pub(crate) fn tensor_relations(left: &ModuleRep, right: &ModuleRep) -> Subspace {
    let p = left.p();
    let id_l = FpMatrix::identity(p, left.dim()).expect("validated prime");
    let id_r = FpMatrix::identity(p, right.dim()).expect("validated prime");
    let mut rel = Subspace::zero(p, left.dim() * right.dim()).expect("validated prime");
    for &g in left.algebra().generators() {
        let d = left
            .action(g)
            .kron(&id_r)
            .and_then(|x| x.sub(&id_l.kron(right.action(g))?))
            .expect("square shapes");
        rel = rel.sum(&d.image()).expect("same ambient");
    }
    rel
}

impl ModuleRep {
    pub fn tensor(self: &Arc<Self>, other: &Arc<ModuleRep>) -> Result<Tensor> {
        if !same_algebra(self.algebra(), other.algebra()) {
            return Err(ModuleError::AlgebraMismatch);
        }
        let p = self.p();
        let rel = tensor_relations(self, other);
        let id_l = FpMatrix::identity(p, self.dim())?;
        let id_r = FpMatrix::identity(p, other.dim())?;
        let left_actions: Vec<FpMatrix> = self
            .actions()
            .iter()
            .map(|a| a.kron(&id_r))
            .collect::<std::result::Result<_, _>>()?;
        let (actions, proj, section) = quotient_of_space(&left_actions, &rel);
        for (i, a) in actions.iter().enumerate() {
            let via_right = proj.mul(&id_l.kron(other.action(i))?)?.mul(&section)?;
            assert_eq!(&via_right, a, "tensor actions from the two factors disagree at e_{i}");
        }
        let module = Arc::new(ModuleRep::new_unchecked(self.algebra().clone(), proj.rows(), actions));
        Ok(Tensor {
            left: self.clone(),
            right: other.clone(),
            module,
            proj,
        })
    }
}
