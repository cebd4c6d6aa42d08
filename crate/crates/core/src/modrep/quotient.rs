use std::sync::Arc;

use super::{ModMap, ModuleRep, Submodule};
use crate::exactlin::{FpMatrix, Subspace};

/// `M/L` with its projection and the fixed linear section `M/L → M`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub module: Arc<ModuleRep>,
    pub proj: ModMap,
    /// Sends the quotient basis vector at position `j` to the standard basis
    /// vector of `M` at the `j`-th non-pivot coordinate of `L`.
    pub section: FpMatrix,
}

/// Quotient of a space with endomorphisms by an invariant subspace.
///
/// The complement is spanned by the standard basis vectors at the non-pivot
/// coordinates of the canonical basis of `sub`; the projection reduces a
/// vector modulo `sub` and reads off those coordinates.
pub(crate) fn quotient_of_space(actions: &[FpMatrix], sub: &Subspace) -> (Vec<FpMatrix>, FpMatrix, FpMatrix) {
    let p = sub.p();
    let n = sub.ambient_dim();
    let comp = sub.complement_coords();
    let q = comp.len();
    let mut proj = FpMatrix::zeros_unchecked(p, q, n);
    for j in 0..n {
        let mut e = vec![0u32; n];
        e[j] = 1;
        let r = sub.reduce(&e);
        for (row, &c) in comp.iter().enumerate() {
            proj.set(row, j, r[c]);
        }
    }
    let mut section = FpMatrix::zeros_unchecked(p, n, q);
    for (col, &c) in comp.iter().enumerate() {
        section.set(c, col, 1);
    }
    let induced = actions
        .iter()
        .map(|a| proj.mul(a).and_then(|x| x.mul(&section)).expect("consistent shapes"))
        .collect();
    (induced, proj, section)
}

impl ModuleRep {
    pub fn quotient(self: &Arc<Self>, l: &Submodule) -> Quotient {
        let (actions, proj, section) = quotient_of_space(self.actions(), l.space());
        let module = Arc::new(ModuleRep::new_unchecked(self.algebra().clone(), proj.rows(), actions));
        Quotient {
            proj: ModMap::new_unchecked(self.clone(), module.clone(), proj),
            module,
            section,
        }
    }
}
