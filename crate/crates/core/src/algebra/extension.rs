use std::sync::Arc;

use thiserror::Error;

use super::Algebra;
use crate::exactlin::FpMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("extension algebras live over different primes")]
    PrimeMismatch,
    #[error("structure map has shape {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    Shape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("structure map is not a ring homomorphism at (e_{0}, e_{1})")]
    NotRingHom(usize, usize),
    #[error("structure map does not send 1 to 1")]
    NotUnital,
    #[error("S is not free over R on the stored basis")]
    NotFree,
}

/// A ring map `φ: R → S` together with an `R`-basis `b_1..b_t` of `S`.
#[derive(Debug, Clone)]
pub struct FreeExtension {
    base: Arc<Algebra>,
    ext: Arc<Algebra>,
    structure: FpMatrix,
    basis: Vec<Vec<u32>>,
    /// Inverse of `R^t → S`, `(r_k) ↦ Σ φ(r_k) b_k`.
    coords: FpMatrix,
}

impl FreeExtension {
    pub fn new(
        base: Arc<Algebra>,
        ext: Arc<Algebra>,
        structure: FpMatrix,
        basis: Vec<Vec<u32>>,
    ) -> Result<Self, ExtensionError> {
        if base.p() != ext.p() {
            return Err(ExtensionError::PrimeMismatch);
        }
        let (d, s) = (base.dim(), ext.dim());
        if structure.rows() != s || structure.cols() != d {
            return Err(ExtensionError::Shape {
                rows: structure.rows(),
                cols: structure.cols(),
                expected_rows: s,
                expected_cols: d,
            });
        }
        let phi = |a: &[u32]| structure.mul_vec(a).expect("shape checked");
        if phi(&base.one()) != ext.one() {
            return Err(ExtensionError::NotUnital);
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = phi(&base.mul(&base.basis_element(i), &base.basis_element(j)));
                let rhs = ext.mul(&phi(&base.basis_element(i)), &phi(&base.basis_element(j)));
                if lhs != rhs {
                    return Err(ExtensionError::NotRingHom(i, j));
                }
            }
        }
        let mut columns = Vec::with_capacity(d * basis.len());
        for b in &basis {
            if b.len() != s {
                return Err(ExtensionError::NotFree);
            }
            for i in 0..d {
                columns.push(ext.mul(&phi(&base.basis_element(i)), b));
            }
        }
        let psi = FpMatrix::from_columns(base.p(), s, &columns).map_err(|_| ExtensionError::NotFree)?;
        let coords = psi.inverse().ok_or(ExtensionError::NotFree)?;
        Ok(FreeExtension {
            base,
            ext,
            structure,
            basis,
            coords,
        })
    }

    /// `S = R[y]/(y^2)` with basis `e_0..e_{d-1}, y e_0..y e_{d-1}` and
    /// `R`-basis `{1, y}`.
    pub fn dual_numbers(base: &Arc<Algebra>) -> Self {
        let d = base.dim();
        let s = 2 * d;
        let mut mult = vec![vec![vec![0u32; s]; s]; s];
        for i in 0..d {
            for j in 0..d {
                let prod = &base.structure_constants()[i][j];
                for k in 0..d {
                    mult[i][j][k] = prod[k];
                    mult[i][d + j][d + k] = prod[k];
                    mult[d + i][j][d + k] = prod[k];
                }
            }
        }
        let labels = base
            .labels()
            .iter()
            .cloned()
            .chain(base.labels().iter().map(|l| if l == "1" { "y".to_string() } else { format!("y*{l}") }))
            .collect();
        let ext = Arc::new(
            Algebra::from_constants(base.p() as u64, Some(labels), mult).expect("R[y]/(y^2) is local"),
        );
        let mut structure = FpMatrix::zeros_unchecked(base.p(), s, d);
        for i in 0..d {
            structure.set(i, i, 1);
        }
        let one = ext.one();
        let y = ext.basis_element(d);
        FreeExtension::new(base.clone(), ext, structure, vec![one, y]).expect("R[y]/(y^2) is free of rank 2")
    }

    pub fn base(&self) -> &Arc<Algebra> {
        &self.base
    }

    pub fn ext(&self) -> &Arc<Algebra> {
        &self.ext
    }

    pub fn structure_map(&self) -> &FpMatrix {
        &self.structure
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn phi(&self, a: &[u32]) -> Vec<u32> {
        self.structure.mul_vec(a).expect("element of the base")
    }

    /// `R`-coordinates `(r_1..r_t)` of `s = Σ φ(r_k) b_k`.
    pub fn coordinates(&self, s: &[u32]) -> Vec<Vec<u32>> {
        let flat = self.coords.mul_vec(s).expect("element of the extension");
        flat.chunks(self.base.dim()).map(|c| c.to_vec()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_numbers_over_dual_numbers() {
        let r = Arc::new(Algebra::truncated_polynomial(2, 2));
        let ext = FreeExtension::dual_numbers(&r);
        assert_eq!(ext.ext().dim(), 4);
        assert_eq!(ext.rank(), 2);
        assert_eq!(ext.ext().nilpotency_index(), 3);
        let s = vec![1, 1, 0, 1];
        let c = ext.coordinates(&s);
        assert_eq!(c, vec![vec![1, 1], vec![0, 1]]);
    }

    #[test]
    fn non_free_basis_rejected() {
        let r = Arc::new(Algebra::truncated_polynomial(2, 2));
        let good = FreeExtension::dual_numbers(&r);
        let bad = FreeExtension::new(
            r.clone(),
            good.ext().clone(),
            good.structure_map().clone(),
            vec![good.ext().one()],
        );
        assert_eq!(bad.unwrap_err(), ExtensionError::NotFree);
    }

    #[test]
    fn non_unital_map_rejected() {
        let r = Arc::new(Algebra::truncated_polynomial(2, 2));
        let good = FreeExtension::dual_numbers(&r);
        let zero = FpMatrix::zeros(2, 4, 2).unwrap();
        let bad = FreeExtension::new(r.clone(), good.ext().clone(), zero, good.basis().to_vec());
        assert_eq!(bad.unwrap_err(), ExtensionError::NotUnital);
    }
}
