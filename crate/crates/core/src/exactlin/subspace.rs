use std::fmt;

use super::{FpMatrix, LinAlgError, Result};

/// A subspace of `k^n` held in canonical form.
///
/// The columns of `basis` are the nonzero rows of the reduced row echelon
/// form of any spanning set, so pivot rows strictly increase and every pivot
/// entry is the only nonzero entry in its row. Two subspaces are equal
/// exactly when their basis matrices are identical.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(k^{}, dim {}) {:?}", self.ambient, self.dim(), self.basis_vectors())
    }
}

impl Subspace {
    pub fn zero(p: u32, ambient: usize) -> Result<Self> {
        Ok(Subspace {
            ambient,
            basis: FpMatrix::zeros(p, ambient, 0)?,
            pivots: Vec::new(),
        })
    }

    pub fn full(p: u32, ambient: usize) -> Result<Self> {
        Ok(Subspace {
            ambient,
            basis: FpMatrix::identity(p, ambient)?,
            pivots: (0..ambient).collect(),
        })
    }

    /// Span of arbitrary vectors (entries taken mod `p`).
    pub fn span(p: u32, ambient: usize, vectors: &[Vec<u32>]) -> Result<Self> {
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != ambient {
                return Err(LinAlgError::Ragged {
                    row: i,
                    expected: ambient,
                    found: v.len(),
                });
            }
        }
        FpMatrix::zeros(p, 0, 0)?;
        Ok(Self::from_vectors_unchecked(p, ambient, vectors.to_vec()))
    }

    pub(crate) fn from_vectors_unchecked(p: u32, ambient: usize, vectors: Vec<Vec<u32>>) -> Self {
        let rows = FpMatrix::from_row_vectors(p, ambient, &vectors)
            .expect("callers pass well-formed vectors over a validated prime");
        let (r, pivots) = rows.rref_with_pivots();
        let basis = r.row_block(0, pivots.len()).transpose();
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn p(&self) -> u32 {
        self.basis.p()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.ambient
    }

    /// Basis matrix; its columns are the canonical basis vectors.
    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<u32>> {
        self.basis.columns()
    }

    /// Pivot row of each basis column.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots; the standard basis vectors at these
    /// positions span a complement.
    pub fn complement_coords(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &r in &self.pivots {
            is_pivot[r] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }

    fn check_ambient(&self, other: &Subspace, op: &'static str) -> Result<()> {
        if self.p() != other.p() {
            return Err(LinAlgError::PrimeMismatch(self.p(), other.p()));
        }
        if self.ambient != other.ambient {
            return Err(LinAlgError::DimensionMismatch {
                op,
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    /// Remainder of `v` after clearing every pivot coordinate with basis vectors.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p() as u64;
        let mut out = v.to_vec();
        for (j, &r) in self.pivots.iter().enumerate() {
            let c = out[r] as u64;
            if c == 0 {
                continue;
            }
            for (i, slot) in out.iter_mut().enumerate() {
                let b = self.basis.get(i, j) as u64;
                if b != 0 {
                    *slot = ((*slot as u64 + (p - c) * b) % p) as u32;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        v.len() == self.ambient && self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&r| v[r]).collect())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient
            && self.p() == other.p()
            && (0..self.dim()).all(|j| other.contains(&self.basis.column(j)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other, "sum")?;
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Ok(Self::from_vectors_unchecked(self.p(), self.ambient, vs))
    }

    /// Intersection, read off the kernel of `[A | -B]`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other, "intersection")?;
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.p(), self.ambient);
        }
        let stacked = self.basis.hstack(&other.basis.scale(self.p() - 1))?;
        let k = stacked.kernel();
        let a = self.dim();
        let vs = k
            .basis_vectors()
            .into_iter()
            .map(|x| self.basis.mul_vec(&x[..a]).expect("shape fixed above"))
            .collect();
        Ok(Self::from_vectors_unchecked(self.p(), self.ambient, vs))
    }

    /// Image under the linear map `f: k^ambient -> k^rows(f)`.
    pub fn image(&self, f: &FpMatrix) -> Result<Subspace> {
        if f.cols() != self.ambient {
            return Err(LinAlgError::DimensionMismatch {
                op: "image",
                left: f.cols(),
                right: self.ambient,
            });
        }
        Ok(f.mul(&self.basis)?.image())
    }

    /// Preimage `{x : f x ∈ self}` under `f: k^cols(f) -> k^ambient`.
    pub fn preimage(&self, f: &FpMatrix) -> Result<Subspace> {
        if f.rows() != self.ambient {
            return Err(LinAlgError::DimensionMismatch {
                op: "preimage",
                left: f.rows(),
                right: self.ambient,
            });
        }
        let n = f.cols();
        let stacked = f.hstack(&self.basis.scale(self.p() - 1))?;
        let k = stacked.kernel();
        let vs = k.basis_vectors().into_iter().map(|x| x[..n].to_vec()).collect();
        Ok(Self::from_vectors_unchecked(self.p(), n, vs))
    }

    /// `{z : ⟨s, z⟩ = 0 for all s ∈ self}` where `⟨s, z⟩ = sᵀ P z` and `P`
    /// has shape `ambient × m`. The result lives in `k^m`.
    pub fn perp(&self, pairing: &FpMatrix) -> Result<Subspace> {
        if pairing.rows() != self.ambient {
            return Err(LinAlgError::DimensionMismatch {
                op: "perp",
                left: pairing.rows(),
                right: self.ambient,
            });
        }
        if self.is_zero() {
            return Subspace::full(self.p(), pairing.cols());
        }
        Ok(self.basis.transpose().mul(pairing)?.kernel())
    }

    /// Perp under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.p(), self.ambient).expect("prime already validated");
        }
        self.basis.transpose().kernel()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_sum_and_intersection() {
        let v = Subspace::span(3, 3, &[vec![1, 2, 0], vec![0, 1, 1]]).unwrap();
        let z = Subspace::zero(3, 3).unwrap();
        assert_eq!(v.sum(&z).unwrap(), v);
        assert_eq!(v.intersection(&v).unwrap(), v);
        assert!(v.intersection(&z).unwrap().is_zero());
    }

    #[test]
    fn perp_of_first_axis_over_f2() {
        let s = Subspace::span(2, 2, &[vec![1, 0]]).unwrap();
        let dot = FpMatrix::identity(2, 2).unwrap();
        let perp = s.perp(&dot).unwrap();
        // Exhaust F_2^2 for vectors orthogonal to (1,0).
        let expected: Vec<Vec<u32>> = [[0u32, 0], [0, 1], [1, 0], [1, 1]]
            .into_iter()
            .filter(|z| z[0] == 0)
            .map(|z| z.to_vec())
            .collect();
        for z in [[0u32, 0], [0, 1], [1, 0], [1, 1]] {
            assert_eq!(perp.contains(&z), expected.contains(&z.to_vec()));
        }
        assert_eq!(perp, Subspace::span(2, 2, &[vec![0, 1]]).unwrap());
    }

    #[test]
    fn canonical_form_is_unique() {
        let a = Subspace::span(5, 3, &[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let b = Subspace::span(5, 3, &[vec![1, 2, 1], vec![2, 2, 0], vec![3, 3, 0]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.pivots(), &[0, 1]);
        assert_eq!(a.complement_coords(), vec![2]);
    }

    #[test]
    fn coordinates_and_reduce() {
        let a = Subspace::span(7, 3, &[vec![1, 0, 3], vec![0, 1, 5]]).unwrap();
        let v = vec![2, 4, (2 * 3 + 4 * 5) % 7];
        assert_eq!(a.coordinates(&v), Some(vec![2, 4]));
        assert_eq!(a.coordinates(&[0, 0, 1]), None);
        assert_eq!(a.reduce(&[0, 0, 1]), vec![0, 0, 1]);
    }

    #[test]
    fn preimage_and_image() {
        // f(x, y) = (x + y, 0) over F_2
        let f = FpMatrix::from_rows(2, 2, &[[1i64, 1], [0, 0]]).unwrap();
        let target = Subspace::zero(2, 2).unwrap();
        let pre = target.preimage(&f).unwrap();
        assert_eq!(pre, Subspace::span(2, 2, &[vec![1, 1]]).unwrap());
        let full = Subspace::full(2, 2).unwrap();
        assert_eq!(full.image(&f).unwrap(), Subspace::span(2, 2, &[vec![1, 0]]).unwrap());
    }

    #[test]
    fn dimension_mismatch_reported() {
        let a = Subspace::zero(2, 2).unwrap();
        let b = Subspace::zero(2, 3).unwrap();
        assert!(matches!(a.sum(&b), Err(LinAlgError::DimensionMismatch { .. })));
    }
}
