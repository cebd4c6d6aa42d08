use std::fmt;

use super::{LinAlgError, Result, Subspace};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn pow_mod(base: u32, mut exp: u64, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc = 1u64 % p64;
    let mut b = base as u64 % p64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p64;
        }
        b = b * b % p64;
        exp >>= 1;
    }
    acc as u32
}

/// Multiplicative inverse of a nonzero residue.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0, "zero has no inverse");
    pow_mod(a, p as u64 - 2, p)
}

/// A dense matrix over the prime field of order `p`, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMatrix(p={}, {}x{}) [", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(LinAlgError::NotPrime(p as u64));
        }
        Ok(Self::zeros_unchecked(p, rows, cols))
    }

    pub(crate) fn zeros_unchecked(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Result<Self> {
        let mut m = Self::zeros(p, n, n)?;
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        Ok(m)
    }

    /// Builds a matrix from signed integer rows, reducing every entry mod `p`.
    pub fn from_rows<R: AsRef<[i64]>>(p: u32, cols: usize, rows: &[R]) -> Result<Self> {
        let mut m = Self::zeros(p, rows.len(), cols)?;
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(LinAlgError::Ragged {
                    row: r,
                    expected: cols,
                    found: row.len(),
                });
            }
            for (c, &v) in row.iter().enumerate() {
                m.data[r * cols + c] = v.rem_euclid(p as i64) as u32;
            }
        }
        Ok(m)
    }

    /// Builds a matrix whose columns are the given (already reduced) vectors.
    pub fn from_columns(p: u32, rows: usize, columns: &[Vec<u32>]) -> Result<Self> {
        let mut m = Self::zeros(p, rows, columns.len())?;
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(LinAlgError::Ragged {
                    row: c,
                    expected: rows,
                    found: col.len(),
                });
            }
            for (r, &v) in col.iter().enumerate() {
                m.data[r * m.cols + c] = v % p;
            }
        }
        Ok(m)
    }

    /// Builds a matrix whose rows are the given (already reduced) vectors.
    pub fn from_row_vectors(p: u32, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut m = Self::zeros(p, rows.len(), cols)?;
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(LinAlgError::Ragged {
                    row: r,
                    expected: cols,
                    found: row.len(),
                });
            }
            for (c, &v) in row.iter().enumerate() {
                m.data[r * cols + c] = v % p;
            }
        }
        Ok(m)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> Vec<u32> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = Self::zeros_unchecked(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    fn check_prime(&self, other: &FpMatrix) -> Result<()> {
        if self.p != other.p {
            return Err(LinAlgError::PrimeMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_prime(other)?;
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch {
                op: "mul",
                left: self.cols,
                right: other.rows,
            });
        }
        let p = self.p as u64;
        let mut out = Self::zeros_unchecked(self.p, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (slot, &b) in acc.iter_mut().zip(orow) {
                    *slot = (*slot + a * b as u64) % p;
                }
            }
            for (c, &v) in acc.iter().enumerate() {
                out.data[r * other.cols + c] = v as u32;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch {
                op: "mul_vec",
                left: self.cols,
                right: v.len(),
            });
        }
        let p = self.p as u64;
        Ok((0..self.rows)
            .map(|r| {
                let row = &self.data[r * self.cols..(r + 1) * self.cols];
                (row.iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64 % p)
                    .sum::<u64>()
                    % p) as u32
            })
            .collect())
    }

    pub fn add(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_prime(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinAlgError::DimensionMismatch {
                op: "add",
                left: self.rows * self.cols,
                right: other.rows * other.cols,
            });
        }
        let p = self.p;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| ((a as u64 + b as u64) % p as u64) as u32)
            .collect();
        Ok(FpMatrix { data, ..*self })
    }

    pub fn sub(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.add(&other.scale(self.p - 1))
    }

    pub fn scale(&self, s: u32) -> FpMatrix {
        let p = self.p as u64;
        let s = s as u64 % p;
        FpMatrix {
            data: self.data.iter().map(|&a| (a as u64 * s % p) as u32).collect(),
            ..*self
        }
    }

    /// Adds `s * other` in place.
    pub fn add_scaled(&mut self, other: &FpMatrix, s: u32) -> Result<()> {
        self.check_prime(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinAlgError::DimensionMismatch {
                op: "add_scaled",
                left: self.rows * self.cols,
                right: other.rows * other.cols,
            });
        }
        let p = self.p as u64;
        let s = s as u64 % p;
        if s == 0 {
            return Ok(());
        }
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = ((*a as u64 + s * b as u64) % p) as u32;
        }
        Ok(())
    }

    pub fn hstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_prime(other)?;
        if self.rows != other.rows {
            return Err(LinAlgError::DimensionMismatch {
                op: "hstack",
                left: self.rows,
                right: other.rows,
            });
        }
        let cols = self.cols + other.cols;
        let mut out = Self::zeros_unchecked(self.p, self.rows, cols);
        for r in 0..self.rows {
            out.data[r * cols..r * cols + self.cols]
                .copy_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
            out.data[r * cols + self.cols..(r + 1) * cols]
                .copy_from_slice(&other.data[r * other.cols..(r + 1) * other.cols]);
        }
        Ok(out)
    }

    pub fn vstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_prime(other)?;
        if self.cols != other.cols {
            return Err(LinAlgError::DimensionMismatch {
                op: "vstack",
                left: self.cols,
                right: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FpMatrix {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Columns `start..end` as a new matrix.
    pub fn column_block(&self, start: usize, end: usize) -> FpMatrix {
        let mut out = Self::zeros_unchecked(self.p, self.rows, end - start);
        for r in 0..self.rows {
            for c in start..end {
                out.data[r * (end - start) + c - start] = self.get(r, c);
            }
        }
        out
    }

    /// Rows `start..end` as a new matrix.
    pub fn row_block(&self, start: usize, end: usize) -> FpMatrix {
        FpMatrix {
            p: self.p,
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    /// Reduced row echelon form together with the pivot column of each nonzero row.
    pub fn rref_with_pivots(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let p = self.p as u64;
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            if pr != lead {
                for k in 0..m.cols {
                    m.data.swap(pr * m.cols + k, lead * m.cols + k);
                }
            }
            let inv = inv_mod(m.get(lead, c), self.p) as u64;
            for k in 0..m.cols {
                let idx = lead * m.cols + k;
                m.data[idx] = (m.data[idx] as u64 * inv % p) as u32;
            }
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let f = m.get(r, c) as u64;
                if f == 0 {
                    continue;
                }
                let neg = p - f;
                for k in c..m.cols {
                    let src = m.data[lead * m.cols + k] as u64;
                    if src != 0 {
                        let idx = r * m.cols + k;
                        m.data[idx] = ((m.data[idx] as u64 + neg * src) % p) as u32;
                    }
                }
            }
            pivots.push(c);
            lead += 1;
        }
        (m, pivots)
    }

    pub fn rref(&self) -> FpMatrix {
        self.rref_with_pivots().0
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// Null space `{x : self * x = 0}` as a canonical subspace of `k^cols`.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref_with_pivots();
        let p = self.p;
        let mut is_pivot = vec![None; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(row);
        }
        let mut vectors = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f].is_some() {
                continue;
            }
            let mut v = vec![0u32; self.cols];
            v[f] = 1 % p;
            for (row, &c) in pivots.iter().enumerate() {
                let a = r.get(row, f);
                if a != 0 {
                    v[c] = p - a;
                }
            }
            vectors.push(v);
        }
        Subspace::from_vectors_unchecked(p, self.cols, vectors)
    }

    /// Column space as a canonical subspace of `k^rows`.
    pub fn image(&self) -> Subspace {
        Subspace::from_vectors_unchecked(self.p, self.rows, self.columns())
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self
            .hstack(&Self::identity(self.p, n).expect("prime already validated"))
            .ok()?;
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.column_block(n, 2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Some solution of `self * x = b`, if one exists. The returned solution
    /// sets every free variable to zero, so it is a linear function of `b`.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        if b.len() != self.rows {
            return None;
        }
        let bcol = FpMatrix::from_columns(self.p, self.rows, &[b.to_vec()]).ok()?;
        let aug = self.hstack(&bcol).ok()?;
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = r.get(row, self.cols);
        }
        Some(x)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_prime(other)?;
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let p = self.p as u64;
        let mut out = Self::zeros_unchecked(self.p, rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j) as u64;
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l) as u64;
                        out.data[(i * other.rows + k) * cols + j * other.cols + l] =
                            (a * b % p) as u32;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Block-diagonal `diag(self, other)`.
    pub fn block_diag(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_prime(other)?;
        let mut out = Self::zeros_unchecked(
            self.p,
            self.rows + other.rows,
            self.cols + other.cols,
        );
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c));
            }
        }
        Ok(out)
    }

    /// Row-major vectorisation.
    pub fn to_vec(&self) -> Vec<u32> {
        self.data.clone()
    }

    pub fn from_vec(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Result<FpMatrix> {
        if data.len() != rows * cols {
            return Err(LinAlgError::DimensionMismatch {
                op: "from_vec",
                left: rows * cols,
                right: data.len(),
            });
        }
        let mut m = Self::zeros(p, rows, cols)?;
        for (slot, v) in m.data.iter_mut().zip(data) {
            *slot = v % p;
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u32, rows: &[&[i64]]) -> FpMatrix {
        FpMatrix::from_rows(p, rows[0].len(), rows).unwrap()
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(FpMatrix::zeros(6, 1, 1), Err(LinAlgError::NotPrime(6)));
        assert!(FpMatrix::zeros(1, 1, 1).is_err());
        assert!(FpMatrix::zeros(7, 1, 1).is_ok());
    }

    #[test]
    fn entries_are_reduced() {
        let a = m(5, &[&[7, -1]]);
        assert_eq!(a.row(0), vec![2, 4]);
    }

    #[test]
    fn rref_invertible_f2_is_identity() {
        let a = m(2, &[&[1, 1], &[1, 0]]);
        assert_eq!(a.rref(), FpMatrix::identity(2, 2).unwrap());
    }

    #[test]
    fn rref_zero_matrix() {
        let z = FpMatrix::zeros(3, 2, 3).unwrap();
        assert_eq!(z.rref(), z);
    }

    #[test]
    fn rref_rank_one_over_f5() {
        // R2 <- R2 - 3*R1 after scaling R1 by 2^{-1} = 3: [[1,2],[0,0]].
        let a = m(5, &[&[2, 4], &[1, 2]]);
        assert_eq!(a.rref(), m(5, &[&[1, 2], &[0, 0]]));
        // Replay the elementary operations: E2 * E1 * A.
        let scale = m(5, &[&[3, 0], &[0, 1]]);
        let clear = m(5, &[&[1, 0], &[4, 1]]);
        assert_eq!(clear.mul(&scale.mul(&a).unwrap()).unwrap(), a.rref());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(FpMatrix::identity(3, 3).unwrap().kernel().dim(), 0);
        assert_eq!(FpMatrix::zeros(2, 2, 2).unwrap().kernel().dim(), 2);
        let k = m(2, &[&[1, 1]]).kernel();
        // Exhaust F_2^2: only (0,0) and (1,1) satisfy x + y = 0.
        let members: Vec<_> = [[0u32, 0], [0, 1], [1, 0], [1, 1]]
            .into_iter()
            .filter(|v| k.contains(v))
            .collect();
        assert_eq!(members, vec![[0, 0], [1, 1]]);
        assert_eq!(k.basis_vectors(), vec![vec![1, 1]]);
    }

    #[test]
    fn inverse_and_solve() {
        let a = m(7, &[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), FpMatrix::identity(7, 2).unwrap());
        let x = a.solve(&[3, 5]).unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), vec![3, 5]);
        assert!(m(2, &[&[1, 1], &[1, 1]]).inverse().is_none());
        assert!(m(2, &[&[1, 1], &[1, 1]]).solve(&[1, 0]).is_none());
    }

    #[test]
    fn prime_mismatch_is_an_error() {
        let a = FpMatrix::identity(2, 2).unwrap();
        let b = FpMatrix::identity(3, 2).unwrap();
        assert_eq!(a.mul(&b), Err(LinAlgError::PrimeMismatch(2, 3)));
    }

    #[test]
    fn kron_dimensions() {
        let a = FpMatrix::identity(3, 2).unwrap();
        let b = m(3, &[&[1, 2, 0]]);
        let k = a.kron(&b).unwrap();
        assert_eq!((k.rows(), k.cols()), (2, 6));
        assert_eq!(k.row(1), vec![0, 0, 0, 1, 2, 0]);
    }
}
