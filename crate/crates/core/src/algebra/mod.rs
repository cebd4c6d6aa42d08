//! Finite commutative local algebras over a prime field, given by structure
//! constants in a basis whose first element is the unit and whose remaining
//! elements span the maximal ideal.

mod extension;
mod ideal;
mod multset;

pub use extension::{ExtensionError, FreeExtension};
pub use ideal::Ideal;
pub use multset::MultSet;

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::exactlin::{is_prime, FpMatrix, Subspace};

/// Raw multiplication table as read from a file, before any axiom is checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraTable {
    pub p: u64,
    pub labels: Vec<String>,
    /// `mult[i][j]` holds the coefficients of `e_i e_j`.
    pub mult: Vec<Vec<Vec<u32>>>,
}

impl AlgebraTable {
    pub fn dim(&self) -> usize {
        self.mult.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: &'static str,
    /// Basis indices exhibiting the failure, when one triple suffices.
    pub witness: Option<[usize; 3]>,
    pub detail: String,
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.axiom)?;
        if let Some([i, j, k]) = self.witness {
            write!(f, " at (e_{i}, e_{j}, e_{k})")?;
        }
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraReport {
    pub failures: Vec<AxiomFailure>,
    pub nilpotency_index: Option<usize>,
}

impl AlgebraReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for AlgebraReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "PASS")?;
            if let Some(n) = self.nilpotency_index {
                write!(f, " (nilpotency index {n})")?;
            }
            return Ok(());
        }
        write!(f, "FAIL")?;
        for failure in &self.failures {
            write!(f, "\n  {failure}")?;
        }
        Ok(())
    }
}

fn table_product(p: u32, mult: &[Vec<Vec<u32>>], a: &[u32], b: &[u32]) -> Vec<u32> {
    let d = mult.len();
    let mut out = vec![0u64; d];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if bj == 0 {
                continue;
            }
            let s = ai as u64 * bj as u64 % p as u64;
            for (k, &c) in mult[i][j].iter().enumerate() {
                out[k] = (out[k] + s * c as u64) % p as u64;
            }
        }
    }
    out.into_iter().map(|x| x as u32).collect()
}

fn unit_vector(d: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; d];
    v[i] = 1;
    v
}

/// Checks every standing axiom of a local algebra table and reports each
/// failure with a witness.
pub fn check_algebra(table: &AlgebraTable) -> AlgebraReport {
    let mut failures = Vec::new();
    let d = table.dim();
    if !is_prime(table.p) || table.p > u32::MAX as u64 {
        failures.push(AxiomFailure {
            axiom: "p is not prime",
            witness: None,
            detail: format!("p = {}", table.p),
        });
        return AlgebraReport {
            failures,
            nilpotency_index: None,
        };
    }
    if d == 0 {
        failures.push(AxiomFailure {
            axiom: "empty basis",
            witness: None,
            detail: "an algebra needs at least the unit".into(),
        });
        return AlgebraReport {
            failures,
            nilpotency_index: None,
        };
    }
    let p = table.p as u32;
    let mult = &table.mult;
    for j in 0..d {
        for k in 0..d {
            let expected = u32::from(j == k);
            if mult[0][j][k] != expected {
                failures.push(AxiomFailure {
                    axiom: "e_0 is not a unit",
                    witness: Some([0, j, k]),
                    detail: format!("coefficient {} where {} expected", mult[0][j][k], expected),
                });
            }
        }
    }
    'comm: for i in 0..d {
        for j in i + 1..d {
            for k in 0..d {
                if mult[i][j][k] != mult[j][i][k] {
                    failures.push(AxiomFailure {
                        axiom: "not commutative",
                        witness: Some([i, j, k]),
                        detail: String::new(),
                    });
                    break 'comm;
                }
            }
        }
    }
    'assoc: for i in 0..d {
        for j in 0..d {
            let left_inner = &mult[i][j];
            for l in 0..d {
                let lhs = table_product(p, mult, left_inner, &unit_vector(d, l));
                let rhs = table_product(p, mult, &unit_vector(d, i), &mult[j][l]);
                if lhs != rhs {
                    failures.push(AxiomFailure {
                        axiom: "not associative",
                        witness: Some([i, j, l]),
                        detail: String::new(),
                    });
                    break 'assoc;
                }
            }
        }
    }
    'ideal: for i in 1..d {
        for j in 1..d {
            if mult[i][j][0] != 0 {
                failures.push(AxiomFailure {
                    axiom: "m is not an ideal",
                    witness: Some([i, j, 0]),
                    detail: "product of two elements of m has a unit component".into(),
                });
                break 'ideal;
            }
        }
    }
    let nilpotency_index = nilpotency(p, mult);
    if nilpotency_index.is_none() {
        failures.push(AxiomFailure {
            axiom: "m not nilpotent",
            witness: None,
            detail: "powers of m never reach 0".into(),
        });
    }
    AlgebraReport {
        failures,
        nilpotency_index,
    }
}

fn span_of_products(p: u32, mult: &[Vec<Vec<u32>>], a: &Subspace, b: &Subspace) -> Subspace {
    let mut vs = Vec::new();
    for x in a.basis_vectors() {
        for y in b.basis_vectors() {
            vs.push(table_product(p, mult, &x, &y));
        }
    }
    Subspace::from_vectors_unchecked(p, mult.len(), vs)
}

fn maximal_subspace(p: u32, d: usize) -> Subspace {
    Subspace::from_vectors_unchecked(p, d, (1..d).map(|i| unit_vector(d, i)).collect())
}

/// Minimal `N` with `m^N = 0`, or `None` when the powers never vanish.
fn nilpotency(p: u32, mult: &[Vec<Vec<u32>>]) -> Option<usize> {
    let d = mult.len();
    let m = maximal_subspace(p, d);
    let mut power = m.clone();
    for n in 1..=d + 1 {
        if power.is_zero() {
            return Some(n);
        }
        power = span_of_products(p, mult, &power, &m);
    }
    None
}

/// A validated finite local commutative algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    p: u32,
    labels: Vec<String>,
    mult: Vec<Vec<Vec<u32>>>,
    nilpotency: usize,
    regular: Vec<FpMatrix>,
    generators: Vec<usize>,
    fingerprint: u64,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(F_{}, basis {:?})", self.p, self.labels)
    }
}

impl Algebra {
    pub fn new(table: AlgebraTable) -> std::result::Result<Algebra, AlgebraReport> {
        let report = check_algebra(&table);
        if !report.passed() {
            return Err(report);
        }
        let p = table.p as u32;
        let d = table.dim();
        let regular: Vec<FpMatrix> = (0..d)
            .map(|i| FpMatrix::from_columns(p, d, &table.mult[i]).expect("table shape validated"))
            .collect();
        let m = maximal_subspace(p, d);
        let m2 = span_of_products(p, &table.mult, &m, &m);
        let generators = m2.complement_coords().into_iter().filter(|&i| i != 0).collect();
        let mut hasher = DefaultHasher::new();
        (p, &table.mult).hash(&mut hasher);
        Ok(Algebra {
            fingerprint: hasher.finish(),
            p,
            labels: table.labels,
            mult: table.mult,
            nilpotency: report.nilpotency_index.expect("passed report records N"),
            regular,
            generators,
        })
    }

    /// Builds from integer structure constants, labelling the basis `e0, e1, ...`
    /// unless labels are supplied.
    pub fn from_constants(
        p: u64,
        labels: Option<Vec<String>>,
        mult: Vec<Vec<Vec<u32>>>,
    ) -> std::result::Result<Algebra, AlgebraReport> {
        let d = mult.len();
        let labels = labels.unwrap_or_else(|| (0..d).map(|i| format!("e{i}")).collect());
        Algebra::new(AlgebraTable { p, labels, mult })
    }

    /// `F_p[x]/(x^n)` in the monomial basis.
    pub fn truncated_polynomial(p: u64, n: usize) -> Algebra {
        let mut mult = vec![vec![vec![0u32; n]; n]; n];
        for (i, row) in mult.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                if i + j < n {
                    entry[i + j] = 1;
                }
            }
        }
        let labels = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        Algebra::from_constants(p, Some(labels), mult).expect("truncated polynomial ring is local")
    }

    /// `F_p[x_1..x_n]/(x_1..x_n)^2`, basis `1, x_1, .., x_n`.
    pub fn square_zero(p: u64, n: usize) -> Algebra {
        let d = n + 1;
        let mut mult = vec![vec![vec![0u32; d]; d]; d];
        for i in 0..d {
            mult[0][i][i] = 1;
            mult[i][0][i] = 1;
        }
        let labels = std::iter::once("1".to_string())
            .chain((1..=n).map(|i| if n == 2 { ["x", "y"][i - 1].to_string() } else { format!("x{i}") }))
            .collect();
        Algebra::from_constants(p, Some(labels), mult).expect("square-zero extension is local")
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.mult.len()
    }

    /// Hash of the structure constants, stable within a process.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<u32>>] {
        &self.mult
    }

    /// Minimal `N` with `m^N = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.nilpotency
    }

    /// Basis indices whose elements span a complement of `m^2` in `m`; together
    /// with the unit they generate the algebra.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Multiplication by `e_i` on the regular module.
    pub fn regular_action(&self, i: usize) -> &FpMatrix {
        &self.regular[i]
    }

    pub fn regular_actions(&self) -> &[FpMatrix] {
        &self.regular
    }

    pub fn generator_regular_actions(&self) -> Vec<FpMatrix> {
        self.generators.iter().map(|&i| self.regular[i].clone()).collect()
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.dim()]
    }

    pub fn one(&self) -> Vec<u32> {
        unit_vector(self.dim(), 0)
    }

    pub fn basis_element(&self, i: usize) -> Vec<u32> {
        unit_vector(self.dim(), i)
    }

    pub fn reduce(&self, a: &[i64]) -> Vec<u32> {
        a.iter().map(|&x| x.rem_euclid(self.p as i64) as u32).collect()
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        table_product(self.p, &self.mult, a, b)
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    pub fn pow(&self, a: &[u32], mut e: u64) -> Vec<u32> {
        let mut acc = self.one();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Over a local ring the units are exactly the elements outside `m`.
    pub fn is_unit(&self, a: &[u32]) -> bool {
        a[0] != 0
    }

    /// Matrix of `x ↦ a x` on the regular module.
    pub fn mult_matrix(&self, a: &[u32]) -> FpMatrix {
        let d = self.dim();
        let mut out = FpMatrix::zeros_unchecked(self.p, d, d);
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                out.add_scaled(&self.regular[i], c).expect("same shape");
            }
        }
        out
    }

    /// Smallest `e` with `p^e ≥ N`; from this exponent on, Frobenius powers
    /// of every element are constant.
    pub fn frobenius_exponent(&self) -> u32 {
        let mut e = 0;
        let mut q = 1u64;
        while q < self.nilpotency as u64 {
            q *= self.p as u64;
            e += 1;
        }
        e
    }

    pub fn frobenius_q(&self) -> u64 {
        (self.p as u64).pow(self.frobenius_exponent())
    }

    /// `m^n` as a subspace of the regular module; `m^0 = R`.
    pub fn m_power(&self, n: usize) -> Subspace {
        let d = self.dim();
        if n == 0 {
            return Subspace::full(self.p, d).expect("validated prime");
        }
        let m = maximal_subspace(self.p, d);
        let mut power = m.clone();
        for _ in 1..n {
            power = span_of_products(self.p, &self.mult, &power, &m);
        }
        power
    }

    /// Gorenstein test: the socle `ann_R(m)` is one-dimensional.
    pub fn is_gorenstein(&self) -> bool {
        self.socle().dim() == 1
    }

    /// Element as a sum of labelled basis elements.
    pub fn format_element(&self, a: &[u32]) -> String {
        let terms: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (c, self.labels[i].as_str()) {
                (c, "1") => c.to_string(),
                (1, l) => l.to_string(),
                (c, l) => format!("{c}*{l}"),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(p: u64, mult: Vec<Vec<Vec<u32>>>) -> AlgebraTable {
        let d = mult.len();
        AlgebraTable {
            p,
            labels: (0..d).map(|i| format!("e{i}")).collect(),
            mult,
        }
    }

    #[test]
    fn dual_numbers_pass() {
        let t = table(2, vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 0]]]);
        let report = check_algebra(&t);
        assert!(report.passed(), "{report}");
        assert_eq!(report.nilpotency_index, Some(2));
    }

    #[test]
    fn x_squared_one_is_not_local() {
        let t = table(2, vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 0]]]);
        let report = check_algebra(&t);
        assert!(!report.passed());
        assert!(report.failures.iter().any(|f| f.axiom == "m not nilpotent"));
        assert!(report.to_string().contains("m not nilpotent"));
    }

    #[test]
    fn prime_field_has_index_one() {
        let t = table(5, vec![vec![vec![1]]]);
        let report = check_algebra(&t);
        assert!(report.passed());
        assert_eq!(report.nilpotency_index, Some(1));
    }

    #[test]
    fn non_commutative_table_is_caught() {
        let mut mult = Algebra::square_zero(2, 2).structure_constants().to_vec();
        mult[1][2] = vec![0, 0, 1];
        let report = check_algebra(&table(2, mult));
        assert!(report.failures.iter().any(|f| f.axiom == "not commutative"));
    }

    #[test]
    fn generators_and_frobenius_exponent() {
        let r = Algebra::truncated_polynomial(2, 3);
        assert_eq!(r.generators(), &[1]);
        assert_eq!(r.nilpotency_index(), 3);
        assert_eq!(r.frobenius_q(), 4);
        let s = Algebra::square_zero(2, 2);
        assert_eq!(s.generators(), &[1, 2]);
        assert_eq!(s.nilpotency_index(), 2);
    }

    #[test]
    fn gorenstein_examples() {
        assert!(Algebra::truncated_polynomial(2, 3).is_gorenstein());
        assert!(!Algebra::square_zero(2, 2).is_gorenstein());
        assert!(Algebra::truncated_polynomial(7, 1).is_gorenstein());
    }
}
