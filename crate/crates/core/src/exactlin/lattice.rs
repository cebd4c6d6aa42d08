use std::collections::BTreeSet;

use thiserror::Error;

use super::{FpMatrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationBudget {
    #[error("subspace enumeration budget exceeded: more than {limit} invariant subspaces")]
    TooManySubspaces { limit: usize },
    #[error("ambient space too large to enumerate: {p}^{n} vectors exceeds {limit}")]
    TooManyVectors { p: u32, n: usize, limit: u64 },
}

/// Smallest subspace containing `seed` and stable under every matrix in `actions`.
pub fn invariant_closure(actions: &[FpMatrix], seed: &Subspace) -> Subspace {
    let mut current = seed.clone();
    let mut frontier = current.basis_vectors();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in actions {
            for v in &frontier {
                let w = a.mul_vec(v).expect("action matrices match the ambient space");
                if !current.contains(&w) {
                    current = current
                        .sum(&Subspace::from_vectors_unchecked(
                            current.p(),
                            current.ambient_dim(),
                            vec![w.clone()],
                        ))
                        .expect("same ambient space");
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    current
}

/// Vectors with leading coordinate 1 supported on `coords`, one per line.
fn projective_points(p: u32, n: usize, coords: &[usize]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for lead in 0..coords.len() {
        let tail = &coords[lead + 1..];
        let count = (p as u64).pow(tail.len() as u32);
        for idx in 0..count {
            let mut v = vec![0u32; n];
            v[coords[lead]] = 1;
            let mut rest = idx;
            for &c in tail {
                v[c] = (rest % p as u64) as u32;
                rest /= p as u64;
            }
            out.push(v);
        }
    }
    out
}

/// All subspaces of `k^n` of dimension at most `max_dim` that are stable under
/// every matrix in `actions`, sorted canonically.
///
/// Works breadth-first from the zero subspace by adjoining one cyclic
/// subspace at a time; every invariant subspace is reached this way.
pub fn enumerate_invariant_subspaces(
    p: u32,
    n: usize,
    actions: &[FpMatrix],
    max_dim: usize,
    budget: usize,
) -> Result<Vec<Subspace>, EnumerationBudget> {
    const VECTOR_LIMIT: u64 = 1 << 20;
    let total = (p as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if total > VECTOR_LIMIT {
        return Err(EnumerationBudget::TooManyVectors {
            p,
            n,
            limit: VECTOR_LIMIT,
        });
    }
    let zero = Subspace::zero(p, n).expect("caller validated the prime");
    let mut seen: BTreeSet<Subspace> = BTreeSet::new();
    seen.insert(zero.clone());
    let mut queue = vec![zero];
    while let Some(u) = queue.pop() {
        if u.dim() >= max_dim {
            continue;
        }
        for v in projective_points(p, n, &u.complement_coords()) {
            let seed = u
                .sum(&Subspace::from_vectors_unchecked(p, n, vec![v]))
                .expect("same ambient space");
            let w = invariant_closure(actions, &seed);
            if w.dim() <= max_dim && !seen.contains(&w) {
                if seen.len() >= budget {
                    return Err(EnumerationBudget::TooManySubspaces { limit: budget });
                }
                seen.insert(w.clone());
                queue.push(w);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_subspaces_of_f2_squared() {
        // No constraints: 0, three lines, the plane.
        let subs = enumerate_invariant_subspaces(2, 2, &[], 2, 100).unwrap();
        assert_eq!(subs.len(), 5);
    }

    #[test]
    fn nilpotent_jordan_block_has_a_chain() {
        // x acting on F_2[x]/(x^3) in basis 1, x, x^2.
        let x = FpMatrix::from_rows(2, 3, &[[0i64, 0, 0], [1, 0, 0], [0, 1, 0]]).unwrap();
        let subs = enumerate_invariant_subspaces(2, 3, &[x.clone()], 3, 100).unwrap();
        let dims: Vec<usize> = subs.iter().map(|s| s.dim()).collect();
        assert_eq!(subs.len(), 4);
        let mut sorted = dims.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 1, 2, 3]);
        let line = Subspace::span(2, 3, &[vec![0, 1, 0]]).unwrap();
        assert_eq!(invariant_closure(&[x], &line).dim(), 2);
    }

    #[test]
    fn budget_is_enforced() {
        let err = enumerate_invariant_subspaces(2, 4, &[], 4, 5).unwrap_err();
        assert_eq!(err, EnumerationBudget::TooManySubspaces { limit: 5 });
    }

    #[test]
    fn gaussian_binomial_counts_over_f3() {
        // [3 choose 1]_3 = 13 lines, [3 choose 2]_3 = 13 planes, plus 0 and k^3.
        let subs = enumerate_invariant_subspaces(3, 3, &[], 3, 1000).unwrap();
        assert_eq!(subs.len(), 28);
        let capped = enumerate_invariant_subspaces(3, 3, &[], 1, 1000).unwrap();
        assert_eq!(capped.len(), 14);
    }
}
