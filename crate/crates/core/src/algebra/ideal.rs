use std::fmt;

use super::Algebra;
use crate::exactlin::{enumerate_invariant_subspaces, invariant_closure, EnumerationBudget, Subspace};

/// An ideal, stored as its subspace of the regular module.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal {
    space: Subspace,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{:?}", self.space.basis_vectors())
    }
}

impl Ideal {
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }

    /// Canonical echelon basis, which doubles as a generating set.
    pub fn basis(&self) -> Vec<Vec<u32>> {
        self.space.basis_vectors()
    }

    pub fn contains(&self, a: &[u32]) -> bool {
        self.space.contains(a)
    }

    pub fn is_subideal_of(&self, other: &Ideal) -> bool {
        self.space.is_subspace_of(&other.space)
    }
}

impl Algebra {
    /// Wraps a subspace that is already closed under multiplication.
    pub fn ideal_from_space(&self, space: Subspace) -> Option<Ideal> {
        let closed = self
            .generator_regular_actions()
            .iter()
            .all(|a| space.image(a).map(|im| im.is_subspace_of(&space)).unwrap_or(false));
        closed.then_some(Ideal { space })
    }

    pub fn ideal(&self, gens: &[Vec<u32>]) -> Ideal {
        let seed = Subspace::from_vectors_unchecked(self.p(), self.dim(), gens.to_vec());
        Ideal {
            space: invariant_closure(&self.generator_regular_actions(), &seed),
        }
    }

    pub fn zero_ideal(&self) -> Ideal {
        Ideal {
            space: Subspace::zero(self.p(), self.dim()).expect("validated prime"),
        }
    }

    pub fn unit_ideal(&self) -> Ideal {
        Ideal {
            space: Subspace::full(self.p(), self.dim()).expect("validated prime"),
        }
    }

    pub fn maximal_ideal(&self) -> Ideal {
        Ideal {
            space: self.m_power(1),
        }
    }

    pub fn m_power_ideal(&self, n: usize) -> Ideal {
        Ideal {
            space: self.m_power(n),
        }
    }

    pub fn ideal_sum(&self, i: &Ideal, j: &Ideal) -> Ideal {
        Ideal {
            space: i.space.sum(&j.space).expect("same algebra"),
        }
    }

    pub fn ideal_intersection(&self, i: &Ideal, j: &Ideal) -> Ideal {
        Ideal {
            space: i.space.intersection(&j.space).expect("same algebra"),
        }
    }

    pub fn ideal_product(&self, i: &Ideal, j: &Ideal) -> Ideal {
        let mut products = Vec::new();
        for a in i.basis() {
            for b in j.basis() {
                products.push(self.mul(&a, &b));
            }
        }
        // Products of two ideals' bases already span an ideal.
        Ideal {
            space: Subspace::from_vectors_unchecked(self.p(), self.dim(), products),
        }
    }

    pub fn ideal_power(&self, i: &Ideal, n: usize) -> Ideal {
        let mut acc = self.unit_ideal();
        for _ in 0..n {
            acc = self.ideal_product(&acc, i);
        }
        acc
    }

    /// `(I : J) = {r : rJ ⊆ I}`.
    pub fn colon(&self, i: &Ideal, j: &Ideal) -> Ideal {
        let mut acc = Subspace::full(self.p(), self.dim()).expect("validated prime");
        for b in j.basis() {
            let pre = i.space.preimage(&self.mult_matrix(&b)).expect("regular module shapes");
            acc = acc.intersection(&pre).expect("same ambient");
        }
        Ideal { space: acc }
    }

    pub fn ideal_annihilator(&self, i: &Ideal) -> Ideal {
        self.colon(&self.zero_ideal(), i)
    }

    /// `ann_R(m)`.
    pub fn socle(&self) -> Ideal {
        self.ideal_annihilator(&self.maximal_ideal())
    }

    /// Every ideal of the algebra, in canonical order.
    pub fn enumerate_ideals(&self, budget: usize) -> Result<Vec<Ideal>, EnumerationBudget> {
        let subs = enumerate_invariant_subspaces(
            self.p(),
            self.dim(),
            &self.generator_regular_actions(),
            self.dim(),
            budget,
        )?;
        Ok(subs.into_iter().map(|space| Ideal { space }).collect())
    }

    pub fn format_ideal(&self, i: &Ideal) -> String {
        if i.is_zero() {
            return "(0)".to_string();
        }
        let gens: Vec<String> = i.basis().iter().map(|g| self.format_element(g)).collect();
        format!("({})", gens.join(", "))
    }
}
