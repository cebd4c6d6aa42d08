use std::collections::BTreeSet;

use super::Algebra;

/// A finite multiplicatively closed subset of an algebra, always containing 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultSet {
    generators: Vec<Vec<u32>>,
    elements: Vec<Vec<u32>>,
    contains_zero: bool,
    units_only: bool,
}

impl MultSet {
    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    /// The saturation, sorted.
    pub fn elements(&self) -> &[Vec<u32>] {
        &self.elements
    }

    pub fn contains_zero(&self) -> bool {
        self.contains_zero
    }

    pub fn units_only(&self) -> bool {
        self.units_only
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

impl MultSet {
    /// Wraps an explicit element list without closing it under products.
    pub(crate) fn from_elements(algebra: &Algebra, generators: Vec<Vec<u32>>, mut elements: Vec<Vec<u32>>) -> Self {
        elements.sort();
        elements.dedup();
        let contains_zero = elements.iter().any(|w| w.iter().all(|&c| c == 0));
        let units_only = elements.iter().all(|w| algebra.is_unit(w));
        MultSet {
            generators,
            elements,
            contains_zero,
            units_only,
        }
    }

    /// Closed under products and contains 1.
    pub fn is_saturated(&self, algebra: &Algebra) -> bool {
        self.elements.contains(&algebra.one())
            && self
                .elements
                .iter()
                .all(|a| self.elements.iter().all(|b| self.elements.binary_search(&algebra.mul(a, b)).is_ok()))
    }
}

impl Algebra {
    /// Smallest multiplicatively closed set containing `gens` and 1.
    pub fn saturate(&self, gens: &[Vec<u32>]) -> MultSet {
        let gens: Vec<Vec<u32>> = gens.iter().map(|g| g.iter().map(|&c| c % self.p()).collect()).collect();
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        seen.insert(self.one());
        let mut frontier = vec![self.one()];
        while let Some(w) = frontier.pop() {
            for g in &gens {
                let next = self.mul(&w, g);
                if seen.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        MultSet::from_elements(self, gens, seen.into_iter().collect())
    }
}
