//! The operations that theorem checks route through, with optional seeded
//! defects used to confirm that every check can actually fail.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Algebra, FreeExtension, Ideal, MultSet};
use crate::exactlin::{FpMatrix, Subspace};
use crate::modrep::{BaseChange, DirectSum, ModMap, ModuleRep, Quotient, Submodule, Tensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mutation {
    /// The smile dual returns `α(M^∨)` itself instead of its perp.
    SmileSkipsPerp,
    /// Quotients use the first coordinates as complement, whatever `L` is.
    QuotientWrongComplement,
    /// Tensor products over `R` forget the balancing relations.
    TensorSkipsRelations,
    /// Trace takes the `k`-span of images under minimal generators of Hom only.
    TraceSkipsSpan,
    /// The second summand of a direct sum carries transposed actions.
    DirectSumTransposed,
    /// Meets return the sum.
    MeetIsSum,
    /// Joins drop their second argument.
    JoinDropsSecond,
    /// Annihilators of submodules look at the first basis vector only.
    AnnihilatorFirstVector,
    /// Saturation adds 1 but never multiplies.
    SaturationSkipsProducts,
    /// Base change forgets the balancing relations.
    BaseChangeSkipsRelations,
}

impl Mutation {
    pub const ALL: [Mutation; 10] = [
        Mutation::SmileSkipsPerp,
        Mutation::QuotientWrongComplement,
        Mutation::TensorSkipsRelations,
        Mutation::TraceSkipsSpan,
        Mutation::DirectSumTransposed,
        Mutation::MeetIsSum,
        Mutation::JoinDropsSecond,
        Mutation::AnnihilatorFirstVector,
        Mutation::SaturationSkipsProducts,
        Mutation::BaseChangeSkipsRelations,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::SmileSkipsPerp => "smile-skips-perp",
            Mutation::QuotientWrongComplement => "quotient-wrong-complement",
            Mutation::TensorSkipsRelations => "tensor-skips-relations",
            Mutation::TraceSkipsSpan => "trace-skips-span",
            Mutation::DirectSumTransposed => "direct-sum-transposed",
            Mutation::MeetIsSum => "meet-is-sum",
            Mutation::JoinDropsSecond => "join-drops-second",
            Mutation::AnnihilatorFirstVector => "annihilator-first-vector",
            Mutation::SaturationSkipsProducts => "saturation-skips-products",
            Mutation::BaseChangeSkipsRelations => "base-change-skips-relations",
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Lab {
    mutation: Option<Mutation>,
}

impl Lab {
    pub fn exact() -> Lab {
        Lab { mutation: None }
    }

    pub fn mutated(mutation: Mutation) -> Lab {
        Lab {
            mutation: Some(mutation),
        }
    }

    pub fn mutation(&self) -> Option<Mutation> {
        self.mutation
    }

    pub fn is(&self, m: Mutation) -> bool {
        self.mutation == Some(m)
    }

    pub fn quotient(&self, m: &Arc<ModuleRep>, l: &Submodule) -> Quotient {
        if !self.is(Mutation::QuotientWrongComplement) {
            return m.quotient(l);
        }
        let p = m.p();
        let n = m.dim();
        let q = n - l.dim();
        let mut proj = FpMatrix::zeros(p, q, n).expect("validated prime");
        let mut section = FpMatrix::zeros(p, n, q).expect("validated prime");
        for i in 0..q {
            proj.set(i, i, 1);
            section.set(i, i, 1);
        }
        let actions = m
            .actions()
            .iter()
            .map(|a| proj.mul(a).and_then(|x| x.mul(&section)).expect("consistent shapes"))
            .collect();
        let module = Arc::new(ModuleRep::new_unchecked(m.algebra().clone(), q, actions));
        Quotient {
            proj: ModMap::new_unchecked(m.clone(), module.clone(), proj),
            module,
            section,
        }
    }

    pub fn tensor(&self, a: &Arc<ModuleRep>, b: &Arc<ModuleRep>) -> Tensor {
        if !self.is(Mutation::TensorSkipsRelations) {
            return a.tensor(b).expect("modules over one algebra");
        }
        let p = a.p();
        let id_b = FpMatrix::identity(p, b.dim()).expect("validated prime");
        let actions = a.actions().iter().map(|x| x.kron(&id_b).expect("same prime")).collect();
        let n = a.dim() * b.dim();
        Tensor {
            left: a.clone(),
            right: b.clone(),
            module: Arc::new(ModuleRep::new_unchecked(a.algebra().clone(), n, actions)),
            proj: FpMatrix::identity(p, n).expect("validated prime"),
        }
    }

    pub fn direct_sum(&self, a: &Arc<ModuleRep>, b: &Arc<ModuleRep>) -> DirectSum {
        let exact = a.direct_sum(b).expect("modules over one algebra");
        if !self.is(Mutation::DirectSumTransposed) {
            return exact;
        }
        let actions = a
            .actions()
            .iter()
            .zip(b.actions())
            .map(|(x, y)| x.block_diag(&y.transpose()).expect("same prime"))
            .collect();
        let module = Arc::new(ModuleRep::new_unchecked(a.algebra().clone(), a.dim() + b.dim(), actions));
        let rewire = |f: &ModMap, to_sum: bool| {
            if to_sum {
                ModMap::new_unchecked(f.source().clone(), module.clone(), f.matrix().clone())
            } else {
                ModMap::new_unchecked(module.clone(), f.target().clone(), f.matrix().clone())
            }
        };
        DirectSum {
            inj: [rewire(&exact.inj[0], true), rewire(&exact.inj[1], true)],
            proj: [rewire(&exact.proj[0], false), rewire(&exact.proj[1], false)],
            module,
        }
    }

    pub fn join(&self, a: &Submodule, b: &Submodule) -> Submodule {
        if self.is(Mutation::JoinDropsSecond) {
            return a.clone();
        }
        a.sum(b)
    }

    pub fn meet(&self, a: &Submodule, b: &Submodule) -> Submodule {
        if self.is(Mutation::MeetIsSum) {
            return a.sum(b);
        }
        a.intersection(b)
    }

    /// `ann_R(L)` for a submodule `L ≤ M`.
    pub fn annihilator_of(&self, m: &ModuleRep, l: &Submodule) -> Ideal {
        if self.is(Mutation::AnnihilatorFirstVector) {
            return match l.basis().first() {
                Some(z) => m.annihilator_of_element(z),
                None => m.algebra().unit_ideal(),
            };
        }
        m.annihilator_of(l)
    }

    pub fn saturate(&self, algebra: &Algebra, gens: &[Vec<u32>]) -> MultSet {
        if !self.is(Mutation::SaturationSkipsProducts) {
            return algebra.saturate(gens);
        }
        let gens: Vec<Vec<u32>> = gens.iter().map(|g| g.iter().map(|&c| c % algebra.p()).collect()).collect();
        let mut elements = gens.clone();
        elements.push(algebra.one());
        MultSet::from_elements(algebra, gens, elements)
    }

    pub fn base_change(&self, m: &Arc<ModuleRep>, ext: &FreeExtension) -> BaseChange {
        if !self.is(Mutation::BaseChangeSkipsRelations) {
            return m.base_change(ext).expect("module over the base");
        }
        let p = m.p();
        let s = ext.ext();
        let id_m = FpMatrix::identity(p, m.dim()).expect("validated prime");
        let actions = s.regular_actions().iter().map(|a| id_m.kron(a).expect("same prime")).collect();
        let one = FpMatrix::from_columns(p, s.dim(), &[s.one()]).expect("element of S");
        let unit_map = id_m.kron(&one).expect("same prime");
        BaseChange {
            module: Arc::new(ModuleRep::new_unchecked(s.clone(), m.dim() * s.dim(), actions)),
            unit_map,
        }
    }

    /// The subspace the smile dual reports, given `α(M^∨)`.
    pub(crate) fn smile_space(&self, selected: &Submodule) -> Subspace {
        if self.is(Mutation::SmileSkipsPerp) {
            return selected.space().clone();
        }
        selected.space().annihilator()
    }
}
