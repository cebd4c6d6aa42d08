use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use smilelab::algebra::Algebra;
use smilelab::duality::{dual_module, perp_in_dual, smile};
use smilelab::exactlin::{FpMatrix, Subspace};
use smilelab::format::{parse_module, write_module};
use smilelab::lab::Lab;
use smilelab::proplab::{Battery, Sizes};
use smilelab::selectors::{annsel, mul};

fn batteries() -> &'static [Battery] {
    static B: OnceLock<Vec<Battery>> = OnceLock::new();
    B.get_or_init(|| {
        [Algebra::truncated_polynomial(2, 3), Algebra::square_zero(2, 2), Algebra::truncated_polynomial(3, 2)]
            .into_iter()
            .map(|r| Battery::generate(&Arc::new(r), 11, Sizes::Default))
            .collect()
    })
}

fn matrix() -> impl Strategy<Value = FpMatrix> {
    (prop::sample::select(vec![2u32, 3, 5]), 1usize..6, 1usize..6).prop_flat_map(|(p, r, c)| {
        prop::collection::vec(0..p, r * c).prop_map(move |data| FpMatrix::from_vec(p, r, c, data).unwrap())
    })
}

fn two_subspaces() -> impl Strategy<Value = (Subspace, Subspace)> {
    (prop::sample::select(vec![2u32, 3]), 1usize..6).prop_flat_map(|(p, n)| {
        let vecs = prop::collection::vec(prop::collection::vec(0..p, n), 0..4);
        (vecs.clone(), vecs).prop_map(move |(a, b)| (Subspace::span(p, n, &a).unwrap(), Subspace::span(p, n, &b).unwrap()))
    })
}

/// (battery index, module index, seed vectors for a submodule).
fn module_choice() -> impl Strategy<Value = (usize, usize, Vec<Vec<u32>>)> {
    (0..batteries().len()).prop_flat_map(|b| {
        let bat = &batteries()[b];
        (0..bat.modules.len()).prop_flat_map(move |i| {
            let m = batteries()[b].module(i);
            let (p, n) = (m.p(), m.dim());
            prop::collection::vec(prop::collection::vec(0..p, n), 0..3).prop_map(move |vs| (b, i, vs))
        })
    })
}

proptest! {
    #[test]
    fn rank_nullity(a in matrix()) {
        prop_assert_eq!(a.rank() + a.kernel().dim(), a.cols());
        prop_assert_eq!(a.rref().rref(), a.rref());
    }

    #[test]
    fn inverses_are_two_sided(a in matrix()) {
        if let Some(inv) = a.inverse() {
            let id = FpMatrix::identity(a.p(), a.rows()).unwrap();
            prop_assert_eq!(a.mul(&inv).unwrap(), id.clone());
            prop_assert_eq!(inv.mul(&a).unwrap(), id);
        } else {
            prop_assert!(!a.is_square() || a.rank() < a.rows());
        }
    }

    #[test]
    fn modular_dimension_formula((u, v) in two_subspaces()) {
        let sum = u.sum(&v).unwrap();
        let meet = u.intersection(&v).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + v.dim());
        prop_assert!(meet.is_subspace_of(&u) && u.is_subspace_of(&sum));
    }

    #[test]
    fn double_dual_and_double_perp((b, i, vs) in module_choice()) {
        let m = batteries()[b].module(i);
        let dd = dual_module(&dual_module(m));
        prop_assert_eq!(&*dd, &**m);
        let l = m.generated(&vs).unwrap();
        let back = perp_in_dual(&perp_in_dual(&l));
        prop_assert_eq!(back, l);
    }

    #[test]
    fn smile_exchanges_products_and_annihilators((b, i, vs) in module_choice()) {
        let bat = &batteries()[b];
        let r = &bat.algebra;
        let m = bat.module(i);
        let gens: Vec<Vec<u32>> = vs.iter().take(2).map(|v| {
            (0..r.dim()).map(|k| v.get(k).copied().unwrap_or(1) % r.p()).collect()
        }).collect();
        let ideal = r.ideal(&gens);
        let lab = Lab::exact();
        let a = mul("I", ideal.clone());
        prop_assert_eq!(smile(&lab, &a).eval(m).unwrap(), annsel("I", ideal).eval(m).unwrap());
        prop_assert_eq!(smile(&lab, &smile(&lab, &a)).eval(m).unwrap(), a.eval(m).unwrap());
    }

    #[test]
    fn module_files_round_trip((b, i, _vs) in module_choice()) {
        let bat = &batteries()[b];
        let m = bat.module(i);
        let text = write_module(m, "algebra.toml");
        prop_assert_eq!(parse_module(&text, &bat.algebra).unwrap(), (**m).clone());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn batteries_are_deterministic(seed in 0u64..1000) {
        let r = Arc::new(Algebra::truncated_polynomial(2, 2));
        let a = Battery::generate(&r, seed, Sizes::Default);
        let b = Battery::generate(&r, seed, Sizes::Default);
        prop_assert_eq!(a.summary(), b.summary());
        prop_assert!(a.modules.iter().zip(&b.modules).all(|(x, y)| x.module == y.module && x.name == y.name));
        prop_assert!(a.maps.iter().zip(&b.maps).all(|(x, y)| x.map.matrix() == y.map.matrix() && (x.source, x.target) == (y.source, y.target)));
    }
}
