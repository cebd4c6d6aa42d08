use std::sync::Arc;

use smilelab::algebra::Algebra;
use smilelab::lab::{Lab, Mutation};
use smilelab::proplab::{
    builtin_env, check_property, mutation_targets, replay_property, replay_theorem, verify_theorem, Battery, Context,
    Property, Sizes, TheoremId, BUILTINS,
};

fn x2() -> Arc<Algebra> {
    Arc::new(Algebra::truncated_polynomial(2, 2))
}

#[test]
fn exact_checks_pass_on_minimal_batteries() {
    for r in [x2(), Arc::new(Algebra::square_zero(2, 2))] {
        let ctx = Context::new(Arc::new(Battery::generate(&r, 3, Sizes::Minimal)), Lab::exact());
        for t in TheoremId::ALL {
            let v = verify_theorem(t, &ctx);
            assert!(v.passed(), "{t}: {:?}", v.outcome);
        }
    }
}

#[test]
fn mutation_witnesses_replay() {
    let b = Arc::new(Battery::generate(&x2(), 1, Sizes::Default));
    for m in Mutation::ALL {
        let ctx = Context::new(b.clone(), Lab::mutated(m));
        let failing: Vec<_> = mutation_targets(m)
            .iter()
            .filter_map(|&t| verify_theorem(t, &ctx).witness().map(|w| (t, w.clone())))
            .collect();
        assert!(!failing.is_empty(), "{m} survived");
        for (t, w) in failing {
            assert!(replay_theorem(t, &ctx, &w), "{m}: {t} witness {} #{} does not replay", w.clause, w.index);
            // The same item passes without the defect.
            let exact = Context::new(b.clone(), Lab::exact());
            assert!(!replay_theorem(t, &exact, &w), "{m}: {t} item fails without the mutation");
        }
    }
}

#[test]
fn enlarging_the_battery_keeps_failures() {
    let r = Arc::new(Algebra::truncated_polynomial(2, 3));
    let small = Battery::generate(&r, 1, Sizes::Minimal);
    let large = Battery::generate(&r, 1, Sizes::Default);
    let env = builtin_env(&large, Lab::exact());
    for (expr, _) in BUILTINS {
        let alpha = env.compile(expr).unwrap();
        for p in Property::ALL {
            let v = check_property(&alpha, p, &small);
            if let Some(w) = v.witness() {
                assert!(replay_property(&alpha, p, &small, w));
                assert!(!check_property(&alpha, p, &large).passed(), "{expr} {p}: FAIL on minimal, PASS on default");
            }
        }
    }
}

#[test]
fn preradical_flags_match_the_battery() {
    let b = Battery::generate(&x2(), 1, Sizes::Default);
    let env = builtin_env(&b, Lab::exact());
    for (expr, functorial) in BUILTINS {
        let alpha = env.compile(expr).unwrap();
        assert_eq!(check_property(&alpha, Property::Functorial, &b).passed(), functorial, "{expr}");
        assert!(check_property(&alpha, Property::IsoEquivariant, &b).passed(), "{expr}");
    }
}
