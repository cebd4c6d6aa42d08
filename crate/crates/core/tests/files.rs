use std::path::{Path, PathBuf};

use smilelab::duality::dual_module;
use smilelab::format::{self, FileKind};
use smilelab::proplab::{Check, Suite, TheoremId};

fn data() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn files(dir: &str) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(data().join(dir))
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    v.sort();
    v
}

#[test]
fn shipped_algebras_and_modules_are_valid() {
    for path in files("algebras") {
        let (_, kind) = format::read_with_kind(&path).unwrap();
        assert_eq!(kind, FileKind::Algebra);
        format::load_algebra(&path).unwrap_or_else(|e| panic!("{e}"));
    }
    for path in files("modules") {
        let loaded = format::load_module(&path).unwrap_or_else(|e| panic!("{e}"));
        // The dual is serializable in the same format and reads back.
        let d = dual_module(&loaded.module);
        let text = format::write_module(&d, "unused.toml");
        assert_eq!(format::parse_module(&text, &loaded.algebra).unwrap(), *d);
    }
    for path in files("vectors") {
        let src = std::fs::read_to_string(&path).unwrap();
        assert_eq!(format::detect_kind(&src).unwrap(), FileKind::Vectors, "{}", path.display());
    }
}

#[test]
fn socle_of_e_over_cubic_truncation_is_one_dimensional() {
    let loaded = format::load_module(&data().join("modules/f2_x3_E.toml")).unwrap();
    let e = &loaded.module;
    // Brute force: vectors killed by every action of the maximal ideal.
    let mut killed = 0;
    for bits in 0u32..(1 << e.dim()) {
        let z: Vec<u32> = (0..e.dim()).map(|i| bits >> i & 1).collect();
        if (1..3).all(|a| e.action(a).mul_vec(&z).unwrap().iter().all(|&c| c == 0)) {
            killed += 1;
        }
    }
    assert_eq!(killed, 2);
    let env = smilelab::selectors::Env::new(&loaded.algebra);
    assert_eq!(env.compile("socle").unwrap().eval(e).unwrap().dim(), 1);
}

#[test]
fn shipped_suite_covers_every_theorem_and_the_mutations() {
    let suite = Suite::load(&data().join("suites/suite-default.toml")).unwrap_or_else(|e| panic!("{e}"));
    assert_eq!(suite.runs.len(), 3);
    for run in &suite.runs {
        for t in TheoremId::ALL {
            assert!(run.checks.contains(&Check::Theorem(t)));
        }
        assert!(run.checks.contains(&Check::Mutations));
    }
}
