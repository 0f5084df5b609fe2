//! Every file format parses, re-serializes and re-parses to the same value,
//! both in memory and through the binary.

use std::process::Command;

use proptest::prelude::*;
use ttfkit::formats::*;
use ttfkit_core::approx::{fiber_product, make_approx_system, ApproxSystem, Sigma};
use ttfkit_core::fp::{builtin_from_spec, parse_presentation};
use ttfkit_core::galois::StageGroupElement;
use ttfkit_core::virtab::{corpus, VAElement, VirtAbGroup};

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn systems() -> Vec<ApproxSystem> {
    let ghat = corpus::z2_times_z();
    let images = vec![VAElement::new(1, vec![0]), VAElement::new(0, vec![1])];
    let sigma = Sigma::quotient_map(&ghat);
    let s1 = make_approx_system(labels(&["a", "b"]), ghat, images, corpus::z2(), sigma).unwrap();
    let ghat = VirtAbGroup::lattice(1);
    let images = vec![ghat.translation(vec![1]), ghat.translation(vec![0])];
    let sigma = Sigma {
        lattice: vec![1],
        section: vec![0],
    };
    let s2 = make_approx_system(labels(&["a", "b"]), ghat, images, corpus::z2(), sigma).unwrap();
    let s3 = fiber_product(&s1, &s2).unwrap();
    vec![s1, s2, s3]
}

#[test]
fn presentations() {
    for spec in [
        "heisenberg",
        "free(3)",
        "free_abelian(3)",
        "surface(2)",
        "nonorientable(3)",
    ] {
        let p = builtin_from_spec(spec).unwrap();
        let text = p.to_string();
        let q = parse_presentation(&text).unwrap();
        assert_eq!(q, p, "{spec}");
        assert_eq!(q.to_string(), text);
    }
}

#[test]
fn extensions() {
    for (name, g) in corpus::all() {
        let text = write_vab(&g).unwrap();
        let h = parse_vab(&text).unwrap();
        assert_eq!(h, g, "{name}");
        assert_eq!(write_vab(&h).unwrap(), text, "{name}");
    }
}

#[test]
fn approximation_systems() {
    for s in systems() {
        let text = write_as(&s).unwrap();
        let t = parse_as(&text).unwrap();
        assert_eq!(t, s);
        assert_eq!(write_as(&t).unwrap(), text);
    }
}

/// `virtab show` on a written file echoes the same serialization.
#[test]
fn through_the_binary() {
    let dir = tempfile::tempdir().unwrap();
    for (name, g) in corpus::all() {
        let text = write_vab(&g).unwrap();
        let path = dir.path().join(format!("{name}.vab"));
        std::fs::write(&path, &text).unwrap();
        let out = Command::new(env!("CARGO_BIN_EXE_ttfkit"))
            .args(["virtab", "show"])
            .arg(&path)
            .output()
            .unwrap();
        assert!(out.status.success(), "{name}");
        let stdout = String::from_utf8(out.stdout).unwrap();
        let echoed: String = stdout
            .lines()
            .skip_while(|l| *l != "  data:")
            .skip(1)
            .map(|l| format!("{}\n", l.strip_prefix("    - ").unwrap()))
            .collect();
        assert_eq!(echoed, text, "{name}");
    }
}

fn stage_element(n: usize, s: u64) -> impl Strategy<Value = StageGroupElement> {
    (
        Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        prop::collection::vec(-20i64..20, n),
    )
        .prop_map(move |(perm, v)| StageGroupElement::from_lattice(&perm, &v, s))
}

proptest! {
    #[test]
    fn sub_files(elems in (1usize..5, 2u64..7).prop_flat_map(|(n, s)| prop::collection::vec(stage_element(n, s), 0..5))) {
        let text = write_sub(&elems);
        let back = parse_sub(&text).unwrap();
        prop_assert_eq!(&back, &elems);
        prop_assert_eq!(write_sub(&back), text);
    }

    #[test]
    fn elements(i in 0usize..7, q in 0usize..8, v in prop::collection::vec(-50i64..50, 3)) {
        let (_, g) = &corpus::all()[i % corpus::all().len()];
        let x = VAElement::new(q % g.quotient().order(), v[..g.rank().min(3)].to_vec());
        prop_assume!(x.v.len() == g.rank());
        let text = format_element(g, &x);
        prop_assert_eq!(parse_element(g, &text).unwrap(), x);
    }
}
