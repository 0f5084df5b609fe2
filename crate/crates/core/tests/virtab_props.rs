mod common;

use proptest::prelude::*;
use ttfkit_core::virtab::{
    corpus, element_order, is_torsion_free, kk_embed, VAElement, VirtAbGroup,
};

fn corpus_index() -> impl Strategy<Value = usize> {
    0..corpus::all().len()
}

fn element(g: &VirtAbGroup, q: usize, raw: &[i64]) -> VAElement {
    VAElement::new(
        q % g.quotient().order(),
        raw.iter().take(g.rank()).copied().collect(),
    )
}

#[test]
fn torsion_verdict_matches_exhaustive_box() {
    for (name, g) in corpus::all() {
        let found = common::torsion_in_box(&g, 3).is_some();
        assert_eq!(is_torsion_free(&g).torsion_free, !found, "{name}");
    }
}

#[test]
fn flat_manifolds_and_their_degenerations() {
    for (name, torsion_free) in [
        ("klein_bottle", true),
        ("klein_bottle_degenerate", false),
        ("dicosm", true),
        ("hantzsche_wendt", true),
        ("hantzsche_wendt_degenerate", false),
        ("infinite_dihedral", false),
        ("z2_times_z", false),
    ] {
        let g = corpus::all()
            .into_iter()
            .find(|(n, _)| *n == name)
            .unwrap()
            .1;
        let verdict = is_torsion_free(&g);
        assert_eq!(verdict.torsion_free, torsion_free, "{name}");
        if let Some(w) = verdict.witness {
            let k = element_order(&g, &w).expect("witness has finite order");
            assert!(k > 1);
            assert_eq!(g.pow(&w, k as i64), g.identity());
        }
    }
}

proptest! {
    #[test]
    fn multiplication_is_associative(
        gi in corpus_index(),
        q in proptest::array::uniform3(0usize..4),
        a in proptest::collection::vec(-5i64..=5, 3),
        b in proptest::collection::vec(-5i64..=5, 3),
        c in proptest::collection::vec(-5i64..=5, 3),
    ) {
        let g = corpus::all()[gi].1.clone();
        let (x, y, z) = (element(&g, q[0], &a), element(&g, q[1], &b), element(&g, q[2], &c));
        prop_assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
        prop_assert_eq!(g.mul(&x, &g.inv(&x)), g.identity());
    }

    #[test]
    fn element_order_agrees_with_iteration(
        gi in corpus_index(),
        q in 0usize..4,
        a in proptest::collection::vec(-4i64..=4, 3),
    ) {
        let g = corpus::all()[gi].1.clone();
        let x = element(&g, q, &a);
        prop_assert_eq!(element_order(&g, &x), common::order_by_iteration(&g, &x));
    }

    #[test]
    fn kk_embedding_is_multiplicative(
        gi in corpus_index(),
        q in proptest::array::uniform2(0usize..4),
        a in proptest::collection::vec(-4i64..=4, 3),
        b in proptest::collection::vec(-4i64..=4, 3),
    ) {
        let g = corpus::all()[gi].1.clone();
        let e = kk_embed(&g).unwrap();
        let (x, y) = (element(&g, q[0], &a), element(&g, q[1], &b));
        prop_assert_eq!(e.map(&g.mul(&x, &y)), e.wreath.mul(&e.map(&x), &e.map(&y)));
    }
}
