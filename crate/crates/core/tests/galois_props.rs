use proptest::prelude::*;
use ttfkit_core::galois::{
    fixed_ring_check, galois_criterion, inertia_at_point, make_stage, orbit,
    separability_basis_check, LaurentPoly, LaurentStage, StageGroupElement,
};
use ttfkit_core::virtab::{corpus, embed_sigma_lattice, is_torsion_free, VirtAbGroup};

/// Multiplicative order of `x` mod a prime, by iteration.
fn order_mod(x: u64, p: u64) -> u64 {
    let (mut y, mut k) = (x % p, 1);
    while y != 1 {
        y = y * x % p;
        k += 1;
    }
    k
}

#[test]
fn theta_is_a_primitive_root_of_unity_of_order_s() {
    for q in [3u64, 5, 7, 11, 13] {
        let g = (2..q).find(|&g| order_mod(g, q) == q - 1).unwrap();
        for s in (1..q).filter(|s| (q - 1) % s == 0) {
            let st = make_stage(q, 1, s).unwrap();
            assert_eq!(
                u64::from(st.theta()),
                (0..(q - 1) / s).fold(1, |acc, _| acc * g % q)
            );
            assert_eq!(order_mod(u64::from(st.theta()), q), s, "q={q} s={s}");
        }
        for s in (1..2 * q).filter(|s| (q - 1) % s != 0) {
            assert!(make_stage(q, 1, s).is_err());
        }
    }
}

#[test]
fn fixed_rings_and_bases_over_small_stages() {
    for (q, n, s) in [
        (3, 1, 2),
        (4, 1, 3),
        (5, 1, 2),
        (5, 1, 4),
        (7, 1, 6),
        (9, 1, 8),
        (5, 2, 4),
        (7, 2, 3),
    ] {
        let st = make_stage(q, n, s).unwrap();
        assert!(fixed_ring_check(&st, 2 * s as i64 + 1), "q={q} n={n} s={s}");
        let r = separability_basis_check(&st, s as i64 + 2);
        assert!(r.holds, "q={q} n={n} s={s}");
        assert_eq!(r.basis.len() as u64, s.pow(n as u32));
    }
}

/// Reduction mod `s` of the generators of a corpus group through its
/// embedding in `Σ_N ⋉ Z^N`.
fn reduced(g: &VirtAbGroup, s: u64) -> (usize, Vec<StageGroupElement>) {
    let e = embed_sigma_lattice(g).unwrap();
    let gens = g
        .generating_set()
        .iter()
        .map(|x| StageGroupElement::from_lattice(e.permutation(x.q), &e.map(x).v, s))
        .collect();
    (e.degree, gens)
}

#[test]
fn corpus_reductions_at_stages_divisible_by_the_holonomy_exponent() {
    for (name, g) in corpus::all() {
        let tf = is_torsion_free(&g).torsion_free;
        for (q, s) in [(3u64, 2u64), (5, 2), (5, 4), (7, 6)] {
            let (n, gens) = reduced(&g, s);
            if (q - 1).pow(n as u32) > 5000 {
                continue;
            }
            let st = make_stage(q, n, s).unwrap();
            let v = galois_criterion(&st, &gens).unwrap();
            assert_eq!(v.galois, tf, "{name} q={q} s={s}");
            if let Some((point, h)) = v.witness {
                // Degenerate groups contain a pure permutation fixing the
                // diagonal point, which comes first lexicographically.
                assert_eq!(point, vec![1; n], "{name}");
                assert!(h.twist.iter().all(|&t| t == 0), "{name}");
            }
        }
    }
}

#[test]
fn odd_stage_sees_spurious_inertia_that_refinement_removes() {
    let (n, gens) = reduced(&corpus::klein_bottle(), 3);
    let v = galois_criterion(&make_stage(7, n, 3).unwrap(), &gens).unwrap();
    assert!(!v.galois);
    let (n, gens) = reduced(&corpus::klein_bottle(), 6);
    assert!(
        galois_criterion(&make_stage(7, n, 6).unwrap(), &gens)
            .unwrap()
            .galois
    );
}

fn stage_strategy() -> impl Strategy<Value = (LaurentStage, Vec<StageGroupElement>)> {
    prop_oneof![
        Just((5u64, 4u64)),
        Just((7, 3)),
        Just((7, 6)),
        Just((4, 3)),
        Just((9, 4))
    ]
    .prop_flat_map(|(q, s)| (Just((q, s)), 1usize..=3))
    .prop_flat_map(|((q, s), n)| {
        let perm = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
        let elem = (perm, proptest::collection::vec(0..s, n))
            .prop_map(|(perm, twist)| StageGroupElement { perm, twist });
        (
            Just(make_stage(q, n, s).unwrap()),
            proptest::collection::vec(elem, 0..3),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orbit_stabilizer_and_inertia_inside_decomposition(
        (st, gens) in stage_strategy(),
        seed in proptest::collection::vec(1u32..1000, 3),
    ) {
        let units = st.q() as u32 - 1;
        let point: Vec<u32> = seed[..st.variables()].iter().map(|x| 1 + x % units).collect();
        let group = st.closure(&gens).unwrap();
        let r = inertia_at_point(&st, &gens, &point).unwrap();
        let orb = orbit(&st, &gens, &point).unwrap();
        prop_assert_eq!(orb.len() * r.decomposition.len(), group.len());
        prop_assert!(r.inertia.iter().all(|g| r.decomposition.contains(g)));
    }

    #[test]
    fn action_is_multiplicative_and_preserves_evaluation(
        (st, gens) in stage_strategy(),
        exps in proptest::collection::vec(proptest::collection::vec(-5i64..5, 3), 1..4),
        coeffs in proptest::collection::vec(1u32..100, 4),
        seed in proptest::collection::vec(1u32..1000, 3),
    ) {
        let n = st.variables();
        let f = LaurentPoly {
            terms: exps.iter().zip(&coeffs)
                .map(|(e, &c)| (e[..n].to_vec(), c % (st.q() as u32 - 1) + 1))
                .collect(),
        };
        let units = st.q() as u32 - 1;
        let point: Vec<u32> = seed[..n].iter().map(|x| 1 + x % units).collect();
        let group = st.closure(&gens).unwrap();
        for g in &group {
            for h in &gens {
                let lhs = st.act(&st.compose(g, h), &f).unwrap();
                prop_assert_eq!(lhs, st.act(g, &st.act(h, &f).unwrap()).unwrap());
            }
            // (g·f)(g·a) = f(a)
            let gf = st.act(g, &f).unwrap();
            prop_assert_eq!(st.evaluate(&gf, &st.move_point(g, &point)), st.evaluate(&f, &point));
        }
    }
}
