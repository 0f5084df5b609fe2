use proptest::prelude::*;
use ttfkit_core::approx::{
    build_torsion_free_quotient, fiber_product, is_p_torsion_free_over, make_approx_system, unpair,
    ApproxSystem, Sigma,
};
use ttfkit_core::virtab::{corpus, is_torsion_free, VAElement};

const LABELS: [&str; 4] = ["a", "t1", "t2", "t3"];

/// Every corpus group with holonomy `Z/2`, as a system over `G = Z/2` with
/// `a ↦ s(flip)` and `tᵢ ↦ eᵢ` (the identity once `i` exceeds the rank).
fn z2_systems() -> Vec<(&'static str, ApproxSystem)> {
    corpus::all()
        .into_iter()
        .filter(|(_, g)| g.quotient().order() == 2)
        .map(|(name, g)| {
            let mut images = vec![g.section(1)];
            for i in 0..3 {
                let mut e = vec![0; g.rank()];
                if i < g.rank() {
                    e[i] = 1;
                }
                images.push(g.translation(e));
            }
            let labels = LABELS.iter().map(|s| s.to_string()).collect();
            let sigma = Sigma::quotient_map(&g);
            (
                name,
                make_approx_system(labels, g, images, corpus::z2(), sigma).unwrap(),
            )
        })
        .collect()
}

#[test]
fn torsion_freeness_over_flip_is_inherited() {
    let systems = z2_systems();
    assert!(systems.len() >= 4);
    for (n1, s1) in &systems {
        for (n2, s2) in &systems {
            let f = fiber_product(s1, s2).unwrap();
            let free = |s: &ApproxSystem| is_p_torsion_free_over(s, 2, 1).unwrap().torsion_free;
            if free(s1) || free(s2) {
                assert!(free(&f), "{n1} x {n2}");
            }
            // ker σ₁₂ maps into ker σ₁ × ker σ₂.
            for k in f.kernel_generators() {
                let (a, b) = unpair(s1.ghat(), s2.ghat(), &lift(s1, s2, &f, &k));
                assert_eq!(s1.project(&a), 0);
                assert_eq!(s2.project(&b), 0);
            }
        }
    }
}

/// Ambient element of `Ĝ₁ × Ĝ₂` represented by `x`, recovered through the
/// generator images.
fn lift(s1: &ApproxSystem, s2: &ApproxSystem, f: &ApproxSystem, x: &VAElement) -> VAElement {
    let closure = ttfkit_core::virtab::subgroup_closure(
        &ttfkit_core::virtab::VirtAbGroup::direct_product(s1.ghat(), s2.ghat()),
        &s1.images()
            .iter()
            .zip(s2.images())
            .map(|(a, b)| ttfkit_core::approx::pair(s2.ghat(), a, b))
            .collect::<Vec<_>>(),
    );
    assert_eq!(&closure.group, f.ghat());
    closure.lift(x)
}

#[test]
fn pipeline_over_the_corpus() {
    let systems: Vec<ApproxSystem> = z2_systems().into_iter().map(|(_, s)| s).collect();
    let out = build_torsion_free_quotient(&systems, &[(2, 1)]).unwrap();
    assert!(out.certification.torsion_free);
    assert!(is_torsion_free(out.system.ghat()).torsion_free);
    assert_eq!(out.fold_order, (0..systems.len()).collect::<Vec<_>>());
}

proptest! {
    #[test]
    fn sigma_commutes_with_projections(
        i in 0usize..4,
        j in 0usize..4,
        word in proptest::collection::vec((0usize..4, any::<bool>()), 0..8),
    ) {
        let systems = z2_systems();
        let (s1, s2) = (&systems[i % systems.len()].1, &systems[j % systems.len()].1);
        let f = fiber_product(s1, s2).unwrap();
        let closure_lift = |x: &VAElement| lift(s1, s2, &f, x);
        let mut x = f.ghat().identity();
        for (k, invert) in word {
            let g = &f.images()[k];
            let g = if invert { f.ghat().inv(g) } else { g.clone() };
            x = f.ghat().mul(&x, &g);
        }
        let (a, b) = unpair(s1.ghat(), s2.ghat(), &closure_lift(&x));
        prop_assert_eq!(f.project(&x), s1.project(&a));
        prop_assert_eq!(f.project(&x), s2.project(&b));
    }
}
