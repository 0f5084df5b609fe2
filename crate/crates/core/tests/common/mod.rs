//! Independent oracles shared by the property tests and the acceptance run.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use ttfkit_core::abelian::{FinAbGroup, FinAbHom, FinAbInvariants, ProfAbData};
use ttfkit_core::approx::{make_approx_system, ApproxSystem, Sigma};
use ttfkit_core::virtab::{corpus, VAElement, VirtAbGroup};

/// Number of subgroups of index `n` in the free group of rank `r`:
/// `a₁ = 1`, `a_n = n·(n!)^{r−1} − Σ_{k<n} ((n−k)!)^{r−1}·a_k`.
pub fn hall_counts(r: u32, max: usize) -> Vec<u128> {
    let fact = |n: usize| (1..=n as u128).product::<u128>();
    let mut a: Vec<u128> = Vec::new();
    for n in 1..=max {
        let total = n as u128 * fact(n).pow(r - 1);
        let sub: u128 = (1..n).map(|k| fact(n - k).pow(r - 1) * a[k - 1]).sum();
        a.push(total - sub);
    }
    a
}

/// Order by repeated multiplication. `x^|Q|` lies in the torsion-free
/// lattice, so an element of finite order has order at most `|Q|`.
pub fn order_by_iteration(g: &VirtAbGroup, x: &VAElement) -> Option<u64> {
    let mut acc = x.clone();
    for k in 1..=g.quotient().order() as u64 {
        if acc == g.identity() {
            return Some(k);
        }
        acc = g.mul(&acc, x);
    }
    None
}

/// Whether some non-identity element `(q, v)` with `|vᵢ| ≤ radius` has
/// finite order.
pub fn torsion_in_box(g: &VirtAbGroup, radius: i64) -> Option<VAElement> {
    let n = g.rank();
    let side = 2 * radius + 1;
    for q in 0..g.quotient().order() {
        for code in 0..side.pow(n as u32) {
            let mut c = code;
            let v = (0..n)
                .map(|_| {
                    let d = c % side - radius;
                    c /= side;
                    d
                })
                .collect();
            let x = VAElement::new(q, v);
            if x != g.identity() && order_by_iteration(g, &x).is_some() {
                return Some(x);
            }
        }
    }
    None
}

/// Every finite abelian group of order at most `max`, once, by invariant
/// factor chains `d₁ | d₂ | …` with all `dᵢ > 1`.
pub fn abelian_groups_up_to(max: u64) -> Vec<FinAbGroup> {
    fn extend(chain: &mut Vec<u64>, order: u64, max: u64, out: &mut Vec<Vec<u64>>) {
        out.push(chain.clone());
        let last = chain.last().copied().unwrap_or(1);
        let mut d = if chain.is_empty() { 2 } else { last };
        while order * d <= max {
            if d % last == 0 {
                chain.push(d);
                extend(chain, order * d, max, out);
                chain.pop();
            }
            d += if chain.is_empty() { 1 } else { last };
        }
    }
    let mut chains = Vec::new();
    extend(&mut Vec::new(), 1, max, &mut chains);
    chains
        .into_iter()
        .map(|c| FinAbGroup::new(c).unwrap())
        .collect()
}

/// `0 → A → B → B/A → 0` for every cyclic `A = ⟨x⟩ ⊆ B` with `|B| ≤ max_b`
/// and `|B/A| ≤ max_c`.
pub fn short_exact_corpus(max_b: u64, max_c: u64) -> Vec<(FinAbHom, FinAbHom)> {
    let mut out = Vec::new();
    for b in abelian_groups_up_to(max_b) {
        for x in b.elements() {
            if b.order() / b.element_order(&x) > max_c {
                continue;
            }
            let (_, f) = b.subgroup(std::slice::from_ref(&x)).unwrap();
            let (_, g) = b.quotient(std::slice::from_ref(&x)).unwrap();
            out.push((f, g));
        }
    }
    out
}

/// Whether multiplication by every `n` is onto, by enumeration.
pub fn divisible_by_enumeration(g: &FinAbGroup) -> bool {
    (1..=g.exponent().max(1)).all(|n| {
        let image: std::collections::BTreeSet<Vec<u64>> =
            g.elements().map(|x| g.scale(n as i64, &x)).collect();
        image.len() as u64 == g.order()
    })
}

pub fn random_profab(rng: &mut ChaCha8Rng) -> ProfAbData {
    const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];
    let mut ranks = BTreeMap::new();
    for _ in 0..rng.gen_range(0..4) {
        ranks.insert(PRIMES[rng.gen_range(0..PRIMES.len())], rng.gen_range(1..4));
    }
    let moduli: Vec<u64> = if rng.gen_bool(0.4) {
        Vec::new()
    } else {
        (0..rng.gen_range(1..4))
            .map(|_| rng.gen_range(2..13))
            .collect()
    };
    ProfAbData::new(ranks, FinAbInvariants::from_cyclic_orders(0, &moduli)).unwrap()
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// `Z² → Z/2 × Z`, `a ↦ (flip, 0)`, `b ↦ (e, 1)`, over `G = Z/2`.
pub fn system_z2_times_z() -> ApproxSystem {
    let ghat = corpus::z2_times_z();
    let images = vec![VAElement::new(1, vec![0]), VAElement::new(0, vec![1])];
    let sigma = Sigma::quotient_map(&ghat);
    make_approx_system(labels(&["a", "b"]), ghat, images, corpus::z2(), sigma).unwrap()
}

/// `Z² → Z`, `a ↦ 1`, `b ↦ 0`, with `σ` reduction mod 2.
pub fn system_z_mod_2() -> ApproxSystem {
    let ghat = VirtAbGroup::lattice(1);
    let images = vec![ghat.translation(vec![1]), ghat.translation(vec![0])];
    let sigma = Sigma {
        lattice: vec![1],
        section: vec![0],
    };
    make_approx_system(labels(&["a", "b"]), ghat, images, corpus::z2(), sigma).unwrap()
}
