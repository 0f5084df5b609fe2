use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::group::{add, from_big_vec, mat_vec, sub, to_big, Mat};
use super::{make_virtab, VAElement, VirtAbError, VirtAbGroup};
use crate::abelian::{hermite_normal_form, solve_integer, IntMatrix};

/// A subgroup `H = ⟨gens⟩` of an extension, rewritten as an extension over
/// its own finite image `Q′` with lattice `L = H ∩ Zⁿ ≅ Z^r`.
///
/// An element `(i, w)` of `group` stands for the ambient element
/// `(q_embedding[i], lifts[i] + B·w)` where the columns of `B` are the rows
/// of `basis`.
#[derive(Clone, Debug)]
pub struct SubgroupClosure {
    pub group: VirtAbGroup,
    /// Ambient index of each element of `Q′`.
    pub q_embedding: Vec<usize>,
    /// Lattice basis of `L` in Hermite normal form, one vector per row.
    pub basis: Vec<Vec<i64>>,
    /// Translation part of the chosen lift of each element of `Q′`.
    pub lifts: Vec<Vec<i64>>,
    /// The generators, in subgroup coordinates.
    pub generators: Vec<VAElement>,
    /// Number of saturation rounds that enlarged the lattice.
    pub saturation_rounds: usize,
}

impl SubgroupClosure {
    /// Ambient element represented by `x`.
    pub fn lift(&self, x: &VAElement) -> VAElement {
        let mut v = self.lifts[x.q].clone();
        for (w, b) in x.v.iter().zip(&self.basis) {
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi += w * bi;
            }
        }
        VAElement {
            q: self.q_embedding[x.q],
            v,
        }
    }

    /// Subgroup coordinates of an ambient element, if it lies in `H`.
    pub fn restrict(&self, x: &VAElement) -> Option<VAElement> {
        let i = self.q_embedding.iter().position(|&q| q == x.q)?;
        let w = lattice_coordinates(&self.basis, &sub(&x.v, &self.lifts[i]))?;
        Some(VAElement { q: i, v: w })
    }
}

/// Computes `⟨gens⟩` inside `ambient`.
///
/// `Q′` is the closure of the generators' images in `Q`. A lift of every
/// element of `Q′` is found by breadth-first search over the generators;
/// the Schreier elements `t(q)·g·t(q·π(g))⁻¹` lie in `H ∩ Zⁿ` and their
/// translation parts span it. The span is then saturated under the
/// `Q′`-action by repeated Hermite normal form until it stabilizes.
pub fn subgroup_closure(ambient: &VirtAbGroup, gens: &[VAElement]) -> SubgroupClosure {
    let q = ambient.quotient();
    let n = ambient.rank();
    let e = q.identity();

    let mut lift_of: BTreeMap<usize, VAElement> = BTreeMap::new();
    let mut order = vec![e];
    lift_of.insert(e, ambient.identity());
    let mut i = 0;
    while i < order.len() {
        let t = lift_of[&order[i]].clone();
        for g in gens {
            let x = ambient.mul(&t, g);
            lift_of.entry(x.q).or_insert_with(|| {
                order.push(x.q);
                x
            });
        }
        i += 1;
    }
    let mut q_sub: Vec<usize> = order.clone();
    q_sub.sort_unstable();

    let mut span: Vec<Vec<i64>> = Vec::new();
    for &c in &order {
        for g in gens {
            let x = ambient.mul(&lift_of[&c], g);
            let s = ambient.mul(&x, &ambient.inv(&lift_of[&x.q]));
            debug_assert_eq!(s.q, e);
            if s.v.iter().any(|&a| a != 0) {
                span.push(s.v);
            }
        }
    }
    let (basis, saturation_rounds) = saturate(&span, n, q_sub.iter().map(|&a| ambient.action(a)));

    let lifts: Vec<Vec<i64>> = q_sub.iter().map(|a| lift_of[a].v.clone()).collect();
    let qgroup = q.subgroup(&q_sub).expect("closed under multiplication");
    let r = basis.len();
    let action: Vec<Mat> = q_sub
        .iter()
        .map(|&a| {
            let cols: Vec<Vec<i64>> = basis
                .iter()
                .map(|b| {
                    lattice_coordinates(&basis, &mat_vec(ambient.action(a), b))
                        .expect("lattice is Q′-stable")
                })
                .collect();
            (0..r)
                .map(|i| cols.iter().map(|c| c[i]).collect())
                .collect()
        })
        .collect();
    let mut cocycle = BTreeMap::new();
    for (ia, &a) in q_sub.iter().enumerate() {
        for (ib, &b) in q_sub.iter().enumerate() {
            let ab = q.mul(a, b);
            let iab = q_sub.binary_search(&ab).expect("closed");
            let x = sub(
                &add(
                    &add(&lifts[ia], &mat_vec(ambient.action(a), &lifts[ib])),
                    ambient.cocycle(a, b),
                ),
                &lifts[iab],
            );
            let w = lattice_coordinates(&basis, &x).expect("cocycle values lie in the lattice");
            if w.iter().any(|&c| c != 0) {
                cocycle.insert((ia, ib), w);
            }
        }
    }
    let group = make_virtab(qgroup, r, action, &cocycle).expect("restriction of a valid extension");
    let mut closure = SubgroupClosure {
        group,
        q_embedding: q_sub,
        basis,
        lifts,
        generators: Vec::new(),
        saturation_rounds,
    };
    closure.generators = gens
        .iter()
        .map(|g| closure.restrict(g).expect("generator lies in its closure"))
        .collect();
    closure
}

/// Hermite basis of the smallest `M`-stable lattice containing `span`.
/// Each enlarging round strictly increases the rank or strictly decreases
/// the covolume of the full-rank part; that is asserted.
fn saturate<'a>(
    span: &[Vec<i64>],
    n: usize,
    mats: impl Iterator<Item = &'a Mat> + Clone,
) -> (Vec<Vec<i64>>, usize) {
    let mut basis = hnf_rows(span, n);
    let mut rounds = 0;
    loop {
        let mut rows = basis.clone();
        for m in mats.clone() {
            for b in &basis {
                rows.push(mat_vec(m, b));
            }
        }
        let next = hnf_rows(&rows, n);
        if next == basis {
            return (basis, rounds);
        }
        assert!(
            next.len() > basis.len()
                || (next.len() == basis.len() && measure(&next) < measure(&basis)),
            "lattice saturation must strictly enlarge the lattice"
        );
        basis = next;
        rounds += 1;
    }
}

/// Product of Hermite pivots: the covolume within the span.
fn measure(basis: &[Vec<i64>]) -> BigInt {
    basis
        .iter()
        .map(|r| BigInt::from(*r.iter().find(|&&x| x != 0).expect("nonzero row")))
        .product()
}

fn hnf_rows(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let h = hermite_normal_form(&IntMatrix::from_rows_with_cols(rows, n));
    h.to_i64_rows().expect("lattice entries fit in i64")
}

/// `w` with `Σ wᵢ·basisᵢ = x`, if `x` lies in the lattice.
pub(crate) fn lattice_coordinates(basis: &[Vec<i64>], x: &[i64]) -> Option<Vec<i64>> {
    if basis.is_empty() {
        return x.iter().all(|&a| a == 0).then(Vec::new);
    }
    let n = x.len();
    let bt: Vec<Vec<i64>> = (0..n)
        .map(|i| basis.iter().map(|b| b[i]).collect())
        .collect();
    let rhs: Vec<BigInt> = x.iter().map(|&a| BigInt::from(a)).collect();
    solve_integer(&to_big(&bt), &rhs).map(|w| from_big_vec(&w).expect("coordinates fit in i64"))
}

/// Result of looking for a lattice element in a subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntersectionOutcome {
    /// `γ^s` for the first nontrivial generator `γ`, `s` the order of its
    /// image in `Q`: a nonzero translation in the subgroup.
    Witness(VAElement),
    /// `γ^s` is the identity, so `γ` is a torsion element of order `s`.
    Torsion { element: VAElement, order: u64 },
}

/// A nontrivial translation in `⟨gens⟩`, found as a power of a generator.
pub fn lattice_intersection_witness(
    ambient: &VirtAbGroup,
    gens: &[VAElement],
) -> Result<IntersectionOutcome, VirtAbError> {
    let id = ambient.identity();
    let gamma = gens
        .iter()
        .find(|g| **g != id)
        .ok_or(VirtAbError::TrivialSubgroup)?;
    let s = ambient.quotient().element_order(gamma.q);
    let y = ambient.pow(gamma, s as i64);
    if y.v.iter().all(|&a| a == 0) {
        Ok(IntersectionOutcome::Torsion {
            element: gamma.clone(),
            order: s,
        })
    } else {
        Ok(IntersectionOutcome::Witness(y))
    }
}

/// Index `[Zⁿ : L]` for a full-rank Hermite basis, zero otherwise.
pub fn lattice_index(basis: &[Vec<i64>], n: usize) -> BigInt {
    if basis.len() < n {
        return BigInt::zero();
    }
    measure(basis).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::virtab::{corpus, is_torsion_free, FiniteGroup};

    fn diag(d: &[i64]) -> Mat {
        (0..d.len())
            .map(|i| {
                (0..d.len())
                    .map(|j| if i == j { d[i] } else { 0 })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn translation_generates_a_line() {
        let g = VirtAbGroup::split(
            FiniteGroup::cyclic(2),
            2,
            vec![diag(&[1, 1]), diag(&[-1, -1])],
        )
        .unwrap();
        let c = subgroup_closure(&g, &[g.translation(vec![1, 0])]);
        assert_eq!(c.group.quotient().order(), 1);
        assert_eq!(c.basis, vec![vec![1, 0]]);
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let c = subgroup_closure(&corpus::klein_bottle(), &[]);
        assert_eq!(c.group.quotient().order(), 1);
        assert_eq!(c.group.rank(), 0);
    }

    #[test]
    fn diagonal_in_dihedral_times_z() {
        // (Z/2 ⋉ Z) × Z with the images of a ↦ ((flip,0), 1) and b ↦ ((e,1), 0).
        let amb =
            VirtAbGroup::direct_product(&corpus::infinite_dihedral(), &VirtAbGroup::lattice(1));
        let a = VAElement::new(1, vec![0, 1]);
        let b = VAElement::new(0, vec![1, 0]);
        let c = subgroup_closure(&amb, &[a, b]);
        assert_eq!(c.group.quotient().order(), 2);
        // a² = (e, (0, 2)), and b; conjugating b by a gives −b.
        assert_eq!(c.basis, vec![vec![1, 0], vec![0, 2]]);
        assert!(is_torsion_free(&c.group).torsion_free);
    }

    #[test]
    fn closure_is_idempotent() {
        for (_, g) in corpus::all() {
            let gens = g.generating_set();
            let c = subgroup_closure(&g, &gens[1..]);
            let again = subgroup_closure(&c.group, &c.generators);
            assert_eq!(again.group.quotient().order(), c.group.quotient().order());
            assert_eq!(
                again.basis,
                hnf_rows(&identity_rows(c.group.rank()), c.group.rank())
            );
            for x in &c.generators {
                assert_eq!(c.restrict(&c.lift(x)).as_ref(), Some(x));
            }
        }
    }

    fn identity_rows(n: usize) -> Vec<Vec<i64>> {
        (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect()
    }

    #[test]
    fn saturation_enlarges_under_action() {
        // Span of (1,0) under the coordinate swap: needs one round.
        let swap = vec![vec![0, 1], vec![1, 0]];
        let id = diag(&[1, 1]);
        let (b, rounds) = saturate(&[vec![1, 0]], 2, [&id, &swap].into_iter());
        assert_eq!(b, identity_rows(2));
        assert_eq!(rounds, 1);
    }

    #[test]
    fn intersection_witnesses() {
        let s2 = VirtAbGroup::sigma_lattice(2);
        let t = s2.quotient().index_of_label("(1 2)").unwrap();
        let out = lattice_intersection_witness(&s2, &[VAElement::new(t, vec![1, 0])]).unwrap();
        assert_eq!(
            out,
            IntersectionOutcome::Witness(s2.translation(vec![1, 1]))
        );
        let out = lattice_intersection_witness(&s2, &[VAElement::new(t, vec![0, 0])]).unwrap();
        assert!(matches!(out, IntersectionOutcome::Torsion { order: 2, .. }));
        let out = lattice_intersection_witness(&s2, &[s2.translation(vec![0, 5])]).unwrap();
        assert_eq!(
            out,
            IntersectionOutcome::Witness(s2.translation(vec![0, 5]))
        );
        assert_eq!(
            lattice_intersection_witness(&s2, &[]),
            Err(VirtAbError::TrivialSubgroup)
        );
    }

    #[test]
    fn index_of_sublattice() {
        assert_eq!(lattice_index(&[vec![1, 0], vec![0, 2]], 2), BigInt::from(2));
        assert_eq!(lattice_index(&[vec![1, 0]], 2), BigInt::zero());
    }
}
