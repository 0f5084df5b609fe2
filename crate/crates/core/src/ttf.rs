//! Bounded certification of weak total torsion freeness.
//!
//! A group is weakly totally torsion free when every finite-index subgroup
//! has torsion-free abelianization. [`certify_weak_ttf`] sweeps all
//! subgroups up to an index bound in canonical order and either reports the
//! first subgroup whose abelianization has torsion, or certifies the bound.
//! A certificate never extends beyond the swept bound.

use alloc::vec::Vec;

use crate::abelian::{
    abelianization, exponent_matrix, invariant_factors_by_minors, smith_normal_form,
    FinAbInvariants,
};
use crate::fp::{
    coset_enumerate, low_index_subgroups_with, reidemeister_schreier_detailed, CosetTable, FpError,
    GroupPresentation, LowIndexOptions, SchreierPresentation, Word, DEFAULT_NODE_BUDGET,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TtfError {
    #[error("index bound must be at least 1")]
    InvalidIndexBound,
    #[error("search budget exhausted at index {index}; {stats:?} examined before that")]
    BudgetExceeded { index: usize, stats: TtfStats },
    #[error(transparent)]
    Fp(#[from] FpError),
    #[error("witness failed re-verification: {0}")]
    WitnessRejected(&'static str),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TtfStats {
    pub subgroups_examined: usize,
    /// Largest index fully swept.
    pub max_index_reached: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TtfStatus {
    CertifiedUpTo(usize),
    Refuted,
}

/// A finite-index subgroup whose abelianization has torsion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TtfWitness {
    pub table: CosetTable,
    pub schreier: SchreierPresentation,
    pub invariants: FinAbInvariants,
}

impl TtfWitness {
    /// Re-derives the witness from scratch: the table is checked against
    /// every relator, the subgroup presentation is rebuilt, and the
    /// invariants are recomputed along a second route (Smith form of the
    /// transposed relation matrix, and determinantal divisors when small).
    pub fn reverify(&self, pres: &GroupPresentation) -> Result<(), TtfError> {
        self.table.verify(pres)?;
        let rebuilt = reidemeister_schreier_detailed(pres, &self.table)?;
        if rebuilt != self.schreier {
            return Err(TtfError::WitnessRejected("subgroup presentation differs"));
        }
        let m = exponent_matrix(&self.schreier.presentation);
        let direct = abelianization(&self.schreier.presentation);
        if direct != self.invariants {
            return Err(TtfError::WitnessRejected("abelianization differs"));
        }
        let t = smith_normal_form(&m.transpose());
        let diag = t.diagonal();
        if diag.len() != m.cols() - self.invariants.rank() {
            return Err(TtfError::WitnessRejected("rank differs on the transpose"));
        }
        let torsion: Vec<_> = diag
            .iter()
            .filter(|d| **d > 1.into())
            .filter_map(|d| d.to_biguint())
            .collect();
        if torsion != self.invariants.torsion() {
            return Err(TtfError::WitnessRejected(
                "torsion differs on the transpose",
            ));
        }
        if m.rows() <= 10 && m.cols() <= 8 {
            let minors = invariant_factors_by_minors(&m);
            let torsion: Vec<_> = minors
                .iter()
                .filter(|d| **d > 1.into())
                .filter_map(|d| d.to_biguint())
                .collect();
            if torsion != self.invariants.torsion() {
                return Err(TtfError::WitnessRejected(
                    "torsion differs from determinantal divisors",
                ));
            }
        }
        if self.invariants.is_torsion_free() {
            return Err(TtfError::WitnessRejected("no torsion"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TtfVerdict {
    pub status: TtfStatus,
    /// First witness in canonical order; present iff refuted.
    pub witness: Option<TtfWitness>,
    /// Every witness up to the bound, when requested.
    pub all_witnesses: Vec<TtfWitness>,
    pub stats: TtfStats,
}

impl TtfVerdict {
    pub fn is_refuted(&self) -> bool {
        self.status == TtfStatus::Refuted
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TtfOptions {
    pub max_index: usize,
    /// Search-node budget of the low-index enumeration at each index.
    pub budget: usize,
    /// Keep sweeping after the first witness and collect all of them.
    pub all_witnesses: bool,
    /// Examine one subgroup per conjugacy class; abelianization is a
    /// conjugacy invariant, so the verdict does not change.
    pub conjugacy_representatives: bool,
}

impl TtfOptions {
    pub fn new(max_index: usize) -> Self {
        TtfOptions {
            max_index,
            budget: DEFAULT_NODE_BUDGET,
            all_witnesses: false,
            conjugacy_representatives: false,
        }
    }
}

pub fn certify_weak_ttf(
    pres: &GroupPresentation,
    max_index: usize,
    budget: usize,
) -> Result<TtfVerdict, TtfError> {
    certify_weak_ttf_with(
        pres,
        TtfOptions {
            budget,
            ..TtfOptions::new(max_index)
        },
    )
}

/// Sweeps subgroups by ascending index. Within one index the order is the
/// canonical order of [`low_index_subgroups_with`].
pub fn certify_weak_ttf_with(
    pres: &GroupPresentation,
    opts: TtfOptions,
) -> Result<TtfVerdict, TtfError> {
    if opts.max_index == 0 {
        return Err(TtfError::InvalidIndexBound);
    }
    let mut stats = TtfStats::default();
    let mut witnesses = Vec::new();
    for index in 1..=opts.max_index {
        let lo = LowIndexOptions {
            max_index: index,
            conjugacy_representatives: opts.conjugacy_representatives,
            node_budget: opts.budget,
        };
        let tables = match low_index_subgroups_with(pres, lo) {
            Ok(t) => t,
            Err(FpError::BudgetExceeded { .. }) => {
                return Err(TtfError::BudgetExceeded { index, stats })
            }
            Err(e) => return Err(e.into()),
        };
        for table in tables.into_iter().filter(|t| t.index() == index) {
            stats.subgroups_examined += 1;
            let schreier = reidemeister_schreier_detailed(pres, &table)?;
            let invariants = abelianization(&schreier.presentation);
            if !invariants.is_torsion_free() {
                witnesses.push(TtfWitness {
                    table,
                    schreier,
                    invariants,
                });
                if !opts.all_witnesses {
                    break;
                }
            }
        }
        stats.max_index_reached = index;
        if !witnesses.is_empty() && !opts.all_witnesses {
            break;
        }
    }
    let status = if witnesses.is_empty() {
        TtfStatus::CertifiedUpTo(opts.max_index)
    } else {
        TtfStatus::Refuted
    };
    let witness = witnesses.first().cloned();
    let all_witnesses = if opts.all_witnesses {
        witnesses
    } else {
        Vec::new()
    };
    Ok(TtfVerdict {
        status,
        witness,
        all_witnesses,
        stats,
    })
}

/// Abelianization of the subgroup generated by `subgroup_gens`, which must
/// have finite index reachable within `budget` cosets.
pub fn check_designated_subgroup(
    pres: &GroupPresentation,
    subgroup_gens: &[Word],
    budget: usize,
) -> Result<FinAbInvariants, TtfError> {
    let table = coset_enumerate(pres, subgroup_gens, budget)?;
    let schreier = reidemeister_schreier_detailed(pres, &table)?;
    Ok(abelianization(&schreier.presentation))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::{builtin, parse_presentation, DEFAULT_BUDGET};
    use alloc::vec;
    use num_bigint::BigUint;

    fn torsion(v: &[u32]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn heisenberg_refuted_at_two() {
        let h = builtin("heisenberg", &[]).unwrap();
        let v = certify_weak_ttf(&h, 2, DEFAULT_NODE_BUDGET).unwrap();
        assert!(v.is_refuted());
        let w = v.witness.as_ref().unwrap();
        assert_eq!(w.table.index(), 2);
        assert_eq!(w.invariants.rank(), 2);
        assert_eq!(w.invariants.torsion(), &torsion(&[2])[..]);
        w.reverify(&h).unwrap();
        // Nothing of index 1 has torsion.
        assert_eq!(
            certify_weak_ttf(&h, 1, DEFAULT_NODE_BUDGET).unwrap().status,
            TtfStatus::CertifiedUpTo(1)
        );
    }

    #[test]
    fn klein_bottle_refuted_at_one() {
        let k = builtin("nonorientable", &[2]).unwrap();
        let v = certify_weak_ttf(&k, 1, DEFAULT_NODE_BUDGET).unwrap();
        assert!(v.is_refuted());
        assert_eq!(v.witness.unwrap().invariants.torsion(), &torsion(&[2])[..]);
    }

    #[test]
    fn free_group_certified() {
        let f = builtin("free", &[2]).unwrap();
        let v = certify_weak_ttf(&f, 3, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(v.status, TtfStatus::CertifiedUpTo(3));
        assert_eq!(v.stats.subgroups_examined, 17);
        assert_eq!(v.stats.max_index_reached, 3);
    }

    #[test]
    fn z_semidirect_z_refuted() {
        // ⟨a, t | t a t⁻¹ a⟩: already its abelianization Z + Z/2 has torsion.
        let p = parse_presentation("gens a t\nrel t a T a").unwrap();
        let v = certify_weak_ttf(&p, 2, DEFAULT_NODE_BUDGET).unwrap();
        assert!(v.is_refuted());
        assert_eq!(v.witness.as_ref().unwrap().table.index(), 1);
        let all = certify_weak_ttf_with(
            &p,
            TtfOptions {
                all_witnesses: true,
                ..TtfOptions::new(2)
            },
        )
        .unwrap();
        assert_eq!(all.witness, v.witness);
        assert!(all.all_witnesses.iter().any(|w| w.table.index() == 2));
        for w in &all.all_witnesses {
            w.reverify(&p).unwrap();
        }
    }

    #[test]
    fn z_semidirect_z_index_two_tables() {
        let p = parse_presentation("gens a t\nrel t a T a").unwrap();
        let abel = |action: Vec<Vec<u32>>| {
            let t = CosetTable::from_actions(action, None).unwrap();
            abelianization(&reidemeister_schreier_detailed(&p, &t).unwrap().presentation)
        };
        // ⟨a, t²⟩: a fixes both cosets, t swaps them; t² is central there, giving Z².
        assert_eq!(abel(vec![vec![0, 1], vec![1, 0]]), FinAbInvariants::free(2));
        // ⟨a², t⟩ is again Z ⋊ Z by inversion: Z + Z/2.
        let inv = abel(vec![vec![1, 0], vec![0, 1]]);
        assert_eq!((inv.rank(), inv.torsion()), (1, &torsion(&[2])[..]));
    }

    #[test]
    fn designated_subgroups() {
        let h = builtin("heisenberg", &[]).unwrap();
        let inv = check_designated_subgroup(
            &h,
            &[Word::new([1, 1]), Word::new([2]), Word::new([3])],
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!((inv.rank(), inv.torsion()), (2, &torsion(&[2])[..]));
        let f = builtin("free", &[2]).unwrap();
        let inv = check_designated_subgroup(
            &f,
            &[Word::new([1]), Word::new([2, 1, -2]), Word::new([2, 2])],
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(inv, FinAbInvariants::free(3));
        let z6 = parse_presentation("gens a\nrel a a a a a a").unwrap();
        let inv = check_designated_subgroup(&z6, &[Word::new([1, 1])], DEFAULT_BUDGET).unwrap();
        assert_eq!((inv.rank(), inv.torsion()), (0, &torsion(&[3])[..]));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let s = builtin("surface", &[2]).unwrap();
        let e = certify_weak_ttf(&s, 3, 10).unwrap_err();
        assert!(matches!(e, TtfError::BudgetExceeded { .. }));
    }

    #[test]
    fn tampered_witness_rejected() {
        let h = builtin("heisenberg", &[]).unwrap();
        let mut w = certify_weak_ttf(&h, 2, DEFAULT_NODE_BUDGET)
            .unwrap()
            .witness
            .unwrap();
        w.invariants = FinAbInvariants::free(2);
        assert!(w.reverify(&h).is_err());
    }
}
