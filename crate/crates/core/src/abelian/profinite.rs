use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use super::{dual_group, AbelianError, FinAbGroup, FinAbInvariants};

/// Formal structure data of a finitely generated profinite abelian group
/// `∏_p Z_p^{r_p} × F` with `F` finite. No element arithmetic is modelled.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProfAbData {
    local_ranks: BTreeMap<u64, u32>,
    finite_part: FinAbInvariants,
}

impl ProfAbData {
    /// Every key must be prime with rank at least 1; `finite_part` must be finite.
    pub fn new(
        local_ranks: BTreeMap<u64, u32>,
        finite_part: FinAbInvariants,
    ) -> Result<Self, AbelianError> {
        for (&p, &r) in &local_ranks {
            if !is_prime(p) {
                return Err(AbelianError::NotPrime(p));
            }
            if r == 0 {
                return Err(AbelianError::ZeroLocalRank(p));
            }
        }
        if finite_part.rank() > 0 {
            return Err(AbelianError::InfiniteGroup);
        }
        Ok(ProfAbData {
            local_ranks,
            finite_part,
        })
    }

    pub fn torsion_free(local_ranks: BTreeMap<u64, u32>) -> Result<Self, AbelianError> {
        Self::new(local_ranks, FinAbInvariants::trivial())
    }

    pub fn local_ranks(&self) -> &BTreeMap<u64, u32> {
        &self.local_ranks
    }

    pub fn finite_part(&self) -> &FinAbInvariants {
        &self.finite_part
    }
}

/// Embedding `∏_p Z_p^{r_p} ⊆ Ẑⁿ`: the local factor at `p` occupies the
/// listed coordinates of `Z_pⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankEmbedding {
    pub n: usize,
    pub coordinates: BTreeMap<u64, Vec<usize>>,
}

/// Least `n` with `∏_p Z_p^{r_p} ⊆ Ẑⁿ`, namely `max_p r_p`.
pub fn embed_rank(data: &ProfAbData) -> Result<RankEmbedding, AbelianError> {
    if !data.finite_part.is_trivial() {
        return Err(AbelianError::NotTorsionFree(data.finite_part.clone()));
    }
    let n = data.local_ranks.values().copied().max().unwrap_or(0) as usize;
    let coordinates = data
        .local_ranks
        .iter()
        .map(|(&p, &r)| (p, (0..r as usize).collect()))
        .collect();
    Ok(RankEmbedding { n, coordinates })
}

/// Formal Pontryagin dual: `⊕_p (Q_p/Z_p)^{r_p} ⊕ F^`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualDescription {
    pub prufer_ranks: BTreeMap<u64, u32>,
    pub finite: FinAbGroup,
}

impl DualDescription {
    /// Prüfer summands are divisible; a finite summand is divisible only if
    /// multiplication by each of its moduli is onto.
    pub fn is_divisible(&self) -> bool {
        let order = BigUint::from(self.finite.order());
        self.finite.moduli().iter().all(|&m| {
            let image: BigUint = self
                .finite
                .moduli()
                .iter()
                .map(|&mi| BigUint::from(mi / m.gcd(&mi)))
                .product();
            image == order
        })
    }
}

pub fn dual_description(data: &ProfAbData) -> Result<DualDescription, AbelianError> {
    let finite = FinAbGroup::from_invariants(&data.finite_part)?;
    Ok(DualDescription {
        prufer_ranks: data.local_ranks.clone(),
        finite: dual_group(&finite).group,
    })
}

/// `(torsion free, dual divisible)`, each computed on its own side.
pub fn duality_criteria(data: &ProfAbData) -> Result<(bool, bool), AbelianError> {
    let torsion_free = data.finite_part.torsion_order().is_one();
    let divisible = dual_description(data)?.is_divisible();
    Ok((torsion_free, divisible))
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
