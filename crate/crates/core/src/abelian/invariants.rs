use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;

use super::{smith_normal_form, AbelianError, IntMatrix};
use crate::fp::GroupPresentation;

/// Finitely generated abelian group `Z^rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k`, with
/// `2 ≤ d₁ | d₂ | … | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinAbInvariants {
    rank: usize,
    torsion: Vec<BigUint>,
}

impl FinAbInvariants {
    pub fn new(rank: usize, torsion: Vec<BigUint>) -> Result<Self, AbelianError> {
        for (i, d) in torsion.iter().enumerate() {
            if *d < BigUint::from(2u8) {
                return Err(AbelianError::InvalidTorsion(d.clone()));
            }
            if i > 0 && !d.is_multiple_of(&torsion[i - 1]) {
                return Err(AbelianError::BrokenDivisibility);
            }
        }
        Ok(FinAbInvariants { rank, torsion })
    }

    pub fn trivial() -> Self {
        FinAbInvariants {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FinAbInvariants {
            rank,
            torsion: Vec::new(),
        }
    }

    /// Invariants of `Z^rank ⊕ ⊕ Z/mᵢ` for arbitrary moduli. A modulus of 0
    /// contributes to the rank, a modulus of 1 is dropped.
    pub fn from_cyclic_orders(rank: usize, moduli: &[u64]) -> Self {
        let k = moduli.len();
        let mut m = IntMatrix::zeros(k, k);
        for (i, &x) in moduli.iter().enumerate() {
            m[(i, i)] = BigInt::from(x);
        }
        let mut inv = Self::from_relations(&m);
        inv.rank += rank;
        inv
    }

    /// Invariants of `Z^cols / rowspace(m)`.
    pub fn from_relations(m: &IntMatrix) -> Self {
        let snf = smith_normal_form(m);
        let diag = snf.diagonal();
        let rank = m.cols() - diag.len();
        let torsion = diag
            .into_iter()
            .filter(|d| !d.is_one())
            .map(|d| d.to_biguint().expect("positive diagonal"))
            .collect();
        FinAbInvariants { rank, torsion }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigUint {
        self.torsion.iter().product()
    }

    /// Torsion coefficients as `u64`, if they fit.
    pub fn torsion_u64(&self) -> Option<Vec<u64>> {
        self.torsion.iter().map(|d| u64::try_from(d).ok()).collect()
    }
}

/// `Z`, `Z^2 + Z/2`, `Z/4 + Z/12`, or `0` for the trivial group.
impl fmt::Display for FinAbInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            Ok(())
        };
        match self.rank {
            0 => {}
            1 => {
                sep(f)?;
                f.write_str("Z")?;
            }
            r => {
                sep(f)?;
                write!(f, "Z^{r}")?;
            }
        }
        for d in &self.torsion {
            sep(f)?;
            write!(f, "Z/{d}")?;
        }
        if self.is_trivial() {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Relator exponent-sum matrix: one row per relator, one column per generator.
pub fn exponent_matrix(pres: &GroupPresentation) -> IntMatrix {
    let n = pres.generator_count();
    let rows: Vec<Vec<BigInt>> = pres
        .relators()
        .iter()
        .map(|r| r.exponent_sums(n).into_iter().map(BigInt::from).collect())
        .collect();
    IntMatrix::from_rows_with_cols(&rows, n)
}

/// Abelianization `G/[G,G]`.
pub fn abelianization(pres: &GroupPresentation) -> FinAbInvariants {
    FinAbInvariants::from_relations(&exponent_matrix(pres))
}
