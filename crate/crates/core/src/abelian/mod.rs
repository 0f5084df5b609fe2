//! Exact integer linear algebra and abelian groups.
//!
//! Smith and Hermite normal forms over arbitrary-precision integers drive
//! every torsion computation in the crate. On top of them sit
//! abelianizations, finite abelian groups with their Pontryagin duals
//! (characters valued in `Q/Z`, denominators dividing the exponent), and
//! formal data for finitely generated profinite abelian groups.

mod finite;
mod invariants;
mod matrix;
mod profinite;
mod snf;

use num_bigint::BigUint;

pub use finite::{
    dual_group, evaluation_is_isomorphism, is_exact_at, is_short_exact, DualGroup, FinAbGroup,
    FinAbHom, Qz,
};
pub use invariants::{abelianization, exponent_matrix, FinAbInvariants};
pub use matrix::IntMatrix;
pub use profinite::{
    dual_description, duality_criteria, embed_rank, DualDescription, ProfAbData, RankEmbedding,
};
pub use snf::{
    hermite_normal_form, invariant_factors_by_minors, kernel_basis, smith_normal_form,
    solve_integer, Snf,
};

pub(crate) use profinite::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AbelianError {
    #[error("torsion coefficient {0} is below 2")]
    InvalidTorsion(BigUint),
    #[error("torsion coefficients do not form a divisibility chain")]
    BrokenDivisibility,
    #[error("group is infinite")]
    InfiniteGroup,
    #[error("group order does not fit in 64 bits")]
    TooLarge,
    #[error("vector is not an element of the group")]
    NotAnElement,
    #[error("image of generator {0} is incompatible with its order")]
    NotWellDefined(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("local rank at {0} must be positive")]
    ZeroLocalRank(u64),
    #[error("finite part {0} is nontrivial; the data is not torsion free")]
    NotTorsionFree(FinAbInvariants),
}
