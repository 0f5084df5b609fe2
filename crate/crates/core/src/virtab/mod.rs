//! Virtually abelian groups as explicit extension data.
//!
//! A [`VirtAbGroup`] is an extension `Zⁿ → G → Q` with `Q` finite, stored as
//! an action `q ↦ M_q ∈ GL_n(Z)` and a normalized 2-cocycle. The profinite
//! lattice `Ẑⁿ` of the theory is modelled by `Zⁿ`; torsion, embeddings and
//! closures are all decided by integer linear algebra at this level.
//!
//! The wreath product `Q ≀ Zⁿ` uses the left action `(q·f)(x) = f(q⁻¹x)`
//! on functions `f: Q → Zⁿ`. The right-translation variant `f(xq⁻¹)` with
//! transversal `s(x)·g·s(xπ(g))⁻¹` is consistent only when `Q` has exponent
//! 2; [`kk_embed_with`] keeps it available so that the failure is reported
//! rather than hidden.

mod closure;
pub mod corpus;
mod finite_group;
mod group;
mod wreath;

use alloc::string::String;

pub use closure::{
    lattice_index, lattice_intersection_witness, subgroup_closure, IntersectionOutcome,
    SubgroupClosure,
};
pub use finite_group::{cycle_notation, FiniteGroup};
pub use group::{
    element_order, identity, is_torsion_free, make_virtab, mat_mul, mat_vec, permutation_matrix,
    torsion_solution, Mat, TorsionVerdict, VAElement, VirtAbGroup,
};
pub use wreath::{
    embed_sigma_lattice, kk_embed, kk_embed_with, EmbeddingReport, KkEmbedding, SigmaEmbedding,
    WreathConvention,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VirtAbError {
    #[error("invalid group table: {0}")]
    BadGroupTable(String),
    #[error("dimension mismatch: {0}")]
    Dimension(&'static str),
    #[error("action matrix of element {q} is not unimodular")]
    NotUnimodular { q: usize },
    #[error("action is not a homomorphism at ({q1}, {q2})")]
    NotHomomorphism { q1: usize, q2: usize },
    #[error("cocycle identity fails at ({q1}, {q2}, {q3})")]
    CocycleIdentity { q1: usize, q2: usize, q3: usize },
    #[error("section translations give a non-integral cocycle at ({q1}, {q2})")]
    NonIntegralSection { q1: usize, q2: usize },
    #[error("embedding verification failed: {0}")]
    EmbeddingVerification(String),
    #[error("subgroup is trivial")]
    TrivialSubgroup,
}
