//! Computational toolkit for totally torsion free groups.
//!
//! The crate is `no_std` (it needs `alloc`). Profinite objects are modelled
//! by their finite stages: the profinite lattice `Ẑⁿ` is represented by the
//! integer lattice `Zⁿ` throughout, and every torsion, embedding and closure
//! question is decided by exact integer linear algebra.
//!
//! - [`fp`]: finitely presented groups, coset enumeration, low-index
//!   subgroups, Reidemeister–Schreier.
//! - [`abelian`]: Smith/Hermite normal forms, abelianization, finite abelian
//!   groups and their duals, formal profinite abelian data.
//! - [`ttf`]: bounded certification of weak total torsion freeness.
//! - [`virtab`]: virtually abelian extensions `Zⁿ ⋊ Q` with cocycles, torsion
//!   decisions, wreath and `Σ_N ⋉ Z^N` embeddings, subgroup closures.
//! - [`approx`]: approximation systems and fiber products.
//! - [`field`] and [`witt`]: finite fields and truncated Witt vectors.
//! - [`galois`]: finite stages of the cyclotomic Laurent tower.

#![no_std]

extern crate alloc;

pub mod abelian;
pub mod approx;
pub mod field;
pub mod fp;
pub mod galois;
pub mod ttf;
pub mod virtab;
pub mod witt;
