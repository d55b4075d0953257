//! Decides when a covering of the boundary circles of a compact surface
//! extends to a covering of the whole surface, and produces witnesses that
//! can be re-checked independently.
//!
//! The finite-degree side works with permutations of `{1..n}`: conjugacy
//! classes of boundary monodromies, exact character-theoretic counts of
//! extensions, and explicit representative searches. The infinite-degree
//! side works with lazily evaluated permutations of the lattice `Z^2`:
//! cycle-type specifications with infinite parts, commutator and power
//! decompositions, and window-bounded verification of the resulting
//! identities.
//!
//! Entry points:
//! - [`perm`]: finite permutations, cycle types, commutator machinery.
//! - [`chars`]: partitions, symmetric-group characters, extension counts.
//! - [`surface`]: surface specifications, representations, covers.
//! - [`strip`]: square-tiled covers of the one-holed torus.
//! - [`extend_finite`]: decision procedures for finite coverings.
//! - [`lazy`]: permutations of `Z^2` with deferred evaluation.
//! - [`extend_infinite`]: verdicts for infinite-degree coverings.
//! - [`regular`]: regular (deck-transitive) covers.
//! - [`problem`], [`witness`], [`run`]: the text formats and the CLI driver.

pub mod chars;
pub mod exec;
pub mod extend_finite;
pub mod extend_infinite;
pub mod lazy;
pub mod perm;
pub mod problem;
pub mod regular;
pub mod run;
pub mod strip;
pub mod surface;
pub mod witness;

pub use exec::ExecMode;
pub use perm::{CycleType, Perm};
