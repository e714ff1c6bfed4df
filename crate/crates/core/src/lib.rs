//! Exact-arithmetic toolkit for the reduced integral Burau representation of
//! braid groups, its congruence subgroups, and mechanical verification of
//! the quotient isomorphisms between consecutive levels.
//!
//! The crate is organized around five pieces:
//! - [`word`]: braid words, the permutation homomorphism, pure-braid
//!   generators, seeded sampling;
//! - [`burau`]: the integral representation, mod-m reduction,
//!   congruence-subgroup membership;
//! - [`linking`]: the pure-braid abelianization via linking numbers and its
//!   mod-2 reduction;
//! - [`symplectic`]: invariant alternating forms of the generator images;
//! - [`closure`]: finite matrix-group enumeration over Z/mZ with structure
//!   invariants and a complement-search probe;
//! - [`verify`]: the reproducible verification commands behind the CLI.

pub mod burau;
pub mod closure;
pub mod config;
pub mod error;
pub mod linking;
pub mod symplectic;
pub mod verify;
pub mod word;

pub use burau::{
    burau_int, burau_mod, generator_matrix, is_congruence_member, reduce_mod, CongruenceLevel,
    IntegerMatrix, ModularMatrix,
};
pub use closure::{close, complement_search, structure_invariants, FiniteMatrixGroup};
pub use error::{BraidError, Result};
pub use linking::{linking_vector, phi_mod2, ExponentVector, Mod2Vector};
pub use symplectic::{invariant_forms, is_alternating_nondegenerate, FormSpace};
pub use verify::{VerificationReport, VerifyOptions};
pub use word::{random_word, BraidWord, Permutation};
