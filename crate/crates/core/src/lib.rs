//! Verification and enumeration toolkit for finite categories equipped with
//! Grothendieck topologies.
//!
//! The crate is organised bottom-up:
//!
//! - [`fincat`]: finite categories (composition tables and finite-set
//!   carriers), universal-property search, functors and diagram paths.
//! - [`sieves`]: sieves as right ideals, closure, pullback, sieve universes.
//! - [`gtopology`]: topologies, the three axioms, named builders,
//!   exhaustive enumeration and the lattice operations.
//! - [`continuity`]: localized topologies, pullback topologies, continuity,
//!   initial topologies and cover-preserving functors.
//! - [`algebra`]: monoid, group and abelian group objects and their
//!   homomorphisms.
//! - [`gtopgroup`]: topological monoid/group objects, both for internal
//!   objects and for monoidal functors on posets.
//! - [`cli`]: text formats and the command dispatcher behind the `gsite` binary.

pub mod algebra;
pub mod cli;
pub mod config;
pub mod continuity;
mod downset;
pub mod error;
pub mod fincat;
pub mod gtopgroup;
pub mod gtopology;
pub mod sieves;

pub use config::Config;
pub use error::{Error, Result};
pub use fincat::{Arrow, ArrowId, FinCategory, ObjId};
pub use sieves::Sieve;
