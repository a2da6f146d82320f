//! bikernel: a kernel for finitely presented bicategories.
//!
//! The kernel verifies the full coherence axiom set of a presentation,
//! decides local and global univalence in the finite set-model, and builds
//! the displayed-bicategory constructions (total, product, sigma, trivial,
//! chaotic, full sub) together with pseudofunctor towers, algebras, internal
//! monads, Kleisli triples, the Yoneda data, and CwF layers at desk scale.
//!
//! Everything is table-driven: cells are tokens, operations are finite maps,
//! and every law is decided by exhaustive instantiation under an explicit
//! enumeration budget. All values are immutable and all operations are pure
//! functions, so the library is safe to call concurrently.

pub mod algebra;
pub mod bicat;
pub mod budget;
pub mod cell;
pub mod config;
pub mod corpus;
pub mod error;
pub mod disp_psfun;
pub mod display;
pub mod fincat;
pub mod univalence;
pub mod yoneda;
pub mod psfun;
pub mod report;
pub mod serde_keys;

pub use budget::Budget;
pub use cell::CellId;
pub use error::{KernelError, Result};
