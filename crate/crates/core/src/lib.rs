//! Exact symbolic computation for raviolo vacuum modules.
//!
//! The crate is organised bottom-up:
//!
//! - [`exact`]: rationals, polynomials, the rings `B_N`, Laurent series;
//! - [`forms`]: polynomial differential forms on simplices;
//! - [`local`]: the local algebra `C{{z}}`, its splitting, homotopies and cohomology;
//! - [`config`]: the configuration-space algebras `A_N` and their expansion maps;
//! - [`envelope`]: the loop algebra, the vacuum module and the state-field map;
//! - [`coinvariants`]: multi-site states, swapping, reduction and the verifier;
//! - [`thom_sullivan`]: the Thom-Sullivan functor and the integration map;
//! - [`syntax`]: the text grammar shared by the CLI, docs and tests.

pub mod exact;
pub mod forms;
pub mod config;
pub mod local;
pub mod envelope;
pub mod coinvariants;
pub mod syntax;
pub mod thom_sullivan;

mod error;
pub use error::{Error, Result};
