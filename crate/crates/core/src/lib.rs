//! Behavioural equivalences on finite labelled transition systems:
//! bisimilarity and simulation, their parameterized variants relative to an
//! environment process, join-interaction products, modal characterizations
//! and discrimination experiments over bounded process universes.
//!
//! Start with [`syntax::compile_source`] to turn a term into a [`Process`],
//! then use [`equivalence`], [`parameterized`] or [`modal`]. The cargo
//! examples show one capability each.

pub mod bitset;
pub mod cli;
pub mod discrimination;
pub mod equivalence;
pub mod error;
pub mod interaction;
pub mod lts;
pub mod modal;
pub mod parameterized;
pub mod registry;
pub mod syntax;

pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use lts::{ActionId, Alphabet, Lts, LtsBuilder, Process, StateId, StateRef};
