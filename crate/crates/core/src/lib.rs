//! Table algebras given by exact structure constants.
//!
//! The crate validates table-algebra data, enumerates closed subsets, builds
//! quotient algebras over double cosets, computes complex character tables,
//! lifts characters from quotients, forms character products and runs the
//! Burnside-Brauer constituent check. The `tba` binary exposes all of it on
//! the command line.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod characters;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod format;
pub mod io;
pub mod linalg;
pub mod products;
pub mod quotient;
pub mod subsets;

pub use algebra::{validate, AlgebraElement, Rational, RawAlgebra, TableAlgebra, ValidateOptions};
pub use characters::{character_table, Character, CharacterTable, TableOptions};
pub use error::{Error, Result};
pub use subsets::ClosedSubset;
