//! Thick and thin operadic categories, cleavages, the restriction/extension
//! equivalence between them, graphs with global labels, and operads and
//! algebras over them, all checked exhaustively on bounded enumerations.

pub mod cleavage;
pub mod equivalence;
pub mod error;
pub mod finset;
pub mod fixtures;
pub mod graphs;
pub mod opcat;
pub mod operads;
pub mod report;

pub use error::{Error, Result};
