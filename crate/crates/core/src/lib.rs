//! Exact computation with finitely presented commutative *-algebras.

pub mod approx;
pub mod cli;
pub mod error;
pub mod parser;
pub mod scalar;
pub mod spectrum;
pub mod star_poly;
pub mod states;

pub use error::{Error, Result};
