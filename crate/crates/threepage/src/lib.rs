//! Command-line front end, bundled derivation corpus and batch sweeps over
//! the relation tables.

pub mod cli;
pub mod corpus;
pub mod json;
pub mod sweep;
