//! Words over the fifteen-letter alphabet of three-page singular knot
//! diagrams, their relations, and tools for manipulating them.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod balance;
pub mod checker;
pub mod geometry;
pub mod rewrite;
pub mod rules;
pub mod tangle;
pub mod word;

pub use word::{format_word, parse_word, Letter, LetterKind, PageIndex, ParseError, Word};
