//! Longest common Abelian factor of two strings.
//!
//! Two strings are Abelian equivalent when one is a permutation of the
//! other, i.e. they have the same Parikh vector. This crate computes the
//! longest factor of `s` that is Abelian equivalent to some factor of `t`:
//!
//! - [`oracle`]: brute-force references.
//! - [`bucketed`]: word-parallel solver for plain strings over small
//!   alphabets.
//! - [`rect`]: the rectangle view of the Parikh vectors of an RLE string.
//! - [`cubic`]: `O(m^3)` solver for RLE strings over any alphabet.
//! - [`geom`]: sweep-line solvers for RLE strings over two or three symbols.
//! - [`cli`]: the `lcaf` command-line front end.

pub mod bucketed;
pub mod cli;
pub mod cubic;
pub mod error;
pub mod geom;
pub mod oracle;
pub mod parikh;
pub mod rect;
pub mod result;
pub mod rle;

pub use error::{Error, Result};
pub use parikh::{parikh, ParikhVector, PlainString, Symbol};
pub use result::{LcafResult, Span};
pub use rle::{renumber_alphabet, rle_decode, rle_encode, Run, RleString, SymbolMap};
