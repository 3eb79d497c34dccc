//! Symbols, plain strings and Parikh vectors.
//!
//! Symbols are 0-based ranks into an alphabet of size `sigma`. A Parikh
//! vector stores, for each symbol, how many times it occurs; its ℓ1 norm is
//! the length of the string it describes.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A rank in `[0, sigma)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[repr(transparent)]
pub struct Symbol(pub u32);

impl Symbol {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<u32> for Symbol {
    fn from(v: u32) -> Self {
        Symbol(v)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An uncompressed string over `{0, .., sigma-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlainString {
    symbols: Vec<Symbol>,
    sigma: usize,
}

impl PlainString {
    pub fn new(symbols: Vec<Symbol>, sigma: usize) -> Result<Self> {
        if let Some(&bad) = symbols.iter().find(|s| s.index() >= sigma) {
            return Err(Error::SymbolOutOfRange { symbol: bad.0, sigma });
        }
        Ok(Self { symbols, sigma })
    }

    /// Builds a string from raw ranks.
    pub fn from_ranks(ranks: &[u32], sigma: usize) -> Result<Self> {
        Self::new(ranks.iter().copied().map(Symbol).collect(), sigma)
    }

    /// Maps `'a'` to 0, `'b'` to 1 and so on. Test and example helper.
    pub fn from_letters(text: &str, sigma: usize) -> Result<Self> {
        let ranks: Vec<u32> = text.bytes().map(|b| u32::from(b.wrapping_sub(b'a'))).collect();
        Self::from_ranks(&ranks, sigma)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Same symbols over a larger alphabet.
    pub fn widened(&self, sigma: usize) -> Self {
        Self {
            symbols: self.symbols.clone(),
            sigma: sigma.max(self.sigma),
        }
    }

    pub fn slice(&self, start: usize, end: usize) -> Self {
        Self {
            symbols: self.symbols[start..end].to_vec(),
            sigma: self.sigma,
        }
    }
}

/// Per-symbol occurrence counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParikhVector {
    counts: Vec<u64>,
}

impl ParikhVector {
    pub fn zero(sigma: usize) -> Self {
        Self {
            counts: vec![0; sigma],
        }
    }

    pub fn from_counts(counts: Vec<u64>) -> Self {
        Self { counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn into_counts(self) -> Vec<u64> {
        self.counts
    }

    pub fn sigma(&self) -> usize {
        self.counts.len()
    }

    pub fn norm(&self) -> u64 {
        self.counts.iter().sum()
    }

    #[inline]
    pub fn increment(&mut self, s: Symbol) {
        self.counts[s.index()] += 1;
    }

    #[inline]
    pub fn decrement(&mut self, s: Symbol) {
        self.counts[s.index()] -= 1;
    }

    /// Pads with zero counts up to `sigma` entries.
    pub fn widened(&self, sigma: usize) -> Self {
        let mut counts = self.counts.clone();
        if counts.len() < sigma {
            counts.resize(sigma, 0);
        }
        Self { counts }
    }
}

impl Index<usize> for ParikhVector {
    type Output = u64;
    fn index(&self, i: usize) -> &u64 {
        &self.counts[i]
    }
}

impl IndexMut<usize> for ParikhVector {
    fn index_mut(&mut self, i: usize) -> &mut u64 {
        &mut self.counts[i]
    }
}

impl Add for &ParikhVector {
    type Output = ParikhVector;
    fn add(self, rhs: &ParikhVector) -> ParikhVector {
        assert_eq!(self.sigma(), rhs.sigma(), "alphabet sizes differ");
        ParikhVector {
            counts: self.counts.iter().zip(&rhs.counts).map(|(a, b)| a + b).collect(),
        }
    }
}

/// Componentwise difference; panics if `rhs` is not dominated by `self`.
impl Sub for &ParikhVector {
    type Output = ParikhVector;
    fn sub(self, rhs: &ParikhVector) -> ParikhVector {
        assert_eq!(self.sigma(), rhs.sigma(), "alphabet sizes differ");
        ParikhVector {
            counts: self.counts.iter().zip(&rhs.counts).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Display for ParikhVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.counts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub fn parikh(u: &PlainString) -> ParikhVector {
    parikh_of(u.symbols(), u.sigma())
}

pub fn parikh_of(symbols: &[Symbol], sigma: usize) -> ParikhVector {
    let mut p = ParikhVector::zero(sigma);
    for &s in symbols {
        p.increment(s);
    }
    p
}
