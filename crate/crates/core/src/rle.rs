//! Run-length encoded strings.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::parikh::{ParikhVector, PlainString, Symbol};

/// A maximal block of one repeated symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Run {
    pub symbol: Symbol,
    pub len: u64,
}

impl Run {
    pub fn new(symbol: u32, len: u64) -> Self {
        Self {
            symbol: Symbol(symbol),
            len,
        }
    }
}

/// An RLE string with prefix tables over run boundaries.
///
/// `prefix_len[i]` is the length of runs `0..i`, and the `i`-th row of the
/// prefix Parikh table is the Parikh vector of runs `0..i`. Both are built
/// eagerly, so the Parikh vector of any block of runs costs O(sigma).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RleString {
    runs: Vec<Run>,
    sigma: usize,
    prefix_len: Vec<u64>,
    prefix_parikh: Vec<u64>,
}

impl RleString {
    pub fn from_runs(runs: Vec<Run>, sigma: usize) -> Result<Self> {
        validate_runs(&runs, sigma)?;
        let m = runs.len();
        let mut prefix_len = Vec::with_capacity(m + 1);
        let mut prefix_parikh = vec![0u64; (m + 1) * sigma];
        prefix_len.push(0u64);
        let mut total = 0u64;
        for (i, run) in runs.iter().enumerate() {
            total = total.checked_add(run.len).ok_or(Error::LengthOverflow)?;
            prefix_len.push(total);
            let (prev, next) = prefix_parikh.split_at_mut((i + 1) * sigma);
            next[..sigma].copy_from_slice(&prev[i * sigma..]);
            next[run.symbol.index()] += run.len;
        }
        Ok(Self {
            runs,
            sigma,
            prefix_len,
            prefix_parikh,
        })
    }

    /// Convenience constructor from `(symbol, length)` pairs.
    pub fn from_pairs(pairs: &[(u32, u64)], sigma: usize) -> Result<Self> {
        Self::from_runs(pairs.iter().map(|&(s, l)| Run::new(s, l)).collect(), sigma)
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// Number of runs.
    pub fn m(&self) -> usize {
        self.runs.len()
    }

    /// Decoded length.
    pub fn n(&self) -> u64 {
        self.prefix_len[self.runs.len()]
    }

    #[inline]
    pub fn symbol(&self, i: usize) -> Symbol {
        self.runs[i].symbol
    }

    #[inline]
    pub fn run_len(&self, i: usize) -> u64 {
        self.runs[i].len
    }

    /// Length of runs `0..i`.
    #[inline]
    pub fn prefix_len(&self, i: usize) -> u64 {
        self.prefix_len[i]
    }

    /// Parikh vector of runs `0..i` as a slice of counts.
    pub fn prefix_parikh(&self, i: usize) -> &[u64] {
        &self.prefix_parikh[i * self.sigma..(i + 1) * self.sigma]
    }

    /// Length of the runs `start..end`; zero when the range is empty.
    #[inline]
    pub fn block_len(&self, start: usize, end: usize) -> u64 {
        if end <= start {
            0
        } else {
            self.prefix_len[end] - self.prefix_len[start]
        }
    }

    /// Parikh vector of the runs `start..end`; zero when the range is empty.
    pub fn block_parikh(&self, start: usize, end: usize) -> ParikhVector {
        if end <= start {
            return ParikhVector::zero(self.sigma);
        }
        let hi = self.prefix_parikh(end);
        let lo = self.prefix_parikh(start);
        ParikhVector::from_counts(hi.iter().zip(lo).map(|(a, b)| a - b).collect())
    }

    pub fn parikh(&self) -> ParikhVector {
        ParikhVector::from_counts(self.prefix_parikh(self.m()).to_vec())
    }

    pub fn decode(&self) -> PlainString {
        let mut symbols = Vec::with_capacity(self.n() as usize);
        for run in &self.runs {
            symbols.extend(std::iter::repeat(run.symbol).take(run.len as usize));
        }
        PlainString::new(symbols, self.sigma).expect("validated runs")
    }

    /// Same runs over a larger alphabet.
    pub fn widened(&self, sigma: usize) -> Self {
        if sigma <= self.sigma {
            return self.clone();
        }
        Self::from_runs(self.runs.clone(), sigma).expect("widening keeps runs valid")
    }
}

fn validate_runs(runs: &[Run], sigma: usize) -> Result<()> {
    for (index, run) in runs.iter().enumerate() {
        if run.symbol.index() >= sigma {
            return Err(Error::SymbolOutOfRange {
                symbol: run.symbol.0,
                sigma,
            });
        }
        if run.len == 0 {
            return Err(Error::EmptyRun { index });
        }
        if index > 0 && runs[index - 1].symbol == run.symbol {
            return Err(Error::AdjacentEqualRuns {
                index: index - 1,
                symbol: run.symbol.0,
            });
        }
    }
    Ok(())
}

pub fn rle_encode(u: &PlainString) -> RleString {
    let mut runs: Vec<Run> = Vec::new();
    for &s in u.symbols() {
        match runs.last_mut() {
            Some(last) if last.symbol == s => last.len += 1,
            _ => runs.push(Run { symbol: s, len: 1 }),
        }
    }
    RleString::from_runs(runs, u.sigma()).expect("encoder emits maximal runs")
}

/// Decodes raw runs, rejecting zero lengths and adjacent equal symbols.
pub fn rle_decode(runs: &[Run], sigma: usize) -> Result<PlainString> {
    validate_runs(runs, sigma)?;
    Ok(RleString::from_runs(runs.to_vec(), sigma)?.decode())
}

/// Dense renumbering of the symbols used by a pair of strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolMap {
    /// `originals[k]` is the original symbol renumbered to `k`.
    originals: Vec<u32>,
}

impl SymbolMap {
    pub fn originals(&self) -> &[u32] {
        &self.originals
    }

    pub fn len(&self) -> usize {
        self.originals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.originals.is_empty()
    }

    pub fn to_dense(&self, original: u32) -> Option<u32> {
        self.originals.binary_search(&original).ok().map(|k| k as u32)
    }

    pub fn to_original(&self, dense: u32) -> u32 {
        self.originals[dense as usize]
    }

    /// Maps a Parikh vector over the dense alphabet back to `sigma` original
    /// symbols.
    pub fn parikh_to_original(&self, p: &ParikhVector, sigma: usize) -> ParikhVector {
        let mut out = ParikhVector::zero(sigma);
        for (k, &c) in p.counts().iter().enumerate() {
            if c > 0 {
                out[self.originals[k] as usize] = c;
            }
        }
        out
    }

    pub fn restore(&self, v: &RleString, sigma: usize) -> Result<RleString> {
        let runs = v
            .runs()
            .iter()
            .map(|r| Run::new(self.to_original(r.symbol.0), r.len))
            .collect();
        RleString::from_runs(runs, sigma)
    }
}

/// Renumbers the symbols occurring in `s` or `t` to `0..k`, preserving
/// their order.
pub fn renumber_alphabet(s: &RleString, t: &RleString) -> (RleString, RleString, SymbolMap) {
    let used: BTreeSet<u32> = s
        .runs()
        .iter()
        .chain(t.runs())
        .map(|r| r.symbol.0)
        .collect();
    let map = SymbolMap {
        originals: used.into_iter().collect(),
    };
    let k = map.len();
    let apply = |v: &RleString| {
        let runs = v
            .runs()
            .iter()
            .map(|r| Run::new(map.to_dense(r.symbol.0).expect("collected above"), r.len))
            .collect();
        RleString::from_runs(runs, k).expect("renumbering preserves validity")
    };
    let (s2, t2) = (apply(s), apply(t));
    (s2, t2, map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parikh::parikh;
    use proptest::prelude::*;

    fn pairs(v: &RleString) -> Vec<(u32, u64)> {
        v.runs().iter().map(|r| (r.symbol.0, r.len)).collect()
    }

    #[test]
    fn encode_examples() {
        let u = PlainString::from_letters("aaabbc", 3).unwrap();
        assert_eq!(pairs(&rle_encode(&u)), vec![(0, 3), (1, 2), (2, 1)]);
        let empty = PlainString::from_letters("", 3).unwrap();
        let e = rle_encode(&empty);
        assert_eq!(e.m(), 0);
        assert_eq!(e.n(), 0);
        assert_eq!(e.prefix_len(0), 0);
    }

    #[test]
    fn decode_rejects_invalid_runs() {
        assert_eq!(
            rle_decode(&[Run::new(0, 2), Run::new(0, 1)], 2),
            Err(Error::AdjacentEqualRuns { index: 0, symbol: 0 })
        );
        assert_eq!(
            rle_decode(&[Run::new(0, 2), Run::new(1, 0)], 2),
            Err(Error::EmptyRun { index: 1 })
        );
        assert!(rle_decode(&[Run::new(3, 1)], 2).is_err());
    }

    #[test]
    fn length_overflow_is_rejected() {
        let r = RleString::from_pairs(&[(0, u64::MAX), (1, 1)], 2);
        assert_eq!(r, Err(Error::LengthOverflow));
    }

    #[test]
    fn renumber_examples() {
        let s = RleString::from_pairs(&[(10, 1), (3, 2)], 11).unwrap();
        let t = RleString::from_pairs(&[(3, 1), (7, 4)], 11).unwrap();
        let (s2, t2, map) = renumber_alphabet(&s, &t);
        assert_eq!(map.originals(), &[3, 7, 10]);
        assert_eq!(pairs(&s2), vec![(2, 1), (0, 2)]);
        assert_eq!(pairs(&t2), vec![(0, 1), (1, 4)]);
        assert_eq!(s2.sigma(), 3);
        assert_eq!(map.restore(&s2, 11).unwrap(), s);
        assert_eq!(map.restore(&t2, 11).unwrap(), t);

        let a = RleString::from_pairs(&[(0, 1), (1, 1)], 2).unwrap();
        let (a2, _, map) = renumber_alphabet(&a, &a);
        assert_eq!(map.originals(), &[0, 1]);
        assert_eq!(a2, a);

        let x = RleString::from_pairs(&[(0, 2)], 10).unwrap();
        let y = RleString::from_pairs(&[(9, 2)], 10).unwrap();
        let (_, y2, map) = renumber_alphabet(&x, &y);
        assert_eq!(map.originals(), &[0, 9]);
        assert_eq!(pairs(&y2), vec![(1, 2)]);
    }

    fn plain_strategy() -> impl Strategy<Value = PlainString> {
        (1u32..5).prop_flat_map(|sigma| {
            prop::collection::vec(0..sigma, 0..40)
                .prop_map(move |v| PlainString::from_ranks(&v, sigma as usize).unwrap())
        })
    }

    proptest! {
        #[test]
        fn encode_decode_round_trip(u in plain_strategy()) {
            let v = rle_encode(&u);
            prop_assert_eq!(v.decode(), u.clone());
            prop_assert_eq!(rle_encode(&v.decode()), v.clone());
            prop_assert_eq!(v.n(), u.len() as u64);
        }

        #[test]
        fn block_parikh_matches_decoded_block(u in plain_strategy(), a in 0usize..40, b in 0usize..40) {
            let v = rle_encode(&u);
            let m = v.m();
            let (i, j) = (a.min(m), b.min(m));
            let (i, j) = (i.min(j), i.max(j));
            let start = v.prefix_len(i) as usize;
            let end = v.prefix_len(j) as usize;
            prop_assert_eq!(v.block_parikh(i, j), parikh(&u.slice(start, end)));
            prop_assert_eq!(v.block_len(i, j), (end - start) as u64);
        }
    }
}
