//! Rectangles of Parikh vectors of an RLE string.
//!
//! For runs `V_i..V_j` the box `rect(V, i, j)` spans from the Parikh vector of
//! the inner runs `V_{i+1}..V_{j-1}` to that of `V_i..V_j`. Only the symbols of
//! runs `i` and `j` vary inside it, so it has at most two non-singleton
//! dimensions, and the integer points of all such boxes are exactly the
//! Parikh vectors of factors of the string.
//!
//! Run indices are 0-based throughout: `0 <= i <= j < m`. The "no such run"
//! sentinel for cover indices is `m`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use crate::error::{Error, Result};
use crate::parikh::ParikhVector;
use crate::result::Span;
use crate::rle::RleString;

/// Which input a rectangle was built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    First,
    Second,
}

/// Origin of a rectangle. Set differences between rectangle families compare
/// provenance, not geometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Provenance {
    pub side: Side,
    pub i: usize,
    pub j: usize,
}

/// Product of closed integer intervals, at most two of them non-singleton.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rect {
    lo: Vec<u64>,
    hi: Vec<u64>,
    provenance: Provenance,
}

/// Interval of ℓ1 norms attained inside a rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NormInterval {
    pub lo: u64,
    pub hi: u64,
}

impl NormInterval {
    pub fn contains(&self, l: u64) -> bool {
        self.lo <= l && l <= self.hi
    }

    pub fn intersects(&self, other: &NormInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }
}

impl Rect {
    pub fn new(lo: Vec<u64>, hi: Vec<u64>, provenance: Provenance) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                found: hi.len(),
            });
        }
        if let Some((&l, &h)) = lo.iter().zip(&hi).find(|(l, h)| l > h) {
            return Err(Error::InvertedInterval { lo: l, hi: h });
        }
        let dims = lo.iter().zip(&hi).filter(|(l, h)| l < h).count();
        if dims > 2 {
            return Err(Error::TooManyDimensions { dims });
        }
        Ok(Self { lo, hi, provenance })
    }

    /// Builds a rectangle from `(lo, hi)` pairs, tagging it with an
    /// arbitrary provenance. Used for free-standing geometric instances.
    pub fn from_intervals(intervals: &[(u64, u64)], side: Side, id: usize) -> Result<Self> {
        let (lo, hi) = intervals.iter().copied().unzip();
        Self::new(lo, hi, Provenance { side, i: id, j: id })
    }

    pub fn lo(&self) -> &[u64] {
        &self.lo
    }

    pub fn hi(&self) -> &[u64] {
        &self.hi
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn with_side(mut self, side: Side) -> Self {
        self.provenance.side = side;
        self
    }

    /// Coordinates whose interval is not a singleton.
    pub fn dims(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.lo.len()).filter(move |&c| self.lo[c] < self.hi[c])
    }

    pub fn is_singleton(&self, c: usize) -> bool {
        self.lo[c] == self.hi[c]
    }

    pub fn contains(&self, point: &[u64]) -> bool {
        point.len() == self.lo.len()
            && point
                .iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(&x, (&l, &h))| l <= x && x <= h)
    }

    /// Restriction to the given axes, in order.
    pub fn project(&self, axes: &[usize]) -> Rect {
        Rect {
            lo: axes.iter().map(|&a| self.lo[a]).collect(),
            hi: axes.iter().map(|&a| self.hi[a]).collect(),
            provenance: self.provenance,
        }
    }

    /// Number of integer points, saturating.
    pub fn volume(&self) -> u128 {
        self.lo
            .iter()
            .zip(&self.hi)
            .fold(1u128, |acc, (&l, &h)| acc.saturating_mul(u128::from(h - l) + 1))
    }

    /// Visits every integer point in lexicographic order.
    pub fn for_each_point(&self, mut f: impl FnMut(&[u64])) {
        let d = self.lo.len();
        let mut cur = self.lo.clone();
        loop {
            f(&cur);
            let mut c = d;
            loop {
                if c == 0 {
                    return;
                }
                c -= 1;
                if cur[c] < self.hi[c] {
                    cur[c] += 1;
                    break;
                }
                cur[c] = self.lo[c];
            }
        }
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in 0..self.lo.len() {
            if c > 0 {
                write!(f, "x")?;
            }
            if self.lo[c] == self.hi[c] {
                write!(f, "{{{}}}", self.lo[c])?;
            } else {
                write!(f, "[{},{}]", self.lo[c], self.hi[c])?;
            }
        }
        Ok(())
    }
}

pub fn l1_interval(r: &Rect) -> NormInterval {
    NormInterval {
        lo: r.lo.iter().sum(),
        hi: r.hi.iter().sum(),
    }
}

/// `rect(V, i, j)` for 0-based run indices `i <= j < m`.
pub fn rect(v: &RleString, i: usize, j: usize) -> Result<Rect> {
    let m = v.m();
    if i > j || j >= m {
        return Err(Error::RunIndexOutOfRange { i, j, m });
    }
    Ok(rect_unchecked(v, Side::First, i, j))
}

pub(crate) fn rect_unchecked(v: &RleString, side: Side, i: usize, j: usize) -> Rect {
    let lo = v.block_parikh(i + 1, j).into_counts();
    let hi = v.block_parikh(i, j + 1).into_counts();
    Rect {
        lo,
        hi,
        provenance: Provenance { side, i, j },
    }
}

/// Smallest `j >= i` with `|V_i| + .. + |V_j| >= l`, or `m` if there is none.
/// `min_cover_index(v, m, l) = m`.
pub fn min_cover_index(v: &RleString, i: usize, l: u64) -> usize {
    let m = v.m();
    if i >= m {
        return m;
    }
    let target = v.prefix_len(i) + l;
    if v.n() < target {
        return m;
    }
    // first j with prefix_len(j + 1) >= target
    let mut lo = i;
    let mut hi = m - 1;
    while lo < hi {
        let mid = (lo + hi) / 2;
        if v.prefix_len(mid + 1) >= target {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Cover indices for every `i` in `0..=m` at once, by a sliding window.
pub fn cover_indices(v: &RleString, l: u64) -> Vec<usize> {
    let m = v.m();
    let mut out = Vec::with_capacity(m + 1);
    let mut j = 0;
    for i in 0..m {
        j = j.max(i);
        while j < m && v.block_len(i, j + 1) < l {
            j += 1;
        }
        out.push(j);
    }
    out.push(m);
    out
}

/// Provenance pairs `(i, j)` of the rectangles in the norm-`l` family.
pub fn pairs_at_norm(v: &RleString, l: u64) -> Vec<(usize, usize)> {
    let m = v.m();
    let cover = cover_indices(v, l);
    let mut out = Vec::new();
    for i in 0..m {
        let end = cover[i + 1].min(m.saturating_sub(1));
        for j in cover[i]..=end {
            if j < m {
                out.push((i, j));
            }
        }
    }
    out
}

/// The rectangles `rect(V, i, j)` with `j(i, l) <= j <= j(i+1, l)`, `j < m`.
/// Every returned rectangle has `l` in its norm interval, and together they
/// contain every Parikh vector of norm `l` occurring in the string.
pub fn rects_at_norm(v: &RleString, l: u64) -> Vec<Rect> {
    pairs_at_norm(v, l)
        .into_iter()
        .map(|(i, j)| rect_unchecked(v, Side::First, i, j))
        .collect()
}

/// Change of the norm-`l` family relative to norm `l - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectDelta {
    pub l: u64,
    pub added: Vec<Rect>,
    pub removed: Vec<Rect>,
}

/// Same as [`RectDelta`] with rectangles kept as provenance pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDelta {
    pub l: u64,
    pub added: Vec<(usize, usize)>,
    pub removed: Vec<(usize, usize)>,
}

/// Walks the norm-`l` rectangle families for increasing `l`, reporting only
/// the levels where the family changes.
///
/// The current family is held as the cover index array: row `i` holds the
/// pairs `(i, j)` for `cover[i] <= j <= cover[i+1]`. A min-heap keyed by
/// `|V_i| + .. + |V_{cover[i]}|` tells when each row's lower bound moves.
pub struct RectDeltaStream<'a> {
    v: &'a RleString,
    side: Side,
    cover: Vec<usize>,
    heap: BinaryHeap<Reverse<(u64, usize)>>,
    l: u64,
}

impl<'a> RectDeltaStream<'a> {
    pub fn new(v: &'a RleString) -> Self {
        Self::with_side(v, Side::First)
    }

    pub fn with_side(v: &'a RleString, side: Side) -> Self {
        let m = v.m();
        let cover = (0..=m).collect();
        let heap = (0..m).map(|i| Reverse((v.run_len(i), i))).collect();
        Self {
            v,
            side,
            cover,
            heap,
            l: 0,
        }
    }

    /// Norm level of the current family.
    pub fn level(&self) -> u64 {
        self.l
    }

    /// Norm of the next change, if any.
    pub fn peek_level(&self) -> Option<u64> {
        self.heap
            .peek()
            .map(|Reverse((a, _))| a + 1)
            .filter(|&l| l <= self.v.n())
    }

    pub fn current_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let m = self.v.m();
        (0..m).flat_map(move |i| {
            let end = self.cover[i + 1].min(m - 1);
            (self.cover[i]..=end).map(move |j| (i, j))
        })
    }

    pub fn current(&self) -> Vec<Rect> {
        self.current_pairs()
            .map(|(i, j)| rect_unchecked(self.v, self.side, i, j))
            .collect()
    }

    pub fn next_pairs(&mut self) -> Option<PairDelta> {
        let l = self.peek_level()?;
        let a = l - 1;
        let m = self.v.m();
        let mut added = Vec::new();
        let mut removed = Vec::new();
        while let Some(&Reverse((key, i))) = self.heap.peek() {
            if key != a {
                break;
            }
            self.heap.pop();
            let j = self.cover[i];
            // Row i loses its lowest pair; row i-1 gains one at the top.
            removed.push((i, j));
            self.cover[i] = j + 1;
            if j + 1 < m {
                if i > 0 {
                    added.push((i - 1, j + 1));
                }
                self.heap.push(Reverse((self.v.block_len(i, j + 2), i)));
            }
        }
        self.l = l;
        Some(PairDelta { l, added, removed })
    }
}

impl Iterator for RectDeltaStream<'_> {
    type Item = RectDelta;

    fn next(&mut self) -> Option<RectDelta> {
        let d = self.next_pairs()?;
        let to_rects = |pairs: Vec<(usize, usize)>| {
            pairs
                .into_iter()
                .map(|(i, j)| rect_unchecked(self.v, self.side, i, j))
                .collect()
        };
        Some(RectDelta {
            l: d.l,
            added: to_rects(d.added),
            removed: to_rects(d.removed),
        })
    }
}

pub fn rect_delta_stream(v: &RleString) -> RectDeltaStream<'_> {
    RectDeltaStream::new(v)
}

/// Position of a factor of `v` with Parikh vector `point`, found among the
/// rectangles of norm `|point|`.
pub fn locate_occurrence(v: &RleString, point: &ParikhVector) -> Option<Span> {
    let l = point.norm();
    if l == 0 {
        return Some(Span::new(0, 0));
    }
    if point.sigma() != v.sigma() || l > v.n() {
        return None;
    }
    let p = point.counts();
    pairs_at_norm(v, l)
        .into_iter()
        .find(|&(i, j)| rect_unchecked(v, Side::First, i, j).contains(p))
        .map(|(i, j)| span_in_rect(v, i, j, p))
}

/// The factor made of a suffix of run `i`, runs `i+1..j`, and a prefix of
/// run `j`. With `a = sym(i)`, `b = sym(j)` and inner vector `W`, the suffix
/// takes `x = p[a] - W[a]` symbols and the prefix `y = p[b] - W[b]`; when
/// `a = b` the surplus is split greedily, suffix first.
fn span_in_rect(v: &RleString, i: usize, j: usize, p: &[u64]) -> Span {
    let a = v.symbol(i).index();
    if i == j {
        let start = v.prefix_len(i);
        return Span::new(start, start + p[a]);
    }
    let inner = v.block_parikh(i + 1, j);
    let b = v.symbol(j).index();
    let (x, y) = if a == b {
        let extra = p[a] - inner[a];
        let x = extra.min(v.run_len(i));
        (x, extra - x)
    } else {
        (p[a] - inner[a], p[b] - inner[b])
    };
    Span::new(v.prefix_len(i + 1) - x, v.prefix_len(j) + y)
}
