//! `O(m^3)` time, `O(m)` extra space RLE-LCAF for any alphabet.
//!
//! Two rectangles can only meet if one of them contains a point whose norm
//! is the other's maximal norm. So for every rectangle `R1` of one string it
//! suffices to scan the rectangles of the other string whose norm interval
//! contains `max L(R1)`; there are at most `2m` of them and they are visited
//! by a sliding window over the runs, which keeps the inner Parikh vector of
//! the current rectangle and a count of mismatching fixed coordinates up to
//! date in O(1) per step. The whole procedure runs once in each direction.

use std::fmt;

use crate::parikh::ParikhVector;
use crate::rect::{l1_interval, locate_occurrence, rect_unchecked, Rect, Side};
use crate::result::LcafResult;
use crate::rle::{renumber_alphabet, RleString};

/// Parikh vector of a rectangle: the fixed value of every singleton
/// coordinate, `None` on the rectangle's dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StarVector {
    pub entries: Vec<Option<u64>>,
}

impl fmt::Display for StarVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            match e {
                Some(x) => write!(f, "{x}")?,
                None => write!(f, "*")?,
            }
        }
        write!(f, ")")
    }
}

pub fn rect_parikh(r: &Rect) -> StarVector {
    StarVector {
        entries: r
            .lo()
            .iter()
            .zip(r.hi())
            .map(|(&l, &h)| (l == h).then_some(l))
            .collect(),
    }
}

/// Fixed coordinates of both rectangles agree.
pub fn consistent(r1: &Rect, r2: &Rect) -> bool {
    let (a, b) = (rect_parikh(r1), rect_parikh(r2));
    a.entries.len() == b.entries.len()
        && a.entries.iter().zip(&b.entries).all(|pair| match pair {
            (Some(x), Some(y)) => x == y,
            _ => true,
        })
}

/// Maximal-norm common point of two rectangles: the componentwise minimum
/// of the upper bounds, provided every coordinate's intervals overlap.
pub fn intersection_max_norm(r1: &Rect, r2: &Rect) -> Option<(Vec<u64>, u64)> {
    if r1.dim() != r2.dim() {
        return None;
    }
    let mut point = Vec::with_capacity(r1.dim());
    for c in 0..r1.dim() {
        let lo = r1.lo()[c].max(r2.lo()[c]);
        let hi = r1.hi()[c].min(r2.hi()[c]);
        if lo > hi {
            return None;
        }
        point.push(hi);
    }
    let norm = point.iter().sum();
    Some((point, norm))
}

/// Best intersection of one rectangle with a max-compatible rectangle of the
/// other string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Match {
    pub norm: u64,
    pub point: Vec<u64>,
    /// `(i, j)` of the matching rectangle of the scanned string.
    pub pair: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestAgainst {
    pub best: Option<Match>,
    /// Rectangles inspected by the scan.
    pub visited: usize,
}

/// What the scan needs to know about `R1`.
struct Probe<'a> {
    /// `max L(R1)`.
    k: u64,
    /// Non-singleton coordinates of `R1` with their intervals (at most two).
    dims: [(usize, u64, u64); 2],
    ndims: usize,
    /// Values of `R1` on its singleton coordinates; other entries ignored.
    fixed: &'a [u64],
    /// Singleton coordinates of `R1` with a non-zero value.
    nonzero_fixed: usize,
}

impl Probe<'_> {
    #[inline]
    fn dim(&self, c: usize) -> Option<(u64, u64)> {
        self.dims[..self.ndims]
            .iter()
            .find(|d| d.0 == c)
            .map(|&(_, l, h)| (l, h))
    }

    #[inline]
    fn interval(&self, c: usize) -> (u64, u64) {
        self.dim(c).unwrap_or((self.fixed[c], self.fixed[c]))
    }
}

/// Sliding window over the runs of the scanned string. Between scans the
/// window is empty and `inner` is all zeros.
struct Scanner<'a> {
    t: &'a RleString,
    inner: Vec<u64>,
    wl: usize,
    wr: usize,
}

impl<'a> Scanner<'a> {
    fn new(t: &'a RleString, sigma: usize) -> Self {
        Self {
            t,
            inner: vec![0; sigma],
            wl: 0,
            wr: 0,
        }
    }

    /// Adds `delta` copies of symbol `c` to the window, keeping `q` in sync.
    #[inline]
    fn bump(&mut self, probe: &Probe<'_>, q: &mut usize, c: usize, add: bool, len: u64) {
        let tracked = probe.dim(c).is_none();
        let before = tracked && self.inner[c] != probe.fixed[c];
        if add {
            self.inner[c] += len;
        } else {
            self.inner[c] -= len;
        }
        let after = tracked && self.inner[c] != probe.fixed[c];
        match (before, after) {
            (false, true) => *q += 1,
            (true, false) => *q -= 1,
            _ => {}
        }
    }

    /// Moves the window to the inner runs `i+1..j` of `rect(i, j)`.
    fn seek(&mut self, probe: &Probe<'_>, q: &mut usize, i: usize, j: usize) {
        let target_l = i + 1;
        let target_r = j.max(target_l);
        while self.wr < target_r {
            let r = self.t.runs()[self.wr];
            self.bump(probe, q, r.symbol.index(), true, r.len);
            self.wr += 1;
        }
        while self.wl < target_l {
            if self.wl < self.wr {
                let r = self.t.runs()[self.wl];
                self.bump(probe, q, r.symbol.index(), false, r.len);
            }
            self.wl += 1;
        }
        self.wr = self.wr.max(self.wl);
    }

    fn clear(&mut self) {
        for r in &self.t.runs()[self.wl..self.wr] {
            self.inner[r.symbol.index()] -= r.len;
        }
        self.wl = 0;
        self.wr = 0;
    }

    /// Smallest `j >= max(i, from)` with `|T_i..T_j| >= k`, or `m`.
    fn cover(&self, i: usize, from: usize, k: u64) -> usize {
        let m = self.t.m();
        let mut j = from.max(i);
        while j < m && self.t.block_len(i, j + 1) < k {
            j += 1;
        }
        j
    }

    /// Best `(norm, i, j)` over the rectangles of the scanned string whose
    /// norm interval contains `probe.k`, visiting them in row order.
    fn scan(&mut self, probe: &Probe<'_>) -> (Option<(u64, usize, usize)>, usize) {
        let t = self.t;
        let m = t.m();
        if m == 0 || probe.k > t.n() {
            return (None, 0);
        }
        let k = probe.k;
        // Empty window: every non-zero singleton of R1 mismatches.
        let mut q = probe.nonzero_fixed;
        self.wl = 1;
        self.wr = 1;
        let mut best: Option<(u64, usize, usize)> = None;
        let mut visited = 0;
        let mut lo = self.cover(0, 0, k);
        for i in 0..m {
            if lo >= m {
                break;
            }
            let hi = self.cover(i + 1, lo, k);
            for j in lo..=hi.min(m - 1) {
                self.seek(probe, &mut q, i, j);
                visited += 1;
                if let Some(norm) = self.evaluate(probe, q, i, j) {
                    if best.is_none_or(|(b, _, _)| norm > b) {
                        best = Some((norm, i, j));
                    }
                }
            }
            lo = hi;
        }
        self.clear();
        (best, visited)
    }

    /// Norm of the best common point of `R1` and `rect(i, j)`, with the
    /// window already on `i+1..j`.
    #[inline]
    fn evaluate(&self, probe: &Probe<'_>, q: usize, i: usize, j: usize) -> Option<u64> {
        let t = self.t;
        let a = t.symbol(i).index();
        let b = t.symbol(j).index();
        // q counts mismatches outside dims(R1); drop those on dims(R2).
        let mut q = q;
        for c in distinct2(a, b) {
            if probe.dim(c).is_none() && self.inner[c] != probe.fixed[c] {
                q -= 1;
            }
        }
        if q != 0 {
            return None;
        }
        let extra = |c: usize| -> u64 {
            let mut e = 0;
            if c == a {
                e += t.run_len(i);
            }
            if c == b && j != i {
                e += t.run_len(j);
            }
            e
        };
        let mut coords = [usize::MAX; 4];
        let mut n = 0;
        for c in distinct2(a, b).chain(probe.dims[..probe.ndims].iter().map(|d| d.0)) {
            if !coords[..n].contains(&c) {
                coords[n] = c;
                n += 1;
            }
        }
        let mut rest = t.block_len(i + 1, j);
        let mut norm = 0;
        for &c in &coords[..n] {
            rest -= self.inner[c];
            let (l1, h1) = probe.interval(c);
            let (l2, h2) = (self.inner[c], self.inner[c] + extra(c));
            if l1.max(l2) > h1.min(h2) {
                return None;
            }
            norm += h1.min(h2);
        }
        Some(norm + rest)
    }
}

#[inline]
fn distinct2(a: usize, b: usize) -> impl Iterator<Item = usize> {
    std::iter::once(a).chain((b != a).then_some(b))
}

/// Best intersection of `r1` with the rectangles of `t` that contain a point
/// of norm `max L(r1)`.
pub fn best_against(r1: &Rect, t: &RleString) -> BestAgainst {
    let sigma = t.sigma().max(r1.dim());
    let t = t.widened(sigma);
    let mut fixed = vec![0u64; sigma];
    fixed[..r1.dim()].copy_from_slice(r1.lo());
    let mut dims = [(0, 0, 0); 2];
    let mut ndims = 0;
    for c in r1.dims() {
        dims[ndims] = (c, r1.lo()[c], r1.hi()[c]);
        ndims += 1;
    }
    let nonzero_fixed = (0..r1.dim())
        .filter(|&c| r1.is_singleton(c) && r1.lo()[c] != 0)
        .count();
    let probe = Probe {
        k: l1_interval(r1).hi,
        dims,
        ndims,
        fixed: &fixed,
        nonzero_fixed,
    };
    let mut scanner = Scanner::new(&t, sigma);
    let (best, visited) = scanner.scan(&probe);
    let best = best.map(|(norm, i, j)| {
        let r2 = rect_unchecked(&t, Side::Second, i, j);
        let mut r1w = r1.clone();
        if r1.dim() < sigma {
            let mut lo = r1.lo().to_vec();
            let mut hi = r1.hi().to_vec();
            lo.resize(sigma, 0);
            hi.resize(sigma, 0);
            r1w = Rect::new(lo, hi, r1.provenance()).expect("padding keeps validity");
        }
        let (point, n2) = intersection_max_norm(&r1w, &r2).expect("scan found an intersection");
        debug_assert_eq!(norm, n2);
        Match {
            norm,
            point,
            pair: (i, j),
        }
    });
    BestAgainst { best, visited }
}

/// Best pair found by one directional pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct PassBest {
    norm: u64,
    r1: (usize, usize),
    r2: (usize, usize),
}

/// Every rectangle of `a` against the max-compatible rectangles of `b`.
fn directional_pass(a: &RleString, b: &RleString) -> Option<PassBest> {
    let sigma = a.sigma();
    let ma = a.m();
    let mut scanner = Scanner::new(b, sigma);
    let mut inner = vec![0u64; sigma];
    let mut nonzero = 0usize;
    let mut best: Option<PassBest> = None;
    for i in 0..ma {
        let sa = a.symbol(i).index();
        for j in i..ma {
            if j >= i + 2 {
                let r = a.runs()[j - 1];
                let c = r.symbol.index();
                if inner[c] == 0 {
                    nonzero += 1;
                }
                inner[c] += r.len;
            }
            let sb = a.symbol(j).index();
            let mut dims = [(0, 0, 0); 2];
            let ndims;
            let mut hi_a = inner[sa] + a.run_len(i);
            if sb == sa {
                if j != i {
                    hi_a += a.run_len(j);
                }
                dims[0] = (sa, inner[sa], hi_a);
                ndims = 1;
            } else {
                dims[0] = (sa, inner[sa], hi_a);
                dims[1] = (sb, inner[sb], inner[sb] + a.run_len(j));
                ndims = 2;
            }
            let on_dims = distinct2(sa, sb).filter(|&c| inner[c] != 0).count();
            let probe = Probe {
                k: a.block_len(i, j + 1),
                dims,
                ndims,
                fixed: &inner,
                nonzero_fixed: nonzero - on_dims,
            };
            let (found, _) = scanner.scan(&probe);
            if let Some((norm, i2, j2)) = found {
                if best.is_none_or(|b| norm > b.norm) {
                    best = Some(PassBest {
                        norm,
                        r1: (i, j),
                        r2: (i2, j2),
                    });
                }
            }
        }
        // Rows add runs i+1..m-1 to the inner vector.
        if i + 1 < ma {
            for r in &a.runs()[i + 1..ma - 1] {
                inner[r.symbol.index()] -= r.len;
            }
        }
        nonzero = 0;
    }
    best
}

/// RLE-LCAF in `O(m^3)` time.
pub fn lcaf_rle_cubic(s: &RleString, t: &RleString) -> LcafResult {
    let sigma = s.sigma().max(t.sigma());
    let (s2, t2, map) = renumber_alphabet(s, t);
    let forward = directional_pass(&s2, &t2);
    let backward = directional_pass(&t2, &s2).map(|b| PassBest {
        norm: b.norm,
        r1: b.r2,
        r2: b.r1,
    });
    let best = match (forward, backward) {
        (Some(f), Some(b)) => Some(if b.norm > f.norm { b } else { f }),
        (f, b) => f.or(b),
    };
    let Some(best) = best else {
        return LcafResult::empty(sigma);
    };
    let rs = rect_unchecked(&s2, Side::First, best.r1.0, best.r1.1);
    let rt = rect_unchecked(&t2, Side::Second, best.r2.0, best.r2.1);
    let (point, norm) = intersection_max_norm(&rs, &rt).expect("best pair intersects");
    debug_assert_eq!(norm, best.norm);
    finish_rle(&s2, &t2, &map, sigma, ParikhVector::from_counts(point))
}

/// Builds the result for a common vector over the renumbered alphabet.
pub(crate) fn finish_rle(
    s2: &RleString,
    t2: &RleString,
    map: &crate::rle::SymbolMap,
    sigma: usize,
    witness: ParikhVector,
) -> LcafResult {
    let occ_s = locate_occurrence(s2, &witness);
    let occ_t = locate_occurrence(t2, &witness);
    LcafResult {
        length: witness.norm(),
        witness: map.parikh_to_original(&witness, sigma),
        occurrences: occ_s.zip(occ_t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{lcaf_oracle, max_intersection_oracle};
    use crate::parikh::{parikh, PlainString};
    use crate::rect::{rect, NormInterval};
    use crate::rle::rle_encode;
    use proptest::prelude::*;

    fn r(iv: &[(u64, u64)]) -> Rect {
        Rect::from_intervals(iv, Side::First, 0).unwrap()
    }

    fn example_pair() -> (Rect, Rect) {
        (
            r(&[(5, 5), (1, 3), (4, 4), (1, 6), (3, 3)]),
            r(&[(4, 5), (2, 2), (4, 4), (2, 5), (3, 3)]),
        )
    }

    #[test]
    fn star_vectors_of_worked_example() {
        let (r1, r2) = example_pair();
        assert_eq!(rect_parikh(&r1).to_string(), "(5,*,4,*,3)");
        assert_eq!(rect_parikh(&r2).to_string(), "(*,2,4,*,3)");
        assert!(consistent(&r1, &r2));
        assert!(consistent(&r1, &r1));
        let pt = r(&[(1, 1), (2, 2)]);
        assert_eq!(rect_parikh(&pt).entries, vec![Some(1), Some(2)]);
    }

    #[test]
    fn inconsistent_on_fixed_coordinate() {
        let (r1, _) = example_pair();
        let r2 = r(&[(4, 5), (2, 2), (4, 4), (2, 5), (2, 2)]);
        assert!(!consistent(&r1, &r2));
        assert_eq!(intersection_max_norm(&r1, &r2), None);
    }

    #[test]
    fn intersection_of_worked_example() {
        let (r1, r2) = example_pair();
        let got = intersection_max_norm(&r1, &r2);
        assert_eq!(got, Some((vec![5, 2, 4, 5, 3], 19)));
        assert_eq!(got, max_intersection_oracle(&[r1.clone()], &[r2]).unwrap());
        let own = intersection_max_norm(&r1, &r1).unwrap();
        assert_eq!(own, (r1.hi().to_vec(), l1_interval(&r1).hi));
    }

    #[test]
    fn best_against_full_string_rect() {
        // S = a^5 b^3, T = b^2 a^4
        let s = RleString::from_pairs(&[(0, 5), (1, 3)], 2).unwrap();
        let t = RleString::from_pairs(&[(1, 2), (0, 4)], 2).unwrap();
        // max L = 8 exceeds |T|, so nothing of T is max-compatible
        let r1 = rect_unchecked(&s, Side::First, 0, 1);
        let got = best_against(&r1, &t);
        assert_eq!((got.best, got.visited), (None, 0));
        // the other direction finds the answer
        let r1 = rect_unchecked(&t, Side::Second, 0, 1);
        let got = best_against(&r1, &s);
        let best = got.best.unwrap();
        assert_eq!((best.norm, best.point.clone()), (6, vec![4, 2]));
        assert!(got.visited <= 2 * s.m());
        assert_eq!(lcaf_rle_cubic(&s, &t).witness.counts(), &[4, 2]);
    }

    #[test]
    fn best_against_disjoint_support() {
        let t = RleString::from_pairs(&[(1, 3)], 3).unwrap();
        let r1 = r(&[(2, 2), (0, 0), (4, 4)]);
        assert_eq!(best_against(&r1, &t).best, None);
    }

    #[test]
    fn cubic_examples() {
        let s = rle_encode(&PlainString::from_letters("aabbbc", 3).unwrap());
        let t = rle_encode(&PlainString::from_letters("cbba", 3).unwrap());
        let got = lcaf_rle_cubic(&s, &t);
        // (1,2,0) and (0,2,1) are both maximal
        assert_eq!(got.length, 3);
        assert!([[1, 2, 0], [0, 2, 1]].iter().any(|w| got.witness.counts() == w));
        let (os, ot) = got.occurrences.unwrap();
        assert_eq!(parikh(&s.decode().slice(os.start as usize, os.end as usize)), got.witness);
        assert_eq!(parikh(&t.decode().slice(ot.start as usize, ot.end as usize)), got.witness);

        let got = lcaf_rle_cubic(&s, &s);
        assert_eq!((got.length, got.witness.clone()), (s.n(), s.parikh()));

        let empty = RleString::from_pairs(&[], 3).unwrap();
        assert_eq!(lcaf_rle_cubic(&s, &empty).length, 0);
    }

    #[test]
    fn cubic_keeps_original_symbols() {
        let s = RleString::from_pairs(&[(7, 2), (3, 1)], 9).unwrap();
        let t = RleString::from_pairs(&[(3, 1), (7, 1), (5, 4)], 9).unwrap();
        let got = lcaf_rle_cubic(&s, &t);
        let want = lcaf_oracle(&s.decode(), &t.decode());
        assert_eq!(got.length, want.length);
        assert_eq!(got.witness.sigma(), 9);
        assert_eq!(got.witness.counts()[3] + got.witness.counts()[7], 2);
    }

    fn rle_strategy(max_runs: usize, sigma: u32) -> impl Strategy<Value = RleString> {
        prop::collection::vec((0..sigma, 1u64..7), 0..=max_runs).prop_map(move |pairs| {
            let mut runs: Vec<(u32, u64)> = Vec::new();
            for (c, l) in pairs {
                match runs.last_mut() {
                    Some(last) if last.0 == c => last.1 += l,
                    _ => runs.push((c, l)),
                }
            }
            RleString::from_pairs(&runs, sigma as usize).unwrap()
        })
    }

    fn all_rects(v: &RleString) -> Vec<Rect> {
        let mut out = Vec::new();
        for i in 0..v.m() {
            for j in i..v.m() {
                out.push(rect_unchecked(v, Side::First, i, j));
            }
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn matches_plain_oracle(s in rle_strategy(12, 5), t in rle_strategy(12, 5)) {
            let got = lcaf_rle_cubic(&s, &t);
            let want = lcaf_oracle(&s.decode(), &t.decode());
            prop_assert_eq!(got.length, want.length);
            prop_assert_eq!(got.witness.norm(), got.length);
            if let Some((os, ot)) = got.occurrences {
                let ps = parikh(&s.decode().slice(os.start as usize, os.end as usize));
                let pt = parikh(&t.decode().slice(ot.start as usize, ot.end as usize));
                prop_assert_eq!(ps.counts(), got.witness.counts());
                prop_assert_eq!(pt.counts(), got.witness.counts());
            } else {
                prop_assert!(false, "missing occurrences");
            }
        }

        #[test]
        fn compatible_iff_max_compatible_one_way(a in 0u64..20, la in 0u64..10, b in 0u64..20, lb in 0u64..10) {
            let (x, y) = (NormInterval { lo: a, hi: a + la }, NormInterval { lo: b, hi: b + lb });
            prop_assert_eq!(x.intersects(&y), y.contains(x.hi) || x.contains(y.hi));
        }

        #[test]
        fn best_against_matches_quadratic_scan(s in rle_strategy(7, 3), t in rle_strategy(7, 3)) {
            // Every rectangle of t whose norm interval holds max L(r1), by definition.
            for r1 in all_rects(&s) {
                let k = l1_interval(&r1).hi;
                let mut want: Option<u64> = None;
                for r2 in all_rects(&t) {
                    if l1_interval(&r2).contains(k) {
                        if let Some((_, n)) = intersection_max_norm(&r1, &r2) {
                            want = want.max(Some(n));
                        }
                    }
                }
                let got = best_against(&r1, &t);
                prop_assert_eq!(got.best.as_ref().map(|b| b.norm), want);
                prop_assert!(got.visited <= 2 * t.m());
                if let Some(b) = got.best {
                    let r2 = rect(&t, b.pair.0, b.pair.1).unwrap();
                    prop_assert!(r1.contains(&b.point) && r2.contains(&b.point));
                }
            }
        }

        #[test]
        fn intersecting_rects_are_consistent_and_max_compatible(
            s in rle_strategy(6, 3),
            t in rle_strategy(6, 3),
        ) {
            for r1 in all_rects(&s) {
                for r2 in all_rects(&t) {
                    let Some((point, norm)) = intersection_max_norm(&r1, &r2) else { continue };
                    prop_assert!(consistent(&r1, &r2));
                    let (l1, l2) = (l1_interval(&r1), l1_interval(&r2));
                    prop_assert!(l2.contains(l1.hi) || l1.contains(l2.hi));
                    let brute = max_intersection_oracle(&[r1.clone()], &[r2.clone()]).unwrap();
                    prop_assert_eq!(brute, Some((point, norm)));
                }
            }
        }
    }
}
