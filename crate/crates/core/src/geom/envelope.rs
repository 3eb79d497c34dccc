//! Binary alphabets: the Parikh set of a string is orthogonally convex, so
//! it is fully described by two monotone step functions.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::cubic::finish_rle;
use crate::error::{Error, Result};
use crate::parikh::ParikhVector;
use crate::result::LcafResult;
use crate::rle::{renumber_alphabet, RleString};

/// Piecewise-constant function on `0..=domain_end`. Step `k` holds
/// `value` for every `p` up to and including `p_end`, starting right after
/// the previous step's `p_end`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepFunction {
    steps: Vec<(u64, u64)>,
}

impl StepFunction {
    /// Steps as `(p_end, value)`; `p_end` strictly increasing.
    pub fn new(steps: Vec<(u64, u64)>) -> Self {
        debug_assert!(steps.windows(2).all(|w| w[0].0 < w[1].0));
        Self { steps }
    }

    pub fn steps(&self) -> &[(u64, u64)] {
        &self.steps
    }

    pub fn domain_end(&self) -> u64 {
        self.steps.last().map_or(0, |s| s.0)
    }

    pub fn eval(&self, p: u64) -> Option<u64> {
        let k = self.steps.partition_point(|s| s.0 < p);
        self.steps.get(k).map(|s| s.1)
    }

    /// Appends `value` on `..=p_end`, merging with an equal last step.
    fn push(&mut self, p_end: u64, value: u64) {
        match self.steps.last_mut() {
            Some(last) if last.1 == value => last.0 = p_end,
            _ => self.steps.push((p_end, value)),
        }
    }
}

/// Visits the corners of `rect(i, j)` for all `i <= j` in increasing
/// `key(i, j)`, assuming the key is non-decreasing in `j` for every `i`.
/// The heap holds one pending pair per row.
fn merge_rows(v: &RleString, key: impl Fn(usize, usize) -> u64, mut visit: impl FnMut(usize, usize)) {
    let m = v.m();
    let mut heap: BinaryHeap<Reverse<(u64, usize, usize)>> =
        (0..m).map(|i| Reverse((key(i, i), i, i))).collect();
    while let Some(Reverse((_, i, j))) = heap.pop() {
        visit(i, j);
        if j + 1 < m {
            heap.push(Reverse((key(i, j + 1), i, j + 1)));
        }
    }
}

/// Count of symbol `c` in runs `start..end`.
#[inline]
fn block_count(v: &RleString, start: usize, end: usize, c: usize) -> u64 {
    if end <= start {
        0
    } else {
        v.prefix_parikh(end)[c] - v.prefix_parikh(start)[c]
    }
}

/// `up(p)` and `down(p)`: the largest and smallest number of `b`s in a
/// factor with `p` `a`s, for `p` in `0..=|v|_a`.
pub fn envelopes_binary(v: &RleString) -> Result<(StepFunction, StepFunction)> {
    if v.sigma() > 2 {
        return Err(Error::UnsupportedAlphabet {
            sigma: v.sigma(),
            reason: "envelopes need a binary alphabet",
        });
    }
    let v = v.widened(2);
    let pmax = v.parikh()[0];
    let mut up = StepFunction::new(Vec::new());
    let mut down = StepFunction::new(Vec::new());
    if v.m() == 0 {
        up.push(0, 0);
        down.push(0, 0);
        return Ok((up, down));
    }
    let inner = |i: usize, j: usize, c: usize| block_count(&v, i + 1, j, c);
    let outer = |i: usize, j: usize, c: usize| block_count(&v, i, j + 1, c);

    // Top-left corners (inner a, outer b) by increasing inner a; up is the
    // running maximum of the outer b.
    let mut cur: Option<(u64, u64)> = None;
    merge_rows(&v, |i, j| inner(i, j, 0), |i, j| {
        let (x, y) = (inner(i, j, 0), outer(i, j, 1));
        match cur {
            Some((cx, cy)) if x > cx => {
                up.push(x - 1, cy);
                cur = Some((x, cy.max(y)));
            }
            Some((cx, cy)) => cur = Some((cx, cy.max(y))),
            None => cur = Some((x, y)),
        }
    });
    let (_, cy) = cur.expect("m > 0");
    up.push(pmax, cy);

    // Bottom-right corners (outer a, inner b) by increasing inner b; each
    // fixes down on the not yet assigned p up to its outer a.
    let mut reach: Option<u64> = None;
    merge_rows(&v, |i, j| inner(i, j, 1), |i, j| {
        let (x, y) = (outer(i, j, 0), inner(i, j, 1));
        if reach.is_none_or(|r| x > r) {
            down.push(x, y);
            reach = Some(x);
        }
    });
    debug_assert_eq!(down.domain_end(), pmax);
    Ok((up, down))
}

/// Renumbers and widens the pair to exactly two symbols.
fn binary_pair(s: &RleString, t: &RleString) -> Result<(RleString, RleString, crate::rle::SymbolMap)> {
    let (s2, t2, map) = renumber_alphabet(s, t);
    if map.len() > 2 {
        return Err(Error::UnsupportedAlphabet {
            sigma: map.len(),
            reason: "the envelope solver needs at most two distinct symbols",
        });
    }
    Ok((s2.widened(2), t2.widened(2), map))
}

/// RLE-LCAF over a binary alphabet from the envelopes of both strings.
///
/// `(p, q)` is common iff `down_s(p), down_t(p) <= q <= up_s(p), up_t(p)`.
/// Between breakpoints all four functions are constant, so only step right
/// ends need checking, with `q = min(up_s, up_t)`.
pub fn lcaf_rle_binary(s: &RleString, t: &RleString) -> Result<LcafResult> {
    let sigma = s.sigma().max(t.sigma());
    let (s2, t2, map) = binary_pair(s, t)?;
    let (up_s, down_s) = envelopes_binary(&s2)?;
    let (up_t, down_t) = envelopes_binary(&t2)?;
    let pmax = up_s.domain_end().min(up_t.domain_end());
    let mut cands: Vec<u64> = [&up_s, &down_s, &up_t, &down_t]
        .iter()
        .flat_map(|f| f.steps().iter().map(|s| s.0))
        .filter(|&p| p <= pmax)
        .chain([pmax])
        .collect();
    cands.sort_unstable();
    cands.dedup();
    let mut best: Option<(u64, u64)> = None;
    for p in cands {
        let at = |f: &StepFunction| f.eval(p).expect("p within both domains");
        let (us, ut, ds, dt) = (at(&up_s), at(&up_t), at(&down_s), at(&down_t));
        if us >= dt && ut >= ds {
            let q = us.min(ut);
            if best.is_none_or(|(bp, bq)| p + q > bp + bq) {
                best = Some((p, q));
            }
        }
    }
    let (p, q) = best.expect("p = 0, q = 0 is always common");
    Ok(finish_rle(&s2, &t2, &map, sigma, ParikhVector::from_counts(vec![p, q])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{lcaf_oracle, rect_points_oracle};
    use crate::parikh::PlainString;
    use crate::rle::rle_encode;
    use proptest::prelude::*;

    fn enc(text: &str) -> RleString {
        rle_encode(&PlainString::from_letters(text, 2).unwrap())
    }

    fn expand(f: &StepFunction) -> Vec<u64> {
        (0..=f.domain_end()).map(|p| f.eval(p).unwrap()).collect()
    }

    #[test]
    fn envelope_examples() {
        let (up, down) = envelopes_binary(&enc("abba")).unwrap();
        assert_eq!(expand(&up), vec![2, 2, 2]);
        assert_eq!(expand(&down), vec![0, 0, 2]);
        let (up, down) = envelopes_binary(&enc("aab")).unwrap();
        assert_eq!(expand(&up), vec![1, 1, 1]);
        assert_eq!(expand(&down), vec![0, 0, 0]);
        let (up, down) = envelopes_binary(&enc("a")).unwrap();
        assert_eq!(expand(&up), vec![0, 0]);
        assert_eq!(expand(&down), vec![0, 0]);
        let (up, down) = envelopes_binary(&enc("")).unwrap();
        assert_eq!((expand(&up), expand(&down)), (vec![0], vec![0]));
    }

    #[test]
    fn rejects_three_symbols() {
        let v = RleString::from_pairs(&[(2, 1)], 3).unwrap();
        assert!(envelopes_binary(&v).is_err());
        let w = RleString::from_pairs(&[(0, 1), (1, 1), (2, 1)], 3).unwrap();
        assert!(lcaf_rle_binary(&w, &w).is_err());
    }

    #[test]
    fn binary_examples() {
        let s = RleString::from_pairs(&[(0, 5), (1, 3)], 2).unwrap();
        let t = RleString::from_pairs(&[(1, 2), (0, 4)], 2).unwrap();
        let r = lcaf_rle_binary(&s, &t).unwrap();
        assert_eq!((r.length, r.witness.counts()), (6, &[4u64, 2][..]));
        assert_eq!(lcaf_rle_binary(&s, &s).unwrap().length, 8);
        let a3 = RleString::from_pairs(&[(0, 3)], 2).unwrap();
        let b3 = RleString::from_pairs(&[(1, 3)], 2).unwrap();
        assert_eq!(lcaf_rle_binary(&a3, &b3).unwrap().length, 0);
        // symbols 4 and 9 of a larger alphabet
        let x = RleString::from_pairs(&[(4, 2), (9, 1)], 10).unwrap();
        let y = RleString::from_pairs(&[(9, 1), (4, 1)], 10).unwrap();
        let r = lcaf_rle_binary(&x, &y).unwrap();
        assert_eq!(r.length, 2);
        assert_eq!(r.witness.counts()[4] + r.witness.counts()[9], 2);
    }

    fn rle_strategy() -> impl Strategy<Value = RleString> {
        prop::collection::vec(1u64..6, 0..10).prop_map(|lens| {
            let pairs: Vec<(u32, u64)> =
                lens.iter().enumerate().map(|(k, &l)| ((k % 2) as u32, l)).collect();
            RleString::from_pairs(&pairs, 2).unwrap()
        })
    }

    proptest! {
        #[test]
        fn envelopes_describe_parikh_set(v in rle_strategy()) {
            let (up, down) = envelopes_binary(&v).unwrap();
            let pts = rect_points_oracle(&v).unwrap();
            let pmax = v.parikh()[0];
            prop_assert_eq!(up.domain_end(), pmax);
            prop_assert_eq!(down.domain_end(), pmax);
            let (u, d) = (expand(&up), expand(&down));
            prop_assert!(u.windows(2).all(|w| w[0] <= w[1]));
            prop_assert!(d.windows(2).all(|w| w[0] <= w[1]));
            let m = v.m();
            prop_assert!(up.steps().len() <= m * m + 1 && down.steps().len() <= m * m + 1);
            let mut count = 0;
            for p in 0..=pmax {
                prop_assert!(d[p as usize] <= u[p as usize]);
                for q in d[p as usize]..=u[p as usize] {
                    prop_assert!(pts.contains(&ParikhVector::from_counts(vec![p, q])));
                    count += 1;
                }
            }
            prop_assert_eq!(count, pts.len());
        }

        #[test]
        fn binary_matches_oracle(s in rle_strategy(), t in rle_strategy()) {
            let got = lcaf_rle_binary(&s, &t).unwrap();
            prop_assert_eq!(got.length, lcaf_oracle(&s.decode(), &t.decode()).length);
            let (os, ot) = got.occurrences.unwrap();
            prop_assert_eq!(os.len(), got.length);
            prop_assert_eq!(ot.len(), got.length);
        }
    }
}
