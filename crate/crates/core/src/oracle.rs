//! Brute-force reference implementations.
//!
//! Everything here is quadratic or worse and is meant as ground truth for
//! the real solvers. The geometric oracles enumerate integer points and
//! refuse inputs above [`POINT_LIMIT`].

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::parikh::{ParikhVector, PlainString};
use crate::rect::{rect_unchecked, Rect, Side};
use crate::result::{LcafResult, Span};
use crate::rle::RleString;

/// Upper bound on the number of integer points the geometric oracles visit.
pub const POINT_LIMIT: u128 = 1 << 24;

/// Parikh vectors of all length-`len` windows of `u`.
pub fn window_parikh_set(u: &PlainString, len: usize) -> Result<HashSet<ParikhVector>> {
    Ok(window_parikh_starts(u, len)?.into_keys().collect())
}

/// Each distinct window Parikh vector mapped to its first start position.
fn window_parikh_starts(u: &PlainString, len: usize) -> Result<HashMap<ParikhVector, usize>> {
    let n = u.len();
    if len > n {
        return Err(Error::WindowOutOfRange { len, n });
    }
    let syms = u.symbols();
    let mut window = ParikhVector::zero(u.sigma());
    for &s in &syms[..len] {
        window.increment(s);
    }
    let mut out = HashMap::new();
    out.insert(window.clone(), 0);
    for start in 1..=n - len {
        if len > 0 {
            window.decrement(syms[start - 1]);
            window.increment(syms[start + len - 1]);
        }
        if !out.contains_key(&window) {
            out.insert(window.clone(), start);
        }
    }
    Ok(out)
}

/// Longest common Abelian factor by trying every length from the longest
/// down. The witness is the first vector of `t` (in scan order) that also
/// occurs in `s`.
pub fn lcaf_oracle(s: &PlainString, t: &PlainString) -> LcafResult {
    let sigma = s.sigma().max(t.sigma());
    let s = s.widened(sigma);
    let t = t.widened(sigma);
    let ts = t.symbols();
    for len in (1..=s.len().min(t.len())).rev() {
        let in_s = window_parikh_starts(&s, len).expect("len bounded by |s|");
        let mut window = ParikhVector::zero(sigma);
        for &c in &ts[..len] {
            window.increment(c);
        }
        for start in 0..=t.len() - len {
            if start > 0 {
                window.decrement(ts[start - 1]);
                window.increment(ts[start + len - 1]);
            }
            if let Some(&s_start) = in_s.get(&window) {
                let l = len as u64;
                return LcafResult {
                    length: l,
                    witness: window,
                    occurrences: Some((
                        Span::new(s_start as u64, s_start as u64 + l),
                        Span::new(start as u64, start as u64 + l),
                    )),
                };
            }
        }
    }
    LcafResult::empty(sigma)
}

/// Union of the integer points of every `rect(V, i, j)`.
pub fn rect_points_oracle(v: &RleString) -> Result<HashSet<ParikhVector>> {
    let m = v.m();
    let mut out = HashSet::new();
    out.insert(ParikhVector::zero(v.sigma()));
    let mut budget = POINT_LIMIT;
    for i in 0..m {
        for j in i..m {
            let r = rect_unchecked(v, Side::First, i, j);
            let vol = r.volume();
            if vol > budget {
                return Err(Error::GuardExceeded {
                    what: "rect_points_oracle",
                    count: vol,
                    limit: POINT_LIMIT,
                });
            }
            budget -= vol;
            r.for_each_point(|p| {
                out.insert(ParikhVector::from_counts(p.to_vec()));
            });
        }
    }
    Ok(out)
}

/// Maximal-norm point common to a rectangle of `first` and one of `second`,
/// by enumerating every integer point of every `first` rectangle against
/// every `second` rectangle.
pub fn max_intersection_oracle(first: &[Rect], second: &[Rect]) -> Result<Option<(Vec<u64>, u64)>> {
    let total: u128 = first.iter().map(Rect::volume).sum::<u128>() * second.len().max(1) as u128;
    if total > POINT_LIMIT {
        return Err(Error::GuardExceeded {
            what: "max_intersection_oracle",
            count: total,
            limit: POINT_LIMIT,
        });
    }
    let mut best: Option<(Vec<u64>, u64)> = None;
    for r1 in first {
        r1.for_each_point(|p| {
            let norm: u64 = p.iter().sum();
            if best.as_ref().is_some_and(|(_, b)| *b >= norm) {
                return;
            }
            if second.iter().any(|r2| r2.contains(p)) {
                best = Some((p.to_vec(), norm));
            }
        });
    }
    Ok(best)
}
