//! Maximal-norm common point of two families of planar rectangles.
//!
//! For boxes `A` and `B` the best common point is `(min hx, min hy)`. If
//! both minima come from the same box it is that box's top-right corner,
//! lying inside the other box; otherwise it is where the right edge of one
//! box crosses the top edge of the other. Two sweeps over `x` cover both
//! cases.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::reduction::{normalize, GeomInstance};

/// `[x1, x2] x [y1, y2]` in rank coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Box2 {
    pub x1: u64,
    pub x2: u64,
    pub y1: u64,
    pub y2: u64,
}

/// Event kinds in processing order for equal sweep coordinates, so that
/// closed boundaries count as inside.
const INSERT: u8 = 0;
const QUERY: u8 = 1;
const DELETE: u8 = 2;

/// Range add, point query.
struct Fenwick {
    tree: Vec<i64>,
}

impl Fenwick {
    fn new(n: usize) -> Self {
        Self {
            tree: vec![0; n + 1],
        }
    }

    fn add_suffix(&mut self, from: usize, delta: i64) {
        let mut k = from + 1;
        while k < self.tree.len() {
            self.tree[k] += delta;
            k += k & k.wrapping_neg();
        }
    }

    fn add_range(&mut self, lo: usize, hi: usize, delta: i64) {
        self.add_suffix(lo, delta);
        self.add_suffix(hi + 1, -delta);
    }

    fn point(&self, at: usize) -> i64 {
        let mut k = at + 1;
        let mut acc = 0;
        while k > 0 {
            acc += self.tree[k];
            k -= k & k.wrapping_neg();
        }
        acc
    }
}

/// Best `(weight, x, y)` seen so far; earlier candidates win ties.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Best(pub Option<(u64, u64, u64)>);

impl Best {
    pub fn offer(&mut self, w: u64, x: u64, y: u64) {
        if self.0.is_none_or(|(b, _, _)| w > b) {
            self.0 = Some((w, x, y));
        }
    }
}

/// Top-right corners of `a` lying in some box of `b`.
fn corners_in(a: &[Box2], b: &[Box2], ny: usize, mx: &[u64], my: &[u64], best: &mut Best) {
    let mut events: Vec<(u64, u8, usize)> = Vec::with_capacity(2 * b.len() + a.len());
    for (k, r) in b.iter().enumerate() {
        events.push((r.x1, INSERT, k));
        events.push((r.x2, DELETE, k));
    }
    for (k, r) in a.iter().enumerate() {
        events.push((r.x2, QUERY, k));
    }
    events.sort_unstable();
    let mut active = Fenwick::new(ny);
    for (x, kind, k) in events {
        match kind {
            INSERT => active.add_range(b[k].y1 as usize, b[k].y2 as usize, 1),
            DELETE => active.add_range(b[k].y1 as usize, b[k].y2 as usize, -1),
            _ => {
                let y = a[k].y2;
                if active.point(y as usize) > 0 {
                    best.offer(mx[x as usize] + my[y as usize], x, y);
                }
            }
        }
    }
}

/// Right edges of `a` against top edges of `b`, keeping the topmost
/// crossing per right edge.
fn edge_crossings(a: &[Box2], b: &[Box2], mx: &[u64], my: &[u64], best: &mut Best) {
    let mut events: Vec<(u64, u8, usize)> = Vec::with_capacity(2 * b.len() + a.len());
    for (k, r) in b.iter().enumerate() {
        events.push((r.x1, INSERT, k));
        events.push((r.x2, DELETE, k));
    }
    for (k, r) in a.iter().enumerate() {
        events.push((r.x2, QUERY, k));
    }
    events.sort_unstable();
    let mut tops: BTreeMap<u64, u32> = BTreeMap::new();
    for (x, kind, k) in events {
        match kind {
            INSERT => *tops.entry(b[k].y2).or_default() += 1,
            DELETE => {
                let c = tops.get_mut(&b[k].y2).expect("inserted before");
                *c -= 1;
                if *c == 0 {
                    tops.remove(&b[k].y2);
                }
            }
            _ => {
                if let Some((&y, _)) = tops.range(a[k].y1..=a[k].y2).next_back() {
                    best.offer(mx[x as usize] + my[y as usize], x, y);
                }
            }
        }
    }
}

/// Core of the planar solver on rank coordinates; `mx`, `my` map ranks to
/// original coordinates, which define the weights.
pub(crate) fn solve_boxes(f1: &[Box2], f2: &[Box2], mx: &[u64], my: &[u64]) -> Best {
    let mut best = Best::default();
    if f1.is_empty() || f2.is_empty() {
        return best;
    }
    corners_in(f1, f2, my.len(), mx, my, &mut best);
    corners_in(f2, f1, my.len(), mx, my, &mut best);
    edge_crossings(f1, f2, mx, my, &mut best);
    edge_crossings(f2, f1, mx, my, &mut best);
    best
}

pub(crate) fn boxes(inst: &GeomInstance, fam: &[crate::rect::Rect], ax: usize, ay: usize) -> Vec<Box2> {
    debug_assert!(inst.is_normalized());
    fam.iter()
        .map(|r| Box2 {
            x1: r.lo()[ax],
            x2: r.hi()[ax],
            y1: r.lo()[ay],
            y2: r.hi()[ay],
        })
        .collect()
}

/// Maximal-norm point common to a rectangle of each family, in original
/// coordinates.
pub fn solve_2d(inst: &GeomInstance) -> Result<Option<(Vec<u64>, u64)>> {
    if inst.d != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: inst.d,
        });
    }
    let owned;
    let inst = if inst.is_normalized() {
        inst
    } else {
        owned = normalize(inst);
        &owned
    };
    let maps = inst.back_maps.as_ref().expect("normalized");
    let f1 = boxes(inst, &inst.family1, 0, 1);
    let f2 = boxes(inst, &inst.family2, 0, 1);
    Ok(solve_boxes(&f1, &f2, &maps[0], &maps[1])
        .0
        .map(|(w, x, y)| (vec![maps[0][x as usize], maps[1][y as usize]], w)))
}
