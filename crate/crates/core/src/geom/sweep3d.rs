//! Maximal-norm common point of two families of boxes in three dimensions,
//! each box having at most two non-singleton axes.
//!
//! If some axis is a singleton in both boxes they must agree on it, which
//! leaves a planar problem per value of that axis. Otherwise one box is flat
//! along an axis `p3` and the other along a different axis `p1`: a sweep
//! along `p3` keeps the boxes of the second kind in a range tree keyed by
//! their `p1` value and their upper end on the remaining axis `p2`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rect::Rect;

use super::range_tree::{RangeTree, INACTIVE};
use super::reduction::{normalize, GeomInstance};
use super::sweep2d::{boxes, solve_boxes};

const INSERT: u8 = 0;
const QUERY: u8 = 1;
const DELETE: u8 = 2;

/// Best point in rank coordinates with its original-coordinate norm.
#[derive(Debug, Default)]
struct Best(Option<(u64, [u64; 3])>);

impl Best {
    fn offer(&mut self, w: u64, p: [u64; 3]) {
        if self.0.is_none_or(|(b, _)| w > b) {
            self.0 = Some((w, p));
        }
    }
}

/// Pairs sharing a singleton axis `z`, grouped by their value on `z`.
fn shared_axis(inst: &GeomInstance, maps: &[Vec<u64>], best: &mut Best) {
    for z in 0..3 {
        let (x, y) = match z {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let mut groups: BTreeMap<u64, (Vec<Rect>, Vec<Rect>)> = BTreeMap::new();
        for r in inst.family1.iter().filter(|r| r.is_singleton(z)) {
            groups.entry(r.lo()[z]).or_default().0.push(r.project(&[x, y]));
        }
        for r in inst.family2.iter().filter(|r| r.is_singleton(z)) {
            if let Some(g) = groups.get_mut(&r.lo()[z]) {
                g.1.push(r.project(&[x, y]));
            }
        }
        for (zv, (f1, f2)) in groups {
            if f2.is_empty() {
                continue;
            }
            // Re-rank within the group; its back maps lead to the parent's ranks.
            let sub = normalize(&GeomInstance {
                d: 2,
                family1: f1,
                family2: f2,
                back_maps: None,
            });
            let sm = sub.back_maps.as_ref().expect("normalized");
            let mx: Vec<u64> = sm[0].iter().map(|&r| maps[x][r as usize]).collect();
            let my: Vec<u64> = sm[1].iter().map(|&r| maps[y][r as usize]).collect();
            let b1 = boxes(&sub, &sub.family1, 0, 1);
            let b2 = boxes(&sub, &sub.family2, 0, 1);
            if let Some((w, px, py)) = solve_boxes(&b1, &b2, &mx, &my).0 {
                let mut p = [0; 3];
                p[x] = sm[0][px as usize];
                p[y] = sm[1][py as usize];
                p[z] = zv;
                best.offer(w + maps[z][zv as usize], p);
            }
        }
    }
}

/// Boxes `a` flat along `p3` against boxes `b` flat along `p1`.
///
/// For `A = [a1,a2] x [b1,b2] x {c}` and `B = {a'} x [b1',b2'] x [c1',c2']`
/// (axes `p1, p2, p3`) with `b2' <= b2`, the best common point is
/// `(a', b2', c)`. The case `b2 < b2'` is the same sweep with the roles and
/// the axis order reversed.
fn cross_sweep(a: &[Rect], b: &[Rect], perm: [usize; 3], maps: &[Vec<u64>], best: &mut Best) {
    let [p1, p2, p3] = perm;
    let a: Vec<&Rect> = a.iter().filter(|r| r.is_singleton(p3)).collect();
    let b: Vec<&Rect> = b.iter().filter(|r| r.is_singleton(p1)).collect();
    if a.is_empty() || b.is_empty() {
        return;
    }
    let points: Vec<(u64, u64)> = b.iter().map(|r| (r.lo()[p1], r.hi()[p2])).collect();
    let mut tree = RangeTree::new(&points);
    let mut events: Vec<(u64, u8, usize)> = Vec::with_capacity(2 * b.len() + a.len());
    for (k, r) in b.iter().enumerate() {
        events.push((r.lo()[p3], INSERT, k));
        events.push((r.hi()[p3], DELETE, k));
    }
    for (k, r) in a.iter().enumerate() {
        events.push((r.lo()[p3], QUERY, k));
    }
    events.sort_unstable();
    for (c, kind, k) in events {
        match kind {
            INSERT => {
                let (x, y) = points[k];
                let w = maps[p1][x as usize] + maps[p2][y as usize];
                tree.set(k, w as i64);
            }
            DELETE => tree.set(k, INACTIVE),
            _ => {
                let r = a[k];
                if let Some((w, id)) = tree.max_in(r.lo()[p1], r.hi()[p1], r.lo()[p2], r.hi()[p2]) {
                    let mut p = [0; 3];
                    p[p1] = points[id].0;
                    p[p2] = points[id].1;
                    p[p3] = c;
                    best.offer(w as u64 + maps[p3][c as usize], p);
                }
            }
        }
    }
}

const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Maximal-norm point common to a box of each family, in original
/// coordinates.
pub fn solve_3d(inst: &GeomInstance) -> Result<Option<(Vec<u64>, u64)>> {
    if inst.d != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
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
    let mut best = Best::default();
    if inst.family1.is_empty() || inst.family2.is_empty() {
        return Ok(None);
    }
    shared_axis(inst, maps, &mut best);
    for perm in PERMS {
        cross_sweep(&inst.family1, &inst.family2, perm, maps, &mut best);
        cross_sweep(&inst.family2, &inst.family1, perm, maps, &mut best);
    }
    Ok(best.0.map(|(w, p)| (inst.point_to_original(&p), w)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::sweep2d::tests::rect_strategy;
    use crate::oracle::max_intersection_oracle;
    use crate::rect::Side;
    use proptest::prelude::*;

    fn r(iv: &[(u64, u64)]) -> Rect {
        Rect::from_intervals(iv, Side::First, 0).unwrap()
    }

    #[test]
    fn spatial_examples() {
        let inst = GeomInstance::new(3, vec![r(&[(2, 2), (1, 4), (3, 3)])], vec![r(&[(2, 2), (2, 2), (0, 5)])]).unwrap();
        assert_eq!(solve_3d(&inst).unwrap(), Some((vec![2, 2, 3], 7)));
        let inst = GeomInstance::new(3, vec![r(&[(1, 1), (0, 2), (1, 3)])], vec![r(&[(1, 1), (1, 4), (0, 2)])]).unwrap();
        assert_eq!(solve_3d(&inst).unwrap(), Some((vec![1, 2, 2], 5)));
        let inst = GeomInstance::new(3, vec![r(&[(1, 1), (0, 2), (1, 3)])], vec![r(&[(2, 2), (1, 4), (0, 2)])]).unwrap();
        assert_eq!(solve_3d(&inst).unwrap(), None);
    }

    #[test]
    fn cross_case_with_top_edge_below() {
        // A = [0,4] x [0,1] x {3}, B = {2} x [0,6] x [1,5]: y capped by A
        let inst = GeomInstance::new(3, vec![r(&[(0, 4), (0, 1), (3, 3)])], vec![r(&[(2, 2), (0, 6), (1, 5)])]).unwrap();
        assert_eq!(solve_3d(&inst).unwrap(), Some((vec![2, 1, 3], 6)));
    }

    #[test]
    fn rejects_wrong_dimension() {
        let inst = GeomInstance::new(2, vec![], vec![]).unwrap();
        assert!(matches!(solve_3d(&inst), Err(Error::DimensionMismatch { .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn matches_grid_oracle(
            f1 in prop::collection::vec(rect_strategy(3, 7), 0..=6),
            f2 in prop::collection::vec(rect_strategy(3, 7), 0..=6),
        ) {
            let inst = GeomInstance::new(3, f1.clone(), f2.clone()).unwrap();
            let got = solve_3d(&normalize(&inst)).unwrap();
            let want = max_intersection_oracle(&f1, &f2).unwrap();
            prop_assert_eq!(got.as_ref().map(|g| g.1), want.as_ref().map(|w| w.1));
            if let Some((p, n)) = got {
                prop_assert_eq!(p.iter().sum::<u64>(), n);
                prop_assert!(f1.iter().any(|r| r.contains(&p)) && f2.iter().any(|r| r.contains(&p)));
            }
        }
    }
}
