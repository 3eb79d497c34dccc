//! Static 2D range tree over a fixed point set with activatable weights.
//!
//! The outer tree is a segment tree over the points sorted by `a`; each node
//! keeps its points sorted by `b` together with a max segment tree over
//! them. Inactive points weigh [`INACTIVE`].

/// Weight of an inactive point, below every real weight.
pub const INACTIVE: i64 = i64::MIN;

type Slot = (i64, u32);

const EMPTY: Slot = (INACTIVE, u32::MAX);

#[derive(Debug, Clone)]
struct Node {
    /// `(b, id)` sorted.
    keys: Vec<(u64, u32)>,
    /// Max tree over `keys`, leaves at `keys.len()..`.
    seg: Vec<Slot>,
}

impl Node {
    fn update(&mut self, pos: usize, v: Slot) {
        let n = self.keys.len();
        let mut k = pos + n;
        self.seg[k] = v;
        while k > 1 {
            k /= 2;
            self.seg[k] = self.seg[2 * k].max(self.seg[2 * k + 1]);
        }
    }

    fn max_in(&self, b1: u64, b2: u64) -> Slot {
        let n = self.keys.len();
        let mut l = self.keys.partition_point(|k| k.0 < b1) + n;
        let mut r = self.keys.partition_point(|k| k.0 <= b2) + n;
        let mut acc = EMPTY;
        while l < r {
            if l & 1 == 1 {
                acc = acc.max(self.seg[l]);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                acc = acc.max(self.seg[r]);
            }
            l /= 2;
            r /= 2;
        }
        acc
    }
}

#[derive(Debug, Clone)]
pub struct RangeTree {
    size: usize,
    /// `a` of the points in sorted order.
    a_sorted: Vec<u64>,
    /// Leaf position of each point id.
    leaf_of: Vec<usize>,
    b_of: Vec<u64>,
    nodes: Vec<Node>,
}

impl RangeTree {
    /// Tree over `points[id] = (a, b)`, all inactive.
    pub fn new(points: &[(u64, u64)]) -> Self {
        let n = points.len();
        let size = n.next_power_of_two().max(1);
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_unstable_by_key(|&id| (points[id as usize], id));
        let mut leaf_of = vec![0; n];
        for (pos, &id) in order.iter().enumerate() {
            leaf_of[id as usize] = pos;
        }
        let empty = Node {
            keys: Vec::new(),
            seg: Vec::new(),
        };
        let mut nodes = vec![empty; 2 * size];
        for (pos, &id) in order.iter().enumerate() {
            nodes[size + pos].keys.push((points[id as usize].1, id));
        }
        for v in (1..size).rev() {
            let (l, r) = (&nodes[2 * v].keys, &nodes[2 * v + 1].keys);
            let mut merged = Vec::with_capacity(l.len() + r.len());
            let (mut x, mut y) = (0, 0);
            while x < l.len() || y < r.len() {
                if y == r.len() || (x < l.len() && l[x] <= r[y]) {
                    merged.push(l[x]);
                    x += 1;
                } else {
                    merged.push(r[y]);
                    y += 1;
                }
            }
            nodes[v].keys = merged;
        }
        for node in &mut nodes {
            node.seg = vec![EMPTY; 2 * node.keys.len()];
        }
        Self {
            size,
            a_sorted: order.iter().map(|&id| points[id as usize].0).collect(),
            leaf_of,
            b_of: points.iter().map(|p| p.1).collect(),
            nodes,
        }
    }

    /// Sets the weight of point `id`; [`INACTIVE`] deactivates it.
    pub fn set(&mut self, id: usize, weight: i64) {
        let key = (self.b_of[id], id as u32);
        let slot = if weight == INACTIVE { EMPTY } else { (weight, id as u32) };
        let mut v = self.leaf_of[id] + self.size;
        while v >= 1 {
            let node = &mut self.nodes[v];
            let pos = node.keys.binary_search(&key).expect("point stored on its path");
            node.update(pos, slot);
            v /= 2;
        }
    }

    /// Heaviest active point with `a1 <= a <= a2`, `b1 <= b <= b2`, as
    /// `(weight, id)`.
    pub fn max_in(&self, a1: u64, a2: u64, b1: u64, b2: u64) -> Option<(i64, usize)> {
        if a1 > a2 || b1 > b2 {
            return None;
        }
        let mut l = self.a_sorted.partition_point(|&a| a < a1) + self.size;
        let mut r = self.a_sorted.partition_point(|&a| a <= a2) + self.size;
        let mut acc = EMPTY;
        while l < r {
            if l & 1 == 1 {
                acc = acc.max(self.nodes[l].max_in(b1, b2));
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                acc = acc.max(self.nodes[r].max_in(b1, b2));
            }
            l /= 2;
            r /= 2;
        }
        (acc.0 != INACTIVE).then_some((acc.0, acc.1 as usize))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn agrees_with_linear_scan(
            points in prop::collection::vec((0u64..10, 0u64..10), 1..30),
            ops in prop::collection::vec((0usize..30, -1i64..50), 0..60),
            queries in prop::collection::vec((0u64..10, 0u64..10, 0u64..10, 0u64..10), 1..20),
        ) {
            let mut tree = RangeTree::new(&points);
            let mut w = vec![INACTIVE; points.len()];
            for (id, x) in ops {
                let id = id % points.len();
                let x = if x < 0 { INACTIVE } else { x };
                tree.set(id, x);
                w[id] = x;
            }
            for (a1, a2, b1, b2) in queries {
                let want = (0..points.len())
                    .filter(|&k| w[k] != INACTIVE)
                    .filter(|&k| (a1..=a2).contains(&points[k].0) && (b1..=b2).contains(&points[k].1))
                    .map(|k| w[k])
                    .max();
                let got = tree.max_in(a1, a2, b1, b2);
                prop_assert_eq!(got.map(|g| g.0), want);
                if let Some((x, id)) = got {
                    prop_assert_eq!(w[id], x);
                }
            }
        }
    }
}
