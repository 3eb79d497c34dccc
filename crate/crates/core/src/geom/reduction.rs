//! Batching the norm-`l` rectangle families into a linear number of
//! geometric instances of linear size each.

use crate::error::{Error, Result};
use crate::rect::{rect_unchecked, PairDelta, Rect, RectDeltaStream, Side};
use crate::rle::RleString;

/// Two rectangle families in `d` dimensions.
///
/// After [`normalize`], corner coordinates are per-axis ranks and
/// `back_maps[a][r]` is the original coordinate of rank `r` on axis `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeomInstance {
    pub d: usize,
    pub family1: Vec<Rect>,
    pub family2: Vec<Rect>,
    pub back_maps: Option<Vec<Vec<u64>>>,
}

impl GeomInstance {
    pub fn new(d: usize, family1: Vec<Rect>, family2: Vec<Rect>) -> Result<Self> {
        for r in family1.iter().chain(&family2) {
            if r.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: r.dim(),
                });
            }
        }
        Ok(Self {
            d,
            family1,
            family2,
            back_maps: None,
        })
    }

    pub fn is_normalized(&self) -> bool {
        self.back_maps.is_some()
    }

    /// Original coordinate of `x` on `axis`.
    #[inline]
    pub fn original(&self, axis: usize, x: u64) -> u64 {
        match &self.back_maps {
            Some(maps) => maps[axis][x as usize],
            None => x,
        }
    }

    pub fn point_to_original(&self, point: &[u64]) -> Vec<u64> {
        point
            .iter()
            .enumerate()
            .map(|(a, &x)| self.original(a, x))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.family1.len() + self.family2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Replaces every corner coordinate by its rank among the corner
/// coordinates of its axis. Composes with existing back maps.
pub fn normalize(inst: &GeomInstance) -> GeomInstance {
    let d = inst.d;
    let mut axes: Vec<Vec<u64>> = vec![Vec::new(); d];
    for r in inst.family1.iter().chain(&inst.family2) {
        for a in 0..d {
            axes[a].push(r.lo()[a]);
            axes[a].push(r.hi()[a]);
        }
    }
    for xs in &mut axes {
        xs.sort_unstable();
        xs.dedup();
    }
    let rank = |a: usize, x: u64| axes[a].binary_search(&x).expect("collected above") as u64;
    let remap = |fam: &[Rect]| -> Vec<Rect> {
        fam.iter()
            .map(|r| {
                let lo = (0..d).map(|a| rank(a, r.lo()[a])).collect();
                let hi = (0..d).map(|a| rank(a, r.hi()[a])).collect();
                Rect::new(lo, hi, r.provenance()).expect("ranks keep the order")
            })
            .collect()
    };
    let family1 = remap(&inst.family1);
    let family2 = remap(&inst.family2);
    let back_maps = axes
        .iter()
        .enumerate()
        .map(|(a, xs)| xs.iter().map(|&x| inst.original(a, x)).collect())
        .collect();
    GeomInstance {
        d,
        family1,
        family2,
        back_maps: Some(back_maps),
    }
}

/// Yields instances such that for every `l <= min(|S|, |T|)` some instance
/// holds all of `Rect_S(l)` in `family1` and all of `Rect_T(l)` in
/// `family2`.
///
/// Both families start from the norm-0 families and only grow: removals
/// are ignored, so a family may keep stale rectangles, which are still
/// rectangles of the same string. After `m` insertions the current
/// instance is emitted and both families restart from the complete
/// families of the current level, which drops that level's remaining
/// insertions. Families stay below `3m` rectangles.
pub struct ReductionInstances<'a> {
    s: &'a RleString,
    t: &'a RleString,
    ds: RectDeltaStream<'a>,
    dt: RectDeltaStream<'a>,
    fam_s: Vec<(usize, usize)>,
    fam_t: Vec<(usize, usize)>,
    inserted: usize,
    budget: usize,
    lmax: u64,
    done: bool,
}

pub fn reduction_instances<'a>(s: &'a RleString, t: &'a RleString) -> Result<ReductionInstances<'a>> {
    if s.sigma() != t.sigma() {
        return Err(Error::DimensionMismatch {
            expected: s.sigma(),
            found: t.sigma(),
        });
    }
    let ds = RectDeltaStream::with_side(s, Side::First);
    let dt = RectDeltaStream::with_side(t, Side::Second);
    let fam_s = ds.current_pairs().collect();
    let fam_t = dt.current_pairs().collect();
    Ok(ReductionInstances {
        s,
        t,
        ds,
        dt,
        fam_s,
        fam_t,
        inserted: 0,
        budget: s.m().max(t.m()).max(1),
        lmax: s.n().min(t.n()),
        done: false,
    })
}

impl ReductionInstances<'_> {
    fn emit(&self) -> GeomInstance {
        let build = |v: &RleString, side, pairs: &[(usize, usize)]| {
            pairs
                .iter()
                .map(|&(i, j)| rect_unchecked(v, side, i, j))
                .collect()
        };
        GeomInstance {
            d: self.s.sigma(),
            family1: build(self.s, Side::First, &self.fam_s),
            family2: build(self.t, Side::Second, &self.fam_t),
            back_maps: None,
        }
    }

    fn next_level(&self) -> Option<u64> {
        let ls = self.ds.peek_level();
        let lt = self.dt.peek_level();
        let l = match (ls, lt) {
            (Some(a), Some(b)) => a.min(b),
            (a, b) => a.or(b)?,
        };
        (l <= self.lmax).then_some(l)
    }
}

impl Iterator for ReductionInstances<'_> {
    type Item = GeomInstance;

    fn next(&mut self) -> Option<GeomInstance> {
        if self.done {
            return None;
        }
        while let Some(l) = self.next_level() {
            let take = |d: &mut RectDeltaStream<'_>| -> Option<PairDelta> {
                (d.peek_level() == Some(l)).then(|| d.next_pairs().expect("peeked"))
            };
            let delta_s = take(&mut self.ds);
            let delta_t = take(&mut self.dt);
            let adds = delta_s
                .iter()
                .flat_map(|d| d.added.iter().map(|&p| (true, p)))
                .chain(delta_t.iter().flat_map(|d| d.added.iter().map(|&p| (false, p))));
            let mut flushed = None;
            for (first, p) in adds {
                if first {
                    self.fam_s.push(p);
                } else {
                    self.fam_t.push(p);
                }
                self.inserted += 1;
                if self.inserted == self.budget {
                    flushed = Some(self.emit());
                    break;
                }
            }
            if let Some(inst) = flushed {
                self.fam_s = self.ds.current_pairs().collect();
                self.fam_t = self.dt.current_pairs().collect();
                self.inserted = 0;
                return Some(inst);
            }
        }
        self.done = true;
        Some(self.emit())
    }
}
