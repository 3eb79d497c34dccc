//! One stage of the bucketed solver: all factor lengths in a range of at most
//! `b` consecutive values.

use crate::parikh::{ParikhVector, PlainString};

use super::cell::{CellCodec, CellId};
use super::table::StepTable;

/// Lengths `lo..lo + len`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LengthRange {
    pub lo: usize,
    pub len: usize,
}

impl LengthRange {
    pub fn new(lo: usize, len: usize) -> Self {
        assert!(len >= 1, "empty length range");
        Self { lo, len }
    }

    pub fn hi(&self) -> usize {
        self.lo + self.len - 1
    }
}

/// Set `mask` in the bucket of the packed cell `key`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InsertionRequest {
    pub key: u128,
    pub mask: u64,
}

impl InsertionRequest {
    pub fn cell(&self, codec: &CellCodec) -> CellId {
        codec.unpack(self.key)
    }
}

/// Key increments for every offset in `{0,1}^sigma`.
fn offset_deltas(codec: &CellCodec) -> Vec<u128> {
    let sigma = codec.sigma().min(8);
    (0..1usize << sigma)
        .map(|off| {
            (0..sigma)
                .filter(|&c| off >> c & 1 == 1)
                .map(|c| codec.unit(c))
                .sum()
        })
        .collect()
}

pub fn collect_requests(
    v: &PlainString,
    range: LengthRange,
    table: &StepTable,
    codec: &CellCodec,
) -> Vec<InsertionRequest> {
    let mut out = Vec::new();
    collect_requests_into(v, range, table, codec, &mut out);
    out
}

/// Appends to `out` the requests for every factor of `v` with length in
/// `range`. Position `j` contributes the factors `v[j..j+lo]` and its
/// extensions by up to `range.len - 1` symbols, truncated at the end of `v`.
pub fn collect_requests_into(
    v: &PlainString,
    range: LengthRange,
    table: &StepTable,
    codec: &CellCodec,
    out: &mut Vec<InsertionRequest>,
) {
    assert!(range.len <= table.b(), "length range wider than b");
    let syms = v.symbols();
    let n = syms.len();
    let lo = range.lo;
    if lo > n {
        return;
    }
    let b = table.b();
    let sigma = codec.sigma();
    let sym_bits = table.sym_bits() as usize;
    let deltas = offset_deltas(codec);
    let pw: Vec<usize> = (0..sigma).map(|c| b.pow(c as u32)).collect();
    let units: Vec<u128> = (0..sigma).map(|c| codec.unit(c)).collect();

    // Base window v[j..j+lo] as cell key, remainders and packed local index.
    let mut rems = vec![0usize; sigma];
    let mut key: u128 = 0;
    let mut q = 0usize;
    let inc = |c: usize, rems: &mut [usize], key: &mut u128, q: &mut usize| {
        if rems[c] + 1 == b {
            rems[c] = 0;
            *key += units[c];
            *q -= (b - 1) * pw[c];
        } else {
            rems[c] += 1;
            *q += pw[c];
        }
    };
    for &s in &syms[..lo] {
        inc(s.index(), &mut rems, &mut key, &mut q);
    }
    out.reserve((n - lo + 1) * 2);
    for j in 0..=n - lo {
        if j > 0 && lo > 0 {
            let c = syms[j - 1].index();
            if rems[c] == 0 {
                rems[c] = b - 1;
                key -= units[c];
                q += (b - 1) * pw[c];
            } else {
                rems[c] -= 1;
                q -= pw[c];
            }
            inc(syms[j + lo - 1].index(), &mut rems, &mut key, &mut q);
        }
        let k = (range.len - 1).min(n - j - lo);
        let mut code = 0usize;
        if sym_bits > 0 {
            for (i, s) in syms[j + lo..j + lo + k].iter().enumerate() {
                code |= s.index() << (sym_bits * i);
            }
        }
        for r in table.entry(q, k, code) {
            out.push(InsertionRequest {
                key: key + deltas[r.offset as usize],
                mask: r.mask,
            });
        }
    }
}

/// Sorts requests by key with an LSD radix sort (digits of at most 16 bits,
/// sized from `key_bits`) and ORs together the masks of equal keys.
pub fn group_requests(reqs: &mut Vec<InsertionRequest>, key_bits: u32) -> Vec<(u128, u64)> {
    if reqs.len() > 1 && key_bits > 0 {
        let passes = key_bits.div_ceil(16);
        let digit_bits = key_bits.div_ceil(passes);
        let buckets = 1usize << digit_bits;
        let digit_mask = (buckets - 1) as u128;
        let mut scratch = vec![InsertionRequest { key: 0, mask: 0 }; reqs.len()];
        let mut count = vec![0usize; buckets + 1];
        for pass in 0..passes {
            let shift = pass * digit_bits;
            count.iter_mut().for_each(|c| *c = 0);
            for r in reqs.iter() {
                count[((r.key >> shift) & digit_mask) as usize + 1] += 1;
            }
            for d in 1..=buckets {
                count[d] += count[d - 1];
            }
            for r in reqs.iter() {
                let d = ((r.key >> shift) & digit_mask) as usize;
                scratch[count[d]] = *r;
                count[d] += 1;
            }
            std::mem::swap(reqs, &mut scratch);
        }
    }
    let mut grouped: Vec<(u128, u64)> = Vec::new();
    for r in reqs.iter() {
        match grouped.last_mut() {
            Some((k, m)) if *k == r.key => *m |= r.mask,
            _ => grouped.push((r.key, r.mask)),
        }
    }
    grouped
}

/// Intersects the buckets built from both request lists and returns the
/// common Parikh vector of largest norm, if any.
pub fn solve_stage(
    reqs_s: &mut Vec<InsertionRequest>,
    reqs_t: &mut Vec<InsertionRequest>,
    b: usize,
    codec: &CellCodec,
) -> Option<ParikhVector> {
    let bits = codec.key_bits();
    let gs = group_requests(reqs_s, bits);
    let gt = group_requests(reqs_t, bits);
    let sigma = codec.sigma();
    let cell_size = b.pow(sigma as u32);
    let local_norm: Vec<u64> = (0..cell_size)
        .map(|mut x| {
            let mut s = 0;
            for _ in 0..sigma {
                s += (x % b) as u64;
                x /= b;
            }
            s
        })
        .collect();

    let mut best: Option<(u64, u128, usize)> = None;
    let (mut a, mut c) = (0, 0);
    while a < gs.len() && c < gt.len() {
        let (ka, ma) = gs[a];
        let (kc, mc) = gt[c];
        if ka < kc {
            a += 1;
            continue;
        }
        if kc < ka {
            c += 1;
            continue;
        }
        let mut both = ma & mc;
        if both != 0 {
            let base = codec.coord_sum(ka) * b as u64;
            while both != 0 {
                let bit = both.trailing_zeros() as usize;
                both &= both - 1;
                let norm = base + local_norm[bit];
                if best.is_none_or(|(bn, _, _)| norm > bn) {
                    best = Some((norm, ka, bit));
                }
            }
        }
        a += 1;
        c += 1;
    }
    best.map(|(_, key, bit)| {
        let cell = codec.unpack(key);
        let mut x = bit;
        ParikhVector::from_counts(
            cell.coords
                .iter()
                .map(|&coord| {
                    let r = (x % b) as u64;
                    x /= b;
                    coord * b as u64 + r
                })
                .collect(),
        )
    })
}

#[cfg(test)]
mod tests {
    use super::super::cell::{cell_of, point_of, LocalIndex};
    use super::super::table::{build_step_table, DEFAULT_TABLE_CAP};
    use super::*;
    use crate::oracle::window_parikh_set;
    use proptest::prelude::*;
    use std::collections::{BTreeMap, HashSet};

    fn expand(reqs: &[InsertionRequest], codec: &CellCodec, b: usize) -> HashSet<ParikhVector> {
        let mut out = HashSet::new();
        for r in reqs {
            let cell = r.cell(codec);
            for bit in 0..64 {
                if r.mask >> bit & 1 == 1 {
                    out.insert(point_of(&cell, LocalIndex(bit), b as u64));
                }
            }
        }
        out
    }

    fn oracle_union(v: &PlainString, range: LengthRange) -> HashSet<ParikhVector> {
        (range.lo..=range.hi().min(v.len()))
            .flat_map(|l| window_parikh_set(v, l).unwrap())
            .collect()
    }

    #[test]
    fn requests_for_ab() {
        let v = PlainString::from_letters("ab", 2).unwrap();
        let table = build_step_table(2, 2, DEFAULT_TABLE_CAP).unwrap();
        let codec = CellCodec::for_max_coord(2, 2).unwrap();
        let range = LengthRange::new(1, 2);
        let reqs = collect_requests(&v, range, &table, &codec);
        let want: HashSet<_> = [[1, 0], [0, 1], [1, 1]]
            .iter()
            .map(|p| ParikhVector::from_counts(p.to_vec()))
            .collect();
        assert_eq!(expand(&reqs, &codec, 2), want);
    }

    #[test]
    fn zero_length_range_requests_zero_vector() {
        let v = PlainString::from_letters("abba", 2).unwrap();
        let table = build_step_table(2, 2, DEFAULT_TABLE_CAP).unwrap();
        let codec = CellCodec::for_max_coord(2, 4).unwrap();
        let reqs = collect_requests(&v, LengthRange::new(0, 1), &table, &codec);
        assert_eq!(reqs.len(), 5);
        assert!(reqs.iter().all(|r| r.key == 0 && r.mask == 1));
    }

    #[test]
    fn solve_stage_trivial_cases() {
        let codec = CellCodec::for_max_coord(2, 4).unwrap();
        assert_eq!(solve_stage(&mut vec![], &mut vec![], 2, &codec), None);
        let bit11 = 1u64 << LocalIndex::pack(&[1, 1], 2).0;
        let mut s = vec![InsertionRequest { key: 0, mask: bit11 }];
        let mut t = s.clone();
        assert_eq!(
            solve_stage(&mut s, &mut t, 2, &codec),
            Some(ParikhVector::from_counts(vec![1, 1]))
        );
        let mut s = vec![InsertionRequest { key: 0, mask: 0b0011 }];
        let mut t = vec![InsertionRequest { key: 0, mask: 0b1100 }];
        assert_eq!(solve_stage(&mut s, &mut t, 2, &codec), None);
    }

    #[test]
    fn grouping_merges_equal_keys() {
        let mut reqs: Vec<InsertionRequest> = [(5u128, 1u64), (1, 2), (5, 4), (70000, 8), (1, 16)]
            .iter()
            .map(|&(key, mask)| InsertionRequest { key, mask })
            .collect();
        let g = group_requests(&mut reqs, 17);
        assert_eq!(g, vec![(1, 18), (5, 5), (70000, 8)]);
    }

    proptest! {
        #[test]
        fn buckets_match_window_sets(
            sigma in 1usize..=4,
            raw in prop::collection::vec(0u32..4, 0..40),
            lo in 0usize..40,
        ) {
            let ranks: Vec<u32> = raw.iter().map(|&x| x % sigma as u32).collect();
            let v = PlainString::from_ranks(&ranks, sigma).unwrap();
            let b = (2..=64).rev().find(|&b| super::super::table::cell_size(b, sigma).is_some()).unwrap();
            let table = build_step_table(b, sigma, DEFAULT_TABLE_CAP).unwrap();
            let codec = CellCodec::for_max_coord(sigma, (v.len() / b) as u64).unwrap();
            let lo = lo.min(v.len());
            let range = LengthRange::new(lo, b.min(v.len() - lo + 1));
            let reqs = collect_requests(&v, range, &table, &codec);
            prop_assert!(reqs.iter().all(|r| r.mask != 0));
            prop_assert_eq!(expand(&reqs, &codec, b), oracle_union(&v, range));

            // grouped buckets hold exactly the same bits per cell
            let mut sorted = reqs.clone();
            let grouped = group_requests(&mut sorted, codec.key_bits());
            let mut by_cell: BTreeMap<u128, u64> = BTreeMap::new();
            for r in &reqs {
                *by_cell.entry(r.key).or_default() |= r.mask;
            }
            prop_assert_eq!(grouped, by_cell.into_iter().collect::<Vec<_>>());

            // cell_of agrees with the bucket placement
            for p in oracle_union(&v, range) {
                let (cell, local) = cell_of(&p, b as u64);
                let key = codec.pack(&cell);
                prop_assert!(reqs.iter().any(|r| r.key == key && r.mask >> local.0 & 1 == 1));
            }
        }
    }
}
