//! Precomputed insertion requests for one step of the bucketing pass.
//!
//! A step starts from a factor `u0` with `P(u0) mod b = Q` and extends it by
//! `k < b` symbols. The cells touched by the `k + 1` prefixes, relative to the
//! cell of `u0`, and the local bits set in each, depend only on `Q` and the
//! extension symbols, so they are tabulated once per `(b, sigma)`.
//!
//! Keys are packed as `Q | ext_code`, where `ext_code` stores the extension
//! symbols `ceil(log2 sigma)` bits apiece, first symbol lowest. Each
//! extension count `k` owns a contiguous block of the table.

use crate::error::{Error, Result};
use crate::parikh::Symbol;

use super::cell::LocalIndex;

/// Default cap on the number of table entries.
pub const DEFAULT_TABLE_CAP: u64 = 1 << 24;

/// One merged request: cell offset in `{0,1}^sigma` (bit `c` set when the
/// cell moved along coordinate `c`) and the local bits to set there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableRequest {
    pub offset: u8,
    pub mask: u64,
}

impl TableRequest {
    pub fn offset_vec(&self, sigma: usize) -> Vec<u64> {
        (0..sigma).map(|c| u64::from(self.offset >> c & 1)).collect()
    }
}

#[derive(Debug, Clone)]
pub struct StepTable {
    b: usize,
    sigma: usize,
    cell_size: usize,
    sym_bits: u32,
    ext_base: Vec<usize>,
    start: Vec<u32>,
    reqs: Vec<TableRequest>,
}

pub(crate) fn ceil_log2(x: usize) -> u32 {
    if x <= 1 {
        0
    } else {
        usize::BITS - (x - 1).leading_zeros()
    }
}

/// `b^sigma` if it fits a 64-bit bucket.
pub(crate) fn cell_size(b: usize, sigma: usize) -> Option<usize> {
    let mut acc = 1usize;
    for _ in 0..sigma {
        acc = acc.checked_mul(b)?;
        if acc > 64 {
            return None;
        }
    }
    Some(acc)
}

pub fn build_step_table(b: usize, sigma: usize, cap: u64) -> Result<StepTable> {
    if b == 0 || sigma == 0 {
        return Err(Error::InvalidParameter(format!(
            "step table needs b >= 1 and sigma >= 1 (got b={b}, sigma={sigma})"
        )));
    }
    let cell_size = cell_size(b, sigma).ok_or_else(|| Error::WordBudgetExceeded {
        reason: format!("{b}^{sigma} local bits do not fit a 64-bit bucket"),
    })?;
    if b > 1 && sigma > 8 {
        return Err(Error::WordBudgetExceeded {
            reason: format!("cell offsets over {sigma} symbols"),
        });
    }
    let sym_bits = ceil_log2(sigma);

    let mut ext_base = Vec::with_capacity(b);
    let mut codes: u128 = 0;
    for k in 0..b {
        ext_base.push(codes as usize);
        codes += 1u128 << (sym_bits as usize * k).min(127);
    }
    let needed = codes.saturating_mul(cell_size as u128);
    if needed > u128::from(cap) {
        return Err(Error::TableTooLarge {
            needed: needed.min(u128::from(u64::MAX)) as u64,
            cap,
        });
    }
    let entries = needed as usize;

    let mut start = Vec::with_capacity(entries + 1);
    let mut reqs = Vec::with_capacity(entries * 2);
    let sym_mask = (1usize << sym_bits) - 1;
    let mut rems = vec![0usize; sigma];
    for k in 0..b {
        for code in 0..(1usize << (sym_bits as usize * k)) {
            let ext: Option<Vec<usize>> = (0..k)
                .map(|i| {
                    let c = (code >> (sym_bits as usize * i)) & sym_mask;
                    (c < sigma).then_some(c)
                })
                .collect();
            for q in 0..cell_size {
                start.push(reqs.len() as u32);
                let Some(ext) = ext.as_ref() else { continue };
                let mut x = q;
                for r in rems.iter_mut() {
                    *r = x % b;
                    x /= b;
                }
                let entry_start = reqs.len();
                let mut offset = 0u8;
                reqs.push(TableRequest {
                    offset,
                    mask: 1u64 << q,
                });
                for &c in ext {
                    rems[c] += 1;
                    if rems[c] == b {
                        rems[c] = 0;
                        offset |= 1 << c;
                    }
                    let idx = rems.iter().rev().fold(0, |acc, &r| acc * b + r);
                    let last = reqs.last_mut().expect("entry has its base request");
                    if last.offset == offset {
                        last.mask |= 1u64 << idx;
                    } else {
                        reqs.push(TableRequest {
                            offset,
                            mask: 1u64 << idx,
                        });
                    }
                }
                debug_assert!(reqs.len() - entry_start <= sigma + 1);
            }
        }
    }
    start.push(reqs.len() as u32);
    Ok(StepTable {
        b,
        sigma,
        cell_size,
        sym_bits,
        ext_base,
        start,
        reqs,
    })
}

impl StepTable {
    pub fn b(&self) -> usize {
        self.b
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// `b^sigma`.
    pub fn cell_size(&self) -> usize {
        self.cell_size
    }

    pub fn sym_bits(&self) -> u32 {
        self.sym_bits
    }

    pub fn entries(&self) -> usize {
        self.start.len() - 1
    }

    /// Requests for local index `q` extended by `k` symbols packed in `code`.
    #[inline]
    pub fn entry(&self, q: usize, k: usize, code: usize) -> &[TableRequest] {
        let idx = (self.ext_base[k] + code) * self.cell_size + q;
        &self.reqs[self.start[idx] as usize..self.start[idx + 1] as usize]
    }

    /// Requests for `q` extended by the given symbols, `ext.len() < b`.
    pub fn lookup(&self, q: LocalIndex, ext: &[Symbol]) -> &[TableRequest] {
        assert!(ext.len() < self.b, "at most b-1 extension symbols");
        let code = ext
            .iter()
            .enumerate()
            .fold(0usize, |acc, (i, s)| acc | (s.index() << (self.sym_bits as usize * i)));
        self.entry(q.0 as usize, ext.len(), code)
    }
}
