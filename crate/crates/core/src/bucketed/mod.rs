//! Subquadratic LCAF for small alphabets.
//!
//! Factor lengths are processed in stages of at most `b` consecutive values,
//! longest first. In a stage every factor's Parikh vector is bucketed by its
//! cell `floor(P / b)`; a bucket is one 64-bit mask over the `b^sigma` local
//! positions `P mod b`. Both strings are scanned once per stage, emitting
//! per-position insertion requests looked up in a [`StepTable`]; requests
//! are grouped by cell with a radix sort and the buckets of the two strings
//! are intersected with a single AND per cell.

mod cell;
mod stage;
mod table;

pub use cell::{cell_of, point_of, CellCodec, CellId, LocalIndex};
pub use stage::{
    collect_requests, collect_requests_into, group_requests, solve_stage, InsertionRequest,
    LengthRange,
};
pub use table::{build_step_table, StepTable, TableRequest, DEFAULT_TABLE_CAP};

use crate::error::{Error, Result};
use crate::parikh::PlainString;
use crate::result::{find_window, LcafResult};

/// Bits in a bucket.
pub const WORD_BITS: usize = 64;

/// Largest `b >= 2` with `b^sigma <= 64`, if any.
pub fn select_b(sigma: usize) -> Option<usize> {
    let sigma = sigma.max(1);
    (2..=WORD_BITS)
        .rev()
        .find(|&b| table::cell_size(b, sigma).is_some())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BucketedConfig {
    /// Side length override; must satisfy `b^sigma <= 64`.
    pub b: Option<usize>,
    /// Cap on the number of lookup-table entries.
    pub table_cap: u64,
}

impl Default for BucketedConfig {
    fn default() -> Self {
        Self {
            b: None,
            table_cap: DEFAULT_TABLE_CAP,
        }
    }
}

/// Solver bound to one alphabet size; the lookup table is reused across
/// calls.
#[derive(Debug, Clone)]
pub struct BucketedSolver {
    table: StepTable,
}

impl BucketedSolver {
    pub fn new(sigma: usize, config: BucketedConfig) -> Result<Self> {
        let sigma = sigma.max(1);
        let b = match config.b {
            Some(b) => b,
            None => select_b(sigma).ok_or_else(|| Error::WordBudgetExceeded {
                reason: format!("no b >= 2 with b^{sigma} <= {WORD_BITS}"),
            })?,
        };
        Ok(Self {
            table: build_step_table(b, sigma, config.table_cap)?,
        })
    }

    pub fn b(&self) -> usize {
        self.table.b()
    }

    pub fn sigma(&self) -> usize {
        self.table.sigma()
    }

    pub fn table(&self) -> &StepTable {
        &self.table
    }

    pub fn solve(&self, s: &PlainString, t: &PlainString) -> Result<LcafResult> {
        let sigma = self.sigma();
        if s.sigma() > sigma || t.sigma() > sigma {
            return Err(Error::InvalidParameter(format!(
                "solver built for sigma={sigma}, inputs use {} and {}",
                s.sigma(),
                t.sigma()
            )));
        }
        let s = s.widened(sigma);
        let t = t.widened(sigma);
        let b = self.b();
        let max_len = s.len().min(t.len());
        let codec = CellCodec::for_max_coord(sigma, (max_len / b) as u64)?;

        let mut reqs_s = Vec::new();
        let mut reqs_t = Vec::new();
        // Ranges [r*b, r*b + b) clipped to max_len; longest first, so the
        // first hit is the answer.
        for r in (0..=max_len / b).rev() {
            let lo = r * b;
            let range = LengthRange::new(lo, b.min(max_len - lo + 1));
            reqs_s.clear();
            reqs_t.clear();
            collect_requests_into(&s, range, &self.table, &codec, &mut reqs_s);
            collect_requests_into(&t, range, &self.table, &codec, &mut reqs_t);
            if let Some(witness) = solve_stage(&mut reqs_s, &mut reqs_t, b, &codec) {
                let occ_s = find_window(&s, &witness).expect("witness occurs in s");
                let occ_t = find_window(&t, &witness).expect("witness occurs in t");
                return Ok(LcafResult {
                    length: witness.norm(),
                    witness,
                    occurrences: Some((occ_s, occ_t)),
                });
            }
        }
        // The zero vector is always common, so stage 0 always hits.
        unreachable!("the empty factor is common to every pair of strings")
    }
}

pub fn lcaf_bucketed(s: &PlainString, t: &PlainString) -> Result<LcafResult> {
    lcaf_bucketed_with(s, t, BucketedConfig::default())
}

pub fn lcaf_bucketed_with(
    s: &PlainString,
    t: &PlainString,
    config: BucketedConfig,
) -> Result<LcafResult> {
    BucketedSolver::new(s.sigma().max(t.sigma()), config)?.solve(s, t)
}
