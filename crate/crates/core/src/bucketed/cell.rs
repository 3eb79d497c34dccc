//! Subdivision of `Z^sigma` into cubes of side `b`.

use crate::error::{Error, Result};
use crate::parikh::ParikhVector;

/// `floor(P / b)` componentwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellId {
    pub coords: Vec<u64>,
}

/// `P mod b` packed in mixed radix: `sum rems[c] * b^c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalIndex(pub u64);

impl LocalIndex {
    pub fn pack(rems: &[u64], b: u64) -> Self {
        LocalIndex(rems.iter().rev().fold(0, |acc, &r| acc * b + r))
    }

    pub fn unpack(self, b: u64, sigma: usize) -> Vec<u64> {
        let mut x = self.0;
        (0..sigma)
            .map(|_| {
                let r = x % b;
                x /= b;
                r
            })
            .collect()
    }
}

pub fn cell_of(p: &ParikhVector, b: u64) -> (CellId, LocalIndex) {
    assert!(b >= 1, "side length must be positive");
    let coords = p.counts().iter().map(|&x| x / b).collect();
    let rems: Vec<u64> = p.counts().iter().map(|&x| x % b).collect();
    (CellId { coords }, LocalIndex::pack(&rems, b))
}

/// Inverse of [`cell_of`].
pub fn point_of(cell: &CellId, local: LocalIndex, b: u64) -> ParikhVector {
    let rems = local.unpack(b, cell.coords.len());
    ParikhVector::from_counts(cell.coords.iter().zip(rems).map(|(c, r)| c * b + r).collect())
}

/// Packs a [`CellId`] into one integer, `bits` bits per coordinate, so that
/// cells can be grouped by radix sorting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CellCodec {
    sigma: usize,
    bits: u32,
}

impl CellCodec {
    /// Codec for cells whose coordinates never exceed `max_coord`.
    pub fn for_max_coord(sigma: usize, max_coord: u64) -> Result<Self> {
        let bits = (u64::BITS - max_coord.leading_zeros()).max(1);
        if sigma as u32 * bits > u128::BITS {
            return Err(Error::WordBudgetExceeded {
                reason: format!(
                    "cell ids need {} bits per coordinate over {sigma} symbols",
                    bits
                ),
            });
        }
        Ok(Self { sigma, bits })
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// Total bits used by a packed key.
    pub fn key_bits(&self) -> u32 {
        self.sigma as u32 * self.bits
    }

    /// Key increment for one step along coordinate `c`.
    #[inline]
    pub fn unit(&self, c: usize) -> u128 {
        1u128 << (self.bits * c as u32)
    }

    pub fn pack(&self, cell: &CellId) -> u128 {
        cell.coords
            .iter()
            .enumerate()
            .fold(0, |acc, (c, &x)| acc | (u128::from(x) << (self.bits * c as u32)))
    }

    pub fn unpack(&self, key: u128) -> CellId {
        let mask = (1u128 << self.bits) - 1;
        CellId {
            coords: (0..self.sigma)
                .map(|c| ((key >> (self.bits * c as u32)) & mask) as u64)
                .collect(),
        }
    }

    /// Sum of the coordinates of a packed cell.
    pub fn coord_sum(&self, key: u128) -> u64 {
        let mask = (1u128 << self.bits) - 1;
        (0..self.sigma)
            .map(|c| ((key >> (self.bits * c as u32)) & mask) as u64)
            .sum()
    }
}
