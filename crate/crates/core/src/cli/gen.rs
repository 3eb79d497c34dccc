//! Seeded random inputs.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)`, so files and
//! benchmark inputs are stable across platforms and releases of `rand`.
//! Plain strings draw each symbol uniformly. RLE strings draw the first
//! symbol uniformly and each later one uniformly among the `sigma - 1`
//! symbols that differ from its predecessor; run lengths are uniform in
//! `1..=max_run`.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::parikh::PlainString;
use crate::rle::{Run, RleString};

use super::formats::{format_plain, format_rle};

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_sigma(sigma: usize) -> Result<()> {
    if sigma == 0 {
        return Err(Error::InvalidParameter("sigma must be positive".into()));
    }
    Ok(())
}

pub fn random_plain(rng: &mut impl Rng, n: usize, sigma: usize) -> Result<PlainString> {
    check_sigma(sigma)?;
    let ranks: Vec<u32> = (0..n).map(|_| rng.gen_range(0..sigma as u32)).collect();
    PlainString::from_ranks(&ranks, sigma)
}

pub fn random_rle(rng: &mut impl Rng, m: usize, sigma: usize, max_run: u64) -> Result<RleString> {
    check_sigma(sigma)?;
    if max_run == 0 {
        return Err(Error::InvalidParameter("max run length must be positive".into()));
    }
    if sigma == 1 && m > 1 {
        return Err(Error::InvalidParameter(
            "a single symbol admits at most one run".into(),
        ));
    }
    let mut runs: Vec<Run> = Vec::with_capacity(m);
    for _ in 0..m {
        let symbol = match runs.last() {
            None => rng.gen_range(0..sigma as u32),
            Some(prev) => {
                let c = rng.gen_range(0..sigma as u32 - 1);
                if c >= prev.symbol.0 {
                    c + 1
                } else {
                    c
                }
            }
        };
        runs.push(Run::new(symbol, rng.gen_range(1..=max_run)));
    }
    RleString::from_runs(runs, sigma)
}

/// `s` random of length `n`; `t` is `s` without its first `shift` symbols,
/// followed by `shift` fresh random symbols. The pair shares a factor of
/// length `n - shift`.
pub fn planted_pair(
    rng: &mut impl Rng,
    n: usize,
    sigma: usize,
    shift: usize,
) -> Result<(PlainString, PlainString)> {
    let s = random_plain(rng, n, sigma)?;
    let shift = shift.min(n);
    let tail = random_plain(rng, shift, sigma)?;
    let mut ranks: Vec<u32> = s.symbols()[shift..].iter().map(|c| c.0).collect();
    ranks.extend(tail.symbols().iter().map(|c| c.0));
    let t = PlainString::from_ranks(&ranks, sigma)?;
    Ok((s, t))
}

/// What `lcaf gen` writes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenShape {
    Plain { n: usize },
    Rle { m: usize, max_run: u64 },
}

pub fn gen_content(shape: GenShape, sigma: usize, seed: u64) -> Result<String> {
    let mut rng = rng_for(seed);
    match shape {
        GenShape::Plain { n } => format_plain(&random_plain(&mut rng, n, sigma)?),
        GenShape::Rle { m, max_run } => Ok(format_rle(&random_rle(&mut rng, m, sigma, max_run)?)),
    }
}
