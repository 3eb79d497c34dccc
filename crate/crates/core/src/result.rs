use serde::{Deserialize, Serialize};

use crate::parikh::{ParikhVector, PlainString};

/// Half-open range `[start, end)` of positions in a string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Span {
    pub start: u64,
    pub end: u64,
}

impl Span {
    pub fn new(start: u64, end: u64) -> Self {
        Self { start, end }
    }

    pub fn len(&self) -> u64 {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

/// Answer of an LCAF solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcafResult {
    pub length: u64,
    pub witness: ParikhVector,
    /// One occurrence of the witness in each input.
    pub occurrences: Option<(Span, Span)>,
}

impl LcafResult {
    /// The empty common factor.
    pub fn empty(sigma: usize) -> Self {
        Self {
            length: 0,
            witness: ParikhVector::zero(sigma),
            occurrences: Some((Span::new(0, 0), Span::new(0, 0))),
        }
    }
}

/// First window of `u` whose Parikh vector equals `target`, found with a
/// single sliding pass.
pub fn find_window(u: &PlainString, target: &ParikhVector) -> Option<Span> {
    let len = target.norm() as usize;
    if len > u.len() {
        return None;
    }
    let sigma = target.sigma().max(u.sigma());
    let target = target.widened(sigma);
    let syms = u.symbols();
    let mut window = ParikhVector::zero(sigma);
    for &s in &syms[..len] {
        window.increment(s);
    }
    // Number of coordinates where the window differs from the target.
    let mut diff = (0..sigma).filter(|&c| window[c] != target[c]).count();
    if diff == 0 {
        return Some(Span::new(0, len as u64));
    }
    for start in 1..=syms.len() - len {
        let out = syms[start - 1].index();
        let inn = syms[start + len - 1].index();
        if out != inn {
            for (c, delta) in [(out, -1i64), (inn, 1)] {
                let before = window[c] == target[c];
                window[c] = (window[c] as i64 + delta) as u64;
                let after = window[c] == target[c];
                match (before, after) {
                    (true, false) => diff += 1,
                    (false, true) => diff -= 1,
                    _ => {}
                }
            }
        }
        if diff == 0 {
            return Some(Span::new(start as u64, (start + len) as u64));
        }
    }
    None
}
