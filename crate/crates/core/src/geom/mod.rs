//! Sweep-line RLE-LCAF for alphabets of two or three symbols.
//!
//! Binary inputs are solved directly from the envelopes of their Parikh
//! sets. Otherwise the norm-`l` rectangle families of both strings are
//! batched into instances of the maximal-norm rectangle intersection
//! problem, which are solved by plane or space sweeps.

mod envelope;
mod range_tree;
mod reduction;
mod sweep2d;
mod sweep3d;

pub use envelope::{envelopes_binary, lcaf_rle_binary, StepFunction};
pub use range_tree::RangeTree;
pub use reduction::{normalize, reduction_instances, GeomInstance, ReductionInstances};
pub use sweep2d::solve_2d;
pub use sweep3d::solve_3d;

use crate::cubic::finish_rle;
use crate::error::{Error, Result};
use crate::parikh::ParikhVector;
use crate::result::LcafResult;
use crate::rle::{renumber_alphabet, RleString};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GeomConfig {
    /// Solve binary inputs through the instance pipeline instead of the
    /// envelopes.
    pub force_sweep: bool,
}

/// Best common point over all reduction instances of two strings on the
/// same alphabet of two or three symbols.
pub fn sweep_all_instances(s: &RleString, t: &RleString) -> Result<Option<(Vec<u64>, u64)>> {
    let solve = match s.sigma() {
        2 => solve_2d,
        3 => solve_3d,
        d => {
            return Err(Error::UnsupportedAlphabet {
                sigma: d,
                reason: "the sweep solvers handle two or three symbols",
            })
        }
    };
    let mut best: Option<(Vec<u64>, u64)> = None;
    for inst in reduction_instances(s, t)? {
        if let Some((p, n)) = solve(&normalize(&inst))? {
            if best.as_ref().is_none_or(|b| n > b.1) {
                best = Some((p, n));
            }
        }
    }
    Ok(best)
}

pub fn lcaf_rle_geometric(s: &RleString, t: &RleString) -> Result<LcafResult> {
    lcaf_rle_geometric_with(s, t, GeomConfig::default())
}

pub fn lcaf_rle_geometric_with(s: &RleString, t: &RleString, config: GeomConfig) -> Result<LcafResult> {
    let sigma = s.sigma().max(t.sigma());
    let (s2, t2, map) = renumber_alphabet(s, t);
    let k = map.len();
    if k > 3 {
        return Err(Error::UnsupportedAlphabet {
            sigma: k,
            reason: "more than three distinct symbols; use the cubic solver",
        });
    }
    if k <= 2 && !config.force_sweep {
        return lcaf_rle_binary(s, t);
    }
    let d = k.max(2);
    let (s2, t2) = (s2.widened(d), t2.widened(d));
    let Some((point, _)) = sweep_all_instances(&s2, &t2)? else {
        return Ok(LcafResult::empty(sigma));
    };
    Ok(finish_rle(&s2, &t2, &map, sigma, ParikhVector::from_counts(point)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::lcaf_rle_cubic;
    use crate::oracle::{lcaf_oracle, rect_points_oracle};
    use crate::parikh::PlainString;
    use crate::rle::rle_encode;
    use proptest::prelude::*;

    fn enc(text: &str, sigma: usize) -> RleString {
        rle_encode(&PlainString::from_letters(text, sigma).unwrap())
    }

    #[test]
    fn geometric_examples() {
        let s = enc("aabbbc", 3);
        let t = enc("cbba", 3);
        assert_eq!(lcaf_rle_geometric(&s, &t).unwrap().length, 3);
        assert_eq!(lcaf_rle_geometric(&s, &s).unwrap().length, 6);
        let forced = GeomConfig { force_sweep: true };
        let b = enc("aabab", 2);
        assert_eq!(lcaf_rle_geometric_with(&b, &b, forced).unwrap().length, 5);
        let e = enc("", 3);
        assert_eq!(lcaf_rle_geometric(&s, &e).unwrap().length, 0);
        assert_eq!(lcaf_rle_geometric_with(&s, &e, forced).unwrap().length, 0);
        let four = enc("abcd", 4);
        assert!(matches!(
            lcaf_rle_geometric(&four, &four),
            Err(Error::UnsupportedAlphabet { .. })
        ));
    }

    fn rle_strategy(sigma: u32) -> impl Strategy<Value = RleString> {
        prop::collection::vec((0..sigma, 1u64..6), 0..=10).prop_map(move |pairs| {
            let mut runs: Vec<(u32, u64)> = Vec::new();
            for (c, l) in pairs {
                match runs.last_mut() {
                    Some(last) if last.0 == c => last.1 += l,
                    _ => runs.push((c, l)),
                }
            }
            RleString::from_pairs(&runs, sigma as usize).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn three_symbols_match_oracle_and_cubic(s in rle_strategy(3), t in rle_strategy(3)) {
            let got = lcaf_rle_geometric(&s, &t).unwrap();
            let want = lcaf_oracle(&s.decode(), &t.decode()).length;
            prop_assert_eq!(got.length, want);
            prop_assert_eq!(lcaf_rle_cubic(&s, &t).length, want);
            let (os, ot) = got.occurrences.unwrap();
            prop_assert_eq!((os.len(), ot.len()), (want, want));
        }

        #[test]
        fn forced_sweep_matches_envelopes(s in rle_strategy(2), t in rle_strategy(2)) {
            let forced = lcaf_rle_geometric_with(&s, &t, GeomConfig { force_sweep: true }).unwrap();
            prop_assert_eq!(forced.length, lcaf_rle_binary(&s, &t).unwrap().length);
        }

        #[test]
        fn instance_answers_are_genuine(s in rle_strategy(3), t in rle_strategy(3)) {
            // stale rectangles may linger in an instance; their points must
            // still be Parikh vectors of factors
            let (s, t) = (s.widened(3), t.widened(3));
            let ps = rect_points_oracle(&s).unwrap();
            let pt = rect_points_oracle(&t).unwrap();
            for inst in reduction_instances(&s, &t).unwrap() {
                if let Some((p, _)) = solve_3d(&normalize(&inst)).unwrap() {
                    let p = ParikhVector::from_counts(p);
                    prop_assert!(ps.contains(&p) && pt.contains(&p));
                }
            }
        }
    }
}
