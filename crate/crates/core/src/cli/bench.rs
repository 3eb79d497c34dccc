//! Timing harness with CSV output.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::parikh::PlainString;
use crate::rle::{rle_encode, RleString};

use super::gen::{planted_pair, random_plain, random_rle, rng_for};
use super::verify::{NamedSolver, SolverFn};

pub const CSV_HEADER: &str = "algo,n,m,sigma,seed,rep,time_ns,answer";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    /// Input sizes: string length for plain solvers, runs for RLE solvers.
    pub sizes: Vec<usize>,
    pub sigma: usize,
    pub seed: u64,
    pub reps: usize,
    pub max_run: u64,
    /// For plain solvers, make `t` a shifted copy of `s` with this many
    /// fresh symbols appended instead of an independent string.
    pub planted: Option<usize>,
    /// Leave `time_ns` empty, for reproducible output.
    pub timing: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub algo: &'static str,
    pub n: u64,
    pub m: usize,
    pub sigma: usize,
    pub seed: u64,
    pub rep: usize,
    pub time_ns: Option<u128>,
    pub answer: u64,
}

impl BenchRow {
    pub fn to_csv(&self) -> String {
        let time = self.time_ns.map_or(String::new(), |t| t.to_string());
        format!(
            "{},{},{},{},{},{},{},{}",
            self.algo, self.n, self.m, self.sigma, self.seed, self.rep, time, self.answer
        )
    }
}

enum Input {
    Plain(PlainString, PlainString),
    Rle(RleString, RleString),
}

fn make_input(solver: &NamedSolver, config: &BenchConfig, size: usize) -> Result<Input> {
    let mut rng = rng_for(config.seed);
    rng.set_stream(size as u64);
    Ok(match solver.run {
        SolverFn::Plain(_) => match config.planted {
            Some(shift) => {
                let (s, t) = planted_pair(&mut rng, size, config.sigma, shift)?;
                Input::Plain(s, t)
            }
            None => Input::Plain(
                random_plain(&mut rng, size, config.sigma)?,
                random_plain(&mut rng, size, config.sigma)?,
            ),
        },
        SolverFn::Rle(_) => Input::Rle(
            random_rle(&mut rng, size, config.sigma, config.max_run)?,
            random_rle(&mut rng, size, config.sigma, config.max_run)?,
        ),
    })
}

/// One warm-up run, then `reps` timed runs per size.
pub fn bench(solver: &NamedSolver, config: &BenchConfig) -> Result<Vec<BenchRow>> {
    if config.reps == 0 {
        return Err(Error::InvalidParameter("--reps must be at least 1".into()));
    }
    if config.sigma > solver.max_sigma {
        return Err(Error::InvalidParameter(format!(
            "{} supports at most {} symbols",
            solver.name, solver.max_sigma
        )));
    }
    let mut rows = Vec::new();
    for &size in &config.sizes {
        let input = make_input(solver, config, size)?;
        let (n, m) = match &input {
            Input::Plain(s, _) => (s.len() as u64, rle_encode(s).m()),
            Input::Rle(s, _) => (s.n(), s.m()),
        };
        let run_once = || -> Result<(u128, u64)> {
            let start = Instant::now();
            let r = match (&input, solver.run) {
                (Input::Plain(s, t), SolverFn::Plain(f)) => f(s, t)?,
                (Input::Rle(s, t), SolverFn::Rle(f)) => f(s, t)?,
                _ => unreachable!("input shape follows the solver"),
            };
            Ok((start.elapsed().as_nanos(), r.length))
        };
        let (_, warm) = run_once()?;
        for rep in 0..config.reps {
            let (time, answer) = run_once()?;
            if answer != warm {
                return Err(Error::InvalidParameter(format!(
                    "{} returned {answer} then {warm} on the same input",
                    solver.name
                )));
            }
            rows.push(BenchRow {
                algo: solver.name,
                n,
                m,
                sigma: config.sigma,
                seed: config.seed,
                rep,
                time_ns: config.timing.then_some(time),
                answer,
            });
        }
    }
    Ok(rows)
}

pub fn median(values: &mut [u128]) -> Option<u128> {
    if values.is_empty() {
        return None;
    }
    values.sort_unstable();
    let k = values.len() / 2;
    Some(if values.len() % 2 == 1 {
        values[k]
    } else {
        (values[k - 1] + values[k]) / 2
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::verify::solver_by_name;

    fn config(reps: usize) -> BenchConfig {
        BenchConfig {
            sizes: vec![5, 10],
            sigma: 3,
            seed: 4,
            reps,
            max_run: 6,
            planted: None,
            timing: false,
        }
    }

    #[test]
    fn rows_are_reproducible_without_timing() {
        let cubic = solver_by_name("cubic").unwrap();
        let a = bench(&cubic, &config(2)).unwrap();
        assert_eq!(a.len(), 4);
        assert_eq!(a, bench(&cubic, &config(2)).unwrap());
        assert!(a[0].to_csv().starts_with("cubic,"));
        assert!(a[0].to_csv().contains(",,"));
        assert_eq!(a[0].m, 5);
    }

    #[test]
    fn zero_reps_and_wide_alphabets_are_rejected() {
        let cubic = solver_by_name("cubic").unwrap();
        assert!(bench(&cubic, &config(0)).is_err());
        let binary = solver_by_name("binary").unwrap();
        assert!(bench(&binary, &config(1)).is_err());
    }

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median(&mut [3, 1, 2]), Some(2));
        assert_eq!(median(&mut [4, 1, 2, 3]), Some(2));
        assert_eq!(median(&mut []), None);
    }
}
