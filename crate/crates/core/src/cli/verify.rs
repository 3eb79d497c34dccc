//! Randomized cross-check of the solvers against the brute-force oracle.

use std::fmt;

use rand::Rng;
use rayon::prelude::*;

use crate::bucketed::lcaf_bucketed;
use crate::cubic::lcaf_rle_cubic;
use crate::error::{Error, Result};
use crate::geom::{lcaf_rle_binary, lcaf_rle_geometric};
use crate::oracle::lcaf_oracle;
use crate::parikh::{parikh, PlainString};
use crate::result::LcafResult;
use crate::rle::RleString;

use super::formats::{format_plain, format_rle};
use super::gen::{random_plain, random_rle, rng_for};

pub type PlainSolver = fn(&PlainString, &PlainString) -> Result<LcafResult>;
pub type RleSolver = fn(&RleString, &RleString) -> Result<LcafResult>;

#[derive(Debug, Clone, Copy)]
pub enum SolverFn {
    Plain(PlainSolver),
    Rle(RleSolver),
}

/// A solver under test and the largest alphabet it accepts.
#[derive(Debug, Clone, Copy)]
pub struct NamedSolver {
    pub name: &'static str,
    pub max_sigma: usize,
    pub run: SolverFn,
}

fn oracle_plain(s: &PlainString, t: &PlainString) -> Result<LcafResult> {
    Ok(lcaf_oracle(s, t))
}

fn cubic(s: &RleString, t: &RleString) -> Result<LcafResult> {
    Ok(lcaf_rle_cubic(s, t))
}

pub const SOLVER_NAMES: [&str; 5] = ["oracle", "bucketed", "cubic", "geometric", "binary"];

pub fn solver_by_name(name: &str) -> Result<NamedSolver> {
    let (max_sigma, run) = match name {
        "oracle" => (usize::MAX, SolverFn::Plain(oracle_plain as PlainSolver)),
        "bucketed" => (6, SolverFn::Plain(lcaf_bucketed as PlainSolver)),
        "cubic" => (usize::MAX, SolverFn::Rle(cubic as RleSolver)),
        "geometric" => (3, SolverFn::Rle(lcaf_rle_geometric as RleSolver)),
        "binary" => (2, SolverFn::Rle(lcaf_rle_binary as RleSolver)),
        _ => {
            return Err(Error::InvalidParameter(format!(
                "unknown solver `{name}`, expected one of {}",
                SOLVER_NAMES.join(", ")
            )))
        }
    };
    let name = SOLVER_NAMES.iter().find(|&&n| n == name).expect("matched above");
    Ok(NamedSolver {
        name,
        max_sigma,
        run,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub trials: u64,
    pub n_max: usize,
    pub m_max: usize,
    pub max_run: u64,
    pub sigma_set: Vec<usize>,
    pub seed: u64,
    pub parallel: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            trials: 1000,
            n_max: 60,
            m_max: 12,
            max_run: 6,
            sigma_set: vec![2, 3, 4],
            seed: 0,
            parallel: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub trial: u64,
    pub algo: &'static str,
    pub sigma: usize,
    pub s: String,
    pub t: String,
    pub expected: u64,
    pub got: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mismatch in trial {} for {} (sigma={})", self.trial, self.algo, self.sigma)?;
        writeln!(f, "  s: {}", self.s)?;
        writeln!(f, "  t: {}", self.t)?;
        writeln!(f, "  oracle: {}", self.expected)?;
        write!(f, "  {}: {}", self.algo, self.got)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub trials: u64,
    /// Solver runs compared against the oracle.
    pub checks: u64,
    /// Failure with the lowest trial index, if any.
    pub counterexample: Option<Counterexample>,
}

/// Problems with a result, given the oracle length and the decoded inputs.
fn judge(got: &Result<LcafResult>, expected: u64, s: &PlainString, t: &PlainString) -> Option<String> {
    let r = match got {
        Err(e) => return Some(format!("error: {e}")),
        Ok(r) => r,
    };
    if r.length != expected {
        return Some(format!("length {}", r.length));
    }
    if r.witness.norm() != r.length {
        return Some(format!("witness {} has norm {}", r.witness, r.witness.norm()));
    }
    let Some((os, ot)) = r.occurrences else {
        return Some("no occurrences reported".into());
    };
    for (u, span) in [(s, os), (t, ot)] {
        if span.end as usize > u.len() || span.start > span.end {
            return Some(format!("occurrence {}..{} out of range", span.start, span.end));
        }
        let p = parikh(&u.slice(span.start as usize, span.end as usize)).widened(r.witness.sigma());
        if p != r.witness {
            return Some(format!("occurrence {}..{} has vector {}, witness {}", span.start, span.end, p, r.witness));
        }
    }
    None
}

fn show_plain(u: &PlainString) -> String {
    format_plain(u).map_or_else(|_| format!("{:?}", u.symbols()), |s| s.trim_end().to_string())
}

fn show_rle(v: &RleString) -> String {
    format_rle(v).trim_end().replace('\n', "; ")
}

fn run_trial(config: &VerifyConfig, solvers: &[NamedSolver], trial: u64) -> Result<(u64, Option<Counterexample>)> {
    let mut rng = rng_for(config.seed);
    rng.set_stream(trial);
    let sigma = config.sigma_set[rng.gen_range(0..config.sigma_set.len())];
    let ns = rng.gen_range(0..=config.n_max);
    let nt = rng.gen_range(0..=config.n_max);
    let ps = random_plain(&mut rng, ns, sigma)?;
    let pt = random_plain(&mut rng, nt, sigma)?;
    let m_cap = if sigma == 1 { config.m_max.min(1) } else { config.m_max };
    let ms = rng.gen_range(0..=m_cap);
    let mt = rng.gen_range(0..=m_cap);
    let rs = random_rle(&mut rng, ms, sigma, config.max_run)?;
    let rt = random_rle(&mut rng, mt, sigma, config.max_run)?;
    let (ds, dt) = (rs.decode(), rt.decode());

    let mut plain_expected = None;
    let mut rle_expected = None;
    let mut checks = 0;
    for solver in solvers.iter().filter(|s| sigma <= s.max_sigma) {
        checks += 1;
        let (got, expected, s, t, shown) = match solver.run {
            SolverFn::Plain(f) => {
                let e = *plain_expected.get_or_insert_with(|| lcaf_oracle(&ps, &pt).length);
                (f(&ps, &pt), e, &ps, &pt, (show_plain(&ps), show_plain(&pt)))
            }
            SolverFn::Rle(f) => {
                let e = *rle_expected.get_or_insert_with(|| lcaf_oracle(&ds, &dt).length);
                (f(&rs, &rt), e, &ds, &dt, (show_rle(&rs), show_rle(&rt)))
            }
        };
        if let Some(problem) = judge(&got, expected, s, t) {
            return Ok((
                checks,
                Some(Counterexample {
                    trial,
                    algo: solver.name,
                    sigma,
                    s: shown.0,
                    t: shown.1,
                    expected,
                    got: problem,
                }),
            ));
        }
    }
    Ok((checks, None))
}

/// Runs `config.trials` random trials. Trial `k` draws its inputs from the
/// seeded generator on stream `k`, so results do not depend on
/// parallelism.
pub fn verify(config: &VerifyConfig, solvers: &[NamedSolver]) -> Result<VerifyReport> {
    if config.sigma_set.is_empty() || config.sigma_set.contains(&0) {
        return Err(Error::InvalidParameter("sigma set must be non-empty and positive".into()));
    }
    let outcomes: Vec<(u64, Option<Counterexample>)> = if config.parallel {
        (0..config.trials)
            .into_par_iter()
            .map(|k| run_trial(config, solvers, k))
            .collect::<Result<_>>()?
    } else {
        let mut out = Vec::new();
        for k in 0..config.trials {
            let o = run_trial(config, solvers, k)?;
            let stop = o.1.is_some();
            out.push(o);
            if stop {
                break;
            }
        }
        out
    };
    let checks = outcomes.iter().map(|o| o.0).sum();
    let counterexample = outcomes.into_iter().find_map(|o| o.1);
    Ok(VerifyReport {
        trials: config.trials,
        checks,
        counterexample,
    })
}
