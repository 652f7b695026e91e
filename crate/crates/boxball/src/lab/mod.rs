//! Exhaustive verification suites.
//!
//! Every suite enumerates its instances in a fixed order, splits them into a fixed
//! number of chunks and merges the chunk results in chunk order. The worker count
//! only decides how many chunks run at once, so reports do not depend on it.

mod random;
mod suites;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;
use std::time::Instant;

use boxball_core::permutation::{factorial, Permutations};
use boxball_core::Permutation;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use random::gapped_configurations;

/// Number of work chunks per suite, independent of the worker count.
const CHUNKS: u64 = 64;

/// Witnesses kept per report; `violation_count` still counts all of them.
pub const MAX_WITNESSES: usize = 100;

/// Random gapped configurations checked per `n` by the suites that use them.
pub const RANDOM_CONFIGURATIONS: usize = 1000;

/// Largest `n` accepted when `BOXBALL_MAX_N` is unset.
pub const DEFAULT_MAX_N: usize = 9;

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error(transparent)]
    Core(#[from] boxball_core::Error),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("n = {n} is outside 1..={max} (raise BOXBALL_MAX_N to allow more)")]
    SizeOutOfRange { n: usize, max: usize },
    #[error("could not build worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type LabResult<T> = Result<T, LabError>;

/// A failed check, with the instance that broke it.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Violation {
    pub check: String,
    pub witness: String,
    pub expected: Value,
    pub actual: Value,
}

/// Outcome of one suite at one size.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub n: usize,
    pub checked: u64,
    pub violation_count: u64,
    /// At most [`MAX_WITNESSES`] of the violations, in enumeration order.
    pub violations: Vec<Violation>,
    /// Per-suite statistics and conjecture evidence. Never affects `pass`.
    pub evidence: BTreeMap<String, Value>,
    /// Only filled when timing is requested, so reports stay reproducible.
    pub wall_time_s: Option<f64>,
    pub pass: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Suite {
    QInvariance,
    FirstSoliton,
    LocalSchensted,
    LShaped,
    Involutions,
    PatternGoodness,
    SstBounds,
    DualKnuth,
    BenderKnuth,
    SteadyDetectors,
    Carrier,
    Rs,
    CountGood,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::QInvariance,
        Suite::FirstSoliton,
        Suite::LocalSchensted,
        Suite::LShaped,
        Suite::Involutions,
        Suite::PatternGoodness,
        Suite::SstBounds,
        Suite::DualKnuth,
        Suite::BenderKnuth,
        Suite::SteadyDetectors,
        Suite::Carrier,
        Suite::Rs,
        Suite::CountGood,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::QInvariance => "q-invariance",
            Suite::FirstSoliton => "first-soliton",
            Suite::LocalSchensted => "local-schensted",
            Suite::LShaped => "l-shaped",
            Suite::Involutions => "involutions",
            Suite::PatternGoodness => "pattern-goodness",
            Suite::SstBounds => "sst-bounds",
            Suite::DualKnuth => "dual-knuth",
            Suite::BenderKnuth => "bender-knuth",
            Suite::SteadyDetectors => "steady-detectors",
            Suite::Carrier => "carrier",
            Suite::Rs => "rs",
            Suite::CountGood => "count-good",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = LabError;

    fn from_str(s: &str) -> LabResult<Suite> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| LabError::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct LabOptions {
    pub jobs: usize,
    pub max_n: usize,
    pub timing: bool,
}

impl Default for LabOptions {
    fn default() -> Self {
        LabOptions {
            jobs: 1,
            max_n: DEFAULT_MAX_N,
            timing: false,
        }
    }
}

impl LabOptions {
    /// Defaults, with `max_n` read from `BOXBALL_MAX_N` when it parses.
    pub fn from_env() -> Self {
        let max_n = std::env::var("BOXBALL_MAX_N")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_N);
        LabOptions {
            max_n,
            ..LabOptions::default()
        }
    }

    pub fn with_jobs(self, jobs: usize) -> Self {
        LabOptions {
            jobs: jobs.max(1),
            ..self
        }
    }
}

/// Runs `suite` over size `n`.
pub fn verify(suite: Suite, n: usize, opts: &LabOptions) -> LabResult<VerificationReport> {
    if n == 0 || n > opts.max_n {
        return Err(LabError::SizeOutOfRange { n, max: opts.max_n });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()?;
    let start = Instant::now();
    let (findings, evidence) = pool.install(|| suites::run(suite, n))?;
    let mut report = findings.into_report(suite, n, evidence);
    if opts.timing {
        report.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    Ok(report)
}

pub fn verify_q_invariance(n: usize) -> LabResult<VerificationReport> {
    verify(Suite::QInvariance, n, &LabOptions::default())
}

pub fn verify_first_soliton(n: usize) -> LabResult<VerificationReport> {
    verify(Suite::FirstSoliton, n, &LabOptions::default())
}

pub fn verify_sst_bounds(n: usize) -> LabResult<VerificationReport> {
    verify(Suite::SstBounds, n, &LabOptions::default())
}

pub fn verify_l_shaped(n: usize) -> LabResult<VerificationReport> {
    verify(Suite::LShaped, n, &LabOptions::default())
}

pub fn verify_pattern_goodness(n: usize) -> LabResult<VerificationReport> {
    verify(Suite::PatternGoodness, n, &LabOptions::default())
}

/// Checks and violations gathered by one chunk, or by all of them once merged.
#[derive(Default, Debug)]
pub(crate) struct Findings {
    checked: u64,
    violation_count: u64,
    violations: Vec<Violation>,
}

impl Findings {
    pub(crate) fn instance(&mut self) {
        self.checked += 1;
    }

    /// Records a violation of `check` unless `expected == actual`.
    pub(crate) fn expect<T: PartialEq + Serialize>(
        &mut self,
        check: &str,
        witness: &dyn fmt::Display,
        expected: T,
        actual: T,
    ) {
        if expected != actual {
            self.fail(check, witness, expected, actual);
        }
    }

    pub(crate) fn expect_true(&mut self, check: &str, witness: &dyn fmt::Display, ok: bool) {
        if !ok {
            self.fail(check, witness, true, false);
        }
    }

    pub(crate) fn fail<T: Serialize, U: Serialize>(
        &mut self,
        check: &str,
        witness: &dyn fmt::Display,
        expected: T,
        actual: U,
    ) {
        self.violation_count += 1;
        if self.violations.len() < MAX_WITNESSES {
            self.violations.push(Violation {
                check: check.to_string(),
                witness: witness.to_string(),
                expected: serde_json::to_value(expected).unwrap_or(Value::Null),
                actual: serde_json::to_value(actual).unwrap_or(Value::Null),
            });
        }
    }

    pub(crate) fn merge(&mut self, other: Findings) {
        self.checked += other.checked;
        self.violation_count += other.violation_count;
        let room = MAX_WITNESSES - self.violations.len().min(MAX_WITNESSES);
        self.violations
            .extend(other.violations.into_iter().take(room));
    }

    fn into_report(
        self,
        suite: Suite,
        n: usize,
        evidence: BTreeMap<String, Value>,
    ) -> VerificationReport {
        VerificationReport {
            suite: suite.name().to_string(),
            n,
            checked: self.checked,
            violation_count: self.violation_count,
            pass: self.violation_count == 0,
            violations: self.violations,
            evidence,
            wall_time_s: None,
        }
    }
}

/// Splits `0..total` into [`CHUNKS`] ranges, runs `f` on each in the current pool and
/// returns the results in range order.
pub(crate) fn chunked<R, F>(total: u64, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(Range<u64>) -> R + Sync,
{
    (0..CHUNKS)
        .into_par_iter()
        .map(|i| f(i * total / CHUNKS..(i + 1) * total / CHUNKS))
        .collect()
}

/// The permutations of `S_n` with lexicographic rank in `range`.
pub(crate) fn permutation_range(n: usize, range: Range<u64>) -> impl Iterator<Item = Permutation> {
    let len = (range.end - range.start) as usize;
    let first = (len > 0).then(|| Permutation::unrank(n, range.start).expect("rank below n!"));
    first
        .map(Permutations::starting_at)
        .into_iter()
        .flatten()
        .take(len)
}

/// Runs `f` over every permutation of `S_n` in chunks and merges the results in order.
pub(crate) fn over_permutations<A, F>(n: usize, f: F) -> Vec<A>
where
    A: Send,
    F: Fn(&mut dyn Iterator<Item = Permutation>) -> A + Sync,
{
    chunked(factorial(n), |range| f(&mut permutation_range(n, range)))
}
