//! Identity verification suites.
//!
//! Each suite is a list of tasks producing [`IdentityCheck`]s. Checks with
//! the same identity id and index `n` (sub-cases such as seeds or parameter
//! values) are folded into a single line. A suite never panics: kernel errors and
//! panics become failing lines at `n = 0`.

mod golden;
pub mod oracle;
mod suites;

use std::collections::HashMap;
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
pub use crate::transforms::IdentityCheck;

pub const DEFAULT_BOUND: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Pow,
    Log,
    Thm1,
    Thm2,
    Thm3,
    Abel,
    Binomf,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 8] =
        [Suite::Pow, Suite::Log, Suite::Thm1, Suite::Thm2, Suite::Thm3, Suite::Abel, Suite::Binomf, Suite::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Pow => "pow",
            Suite::Log => "log",
            Suite::Thm1 => "thm1",
            Suite::Thm2 => "thm2",
            Suite::Thm3 => "thm3",
            Suite::Abel => "abel",
            Suite::Binomf => "binomf",
            Suite::Oracle => "oracle",
        }
    }

    fn tasks(self, bound: usize) -> Vec<Task> {
        match self {
            Suite::Pow => suites::pow(bound),
            Suite::Log => suites::log(bound),
            Suite::Thm1 => suites::thm1(bound),
            Suite::Thm2 => suites::thm2(bound),
            Suite::Thm3 => suites::thm3(bound),
            Suite::Abel => suites::abel(bound),
            Suite::Binomf => suites::binomf(bound),
            Suite::Oracle => suites::oracle(bound),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite `{s}`")))
    }
}

type TaskFn = Box<dyn Fn() -> Result<Vec<IdentityCheck>> + Send + Sync>;

/// One named identity; the closure may emit several checks per `n`.
pub(crate) struct Task {
    id: &'static str,
    run: TaskFn,
}

pub(crate) fn task(id: &'static str, run: impl Fn() -> Result<Vec<IdentityCheck>> + Send + Sync + 'static) -> Task {
    Task { id, run: Box::new(run) }
}

fn panic_message(payload: &(dyn std::any::Any + Send)) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "panic".to_string()
    }
}

fn failure(id: &str, detail: String) -> IdentityCheck {
    IdentityCheck { id: id.to_string(), n: 0, holds: false, counterexample: Some(detail) }
}

/// Runs a task and folds its checks into one per `(id, n)`, keeping the
/// first failure's detail.
fn run_task(t: &Task) -> Vec<IdentityCheck> {
    let raw = match catch_unwind(AssertUnwindSafe(|| (t.run)())) {
        Ok(Ok(checks)) => checks,
        Ok(Err(e)) => return vec![failure(t.id, format!("error: {e}"))],
        Err(payload) => return vec![failure(t.id, format!("panic: {}", panic_message(payload.as_ref())))],
    };
    let mut folded: Vec<IdentityCheck> = Vec::new();
    let mut index: HashMap<(String, u64), usize> = HashMap::new();
    for c in raw {
        match index.get(&(c.id.clone(), c.n)) {
            Some(&i) => {
                if !c.holds && folded[i].holds {
                    folded[i] = c;
                }
            }
            None => {
                index.insert((c.id.clone(), c.n), folded.len());
                folded.push(c);
            }
        }
    }
    folded
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub id: String,
    pub n: u64,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    /// Sorted by `n`, then by identity order within the suite.
    pub checks: Vec<IdentityCheck>,
}

impl SuiteReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.holds).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }

    /// `PASS <id> n=<n>` or `FAIL <id> n=<n> (<detail>)`.
    pub fn lines(&self) -> impl Iterator<Item = String> + '_ {
        self.checks.iter().map(|c| {
            if c.holds {
                format!("PASS {} n={}", c.id, c.n)
            } else {
                format!("FAIL {} n={} ({})", c.id, c.n, c.counterexample.as_deref().unwrap_or("no detail"))
            }
        })
    }
}

pub fn run_suite(suite: Suite, bound: usize) -> SuiteReport {
    let tasks = suite.tasks(bound);
    let mut checks: Vec<IdentityCheck> = tasks.par_iter().flat_map_iter(run_task).collect();
    checks.sort_by_key(|c| c.n);
    SuiteReport { suite, checks }
}

/// Runs the suites on a pool of `jobs` threads (0 picks the rayon default).
pub fn run(suites: &[Suite], bound: usize, jobs: usize) -> Result<Vec<SuiteReport>> {
    if bound < 2 {
        return Err(Error::InvalidArgument(format!("verification bound must be at least 2, got {bound}")));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| suites.par_iter().map(|&s| run_suite(s, bound)).collect()))
}

#[derive(Serialize)]
struct SuiteSummary {
    suite: Suite,
    passed: usize,
    failed: usize,
    failures: Vec<Failure>,
}

#[derive(Serialize)]
struct Summary {
    bound: usize,
    passed: usize,
    failed: usize,
    suites: Vec<SuiteSummary>,
}

pub fn summary_json(reports: &[SuiteReport], bound: usize) -> String {
    let suites: Vec<SuiteSummary> = reports
        .iter()
        .map(|r| SuiteSummary {
            suite: r.suite,
            passed: r.passed(),
            failed: r.failed(),
            failures: r
                .checks
                .iter()
                .filter(|c| !c.holds)
                .map(|c| Failure { id: c.id.clone(), n: c.n, detail: c.counterexample.clone().unwrap_or_default() })
                .collect(),
        })
        .collect();
    let summary = Summary {
        bound,
        passed: suites.iter().map(|s| s.passed).sum(),
        failed: suites.iter().map(|s| s.failed).sum(),
        suites,
    };
    serde_json::to_string_pretty(&summary).expect("summary serialization cannot fail")
}
