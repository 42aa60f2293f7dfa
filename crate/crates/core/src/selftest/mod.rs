//! Seeded self-test suite: nine acceptance criteria, each producing a
//! [`Report`]. Shared by the `acceptance` test target and `wscat selftest`.

mod algebra;
pub mod gen;
mod ltg;
pub mod oracle;
mod posets;

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use crate::report::{Report, Status};

pub const DEFAULT_SEED: u64 = 0x5eed_0001;

pub const CRITERIA: [(u8, &str); 9] = [
    (1, "random refinements satisfy (i)-(iv) and disjointness"),
    (2, "singleton-cover refinement equals the Cantor-Bendixson filtration"),
    (3, "finite spaces have empty perfect core"),
    (4, "atoms and isolated primes correspond"),
    (5, "closed-form Loewy series agrees with the extensional oracle"),
    (6, "semi-artinian iff scattered Stone space"),
    (7, "support of the Loewy quotient is the perfect part"),
    (8, "socle of the finite-cofinite algebra"),
    (9, "local-to-global reconstruction in D(k^n)"),
];

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub seed: u64,
    pub report: Report,
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

impl fmt::Display for CriterionResult {
    /// One summary line, followed by the first failure if there is one.
    /// Timings are left out so that the output depends only on the seed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "criterion {} {status}: {} ({} checks)",
            self.id,
            self.title,
            self.report.checks.len()
        )?;
        if let Some(c) = self.report.failures().next() {
            write!(f, "\n    first failure: {}: {}", c.name, c.detail)?;
            if let Some(cx) = &c.counterexample {
                write!(f, " (counterexample: {cx})")?;
            }
        }
        Ok(())
    }
}

/// Runs criterion `id` (1..=9); `None` for an unknown id.
pub fn run_criterion(id: u8, seed: u64) -> Option<CriterionResult> {
    let title = CRITERIA.iter().find(|(i, _)| *i == id)?.1;
    let start = Instant::now();
    let mut report = match id {
        1 => posets::random_refinements(seed),
        2 => posets::singleton_covers(),
        3 => posets::perfect_cores(),
        4 => algebra::atom_bijection(),
        5 => algebra::ordint_oracle(),
        6 => algebra::scattered_catalogue(),
        7 => algebra::loewy_support(),
        8 => algebra::fincof_socle(seed),
        9 => ltg::local_to_global(seed),
        _ => unreachable!(),
    };
    let elapsed = start.elapsed();
    if let Some(limit) = time_limit(id) {
        report.check(
            "time budget",
            format!("within {}s", limit.as_secs()),
            (elapsed > limit).then(|| format!("took {:.1}s", elapsed.as_secs_f64())),
        );
    }
    Some(CriterionResult {
        id,
        title,
        seed,
        report,
        elapsed,
    })
}

fn time_limit(id: u8) -> Option<Duration> {
    match id {
        1 => Some(Duration::from_secs(60)),
        5 => Some(Duration::from_secs(120)),
        _ => None,
    }
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    CRITERIA
        .iter()
        .filter_map(|&(id, _)| run_criterion(id, seed))
        .collect()
}

/// Folds many per-case reports into one check per name: the number of
/// passing cases and the first counterexample.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    entries: BTreeMap<String, TallyEntry>,
    order: Vec<String>,
}

#[derive(Debug, Default)]
struct TallyEntry {
    pass: usize,
    skip: usize,
    fail: usize,
    first: Option<String>,
}

impl Tally {
    pub(crate) fn record(&mut self, name: &str, ok: bool, cx: impl FnOnce() -> String) {
        let e = self.entry(name);
        if ok {
            e.pass += 1;
        } else {
            e.fail += 1;
            if e.first.is_none() {
                e.first = Some(cx());
            }
        }
    }

    pub(crate) fn absorb(&mut self, r: &Report, context: impl Fn() -> String) {
        for c in &r.checks {
            let e = self.entry(&c.name);
            match c.status {
                Status::Pass => e.pass += 1,
                Status::Skipped => e.skip += 1,
                Status::Fail => {
                    e.fail += 1;
                    if e.first.is_none() {
                        let cx = c.counterexample.as_deref().unwrap_or("");
                        e.first = Some(format!("{}: {} {cx}", context(), c.detail));
                    }
                }
            }
        }
    }

    fn entry(&mut self, name: &str) -> &mut TallyEntry {
        if !self.entries.contains_key(name) {
            self.order.push(name.to_owned());
        }
        self.entries.entry(name.to_owned()).or_default()
    }

    pub(crate) fn into_report(self) -> Report {
        let mut r = Report::new();
        for name in self.order {
            let e = &self.entries[&name];
            let mut detail = format!("{} of {} cases", e.pass, e.pass + e.fail);
            if e.skip > 0 {
                detail.push_str(&format!(", {} vacuous", e.skip));
            }
            if e.fail == 0 && e.pass == 0 {
                r.skip(name, detail);
            } else {
                r.check(name, detail, e.first.clone());
            }
        }
        r
    }
}
