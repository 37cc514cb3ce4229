//! Repetition baseline versus direct order-k solving.
//!
//! For every instance and order k the harness expands the instance, runs a
//! batch of seeded annealing chains on it and compares the best result with
//! `k × best-known order-1 makespan`, the makespan obtained by repeating an
//! order-1 plan k times.

mod emit;
mod registry;

use std::collections::BTreeSet;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::corpus::Corpus;
use crate::cyclic::{expand, CyclicInstance};
use crate::exec::Execution;
use crate::instance::{lower_bound, Instance, Time};
use crate::sa::{anneal, SaConfig, SaOverrides};

pub use emit::{to_csv, to_json, to_markdown};
pub use registry::{BestKnownRegistry, RegistryError};

/// Machine count at or above which instances enter the filtered summary.
pub const LARGE_INSTANCE_MACHINES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("the baseline must be positive")]
pub struct ZeroBaseline;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("cannot summarize a report without Dif% values")]
pub struct EmptyReport;

/// `100 × (baseline − sa_value) / baseline`; negative when the solver did
/// worse than the repetition baseline.
pub fn compute_dif(baseline: f64, sa_value: f64) -> Result<f64, ZeroBaseline> {
    if baseline.is_nan() || baseline <= 0.0 {
        return Err(ZeroBaseline);
    }
    Ok(100.0 * (baseline - sa_value) / baseline)
}

/// Rounds half-up at `decimals` places. A small epsilon absorbs binary
/// representation error, so 7.685 rounds to 7.69.
pub fn round_half_up(x: f64, decimals: i32) -> f64 {
    let f = 10f64.powi(decimals);
    (x * f + 0.5 + 1e-9).floor() / f
}

/// Orders to benchmark. `is_range` records that the list was written with
/// `a..b`, which also requests scaling tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderSet {
    pub orders: Vec<usize>,
    pub is_range: bool,
}

impl OrderSet {
    pub fn new(orders: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = orders.into_iter().collect();
        Self {
            orders: set.into_iter().collect(),
            is_range: false,
        }
    }

    /// Parses `1,2,4`, `1..10` or mixtures like `1..4,6,8`.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut set = BTreeSet::new();
        let mut is_range = false;
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let num = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| format!("{s:?} is not a positive integer"))
            };
            if let Some((a, b)) = part.split_once("..") {
                let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
                if a > b {
                    return Err(format!("empty order range {part}"));
                }
                set.extend(a..=b);
                is_range = true;
            } else {
                set.insert(num(part)?);
            }
        }
        if set.is_empty() {
            return Err("no orders given".into());
        }
        if set.contains(&0) {
            return Err("orders must be at least 1".into());
        }
        Ok(Self {
            orders: set.into_iter().collect(),
            is_range,
        })
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub orders: OrderSet,
    pub seeds: u64,
    /// Annealing settings; unset step counts follow the per-order defaults.
    pub sa: SaOverrides,
    pub execution: Execution,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            orders: OrderSet::new([1, 2, 4]),
            seeds: 1,
            sa: SaOverrides::default(),
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeedOutcome {
    pub seed: u64,
    pub makespan: f64,
    pub elapsed: f64,
    pub timed_out: bool,
}

/// One (instance, order) result. Times are in display units.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub instance: String,
    pub machines: usize,
    pub order: usize,
    /// `order × best-known`, absent when the instance is not registered.
    pub baseline: Option<f64>,
    pub sa_value: f64,
    pub dif_percent: Option<f64>,
    pub lower_bound: f64,
    pub seeds_used: u64,
    pub per_seed: Vec<SeedOutcome>,
    pub elapsed: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchFailure {
    pub instance: String,
    pub order: Option<usize>,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingRow {
    pub order: usize,
    pub baseline: f64,
    pub sa_value: f64,
    pub difference: f64,
    pub dif_percent: f64,
}

/// Order-scaling view of one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingTable {
    pub instance: String,
    pub rows: Vec<ScalingRow>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub failures: Vec<BenchFailure>,
    pub scaling: Vec<ScalingTable>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DifStats {
    pub count: usize,
    pub mean: f64,
    pub max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub overall: DifStats,
    /// Restricted to instances with at least [`LARGE_INSTANCE_MACHINES`]
    /// machines; `None` when there are none.
    pub large: Option<DifStats>,
}

fn stats(values: impl IntoIterator<Item = f64>) -> Option<DifStats> {
    let values: Vec<f64> = values.into_iter().collect();
    if values.is_empty() {
        return None;
    }
    Some(DifStats {
        count: values.len(),
        mean: values.iter().sum::<f64>() / values.len() as f64,
        max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    })
}

impl BenchReport {
    /// For each instance, the row of its highest order that has a Dif%.
    pub fn headline_rows(&self) -> Vec<&BenchRow> {
        let mut out: Vec<&BenchRow> = Vec::new();
        for row in self.rows.iter().filter(|r| r.dif_percent.is_some()) {
            match out.iter_mut().find(|r| r.instance == row.instance) {
                Some(slot) if slot.order < row.order => *slot = row,
                Some(_) => {}
                None => out.push(row),
            }
        }
        out
    }
}

/// Mean and maximum Dif% over each instance's highest-order row, overall
/// and for instances with at least ten machines.
pub fn summarize(report: &BenchReport) -> Result<Summary, EmptyReport> {
    let rows = report.headline_rows();
    let overall = stats(rows.iter().filter_map(|r| r.dif_percent)).ok_or(EmptyReport)?;
    let large = stats(
        rows.iter()
            .filter(|r| r.machines >= LARGE_INSTANCE_MACHINES)
            .filter_map(|r| r.dif_percent),
    );
    Ok(Summary { overall, large })
}

struct Task {
    case: usize,
    seed: u64,
}

struct Case {
    cyclic: CyclicInstance,
    cfg: SaConfig,
    lower_bound: Time,
}

/// Runs the benchmark. Per-row failures are collected in the report rather
/// than aborting the run. Rows come out sorted by corpus order, then order.
pub fn run_benchmark(corpus: &Corpus, registry: &BestKnownRegistry, config: &BenchConfig) -> BenchReport {
    let mut report = BenchReport::default();

    let mut cases: Vec<Case> = Vec::new();
    for entry in &corpus.entries {
        let inst = match entry.load() {
            Ok(i) => i,
            Err(e) => {
                report.failures.push(BenchFailure {
                    instance: entry.name.clone(),
                    order: None,
                    error: e.to_string(),
                });
                continue;
            }
        };
        for &order in &config.orders.orders {
            let cfg = config.sa.resolve(order);
            let failure = |error: String| BenchFailure {
                instance: entry.name.clone(),
                order: Some(order),
                error,
            };
            if let Err(e) = cfg.validate() {
                report.failures.push(failure(e.to_string()));
                continue;
            }
            match expand(&inst, order) {
                Ok(cyclic) => cases.push(Case {
                    lower_bound: lower_bound(cyclic.expanded()),
                    cyclic,
                    cfg,
                }),
                Err(e) => report.failures.push(failure(e.to_string())),
            }
        }
    }

    let tasks: Vec<Task> = cases
        .iter()
        .enumerate()
        .flat_map(|(case, c)| {
            (0..config.seeds).map(move |i| Task {
                case,
                seed: c.cfg.seed.wrapping_add(i),
            })
        })
        .collect();

    let outcomes = config.execution.map(&tasks, |t| {
        let case = &cases[t.case];
        let cfg = SaConfig {
            seed: t.seed,
            ..case.cfg.clone()
        };
        anneal(case.cyclic.expanded(), &cfg)
    });

    // Tasks are grouped by case, seeds ascending.
    let mut outcomes = outcomes.into_iter();
    for case in &cases {
        let started = Instant::now();
        let base: &Instance = case.cyclic.base();
        let order = case.cyclic.order();
        let mut per_seed = Vec::new();
        let mut best: Option<Time> = None;
        let mut error = None;
        for result in outcomes.by_ref().take(config.seeds as usize) {
            match result {
                Ok(r) => {
                    best = Some(best.map_or(r.best_makespan, |b: Time| b.min(r.best_makespan)));
                    per_seed.push(SeedOutcome {
                        seed: r.seed,
                        makespan: base.to_display(r.best_makespan),
                        elapsed: r.elapsed.as_secs_f64(),
                        timed_out: r.timed_out,
                    });
                }
                Err(e) => error = Some(e.to_string()),
            }
        }
        let Some(best) = best else {
            report.failures.push(BenchFailure {
                instance: base.name().to_string(),
                order: Some(order),
                error: error.unwrap_or_else(|| "no seeds were run".into()),
            });
            continue;
        };
        let sa_value = base.to_display(best);
        let baseline = registry.get(base.name()).map(|b| b * order as f64);
        let dif_percent = baseline.and_then(|b| compute_dif(b, sa_value).ok());
        let elapsed = per_seed.iter().map(|s| s.elapsed).sum::<f64>() + started.elapsed().as_secs_f64();
        report.rows.push(BenchRow {
            instance: base.name().to_string(),
            machines: base.m(),
            order,
            baseline,
            sa_value,
            dif_percent,
            lower_bound: base.to_display(case.lower_bound),
            seeds_used: per_seed.len() as u64,
            per_seed,
            elapsed,
        });
    }

    if config.orders.is_range {
        report.scaling = scaling_tables(&report.rows);
    }
    report
}

/// Groups rows with a baseline into one order-scaling table per instance.
pub fn scaling_tables(rows: &[BenchRow]) -> Vec<ScalingTable> {
    let mut tables: Vec<ScalingTable> = Vec::new();
    for row in rows {
        let (Some(baseline), Some(dif)) = (row.baseline, row.dif_percent) else {
            continue;
        };
        let scaling = ScalingRow {
            order: row.order,
            baseline,
            sa_value: row.sa_value,
            difference: baseline - row.sa_value,
            dif_percent: dif,
        };
        match tables.iter_mut().find(|t| t.instance == row.instance) {
            Some(t) => t.rows.push(scaling),
            None => tables.push(ScalingTable {
                instance: row.instance.clone(),
                rows: vec![scaling],
            }),
        }
    }
    tables
}
