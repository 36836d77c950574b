//! Success-rate and accuracy sweeps over random graphs.
//!
//! Each trial draws one G(n, m) graph from a seed derived from
//! `(master_seed, m, trial)`, computes its independence number once, and runs
//! every variant on that same graph. Trials are independent work units;
//! results are collected in trial order and reduced with exact integer
//! arithmetic, so output does not depend on the worker count.

use std::fmt::Write;

use rayon::prelude::*;

use crate::error::{range, Error, Result};
use crate::exact::{format_fixed, scaled_unit, COMMON_DENOM};
use crate::graph::{max_edges, random_graph, OrderingMode};
use crate::oracle::alpha_exact;
use crate::rng::derive_seed;
use crate::search::{dfs_descend, BranchPolicy, SearchConfig};

pub const DEFAULT_WINDOW: usize = 5;

/// The default six variants: ascending and descending degree order, each
/// with all three branch policies.
pub fn figure_variants() -> Vec<SearchConfig> {
    let mut out = Vec::new();
    for ordering in [
        OrderingMode::AscendingDegree,
        OrderingMode::DescendingDegree,
    ] {
        for policy in BranchPolicy::ALL {
            out.push(SearchConfig::new(ordering, policy));
        }
    }
    out
}

/// All nine ordering and policy combinations.
pub fn all_variants() -> Vec<SearchConfig> {
    OrderingMode::ALL
        .iter()
        .flat_map(|&o| {
            BranchPolicy::ALL
                .iter()
                .map(move |&p| SearchConfig::new(o, p))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub n: usize,
    /// Ascending edge counts.
    pub m_values: Vec<usize>,
    pub graphs_per_m: usize,
    pub variants: Vec<SearchConfig>,
    pub master_seed: u64,
    /// Odd moving-average width for extrema detection; 1 disables smoothing.
    pub smoothing_window: usize,
    pub thread_count: usize,
}

impl SweepConfig {
    pub fn new(
        n: usize,
        m_values: Vec<usize>,
        graphs_per_m: usize,
        variants: Vec<SearchConfig>,
    ) -> Self {
        SweepConfig {
            n,
            m_values,
            graphs_per_m,
            variants,
            master_seed: 0,
            smoothing_window: 1,
            thread_count: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > crate::graph::MAX_VERTICES {
            return Err(range(format!("vertex count {} outside 1..=64", self.n)));
        }
        let top = max_edges(self.n);
        if let Some(&m) = self.m_values.iter().find(|&&m| m > top) {
            return Err(range(format!(
                "edge count {m} exceeds {top} for n = {}",
                self.n
            )));
        }
        if self.m_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(range("edge counts must be strictly ascending"));
        }
        if self.m_values.is_empty() {
            return Err(range("no edge counts given"));
        }
        if self.variants.is_empty() {
            return Err(range("no variants given"));
        }
        if self.graphs_per_m == 0 {
            return Err(range("graphs per edge count must be at least 1"));
        }
        if self.smoothing_window == 0 || self.smoothing_window.is_multiple_of(2) {
            return Err(range("smoothing window must be odd and positive"));
        }
        if self.thread_count == 0 {
            return Err(range("thread count must be at least 1"));
        }
        Ok(())
    }
}

/// Everything measured on one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialRecord {
    pub m: usize,
    pub index: usize,
    pub seed: u64,
    /// [`crate::graph::Graph::fingerprint`] of the graph every variant saw.
    pub graph_fingerprint: u64,
    pub alpha: usize,
    /// Size found by each variant, in config order.
    pub sizes: Vec<usize>,
}

/// Runs every trial of the sweep, in `(m, trial)` order.
pub fn run_trials(cfg: &SweepConfig) -> Result<Vec<TrialRecord>> {
    cfg.validate()?;
    let tasks: Vec<(usize, usize)> = cfg
        .m_values
        .iter()
        .flat_map(|&m| (0..cfg.graphs_per_m).map(move |i| (m, i)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.thread_count)
        .build()
        .map_err(|e| range(format!("cannot start worker pool: {e}")))?;
    pool.install(|| {
        tasks
            .par_iter()
            .map(|&(m, index)| {
                let seed = derive_seed(cfg.master_seed, m as u64, index as u64);
                let g = random_graph(cfg.n, m, seed)?;
                let alpha = alpha_exact(&g).alpha;
                let sizes = cfg
                    .variants
                    .iter()
                    .map(|v| dfs_descend(&g, v).size)
                    .collect();
                Ok(TrialRecord {
                    m,
                    index,
                    seed,
                    graph_fingerprint: g.fingerprint(),
                    alpha,
                    sizes,
                })
            })
            .collect::<Result<Vec<_>>>()
    })
}

/// Aggregate over the trials of one `(m, variant)` pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub n: usize,
    pub m: usize,
    pub variant: SearchConfig,
    pub trials: u64,
    pub successes: u64,
    pub size_sum: u64,
    pub alpha_sum: u64,
    /// Sum of `size / alpha` over trials, scaled by [`COMMON_DENOM`].
    pub accuracy_sum: u128,
    /// Worst single-graph accuracy as `(size, alpha)`.
    pub worst: (usize, usize),
}

impl SweepRow {
    pub fn success_rate(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }

    /// Mean over graphs of `size / alpha`.
    pub fn mean_accuracy(&self) -> f64 {
        let den = COMMON_DENOM * self.trials as u128;
        (self.accuracy_sum / den) as f64 + (self.accuracy_sum % den) as f64 / den as f64
    }

    /// Minimum over graphs of `size / alpha`.
    pub fn min_accuracy(&self) -> f64 {
        self.worst.0 as f64 / self.worst.1 as f64
    }

    /// `sum(size) / sum(alpha)`.
    pub fn pooled_accuracy(&self) -> f64 {
        self.size_sum as f64 / self.alpha_sum as f64
    }
}

/// Folds trial records into one row per `(m, variant)`, ordered by `m` and
/// then by variant position.
pub fn aggregate(cfg: &SweepConfig, trials: &[TrialRecord]) -> Vec<SweepRow> {
    let mut rows = Vec::with_capacity(cfg.m_values.len() * cfg.variants.len());
    for &m in &cfg.m_values {
        for (k, &variant) in cfg.variants.iter().enumerate() {
            let mut row = SweepRow {
                n: cfg.n,
                m,
                variant,
                trials: 0,
                successes: 0,
                size_sum: 0,
                alpha_sum: 0,
                accuracy_sum: 0,
                worst: (1, 1),
            };
            for t in trials.iter().filter(|t| t.m == m) {
                let size = t.sizes[k];
                row.trials += 1;
                row.successes += (size == t.alpha) as u64;
                row.size_sum += size as u64;
                row.alpha_sum += t.alpha as u64;
                row.accuracy_sum += size as u128 * scaled_unit(t.alpha);
                // size / alpha < worst.0 / worst.1
                if size * row.worst.1 < row.worst.0 * t.alpha {
                    row.worst = (size, t.alpha);
                }
            }
            rows.push(row);
        }
    }
    rows
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    let trials = run_trials(cfg)?;
    Ok(aggregate(cfg, &trials))
}

pub const CSV_HEADER: &str =
    "n,m,variant,ordering,policy,trials,successes,success_rate,mean_accuracy,min_accuracy";

/// CSV with six-decimal rates rounded half to even from exact values.
pub fn emit_csv(rows: &[SweepRow]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.n,
            r.m,
            r.variant.label(),
            r.variant.ordering.name(),
            r.variant.policy.name(),
            r.trials,
            r.successes,
            format_fixed(r.successes as u128, r.trials as u128, 6),
            format_fixed(r.accuracy_sum, COMMON_DENOM * r.trials as u128, 6),
            format_fixed(r.worst.0 as u128, r.worst.1 as u128, 6),
        )
        .unwrap();
    }
    out
}

/// Same data as [`emit_csv`], space-separated, one block per variant.
/// Blocks are separated by two blank lines so gnuplot can address them with
/// `index`.
pub fn emit_gnuplot(rows: &[SweepRow]) -> String {
    let mut out = String::new();
    for (k, variant) in variants_in_order(rows).into_iter().enumerate() {
        if k > 0 {
            out.push_str("\n\n");
        }
        writeln!(out, "# {variant}").unwrap();
        out.push_str("# m trials successes success_rate mean_accuracy min_accuracy\n");
        for r in rows.iter().filter(|r| r.variant == variant) {
            writeln!(
                out,
                "{} {} {} {} {} {}",
                r.m,
                r.trials,
                r.successes,
                format_fixed(r.successes as u128, r.trials as u128, 6),
                format_fixed(r.accuracy_sum, COMMON_DENOM * r.trials as u128, 6),
                format_fixed(r.worst.0 as u128, r.worst.1 as u128, 6),
            )
            .unwrap();
        }
    }
    out
}

fn variants_in_order(rows: &[SweepRow]) -> Vec<SearchConfig> {
    let mut seen = Vec::new();
    for r in rows {
        if !seen.contains(&r.variant) {
            seen.push(r.variant);
        }
    }
    seen
}

/// Centered moving average of odd width; windows are truncated at the ends.
pub fn smooth(series: &[f64], window: usize) -> Vec<f64> {
    let half = window / 2;
    (0..series.len())
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half + 1).min(series.len());
            series[lo..hi].iter().sum::<f64>() / (hi - lo) as f64
        })
        .collect()
}

/// Counts interior local maxima and minima after smoothing, with runs of
/// equal values treated as one point. Returns `(maxima, minima)`.
pub fn count_local_extrema(series: &[f64], window: usize) -> Result<(usize, usize)> {
    if window == 0 || window.is_multiple_of(2) {
        return Err(range("window must be odd and positive"));
    }
    if series.len() <= window {
        return Err(range(format!(
            "series of length {} is too short for window {window}",
            series.len()
        )));
    }
    let mut points = smooth(series, window);
    points.dedup();
    let mut maxima = 0;
    let mut minima = 0;
    for w in points.windows(3) {
        if w[1] > w[0] && w[1] > w[2] {
            maxima += 1;
        } else if w[1] < w[0] && w[1] < w[2] {
            minima += 1;
        }
    }
    Ok((maxima, minima))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesStats {
    pub variant: SearchConfig,
    pub local_maxima: usize,
    pub local_minima: usize,
    pub min_success_rate: f64,
    /// Smallest `m` attaining the minimum.
    pub argmin_m: usize,
}

/// Oscillation statistics of each variant's success-rate series.
pub fn series_stats(rows: &[SweepRow], window: usize) -> Result<Vec<SeriesStats>> {
    variants_in_order(rows)
        .into_iter()
        .map(|variant| {
            let series: Vec<&SweepRow> = rows.iter().filter(|r| r.variant == variant).collect();
            let rates: Vec<f64> = series.iter().map(|r| r.success_rate()).collect();
            let (local_maxima, local_minima) = count_local_extrema(&rates, window)?;
            let worst = series
                .iter()
                .min_by(|a, b| {
                    // exact comparison of successes / trials, first m wins ties
                    (a.successes as u128 * b.trials as u128)
                        .cmp(&(b.successes as u128 * a.trials as u128))
                        .then(a.m.cmp(&b.m))
                })
                .expect("series is nonempty");
            Ok(SeriesStats {
                variant,
                local_maxima,
                local_minima,
                min_success_rate: worst.success_rate(),
                argmin_m: worst.m,
            })
        })
        .collect()
}

/// The three candidate readings of "lowest accuracy" for one variant.
#[derive(Clone, Debug, PartialEq)]
pub struct AccuracySummary {
    pub variant: SearchConfig,
    /// Minimum over `m` of the per-`m` mean accuracy.
    pub min_mean: f64,
    /// Minimum over all individual graphs.
    pub min_single: f64,
    /// Minimum over `m` of `sum(size) / sum(alpha)`.
    pub min_pooled: f64,
}

pub fn accuracy_summary(rows: &[SweepRow], variant: SearchConfig) -> Result<AccuracySummary> {
    let series: Vec<&SweepRow> = rows.iter().filter(|r| r.variant == variant).collect();
    if series.is_empty() {
        return Err(Error::Range(format!("no rows for variant {variant}")));
    }
    let fold = |f: fn(&SweepRow) -> f64| series.iter().map(|r| f(r)).fold(f64::INFINITY, f64::min);
    Ok(AccuracySummary {
        variant,
        min_mean: fold(SweepRow::mean_accuracy),
        min_single: fold(SweepRow::min_accuracy),
        min_pooled: fold(SweepRow::pooled_accuracy),
    })
}

/// Success rate over every row of one variant, `sum(successes) / sum(trials)`.
pub fn overall_success(rows: &[SweepRow], variant: SearchConfig) -> f64 {
    let (s, t) = rows
        .iter()
        .filter(|r| r.variant == variant)
        .fold((0u64, 0u64), |(s, t), r| (s + r.successes, t + r.trials));
    s as f64 / t as f64
}

/// `from, from + step, ...` up to and including `to` when it lands on the grid.
pub fn m_grid(from: usize, to: usize, step: usize) -> Result<Vec<usize>> {
    if step == 0 {
        return Err(range("step must be positive"));
    }
    if from > to {
        return Err(range(format!("empty edge range {from}..={to}")));
    }
    Ok((from..=to).step_by(step).collect())
}
