use std::f64::consts::LN_10;

use rayon::prelude::*;

use super::embedding::{ConstraintRestricted, Embedding, ProbeSet};
use super::{exp_witness_grid, linear_witness, slope_fit, DiagnosticsError};
use crate::graded::{has_forbidden_clique, CliqueConstraint, EdgeColoring};
use crate::spectral::spectral_norm;

pub const DEFAULT_ALPHA_GRID: [f64; 7] = [3.0, 5.0, 7.0, 10.0, 15.0, 20.0, 40.0];
pub const DEFAULT_SEEDS: [u64; 10] = [11, 23, 42, 73, 101, 137, 211, 307, 401, 509];

/// Grid points above this value are excluded from the slope fit. Beyond it a
/// non-collapsing trace has already saturated at its survivor floor and the
/// log-trace stops being linear in α.
pub const SLOPE_ALPHA_MAX: f64 = 20.0;

/// Decision thresholds, both in log10 units for the exponential trace.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Thresholds {
    /// `log10 τ_exp`; `None` selects [`default_tau_exp`].
    pub log10_tau_exp: Option<f64>,
    /// Optional floor on the linear trace. Unused unless set.
    pub tau_lin: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagnosticsConfig {
    pub d: usize,
    pub k: usize,
    pub alpha_grid: Vec<f64>,
    pub seeds: Vec<u64>,
    pub thresholds: Thresholds,
}

impl Default for DiagnosticsConfig {
    fn default() -> Self {
        Self {
            d: 24,
            k: 100,
            alpha_grid: DEFAULT_ALPHA_GRID.to_vec(),
            seeds: DEFAULT_SEEDS.to_vec(),
            thresholds: Thresholds::default(),
        }
    }
}

impl DiagnosticsConfig {
    pub fn validate(&self) -> Result<(), DiagnosticsError> {
        if self.d < 2 {
            return Err(DiagnosticsError::InvalidDimension(self.d));
        }
        if self.k < 1 {
            return Err(DiagnosticsError::InvalidCount(self.k));
        }
        if self.alpha_grid.is_empty() {
            return Err(DiagnosticsError::InvalidConfig("alpha grid is empty".into()));
        }
        if let Some(&a) = self.alpha_grid.iter().find(|a| !(a.is_finite() && **a > 0.0)) {
            return Err(DiagnosticsError::InvalidAlpha(a));
        }
        if self.alpha_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(DiagnosticsError::InvalidConfig("alpha grid must be strictly ascending".into()));
        }
        if self.seeds.is_empty() {
            return Err(DiagnosticsError::InvalidConfig("seed list is empty".into()));
        }
        Ok(())
    }

    /// The α at which the collapse test is applied: the largest grid value.
    pub fn decision_alpha(&self) -> f64 {
        *self.alpha_grid.last().expect("validated grid")
    }

    pub fn log10_tau_exp(&self) -> f64 {
        self.thresholds
            .log10_tau_exp
            .unwrap_or_else(|| default_tau_exp(self.d, self.k, self.decision_alpha()))
    }
}

/// Log-midpoint between 1 and `d·e^{-αλ₋}`, where `λ₋ = (k/d)(1-√(d/k))²` is
/// the lower edge of the Marchenko–Pastur bulk (zero when `k ≤ d`).
///
/// Anchoring at the bulk edge rather than at the mean `k/d` matters at
/// moderate `k`: the smallest eigenvalue dominates the collapsed trace, and
/// at `d = 24, k = 100` it sits near 1.1, well below `k/(2d)`.
pub fn default_tau_exp(d: usize, k: usize, alpha: f64) -> f64 {
    let (df, kf) = (d as f64, k as f64);
    let lower = if k > d { kf / df * (1.0 - (df / kf).sqrt()).powi(2) } else { 0.0 };
    0.5 * (df.log10() - alpha * lower / LN_10)
}

/// Three-valued outcome of the critical-n rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decision {
    Critical,
    NonCritical,
    /// The trace collapsed but a neighbor needed for the peak test is missing.
    Indeterminate,
}

impl Decision {
    pub fn is_critical(self) -> bool {
        self == Decision::Critical
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Decision::Critical => "true",
            Decision::NonCritical => "false",
            Decision::Indeterminate => "indeterminate",
        }
    }
}

/// One row of the results table, aggregated over the configured seeds.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagnosticsRecord {
    pub n: u32,
    pub d: usize,
    pub k: usize,
    pub alphas: Vec<f64>,
    /// `log10` of the seed-averaged `Tr e^{-αA}`, one entry per α.
    pub log10_tr_exp: Vec<f64>,
    pub tr_lin: f64,
    pub min_re_lambda: f64,
    pub max_im_lambda: f64,
    pub slope: f64,
    pub lambda_l: f64,
    pub rho_h: f64,
    pub survivor_rank: usize,
    pub decision: Decision,
}

impl DiagnosticsRecord {
    /// The trace at the decision α (the last grid point).
    pub fn decision_log10_tr_exp(&self) -> f64 {
        *self.log10_tr_exp.last().expect("non-empty grid")
    }

    pub fn critical(&self) -> bool {
        self.decision.is_critical()
    }
}

#[derive(Debug)]
pub struct DiagnosticsRun {
    pub records: Vec<DiagnosticsRecord>,
    pub failures: Vec<(u32, DiagnosticsError)>,
}

/// Raw metrics of a single `(n, seed)` cell.
#[derive(Clone, Debug, PartialEq)]
pub struct CellResult {
    pub log10_tr_exp: Vec<f64>,
    pub tr_lin: f64,
    pub min_re_lambda: f64,
    pub max_im_lambda: f64,
    pub rho_h: f64,
    pub survivor_rank: usize,
}

pub fn evaluate_cell(probes: &ProbeSet, alphas: &[f64]) -> Result<CellResult, DiagnosticsError> {
    let a = probes.accumulator();
    let log10_tr_exp = exp_witness_grid(&a, alphas)?;
    let lin = linear_witness(&probes.active_batch()?)?;
    let rho_h = spectral_norm(&a, 1e-10, 200_000)?;
    Ok(CellResult {
        log10_tr_exp,
        tr_lin: lin.trace,
        min_re_lambda: lin.min_re_lambda,
        max_im_lambda: lin.max_im_lambda,
        rho_h,
        survivor_rank: probes.survivor_rank(),
    })
}

fn log10_mean(values: impl Iterator<Item = f64>) -> f64 {
    let v: Vec<f64> = values.collect();
    let top = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = v.iter().map(|x| 10f64.powf(x - top)).sum();
    top + (sum / v.len() as f64).log10()
}

/// Slope of `log10 T` against α over the grid points up to
/// [`SLOPE_ALPHA_MAX`] (all points if fewer than two qualify). A single-point
/// grid is anchored at `T(0) = d`.
fn grid_slope(d: usize, alphas: &[f64], values: &[f64]) -> Result<f64, DiagnosticsError> {
    if alphas.len() == 1 {
        return slope_fit(&[0.0, alphas[0]], &[(d as f64).log10(), values[0]]);
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = alphas
        .iter()
        .zip(values)
        .filter(|(a, _)| **a <= SLOPE_ALPHA_MAX)
        .map(|(a, v)| (*a, *v))
        .unzip();
    if xs.len() >= 2 {
        slope_fit(&xs, &ys)
    } else {
        slope_fit(alphas, values)
    }
}

fn aggregate(config: &DiagnosticsConfig, n: u32, cells: &[CellResult]) -> Result<DiagnosticsRecord, DiagnosticsError> {
    let count = cells.len() as f64;
    let mean = |f: fn(&CellResult) -> f64| cells.iter().map(f).sum::<f64>() / count;
    let log10_tr_exp: Vec<f64> = (0..config.alpha_grid.len())
        .map(|i| log10_mean(cells.iter().map(|c| c.log10_tr_exp[i])))
        .collect();
    let slope = grid_slope(config.d, &config.alpha_grid, &log10_tr_exp)?;
    Ok(DiagnosticsRecord {
        n,
        d: config.d,
        k: config.k,
        alphas: config.alpha_grid.clone(),
        log10_tr_exp,
        tr_lin: mean(|c| c.tr_lin),
        min_re_lambda: mean(|c| c.min_re_lambda),
        max_im_lambda: mean(|c| c.max_im_lambda),
        slope,
        lambda_l: -slope * LN_10,
        rho_h: mean(|c| c.rho_h),
        survivor_rank: cells.iter().map(|c| c.survivor_rank).max().unwrap_or(0),
        decision: Decision::Indeterminate,
    })
}

fn record_for(config: &DiagnosticsConfig, embedding: &dyn Embedding, n: u32) -> Result<DiagnosticsRecord, DiagnosticsError> {
    let cells = config
        .seeds
        .par_iter()
        .map(|&seed| {
            let probes = embedding.probes(config.d, config.k, seed, n)?;
            evaluate_cell(&probes, &config.alpha_grid)
        })
        .collect::<Result<Vec<_>, _>>()?;
    aggregate(config, n, &cells)
}

/// Applies the critical-n rule to `record` given its neighbors in the sweep.
///
/// The trace test comes first: a record whose trace did not collapse below
/// `τ_exp` is non-critical whatever its neighbors look like. Otherwise both
/// the linear trace and `ρ(H)` must be local maxima, meaning at least as
/// large as either neighbor and strictly larger than one of them.
pub fn decide_critical(
    record: &DiagnosticsRecord,
    prev: Option<&DiagnosticsRecord>,
    next: Option<&DiagnosticsRecord>,
    log10_tau_exp: f64,
    tau_lin: Option<f64>,
) -> Decision {
    if record.decision_log10_tr_exp() > log10_tau_exp {
        return Decision::NonCritical;
    }
    if tau_lin.is_some_and(|t| record.tr_lin < t) {
        return Decision::NonCritical;
    }
    let (Some(p), Some(q)) = (prev, next) else {
        return Decision::Indeterminate;
    };
    let peak = |x: f64, a: f64, b: f64| x >= a && x >= b && (x > a || x > b);
    if peak(record.tr_lin, p.tr_lin, q.tr_lin) && peak(record.rho_h, p.rho_h, q.rho_h) {
        Decision::Critical
    } else {
        Decision::NonCritical
    }
}

/// Runs every `n` in `n_list` under `embedding`. Each `(n, seed)` cell is
/// evaluated independently, and records come back sorted by `n`. A failure at
/// one `n` is reported in `failures` and leaves the other records intact.
pub fn run_diagnostics(
    config: &DiagnosticsConfig,
    n_list: &[u32],
    embedding: &dyn Embedding,
) -> Result<DiagnosticsRun, DiagnosticsError> {
    config.validate()?;
    let mut ns = n_list.to_vec();
    ns.sort_unstable();
    ns.dedup();

    let outcomes: Vec<(u32, Result<DiagnosticsRecord, DiagnosticsError>)> =
        ns.par_iter().map(|&n| (n, record_for(config, embedding, n))).collect();

    let mut slots: Vec<Option<DiagnosticsRecord>> = Vec::with_capacity(ns.len());
    let mut failures = Vec::new();
    for (n, outcome) in outcomes {
        match outcome {
            Ok(r) => slots.push(Some(r)),
            Err(e) => {
                failures.push((n, e));
                slots.push(None);
            }
        }
    }

    let tau = config.log10_tau_exp();
    let decisions: Vec<Option<Decision>> = (0..slots.len())
        .map(|i| {
            let rec = slots[i].as_ref()?;
            let prev = i.checked_sub(1).and_then(|j| slots[j].as_ref());
            let next = slots.get(i + 1).and_then(|s| s.as_ref());
            Some(decide_critical(rec, prev, next, tau, config.thresholds.tau_lin))
        })
        .collect();

    let records = slots
        .into_iter()
        .zip(decisions)
        .filter_map(|(slot, dec)| {
            slot.map(|mut r| {
                r.decision = dec.expect("decision for every record");
                r
            })
        })
        .collect();
    Ok(DiagnosticsRun { records, failures })
}

/// Diagnostics for an explicit good coloring used as a negative control.
///
/// The coloring is first checked to contain neither a red `K_m` nor a blue
/// `K_n`. Its existence certifies a non-empty survivor space, so the probes
/// are drawn with a survivor subspace of rank `survivor_rank` (at least one)
/// hidden from them, sharing the configured seeds with the main sweep.
pub fn control_record(
    config: &DiagnosticsConfig,
    coloring: &EdgeColoring,
    constraint: CliqueConstraint,
    survivor_rank: usize,
) -> Result<DiagnosticsRecord, DiagnosticsError> {
    config.validate()?;
    if has_forbidden_clique(coloring, constraint) {
        return Err(DiagnosticsError::BadControl);
    }
    let label = coloring.vertices() as u32;
    let rank = survivor_rank.max(1);
    let embedding = ConstraintRestricted::new([(label, rank)]);
    let mut record = record_for(config, &embedding, label)?;
    record.decision = decide_critical(&record, None, None, config.log10_tau_exp(), config.thresholds.tau_lin);
    Ok(record)
}

/// Isotropic sanity batch used by a few tests: the raw accumulator for a
/// seed, without any embedding.
#[cfg(test)]
fn isotropic_cell(d: usize, k: usize, seed: u64, alphas: &[f64]) -> CellResult {
    evaluate_cell(&ProbeSet::isotropic(super::sample_directions(d, k, seed).unwrap()), alphas).unwrap()
}
