//! Seeded Monte Carlo trial loops and parameter sweeps.
//!
//! Trials are grouped into fixed-size batches that rayon may schedule in any
//! order. Each trial reads its own counter stream (see [`TrialStreams`]) and
//! only integer outage counts are reduced, so every estimate is bit-identical
//! for a given configuration no matter how many worker threads run it.
//!
//! When several strategies are evaluated together they all see the same
//! realization in every trial (common random numbers).

use rayon::prelude::*;

use crate::channel::{db_to_linear, ChannelRealization, TrialStreams};
use crate::error::{Error, FieldError, Result};
use crate::link::{outage_indicator, LinkBudget};
use crate::selection::{empirical_weight, MoMethod, Strategy};

pub const DEFAULT_SAMPLES: u64 = 100_000;

const BATCH: u64 = 2048;

/// Seed offset for the independent realizations used while tuning weights.
const TUNING_STREAM_KEY: u64 = 0x9E37_79B9_7F4A_7C15;

/// One simulation point, in dB at the interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub m_t: usize,
    pub m_r: usize,
    /// Average SNR `gamma0` in dB, shared by DL and UL.
    pub snr_db: f64,
    /// Self-interference cancellation factor in dB; must be `<= 0`.
    pub eta_db: f64,
    pub gamma_t_dl_db: f64,
    pub gamma_t_ul_db: f64,
    pub n_samples: u64,
    pub seed: u64,
    pub strategy: Strategy,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            m_t: 4,
            m_r: 4,
            snr_db: 15.0,
            eta_db: -10.0,
            gamma_t_dl_db: 10.0,
            gamma_t_ul_db: 10.0,
            n_samples: DEFAULT_SAMPLES,
            seed: 0,
            strategy: Strategy::MaxMax,
        }
    }
}

impl SimConfig {
    pub fn eta_linear(&self) -> f64 {
        10f64.powf(self.eta_db / 10.0)
    }

    /// Checks every field and converts to linear scale. All offending fields
    /// are reported together, named as on the command line.
    pub fn budget(&self) -> Result<LinkBudget> {
        let mut errs = Vec::new();
        if self.m_t == 0 {
            errs.push(FieldError::new("mt", "must be at least 1"));
        }
        if self.m_r == 0 {
            errs.push(FieldError::new("mr", "must be at least 1"));
        }
        if self.n_samples == 0 {
            errs.push(FieldError::new("samples", "must be at least 1"));
        }
        let mut db = |field: &'static str, v: f64| match db_to_linear(v) {
            Ok(x) => x,
            Err(_) => {
                errs.push(FieldError::new(field, format!("must be finite, got {v}")));
                f64::NAN
            }
        };
        let gamma0 = db("snr-db", self.snr_db);
        let eta = db("eta-db", self.eta_db);
        let gt_dl = db("gamma-t-db", self.gamma_t_dl_db);
        let gt_ul = db("gamma-t-ul-db", self.gamma_t_ul_db);
        if eta > 1.0 {
            errs.push(FieldError::new(
                "eta-db",
                format!("must be <= 0 dB (eta <= 1), got {}", self.eta_db),
            ));
        }
        errs.extend(strategy_errors(&self.strategy));
        if !errs.is_empty() {
            return Err(Error::Config(errs));
        }
        LinkBudget::new(gamma0, gamma0, eta, gt_dl, gt_ul)
    }
}

fn strategy_errors(s: &Strategy) -> Vec<FieldError> {
    let mut errs = Vec::new();
    if let Some(w) = s.weight() {
        if !(0.0..=1.0).contains(&w) {
            errs.push(FieldError::new("w", format!("must lie in [0, 1], got {w}")));
        }
    }
    if let Strategy::ExpWeighted { p, .. } = *s {
        if !(p.is_finite() && p > 0.0) {
            errs.push(FieldError::new("p", format!("must be positive, got {p}")));
        }
    }
    errs
}

/// Outage and throughput estimates for one strategy at one configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThroughputEstimate {
    pub n: u64,
    pub outage_count_dl: u64,
    pub outage_count_ul: u64,
    pub p_od: f64,
    pub p_ou: f64,
    /// Binomial standard errors `sqrt(p (1 - p) / n)`.
    pub se_dl: f64,
    pub se_ul: f64,
    pub c_d: f64,
    pub c_u: f64,
    pub c_t: f64,
}

impl ThroughputEstimate {
    pub fn from_counts(n: u64, outage_count_dl: u64, outage_count_ul: u64, budget: &LinkBudget) -> Self {
        let nf = n as f64;
        let p_od = outage_count_dl as f64 / nf;
        let p_ou = outage_count_ul as f64 / nf;
        let (c_d, c_u) = (budget.c_d(), budget.c_u());
        Self {
            n,
            outage_count_dl,
            outage_count_ul,
            p_od,
            p_ou,
            se_dl: (p_od * (1.0 - p_od) / nf).sqrt(),
            se_ul: (p_ou * (1.0 - p_ou) / nf).sqrt(),
            c_d,
            c_u,
            c_t: c_d * (1.0 - p_od) + c_u * (1.0 - p_ou),
        }
    }
}

pub fn run_trials(config: &SimConfig) -> Result<ThroughputEstimate> {
    Ok(run_strategies(config, &[config.strategy])?.remove(0))
}

/// Evaluates every strategy on the same realizations. `config.strategy` is
/// ignored.
pub fn run_strategies(config: &SimConfig, strategies: &[Strategy]) -> Result<Vec<ThroughputEstimate>> {
    let streams = TrialStreams::new(config.seed);
    run_strategies_with(config, strategies, |t, ch| ch.resample(&mut streams.stream(t)))
}

/// Like [`run_strategies`], with the realization of trial `t` written into the
/// buffer by `source`. The buffer always has the configured dimensions.
pub fn run_strategies_with<F>(config: &SimConfig, strategies: &[Strategy], source: F) -> Result<Vec<ThroughputEstimate>>
where
    F: Fn(u64, &mut ChannelRealization) + Sync,
{
    let budget = config.budget()?;
    check_strategies(strategies)?;
    let k = strategies.len();
    let counts = fold_trials(
        config,
        &source,
        || vec![[0u64; 2]; k],
        |acc, ch| {
            for (s, c) in strategies.iter().zip(acc.iter_mut()) {
                let [dl, ul] = outages(&budget, s, ch);
                c[0] += dl as u64;
                c[1] += ul as u64;
            }
        },
        |mut acc, part| {
            for (a, p) in acc.iter_mut().zip(part) {
                a[0] += p[0];
                a[1] += p[1];
            }
            acc
        },
    )?;
    Ok(counts
        .into_iter()
        .map(|[dl, ul]| ThroughputEstimate::from_counts(config.n_samples, dl, ul, &budget))
        .collect())
}

fn check_strategies(strategies: &[Strategy]) -> Result<()> {
    let mut errs: Vec<FieldError> = strategies.iter().flat_map(strategy_errors).collect();
    if errs.is_empty() {
        Ok(())
    } else {
        errs.dedup();
        Err(Error::Config(errs))
    }
}

#[inline]
fn outages(budget: &LinkBudget, s: &Strategy, ch: &ChannelRealization) -> [bool; 2] {
    let sel = s.select_unchecked(ch);
    [
        outage_indicator(budget.dl(sel.h), budget.gamma_t_dl),
        outage_indicator(budget.ul(sel.g, sel.alpha), budget.gamma_t_ul),
    ]
}

/// Runs `step` over every trial in fixed batches and merges the per-batch
/// accumulators. `merge` must be associative for the result to be independent
/// of scheduling.
fn fold_trials<T, S, I, St, M>(config: &SimConfig, source: &S, init: I, step: St, merge: M) -> Result<T>
where
    T: Send,
    S: Fn(u64, &mut ChannelRealization) + Sync,
    I: Fn() -> T + Sync + Send,
    St: Fn(&mut T, &ChannelRealization) + Sync,
    M: Fn(T, T) -> T + Sync + Send,
{
    let n = config.n_samples;
    let template = ChannelRealization::new(
        vec![1.0; config.m_t],
        vec![1.0; config.m_r],
        vec![vec![1.0; config.m_t]; config.m_r],
    )?;
    Ok((0..n.div_ceil(BATCH))
        .into_par_iter()
        .map(|b| {
            let mut ch = template.clone();
            let mut acc = init();
            for t in b * BATCH..((b + 1) * BATCH).min(n) {
                source(t, &mut ch);
                step(&mut acc, &ch);
            }
            acc
        })
        .reduce(&init, &merge))
}

/// Mean per-trial sum-throughput difference between two strategies evaluated
/// on the same realizations, with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairedDifference {
    pub n: u64,
    /// Estimate of `C_T(a) - C_T(b)`.
    pub mean: f64,
    pub se: f64,
}

impl PairedDifference {
    /// True unless `a` is worse than `b` by more than `k` standard errors.
    pub fn not_worse(&self, k: f64) -> bool {
        self.mean >= -k * self.se
    }
}

/// Paired comparison of `a` against `b` at `config`. Per trial the difference
/// takes one of nine values, one for each change in the DL and UL outage
/// indicators, so only integer tallies are reduced.
pub fn compare_strategies(config: &SimConfig, a: Strategy, b: Strategy) -> Result<PairedDifference> {
    let budget = config.budget()?;
    check_strategies(&[a, b])?;
    let streams = TrialStreams::new(config.seed);
    let tally = fold_trials(
        config,
        &|t, ch: &mut ChannelRealization| ch.resample(&mut streams.stream(t)),
        || [0u64; 9],
        |acc, ch| {
            let [a_dl, a_ul] = outages(&budget, &a, ch);
            let [b_dl, b_ul] = outages(&budget, &b, ch);
            // each delta in {-1, 0, 1}, shifted to {0, 1, 2}
            let d_dl = (1 + b_dl as i8 - a_dl as i8) as usize;
            let d_ul = (1 + b_ul as i8 - a_ul as i8) as usize;
            acc[3 * d_dl + d_ul] += 1;
        },
        |mut acc, part| {
            for (x, y) in acc.iter_mut().zip(part) {
                *x += y;
            }
            acc
        },
    )?;
    let (c_d, c_u) = (budget.c_d(), budget.c_u());
    let value = |k: usize| c_d * ((k / 3) as f64 - 1.0) + c_u * ((k % 3) as f64 - 1.0);
    let n = config.n_samples;
    let nf = n as f64;
    let mean = (0..9).map(|k| tally[k] as f64 * value(k)).sum::<f64>() / nf;
    let var = if n > 1 {
        (0..9).map(|k| tally[k] as f64 * (value(k) - mean).powi(2)).sum::<f64>() / (nf - 1.0)
    } else {
        0.0
    };
    Ok(PairedDifference {
        n,
        mean,
        se: (var / nf).sqrt(),
    })
}

fn check_grid(name: &str, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::invalid(format!("{name} grid is empty")));
    }
    if let Some(x) = grid.iter().find(|x| !x.is_finite()) {
        return Err(Error::invalid(format!("{name} grid contains non-finite value {x}")));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid(format!("{name} grid must be strictly ascending")));
    }
    Ok(())
}

fn check_weight_grid(grid: &[f64]) -> Result<()> {
    check_grid("weight", grid)?;
    if let Some(w) = grid.iter().find(|w| !(0.0..=1.0).contains(*w)) {
        return Err(Error::invalid(format!("weight grid value {w} outside [0, 1]")));
    }
    Ok(())
}

/// `start, start + step, ...` up to and including `stop` (within rounding).
pub fn step_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) || step <= 0.0 || stop < start {
        return Err(Error::invalid(format!(
            "grid {start}:{stop}:{step} needs finite bounds, start <= stop and a positive step"
        )));
    }
    let count = ((stop - start) / step + 1e-9).floor() as u64;
    if count > 1_000_000 {
        return Err(Error::invalid("grid has more than a million points"));
    }
    Ok((0..=count)
        .map(|k| {
            let v = start + k as f64 * step;
            if (v - stop).abs() < 1e-9 * step {
                stop
            } else {
                v
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightRow {
    pub w: f64,
    pub mm: ThroughputEstimate,
    pub li: ThroughputEstimate,
    pub mo: ThroughputEstimate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightSweep {
    pub method: MoMethod,
    pub rows: Vec<WeightRow>,
}

impl WeightSweep {
    /// Row with the highest multi-objective sum throughput; earliest on ties.
    pub fn best(&self) -> &WeightRow {
        self.rows
            .iter()
            .reduce(|best, r| if r.mo.c_t > best.mo.c_t { r } else { best })
            .expect("sweeps are never empty")
    }
}

/// MM-AS, LI-AS and the multi-objective rule at every weight in `w_grid`, all
/// on one shared set of realizations. `base.strategy` is ignored.
pub fn sweep_weight(base: &SimConfig, w_grid: &[f64], method: MoMethod) -> Result<WeightSweep> {
    check_weight_grid(w_grid)?;
    let mut strategies = vec![Strategy::MaxMax, Strategy::LeastInterference];
    strategies.extend(w_grid.iter().map(|&w| method.strategy(w)));
    let est = run_strategies(base, &strategies)?;
    let rows = w_grid
        .iter()
        .zip(&est[2..])
        .map(|(&w, &mo)| WeightRow {
            w,
            mm: est[0],
            li: est[1],
            mo,
        })
        .collect();
    Ok(WeightSweep { method, rows })
}

/// Grid weight maximizing the multi-objective sum throughput at `config`,
/// searched on realizations independent of `config.seed` so that evaluating
/// the tuned weight afterwards carries no selection bias.
pub fn tune_weight(config: &SimConfig, method: MoMethod, w_grid: &[f64]) -> Result<f64> {
    let tuning = SimConfig {
        seed: config.seed ^ TUNING_STREAM_KEY,
        ..*config
    };
    Ok(sweep_weight(&tuning, w_grid, method)?.best().w)
}

/// How multi-objective strategies get their weight at each SNR point.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightRule {
    /// Keep the weight each strategy was given.
    Fixed,
    /// Use [`empirical_weight`] at the point's `eta` and SNR.
    Empirical,
    /// Pick the best weight on the grid at each point, see [`tune_weight`].
    Tuned(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SnrRow {
    pub snr_db: f64,
    /// Strategies as evaluated at this point, weights resolved.
    pub strategies: Vec<Strategy>,
    pub estimates: Vec<ThroughputEstimate>,
}

impl SnrRow {
    pub fn estimate(&self, label: &str) -> Option<&ThroughputEstimate> {
        self.strategies
            .iter()
            .position(|s| s.label() == label)
            .map(|k| &self.estimates[k])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SnrSweep {
    pub rule: WeightRule,
    pub rows: Vec<SnrRow>,
}

pub fn sweep_snr(
    base: &SimConfig,
    snr_grid_db: &[f64],
    strategies: &[Strategy],
    auto_weight: bool,
) -> Result<SnrSweep> {
    let rule = if auto_weight {
        WeightRule::Empirical
    } else {
        WeightRule::Fixed
    };
    sweep_snr_with(base, snr_grid_db, strategies, &rule)
}

/// Every strategy at every SNR point, sharing realizations within a point.
pub fn sweep_snr_with(
    base: &SimConfig,
    snr_grid_db: &[f64],
    strategies: &[Strategy],
    rule: &WeightRule,
) -> Result<SnrSweep> {
    check_grid("snr", snr_grid_db)?;
    if strategies.is_empty() {
        return Err(Error::invalid("no strategies to sweep"));
    }
    if let WeightRule::Tuned(grid) = rule {
        check_weight_grid(grid)?;
    }
    base.budget()?;
    let rows = snr_grid_db
        .iter()
        .map(|&snr_db| {
            let cfg = SimConfig { snr_db, ..*base };
            let resolved = strategies
                .iter()
                .map(|s| {
                    Ok(match (rule, s) {
                        (WeightRule::Fixed, _) => *s,
                        (_, s) if !s.is_multi_objective() => *s,
                        (WeightRule::Empirical, s) => s.with_weight(empirical_weight(cfg.eta_linear(), snr_db)?),
                        (WeightRule::Tuned(grid), s) => {
                            let method = match *s {
                                Strategy::WeightedSum { scale, .. } => MoMethod::WeightedSum { scale },
                                Strategy::ExpWeighted { p, scale, .. } => MoMethod::ExpWeighted { p, scale },
                                _ => unreachable!("baselines are handled above"),
                            };
                            s.with_weight(tune_weight(&cfg, method, grid)?)
                        }
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let estimates = run_strategies(&cfg, &resolved)?;
            Ok(SnrRow {
                snr_db,
                strategies: resolved,
                estimates,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SnrSweep {
        rule: rule.clone(),
        rows,
    })
}
