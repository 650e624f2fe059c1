//! Antenna selection criteria.
//!
//! Each criterion maps a [`ChannelRealization`] to one receive antenna `i` and
//! one transmit antenna `j`. The multi-objective rules scalarize the three goals
//! (large `h`, large `g`, small `alpha`) with weights
//! `((1 - w) / 2, (1 - w) / 2, w)`:
//!
//! * weighted sum: `f(i, j) = -((1-w)/2) h_j - ((1-w)/2) g_i + w a_ij`
//! * exponential weighted criterion:
//!   `F(i, j) = sum_k (e^(p w_k) - 1) e^(p f_k(i, j))` with
//!   `(f_1, f_2, f_3) = (-h_j, -g_i, a_ij)`.
//!
//! The multi-objective scores are evaluated on a [`GainScale`]: either the
//! power gains themselves or the channel amplitudes (square roots of the power
//! gains). Both scales give the same selection at `w = 0` and `w = 1`.
//!
//! All searches are exhaustive over the `M_R * M_T` pairs. Ties go to the
//! lowest receive index, then the lowest transmit index.

use std::fmt;

use crate::channel::ChannelRealization;
use crate::error::{Error, Result};

/// Which quantity the multi-objective scores combine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GainScale {
    /// `sqrt` of the power gain, the Rayleigh envelope.
    #[default]
    Amplitude,
    /// Linear power gain as stored in the realization.
    Power,
}

impl GainScale {
    #[inline]
    pub fn apply(self, power_gain: f64) -> f64 {
        match self {
            GainScale::Amplitude => power_gain.sqrt(),
            GainScale::Power => power_gain,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GainScale::Amplitude => "amplitude",
            GainScale::Power => "power",
        }
    }
}

impl std::str::FromStr for GainScale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "amplitude" => Ok(GainScale::Amplitude),
            "power" => Ok(GainScale::Power),
            other => Err(Error::invalid(format!("unknown gain scale `{other}`"))),
        }
    }
}

/// Result of one selection. Indices are zero-based.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Selection {
    pub rx: usize,
    pub tx: usize,
    pub h: f64,
    pub g: f64,
    pub alpha: f64,
    /// The criterion's score at `(rx, tx)`. MM-AS reports `-(h + g) / 2` and
    /// LI-AS reports `alpha`.
    pub objective: f64,
}

impl Selection {
    fn at(ch: &ChannelRealization, rx: usize, tx: usize, objective: f64) -> Self {
        Self {
            rx,
            tx,
            h: ch.h()[tx],
            g: ch.g()[rx],
            alpha: ch.a(rx, tx),
            objective,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Strategy {
    /// MM-AS: strongest DL and strongest UL antenna, chosen independently.
    MaxMax,
    /// LI-AS: the pair with the weakest self-interference path.
    LeastInterference,
    /// MO-WS: weighted-sum scalarization.
    WeightedSum { w: f64, scale: GainScale },
    /// MO-EWC: exponential weighted criterion with sharpness `p`.
    ExpWeighted { w: f64, p: f64, scale: GainScale },
}

pub const DEFAULT_EWC_SHARPNESS: f64 = 1.0;

impl Strategy {
    pub fn weighted_sum(w: f64) -> Result<Self> {
        let s = Strategy::WeightedSum {
            w,
            scale: GainScale::default(),
        };
        s.validate()?;
        Ok(s)
    }

    pub fn exp_weighted(w: f64, p: f64) -> Result<Self> {
        let s = Strategy::ExpWeighted {
            w,
            p,
            scale: GainScale::default(),
        };
        s.validate()?;
        Ok(s)
    }

    /// Legend name used in tables and charts.
    pub fn label(&self) -> &'static str {
        match self {
            Strategy::MaxMax => "MM-AS",
            Strategy::LeastInterference => "LI-AS",
            Strategy::WeightedSum { .. } => "MO-WS",
            Strategy::ExpWeighted { .. } => "MO-EWC",
        }
    }

    pub fn weight(&self) -> Option<f64> {
        match *self {
            Strategy::WeightedSum { w, .. } | Strategy::ExpWeighted { w, .. } => Some(w),
            _ => None,
        }
    }

    pub fn is_multi_objective(&self) -> bool {
        self.weight().is_some()
    }

    /// Same criterion with a different weight; baselines are returned unchanged.
    pub fn with_weight(self, new_w: f64) -> Self {
        match self {
            Strategy::WeightedSum { scale, .. } => Strategy::WeightedSum { w: new_w, scale },
            Strategy::ExpWeighted { p, scale, .. } => Strategy::ExpWeighted { w: new_w, p, scale },
            other => other,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Strategy::MaxMax | Strategy::LeastInterference => Ok(()),
            Strategy::WeightedSum { w, .. } => check_weight(w),
            Strategy::ExpWeighted { w, p, .. } => {
                check_weight(w)?;
                check_sharpness(p)
            }
        }
    }

    pub fn select(&self, ch: &ChannelRealization) -> Result<Selection> {
        self.validate()?;
        Ok(self.select_unchecked(ch))
    }

    /// Selection without re-validating the parameters.
    #[inline]
    pub(crate) fn select_unchecked(&self, ch: &ChannelRealization) -> Selection {
        match *self {
            Strategy::MaxMax => select_mm(ch),
            Strategy::LeastInterference => select_li(ch),
            Strategy::WeightedSum { w, scale } => ws_argmin(ch, w, scale),
            Strategy::ExpWeighted { w, p, scale } => ewc_argmin(ch, w, p, scale),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Strategy::WeightedSum { w, scale } => write!(f, "MO-WS(w={w}, {})", scale.name()),
            Strategy::ExpWeighted { w, p, scale } => {
                write!(f, "MO-EWC(w={w}, p={p}, {})", scale.name())
            }
            _ => f.write_str(self.label()),
        }
    }
}

/// A multi-objective scalarization without its weight, used by sweeps that
/// vary `w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MoMethod {
    WeightedSum { scale: GainScale },
    ExpWeighted { p: f64, scale: GainScale },
}

impl Default for MoMethod {
    fn default() -> Self {
        MoMethod::WeightedSum {
            scale: GainScale::default(),
        }
    }
}

impl MoMethod {
    pub fn strategy(self, w: f64) -> Strategy {
        match self {
            MoMethod::WeightedSum { scale } => Strategy::WeightedSum { w, scale },
            MoMethod::ExpWeighted { p, scale } => Strategy::ExpWeighted { w, p, scale },
        }
    }

    pub fn label(self) -> &'static str {
        self.strategy(0.0).label()
    }
}

fn check_weight(w: f64) -> Result<()> {
    if (0.0..=1.0).contains(&w) {
        Ok(())
    } else {
        Err(Error::invalid(format!("weight must lie in [0, 1], got {w}")))
    }
}

fn check_sharpness(p: f64) -> Result<()> {
    if p.is_finite() && p > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("sharpness p must be positive, got {p}")))
    }
}

/// First index of the maximum; NaN-free input assumed.
#[inline]
fn argmax(v: &[f64]) -> usize {
    let mut best = 0;
    for (k, &x) in v.iter().enumerate().skip(1) {
        if x > v[best] {
            best = k;
        }
    }
    best
}

pub fn select_mm(ch: &ChannelRealization) -> Selection {
    let tx = argmax(ch.h());
    let rx = argmax(ch.g());
    let objective = -(ch.h()[tx] + ch.g()[rx]) / 2.0;
    Selection::at(ch, rx, tx, objective)
}

pub fn select_li(ch: &ChannelRealization) -> Selection {
    let a = ch.a_flat();
    let mut best = 0;
    for (k, &x) in a.iter().enumerate().skip(1) {
        if x < a[best] {
            best = k;
        }
    }
    let (rx, tx) = (best / ch.m_t(), best % ch.m_t());
    Selection::at(ch, rx, tx, a[best])
}

pub fn select_mo_ws(ch: &ChannelRealization, w: f64, scale: GainScale) -> Result<Selection> {
    check_weight(w)?;
    Ok(ws_argmin(ch, w, scale))
}

pub fn select_mo_ewc(ch: &ChannelRealization, w: f64, p: f64, scale: GainScale) -> Result<Selection> {
    check_weight(w)?;
    check_sharpness(p)?;
    Ok(ewc_argmin(ch, w, p, scale))
}

/// Exhaustive row-major argmin of `score(i, j)`; strict `<` keeps the first
/// minimum, which is the lowest `(i, j)` in lexicographic order.
#[inline]
fn argmin_pairs(m_r: usize, m_t: usize, mut score: impl FnMut(usize, usize) -> f64) -> (usize, usize, f64) {
    let mut best = (0, 0, score(0, 0));
    for i in 0..m_r {
        for j in 0..m_t {
            if i == 0 && j == 0 {
                continue;
            }
            let s = score(i, j);
            if s < best.2 {
                best = (i, j, s);
            }
        }
    }
    best
}

fn ws_argmin(ch: &ChannelRealization, w: f64, scale: GainScale) -> Selection {
    let side = (1.0 - w) / 2.0;
    // -(side * h_j) is shared by every row; hoist it.
    let dl: Vec<f64> = ch.h().iter().map(|&h| -(side * scale.apply(h))).collect();
    let ul: Vec<f64> = ch.g().iter().map(|&g| side * scale.apply(g)).collect();
    let (rx, tx, objective) = argmin_pairs(ch.m_r(), ch.m_t(), |i, j| dl[j] - ul[i] + w * scale.apply(ch.a(i, j)));
    Selection::at(ch, rx, tx, objective)
}

/// Minimizes `ln F` by log-sum-exp, so large `p * alpha` cannot overflow the
/// comparison. The reported objective is `F` itself.
fn ewc_argmin(ch: &ChannelRealization, w: f64, p: f64, scale: GainScale) -> Selection {
    // ln(e^(p w_k) - 1); -inf for zero-weight terms, which then drop out.
    let ln_side = (p * (1.0 - w) / 2.0).exp_m1().ln();
    let ln_loop = (p * w).exp_m1().ln();
    let dl: Vec<f64> = ch.h().iter().map(|&h| ln_side - p * scale.apply(h)).collect();
    let ul: Vec<f64> = ch.g().iter().map(|&g| ln_side - p * scale.apply(g)).collect();
    let (rx, tx, ln_f) = argmin_pairs(ch.m_r(), ch.m_t(), |i, j| {
        let si = if ln_loop.is_finite() {
            ln_loop + p * scale.apply(ch.a(i, j))
        } else {
            f64::NEG_INFINITY
        };
        log_sum_exp3(dl[j], ul[i], si)
    });
    Selection::at(ch, rx, tx, ln_f.exp())
}

#[inline]
fn log_sum_exp3(a: f64, b: f64, c: f64) -> f64 {
    let m = a.max(b).max(c);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + ((a - m).exp() + (b - m).exp() + (c - m).exp()).ln()
}

/// Weight rule `w = 0.5 eta^0.301 + 0.02 snr_db - 0.3`, clamped to `[0, 1]`.
///
/// `eta_linear` is the linear self-interference cancellation factor and
/// `snr_db` the average SNR in dB.
pub fn empirical_weight(eta_linear: f64, snr_db: f64) -> Result<f64> {
    if !(eta_linear.is_finite() && eta_linear > 0.0) {
        return Err(Error::invalid(format!(
            "eta must be a positive linear ratio, got {eta_linear}"
        )));
    }
    if !snr_db.is_finite() {
        return Err(Error::invalid(format!("snr must be finite, got {snr_db}")));
    }
    let raw = 0.5 * eta_linear.powf(0.301) + 0.02 * snr_db - 0.3;
    Ok(raw.clamp(0.0, 1.0))
}
