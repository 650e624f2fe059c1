//! Channel realizations and dB conversions.
//!
//! Every gain is a linear power gain `|x|^2` of a unit-variance Rayleigh
//! amplitude, so each one is an independent unit-mean exponential draw.
//! Trial `t` of a run with master seed `s` always reads ChaCha8 stream `t`
//! keyed by `s`, which makes a realization a pure function of `(s, t)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub fn db_to_linear(x_db: f64) -> Result<f64> {
    if !x_db.is_finite() {
        return Err(Error::invalid(format!("dB value must be finite, got {x_db}")));
    }
    Ok(10f64.powf(x_db / 10.0))
}

pub fn linear_to_db(x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::invalid(format!(
            "linear ratio must be positive and finite, got {x}"
        )));
    }
    Ok(10.0 * x.log10())
}

/// Inverse CDF of the unit-mean exponential distribution, `-ln(u)`.
#[inline]
pub fn exp_from_uniform(u: f64) -> f64 {
    -u.ln()
}

/// Uniform draw on `(0, 1]`. Never returns zero.
#[inline]
pub fn open_closed_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    1.0 - rng.random::<f64>()
}

#[inline]
pub fn sample_exp1<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    exp_from_uniform(open_closed_unit(rng))
}

/// Stream factory for per-trial random numbers.
#[derive(Clone)]
pub struct TrialStreams {
    base: ChaCha8Rng,
}

impl TrialStreams {
    pub fn new(seed: u64) -> Self {
        Self {
            base: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream for trial `t`, positioned at its start.
    pub fn stream(&self, t: u64) -> ChaCha8Rng {
        let mut rng = self.base.clone();
        rng.set_stream(t);
        rng.set_word_pos(0);
        rng
    }
}

/// One draw of every channel the base station sees.
///
/// Indices are zero-based: `h[j]` for transmit antenna `j`, `g[i]` for receive
/// antenna `i`, and `a(i, j)` couples transmit antenna `j` into receive
/// antenna `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    m_t: usize,
    m_r: usize,
    h: Vec<f64>,
    g: Vec<f64>,
    /// Row-major `m_r x m_t`.
    a: Vec<f64>,
}

impl ChannelRealization {
    /// Builds a realization from explicit gains, with `a` given as `m_r` rows of
    /// `m_t` entries.
    pub fn new(h: Vec<f64>, g: Vec<f64>, a: Vec<Vec<f64>>) -> Result<Self> {
        let (m_t, m_r) = (h.len(), g.len());
        if m_t == 0 || m_r == 0 {
            return Err(Error::invalid("antenna counts must be at least 1"));
        }
        if a.len() != m_r || a.iter().any(|row| row.len() != m_t) {
            return Err(Error::invalid(format!("interference matrix must be {m_r}x{m_t}")));
        }
        let a: Vec<f64> = a.into_iter().flatten().collect();
        if let Some(bad) = h.iter().chain(&g).chain(&a).find(|x| !(x.is_finite() && **x > 0.0)) {
            return Err(Error::invalid(format!("gains must be positive and finite, got {bad}")));
        }
        Ok(Self { m_t, m_r, h, g, a })
    }

    /// Draws every gain as an independent Exp(1) value: `h`, then `g`, then the
    /// interference matrix in row-major order.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R, m_t: usize, m_r: usize) -> Result<Self> {
        if m_t == 0 || m_r == 0 {
            return Err(Error::invalid("antenna counts must be at least 1"));
        }
        let mut ch = Self {
            m_t,
            m_r,
            h: vec![0.0; m_t],
            g: vec![0.0; m_r],
            a: vec![0.0; m_t * m_r],
        };
        ch.resample(rng);
        Ok(ch)
    }

    /// Redraws all gains in place, keeping the dimensions.
    pub fn resample<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        for x in self.h.iter_mut().chain(self.g.iter_mut()).chain(self.a.iter_mut()) {
            *x = sample_exp1(rng);
        }
    }

    pub fn m_t(&self) -> usize {
        self.m_t
    }

    pub fn m_r(&self) -> usize {
        self.m_r
    }

    pub fn h(&self) -> &[f64] {
        &self.h
    }

    pub fn g(&self) -> &[f64] {
        &self.g
    }

    #[inline]
    pub fn a(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.m_t + j]
    }

    /// Interference matrix as a flat row-major slice.
    pub fn a_flat(&self) -> &[f64] {
        &self.a
    }

    pub fn a_row(&self, i: usize) -> &[f64] {
        &self.a[i * self.m_t..(i + 1) * self.m_t]
    }

    /// Every gain multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        let mul = |v: &[f64]| v.iter().map(|x| x * c).collect::<Vec<_>>();
        Self {
            m_t: self.m_t,
            m_r: self.m_r,
            h: mul(&self.h),
            g: mul(&self.g),
            a: mul(&self.a),
        }
    }
}

/// Realization of trial `t` under master seed `seed`.
pub fn trial_realization(seed: u64, t: u64, m_t: usize, m_r: usize) -> Result<ChannelRealization> {
    ChannelRealization::sample(&mut TrialStreams::new(seed).stream(t), m_t, m_r)
}
