//! Per-trial link quantities. Noise power is normalized to one, so every
//! power below is a ratio to noise.

use crate::error::{Error, Result};

/// Linear-scale link parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    /// `P_D / noise`.
    pub gamma0_dl: f64,
    /// `P_U / noise`.
    pub gamma0_ul: f64,
    /// Residual self-interference after cancellation, in `[0, 1]`.
    pub eta: f64,
    pub gamma_t_dl: f64,
    pub gamma_t_ul: f64,
}

impl LinkBudget {
    pub fn new(gamma0_dl: f64, gamma0_ul: f64, eta: f64, gamma_t_dl: f64, gamma_t_ul: f64) -> Result<Self> {
        let b = Self {
            gamma0_dl,
            gamma0_ul,
            eta,
            gamma_t_dl,
            gamma_t_ul,
        };
        b.validate()?;
        Ok(b)
    }

    /// Equal DL/UL SNR and equal thresholds.
    pub fn symmetric(gamma0: f64, eta: f64, gamma_t: f64) -> Result<Self> {
        Self::new(gamma0, gamma0, eta, gamma_t, gamma_t)
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("gamma0_dl", self.gamma0_dl),
            ("gamma0_ul", self.gamma0_ul),
            ("eta", self.eta),
            ("gamma_t_dl", self.gamma_t_dl),
            ("gamma_t_ul", self.gamma_t_ul),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::invalid(format!("{name} must be finite and >= 0, got {v}")));
            }
        }
        if self.eta > 1.0 {
            return Err(Error::invalid(format!("eta must not exceed 1, got {}", self.eta)));
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn dl(&self, h: f64) -> f64 {
        self.gamma0_dl * h
    }

    #[inline]
    pub(crate) fn ul(&self, g: f64, alpha: f64) -> f64 {
        self.gamma0_ul * g / (1.0 + self.eta * self.gamma0_dl * alpha)
    }

    pub fn c_d(&self) -> f64 {
        outage_capacity(self.gamma_t_dl)
    }

    pub fn c_u(&self) -> f64 {
        outage_capacity(self.gamma_t_ul)
    }
}

fn check_gain(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x >= 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} must be a non-negative gain, got {x}")))
    }
}

/// Downlink SINR `gamma0_dl * h`.
pub fn sinr_dl(budget: &LinkBudget, h: f64) -> Result<f64> {
    check_gain("h", h)?;
    Ok(budget.dl(h))
}

/// Uplink SINR `gamma0_ul * g / (1 + eta * gamma0_dl * alpha)`.
pub fn sinr_ul(budget: &LinkBudget, g: f64, alpha: f64) -> Result<f64> {
    check_gain("g", g)?;
    check_gain("alpha", alpha)?;
    Ok(budget.ul(g, alpha))
}

/// Outage happens strictly below the threshold.
#[inline]
pub fn outage_indicator(gamma: f64, gamma_t: f64) -> bool {
    gamma < gamma_t
}

/// Rate supported outside outage, `log2(1 + gamma_t)` bits/s/Hz.
pub fn outage_capacity(gamma_t: f64) -> f64 {
    gamma_t.ln_1p() / std::f64::consts::LN_2
}

/// `c_d (1 - p_od) + c_u (1 - p_ou)`.
pub fn sum_throughput(c_d: f64, c_u: f64, p_od: f64, p_ou: f64) -> Result<f64> {
    for (name, p) in [("p_od", p_od), ("p_ou", p_ou)] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::invalid(format!("{name} must lie in [0, 1], got {p}")));
        }
    }
    for (name, c) in [("c_d", c_d), ("c_u", c_u)] {
        if !(c.is_finite() && c >= 0.0) {
            return Err(Error::invalid(format!("{name} must be a non-negative rate, got {c}")));
        }
    }
    Ok(c_d * (1.0 - p_od) + c_u * (1.0 - p_ou))
}
