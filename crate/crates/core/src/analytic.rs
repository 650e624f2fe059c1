//! Closed-form outage probabilities under MM-AS and LI-AS.
//!
//! With unit-mean exponential gains:
//!
//! * MM-AS picks `h = max` of `M_T` draws and `g = max` of `M_R` draws, while
//!   `alpha` is whatever entry they index, an independent Exp(1) draw.
//! * LI-AS picks `alpha = min` of `M_T * M_R` draws, which is Exp(`M_T M_R`),
//!   and leaves `h` and `g` as unselected Exp(1) draws.
//!
//! Averaging the exponential CDF over an exponential interference gain gives
//! the `1 / (1 + k gamma_t eta)` factors below. Arguments are linear ratios.
//! Callers are expected to pass `gamma0 > 0` and non-negative thresholds.

/// Largest `M_R` for which [`mm_as_ul_outage`] is evaluated by plain
/// alternating summation. At 16 the binomial terms stay below `2^14` and the
/// cancellation error is far under Monte Carlo resolution.
pub const MAX_ALTERNATING_TERMS: usize = 16;

/// `(1 - exp(-gamma_t / gamma0))^m_t`.
pub fn mm_as_dl_outage(gamma0: f64, gamma_t: f64, m_t: usize) -> f64 {
    (-(-gamma_t / gamma0).exp_m1()).powi(m_t as i32)
}

/// `sum_k C(m_r, k) (-1)^k exp(-k gamma_t / gamma0) / (1 + k gamma_t eta)`.
///
/// # Panics
/// If `m_r` exceeds [`MAX_ALTERNATING_TERMS`].
pub fn mm_as_ul_outage(gamma0: f64, gamma_t: f64, eta: f64, m_r: usize) -> f64 {
    assert!(
        m_r <= MAX_ALTERNATING_TERMS,
        "alternating sum is only evaluated for m_r <= {MAX_ALTERNATING_TERMS}"
    );
    let mut binom = 1.0;
    let mut sum = 0.0;
    for k in 0..=m_r {
        let kf = k as f64;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binom * (-kf * gamma_t / gamma0).exp() / (1.0 + kf * gamma_t * eta);
        binom = binom * (m_r - k) as f64 / (kf + 1.0);
    }
    sum.clamp(0.0, 1.0)
}

/// `(p_od, p_ou)` under LI-AS.
pub fn li_as_outages(gamma0: f64, gamma_t_dl: f64, gamma_t_ul: f64, eta: f64, m_t: usize, m_r: usize) -> (f64, f64) {
    let n = (m_t * m_r) as f64;
    let p_od = -(-gamma_t_dl / gamma0).exp_m1();
    let p_ou = 1.0 - (-gamma_t_ul / gamma0).exp() * n / (n + gamma_t_ul * eta);
    (p_od, p_ou)
}

/// `(p_od, p_ou)` under MM-AS.
pub fn mm_as_outages(gamma0: f64, gamma_t_dl: f64, gamma_t_ul: f64, eta: f64, m_t: usize, m_r: usize) -> (f64, f64) {
    (
        mm_as_dl_outage(gamma0, gamma_t_dl, m_t),
        mm_as_ul_outage(gamma0, gamma_t_ul, eta, m_r),
    )
}
