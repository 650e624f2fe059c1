//! Joint transmit/receive antenna selection at a full-duplex base station.
//!
//! A base station with `M_T` transmit and `M_R` receive antennas serves one
//! downlink (DL) and one uplink (UL) user on the same resource block. Picking
//! one antenna per side trades DL gain `h`, UL gain `g` and the self-interference
//! gain `alpha` that leaks from the chosen transmit antenna into the chosen
//! receive antenna. This crate provides:
//!
//! * [`channel`]: i.i.d. Rayleigh power gains drawn from per-trial counter streams.
//! * [`selection`]: the max-max (MM-AS), least-interference (LI-AS), weighted-sum
//!   (MO-WS) and exponential weighted criterion (MO-EWC) selection rules.
//! * [`link`]: SINR, outage, outage capacity and sum throughput.
//! * [`montecarlo`]: deterministic, parallel trial loops and parameter sweeps.
//! * [`analytic`]: closed-form outage probabilities for MM-AS and LI-AS.
//! * [`table`], [`svg`], [`cli`]: CSV tables, SVG line charts and the `fdas` binary.
//!
//! ```
//! use fdas::montecarlo::{run_trials, SimConfig};
//! use fdas::selection::Strategy;
//!
//! let cfg = SimConfig {
//!     strategy: Strategy::MaxMax,
//!     n_samples: 2_000,
//!     ..SimConfig::default()
//! };
//! let est = run_trials(&cfg).unwrap();
//! assert!(est.c_t <= 2.0 * 11f64.log2());
//! ```

pub mod analytic;
pub mod channel;
pub mod cli;
mod error;
pub mod link;
pub mod montecarlo;
pub mod selection;
pub mod svg;
pub mod table;

pub use error::{Error, FieldError, Result};
