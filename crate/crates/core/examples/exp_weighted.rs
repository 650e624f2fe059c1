//! Weighted-sum selection with the empirical weight next to the exponential
//! weighted criterion with its weight tuned per SNR point on an independent
//! seed.
//!
//! ```text
//! cargo run --release --example exp_weighted [samples]
//! ```

use fdas::montecarlo::{step_grid, sweep_snr_with, SimConfig, WeightRule};
use fdas::selection::Strategy;

fn main() -> fdas::Result<()> {
    let n_samples = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100_000);
    let grid = step_grid(0.0, 30.0, 5.0)?;
    let tuned = WeightRule::Tuned(step_grid(0.0, 1.0, 0.05)?);
    for eta_db in [-10.0, 0.0] {
        let cfg = SimConfig {
            eta_db,
            n_samples,
            seed: 1,
            ..SimConfig::default()
        };
        let ws = sweep_snr_with(&cfg, &grid, &[Strategy::weighted_sum(0.5)?], &WeightRule::Empirical)?;
        let ewc = sweep_snr_with(&cfg, &grid, &[Strategy::exp_weighted(0.5, 1.0)?], &tuned)?;
        println!("eta = {eta_db} dB");
        println!("  gamma0   w_ws   MO-WS    w_ewc  MO-EWC   gap");
        for (a, b) in ws.rows.iter().zip(&ewc.rows) {
            let (x, y) = (a.estimates[0].c_t, b.estimates[0].c_t);
            println!(
                "  {:5.1}   {:.2}   {x:.4}   {:.2}   {y:.4}  {:+.4}",
                a.snr_db,
                a.strategies[0].weight().unwrap(),
                b.strategies[0].weight().unwrap(),
                y - x
            );
        }
        println!();
    }
    Ok(())
}
