//! Sum throughput versus average SNR with the empirical weight rule, for four
//! and eight antennas per side and both interference levels.
//!
//! ```text
//! cargo run --release --example snr_sweep [samples]
//! ```

use fdas::montecarlo::{step_grid, sweep_snr, SimConfig};
use fdas::selection::Strategy;

fn main() -> fdas::Result<()> {
    let n_samples = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100_000);
    let grid = step_grid(0.0, 30.0, 5.0)?;
    let strategies = [
        Strategy::MaxMax,
        Strategy::LeastInterference,
        Strategy::weighted_sum(0.5)?,
    ];
    for m in [4, 8] {
        for eta_db in [-10.0, 0.0] {
            let base = SimConfig {
                m_t: m,
                m_r: m,
                eta_db,
                n_samples,
                seed: 1,
                ..SimConfig::default()
            };
            let sweep = sweep_snr(&base, &grid, &strategies, true)?;
            println!("M_T = M_R = {m}, eta = {eta_db} dB");
            println!("  gamma0    w     MM-AS   LI-AS   MO-WS   MO-LI   MO-MM");
            for r in &sweep.rows {
                let [mm, li, mo] = [0, 1, 2].map(|k| r.estimates[k].c_t);
                println!(
                    "  {:5.1}  {:.3}  {mm:.3}   {li:.3}   {mo:.3}   {:+.3}  {:+.3}",
                    r.snr_db,
                    r.strategies[2].weight().unwrap(),
                    mo - li,
                    mo - mm
                );
            }
            println!();
        }
    }
    Ok(())
}
