//! Sum throughput versus the weight `w` for MM-AS, LI-AS and MO-WS with four
//! antennas per side at 15 dB SNR, for light (-10 dB) and strong (0 dB)
//! residual self-interference, plus a 12 dB SNR curve at -10 dB.
//!
//! ```text
//! cargo run --release --example weight_sweep [samples]
//! ```

use fdas::montecarlo::{step_grid, sweep_weight, SimConfig};
use fdas::selection::MoMethod;

fn main() -> fdas::Result<()> {
    let n_samples = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100_000);
    let grid = step_grid(0.0, 1.0, 0.05)?;
    for (snr_db, eta_db) in [(15.0, -10.0), (15.0, 0.0), (12.0, -10.0)] {
        let cfg = SimConfig {
            snr_db,
            eta_db,
            n_samples,
            seed: 1,
            ..SimConfig::default()
        };
        let sweep = sweep_weight(&cfg, &grid, MoMethod::default())?;
        let first = &sweep.rows[0];
        println!(
            "gamma0 = {snr_db} dB, eta = {eta_db} dB: MM-AS {:.3}, LI-AS {:.3}",
            first.mm.c_t, first.li.c_t
        );
        for r in &sweep.rows {
            let mark = if r.mo.c_t >= r.mm.c_t.max(r.li.c_t) { "+" } else { " " };
            println!("  w = {:.2}  MO-WS {:.4} {mark}", r.w, r.mo.c_t);
        }
        println!("  best w = {:.2}\n", sweep.best().w);
    }
    Ok(())
}
