//! How the gain scale fed to the multi-objective criteria moves the weight
//! sweep. Amplitude is the default; power gains put the three terms on very
//! different spreads, and the curve changes shape under strong interference.
//!
//! ```text
//! cargo run --release --example gain_scale [samples]
//! ```

use fdas::montecarlo::{step_grid, sweep_weight, SimConfig};
use fdas::selection::{GainScale, MoMethod};

fn main() -> fdas::Result<()> {
    let n_samples = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(50_000);
    let grid = step_grid(0.0, 1.0, 0.1)?;
    for eta_db in [-10.0, 0.0] {
        let cfg = SimConfig {
            eta_db,
            n_samples,
            seed: 1,
            ..SimConfig::default()
        };
        let sweeps = [GainScale::Amplitude, GainScale::Power]
            .map(|scale| sweep_weight(&cfg, &grid, MoMethod::WeightedSum { scale }));
        let [amp, pow] = sweeps;
        let (amp, pow) = (amp?, pow?);
        println!(
            "eta = {eta_db} dB   (MM-AS {:.3}, LI-AS {:.3})",
            amp.rows[0].mm.c_t, amp.rows[0].li.c_t
        );
        println!("    w   amplitude  power");
        for (a, p) in amp.rows.iter().zip(&pow.rows) {
            println!("  {:.1}   {:.4}     {:.4}", a.w, a.mo.c_t, p.mo.c_t);
        }
        println!("  best  w = {:.1}    w = {:.1}\n", amp.best().w, pow.best().w);
    }
    Ok(())
}
