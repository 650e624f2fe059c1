//! One configuration, every strategy on the same realizations, with outage
//! standard errors.
//!
//! ```text
//! cargo run --release --example single_run [samples]
//! ```

use fdas::montecarlo::{run_strategies, SimConfig};
use fdas::selection::{empirical_weight, Strategy};

fn main() -> fdas::Result<()> {
    let n_samples = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100_000);
    let cfg = SimConfig {
        snr_db: 10.0,
        eta_db: -10.0,
        n_samples,
        seed: 1,
        ..SimConfig::default()
    };
    let w = empirical_weight(cfg.eta_linear(), cfg.snr_db)?;
    let strategies = [
        Strategy::MaxMax,
        Strategy::LeastInterference,
        Strategy::weighted_sum(w)?,
        Strategy::exp_weighted(w, 1.0)?,
    ];
    println!(
        "M_T = {}, M_R = {}, gamma0 = {} dB, eta = {} dB, n = {n_samples}, w = {w:.3}",
        cfg.m_t, cfg.m_r, cfg.snr_db, cfg.eta_db
    );
    println!("strategy   p_od (se)            p_ou (se)            C_T");
    for (s, e) in strategies.iter().zip(run_strategies(&cfg, &strategies)?) {
        println!(
            "{:<9}  {:.5} ({:.5})    {:.5} ({:.5})    {:.4}",
            s.label(),
            e.p_od,
            e.se_dl,
            e.p_ou,
            e.se_ul,
            e.c_t
        );
    }
    Ok(())
}
