//! Compares Monte Carlo outage estimates for MM-AS and LI-AS with their closed
//! forms, in units of the binomial standard error.
//!
//! ```text
//! cargo run --release --example closed_form_check [samples]
//! ```

use fdas::analytic::{li_as_outages, mm_as_outages};
use fdas::montecarlo::{run_strategies, SimConfig};
use fdas::selection::Strategy;

fn main() -> fdas::Result<()> {
    let n_samples: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100_000);
    println!(" M  gamma0  eta   quantity   estimate   exact      z");
    for m in [4, 8] {
        for snr_db in [10.0, 15.0] {
            for eta_db in [-10.0, 0.0] {
                let cfg = SimConfig {
                    m_t: m,
                    m_r: m,
                    snr_db,
                    eta_db,
                    n_samples,
                    seed: 1,
                    ..SimConfig::default()
                };
                let b = cfg.budget()?;
                let (mm_d, mm_u) = mm_as_outages(b.gamma0_dl, b.gamma_t_dl, b.gamma_t_ul, b.eta, m, m);
                let (li_d, li_u) = li_as_outages(b.gamma0_dl, b.gamma_t_dl, b.gamma_t_ul, b.eta, m, m);
                let est = run_strategies(&cfg, &[Strategy::MaxMax, Strategy::LeastInterference])?;
                for (name, p_hat, p) in [
                    ("MM p_od", est[0].p_od, mm_d),
                    ("MM p_ou", est[0].p_ou, mm_u),
                    ("LI p_od", est[1].p_od, li_d),
                    ("LI p_ou", est[1].p_ou, li_u),
                ] {
                    let se = (p * (1.0 - p) / n_samples as f64).sqrt();
                    println!(
                        "{m:2}  {snr_db:5.1}  {eta_db:5.1}  {name}   {p_hat:.6}   {p:.6}   {:+.2}",
                        (p_hat - p) / se
                    );
                }
            }
        }
    }
    Ok(())
}
