//! Writes CSV tables and SVG charts for the weight and SNR sweeps into a
//! directory, the same files the `fdas` binary produces with `--csv`/`--svg`.
//!
//! ```text
//! cargo run --release --example figures [out_dir] [samples]
//! ```

use std::fs;
use std::path::PathBuf;

use fdas::montecarlo::{step_grid, sweep_snr, sweep_weight, SimConfig};
use fdas::selection::{MoMethod, Strategy};
use fdas::svg::LineChart;
use fdas::table::{snr_sweep_table, weight_sweep_table};

fn main() -> fdas::Result<()> {
    let mut args = std::env::args().skip(1);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| "figures".into()));
    let n_samples = args.next().and_then(|s| s.parse().ok()).unwrap_or(100_000);
    fs::create_dir_all(&dir)?;

    let w_grid = step_grid(0.0, 1.0, 0.05)?;
    for eta_db in [-10.0, 0.0] {
        let cfg = SimConfig {
            snr_db: 15.0,
            eta_db,
            n_samples,
            seed: 1,
            ..SimConfig::default()
        };
        let table = weight_sweep_table(&sweep_weight(&cfg, &w_grid, MoMethod::default())?)
            .with_provenance("snr-db", cfg.snr_db)
            .with_provenance("eta-db", eta_db);
        let title = format!("M = 4, gamma0 = 15 dB, eta = {eta_db} dB");
        let stem = format!("weight_eta{eta_db}");
        fs::write(dir.join(format!("{stem}.csv")), table.to_csv())?;
        fs::write(
            dir.join(format!("{stem}.svg")),
            LineChart::sum_throughput(&table, "w", "w", &title).render(),
        )?;
    }

    let snr_grid = step_grid(0.0, 30.0, 5.0)?;
    let strategies = [
        Strategy::MaxMax,
        Strategy::LeastInterference,
        Strategy::weighted_sum(0.5)?,
    ];
    for m in [4, 8] {
        let cfg = SimConfig {
            m_t: m,
            m_r: m,
            eta_db: -10.0,
            n_samples,
            seed: 1,
            ..SimConfig::default()
        };
        let table = snr_sweep_table(&sweep_snr(&cfg, &snr_grid, &strategies, true)?).with_provenance("mt", m);
        let title = format!("M = {m}, eta = -10 dB, empirical weight");
        let stem = format!("snr_m{m}");
        fs::write(dir.join(format!("{stem}.csv")), table.to_csv())?;
        let chart = LineChart::sum_throughput(&table, "gamma0_db", "gamma0 [dB]", &title);
        fs::write(dir.join(format!("{stem}.svg")), chart.render())?;
    }
    println!("wrote {}", dir.display());
    Ok(())
}
