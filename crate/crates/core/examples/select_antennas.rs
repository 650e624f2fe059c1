//! Draws one channel realization and shows the antenna pair each criterion
//! picks, with the resulting DL and UL SINR.
//!
//! ```text
//! cargo run --example select_antennas [seed]
//! ```

use fdas::channel::{db_to_linear, trial_realization};
use fdas::link::{sinr_dl, sinr_ul, LinkBudget};
use fdas::selection::Strategy;

fn main() -> fdas::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let ch = trial_realization(seed, 0, 4, 4)?;
    let budget = LinkBudget::symmetric(db_to_linear(15.0)?, db_to_linear(-10.0)?, 10.0)?;

    println!("h (per Tx antenna): {:.3?}", ch.h());
    println!("g (per Rx antenna): {:.3?}", ch.g());
    for i in 0..ch.m_r() {
        println!("alpha row {i}:        {:.3?}", ch.a_row(i));
    }
    println!();
    for s in [
        Strategy::MaxMax,
        Strategy::LeastInterference,
        Strategy::weighted_sum(0.3)?,
        Strategy::exp_weighted(0.3, 1.0)?,
    ] {
        let sel = s.select(&ch)?;
        println!(
            "{:<30} rx {} tx {}  h {:.3} g {:.3} alpha {:.3}  SINR dl {:6.2} ul {:6.2}",
            s.to_string(),
            sel.rx,
            sel.tx,
            sel.h,
            sel.g,
            sel.alpha,
            sinr_dl(&budget, sel.h)?,
            sinr_ul(&budget, sel.g, sel.alpha)?
        );
    }
    Ok(())
}
