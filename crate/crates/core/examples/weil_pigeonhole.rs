//! The interval nm^g -/+ 4^g nm^(g - 1/2) and when its ends differ by less
//! than a factor two.
//!
//! ```bash
//! cargo run --example weil_pigeonhole
//! ```

use reduction_rigidity::weil::{injectivity_threshold, ratio_onset};
use reduction_rigidity::{injectivity_threshold_check, weil_interval};

fn main() -> reduction_rigidity::Result<()> {
    for nm in [149, 169] {
        let w = weil_interval(nm, 1)?;
        let (lo, hi) = w.approx();
        let (a, b) = w.integer_hull();
        println!("nm = {nm}: ({lo:.2}, {hi:.2}), integers {a}..={b}");
    }
    for (g, max) in [(1, 10_000), (2, 100_000), (3, 100_000)] {
        let t = injectivity_threshold(g);
        println!(
            "g = {g}: threshold {t}, ratio < 2 on ({t}, {max}]: {}, sweep onset {:?}",
            injectivity_threshold_check(g, max)?,
            ratio_onset(g, max)?
        );
    }
    Ok(())
}
