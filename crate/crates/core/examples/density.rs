//! How often ell divides the order of P mod p.
//!
//! ```bash
//! cargo run --example density
//! ```

use reduction_rigidity::support::{density_report, ratio_string};
use reduction_rigidity::{CurveQ, PointQ};

fn main() -> reduction_rigidity::Result<()> {
    let e = CurveQ::new(0, -2)?;
    let p = PointQ::from_integers(3, 5);
    for ell in [2, 3, 5, 7] {
        let r = density_report(&e, &p, ell, 10_000, 4)?;
        println!(
            "ell = {ell}: divisible {:>9} = {:.3}, coprime {:>9}",
            ratio_string(&r.divisible_fraction()),
            r.divisible as f64 / r.total as f64,
            ratio_string(&r.coprime_fraction()),
        );
    }
    Ok(())
}
