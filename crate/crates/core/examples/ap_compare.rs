//! Agreement of Frobenius traces between two curves.
//!
//! ```bash
//! cargo run --example ap_compare
//! ```

use reduction_rigidity::support::{ratio_string, trace_pairs};
use reduction_rigidity::{ap_coincidence, CurveQ};

fn main() -> reduction_rigidity::Result<()> {
    let e1 = CurveQ::new(1, 1)?;
    let e2 = CurveQ::new(-1, 1)?;
    for (p, a1, a2) in trace_pairs(&e1, &e2, 30, 1)? {
        println!("p = {p:2}: a_p {a1:3} {a2:3}");
    }
    println!(
        "equal traces below 10^4: {}",
        ratio_string(&ap_coincidence(&e1, &e2, 10_000)?)
    );
    println!(
        "a curve against itself: {}",
        ratio_string(&ap_coincidence(&e1, &e1, 1_000)?)
    );
    Ok(())
}
