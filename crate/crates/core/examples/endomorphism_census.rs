//! All endomorphisms of SL(2, Z/p) for p = 5 and 7.
//!
//! ```bash
//! cargo run --release --example endomorphism_census
//! ```

use std::time::Instant;

use reduction_rigidity::group::endo_census;

fn main() -> reduction_rigidity::Result<()> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    for p in [5, 7] {
        let t = Instant::now();
        let c = endo_census(p, workers)?;
        println!(
            "p = {p}: |SL2| = {}, {} endomorphisms, {} inner, {} conjugation maps, holds {} ({:.1?})",
            c.group_order,
            c.endomorphisms,
            c.inner,
            c.conjugation_maps,
            c.holds(),
            t.elapsed()
        );
    }
    Ok(())
}
