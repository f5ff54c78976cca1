//! A scan cache that is extended rather than recomputed.
//!
//! ```bash
//! cargo run --example resumable_cache
//! ```

use reduction_rigidity::report::{cached_scan, CacheFile};
use reduction_rigidity::{CurveQ, PointQ, SupportProblem};

fn main() -> reduction_rigidity::Result<()> {
    let dir = std::env::temp_dir().join(format!("rigidity-example-{}", std::process::id()));
    let path = dir.join("scan.csv");
    let e = CurveQ::new(0, -2)?;
    let p = PointQ::from_integers(3, 5);
    let problem = SupportProblem::new(e, p.clone(), e, e.scalar_mul(2, &p)?)?;

    for bound in [1_000, 5_000, 5_000, 2_000] {
        let (records, stats) = cached_scan(&problem, bound, 2, Some(&path))?;
        println!(
            "bound {bound}: {} rows, {} reused, {} computed",
            records.len(),
            stats.reused,
            stats.computed
        );
    }
    let cache = CacheFile::load(&path)?.expect("written above");
    println!("key: {}", cache.key);
    println!(
        "largest cached prime: {}",
        cache.records.last().map_or(0, |r| r.p)
    );
    let _ = std::fs::remove_dir_all(dir);
    Ok(())
}
