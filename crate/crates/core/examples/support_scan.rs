//! Orders of reductions for related and unrelated points.
//!
//! When Q = 3P the order of Q mod p divides that of P at every good prime
//! and the multiplier can be recovered from the scan. A point on another
//! curve breaks divisibility almost immediately.
//!
//! ```bash
//! cargo run --example support_scan
//! ```

use reduction_rigidity::{CurveQ, PointQ, SupportProblem};

fn main() -> reduction_rigidity::Result<()> {
    let e = CurveQ::new(0, -2)?;
    let p = PointQ::from_integers(3, 5);
    let q = e.scalar_mul(3, &p)?;

    let problem = SupportProblem::new(e, p.clone(), e, q)?;
    let records = problem.scan(10_000, 4)?;
    let verdict = problem.verdict(&records);
    println!(
        "Q = 3P: {} primes, {} counterexamples, inferred m = {:?}",
        verdict.scanned,
        verdict.counterexamples.len(),
        verdict.inferred_m
    );
    for r in records.iter().take(5) {
        println!(
            "  p = {:3}  ord P = {:4}  ord Q = {:4}",
            r.p, r.ord1, r.ord2
        );
    }

    let other = CurveQ::new(1, 1)?;
    let cross = SupportProblem::new(e, p, other, PointQ::from_integers(0, 1))?;
    let verdict = cross.verdict(&cross.scan(1_000, 4)?);
    println!(
        "cross-curve: {} of {} primes fail, first at p = {:?}",
        verdict.counterexamples.len(),
        verdict.scanned,
        verdict.counterexamples.first()
    );
    Ok(())
}
