//! Exact arithmetic on a curve over Q and reduction at good primes.
//!
//! ```bash
//! cargo run --example rational_points
//! ```

use reduction_rigidity::{good_primes, CurveQ, PointQ};

fn main() -> reduction_rigidity::Result<()> {
    let e = CurveQ::new(0, -2)?;
    let p: PointQ = "3,5".parse()?;
    println!("E: y^2 = x^3 - 2, discriminant {}", e.discriminant());
    for k in 1..=4 {
        let kp = e.scalar_mul(k, &p)?;
        println!("{k}P = ({kp}), {} bits", kp.bits());
    }
    println!("P torsion: {}", e.is_torsion(&p)?);

    let primes = good_primes(&[e], 40);
    println!(
        "good primes <= 40: {:?} (excluded {:?})",
        primes.primes(),
        primes.excluded()
    );
    let q = e.scalar_mul(2, &p)?;
    for &l in primes.primes() {
        println!(
            "  p = {l:2}: P -> {}, 2P -> {}",
            e.reduce_point(&p, l)?,
            e.reduce_point(&q, l)?
        );
    }
    Ok(())
}
