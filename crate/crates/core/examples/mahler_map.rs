//! psi(n) = sum_i (n)_i and phi(n) = psi(n^2): congruence-preserving on the
//! range checked, yet no polynomial of small degree.
//!
//! ```bash
//! cargo run --example mahler_map
//! ```

use reduction_rigidity::MahlerSeries;

fn main() -> reduction_rigidity::Result<()> {
    let s = MahlerSeries::ones(169);
    let psi: Vec<String> = (0..=4)
        .map(|n| s.psi(n).map(|v| v.to_string()))
        .collect::<Result<_, _>>()?;
    println!("psi(0..4) = {}", psi.join(", "));
    println!("phi(3) = {}", s.phi(3)?);
    println!("phi mod 6 on 0..6: {:?}", s.reduced_map(6)?);
    println!(
        "violations up to N = 30: {}",
        s.congruence_check(30, 7)?.len()
    );
    println!(
        "Delta^k phi(0), k = 1..4: {:?}",
        &s.phi_differences(4)?[1..]
    );
    println!(
        "not of degree <= 12: {}",
        s.nonpolynomiality_certificate(12)?
    );
    Ok(())
}
