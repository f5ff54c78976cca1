//! Curves over a prime field: point counts, the group law, point orders
//! and the shape of the 2- and 3-parts.
//!
//! ```bash
//! cargo run --example curves_mod_p
//! ```

use reduction_rigidity::{CurveFp, PointFp};

fn main() -> reduction_rigidity::Result<()> {
    for (a, b) in [(0, -2), (1, 1), (-1, 1)] {
        let e = CurveFp::new(7, a, b)?;
        println!(
            "y^2 = x^3 + {a}x + {b} over F_7: {} points, a_p = {}",
            e.order(),
            e.trace()
        );
    }

    let e = CurveFp::new(7, 0, -2)?;
    let p = PointFp::affine(3, 5);
    let n = e.order();
    println!("2 * {p} = {}", e.scalar_mul(2, &p)?);
    println!("ord {p} = {}", e.point_order(&p, n)?);

    // a larger field, where BSGS earns its keep
    let e = CurveFp::new(10_007, 0, -2)?;
    let n = e.order();
    let (p, ord) = e
        .points()
        .into_iter()
        .take(200)
        .map(|q| {
            let o = e.point_order(&q, n).expect("n annihilates E");
            (q, o)
        })
        .max_by_key(|&(_, o)| o)
        .unwrap();
    let q = e.scalar_mul(1234, &p)?;
    println!(
        "p = 10007: #E = {n}, ord {p} = {ord}, log of 1234 {p} is {:?}",
        e.discrete_log(&p, &q, ord)
    );
    for ell in [2, 3] {
        let (e1, e2) = e.ell_part_structure(ell)?;
        println!("  {ell}-part is Z/{ell}^{e1} x Z/{ell}^{e2}");
    }
    Ok(())
}
