//! Elements sigma of G for which every (h1, sigma) is conjugate into H2 x| G,
//! compared with the eigenvalue-one condition.
//!
//! ```bash
//! cargo run --example lemma4
//! ```

use reduction_rigidity::group::{lemma4_verify, Lemma4Mode, MatrixGroup};

fn main() -> reduction_rigidity::Result<()> {
    for ell in [2, 3] {
        let g = MatrixGroup::general_linear(ell, 2)?;
        for mode in [Lemma4Mode::Conjugacy, Lemma4Mode::Linear] {
            let r = lemma4_verify(&g, mode)?;
            let [tt, tf, ft, ff] = r.tally();
            println!(
                "GL(2,F_{ell}) {mode:?}: violations {}, (hyp, eig1) counts tt {tt} tf {tf} ft {ft} ff {ff}",
                r.violations.len()
            );
        }
    }
    // GL(2, F_5) is past the conjugacy budget; the linear test still runs
    let g = MatrixGroup::general_linear(5, 2)?;
    let r = lemma4_verify(&g, Lemma4Mode::Linear)?;
    println!("GL(2,F_5) Linear: violations {}", r.violations.len());
    Ok(())
}
