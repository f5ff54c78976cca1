//! H^1 of small matrix groups and the action of a central element.
//!
//! ```bash
//! cargo run --example cocycles
//! ```

use reduction_rigidity::group::cohomology::lemma1_report;
use reduction_rigidity::group::matrix::sl2_t;
use reduction_rigidity::group::{h1_classes, Matrix, MatrixGroup};

fn main() -> reduction_rigidity::Result<()> {
    let cases = [
        (
            "<T> in GL(2,F_3)",
            MatrixGroup::generated(3, 2, vec![sl2_t(3)])?,
            sl2_t(3),
        ),
        (
            "<T, -I> in GL(2,F_3)",
            MatrixGroup::generated(3, 2, vec![sl2_t(3), Matrix::scalar(3, 2, -1)])?,
            Matrix::scalar(3, 2, -1),
        ),
        (
            "GL(2,F_3)",
            MatrixGroup::general_linear(3, 2)?,
            Matrix::scalar(3, 2, -1),
        ),
        (
            "<2I> in GL(2,F_5)",
            MatrixGroup::generated(5, 2, vec![Matrix::scalar(5, 2, 2)])?,
            Matrix::scalar(5, 2, 2),
        ),
    ];
    for (name, g, tau) in cases {
        let h = h1_classes(&g)?;
        let l = lemma1_report(&g, &tau)?;
        println!(
            "{name}: |G| = {}, |Z| = {}, |B| = {}, |H^1| = {}; tau = {tau}: {} failures",
            g.order(),
            h.cocycles,
            h.coboundaries,
            h.class_count(),
            l.failures
        );
    }
    Ok(())
}
