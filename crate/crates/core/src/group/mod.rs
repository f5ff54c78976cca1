//! Exhaustive checks on small matrix groups over `Z/ell`.

pub mod cohomology;
pub mod endo;
pub mod matrix;
pub mod semidirect;

pub use cohomology::{h1_classes, lemma1_verify, Cocycle, H1Classes};
pub use endo::{classify_endo, endo_census, enumerate_endos, EndoClass, EndoTable};
pub use matrix::{Matrix, MatrixGroup};
pub use semidirect::{lemma4_verify, Lemma4Mode, Lemma4Report, SemidirectElement};
