//! Reduction-mod-p experiments on elliptic curves over `Q`, exhaustive
//! checks on small matrix groups, and falling-factorial self-maps of `Z`.
//!
//! The crate is organised by subject:
//!
//! - [`fp`]: curves over prime fields, point counting and point orders;
//! - [`curve_q`]: exact rational points and their reductions;
//! - [`support`]: prime scans comparing orders of reductions, relation
//!   inference, density estimates and trace comparison;
//! - [`weil`]: Weil-type intervals and the index-two pigeonhole;
//! - [`group`]: semidirect products, endomorphisms of `SL(2, Z/p)` and
//!   first cohomology by enumeration;
//! - [`mahler`]: the series `psi` and the map `phi(n) = psi(n^2)`;
//! - [`report`] and [`cli`]: CSV/JSON output, the resumable scan cache and
//!   the `rigidity` command line.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

pub mod arith;
pub mod cli;
pub mod curve_q;
pub mod error;
pub mod fp;
pub mod group;
pub mod mahler;
pub mod par;
pub mod primes;
pub mod report;
pub mod support;
pub mod weil;

pub use curve_q::{good_primes, CurveQ, GoodPrimeSet, PointQ};
pub use error::{Error, Result};
pub use fp::{CurveFp, PointFp};
pub use mahler::MahlerSeries;
pub use primes::sieve_primes;
pub use support::{
    ap_coincidence, density_coprime, density_divisible, infer_relation, scan_support,
    ReductionRecord, SupportProblem, SupportVerdict,
};
pub use weil::{injectivity_threshold_check, weil_interval, WeilInterval};
