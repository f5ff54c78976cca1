//! The semidirect product `(H1 + H2) x| G` with `H1 = H2 = F_ell^n`, and the
//! eigenvalue-one criterion for elements `sigma` of `G` whose translates
//! `(h1, sigma)` are all conjugate into `H2 x G`.
//!
//! Elements are pairs `(h, g)` with `h = (h1, h2)` and multiplication
//!
//! ```text
//! (h, g) * (k, s) = (s h + k, s g)
//! ```
//!
//! Under this law `(h', r)(h1, s)(h', r)^-1 = (r^-1 (h1 + (s - 1) h'), r^-1 s r)`.
//! The vector component is the classical formula; the group component is a
//! conjugate of `s` (by `r^-1` rather than `r`), which is all the criterion uses.

use std::fmt;

use serde::Serialize;

use super::matrix::{all_vectors, Matrix, MatrixGroup};
use crate::error::{Error, Result};

/// Largest `|Omega| = |G| ell^(2n)` handled by conjugacy mode.
pub const CONJUGACY_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemidirectElement {
    pub h1: Vec<u32>,
    pub h2: Vec<u32>,
    pub g: Matrix,
}

impl SemidirectElement {
    pub fn new(h1: Vec<u32>, h2: Vec<u32>, g: Matrix) -> Result<Self> {
        let n = g.dim();
        let m = g.modulus();
        if h1.len() != n || h2.len() != n {
            return Err(Error::Domain(format!(
                "vectors of length {} and {} paired with a {n}x{n} matrix",
                h1.len(),
                h2.len()
            )));
        }
        Ok(SemidirectElement {
            h1: h1.into_iter().map(|x| x % m).collect(),
            h2: h2.into_iter().map(|x| x % m).collect(),
            g,
        })
    }

    pub fn identity(modulus: u32, n: usize) -> Self {
        SemidirectElement {
            h1: vec![0; n],
            h2: vec![0; n],
            g: Matrix::identity(modulus, n),
        }
    }

    pub fn in_h1_times_g(&self) -> bool {
        self.h2.iter().all(|&x| x == 0)
    }

    pub fn in_h2_times_g(&self) -> bool {
        self.h1.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.g.dim() != rhs.g.dim() || self.g.modulus() != rhs.g.modulus() {
            return Err(Error::Domain(format!(
                "cannot multiply elements over {}^{} and {}^{}",
                self.g.modulus(),
                self.g.dim(),
                rhs.g.modulus(),
                rhs.g.dim()
            )));
        }
        Ok(self.mul_unchecked(rhs))
    }

    fn mul_unchecked(&self, rhs: &Self) -> Self {
        let m = self.g.modulus();
        let add = |a: Vec<u32>, b: &[u32]| -> Vec<u32> {
            a.into_iter().zip(b).map(|(x, &y)| (x + y) % m).collect()
        };
        SemidirectElement {
            h1: add(rhs.g.apply(&self.h1), &rhs.h1),
            h2: add(rhs.g.apply(&self.h2), &rhs.h2),
            g: rhs.g.mul(&self.g),
        }
    }

    /// `(h, g)^-1 = (-g^-1 h, g^-1)`.
    pub fn inverse(&self) -> Self {
        let m = self.g.modulus();
        let ginv = self.g.inverse().expect("group element is invertible");
        let neg = |v: Vec<u32>| v.into_iter().map(|x| (m - x) % m).collect();
        SemidirectElement {
            h1: neg(ginv.apply(&self.h1)),
            h2: neg(ginv.apply(&self.h2)),
            g: ginv,
        }
    }

    /// `self * x * self^-1`.
    pub fn conjugate(&self, x: &Self) -> Self {
        self.mul_unchecked(x).mul_unchecked(&self.inverse())
    }
}

impl fmt::Display for SemidirectElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?}, {})", self.h1, self.h2, self.g)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Lemma4Mode {
    /// Brute-force search for conjugators over the whole product.
    Conjugacy,
    /// Subspace test `H1 <= (sigma - 1)(H1 + H2) + H2`.
    Linear,
}

impl std::str::FromStr for Lemma4Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "conjugacy" => Ok(Lemma4Mode::Conjugacy),
            "linear" => Ok(Lemma4Mode::Linear),
            other => Err(Error::Parse(format!(
                "mode `{other}`: expected `conjugacy` or `linear`"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaVerdict {
    pub sigma: Matrix,
    /// Every `(h1, sigma)` is conjugate to some `(h2, tau)`.
    pub hyp: bool,
    /// `det(sigma - 1) = 0`.
    pub eig1: bool,
    /// Some `h1` for which the conjugacy fails, when `hyp` is false.
    pub witness: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma4Report {
    pub mode: Lemma4Mode,
    pub ell: u32,
    pub n: usize,
    pub group_order: usize,
    pub verdicts: Vec<SigmaVerdict>,
    /// Elements with `hyp && eig1`; expected to be empty.
    pub violations: Vec<Matrix>,
}

impl Lemma4Report {
    /// Counts of `(hyp, eig1)` combinations: `[tt, tf, ft, ff]`.
    pub fn tally(&self) -> [usize; 4] {
        let mut t = [0; 4];
        for v in &self.verdicts {
            t[match (v.hyp, v.eig1) {
                (true, true) => 0,
                (true, false) => 1,
                (false, true) => 2,
                (false, false) => 3,
            }] += 1;
        }
        t
    }

    /// Elements without eigenvalue one for which the hypothesis still fails
    /// (statistics on the converse; nothing is asserted about them).
    pub fn converse_failures(&self) -> usize {
        self.tally()[3]
    }
}

pub fn has_eigenvalue_one(sigma: &Matrix) -> bool {
    sigma.minus_identity().det() == 0
}

pub fn lemma4_verify(group: &MatrixGroup, mode: Lemma4Mode) -> Result<Lemma4Report> {
    let ell = group.modulus();
    let n = group.dim();
    if !crate::arith::is_prime(ell as u64) {
        return Err(Error::Domain(format!("{ell} is not prime")));
    }
    let verdicts = match mode {
        Lemma4Mode::Conjugacy => conjugacy_verdicts(group)?,
        Lemma4Mode::Linear => group.elements().iter().map(linear_verdict).collect(),
    };
    let violations = verdicts
        .iter()
        .filter(|v| v.hyp && v.eig1)
        .map(|v| v.sigma.clone())
        .collect();
    Ok(Lemma4Report {
        mode,
        ell,
        n,
        group_order: group.order(),
        verdicts,
        violations,
    })
}

fn conjugacy_verdicts(group: &MatrixGroup) -> Result<Vec<SigmaVerdict>> {
    let ell = group.modulus();
    let n = group.dim();
    let omega_size =
        (group.order() as u64).saturating_mul((ell as u64).saturating_pow(2 * n as u32));
    if omega_size > CONJUGACY_BUDGET {
        return Err(Error::Budget(format!(
            "|Omega| = {omega_size} exceeds {CONJUGACY_BUDGET}; use linear mode"
        )));
    }
    let vectors = &all_vectors(ell, n);
    let zero = vec![0u32; n];
    let omega: Vec<SemidirectElement> = group
        .elements()
        .iter()
        .flat_map(|g| {
            vectors.iter().flat_map(move |a| {
                vectors.iter().map(move |b| SemidirectElement {
                    h1: a.clone(),
                    h2: b.clone(),
                    g: g.clone(),
                })
            })
        })
        .collect();
    // x^-1 for every x in Omega
    let inverses: Vec<SemidirectElement> = omega.iter().map(|x| x.inverse()).collect();
    let verdicts = group
        .elements()
        .iter()
        .map(|sigma| {
            let witness = vectors
                .iter()
                .find(|h1| {
                    let y = SemidirectElement {
                        h1: (*h1).clone(),
                        h2: zero.clone(),
                        g: sigma.clone(),
                    };
                    !omega
                        .iter()
                        .zip(&inverses)
                        .any(|(x, xinv)| x.mul_unchecked(&y).mul_unchecked(xinv).in_h2_times_g())
                })
                .cloned();
            SigmaVerdict {
                sigma: sigma.clone(),
                hyp: witness.is_none(),
                eig1: has_eigenvalue_one(sigma),
                witness,
            }
        })
        .collect();
    Ok(verdicts)
}

fn linear_verdict(sigma: &Matrix) -> SigmaVerdict {
    let ell = sigma.modulus();
    let n = sigma.dim();
    let s1 = sigma.minus_identity();
    // spanning set of W = (sigma - 1)(H1 + H2) + H2 inside F_ell^(2n)
    let mut span: Vec<Vec<u32>> = Vec::with_capacity(3 * n);
    for j in 0..n {
        let col: Vec<u32> = (0..n).map(|i| s1.get(i, j)).collect();
        let mut on_h1 = col.clone();
        on_h1.extend(std::iter::repeat_n(0, n));
        let mut on_h2 = vec![0; n];
        on_h2.extend(col);
        span.push(on_h1);
        span.push(on_h2);
        let mut e = vec![0u32; 2 * n];
        e[n + j] = 1;
        span.push(e);
    }
    let base_rank = rank_mod(&span, ell);
    let witness = (0..n).find_map(|j| {
        let mut e = vec![0u32; 2 * n];
        e[j] = 1;
        let mut extended = span.clone();
        extended.push(e);
        (rank_mod(&extended, ell) > base_rank).then(|| {
            let mut h1 = vec![0u32; n];
            h1[j] = 1;
            h1
        })
    });
    SigmaVerdict {
        sigma: sigma.clone(),
        hyp: witness.is_none(),
        eig1: has_eigenvalue_one(sigma),
        witness,
    }
}

/// Rank over `F_ell` of a list of row vectors.
pub(crate) fn rank_mod(rows: &[Vec<u32>], ell: u32) -> usize {
    let m = ell as u64;
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as u64 % m).collect())
        .collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = crate::arith::inv_mod(a[rank][col], m).expect("prime modulus");
        for x in a[rank].iter_mut() {
            *x = *x * inv % m;
        }
        for r in 0..a.len() {
            if r != rank && a[r][col] != 0 {
                let f = a[r][col];
                for c in 0..cols {
                    a[r][c] = (a[r][c] + m - f * a[rank][c] % m) % m;
                }
            }
        }
        rank += 1;
    }
    rank
}
