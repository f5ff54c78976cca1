//! Falling-factorial series `psi(n) = sum_i a_i n(n-1)...(n-i+1)` and the
//! self-map `phi(n) = psi(n^2)` of `Z`.
//!
//! For `n >= 0` only the terms `i <= n` survive, so `psi(n)` is a finite sum
//! as long as the coefficient list reaches index `n`. Since every falling
//! factorial is an integer polynomial, `m = n mod N` forces
//! `phi(m) = phi(n) mod N`, yet `phi` need not be a polynomial.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MahlerSeries {
    coeffs: Vec<BigInt>,
}

impl MahlerSeries {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("a series needs at least a_0".into()));
        }
        Ok(MahlerSeries { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `a_i = 1` for `0 <= i <= k`.
    pub fn ones(k: usize) -> Self {
        MahlerSeries {
            coeffs: vec![BigInt::one(); k + 1],
        }
    }

    /// Largest coefficient index `K`.
    pub fn max_index(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    fn require(&self, n: usize) -> Result<()> {
        if n > self.max_index() {
            return Err(Error::InsufficientCoefficients {
                needed: n,
                available: self.max_index(),
            });
        }
        Ok(())
    }

    /// `psi(n)` for `0 <= n <= K`.
    pub fn psi(&self, n: i64) -> Result<BigInt> {
        if n < 0 {
            return Err(Error::Domain(format!("psi is defined on n >= 0, got {n}")));
        }
        let n = n as usize;
        self.require(n)?;
        let mut falling = BigInt::one();
        let mut acc = BigInt::zero();
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            acc += a * &falling;
            falling *= BigInt::from(n - i);
        }
        Ok(acc)
    }

    /// `phi(n) = psi(n^2)`, for any integer `n` with `n^2 <= K`.
    pub fn phi(&self, n: i64) -> Result<BigInt> {
        let sq = n
            .checked_mul(n)
            .ok_or_else(|| Error::Domain(format!("{n}^2 overflows")))?;
        self.psi(sq)
    }

    /// `phi(r) mod N` for `r = 0..N`.
    pub fn reduced_map(&self, modulus: u64) -> Result<Vec<u64>> {
        if modulus < 2 {
            return Err(Error::Domain(format!("modulus {modulus} < 2")));
        }
        let big = BigInt::from(modulus);
        (0..modulus as i64)
            .map(|r| Ok(self.phi(r)?.mod_floor(&big).to_u64().expect("residue fits")))
            .collect()
    }

    /// Pairs `m = n (mod N)` with `phi(m) != phi(n) (mod N)`, over
    /// `2 <= N <= mod_max` and `-n_max <= m, n <= n_max`.
    pub fn congruence_check(&self, mod_max: u64, n_max: i64) -> Result<Vec<CongruenceViolation>> {
        let n_max = n_max.abs();
        self.require((n_max * n_max) as usize)?;
        let values: Vec<BigInt> = (-n_max..=n_max)
            .map(|n| self.phi(n))
            .collect::<Result<_>>()?;
        let at = |n: i64| &values[(n + n_max) as usize];
        let mut violations = Vec::new();
        for modulus in 2..=mod_max {
            let big = BigInt::from(modulus);
            for m in -n_max..=n_max {
                for n in m..=n_max {
                    if (n - m).rem_euclid(modulus as i64) != 0 {
                        continue;
                    }
                    if !((at(m) - at(n)) % &big).is_zero() {
                        violations.push(CongruenceViolation { modulus, m, n });
                    }
                }
            }
        }
        Ok(violations)
    }

    /// Forward differences `Delta^k f(0)` for `k = 0..=order` of the values
    /// `f(0), f(1), ..., f(order)`.
    fn differences_at_zero(values: Vec<BigInt>) -> Vec<BigInt> {
        let mut row = values;
        let mut out = Vec::with_capacity(row.len());
        while !row.is_empty() {
            out.push(row[0].clone());
            row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        out
    }

    /// `Delta^k psi(0)` for `k = 0..=order`.
    pub fn psi_differences(&self, order: usize) -> Result<Vec<BigInt>> {
        self.require(order)?;
        let values = (0..=order as i64)
            .map(|n| self.psi(n))
            .collect::<Result<_>>()?;
        Ok(Self::differences_at_zero(values))
    }

    /// `Delta^k phi(0)` for `k = 0..=order`.
    pub fn phi_differences(&self, order: usize) -> Result<Vec<BigInt>> {
        self.require(order * order)?;
        let values = (0..=order as i64)
            .map(|n| self.phi(n))
            .collect::<Result<_>>()?;
        Ok(Self::differences_at_zero(values))
    }

    /// True iff `Delta^(d+1) phi(0) != 0` for every `d <= degree_max`, which
    /// rules out `phi` agreeing with a polynomial of degree `<= degree_max`.
    /// Also checks `Delta^k psi(0) = k! a_k` on the coefficients used.
    pub fn nonpolynomiality_certificate(&self, degree_max: usize) -> Result<bool> {
        let order = degree_max + 1;
        let phi_diffs = self.phi_differences(order)?;
        let psi_check = order.min(self.max_index());
        let psi_diffs = self.psi_differences(psi_check)?;
        let mut factorial = BigInt::one();
        for (k, d) in psi_diffs.iter().enumerate() {
            if k > 0 {
                factorial *= BigInt::from(k);
            }
            if *d != &factorial * &self.coeffs[k] {
                return Err(Error::Domain(format!(
                    "difference identity failed at k = {k}"
                )));
            }
        }
        Ok(phi_diffs[1..].iter().all(|d| !d.is_zero()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CongruenceViolation {
    pub modulus: u64,
    pub m: i64,
    pub n: i64,
}

/// Falling factorial `(n)_i = n (n-1) ... (n-i+1)`.
pub fn falling_factorial(n: i64, i: usize) -> BigInt {
    (0..i as i64).map(|j| BigInt::from(n - j)).product()
}

impl fmt::Display for MahlerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.iter().all(|c| c.is_one()) {
            return write!(f, "ones:{}", self.max_index());
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `ones:K` or an explicit comma list `a0,a1,...`.
impl FromStr for MahlerSeries {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(k) = s.strip_prefix("ones:") {
            let k: usize = k
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("series `{s}`: {e}")))?;
            return Ok(MahlerSeries::ones(k));
        }
        let coeffs = s
            .split(',')
            .map(|t| t.trim().parse::<BigInt>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse(format!("series `{s}`: {e}")))?;
        MahlerSeries::new(coeffs)
    }
}
