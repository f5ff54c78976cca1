//! Weil-type intervals `q^g -/+ 4^g q^(g - 1/2)` and the pigeonhole
//! threshold above which two groups with orders in the interval cannot
//! differ by a factor of two.
//!
//! Both endpoints have the shape `A -/+ C sqrt(q)` with `A = q^g` and
//! `C = 4^g q^(g-1)`, so every comparison reduces to integer arithmetic.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilInterval {
    pub nm: u64,
    pub g: u32,
    /// `nm^g`
    pub center: BigInt,
    /// `4^g nm^(g-1)`, the coefficient of `sqrt(nm)` in the radius.
    pub radius_coeff: BigInt,
}

impl WeilInterval {
    /// `C^2 nm`, the square of the radius.
    pub fn radius_squared(&self) -> BigInt {
        &self.radius_coeff * &self.radius_coeff * BigInt::from(self.nm)
    }

    /// Exact endpoints when `nm` is a perfect square.
    pub fn exact_bounds(&self) -> Option<(BigInt, BigInt)> {
        let root = BigInt::from(self.nm).sqrt();
        if &root * &root != BigInt::from(self.nm) {
            return None;
        }
        let radius = &self.radius_coeff * root;
        Some((&self.center - &radius, &self.center + &radius))
    }

    /// The integers contained in the interval: `[ceil(lower), floor(upper)]`.
    pub fn integer_hull(&self) -> (BigInt, BigInt) {
        let r = self.radius_squared().sqrt();
        (&self.center - &r, &self.center + &r)
    }

    pub fn contains_integer(&self, n: &BigInt) -> bool {
        let (lo, hi) = self.integer_hull();
        lo <= *n && *n <= hi
    }

    /// Floating-point endpoints, for display.
    pub fn approx(&self) -> (f64, f64) {
        let c = self.center.to_f64().unwrap_or(f64::INFINITY);
        let r = self.radius_coeff.to_f64().unwrap_or(f64::INFINITY) * (self.nm as f64).sqrt();
        (c - r, c + r)
    }

    /// `upper < 2 lower`, i.e. `3 C sqrt(nm) < A`, decided exactly.
    pub fn ratio_below_two(&self) -> bool {
        BigInt::from(9) * self.radius_squared() < &self.center * &self.center
    }
}

pub fn weil_interval(nm: u64, g: u32) -> Result<WeilInterval> {
    if nm < 2 || g == 0 {
        return Err(Error::Domain(format!(
            "need nm >= 2 and g >= 1, got nm = {nm}, g = {g}"
        )));
    }
    let q = BigInt::from(nm);
    let center = num_traits::pow(q.clone(), g as usize);
    let radius_coeff =
        num_traits::pow(BigInt::from(4), g as usize) * num_traits::pow(q, (g - 1) as usize);
    Ok(WeilInterval {
        nm,
        g,
        center,
        radius_coeff,
    })
}

/// `9 * 2^(4g)`.
pub fn injectivity_threshold(g: u32) -> u64 {
    9u64 << (4 * g)
}

/// True iff `upper(nm, g) < 2 lower(nm, g)` for every `nm` in
/// `(9 * 2^(4g), nm_max]`.
pub fn injectivity_threshold_check(g: u32, nm_max: u64) -> Result<bool> {
    let start = injectivity_threshold(g) + 1;
    if nm_max < start {
        return Err(Error::Precondition(format!(
            "nm_max = {nm_max} must be at least {start} for g = {g}"
        )));
    }
    for nm in start..=nm_max {
        if !weil_interval(nm, g)?.ratio_below_two() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest `nm >= 2` from which the ratio stays below two, by direct sweep
/// over `[2, nm_max]`; `None` if the last point fails.
pub fn ratio_onset(g: u32, nm_max: u64) -> Result<Option<u64>> {
    let mut onset = None;
    for nm in 2..=nm_max {
        match (weil_interval(nm, g)?.ratio_below_two(), onset) {
            (true, None) => onset = Some(nm),
            (false, Some(_)) => onset = None,
            _ => {}
        }
    }
    Ok(onset)
}
