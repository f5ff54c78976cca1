//! Prime scans for the support problem.
//!
//! For points `P` on `E1` and `Q` on `E2` (both of infinite order) each
//! good prime `p` yields a [`ReductionRecord`] with the group orders of the
//! reduced curves, the orders of `P mod p` and `Q mod p`, and whether the
//! latter divides the former. The verdict lists every prime where
//! divisibility fails; when there is none and both points live on the same
//! curve, [`infer_relation`] looks for an integer `m` with `m P = Q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::curve_q::{reduce_on, CurveQ, GoodPrimeSet, PointQ};
use crate::error::{Error, Result};
use crate::par::parallel_map;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReductionRecord {
    pub p: u64,
    pub n1: u64,
    pub ord1: u64,
    pub n2: u64,
    pub ord2: u64,
    pub divides: bool,
    pub ap1: i64,
    pub ap2: i64,
}

impl ReductionRecord {
    /// Checks the internal invariants of the record (not its provenance).
    pub fn is_consistent(&self) -> bool {
        let hasse = |n: u64, ap: i64| {
            ap == self.p as i64 + 1 - n as i64 && (ap as i128).pow(2) <= 4 * self.p as i128
        };
        self.ord1 > 0
            && self.ord2 > 0
            && self.n1 % self.ord1 == 0
            && self.n2 % self.ord2 == 0
            && self.divides == (self.ord1 % self.ord2 == 0)
            && hasse(self.n1, self.ap1)
            && hasse(self.n2, self.ap2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportVerdict {
    /// Primes where `ord(Q mod p)` does not divide `ord(P mod p)`, ascending.
    pub counterexamples: Vec<u64>,
    /// `m` with `m P = Q` exactly; only for same-curve scans without counterexamples.
    pub inferred_m: Option<i128>,
    /// Number of good primes scanned.
    pub scanned: usize,
}

/// A validated pair of non-torsion points, possibly on different curves.
#[derive(Debug, Clone)]
pub struct SupportProblem {
    e1: CurveQ,
    p: PointQ,
    e2: CurveQ,
    q: PointQ,
}

impl SupportProblem {
    pub fn new(e1: CurveQ, p: PointQ, e2: CurveQ, q: PointQ) -> Result<Self> {
        for (curve, pt, name) in [(&e1, &p, "P"), (&e2, &q, "Q")] {
            if curve.is_torsion(pt)? {
                return Err(Error::Hypothesis(format!(
                    "{name} = {pt} is a torsion point on {curve}"
                )));
            }
        }
        Ok(SupportProblem { e1, p, e2, q })
    }

    pub fn same_curve(&self) -> bool {
        self.e1 == self.e2
    }

    pub fn curves(&self) -> (&CurveQ, &CurveQ) {
        (&self.e1, &self.e2)
    }

    pub fn points(&self) -> (&PointQ, &PointQ) {
        (&self.p, &self.q)
    }

    pub fn good_primes(&self, bound: u64) -> GoodPrimeSet {
        if self.same_curve() {
            GoodPrimeSet::new(&[self.e1], bound)
        } else {
            GoodPrimeSet::new(&[self.e1, self.e2], bound)
        }
    }

    /// The record at one good prime.
    pub fn record_at(&self, p: u64) -> Result<ReductionRecord> {
        let c1 = self.e1.reduce(p)?;
        let n1 = c1.order();
        let ord1 = c1.point_order(&reduce_on(&c1, &self.p), n1)?;
        let (c2, n2) = if self.same_curve() {
            (c1, n1)
        } else {
            let c2 = self.e2.reduce(p)?;
            (c2, c2.order())
        };
        let ord2 = c2.point_order(&reduce_on(&c2, &self.q), n2)?;
        Ok(ReductionRecord {
            p,
            n1,
            ord1,
            n2,
            ord2,
            divides: ord1 % ord2 == 0,
            ap1: p as i64 + 1 - n1 as i64,
            ap2: p as i64 + 1 - n2 as i64,
        })
    }

    /// Records for the given good primes, computed on `workers` threads and
    /// returned sorted by `p`. The output does not depend on `workers`.
    pub fn scan_primes(&self, primes: &[u64], workers: usize) -> Result<Vec<ReductionRecord>> {
        let mut records = parallel_map(primes, workers, |&p| self.record_at(p))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        records.sort_by_key(|r| r.p);
        Ok(records)
    }

    pub fn scan(&self, bound: u64, workers: usize) -> Result<Vec<ReductionRecord>> {
        self.scan_primes(self.good_primes(bound).primes(), workers)
    }

    pub fn verdict(&self, records: &[ReductionRecord]) -> SupportVerdict {
        let counterexamples: Vec<u64> =
            records.iter().filter(|r| !r.divides).map(|r| r.p).collect();
        let inferred_m = if counterexamples.is_empty() && self.same_curve() {
            infer_relation(&self.e1, &self.p, &self.q, records)
        } else {
            None
        };
        SupportVerdict {
            counterexamples,
            inferred_m,
            scanned: records.len(),
        }
    }
}

/// Single-worker scan over all good primes `<= bound`.
pub fn scan_support(
    e1: &CurveQ,
    p: &PointQ,
    e2: &CurveQ,
    q: &PointQ,
    bound: u64,
) -> Result<(Vec<ReductionRecord>, SupportVerdict)> {
    if bound < 5 {
        return Err(Error::Precondition(format!("prime bound {bound} < 5")));
    }
    let problem = SupportProblem::new(*e1, p.clone(), *e2, q.clone())?;
    let records = problem.scan(bound, 1)?;
    let verdict = problem.verdict(&records);
    Ok((records, verdict))
}

/// Largest `|m|` that relation inference will consider.
pub const RELATION_CAP: u128 = 1 << 64;

/// Looks for an integer `m` with `m P = Q` on `E`.
///
/// Each record pins `m` modulo `ord(P mod p)` through a discrete logarithm;
/// the congruences are merged by CRT into `m = r mod L`. The candidate is
/// the representative of least absolute value, kept only if
/// `|m| <= min(L/2, 2^64)` and `m P = Q` holds exactly over `Q`.
pub fn infer_relation(
    e: &CurveQ,
    p: &PointQ,
    q: &PointQ,
    records: &[ReductionRecord],
) -> Option<i128> {
    if records.iter().any(|r| !r.divides) || !e.contains(p) || !e.contains(q) {
        return None;
    }
    // m = residue mod modulus
    let mut residue = BigInt::zero();
    let mut modulus = BigInt::one();
    for rec in records {
        let curve = e.reduce(rec.p).ok()?;
        let pp = reduce_on(&curve, p);
        let qq = reduce_on(&curve, q);
        let ord = rec.ord1;
        let m_p = curve.discrete_log(&pp, &qq, ord)?;
        (residue, modulus) = crt_merge(&residue, &modulus, m_p, ord)?;
    }
    let half = &modulus / 2u32;
    let mut m = residue.clone();
    if m > half {
        m -= &modulus;
    }
    let abs = m.abs().to_u128()?;
    if abs > RELATION_CAP {
        return None;
    }
    let m = m.to_i128()?;
    // If m P = Q then every intermediate multiple k P, |k| <= |m|, has
    // canonical height at most that of Q; naive heights differ from canonical
    // ones by a curve constant, absorbed by the slack below.
    let max_bits = 2 * q.bits() + 4096;
    let mp = e.mul_bounded(m, p, Some(max_bits))?;
    (mp == *q).then_some(m)
}

/// Merge `x = r1 mod m1` with `x = r2 mod m2`; `None` if incompatible.
fn crt_merge(r1: &BigInt, m1: &BigInt, r2: u64, m2: u64) -> Option<(BigInt, BigInt)> {
    let m2b = BigInt::from(m2);
    let g = m1.gcd(&m2b);
    let diff = (BigInt::from(r2) - r1).mod_floor(&m2b);
    if !(&diff % &g).is_zero() {
        return None;
    }
    let m2g = &m2b / &g;
    if m2g.is_one() {
        return Some((r1.mod_floor(m1), m1.clone()));
    }
    let m1g = (m1 / &g).mod_floor(&m2g).to_u64()?;
    let inv = crate::arith::inv_mod(m1g, m2g.to_u64()?)?;
    let t = ((&diff / &g) * BigInt::from(inv)).mod_floor(&m2g);
    let lcm = m1 * &m2g;
    Some(((r1 + m1 * t).mod_floor(&lcm), lcm))
}

/// Orders of `P mod p` at every good prime `<= bound`.
fn reduction_orders(e: &CurveQ, p: &PointQ, bound: u64, workers: usize) -> Result<Vec<(u64, u64)>> {
    if e.is_torsion(p)? {
        return Err(Error::Hypothesis(format!("{p} is a torsion point on {e}")));
    }
    let primes = GoodPrimeSet::new(&[*e], bound);
    if primes.is_empty() {
        return Err(Error::EmptyPrimeRange(bound));
    }
    parallel_map(primes.primes(), workers, |&prime| {
        let curve = e.reduce(prime)?;
        let ord = curve.point_order(&reduce_on(&curve, p), curve.order())?;
        Ok((prime, ord))
    })
    .into_iter()
    .collect()
}

/// Both densities from one scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DensityReport {
    pub ell: u64,
    pub divisible: u64,
    pub total: u64,
}

impl DensityReport {
    pub fn divisible_fraction(&self) -> Ratio<u64> {
        Ratio::new(self.divisible, self.total)
    }

    pub fn coprime_fraction(&self) -> Ratio<u64> {
        Ratio::new(self.total - self.divisible, self.total)
    }
}

pub fn density_report(
    e: &CurveQ,
    p: &PointQ,
    ell: u64,
    bound: u64,
    workers: usize,
) -> Result<DensityReport> {
    if !crate::arith::is_prime(ell) {
        return Err(Error::Domain(format!("{ell} is not prime")));
    }
    let orders = reduction_orders(e, p, bound, workers)?;
    let divisible = orders.iter().filter(|(_, ord)| ord % ell == 0).count() as u64;
    Ok(DensityReport {
        ell,
        divisible,
        total: orders.len() as u64,
    })
}

/// Fraction of good primes `<= bound` with `ell | ord(P mod p)`.
pub fn density_divisible(e: &CurveQ, p: &PointQ, ell: u64, bound: u64) -> Result<Ratio<u64>> {
    Ok(density_report(e, p, ell, bound, 1)?.divisible_fraction())
}

/// Fraction of good primes `<= bound` with `gcd(ord(P mod p), ell) = 1`.
pub fn density_coprime(e: &CurveQ, p: &PointQ, ell: u64, bound: u64) -> Result<Ratio<u64>> {
    Ok(density_report(e, p, ell, bound, 1)?.coprime_fraction())
}

/// Per-prime traces of two curves over their common good primes.
pub fn trace_pairs(
    e1: &CurveQ,
    e2: &CurveQ,
    bound: u64,
    workers: usize,
) -> Result<Vec<(u64, i64, i64)>> {
    let primes = GoodPrimeSet::new(&[*e1, *e2], bound);
    parallel_map(primes.primes(), workers, |&p| {
        let t1 = e1.reduce(p)?.trace();
        let t2 = if e1 == e2 { t1 } else { e2.reduce(p)?.trace() };
        Ok((p, t1, t2))
    })
    .into_iter()
    .collect()
}

/// Fraction of common good primes `<= bound` with `a_p(E1) = a_p(E2)`.
pub fn ap_coincidence(e1: &CurveQ, e2: &CurveQ, bound: u64) -> Result<Ratio<u64>> {
    let pairs = trace_pairs(e1, e2, bound, 1)?;
    if pairs.is_empty() {
        return Err(Error::EmptyPrimeRange(bound));
    }
    let equal = pairs.iter().filter(|(_, a, b)| a == b).count() as u64;
    Ok(Ratio::new(equal, pairs.len() as u64))
}

/// `num/den` rendering used in reports.
pub fn ratio_string(r: &Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (CurveQ, PointQ) {
        (CurveQ::new(0, -2).unwrap(), PointQ::from_integers(3, 5))
    }

    #[test]
    fn crt() {
        let (r, m) = crt_merge(&BigInt::from(2), &BigInt::from(6), 5, 9).unwrap();
        assert_eq!((r, m), (BigInt::from(14), BigInt::from(18)));
        assert!(crt_merge(&BigInt::from(1), &BigInt::from(6), 2, 4).is_none());
        let (r, m) = crt_merge(&BigInt::from(3), &BigInt::from(12), 1, 2).unwrap();
        assert_eq!((r, m), (BigInt::from(3), BigInt::from(12)));
    }

    #[test]
    fn torsion_inputs_rejected() {
        let (e, p) = setup();
        let err = scan_support(&e, &p, &e, &PointQ::identity(), 100).unwrap_err();
        assert!(matches!(err, Error::Hypothesis(_)));
        assert!(matches!(
            density_divisible(&e, &PointQ::identity(), 2, 100),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn empty_prime_range_is_an_error() {
        let (e, p) = setup();
        assert_eq!(
            density_divisible(&e, &p, 2, 4),
            Err(Error::EmptyPrimeRange(4))
        );
        assert!(matches!(
            scan_support(&e, &p, &e, &p, 4),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn multiples_never_fail_divisibility() {
        let (e, p) = setup();
        for k in [1i64, 2, 3, 5, -3] {
            let q = e.scalar_mul(k, &p).unwrap();
            let (records, verdict) = scan_support(&e, &p, &e, &q, 600).unwrap();
            assert!(records.iter().all(|r| r.divides && r.is_consistent()));
            assert!(verdict.counterexamples.is_empty());
            assert_eq!(verdict.inferred_m, Some(k as i128));
        }
    }

    #[test]
    fn inference_small_cases() {
        let (e, p) = setup();
        let problem = SupportProblem::new(e, p.clone(), e, p.clone()).unwrap();
        let records = problem.scan(200, 1).unwrap();
        assert_eq!(infer_relation(&e, &p, &p, &records), Some(1));
        let q = e.scalar_mul(-3, &p).unwrap();
        let records = SupportProblem::new(e, p.clone(), e, q.clone())
            .unwrap()
            .scan(200, 1)
            .unwrap();
        assert_eq!(infer_relation(&e, &p, &q, &records), Some(-3));
        // a record list with a failure yields nothing
        let mut broken = records.clone();
        broken[0].divides = false;
        assert_eq!(infer_relation(&e, &p, &q, &broken), None);
    }

    #[test]
    fn complementary_densities() {
        let (e, p) = setup();
        for ell in [2, 3, 5] {
            let d = density_divisible(&e, &p, ell, 2000).unwrap();
            let c = density_coprime(&e, &p, ell, 2000).unwrap();
            assert_eq!(d + c, Ratio::one());
        }
    }

    #[test]
    fn identical_curves_share_traces() {
        let e = CurveQ::new(1, 1).unwrap();
        assert_eq!(ap_coincidence(&e, &e, 500).unwrap(), Ratio::one());
    }
}
