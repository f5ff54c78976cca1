//! Integral short-Weierstrass curves over `Q` and their rational points.
//!
//! A point is stored as the unique projective triple `(X : Y : Z)` with
//! `gcd(X, Y, Z) = 1` and `Z >= 0`; the affine point is `(X/Z, Y/Z)`, so a
//! point with affine coordinates `(u/d^2, v/d^3)` is stored as
//! `(u*d : v : d^3)`. The identity is `(0 : 1 : 0)`. Equality and hashing
//! go through this normalised triple.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::fp::{CurveFp, PointFp};
use crate::primes::sieve_primes;

/// Largest order of a rational torsion point on an elliptic curve over `Q`.
pub const TORSION_BOUND: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CurveQ {
    a: i64,
    b: i64,
}

impl CurveQ {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        let curve = CurveQ { a, b };
        if curve.discriminant().is_zero() {
            return Err(Error::InvalidCurve(format!(
                "y^2 = x^3 + {a}x + {b} is singular"
            )));
        }
        Ok(curve)
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// `-16 (4a^3 + 27b^2)`.
    pub fn discriminant(&self) -> BigInt {
        let a = BigInt::from(self.a);
        let b = BigInt::from(self.b);
        BigInt::from(-16) * (BigInt::from(4) * &a * &a * &a + BigInt::from(27) * &b * &b)
    }

    pub fn has_good_reduction(&self, p: u64) -> bool {
        p >= 5 && !(self.discriminant() % BigInt::from(p)).is_zero()
    }

    /// The reduced curve over `F_p`; `p` must be a good prime.
    pub fn reduce(&self, p: u64) -> Result<CurveFp> {
        if !self.has_good_reduction(p) || !is_prime(p) {
            return Err(Error::BadReduction(p));
        }
        CurveFp::new(p, self.a, self.b)
    }

    pub fn contains(&self, pt: &PointQ) -> bool {
        let (x, y, z) = (&pt.x, &pt.y, &pt.z);
        let a = BigInt::from(self.a);
        let b = BigInt::from(self.b);
        y * y * z == x * x * x + a * x * z * z + b * z * z * z
    }

    fn check(&self, pt: &PointQ) -> Result<()> {
        if self.contains(pt) {
            Ok(())
        } else {
            Err(Error::NotOnCurve(format!("{pt} on {self}")))
        }
    }

    pub fn add(&self, lhs: &PointQ, rhs: &PointQ) -> Result<PointQ> {
        self.check(lhs)?;
        self.check(rhs)?;
        Ok(self.add_unchecked(lhs, rhs))
    }

    fn add_unchecked(&self, lhs: &PointQ, rhs: &PointQ) -> PointQ {
        let (x1, y1) = match lhs.to_affine() {
            None => return rhs.clone(),
            Some(c) => c,
        };
        let (x2, y2) = match rhs.to_affine() {
            None => return lhs.clone(),
            Some(c) => c,
        };
        let slope = if x1 == x2 {
            if (&y1 + &y2).is_zero() {
                return PointQ::identity();
            }
            let three = BigRational::from_integer(3.into());
            let two = BigRational::from_integer(2.into());
            (three * &x1 * &x1 + BigRational::from_integer(self.a.into())) / (two * &y1)
        } else {
            (&y2 - &y1) / (&x2 - &x1)
        };
        let x3 = &slope * &slope - &x1 - &x2;
        let y3 = slope * (&x1 - &x3) - y1;
        PointQ::from_affine(&x3, &y3)
    }

    pub fn neg(&self, pt: &PointQ) -> PointQ {
        if pt.is_identity() {
            return pt.clone();
        }
        PointQ {
            x: pt.x.clone(),
            y: -&pt.y,
            z: pt.z.clone(),
        }
    }

    pub fn scalar_mul(&self, k: i64, pt: &PointQ) -> Result<PointQ> {
        self.check(pt)?;
        Ok(self.mul_bounded(k as i128, pt, None).expect("unbounded"))
    }

    /// Double-and-add that gives up (returns `None`) as soon as an
    /// intermediate multiple has a coordinate longer than `max_bits`.
    pub(crate) fn mul_bounded(
        &self,
        k: i128,
        pt: &PointQ,
        max_bits: Option<u64>,
    ) -> Option<PointQ> {
        let mut base = if k < 0 { self.neg(pt) } else { pt.clone() };
        let mut n = k.unsigned_abs();
        let mut acc = PointQ::identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
                if max_bits.is_some_and(|m| acc.bits() > m) {
                    return None;
                }
            }
            n >>= 1;
            if n > 0 {
                base = self.add_unchecked(&base, &base);
                if max_bits.is_some_and(|m| base.bits() > m) {
                    return None;
                }
            }
        }
        Some(acc)
    }

    /// True iff `k P = O` for some `1 <= k <= 12`.
    pub fn is_torsion(&self, pt: &PointQ) -> Result<bool> {
        self.check(pt)?;
        let mut acc = pt.clone();
        for _ in 1..=TORSION_BOUND {
            if acc.is_identity() {
                return Ok(true);
            }
            acc = self.add_unchecked(&acc, pt);
        }
        Ok(false)
    }

    /// The specialisation `sp_p(P)` on the reduced curve.
    pub fn reduce_point(&self, pt: &PointQ, p: u64) -> Result<PointFp> {
        let curve = self.reduce(p)?;
        self.check(pt)?;
        Ok(reduce_on(&curve, pt))
    }
}

/// Reduce a normalised triple onto an already-reduced curve.
pub(crate) fn reduce_on(curve: &CurveFp, pt: &PointQ) -> PointFp {
    let p = curve.p();
    let modulus = BigInt::from(p);
    let z = pt.z.mod_floor(&modulus).to_u64().expect("residue fits");
    if z == 0 {
        return PointFp::Infinity;
    }
    let x = pt.x.mod_floor(&modulus).to_u64().expect("residue fits");
    let y = pt.y.mod_floor(&modulus).to_u64().expect("residue fits");
    let zinv = crate::arith::inv_mod(z, p).expect("p prime, z nonzero");
    PointFp::affine(
        crate::arith::mul_mod(x, zinv, p),
        crate::arith::mul_mod(y, zinv, p),
    )
}

impl fmt::Display for CurveQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + {}x + {}", self.a, self.b)
    }
}

/// Parses `a,b`.
impl FromStr for CurveQ {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(Error::Parse(format!("curve `{s}`: expected `a,b`")));
        }
        let parse = |t: &str| {
            t.parse::<i64>()
                .map_err(|e| Error::Parse(format!("curve `{s}`: {e}")))
        };
        CurveQ::new(parse(parts[0])?, parse(parts[1])?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointQ {
    x: BigInt,
    y: BigInt,
    z: BigInt,
}

impl PointQ {
    pub fn identity() -> Self {
        PointQ {
            x: BigInt::zero(),
            y: BigInt::one(),
            z: BigInt::zero(),
        }
    }

    /// Normalises an arbitrary nonzero projective triple.
    pub fn projective(x: BigInt, y: BigInt, z: BigInt) -> Result<Self> {
        if z.is_zero() {
            if !x.is_zero() || y.is_zero() {
                return Err(Error::Domain(format!(
                    "({x}:{y}:0) is not the point at infinity of a Weierstrass cubic"
                )));
            }
            return Ok(PointQ::identity());
        }
        let g = x.gcd(&y).gcd(&z);
        let sign = if z.sign() == Sign::Minus { -1 } else { 1 };
        let g = g * BigInt::from(sign);
        Ok(PointQ {
            x: x / &g,
            y: y / &g,
            z: z / &g,
        })
    }

    pub fn from_affine(x: &BigRational, y: &BigRational) -> Self {
        let d = x.denom().lcm(y.denom());
        let px = x.numer() * (&d / x.denom());
        let py = y.numer() * (&d / y.denom());
        PointQ::projective(px, py, d).expect("affine point has z != 0")
    }

    pub fn from_integers(x: i64, y: i64) -> Self {
        PointQ {
            x: x.into(),
            y: y.into(),
            z: BigInt::one(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.z.is_zero()
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    pub fn z(&self) -> &BigInt {
        &self.z
    }

    pub fn to_affine(&self) -> Option<(BigRational, BigRational)> {
        if self.is_identity() {
            return None;
        }
        Some((
            BigRational::new(self.x.clone(), self.z.clone()),
            BigRational::new(self.y.clone(), self.z.clone()),
        ))
    }

    /// Bit length of the largest coordinate.
    pub fn bits(&self) -> u64 {
        self.x.bits().max(self.y.bits()).max(self.z.bits())
    }
}

impl fmt::Display for PointQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.x, self.y, self.z)
    }
}

/// Parses `X:Y:Z` (projective integers) or `x,y` with each coordinate an
/// integer or a fraction `n/d`.
impl FromStr for PointQ {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |why: String| Error::Parse(format!("point `{s}`: {why}"));
        if s.eq_ignore_ascii_case("o") || s.eq_ignore_ascii_case("inf") {
            return Ok(PointQ::identity());
        }
        if s.contains(':') {
            let parts: Vec<&str> = s.split(':').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(bad("expected `X:Y:Z`".into()));
            }
            let mut coords = Vec::with_capacity(3);
            for t in parts {
                coords.push(t.parse::<BigInt>().map_err(|e| bad(e.to_string()))?);
            }
            let z = coords.pop().unwrap();
            let y = coords.pop().unwrap();
            let x = coords.pop().unwrap();
            return PointQ::projective(x, y, z);
        }
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(bad("expected `x,y` or `X:Y:Z`".into()));
        }
        let rat = |t: &str| -> Result<BigRational> {
            let (n, d) = match t.split_once('/') {
                Some((n, d)) => (n, d),
                None => (t, "1"),
            };
            let n = n.trim().parse::<BigInt>().map_err(|e| bad(e.to_string()))?;
            let d = d.trim().parse::<BigInt>().map_err(|e| bad(e.to_string()))?;
            if d.is_zero() {
                return Err(bad("zero denominator".into()));
            }
            Ok(BigRational::new(n, d))
        };
        Ok(PointQ::from_affine(&rat(parts[0])?, &rat(parts[1])?))
    }
}

/// Primes of good reduction for one or two curves, up to a bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodPrimeSet {
    curves: Vec<CurveQ>,
    excluded: Vec<u64>,
    bound: u64,
    primes: Vec<u64>,
}

impl GoodPrimeSet {
    pub fn new(curves: &[CurveQ], bound: u64) -> Self {
        Self::with_exclusions(curves, bound, &[])
    }

    /// As [`GoodPrimeSet::new`], additionally dropping `extra` primes.
    pub fn with_exclusions(curves: &[CurveQ], bound: u64, extra: &[u64]) -> Self {
        let mut excluded: Vec<u64> = vec![2, 3];
        excluded.extend_from_slice(extra);
        let primes: Vec<u64> = sieve_primes(bound)
            .into_iter()
            .filter(|&p| p >= 5 && !extra.contains(&p))
            .filter(|&p| {
                let good = curves.iter().all(|c| c.has_good_reduction(p));
                if !good {
                    excluded.push(p);
                }
                good
            })
            .collect();
        excluded.sort_unstable();
        excluded.dedup();
        GoodPrimeSet {
            curves: curves.to_vec(),
            excluded,
            bound,
            primes,
        }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Primes `<= bound` left out of the set.
    pub fn excluded(&self) -> &[u64] {
        &self.excluded
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn curves(&self) -> &[CurveQ] {
        &self.curves
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

/// Primes `5 <= p <= bound` at which every curve has good reduction.
pub fn good_primes(curves: &[CurveQ], bound: u64) -> GoodPrimeSet {
    GoodPrimeSet::new(curves, bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn doubling_examples() {
        let e = CurveQ::new(0, -2).unwrap();
        let p = PointQ::from_integers(3, 5);
        let d = e.add(&p, &p).unwrap();
        assert_eq!(d.to_affine().unwrap(), (rat(129, 100), rat(-383, 1000)));
        assert_eq!(d, "1290:-383:1000".parse().unwrap());
        assert_eq!(e.scalar_mul(2, &p).unwrap(), d);
        assert_eq!(e.scalar_mul(-1, &p).unwrap(), PointQ::from_integers(3, -5));
        assert!(e.scalar_mul(0, &p).unwrap().is_identity());
        assert_eq!(e.add(&p, &PointQ::identity()).unwrap(), p);

        let e = CurveQ::new(1, 1).unwrap();
        let d = e.scalar_mul(2, &PointQ::from_integers(0, 1)).unwrap();
        assert_eq!(d.to_affine().unwrap(), (rat(1, 4), rat(-9, 8)));
        assert_eq!(d, "1/4,-9/8".parse().unwrap());
        assert_eq!(d.to_string(), "2:-9:8");
    }

    #[test]
    fn normalisation() {
        let p: PointQ = "-2580:766:-2000".parse().unwrap();
        assert_eq!(p.to_string(), "1290:-383:1000");
        assert!("1:2:0".parse::<PointQ>().is_err());
        assert!("0:5:0".parse::<PointQ>().unwrap().is_identity());
        assert!("3".parse::<PointQ>().is_err());
        assert!("1/0,2".parse::<PointQ>().is_err());
        let e = CurveQ::new(0, -2).unwrap();
        assert!(matches!(
            e.add(&PointQ::from_integers(1, 1), &PointQ::identity()),
            Err(Error::NotOnCurve(_))
        ));
    }

    #[test]
    fn torsion() {
        let e = CurveQ::new(0, -2).unwrap();
        assert!(e.is_torsion(&PointQ::identity()).unwrap());
        assert!(!e.is_torsion(&PointQ::from_integers(3, 5)).unwrap());
        // y^2 = x^3 - 27x + 54 = (x - 3)^2 (x + 6) is singular; use y^2 = x^3 - 4x instead
        let e = CurveQ::new(-4, 0).unwrap();
        assert!(e.is_torsion(&PointQ::from_integers(2, 0)).unwrap());
        // y^2 = x^3 + 1 has (2, 3) of order 6
        let e = CurveQ::new(0, 1).unwrap();
        assert!(e.is_torsion(&PointQ::from_integers(2, 3)).unwrap());
    }

    #[test]
    fn reduction() {
        let e = CurveQ::new(0, -2).unwrap();
        assert_eq!(
            e.reduce_point(&PointQ::identity(), 7).unwrap(),
            PointFp::Infinity
        );
        assert_eq!(
            e.reduce_point(&PointQ::from_integers(3, 5), 7).unwrap(),
            PointFp::affine(3, 5)
        );
        let d: PointQ = "1290:-383:1000".parse().unwrap();
        assert_eq!(e.reduce_point(&d, 5).unwrap(), PointFp::Infinity);
        assert_eq!(e.reduce_point(&d, 3), Err(Error::BadReduction(3)));
        assert_eq!(e.reduce(2), Err(Error::BadReduction(2)));
    }

    #[test]
    fn good_prime_sets() {
        let e1 = CurveQ::new(0, -2).unwrap();
        let e2 = CurveQ::new(1, 1).unwrap();
        assert_eq!(e1.discriminant(), BigInt::from(-1728));
        assert_eq!(e2.discriminant(), BigInt::from(-496));
        assert_eq!(good_primes(&[e1], 20).primes(), &[5, 7, 11, 13, 17, 19]);
        assert!(good_primes(&[e1], 4).is_empty());
        let both = good_primes(&[e1, e2], 40);
        assert_eq!(both.primes(), &[5, 7, 11, 13, 17, 19, 23, 29, 37]);
        assert_eq!(both.excluded(), &[2, 3, 31]);
        let fewer = GoodPrimeSet::with_exclusions(&[e1], 20, &[11]);
        assert_eq!(fewer.primes(), &[5, 7, 13, 17, 19]);
    }

    #[test]
    fn singular_rejected() {
        assert!(CurveQ::new(-3, 2).is_err());
        assert!("0,0".parse::<CurveQ>().is_err());
        assert_eq!(
            "0,-2".parse::<CurveQ>().unwrap(),
            CurveQ::new(0, -2).unwrap()
        );
    }
}
