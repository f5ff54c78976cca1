//! Elliptic curves `y^2 = x^3 + ax + b` over prime fields `F_p`, `p >= 5`.
//!
//! Points are affine pairs of canonical residues or the point at infinity.
//! The group order is computed by the quadratic-character sum, which is
//! `O(p)` per curve and exact; point orders are obtained by descending
//! through the factorisation of the group order.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{
    add_mod, factorize, inv_mod, is_prime, legendre, mul_mod, reduce_i64, sub_mod, valuation,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveFp {
    p: u64,
    a: u64,
    b: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PointFp {
    Infinity,
    Affine { x: u64, y: u64 },
}

impl PointFp {
    pub fn affine(x: u64, y: u64) -> Self {
        PointFp::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, PointFp::Infinity)
    }
}

impl fmt::Display for PointFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointFp::Infinity => write!(f, "O"),
            PointFp::Affine { x, y } => write!(f, "({x},{y})"),
        }
    }
}

impl fmt::Display for CurveFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + {}x + {} over F_{}", self.a, self.b, self.p)
    }
}

impl CurveFp {
    /// Builds the curve, rejecting `p < 5`, composite `p` and singular models.
    pub fn new(p: u64, a: i64, b: i64) -> Result<Self> {
        if p < 5 || !is_prime(p) {
            return Err(Error::InvalidCurve(format!(
                "modulus {p} must be a prime >= 5"
            )));
        }
        let curve = CurveFp {
            p,
            a: reduce_i64(a, p),
            b: reduce_i64(b, p),
        };
        if curve.discriminant_core() == 0 {
            return Err(Error::InvalidCurve(format!(
                "4a^3 + 27b^2 = 0 mod {p} for a = {a}, b = {b}"
            )));
        }
        Ok(curve)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// `4a^3 + 27b^2 mod p`.
    fn discriminant_core(&self) -> u64 {
        let p = self.p;
        let a3 = mul_mod(mul_mod(self.a, self.a, p), self.a, p);
        let b2 = mul_mod(self.b, self.b, p);
        add_mod(mul_mod(4, a3, p), mul_mod(27, b2, p), p)
    }

    /// `x^3 + ax + b mod p`.
    #[inline]
    pub fn rhs(&self, x: u64) -> u64 {
        let p = self.p;
        let x2 = mul_mod(x, x, p);
        add_mod(
            add_mod(mul_mod(x2, x, p), mul_mod(self.a, x, p), p),
            self.b,
            p,
        )
    }

    pub fn contains(&self, pt: &PointFp) -> bool {
        match *pt {
            PointFp::Infinity => true,
            PointFp::Affine { x, y } => {
                x < self.p && y < self.p && mul_mod(y, y, self.p) == self.rhs(x)
            }
        }
    }

    fn check(&self, pt: &PointFp) -> Result<()> {
        if self.contains(pt) {
            Ok(())
        } else {
            Err(Error::NotOnCurve(format!("{pt} on {self}")))
        }
    }

    /// `|E(F_p)| = p + 1 + sum_x chi(x^3 + ax + b)`.
    pub fn order(&self) -> u64 {
        let p = self.p;
        let sum: i64 = (0..p).map(|x| legendre(self.rhs(x), p) as i64).sum();
        (p as i64 + 1 + sum) as u64
    }

    /// Frobenius trace `p + 1 - |E(F_p)|`.
    pub fn trace(&self) -> i64 {
        self.p as i64 + 1 - self.order() as i64
    }

    pub fn neg(&self, pt: &PointFp) -> PointFp {
        match *pt {
            PointFp::Infinity => PointFp::Infinity,
            PointFp::Affine { x, y } => PointFp::Affine {
                x,
                y: if y == 0 { 0 } else { self.p - y },
            },
        }
    }

    pub fn add(&self, lhs: &PointFp, rhs: &PointFp) -> Result<PointFp> {
        self.check(lhs)?;
        self.check(rhs)?;
        Ok(self.add_unchecked(lhs, rhs))
    }

    pub(crate) fn add_unchecked(&self, lhs: &PointFp, rhs: &PointFp) -> PointFp {
        let p = self.p;
        let (x1, y1, x2, y2) = match (*lhs, *rhs) {
            (PointFp::Infinity, q) => return q,
            (q, PointFp::Infinity) => return q,
            (PointFp::Affine { x: x1, y: y1 }, PointFp::Affine { x: x2, y: y2 }) => {
                (x1, y1, x2, y2)
            }
        };
        let slope = if x1 == x2 {
            if add_mod(y1, y2, p) == 0 {
                return PointFp::Infinity;
            }
            // tangent: (3x^2 + a) / 2y
            let num = add_mod(mul_mod(3, mul_mod(x1, x1, p), p), self.a, p);
            let den = inv_mod(mul_mod(2, y1, p), p).expect("2y invertible for y != 0");
            mul_mod(num, den, p)
        } else {
            let den = inv_mod(sub_mod(x2, x1, p), p).expect("x2 - x1 invertible");
            mul_mod(sub_mod(y2, y1, p), den, p)
        };
        let x3 = sub_mod(sub_mod(mul_mod(slope, slope, p), x1, p), x2, p);
        let y3 = sub_mod(mul_mod(slope, sub_mod(x1, x3, p), p), y1, p);
        PointFp::Affine { x: x3, y: y3 }
    }

    pub fn scalar_mul(&self, k: i128, pt: &PointFp) -> Result<PointFp> {
        self.check(pt)?;
        Ok(self.mul_unchecked(k, pt))
    }

    pub(crate) fn mul_unchecked(&self, k: i128, pt: &PointFp) -> PointFp {
        let mut base = if k < 0 { self.neg(pt) } else { *pt };
        let mut n = k.unsigned_abs();
        let mut acc = PointFp::Infinity;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            base = self.add_unchecked(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// Exact order of `pt`, given a multiple `n` of it (normally `|E(F_p)|`).
    pub fn point_order(&self, pt: &PointFp, n: u64) -> Result<u64> {
        self.check(pt)?;
        if n == 0 || !self.mul_unchecked(n as i128, pt).is_infinity() {
            return Err(Error::OrderInconsistent { order: n });
        }
        let mut ord = n;
        for (q, e) in factorize(n) {
            for _ in 0..e {
                let cand = ord / q;
                if self.mul_unchecked(cand as i128, pt).is_infinity() {
                    ord = cand;
                } else {
                    break;
                }
            }
        }
        Ok(ord)
    }

    /// Every point of `E(F_p)`, infinity first, then affine points by `(x, y)`.
    pub fn points(&self) -> Vec<PointFp> {
        let p = self.p;
        let mut roots: HashMap<u64, Vec<u64>> = HashMap::new();
        for y in 0..p {
            roots.entry(mul_mod(y, y, p)).or_default().push(y);
        }
        let mut out = vec![PointFp::Infinity];
        for x in 0..p {
            if let Some(ys) = roots.get(&self.rhs(x)) {
                out.extend(ys.iter().map(|&y| PointFp::Affine { x, y }));
            }
        }
        out
    }

    /// Invariants `(e1, e2)`, `e1 >= e2`, of the `ell`-primary part
    /// `Z/ell^e1 x Z/ell^e2` of `E(F_p)`.
    pub fn ell_part_structure(&self, ell: u64) -> Result<(u32, u32)> {
        if !is_prime(ell) {
            return Err(Error::Domain(format!("{ell} is not prime")));
        }
        let n = self.order();
        let v = valuation(n, ell);
        if v == 0 {
            return Ok((0, 0));
        }
        let cofactor = n / pow_mod_u64(ell, v);
        let mut sylow: Vec<PointFp> = self
            .points()
            .iter()
            .map(|pt| self.mul_unchecked(cofactor as i128, pt))
            .collect();
        sylow.sort_unstable();
        sylow.dedup();
        debug_assert_eq!(sylow.len() as u64, pow_mod_u64(ell, v));
        // |S[ell^k]| = ell^(min(k,e1) + min(k,e2)); e2 is the largest k with |S[ell^k]| = ell^(2k)
        let mut e2 = 0;
        let mut killer = 1u64;
        for k in 1..=v {
            killer *= ell;
            let count = sylow
                .iter()
                .filter(|pt| self.mul_unchecked(killer as i128, pt).is_infinity())
                .count() as u64;
            if 2 * k <= v && count == pow_mod_u64(ell, 2 * k) {
                e2 = k;
            } else {
                break;
            }
        }
        Ok((v - e2, e2))
    }

    /// Discrete logarithm: some `m` in `[0, ord)` with `m * base = target`,
    /// where `ord` is the order of `base`. Baby-step giant-step.
    pub fn discrete_log(&self, base: &PointFp, target: &PointFp, ord: u64) -> Option<u64> {
        if ord == 0 {
            return None;
        }
        let step = crate::arith::isqrt(ord) + 1;
        let mut baby = HashMap::with_capacity(step as usize);
        let mut cur = PointFp::Infinity;
        for j in 0..step {
            baby.entry(cur).or_insert(j);
            cur = self.add_unchecked(&cur, base);
        }
        // giant stride: -step * base
        let stride = self.neg(&self.mul_unchecked(step as i128, base));
        let mut gamma = *target;
        for i in 0..=step {
            if let Some(&j) = baby.get(&gamma) {
                let m = (i * step + j) % ord;
                return Some(m);
            }
            gamma = self.add_unchecked(&gamma, &stride);
        }
        None
    }
}

fn pow_mod_u64(base: u64, exp: u32) -> u64 {
    base.pow(exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent oracle: count (x, y) pairs directly.
    fn brute_order(p: u64, a: i64, b: i64) -> u64 {
        let (a, b) = (reduce_i64(a, p), reduce_i64(b, p));
        let mut n = 1;
        for x in 0..p {
            for y in 0..p {
                if (y * y) % p == (x * x % p * x + a * x + b) % p {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn orders_match_enumeration() {
        assert_eq!(brute_order(5, 1, 1), 9);
        assert_eq!(brute_order(5, 0, -2), 6);
        assert_eq!(brute_order(7, 0, -2), 7);
        assert_eq!(CurveFp::new(5, 1, 1).unwrap().order(), 9);
        assert_eq!(CurveFp::new(5, 0, -2).unwrap().order(), 6);
        assert_eq!(CurveFp::new(7, 0, -2).unwrap().order(), 7);
        for p in [11u64, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 97] {
            for (a, b) in [(0, -2), (1, 1), (-1, 1), (2, 3)] {
                if let Ok(e) = CurveFp::new(p, a, b) {
                    assert_eq!(e.order(), brute_order(p, a, b), "p={p} a={a} b={b}");
                    assert_eq!(e.points().len() as u64, e.order());
                }
            }
        }
    }

    #[test]
    fn rejects_bad_models() {
        assert!(matches!(CurveFp::new(3, 1, 1), Err(Error::InvalidCurve(_))));
        assert!(matches!(CurveFp::new(9, 1, 1), Err(Error::InvalidCurve(_))));
        // y^2 = x^3 is singular everywhere
        assert!(matches!(CurveFp::new(7, 0, 0), Err(Error::InvalidCurve(_))));
        // 4 + 27 = 31
        assert!(CurveFp::new(31, 1, 1).is_err());
    }

    #[test]
    fn group_law_examples() {
        let e = CurveFp::new(7, 0, -2).unwrap();
        let p = PointFp::affine(3, 5);
        assert!(e.contains(&p));
        assert_eq!(e.add(&p, &PointFp::Infinity).unwrap(), p);
        assert_eq!(e.add(&p, &e.neg(&p)).unwrap(), PointFp::Infinity);
        let d = e.add(&p, &p).unwrap();
        assert!(e.contains(&d));
        // slope = 3*9 / 10 = 27/10 = 6 * 5 = 30 = 2 mod 7; x3 = 4 - 6 = 5; y3 = 2*(3-5) - 5 = -9 = 5
        assert_eq!(d, PointFp::affine(5, 5));
        assert_eq!(e.scalar_mul(1, &p).unwrap(), p);
        assert_eq!(e.scalar_mul(7, &p).unwrap(), PointFp::Infinity);
        assert_eq!(e.scalar_mul(-2, &p).unwrap(), e.neg(&d));
        assert_eq!(e.scalar_mul(0, &p).unwrap(), PointFp::Infinity);
        assert!(matches!(
            e.add(&PointFp::affine(1, 1), &p),
            Err(Error::NotOnCurve(_))
        ));

        let e5 = CurveFp::new(5, 0, -2).unwrap();
        let t = PointFp::affine(3, 0);
        assert_eq!(e5.scalar_mul(2, &t).unwrap(), PointFp::Infinity);
    }

    #[test]
    fn point_orders() {
        let e5 = CurveFp::new(5, 0, -2).unwrap();
        assert_eq!(e5.point_order(&PointFp::Infinity, 6).unwrap(), 1);
        assert_eq!(e5.point_order(&PointFp::affine(3, 0), 6).unwrap(), 2);
        let e7 = CurveFp::new(7, 0, -2).unwrap();
        assert_eq!(e7.point_order(&PointFp::affine(3, 5), 7).unwrap(), 7);
        assert_eq!(
            e7.point_order(&PointFp::affine(3, 5), 6),
            Err(Error::OrderInconsistent { order: 6 })
        );
    }

    #[test]
    fn ell_parts() {
        let e5 = CurveFp::new(5, 0, -2).unwrap();
        assert_eq!(e5.ell_part_structure(2).unwrap(), (1, 0));
        assert_eq!(e5.ell_part_structure(3).unwrap(), (1, 0));
        assert_eq!(e5.ell_part_structure(7).unwrap(), (0, 0));
        // y^2 = x^3 - x over F_5 has full 2-torsion: (0,0), (1,0), (4,0); order 8 = Z/4 x Z/2
        let e = CurveFp::new(5, -1, 0).unwrap();
        assert_eq!(e.order(), 8);
        assert_eq!(e.ell_part_structure(2).unwrap(), (2, 1));
    }

    #[test]
    fn discrete_logs() {
        let e = CurveFp::new(101, 0, -2).unwrap();
        let n = e.order();
        let pts = e.points();
        let base = pts[5];
        let ord = e.point_order(&base, n).unwrap();
        for m in 0..ord {
            let t = e.mul_unchecked(m as i128, &base);
            assert_eq!(e.discrete_log(&base, &t, ord), Some(m));
        }
        let outside = pts
            .iter()
            .find(|q| (0..ord).all(|m| e.mul_unchecked(m as i128, &base) != **q));
        if let Some(q) = outside {
            assert_eq!(e.discrete_log(&base, q, ord), None);
        }
    }
}
