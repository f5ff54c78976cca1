//! Slow, independent reference computations for the integration tests.
//! Nothing here calls into the library.

#![allow(dead_code)]

pub type Pt = Option<(u64, u64)>;

pub fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u128;
    let mut b128 = (b % p) as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b128 % p as u128;
        }
        b128 = b128 * b128 % p as u128;
        e >>= 1;
    }
    b = r as u64;
    b
}

pub fn inv(x: u64, p: u64) -> u64 {
    pow(x, p - 2, p)
}

pub fn md(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

/// `1 + #{(x, y) : y^2 = x^3 + a x + b}` from a table of squares.
pub fn count_points(p: u64, a: i64, b: i64) -> u64 {
    let mut squares = vec![0u64; p as usize];
    for y in 0..p {
        squares[(y * y % p) as usize] += 1;
    }
    let (a, b) = (md(a, p), md(b, p));
    1 + (0..p)
        .map(|x| squares[((x * x % p * x + a * x + b) % p) as usize])
        .sum::<u64>()
}

/// Chord and tangent, straight from the textbook formulas.
pub fn add(p: u64, a: i64, s: Pt, t: Pt) -> Pt {
    let a = md(a, p) as u128;
    let pp = p as u128;
    let ((x1, y1), (x2, y2)) = match (s, t) {
        (None, q) | (q, None) => return q,
        (Some(u), Some(v)) => (u, v),
    };
    let (x1, y1, x2, y2) = (x1 as u128, y1 as u128, x2 as u128, y2 as u128);
    let lambda = if x1 == x2 {
        if (y1 + y2) % pp == 0 {
            return None;
        }
        (3 * x1 * x1 + a) % pp * inv(((2 * y1) % pp) as u64, p) as u128 % pp
    } else {
        (y2 + pp - y1) % pp * inv(((x2 + pp - x1) % pp) as u64, p) as u128 % pp
    };
    let x3 = (lambda * lambda + 2 * pp - x1 - x2) % pp;
    let y3 = (lambda * ((x1 + pp - x3) % pp) + pp - y1) % pp;
    Some((x3 as u64, y3 as u64))
}

pub fn mul(p: u64, a: i64, k: u64, pt: Pt) -> Pt {
    (0..k).fold(None, |acc, _| add(p, a, acc, pt))
}

/// Order by repeated addition.
pub fn order(p: u64, a: i64, pt: Pt) -> u64 {
    let mut acc = pt;
    let mut k = 1;
    while acc.is_some() {
        acc = add(p, a, acc, pt);
        k += 1;
    }
    k
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub fn primes_upto(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

/// Good primes `>= 5` for `y^2 = x^3 + a x + b`: `p` must not divide `4a^3 + 27b^2`.
pub fn good(p: u64, a: i64, b: i64) -> bool {
    let d = 4 * (a as i128).pow(3) + 27 * (b as i128).pow(2);
    p >= 5 && d.rem_euclid(p as i128) != 0
}
