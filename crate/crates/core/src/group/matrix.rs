//! Small square matrices over `Z/m` and materialised matrix groups.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::arith::{inv_mod, is_prime};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    modulus: u32,
    n: usize,
    /// Row-major entries in `[0, modulus)`.
    entries: Vec<u32>,
}

impl Matrix {
    pub fn new(modulus: u32, n: usize, entries: Vec<i64>) -> Result<Self> {
        if modulus < 2 || n == 0 || entries.len() != n * n {
            return Err(Error::Domain(format!(
                "{} entries do not form a {n}x{n} matrix mod {modulus}",
                entries.len()
            )));
        }
        let entries = entries
            .into_iter()
            .map(|e| e.rem_euclid(modulus as i64) as u32)
            .collect();
        Ok(Matrix {
            modulus,
            n,
            entries,
        })
    }

    pub fn identity(modulus: u32, n: usize) -> Self {
        Self::scalar(modulus, n, 1)
    }

    pub fn scalar(modulus: u32, n: usize, c: i64) -> Self {
        let c = c.rem_euclid(modulus as i64) as u32;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = c;
        }
        Matrix {
            modulus,
            n,
            entries,
        }
    }

    pub fn diag(modulus: u32, diagonal: &[i64]) -> Self {
        let n = diagonal.len();
        let mut m = Self::scalar(modulus, n, 0);
        for (i, &d) in diagonal.iter().enumerate() {
            m.entries[i * n + i] = d.rem_euclid(modulus as i64) as u32;
        }
        m
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        debug_assert_eq!((self.n, self.modulus), (rhs.n, rhs.modulus));
        let n = self.n;
        let m = self.modulus as u64;
        let mut entries = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u64;
                for k in 0..n {
                    acc += self.get(i, k) as u64 * rhs.get(k, j) as u64;
                }
                entries[i * n + j] = (acc % m) as u32;
            }
        }
        Matrix {
            modulus: self.modulus,
            n,
            entries,
        }
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let m = self.modulus as u64;
        (0..self.n)
            .map(|i| {
                let acc: u64 = (0..self.n)
                    .map(|k| self.get(i, k) as u64 * v[k] as u64)
                    .sum();
                (acc % m) as u32
            })
            .collect()
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        let m = self.modulus;
        Matrix {
            modulus: m,
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(&a, &b)| (a + m - b) % m)
                .collect(),
        }
    }

    /// `self - I`.
    pub fn minus_identity(&self) -> Matrix {
        self.sub(&Matrix::identity(self.modulus, self.n))
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.modulus, self.n)
    }

    pub fn is_scalar(&self) -> bool {
        let c = self.get(0, 0);
        *self == Matrix::scalar(self.modulus, self.n, c as i64)
    }

    /// Determinant by Gaussian elimination; the modulus must be prime.
    pub fn det(&self) -> u32 {
        let m = self.modulus as u64;
        let n = self.n;
        let mut a: Vec<u64> = self.entries.iter().map(|&e| e as u64).collect();
        let mut det = 1u64;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return 0;
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = (m - det) % m;
            }
            let p = a[col * n + col];
            det = det * p % m;
            let pinv = inv_mod(p, m).expect("prime modulus");
            for r in col + 1..n {
                let f = a[r * n + col] * pinv % m;
                if f == 0 {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] = (a[r * n + j] + m - f * a[col * n + j] % m) % m;
                }
            }
        }
        det as u32
    }

    /// Inverse by Gauss-Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        let m = self.modulus as u64;
        let n = self.n;
        let w = 2 * n;
        let mut a = vec![0u64; n * w];
        for i in 0..n {
            for j in 0..n {
                a[i * w + j] = self.get(i, j) as u64;
            }
            a[i * w + n + i] = 1;
        }
        for col in 0..n {
            let piv = (col..n).find(|&r| inv_mod(a[r * w + col], m).is_some())?;
            if piv != col {
                for j in 0..w {
                    a.swap(piv * w + j, col * w + j);
                }
            }
            let pinv = inv_mod(a[col * w + col], m)?;
            for j in 0..w {
                a[col * w + j] = a[col * w + j] * pinv % m;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * w + col];
                if f == 0 {
                    continue;
                }
                for j in 0..w {
                    a[r * w + j] = (a[r * w + j] + m - f * a[col * w + j] % m) % m;
                }
            }
        }
        let entries = (0..n)
            .flat_map(|i| (n..w).map(move |j| (i, j)))
            .map(|(i, j)| a[i * w + j] as u32)
            .collect();
        Some(Matrix {
            modulus: self.modulus,
            n,
            entries,
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_some()
    }

    /// Multiplicative order; the matrix must be invertible.
    pub fn order(&self) -> u64 {
        let id = Matrix::identity(self.modulus, self.n);
        let mut acc = self.clone();
        let mut k = 1;
        while acc != id {
            acc = acc.mul(self);
            k += 1;
        }
        k
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `[[a,b],[c,d]]`-style rendering.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A matrix written as a row-major comma list whose length is a square,
/// with the modulus attached: `"1,1,0,1 mod 3"`.
impl FromStr for Matrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (body, modulus) = s
            .split_once("mod")
            .ok_or_else(|| Error::Parse(format!("matrix `{s}`: missing `mod m`")))?;
        let modulus: u32 = modulus
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("matrix `{s}`: {e}")))?;
        parse_matrix(body, modulus)
    }
}

/// Parses a row-major comma list as a square matrix mod `modulus`.
pub fn parse_matrix(body: &str, modulus: u32) -> Result<Matrix> {
    let entries = body
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Error::Parse(format!("matrix `{body}`: {e}")))?;
    let n = (entries.len() as f64).sqrt().round() as usize;
    Matrix::new(modulus, n, entries)
}

/// Vectors of `(Z/m)^n`, enumerated in lexicographic order.
pub fn all_vectors(modulus: u32, n: usize) -> Vec<Vec<u32>> {
    let count = (modulus as usize).pow(n as u32);
    (0..count)
        .map(|mut idx| {
            let mut v = vec![0u32; n];
            for slot in v.iter_mut().rev() {
                *slot = (idx % modulus as usize) as u32;
                idx /= modulus as usize;
            }
            v
        })
        .collect()
}

/// A finite matrix group given by generators, with its elements materialised.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    modulus: u32,
    n: usize,
    generators: Vec<Matrix>,
    elements: Vec<Matrix>,
    index: HashMap<Matrix, usize>,
}

impl MatrixGroup {
    /// Closure of `generators` under multiplication; elements are listed in
    /// breadth-first order from the identity.
    pub fn generated(modulus: u32, n: usize, generators: Vec<Matrix>) -> Result<Self> {
        Self::generated_within(modulus, n, generators, usize::MAX)
    }

    /// As [`MatrixGroup::generated`], failing once more than `budget`
    /// elements have been produced.
    pub fn generated_within(
        modulus: u32,
        n: usize,
        generators: Vec<Matrix>,
        budget: usize,
    ) -> Result<Self> {
        for g in &generators {
            if g.modulus() != modulus || g.dim() != n {
                return Err(Error::Domain(format!(
                    "generator {g} is not a {n}x{n} matrix mod {modulus}"
                )));
            }
            if !g.is_invertible() {
                return Err(Error::Domain(format!("generator {g} is not invertible")));
            }
        }
        let id = Matrix::identity(modulus, n);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &generators {
                let next = elements[i].mul(g);
                if !index.contains_key(&next) {
                    if elements.len() >= budget {
                        return Err(Error::Budget(format!(
                            "group generated by {} matrices exceeds {budget} elements",
                            generators.len()
                        )));
                    }
                    index.insert(next.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        Ok(MatrixGroup {
            modulus,
            n,
            generators,
            elements,
            index,
        })
    }

    /// `GL(n, Z/ell)` for prime `ell`, generated by elementary matrices and
    /// a diagonal matrix carrying a primitive root.
    pub fn general_linear(ell: u32, n: usize) -> Result<Self> {
        if !is_prime(ell as u64) {
            return Err(Error::Domain(format!("{ell} is not prime")));
        }
        let mut gens = elementary_generators(ell, n);
        let root = primitive_root(ell);
        let mut d = vec![1i64; n];
        d[0] = root as i64;
        gens.push(Matrix::diag(ell, &d));
        Self::generated(ell, n, gens)
    }

    /// `SL(2, Z/p)` generated by `S = [[0,-1],[1,0]]` and `T = [[1,1],[0,1]]`.
    pub fn special_linear_2(p: u32) -> Result<Self> {
        Self::generated(p, 2, vec![sl2_s(p), sl2_t(p)])
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.index.contains_key(m)
    }

    /// True iff `m` commutes with every generator.
    pub fn centralises(&self, m: &Matrix) -> bool {
        self.generators.iter().all(|g| g.mul(m) == m.mul(g))
    }

    /// `table[i * order + j]` is the index of `elements[i] * elements[j]`.
    pub fn multiplication_table(&self) -> Vec<u32> {
        let n = self.order();
        let mut table = Vec::with_capacity(n * n);
        for a in &self.elements {
            for b in &self.elements {
                table.push(self.index[&a.mul(b)] as u32);
            }
        }
        table
    }
}

/// `|GL(n, F_ell)| = prod (ell^n - ell^i)`.
pub fn gl_order(ell: u64, n: u32) -> u64 {
    (0..n).map(|i| ell.pow(n) - ell.pow(i)).product()
}

pub fn sl2_s(p: u32) -> Matrix {
    Matrix::new(p, 2, vec![0, -1, 1, 0]).expect("2x2")
}

pub fn sl2_t(p: u32) -> Matrix {
    Matrix::new(p, 2, vec![1, 1, 0, 1]).expect("2x2")
}

fn elementary_generators(ell: u32, n: usize) -> Vec<Matrix> {
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut m = Matrix::identity(ell, n);
                m.entries[i * n + j] = 1;
                gens.push(m);
            }
        }
    }
    gens
}

fn primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let factors = crate::arith::factorize(p as u64 - 1);
    (2..p)
        .find(|&g| {
            factors
                .iter()
                .all(|&(q, _)| crate::arith::pow_mod(g as u64, (p as u64 - 1) / q, p as u64) != 1)
        })
        .expect("prime has a primitive root")
}
