//! Endomorphisms of `SL(2, Z/p)` for small `p`.
//!
//! Candidates are images `(A, B)` of the generators `S = [[0,-1],[1,0]]`
//! and `T = [[1,1],[0,1]]`. A candidate is extended breadth-first along the
//! right Cayley graph, `phi(x g) = phi(x) phi(g)`, and discarded at the first
//! edge whose two ends disagree. A candidate that survives every edge is a
//! homomorphism; no presentation of the group is used.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use super::matrix::{sl2_s, sl2_t, Matrix, MatrixGroup};
use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::par::parallel_map;

/// Largest `p` accepted by the census.
pub const CENSUS_MAX_P: u32 = 7;

/// `SL(2, Z/p)` with its multiplication table.
#[derive(Debug)]
pub struct Sl2 {
    group: MatrixGroup,
    table: Vec<u32>,
    s: usize,
    t: usize,
}

impl Sl2 {
    pub fn new(p: u32) -> Result<Self> {
        let group = MatrixGroup::special_linear_2(p)?;
        let table = group.multiplication_table();
        let s = group.index_of(&sl2_s(p)).expect("S in SL2");
        let t = group.index_of(&sl2_t(p)).expect("T in SL2");
        Ok(Sl2 { group, table, s, t })
    }

    pub fn group(&self) -> &MatrixGroup {
        &self.group
    }

    pub fn p(&self) -> u32 {
        self.group.modulus()
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.group.order() + b] as usize
    }

    /// Extends `S -> a`, `T -> b` to a homomorphism, if possible.
    fn extend(&self, a: usize, b: usize) -> Option<Vec<u32>> {
        const UNSET: u32 = u32::MAX;
        let order = self.group.order();
        let mut image = vec![UNSET; order];
        image[0] = 0; // element 0 is the identity
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let fx = image[x] as usize;
            for (gen, gen_image) in [(self.s, a), (self.t, b)] {
                let y = self.mul(x, gen);
                let want = self.mul(fx, gen_image) as u32;
                if image[y] == UNSET {
                    image[y] = want;
                    queue.push_back(y);
                } else if image[y] != want {
                    return None;
                }
            }
        }
        Some(image)
    }
}

/// A total map `SL(2, Z/p) -> SL(2, Z/p)` on element indices.
#[derive(Debug, Clone)]
pub struct EndoTable {
    group: Arc<Sl2>,
    image: Vec<u32>,
}

impl PartialEq for EndoTable {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.image == other.image
    }
}

impl EndoTable {
    pub fn group(&self) -> &MatrixGroup {
        &self.group.group
    }

    pub fn image(&self) -> &[u32] {
        &self.image
    }

    pub fn apply(&self, x: &Matrix) -> Option<&Matrix> {
        let i = self.group.group.index_of(x)?;
        Some(&self.group.group.elements()[self.image[i] as usize])
    }

    pub fn is_trivial(&self) -> bool {
        self.image.iter().all(|&i| i == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn is_bijective(&self) -> bool {
        let distinct: HashSet<u32> = self.image.iter().copied().collect();
        distinct.len() == self.image.len()
    }

    /// `phi(xy) = phi(x) phi(y)` for all pairs.
    pub fn is_homomorphism(&self) -> bool {
        let g = &self.group;
        let n = g.group.order();
        (0..n).all(|x| {
            (0..n).all(|y| {
                self.image[g.mul(x, y)] as usize
                    == g.mul(self.image[x] as usize, self.image[y] as usize)
            })
        })
    }

    /// `self o other`.
    pub fn compose(&self, other: &EndoTable) -> EndoTable {
        EndoTable {
            group: Arc::clone(&self.group),
            image: other
                .image
                .iter()
                .map(|&i| self.image[i as usize])
                .collect(),
        }
    }
}

/// Every endomorphism of `SL(2, Z/p)`, `3 < p <= 7`, sorted by image table.
pub fn enumerate_endos(p: u32) -> Result<Vec<EndoTable>> {
    enumerate_endos_with(p, 1)
}

pub fn enumerate_endos_with(p: u32, workers: usize) -> Result<Vec<EndoTable>> {
    if p <= 3 || !is_prime(p as u64) {
        return Err(Error::Precondition(format!("p = {p} must be a prime > 3")));
    }
    if p > CENSUS_MAX_P {
        return Err(Error::Budget(format!(
            "census limited to p <= {CENSUS_MAX_P}, got {p}"
        )));
    }
    let sl2 = Arc::new(Sl2::new(p)?);
    let order = sl2.group.order();
    let candidates: Vec<usize> = (0..order).collect();
    let found: BTreeSet<Vec<u32>> = parallel_map(&candidates, workers, |&a| {
        (0..order)
            .filter_map(|b| sl2.extend(a, b))
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();
    Ok(found
        .into_iter()
        .map(|image| EndoTable {
            group: Arc::clone(&sl2),
            image,
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "g", rename_all = "lowercase")]
pub enum EndoClass {
    Trivial,
    /// Conjugation `x -> g x g^-1` by `g` in `GL(2, Z/p)`.
    Inner(Matrix),
    Other,
}

/// Classifies a homomorphism as trivial, inner (with the first conjugating
/// `g` in the breadth-first listing of `GL(2, Z/p)`), or other.
pub fn classify_endo(e: &EndoTable) -> EndoClass {
    classify_with(
        e,
        &MatrixGroup::general_linear(e.group.p(), 2).expect("prime p"),
    )
}

/// As [`classify_endo`] with a caller-supplied `GL(2, Z/p)`.
pub fn classify_with(e: &EndoTable, gl: &MatrixGroup) -> EndoClass {
    if e.is_trivial() {
        return EndoClass::Trivial;
    }
    let sl = e.group();
    let s = sl2_s(sl.modulus());
    let t = sl2_t(sl.modulus());
    let (fs, ft) = (e.apply(&s).expect("S"), e.apply(&t).expect("T"));
    for g in gl.elements() {
        let ginv = g.inverse().expect("GL element");
        let conj = |x: &Matrix| g.mul(x).mul(&ginv);
        if conj(&s) != *fs || conj(&t) != *ft {
            continue;
        }
        if sl
            .elements()
            .iter()
            .all(|x| e.apply(x).expect("element") == &conj(x))
        {
            return EndoClass::Inner(g.clone());
        }
    }
    EndoClass::Other
}

/// The distinct maps `x -> g x g^-1` on `SL(2, Z/p)` for `g` in `GL(2, Z/p)`,
/// built directly from matrix products.
pub fn conjugation_maps(p: u32) -> Result<HashSet<Vec<u32>>> {
    let sl = MatrixGroup::special_linear_2(p)?;
    let gl = MatrixGroup::general_linear(p, 2)?;
    Ok(gl
        .elements()
        .iter()
        .map(|g| {
            let ginv = g.inverse().expect("GL element");
            sl.elements()
                .iter()
                .map(|x| sl.index_of(&g.mul(x).mul(&ginv)).expect("SL normal in GL") as u32)
                .collect()
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndoCensus {
    pub p: u32,
    pub group_order: usize,
    pub endomorphisms: usize,
    pub trivial: usize,
    pub nontrivial: usize,
    pub nontrivial_bijective: usize,
    pub inner: usize,
    pub other: usize,
    pub conjugation_maps: usize,
    /// The nontrivial endomorphisms are exactly the conjugation maps.
    pub matches_conjugation_maps: bool,
    /// Composition of any two enumerated endomorphisms is enumerated.
    pub closed_under_composition: bool,
}

impl EndoCensus {
    pub fn holds(&self) -> bool {
        self.trivial == 1
            && self.nontrivial_bijective == self.nontrivial
            && self.other == 0
            && self.inner == self.nontrivial
            && self.matches_conjugation_maps
            && self.closed_under_composition
    }
}

pub fn endo_census(p: u32, workers: usize) -> Result<EndoCensus> {
    let endos = enumerate_endos_with(p, workers)?;
    let gl = MatrixGroup::general_linear(p, 2)?;
    let classes = parallel_map(&endos, workers, |e| classify_with(e, &gl));
    let nontrivial: HashSet<Vec<u32>> = endos
        .iter()
        .filter(|e| !e.is_trivial())
        .map(|e| e.image.clone())
        .collect();
    let conj = conjugation_maps(p)?;
    let all: HashSet<&Vec<u32>> = endos.iter().map(|e| &e.image).collect();
    let closed = endos
        .iter()
        .all(|a| endos.iter().all(|b| all.contains(&a.compose(b).image)));
    Ok(EndoCensus {
        p,
        group_order: endos.first().map_or(0, |e| e.group().order()),
        endomorphisms: endos.len(),
        trivial: endos.iter().filter(|e| e.is_trivial()).count(),
        nontrivial: nontrivial.len(),
        nontrivial_bijective: endos
            .iter()
            .filter(|e| !e.is_trivial() && e.is_bijective())
            .count(),
        inner: classes
            .iter()
            .filter(|c| matches!(c, EndoClass::Inner(_)))
            .count(),
        other: classes.iter().filter(|c| **c == EndoClass::Other).count(),
        conjugation_maps: conj.len(),
        matches_conjugation_maps: nontrivial == conj,
        closed_under_composition: closed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_and_large_p() {
        assert!(matches!(enumerate_endos(3), Err(Error::Precondition(_))));
        assert!(matches!(enumerate_endos(6), Err(Error::Precondition(_))));
        assert!(matches!(enumerate_endos(11), Err(Error::Budget(_))));
    }

    #[test]
    fn census_p5() {
        let endos = enumerate_endos(5).unwrap();
        assert!(endos.iter().any(|e| e.is_identity()));
        assert!(endos.iter().any(|e| e.is_trivial()));
        assert!(endos.iter().all(|e| e.is_homomorphism()));
        let id = endos.iter().find(|e| e.is_identity()).unwrap();
        assert_eq!(classify_endo(id), EndoClass::Inner(Matrix::identity(5, 2)));
        let triv = endos.iter().find(|e| e.is_trivial()).unwrap();
        assert_eq!(classify_endo(triv), EndoClass::Trivial);
        // 120 = |PGL(2, 5)|
        assert_eq!(conjugation_maps(5).unwrap().len(), 120);
        assert_eq!(endos.len(), 121);
    }

    #[test]
    fn conjugation_by_diagonal() {
        let endos = enumerate_endos(5).unwrap();
        let d = Matrix::diag(5, &[2, 1]);
        let dinv = d.inverse().unwrap();
        let target = endos
            .iter()
            .find(|e| {
                e.group()
                    .elements()
                    .iter()
                    .all(|x| e.apply(x).unwrap() == &d.mul(x).mul(&dinv))
            })
            .expect("conjugation by diag(2,1) is enumerated");
        match classify_endo(target) {
            EndoClass::Inner(g) => {
                // g = c diag(2, 1) for a scalar c
                let c = g.get(1, 1) as i64;
                assert_eq!(g, Matrix::diag(5, &[2 * c, c]));
            }
            other => panic!("{other:?}"),
        }
    }
}
