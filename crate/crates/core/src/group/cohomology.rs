//! First cohomology `H^1(G, F_ell^n)` of a finite matrix group acting on
//! column vectors, by brute force.
//!
//! A cocycle `c(g1 g2) = c(g1) + g1 c(g2)` is determined by its values on
//! generators. Every assignment of generator values is extended along the
//! right Cayley graph, `c(x g) = c(x) + x c(g)`, and kept if no edge
//! disagrees. Classes are cosets of the coboundaries `g -> (g - 1) m`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::matrix::{all_vectors, Matrix, MatrixGroup};
use crate::error::{Error, Result};

/// Largest `|G| * ell^(n * #generators)` enumerated.
pub const COCYCLE_BUDGET: u64 = 20_000_000;

/// Values of a cocycle on every group element, indexed like `group.elements()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cocycle {
    pub values: Vec<Vec<u32>>,
}

impl Cocycle {
    /// Checks `c(g1 g2) = c(g1) + g1 c(g2)` on all pairs.
    pub fn is_cocycle(&self, group: &MatrixGroup) -> bool {
        let m = group.modulus();
        let els = group.elements();
        els.iter().enumerate().all(|(i, g1)| {
            els.iter().enumerate().all(|(j, g2)| {
                let k = group.index_of(&g1.mul(g2)).expect("closed");
                let rhs = add(&self.values[i], &g1.apply(&self.values[j]), m);
                self.values[k] == rhs
            })
        })
    }

    /// Values on the generators, concatenated.
    pub fn generator_key(&self, group: &MatrixGroup) -> Vec<u32> {
        group
            .generators()
            .iter()
            .flat_map(|g| self.values[group.index_of(g).expect("generator")].clone())
            .collect()
    }
}

fn add(a: &[u32], b: &[u32], m: u32) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| (x + y) % m).collect()
}

/// `g -> (g - 1) m` on every element.
pub fn coboundary(group: &MatrixGroup, m: &[u32]) -> Cocycle {
    Cocycle {
        values: group
            .elements()
            .iter()
            .map(|g| g.minus_identity().apply(m))
            .collect(),
    }
}

/// Some `m` with `c = (g - 1) m`, if `c` is a coboundary.
pub fn coboundary_witness(group: &MatrixGroup, c: &Cocycle) -> Option<Vec<u32>> {
    all_vectors(group.modulus(), group.dim())
        .into_iter()
        .find(|m| coboundary(group, m) == *c)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H1Classes {
    pub ell: u32,
    pub n: usize,
    pub group_order: usize,
    pub cocycles: usize,
    pub coboundaries: usize,
    /// One representative per class; the one with the smallest generator key.
    pub representatives: Vec<Cocycle>,
}

impl H1Classes {
    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }
}

/// Every cocycle of `group` with values in `F_ell^n`, ordered by generator key.
pub fn all_cocycles(group: &MatrixGroup) -> Result<Vec<Cocycle>> {
    let ell = group.modulus();
    let n = group.dim();
    if !crate::arith::is_prime(ell as u64) {
        return Err(Error::Domain(format!("{ell} is not prime")));
    }
    let gens = group.generators();
    let work = (ell as u64)
        .checked_pow((n * gens.len()) as u32)
        .and_then(|c| c.checked_mul(group.order() as u64));
    match work {
        Some(w) if w <= COCYCLE_BUDGET => {}
        _ => {
            return Err(Error::Budget(format!(
                "{} generators on F_{ell}^{n} with |G| = {} exceeds {COCYCLE_BUDGET}",
                gens.len(),
                group.order()
            )))
        }
    }
    let gen_idx: Vec<usize> = gens
        .iter()
        .map(|g| group.index_of(g).expect("generator"))
        .collect();
    let table = group.multiplication_table();
    let order = group.order();
    let vectors = all_vectors(ell, n);
    let assignments = all_vectors(vectors.len() as u32, gens.len());
    let mut out = Vec::new();
    for assignment in assignments {
        let gen_values: Vec<&Vec<u32>> = assignment.iter().map(|&i| &vectors[i as usize]).collect();
        if let Some(values) = extend(group, &table, order, &gen_idx, &gen_values) {
            out.push(Cocycle { values });
        }
    }
    Ok(out)
}

fn extend(
    group: &MatrixGroup,
    table: &[u32],
    order: usize,
    gen_idx: &[usize],
    gen_values: &[&Vec<u32>],
) -> Option<Vec<Vec<u32>>> {
    let m = group.modulus();
    let els = group.elements();
    let mut values: Vec<Option<Vec<u32>>> = vec![None; order];
    values[0] = Some(vec![0; group.dim()]);
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let cx = values[x].clone().expect("visited");
        for (&g, &cg) in gen_idx.iter().zip(gen_values) {
            let y = table[x * order + g] as usize;
            let want = add(&cx, &els[x].apply(cg), m);
            match &values[y] {
                None => {
                    values[y] = Some(want);
                    queue.push_back(y);
                }
                Some(v) if *v != want => return None,
                Some(_) => {}
            }
        }
    }
    values.into_iter().collect()
}

pub fn h1_classes(group: &MatrixGroup) -> Result<H1Classes> {
    let cocycles = all_cocycles(group)?;
    let m = group.modulus();
    let coboundary_keys: Vec<Vec<u32>> = {
        let mut keys: Vec<Vec<u32>> = all_vectors(m, group.dim())
            .iter()
            .map(|v| coboundary(group, v).generator_key(group))
            .collect();
        keys.sort();
        keys.dedup();
        keys
    };
    // canonical representative of z + B: the smallest generator key in the coset
    let mut classes: BTreeMap<Vec<u32>, Cocycle> = BTreeMap::new();
    let by_key: BTreeMap<Vec<u32>, &Cocycle> = cocycles
        .iter()
        .map(|c| (c.generator_key(group), c))
        .collect();
    for (key, cocycle) in &by_key {
        let canonical = coboundary_keys
            .iter()
            .map(|b| add(key, b, m))
            .min()
            .expect("zero coboundary");
        if canonical == *key {
            classes.insert(canonical, (*cocycle).clone());
        }
    }
    Ok(H1Classes {
        ell: m,
        n: group.dim(),
        group_order: group.order(),
        cocycles: cocycles.len(),
        coboundaries: coboundary_keys.len(),
        representatives: classes.into_values().collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma1Report {
    pub tau: Matrix,
    pub classes: usize,
    /// Representatives `c` whose image `(tau - 1) c` is not a coboundary.
    pub failures: usize,
}

impl Lemma1Report {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

/// For a central `tau`, checks that `g -> (tau - 1) c(g)` is a coboundary
/// for every class representative `c`.
pub fn lemma1_verify(group: &MatrixGroup, tau: &Matrix) -> Result<bool> {
    Ok(lemma1_report(group, tau)?.holds())
}

pub fn lemma1_report(group: &MatrixGroup, tau: &Matrix) -> Result<Lemma1Report> {
    if tau.modulus() != group.modulus() || tau.dim() != group.dim() {
        return Err(Error::Domain(format!("{tau} does not act on the module")));
    }
    if !group.contains(tau) {
        return Err(Error::Precondition(format!("{tau} is not in the group")));
    }
    if !group.centralises(tau) {
        return Err(Error::Precondition(format!(
            "{tau} does not commute with every generator"
        )));
    }
    let classes = h1_classes(group)?;
    let t1 = tau.minus_identity();
    let failures = classes
        .representatives
        .iter()
        .filter(|c| {
            let image = Cocycle {
                values: c.values.iter().map(|v| t1.apply(v)).collect(),
            };
            coboundary_witness(group, &image).is_none()
        })
        .count();
    Ok(Lemma1Report {
        tau: tau.clone(),
        classes: classes.class_count(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::matrix::sl2_t;

    /// Independent count: all total maps `G -> V` satisfying the cocycle
    /// condition, and all coboundaries, enumerated directly.
    fn oracle_counts(group: &MatrixGroup) -> (usize, usize) {
        let vs = all_vectors(group.modulus(), group.dim());
        let maps = all_vectors(vs.len() as u32, group.order());
        let z = maps
            .iter()
            .filter(|choice| {
                Cocycle {
                    values: choice.iter().map(|&i| vs[i as usize].clone()).collect(),
                }
                .is_cocycle(group)
            })
            .count();
        let mut b: Vec<Cocycle> = vs.iter().map(|m| coboundary(group, m)).collect();
        b.sort();
        b.dedup();
        (z, b.len())
    }

    #[test]
    fn trivial_group() {
        let g = MatrixGroup::generated(3, 2, vec![]).unwrap();
        let h = h1_classes(&g).unwrap();
        assert_eq!(h.class_count(), 1);
        assert!(h.representatives[0].values[0].iter().all(|&x| x == 0));
    }

    #[test]
    fn unipotent_over_f2() {
        let g = MatrixGroup::generated(2, 2, vec![sl2_t(2)]).unwrap();
        assert_eq!(g.order(), 2);
        let h = h1_classes(&g).unwrap();
        assert_eq!(oracle_counts(&g), (2, 2));
        assert_eq!((h.cocycles, h.coboundaries), (2, 2));
        assert_eq!(h.class_count(), 1);
    }

    #[test]
    fn unipotent_over_f3_has_classes() {
        // <T> of order 3 on F_3^2: the cocycle value v on T needs (1 + T + T^2) v = 0
        let g = MatrixGroup::generated(3, 2, vec![sl2_t(3)]).unwrap();
        let h = h1_classes(&g).unwrap();
        let (z, b) = oracle_counts(&g);
        assert_eq!((h.cocycles, h.coboundaries), (z, b));
        assert_eq!(h.class_count(), z / b);
        for c in &h.representatives {
            assert!(c.is_cocycle(&g));
        }
    }

    #[test]
    fn coprime_order_vanishes() {
        // diag(2, 1) has order 4 in GL(2, F_5), coprime to 5
        let g = MatrixGroup::generated(5, 2, vec![Matrix::diag(5, &[2, 1])]).unwrap();
        assert_eq!(h1_classes(&g).unwrap().class_count(), 1);
        // scalar 2I generates {I, 2I, 4I, 3I}
        let g = MatrixGroup::generated(5, 2, vec![Matrix::scalar(5, 2, 2)]).unwrap();
        assert_eq!(h1_classes(&g).unwrap().class_count(), 1);
    }

    #[test]
    fn lemma1_preconditions() {
        let g = MatrixGroup::general_linear(3, 2).unwrap();
        assert!(matches!(
            lemma1_verify(&g, &sl2_t(3)),
            Err(Error::Precondition(_))
        ));
        assert!(lemma1_verify(&g, &Matrix::identity(3, 2)).unwrap());
        assert!(lemma1_verify(&g, &Matrix::scalar(3, 2, -1)).unwrap());
        let outside = MatrixGroup::generated(3, 2, vec![sl2_t(3)]).unwrap();
        assert!(matches!(
            lemma1_verify(&outside, &Matrix::scalar(3, 2, -1)),
            Err(Error::Precondition(_))
        ));
    }
}
