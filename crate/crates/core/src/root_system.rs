//! Finite root systems given by a Cartan matrix, together with their Weyl
//! groups acting on the weight lattice (coordinates in the basis of
//! fundamental weights).
//!
//! Convention: `cartan[i][j] = <α_i^∨, α_j>`. A weight `x` has coordinates
//! `x_i = <x, α_i^∨>`; roots are stored by their coefficients in the simple
//! roots, coroots by their coefficients in the simple coroots.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_traits::{FromPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{determinant, Q};

/// Largest Weyl group the crate will enumerate element by element.
pub const MAX_WEYL_ORDER: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    cartan: Vec<Vec<i64>>,
    sym: Vec<i64>,
    positive_roots: Vec<Vec<i64>>,
    positive_coroots: Vec<Vec<i64>>,
    components: Vec<Vec<usize>>,
}

impl RootSystem {
    /// Validates the Cartan axioms and finite type, then enumerates the
    /// positive roots by reflection closure of the simple roots.
    pub fn new(cartan: Vec<Vec<i64>>) -> Result<Self> {
        let r = cartan.len();
        if cartan.iter().any(|row| row.len() != r) {
            return Err(Error::NonCartan("matrix is not square".into()));
        }
        for i in 0..r {
            if cartan[i][i] != 2 {
                return Err(Error::NonCartan(format!("diagonal entry {i} is not 2")));
            }
            for j in 0..r {
                if i == j {
                    continue;
                }
                if cartan[i][j] > 0 {
                    return Err(Error::NonCartan(format!("entry ({i},{j}) is positive")));
                }
                if (cartan[i][j] == 0) != (cartan[j][i] == 0) {
                    return Err(Error::NonCartan(format!(
                        "entries ({i},{j}) and ({j},{i}) are not simultaneously zero"
                    )));
                }
            }
        }
        let components = connected_components(&cartan);
        let sym = symmetrizer(&cartan, &components)?;
        // Positive definiteness of the symmetrized form: leading minors > 0.
        let s: Vec<Vec<Q>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| Q::from_i64(sym[i] * cartan[i][j]).unwrap())
                    .collect()
            })
            .collect();
        for k in 1..=r {
            let minor: Vec<Vec<Q>> = s[..k].iter().map(|row| row[..k].to_vec()).collect();
            if determinant(&minor) <= Q::zero() {
                return Err(Error::NonCartan("matrix is not of finite type".into()));
            }
        }
        let positive_roots = positive_root_closure(&cartan)?;
        let positive_coroots = positive_roots
            .iter()
            .map(|beta| {
                let norm = half_norm(&cartan, &sym, beta);
                beta.iter()
                    .zip(&sym)
                    .map(|(&b, &d)| {
                        debug_assert_eq!((b * d) % norm, 0);
                        b * d / norm
                    })
                    .collect()
            })
            .collect();
        Ok(RootSystem {
            cartan,
            sym,
            positive_roots,
            positive_coroots,
            components,
        })
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `(α_i, α_i) / 2`, normalized so the short roots of each simple
    /// component have squared length 2.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.sym
    }

    /// Positive roots in simple-root coordinates, simple roots first, then by
    /// height.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Coroots of [`Self::positive_roots`] (same order), in simple-coroot
    /// coordinates.
    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.positive_coroots
    }

    /// Index sets of the simple factors.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Root system with the transposed Cartan matrix (roots and coroots swapped).
    pub fn dual(&self) -> RootSystem {
        let r = self.rank();
        let t = (0..r)
            .map(|i| (0..r).map(|j| self.cartan[j][i]).collect())
            .collect();
        RootSystem::new(t).expect("transpose of a finite Cartan matrix is a finite Cartan matrix")
    }

    pub fn root_index(&self, beta: &[i64]) -> Option<usize> {
        self.positive_roots.iter().position(|b| b == beta)
    }

    /// `<β, α_i^∨>` for a root given in simple-root coordinates.
    pub fn root_pair_simple_coroot(&self, beta: &[i64], i: usize) -> i64 {
        beta.iter().zip(&self.cartan[i]).map(|(b, c)| b * c).sum()
    }

    /// Simple reflection acting on a root in simple-root coordinates.
    pub fn reflect_root(&self, i: usize, beta: &[i64]) -> Vec<i64> {
        let p = self.root_pair_simple_coroot(beta, i);
        let mut out = beta.to_vec();
        out[i] -= p;
        out
    }

    /// Fundamental-weight coordinates of a root given in simple-root coordinates.
    pub fn root_as_weight(&self, beta: &[i64]) -> Vec<i64> {
        let r = self.rank();
        (0..r)
            .map(|j| (0..r).map(|k| self.cartan[j][k] * beta[k]).sum())
            .collect()
    }

    /// Simple reflection on a weight: `s_i(x)_j = x_j - x_i <α_j^∨, α_i>`.
    pub fn reflect<T>(&self, i: usize, x: &mut [T])
    where
        T: Clone + std::ops::Sub<Output = T> + std::ops::Mul<Output = T> + FromPrimitive,
    {
        let xi = x[i].clone();
        for (j, xj) in x.iter_mut().enumerate() {
            let a = self.cartan[j][i];
            if a != 0 {
                *xj = xj.clone() - xi.clone() * T::from_i64(a).unwrap();
            }
        }
    }

    /// The dominant element of the Weyl orbit of `x`, together with a word
    /// `w` (product order, leftmost factor applied last) with `w(x)` dominant.
    pub fn dominant_with_word<T>(&self, x: &[T]) -> (Vec<T>, Vec<usize>)
    where
        T: Clone
            + PartialOrd
            + Zero
            + std::ops::Sub<Output = T>
            + std::ops::Mul<Output = T>
            + FromPrimitive,
    {
        let mut v = x.to_vec();
        let mut applied = Vec::new();
        let zero = T::zero();
        while let Some(i) = v.iter().position(|c| *c < zero) {
            self.reflect(i, &mut v);
            applied.push(i);
        }
        applied.reverse();
        (v, applied)
    }

    pub fn is_dominant<T: PartialOrd + Zero>(&self, x: &[T]) -> bool {
        let zero = T::zero();
        x.iter().all(|c| *c >= zero)
    }

    pub fn simple_reflection_matrix(&self, i: usize) -> Vec<Vec<i64>> {
        let r = self.rank();
        (0..r)
            .map(|j| {
                (0..r)
                    .map(|k| {
                        let id = i64::from(j == k);
                        if k == i {
                            id - self.cartan[j][i]
                        } else {
                            id
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Weyl element from a word in the simple reflections.
    pub fn element(&self, word: &[usize]) -> WeylElement {
        let mut m = identity(self.rank());
        for &i in word {
            m = matmul(&m, &self.simple_reflection_matrix(i));
        }
        WeylElement {
            word: word.to_vec(),
            matrix: m,
        }
    }

    pub fn identity_element(&self) -> WeylElement {
        self.element(&[])
    }

    /// Breadth-first closure from the identity; words are therefore reduced
    /// and the list is sorted by length.
    pub fn weyl_group(&self, limit: usize) -> Result<Vec<WeylElement>> {
        let r = self.rank();
        let gens: Vec<_> = (0..r).map(|i| self.simple_reflection_matrix(i)).collect();
        let id = self.identity_element();
        let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::new();
        seen.insert(id.matrix.clone());
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for (i, g) in gens.iter().enumerate() {
                let m = matmul(&w.matrix, g);
                if seen.insert(m.clone()) {
                    if out.len() >= limit {
                        return Err(Error::WeylGroupTooLarge(format!(
                            "more than {limit} elements"
                        )));
                    }
                    let mut word = w.word.clone();
                    word.push(i);
                    let e = WeylElement { word, matrix: m };
                    out.push(e.clone());
                    queue.push_back(e);
                }
            }
        }
        Ok(out)
    }

    /// Order of the Weyl group from the classification of the simple factors.
    pub fn weyl_order(&self) -> u128 {
        self.components
            .iter()
            .map(|comp| {
                let sub: Vec<Vec<i64>> = comp
                    .iter()
                    .map(|&i| comp.iter().map(|&j| self.cartan[i][j]).collect())
                    .collect();
                simple_weyl_order(&sub)
            })
            .product()
    }

    /// The longest element, found as the element of maximal length.
    pub fn longest_element(&self) -> Result<WeylElement> {
        let group = self.weyl_group(MAX_WEYL_ORDER)?;
        Ok(group.into_iter().last().expect("group is nonempty"))
    }

    /// Number of positive roots sent to negative roots by `w`.
    pub fn inversion_count(&self, w: &WeylElement) -> usize {
        self.positive_roots
            .iter()
            .filter(|beta| {
                let image = w.apply_to_root(self, beta);
                image.iter().any(|&c| c < 0)
            })
            .count()
    }

    /// Size of the Weyl orbit of an integral weight, by orbit enumeration.
    pub fn orbit_size(&self, x: &[i64]) -> usize {
        let mut seen = HashSet::from([x.to_vec()]);
        let mut queue = VecDeque::from([x.to_vec()]);
        while let Some(v) = queue.pop_front() {
            for i in 0..self.rank() {
                let mut y = v.clone();
                self.reflect(i, &mut y);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen.len()
    }

    /// Coxeter number of a simple system: number of roots divided by rank.
    pub fn coxeter_number(&self) -> usize {
        2 * self.positive_roots.len() / self.rank().max(1)
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rank {} root system, {} positive roots",
            self.rank(),
            self.positive_roots.len()
        )
    }
}

/// An element of the Weyl group: a word in the simple reflections and the
/// integer matrix by which it acts on fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    word: Vec<usize>,
    matrix: Vec<Vec<i64>>,
}

impl WeylElement {
    /// The word; the product is `s_{w[0]} s_{w[1]} ⋯`, so the last letter acts first.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn word_length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == identity(self.matrix.len())
    }

    pub fn apply<T>(&self, x: &[T]) -> Vec<T>
    where
        T: Clone + Zero + std::ops::Mul<Output = T> + FromPrimitive,
    {
        self.matrix
            .iter()
            .map(|row| {
                row.iter().zip(x).fold(T::zero(), |acc, (&a, v)| {
                    if a == 0 {
                        acc
                    } else {
                        acc + v.clone() * T::from_i64(a).unwrap()
                    }
                })
            })
            .collect()
    }

    /// Action on a root in simple-root coordinates.
    pub fn apply_to_root(&self, sys: &RootSystem, beta: &[i64]) -> Vec<i64> {
        self.word
            .iter()
            .rev()
            .fold(beta.to_vec(), |b, &i| sys.reflect_root(i, &b))
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement {
            word: self.word.iter().rev().copied().collect(),
            matrix: invert_unimodular(&self.matrix),
        }
    }

    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement {
            word,
            matrix: matmul(&self.matrix, &other.matrix),
        }
    }

    /// Multiplicative order, by matrix powering.
    pub fn order(&self) -> usize {
        let n = self.matrix.len();
        let id = identity(n);
        let mut m = self.matrix.clone();
        let mut k = 1;
        while m != id {
            m = matmul(&m, &self.matrix);
            k += 1;
            assert!(k <= 10_000, "Weyl element of unbounded order");
        }
        k
    }

    /// Indices of the simple reflections occurring in the word.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.word.clone();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            return "e".into();
        }
        self.word
            .iter()
            .map(|i| format!("s{}", i + 1))
            .collect::<Vec<_>>()
            .join("")
    }
}

pub(crate) fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub(crate) fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn invert_unimodular(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let qm = crate::rational::to_qmatrix(m);
    let inv = crate::rational::inverse(&qm).expect("Weyl matrices are invertible");
    inv.iter()
        .map(|row| {
            row.iter()
                .map(|x| crate::rational::to_i64(x).expect("Weyl matrices are unimodular"))
                .collect()
        })
        .collect()
}

fn connected_components(cartan: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let r = cartan.len();
    let mut comp = vec![usize::MAX; r];
    let mut out = Vec::new();
    for start in 0..r {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut k = 0;
        while k < members.len() {
            let i = members[k];
            for j in 0..r {
                if j != i && cartan[i][j] != 0 && comp[j] == usize::MAX {
                    comp[j] = id;
                    members.push(j);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

fn symmetrizer(cartan: &[Vec<i64>], components: &[Vec<usize>]) -> Result<Vec<i64>> {
    let r = cartan.len();
    // d_i as rationals num/den, propagated along edges: d_j = d_i a_ij / a_ji.
    let mut d: Vec<Option<Q>> = vec![None; r];
    for comp in components {
        d[comp[0]] = Some(Q::from_i64(1).unwrap());
        let mut stack = vec![comp[0]];
        while let Some(i) = stack.pop() {
            for &j in comp {
                if j == i || cartan[i][j] == 0 {
                    continue;
                }
                let dj = d[i].clone().unwrap() * Q::from_i64(cartan[i][j]).unwrap()
                    / Q::from_i64(cartan[j][i]).unwrap();
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(existing) if *existing != dj => {
                        return Err(Error::NonCartan("matrix is not symmetrizable".into()))
                    }
                    _ => {}
                }
            }
        }
    }
    let mut out = vec![0i64; r];
    for comp in components {
        let vals: Vec<Q> = comp.iter().map(|&i| d[i].clone().unwrap()).collect();
        let min = vals.iter().min().unwrap().clone();
        for (&i, v) in comp.iter().zip(&vals) {
            let scaled = v / &min;
            out[i] = crate::rational::to_i64(&scaled)
                .ok_or_else(|| Error::NonCartan("root length ratios are not integral".into()))?;
        }
    }
    Ok(out)
}

fn half_norm(cartan: &[Vec<i64>], sym: &[i64], beta: &[i64]) -> i64 {
    let r = cartan.len();
    let mut total = 0;
    for j in 0..r {
        for k in 0..r {
            total += beta[j] * beta[k] * sym[j] * cartan[j][k];
        }
    }
    total / 2
}

fn positive_root_closure(cartan: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let r = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut index: HashMap<Vec<i64>, ()> = roots.iter().map(|b| (b.clone(), ())).collect();
    let mut k = 0;
    while k < roots.len() {
        let beta = roots[k].clone();
        for i in 0..r {
            let p: i64 = beta.iter().zip(&cartan[i]).map(|(b, c)| b * c).sum();
            let mut image = beta.clone();
            image[i] -= p;
            if image.iter().all(|&c| c >= 0) && !index.contains_key(&image) {
                index.insert(image.clone(), ());
                roots.push(image);
                if roots.len() > 1000 {
                    return Err(Error::NonCartan("root closure does not terminate".into()));
                }
            }
        }
        k += 1;
    }
    roots.sort_by_key(|b| (b.iter().sum::<i64>(), std::cmp::Reverse(b.clone())));
    Ok(roots)
}

/// |W| of a connected finite type, identified by rank and number of roots.
fn simple_weyl_order(cartan: &[Vec<i64>]) -> u128 {
    let r = cartan.len() as u128;
    let n_roots = positive_root_closure(cartan).map(|v| v.len()).unwrap_or(0) as u128;
    let fact = |n: u128| (1..=n).product::<u128>();
    let laced = cartan
        .iter()
        .flatten()
        .all(|&a| a == 2 || a == 0 || a == -1);
    match (r, n_roots) {
        (_, n) if laced && n == r * (r + 1) / 2 => fact(r + 1),
        (2, 6) => 12,
        (4, 24) => 1152,
        (_, n) if !laced && n == r * r => (1u128 << r) * fact(r),
        (_, n) if laced && n == r * (r - 1) => (1u128 << (r - 1)) * fact(r),
        (6, 36) => 51840,
        (7, 63) => 2903040,
        (8, 120) => 696729600,
        _ => 0,
    }
}
