//! Weight multiplicities of irreducible representations.
//!
//! The primitives work on any [`RootSystem`] with weights in fundamental
//! coordinates. The coweight wrappers read coweights of `G` as weights of the
//! dual group and therefore run on [`RootDatum::dual_system`].

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{inverse, to_i64, to_qmatrix, QMatrix, Q};
use crate::root_datum::{CoweightQ, RootDatum};
use crate::root_system::{RootSystem, WeylElement};

/// Simple-root coordinates of a weight, when it lies in the root lattice.
pub fn root_coordinates(cartan_inverse: &QMatrix, x: &[i64]) -> Option<Vec<i64>> {
    cartan_inverse
        .iter()
        .map(|row| {
            let v = row
                .iter()
                .zip(x)
                .fold(Q::zero(), |acc, (a, &b)| acc + a * BigInt::from(b));
            to_i64(&v)
        })
        .collect()
}

fn cartan_inverse(sys: &RootSystem) -> QMatrix {
    if sys.rank() == 0 {
        return Vec::new();
    }
    inverse(&to_qmatrix(sys.cartan())).expect("Cartan matrices are invertible")
}

/// `μ ≤ λ`: `λ − μ` is a nonnegative integral combination of simple roots.
pub fn weight_leq(sys: &RootSystem, mu: &[i64], lambda: &[i64]) -> bool {
    let diff: Vec<i64> = lambda.iter().zip(mu).map(|(a, b)| a - b).collect();
    root_coordinates(&cartan_inverse(sys), &diff).is_some_and(|n| n.iter().all(|&c| c >= 0))
}

/// Freudenthal recursion for a fixed highest weight, memoized on dominant weights.
#[derive(Debug, Clone)]
pub struct Freudenthal<'a> {
    sys: &'a RootSystem,
    lambda: Vec<i64>,
    cinv: QMatrix,
    memo: HashMap<Vec<i64>, u64>,
}

impl<'a> Freudenthal<'a> {
    pub fn new(sys: &'a RootSystem, lambda: &[i64]) -> Result<Self> {
        if lambda.len() != sys.rank() {
            return Err(Error::DimensionMismatch {
                expected: sys.rank(),
                got: lambda.len(),
            });
        }
        if lambda.iter().any(|&c| c < 0) {
            return Err(Error::NotDominant(format!("{lambda:?}")));
        }
        let mut memo = HashMap::new();
        memo.insert(lambda.to_vec(), 1);
        Ok(Freudenthal {
            sys,
            lambda: lambda.to_vec(),
            cinv: cartan_inverse(sys),
            memo,
        })
    }

    pub fn highest_weight(&self) -> &[i64] {
        &self.lambda
    }

    /// Simple-root coordinates of `λ − μ` if `μ ≤ λ`.
    fn depth(&self, mu: &[i64]) -> Option<Vec<i64>> {
        let diff: Vec<i64> = self.lambda.iter().zip(mu).map(|(a, b)| a - b).collect();
        root_coordinates(&self.cinv, &diff).filter(|n| n.iter().all(|&c| c >= 0))
    }

    /// `(β, x)` for a root `β` in root coordinates and a weight `x`, with
    /// short roots of squared length 2.
    fn form_root(&self, beta: &[i64], x: &[i64]) -> i128 {
        let d = self.sys.symmetrizer();
        (0..beta.len())
            .map(|j| i128::from(beta[j] * d[j]) * i128::from(x[j]))
            .sum()
    }

    /// Multiplicity of the weight `μ` in `V(λ)`.
    pub fn multiplicity(&mut self, mu: &[i64]) -> u64 {
        let (dom, _) = self.sys.dominant_with_word(mu);
        self.dominant_multiplicity(&dom)
    }

    fn dominant_multiplicity(&mut self, mu: &[i64]) -> u64 {
        if let Some(&m) = self.memo.get(mu) {
            return m;
        }
        let Some(n) = self.depth(mu) else {
            return 0;
        };
        // |λ+ρ|² − |μ+ρ|² = (λ − μ, λ + μ + 2ρ).
        let s: Vec<i64> = (0..mu.len()).map(|j| self.lambda[j] + mu[j] + 2).collect();
        let denom = self.form_root(&n, &s);
        let mut numer: i128 = 0;
        let roots: Vec<Vec<i64>> = self.sys.positive_roots().to_vec();
        for alpha in &roots {
            let aw = self.sys.root_as_weight(alpha);
            let mut k = 1;
            loop {
                let shifted: Vec<i64> = mu.iter().zip(&aw).map(|(m, a)| m + k * a).collect();
                let (dom, _) = self.sys.dominant_with_word(&shifted);
                if self.depth(&dom).is_none() {
                    break;
                }
                let m = self.dominant_multiplicity(&dom);
                numer += self.form_root(alpha, &shifted) * i128::from(m);
                k += 1;
            }
        }
        let m = u64::try_from(2 * numer / denom).expect("multiplicities are nonnegative");
        debug_assert_eq!((2 * numer) % denom, 0);
        self.memo.insert(mu.to_vec(), m);
        m
    }

    /// Dominant weights `μ ≤ λ`, sorted.
    pub fn dominant_weights(&self) -> Vec<Vec<i64>> {
        let bound: Vec<i64> = self
            .cinv
            .iter()
            .map(|row| {
                let v = row
                    .iter()
                    .zip(&self.lambda)
                    .fold(Q::zero(), |acc, (a, &b)| acc + a * BigInt::from(b));
                v.floor().to_integer().to_i64().unwrap_or(0)
            })
            .collect();
        let r = self.sys.rank();
        let mut out = Vec::new();
        let mut n = vec![0i64; r];
        loop {
            let mu: Vec<i64> = (0..r)
                .map(|j| {
                    self.lambda[j] - (0..r).map(|k| self.sys.cartan()[j][k] * n[k]).sum::<i64>()
                })
                .collect();
            if mu.iter().all(|&c| c >= 0) {
                out.push(mu);
            }
            let mut i = 0;
            while i < r {
                n[i] += 1;
                if n[i] <= bound[i] {
                    break;
                }
                n[i] = 0;
                i += 1;
            }
            if i == r {
                break;
            }
        }
        out.sort();
        out
    }

    /// Dominant weights with their multiplicities.
    pub fn dominant_character(&mut self) -> Vec<(Vec<i64>, u64)> {
        self.dominant_weights()
            .into_iter()
            .map(|mu| {
                let m = self.dominant_multiplicity(&mu);
                (mu, m)
            })
            .collect()
    }

    /// Every weight of `V(λ)` with its multiplicity, sorted.
    pub fn full_character(&mut self) -> Vec<(Vec<i64>, u64)> {
        let mut out = Vec::new();
        for (mu, m) in self.dominant_character() {
            for x in orbit(self.sys, &mu) {
                out.push((x, m));
            }
        }
        out.sort();
        out
    }
}

/// The Weyl orbit of an integral weight.
pub fn orbit(sys: &RootSystem, x: &[i64]) -> Vec<Vec<i64>> {
    let mut seen = HashSet::from([x.to_vec()]);
    let mut queue = VecDeque::from([x.to_vec()]);
    while let Some(v) = queue.pop_front() {
        for i in 0..sys.rank() {
            let mut y = v.clone();
            sys.reflect(i, &mut y);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let mut v: Vec<_> = seen.into_iter().collect();
    v.sort();
    v
}

/// Kostant's partition function on the root lattice of a system.
#[derive(Debug, Clone)]
pub struct PartitionFunction {
    roots: Vec<Vec<i64>>,
    memo: HashMap<(Vec<i64>, usize), u64>,
}

impl PartitionFunction {
    pub fn new(sys: &RootSystem) -> Self {
        let mut roots = sys.positive_roots().to_vec();
        // Tallest roots first keeps the recursion shallow.
        roots.reverse();
        PartitionFunction {
            roots,
            memo: HashMap::new(),
        }
    }

    /// Number of ways to write `beta` (simple-root coordinates) as a
    /// nonnegative integral combination of positive roots.
    pub fn count(&mut self, beta: &[i64]) -> u64 {
        self.count_from(beta.to_vec(), 0)
    }

    fn count_from(&mut self, beta: Vec<i64>, start: usize) -> u64 {
        if beta.iter().any(|&c| c < 0) {
            return 0;
        }
        if beta.iter().all(|&c| c == 0) {
            return 1;
        }
        if start == self.roots.len() {
            return 0;
        }
        let key = (beta, start);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let alpha = self.roots[start].clone();
        let mut total = 0;
        let mut rest = key.0.clone();
        loop {
            total += self.count_from(rest.clone(), start + 1);
            for (r, a) in rest.iter_mut().zip(&alpha) {
                *r -= a;
            }
            if rest.iter().any(|&c| c < 0) {
                break;
            }
        }
        self.memo.insert(key, total);
        total
    }
}

/// `Σ_w (−1)^{l(w)} P(w(λ+ρ) − (μ+ρ))` over an enumerated Weyl group.
pub fn kostant_multiplicity(
    sys: &RootSystem,
    weyl: &[WeylElement],
    pf: &mut PartitionFunction,
    lambda: &[i64],
    mu: &[i64],
) -> i64 {
    let cinv = cartan_inverse(sys);
    let lr: Vec<i64> = lambda.iter().map(|x| x + 1).collect();
    let mut total = 0i64;
    for w in weyl {
        let img = w.apply(&lr);
        let diff: Vec<i64> = img.iter().zip(mu).map(|(a, b)| a - b - 1).collect();
        let Some(n) = root_coordinates(&cinv, &diff) else {
            continue;
        };
        let p = pf.count(&n) as i64;
        if w.word_length() % 2 == 0 {
            total += p;
        } else {
            total -= p;
        }
    }
    total
}

/// Weyl dimension formula `Π_{α>0} <λ+ρ, α^∨> / <ρ, α^∨>`.
pub fn weyl_dimension(sys: &RootSystem, lambda: &[i64]) -> BigInt {
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for c in sys.positive_coroots() {
        num *= c.iter().zip(lambda).map(|(a, l)| a * (l + 1)).sum::<i64>();
        den *= c.iter().sum::<i64>();
    }
    num / den
}

fn integral_ss(datum: &RootDatum, c: &CoweightQ) -> Result<Vec<i64>> {
    if !datum.is_integral(c) {
        return Err(Error::NotIntegral(datum.format_coweight(c)));
    }
    c.ss_i64()
        .ok_or_else(|| Error::NotIntegral(datum.format_coweight(c)))
}

fn dominant_ss(datum: &RootDatum, lam: &CoweightQ) -> Result<Vec<i64>> {
    let l = integral_ss(datum, lam)?;
    if !datum.is_dominant(lam) {
        return Err(Error::NotDominant(datum.format_coweight(lam)));
    }
    Ok(l)
}

/// `m_{λμ}`: the dimension of the `μ`-weight space of the irreducible
/// representation of the dual group with highest weight `λ`.
pub fn freudenthal(datum: &RootDatum, lam: &CoweightQ, mu: &CoweightQ) -> Result<u64> {
    let l = dominant_ss(datum, lam)?;
    let m = integral_ss(datum, mu)?;
    if !datum.same_det_class(lam, mu) {
        return Ok(0);
    }
    Ok(Freudenthal::new(datum.dual_system(), &l)?.multiplicity(&m))
}

/// Kostant's alternating sum for the same multiplicity.
pub fn kostant_mult(datum: &RootDatum, lam: &CoweightQ, mu: &CoweightQ) -> Result<i64> {
    let l = dominant_ss(datum, lam)?;
    let m = integral_ss(datum, mu)?;
    if !datum.same_det_class(lam, mu) {
        return Ok(0);
    }
    let weyl = datum.weyl_group()?;
    let mut pf = PartitionFunction::new(datum.dual_system());
    Ok(kostant_multiplicity(
        datum.dual_system(),
        &weyl,
        &mut pf,
        &l,
        &m,
    ))
}

/// Number of ways to write `beta` as a nonnegative integral combination of
/// positive coroots.
pub fn kostant_partition(datum: &RootDatum, beta: &CoweightQ) -> Result<u64> {
    integral_ss(datum, beta)?;
    if beta.central.iter().any(|x| !x.is_zero()) {
        return Ok(0);
    }
    let n: Option<Vec<i64>> = datum.coroot_coefficients(beta).iter().map(to_i64).collect();
    let Some(n) = n else { return Ok(0) };
    Ok(PartitionFunction::new(datum.dual_system()).count(&n))
}

pub fn weyl_dimension_of(datum: &RootDatum, lam: &CoweightQ) -> Result<BigInt> {
    Ok(weyl_dimension(
        datum.dual_system(),
        &dominant_ss(datum, lam)?,
    ))
}

/// `Σ_{μ dominant} m_{λμ} |W·μ|`.
pub fn character_dimension(sys: &RootSystem, lambda: &[i64]) -> Result<BigInt> {
    let mut f = Freudenthal::new(sys, lambda)?;
    Ok(f.dominant_character()
        .into_iter()
        .map(|(mu, m)| BigInt::from(m) * BigInt::from(sys.orbit_size(&mu)))
        .sum())
}

/// One row of a multiplicity table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultRow {
    pub mu: Vec<i64>,
    pub freudenthal: u64,
    pub kostant: i64,
}

impl MultRow {
    pub fn agree(&self) -> bool {
        i64::try_from(self.freudenthal).is_ok_and(|f| f == self.kostant)
    }
}

/// Freudenthal and Kostant multiplicities for every dominant `μ ≤ λ`.
pub fn multiplicity_table(
    sys: &RootSystem,
    weyl: &[WeylElement],
    lambda: &[i64],
) -> Result<Vec<MultRow>> {
    let mut f = Freudenthal::new(sys, lambda)?;
    let mut pf = PartitionFunction::new(sys);
    Ok(f.dominant_character()
        .into_iter()
        .map(|(mu, m)| {
            let k = kostant_multiplicity(sys, weyl, &mut pf, lambda, &mu);
            MultRow {
                mu,
                freudenthal: m,
                kostant: k,
            }
        })
        .collect())
}
