//! Split root data: a finite root system plus a coweight lattice `Λ` whose
//! derived part is the coroot lattice, plus `central_rank` central directions.
//!
//! Coweights are stored in internal coordinates: the pairings `<α_i, x>`
//! with the simple roots followed by the abelianization coordinates
//! `det(x) ∈ Λ/Λ₀ ⊗ ℚ`. Users may address coweights in a different basis
//! (the standard `ℤⁿ` basis for `GL_n`); conversion goes through
//! [`RootDatum::coweight_from_user`].

use std::fmt;
use std::path::Path;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{
    determinant, fmt_qlist, inverse, is_integral, parse_qlist, q, q_frac, row_times, to_qmatrix,
    transpose, QMatrix, Q,
};
use crate::root_system::{RootSystem, WeylElement, MAX_WEYL_ORDER};

/// A rational coweight: semisimple coordinates `<α_i, x>` and central
/// coordinates `det(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoweightQ {
    pub ss: Vec<Q>,
    pub central: Vec<Q>,
}

impl CoweightQ {
    pub fn new(ss: Vec<Q>, central: Vec<Q>) -> Self {
        CoweightQ { ss, central }
    }

    pub fn from_ints(ss: &[i64], central: &[i64]) -> Self {
        CoweightQ {
            ss: ss.iter().map(|&x| q(x)).collect(),
            central: central.iter().map(|&x| q(x)).collect(),
        }
    }

    pub fn zero(rank: usize, central_rank: usize) -> Self {
        CoweightQ {
            ss: vec![Q::zero(); rank],
            central: vec![Q::zero(); central_rank],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.ss.iter().chain(&self.central).all(Zero::is_zero)
    }

    pub fn internal(&self) -> Vec<Q> {
        self.ss.iter().chain(&self.central).cloned().collect()
    }

    pub fn add(&self, other: &CoweightQ) -> CoweightQ {
        CoweightQ {
            ss: self.ss.iter().zip(&other.ss).map(|(a, b)| a + b).collect(),
            central: self
                .central
                .iter()
                .zip(&other.central)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &CoweightQ) -> CoweightQ {
        CoweightQ {
            ss: self.ss.iter().zip(&other.ss).map(|(a, b)| a - b).collect(),
            central: self
                .central
                .iter()
                .zip(&other.central)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, k: &Q) -> CoweightQ {
        CoweightQ {
            ss: self.ss.iter().map(|a| a * k).collect(),
            central: self.central.iter().map(|a| a * k).collect(),
        }
    }

    pub fn neg(&self) -> CoweightQ {
        self.scale(&q(-1))
    }

    /// Semisimple coordinates as integers, if they are integral.
    pub fn ss_i64(&self) -> Option<Vec<i64>> {
        self.ss.iter().map(crate::rational::to_i64).collect()
    }
}

impl fmt::Display for CoweightQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.central.is_empty() {
            write!(f, "({})", fmt_qlist(&self.ss))
        } else {
            write!(f, "({}; {})", fmt_qlist(&self.ss), fmt_qlist(&self.central))
        }
    }
}

/// A rational weight: fundamental-weight coordinates `<φ, α_i^∨>` and
/// coordinates against the central coweight directions. Fundamental weights
/// are taken to vanish on the central directions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightQ {
    pub ss: Vec<Q>,
    pub central: Vec<Q>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DatumKind {
    /// Simply connected semisimple type times a split central torus.
    Named,
    /// `GL_n` with coweights in the standard basis of `ℤⁿ`.
    GeneralLinear(usize),
    /// Explicit Cartan matrix and lattice.
    Explicit,
}

/// Explicit record form of a datum specification.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExplicitDatum {
    pub cartan: Vec<Vec<i64>>,
    #[serde(default)]
    pub central_rank: usize,
    /// Rows: an integral basis of `Λ` in internal coordinates. Defaults to
    /// simple coroots plus the unit central vectors.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<Vec<Vec<serde_json::Value>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Debug, Clone)]
pub struct RootDatum {
    name: String,
    kind: DatumKind,
    sys: RootSystem,
    dual: RootSystem,
    central_rank: usize,
    lattice_basis: QMatrix,
    lattice_inverse: QMatrix,
    user_basis: QMatrix,
    user_inverse: QMatrix,
    /// `C^{-T}`: maps semisimple coordinates to simple-coroot coefficients.
    coroot_coeffs: QMatrix,
    two_rho: Vec<i64>,
    w0: WeylElement,
}

impl RootDatum {
    /// Builds a datum from a specification string: a named type (`"A2"`,
    /// `"B3"`, `"A1*A1"`, `"A2*T1"`), `"GL3"`, an inline JSON record, or a
    /// path to a JSON file holding such a record.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.starts_with('{') {
            let rec: ExplicitDatum = serde_json::from_str(spec)
                .map_err(|e| Error::MalformedSpec(format!("datum JSON: {e}")))?;
            return Self::from_explicit(&rec);
        }
        if spec.ends_with(".json") || Path::new(spec).is_file() {
            let text = std::fs::read_to_string(spec)
                .map_err(|e| Error::MalformedSpec(format!("cannot read {spec}: {e}")))?;
            let rec: ExplicitDatum = serde_json::from_str(&text)
                .map_err(|e| Error::MalformedSpec(format!("datum JSON in {spec}: {e}")))?;
            return Self::from_explicit(&rec);
        }
        let compact: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
        let upper = compact.to_ascii_uppercase();
        if let Some(rest) = upper.strip_prefix("GL") {
            let n = parse_rank(rest).ok_or_else(|| Error::MalformedSpec(spec.into()))?;
            return Self::general_linear(n);
        }
        let mut blocks = Vec::new();
        let mut central = 0;
        for factor in upper.split('*') {
            let (letter, rest) = factor.split_at(factor.chars().next().map_or(0, |c| c.len_utf8()));
            let n = parse_rank(rest).ok_or_else(|| Error::MalformedSpec(spec.into()))?;
            if letter == "T" {
                central += n;
                continue;
            }
            blocks.push(named_cartan(letter, n).ok_or_else(|| {
                Error::MalformedSpec(format!("unknown type {letter}{n} in {spec:?}"))
            })?);
        }
        let cartan = block_diagonal(&blocks);
        let r = cartan.len();
        let lattice = default_lattice(&cartan, central);
        let user = identity_q(r + central);
        Self::assemble(compact, DatumKind::Named, cartan, central, lattice, user)
    }

    pub fn general_linear(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::MalformedSpec("GL0".into()));
        }
        let r = n - 1;
        let cartan = named_cartan("A", r).unwrap_or_default();
        // e_m ↦ (<α_i, e_m>)_i = δ_{i,m} - δ_{i+1,m}, det(e_m) = 1.
        let user: QMatrix = (0..n)
            .map(|m| {
                let mut row: Vec<Q> = (0..r)
                    .map(|i| q(i64::from(i == m) - i64::from(i + 1 == m)))
                    .collect();
                row.push(q(1));
                row
            })
            .collect();
        Self::assemble(
            format!("GL{n}"),
            DatumKind::GeneralLinear(n),
            cartan,
            1,
            user.clone(),
            user,
        )
    }

    /// A datum with the given simply connected derived group and a single
    /// central direction whose coweight lattice projects onto the whole
    /// adjoint coweight lattice. Requires `P^∨/Q^∨` cyclic (every simple
    /// type except `D_{2n}`).
    pub fn with_cyclic_center(spec: &str) -> Result<Self> {
        let base = Self::parse(spec)?;
        if base.central_rank != 0 {
            return Err(Error::MalformedSpec(format!(
                "{spec} already has central directions"
            )));
        }
        let r = base.rank();
        let order = |j: usize| {
            crate::rational::lcm_of_denominators(
                &base
                    .coroot_coeffs
                    .iter()
                    .map(|row| row[j].clone())
                    .collect::<Vec<_>>(),
            )
        };
        let index = determinant(&to_qmatrix(base.cartan())).to_integer();
        let generator = (0..r)
            .max_by_key(|&j| order(j))
            .filter(|&j| order(j) == index);
        let mut lattice = default_lattice(base.cartan(), 1);
        if let Some(j) = generator {
            lattice[r] = (0..=r).map(|i| q(i64::from(i == j || i == r))).collect();
        } else if index != BigInt::one() {
            return Err(Error::MalformedSpec(format!(
                "the center of {spec} is not cyclic"
            )));
        }
        Self::assemble(
            format!("{spec}+Z"),
            DatumKind::Explicit,
            base.cartan().to_vec(),
            1,
            lattice,
            identity_q(r + 1),
        )
    }

    pub fn from_explicit(rec: &ExplicitDatum) -> Result<Self> {
        let r = rec.cartan.len();
        let k = rec.central_rank;
        let lattice = match &rec.lattice {
            None => default_lattice(&rec.cartan, k),
            Some(rows) => {
                if rows.len() != r + k {
                    return Err(Error::MalformedSpec(format!(
                        "lattice needs {} basis rows, got {}",
                        r + k,
                        rows.len()
                    )));
                }
                rows.iter()
                    .map(|row| {
                        if row.len() != r + k {
                            return Err(Error::MalformedSpec(
                                "lattice row has wrong length".into(),
                            ));
                        }
                        row.iter()
                            .map(|v| {
                                crate::rational::serde_q::value_to_q(v)
                                    .map_err(Error::MalformedSpec)
                            })
                            .collect()
                    })
                    .collect::<Result<QMatrix>>()?
            }
        };
        let name = rec.name.clone().unwrap_or_else(|| "explicit".into());
        Self::assemble(
            name,
            DatumKind::Explicit,
            rec.cartan.clone(),
            k,
            lattice,
            identity_q(r + k),
        )
    }

    fn assemble(
        name: String,
        kind: DatumKind,
        cartan: Vec<Vec<i64>>,
        central_rank: usize,
        lattice_basis: QMatrix,
        user_basis: QMatrix,
    ) -> Result<Self> {
        let sys = RootSystem::new(cartan.clone())?;
        let dual = sys.dual();
        let r = sys.rank();
        let n = r + central_rank;
        let lattice_inverse = inverse(&lattice_basis)
            .ok_or_else(|| Error::MalformedSpec("lattice basis is singular".into()))?;
        let user_inverse = inverse(&user_basis)
            .ok_or_else(|| Error::MalformedSpec("user basis is singular".into()))?;
        // Roots must be integral on Λ.
        for row in &lattice_basis {
            if row[..r].iter().any(|x| !is_integral(x)) {
                return Err(Error::MalformedSpec(
                    "simple roots are not integral on the given lattice".into(),
                ));
            }
        }
        // Λ₀ ⊂ Λ and Λ/Λ₀ torsion free.
        let coroot_rows: QMatrix = (0..r)
            .map(|i| {
                let mut row: Vec<Q> = cartan[i].iter().map(|&c| q(c)).collect();
                row.extend(std::iter::repeat_n(Q::zero(), central_rank));
                row
            })
            .collect();
        let in_basis: QMatrix = coroot_rows
            .iter()
            .map(|row| row_times(row, &lattice_inverse))
            .collect();
        if in_basis.iter().flatten().any(|x| !is_integral(x)) {
            return Err(Error::NotSimplyConnected(
                "a simple coroot is not in the coweight lattice".into(),
            ));
        }
        if r > 0 {
            let mut g = BigInt::zero();
            for cols in (0..n).combinations(r) {
                let minor: QMatrix = in_basis
                    .iter()
                    .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
                    .collect();
                g = g.gcd(determinant(&minor).numer());
            }
            if !g.is_one() {
                return Err(Error::NotSimplyConnected(format!(
                    "Λ/Λ₀ has torsion of order dividing {g}"
                )));
            }
        }
        let coroot_coeffs = {
            let c = to_qmatrix(&cartan);
            if r == 0 {
                Vec::new()
            } else {
                transpose(&inverse(&c).expect("Cartan matrices are invertible"))
            }
        };
        let two_rho = (0..r)
            .map(|j| sys.positive_roots().iter().map(|b| b[j]).sum())
            .collect();
        let w0 = if sys.weyl_order() as usize <= MAX_WEYL_ORDER && sys.weyl_order() > 0 {
            dual.longest_element()?
        } else {
            // -ρ^∨ sorted into the dominant chamber; w(-ρ) = ρ forces w = w0.
            let minus_rho: Vec<i64> = vec![-1; r];
            let (_, word) = dual.dominant_with_word(&minus_rho);
            dual.element(&word)
        };
        Ok(RootDatum {
            name,
            kind,
            sys,
            dual,
            central_rank,
            lattice_basis,
            lattice_inverse,
            user_basis,
            user_inverse,
            coroot_coeffs,
            two_rho,
            w0,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &DatumKind {
        &self.kind
    }

    /// Semisimple rank `r`.
    pub fn rank(&self) -> usize {
        self.sys.rank()
    }

    pub fn central_rank(&self) -> usize {
        self.central_rank
    }

    pub fn total_rank(&self) -> usize {
        self.rank() + self.central_rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        self.sys.cartan()
    }

    /// The root system of `G`.
    pub fn root_system(&self) -> &RootSystem {
        &self.sys
    }

    /// The root system of the dual group; its weights are the coweights of `G`.
    pub fn dual_system(&self) -> &RootSystem {
        &self.dual
    }

    /// Positive roots of `G` in simple-root coordinates.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        self.sys.positive_roots()
    }

    pub fn num_positive_roots(&self) -> usize {
        self.sys.positive_roots().len()
    }

    pub fn weyl_order(&self) -> u128 {
        self.sys.weyl_order()
    }

    pub fn lattice_basis(&self) -> &QMatrix {
        &self.lattice_basis
    }

    /// Simple coroots as coweights.
    pub fn simple_coroots(&self) -> Vec<CoweightQ> {
        (0..self.rank())
            .map(|i| CoweightQ::from_ints(&self.sys.cartan()[i], &vec![0; self.central_rank]))
            .collect()
    }

    pub fn fundamental_coweights(&self) -> Vec<CoweightQ> {
        (0..self.rank())
            .map(|i| {
                let ss = (0..self.rank()).map(|j| q(i64::from(i == j))).collect();
                CoweightQ::new(ss, vec![Q::zero(); self.central_rank])
            })
            .collect()
    }

    pub fn simple_roots(&self) -> Vec<WeightQ> {
        (0..self.rank())
            .map(|i| {
                let mut e = vec![0; self.rank()];
                e[i] = 1;
                self.root_weight(&e)
            })
            .collect()
    }

    pub fn fundamental_weights(&self) -> Vec<WeightQ> {
        (0..self.rank())
            .map(|i| WeightQ {
                ss: (0..self.rank()).map(|j| q(i64::from(i == j))).collect(),
                central: vec![Q::zero(); self.central_rank],
            })
            .collect()
    }

    pub fn rho(&self) -> WeightQ {
        WeightQ {
            ss: vec![q(1); self.rank()],
            central: vec![Q::zero(); self.central_rank],
        }
    }

    /// A root given in simple-root coordinates, as a weight.
    pub fn root_weight(&self, beta: &[i64]) -> WeightQ {
        WeightQ {
            ss: self.sys.root_as_weight(beta).into_iter().map(q).collect(),
            central: vec![Q::zero(); self.central_rank],
        }
    }

    pub fn positive_root_weights(&self) -> Vec<WeightQ> {
        self.positive_roots()
            .iter()
            .map(|b| self.root_weight(b))
            .collect()
    }

    /// Coroots of the positive roots (same order) as coweights.
    pub fn positive_coroot_coweights(&self) -> Vec<CoweightQ> {
        let r = self.rank();
        self.sys
            .positive_coroots()
            .iter()
            .map(|c| {
                let ss = (0..r)
                    .map(|j| q((0..r).map(|i| c[i] * self.sys.cartan()[i][j]).sum()))
                    .collect();
                CoweightQ::new(ss, vec![Q::zero(); self.central_rank])
            })
            .collect()
    }

    fn check_dims(&self, c: &CoweightQ) -> Result<()> {
        if c.ss.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: c.ss.len(),
            });
        }
        if c.central.len() != self.central_rank {
            return Err(Error::DimensionMismatch {
                expected: self.central_rank,
                got: c.central.len(),
            });
        }
        Ok(())
    }

    /// The bilinear pairing `<φ, c>`.
    pub fn pair(&self, phi: &WeightQ, c: &CoweightQ) -> Result<Q> {
        self.check_dims(c)?;
        if phi.ss.len() != self.rank() || phi.central.len() != self.central_rank {
            return Err(Error::DimensionMismatch {
                expected: self.total_rank(),
                got: phi.ss.len() + phi.central.len(),
            });
        }
        let n = self.coroot_coefficients(c);
        Ok(crate::rational::dot(&phi.ss, &n) + crate::rational::dot(&phi.central, &c.central))
    }

    /// `<α, c>` for a root in simple-root coordinates.
    pub fn pair_root(&self, beta: &[i64], c: &CoweightQ) -> Q {
        crate::rational::dot_i(beta, &c.ss)
    }

    /// `<ρ, c>`.
    pub fn rho_pair(&self, c: &CoweightQ) -> Q {
        crate::rational::dot_i(&self.two_rho, &c.ss) / BigInt::from(2)
    }

    /// `<2ρ, c>`.
    pub fn two_rho_pair(&self, c: &CoweightQ) -> Q {
        crate::rational::dot_i(&self.two_rho, &c.ss)
    }

    /// `2ρ` in simple-root coordinates.
    pub fn two_rho(&self) -> &[i64] {
        &self.two_rho
    }

    /// Coefficients of the semisimple part in the simple coroots; entry `i`
    /// equals `<ω_i, c>`.
    pub fn coroot_coefficients(&self, c: &CoweightQ) -> Vec<Q> {
        crate::rational::times_col(&self.coroot_coeffs, &c.ss)
    }

    pub fn omega_pair(&self, i: usize, c: &CoweightQ) -> Q {
        crate::rational::dot(&self.coroot_coeffs[i], &c.ss)
    }

    /// The coweight `Σ n_i α_i^∨`.
    pub fn from_coroot_coefficients(&self, n: &[Q]) -> CoweightQ {
        let r = self.rank();
        let ss = (0..r)
            .map(|j| {
                (0..r).fold(Q::zero(), |acc, i| {
                    acc + &n[i] * BigInt::from(self.sys.cartan()[i][j])
                })
            })
            .collect();
        CoweightQ::new(ss, vec![Q::zero(); self.central_rank])
    }

    /// Coordinates of `c` in the integral basis of `Λ`.
    pub fn lattice_coordinates(&self, c: &CoweightQ) -> Vec<Q> {
        row_times(&c.internal(), &self.lattice_inverse)
    }

    pub fn from_lattice_coordinates(&self, n: &[Q]) -> CoweightQ {
        self.from_internal(&row_times(n, &self.lattice_basis))
    }

    pub fn is_integral(&self, c: &CoweightQ) -> bool {
        self.lattice_coordinates(c).iter().all(is_integral)
    }

    pub fn is_dominant(&self, c: &CoweightQ) -> bool {
        c.ss.iter().all(|x| !x.is_negative())
    }

    /// Whether `c` lies in `Λ₀ ⊗ ℚ`... and is integral there: `c ∈ Λ₀`.
    pub fn in_coroot_lattice(&self, c: &CoweightQ) -> bool {
        c.central.iter().all(Zero::is_zero) && self.coroot_coefficients(c).iter().all(is_integral)
    }

    /// Integral coweights share a class in `Λ/Λ₀` iff their central parts agree.
    pub fn same_det_class(&self, a: &CoweightQ, b: &CoweightQ) -> bool {
        a.central == b.central
    }

    pub fn from_internal(&self, v: &[Q]) -> CoweightQ {
        let r = self.rank();
        CoweightQ::new(v[..r].to_vec(), v[r..].to_vec())
    }

    /// Converts user coordinates (standard basis for `GL_n`, internal
    /// coordinates otherwise) into a coweight.
    pub fn coweight_from_user(&self, user: &[Q]) -> Result<CoweightQ> {
        if user.len() != self.user_basis.len() {
            return Err(Error::DimensionMismatch {
                expected: self.user_basis.len(),
                got: user.len(),
            });
        }
        Ok(self.from_internal(&row_times(user, &self.user_basis)))
    }

    pub fn coweight_to_user(&self, c: &CoweightQ) -> Vec<Q> {
        row_times(&c.internal(), &self.user_inverse)
    }

    pub fn parse_coweight(&self, s: &str) -> Result<CoweightQ> {
        self.coweight_from_user(&parse_qlist(s)?)
    }

    pub fn format_coweight(&self, c: &CoweightQ) -> String {
        fmt_qlist(&self.coweight_to_user(c))
    }

    pub fn user_dimension(&self) -> usize {
        self.user_basis.len()
    }

    pub fn apply_weyl(&self, w: &WeylElement, c: &CoweightQ) -> CoweightQ {
        CoweightQ::new(w.apply(&c.ss), c.central.clone())
    }

    pub fn weyl_element(&self, word: &[usize]) -> Result<WeylElement> {
        if let Some(&i) = word.iter().find(|&&i| i >= self.rank()) {
            return Err(Error::MalformedSpec(format!(
                "no simple reflection s{}",
                i + 1
            )));
        }
        Ok(self.dual.element(word))
    }

    /// Parses words like `"s1s2"`, `"s1 s2"`, `"1,2"` or `"e"` (1-based indices).
    pub fn parse_weyl_word(&self, s: &str) -> Result<WeylElement> {
        let t = s.trim();
        if t.is_empty() || t == "e" || t == "1" && self.rank() == 0 {
            return Ok(self.dual.identity_element());
        }
        let word = t
            .split(|c: char| c == 's' || c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.parse::<usize>()
                    .ok()
                    .filter(|&i| i >= 1)
                    .map(|i| i - 1)
                    .ok_or_else(|| Error::MalformedSpec(format!("bad Weyl word {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.weyl_element(&word)
    }

    /// The unique dominant element of the orbit `W·c` and a `w` taking `c` there.
    pub fn dominant_representative(&self, c: &CoweightQ) -> (CoweightQ, WeylElement) {
        let (ss, word) = self.dual.dominant_with_word(&c.ss);
        (
            CoweightQ::new(ss, c.central.clone()),
            self.dual.element(&word),
        )
    }

    pub fn w0(&self) -> &WeylElement {
        &self.w0
    }

    /// `-w₀(c)`.
    pub fn apply_minus_w0(&self, c: &CoweightQ) -> CoweightQ {
        let ss = self.w0.apply(&c.ss).into_iter().map(|x| -x).collect();
        CoweightQ::new(ss, c.central.iter().map(|x| -x).collect())
    }

    pub fn weyl_group(&self) -> Result<Vec<WeylElement>> {
        self.dual.weyl_group(MAX_WEYL_ORDER)
    }

    pub fn components(&self) -> &[Vec<usize>] {
        self.sys.components()
    }

    /// Smallest positive integer `e` with `e·c` integral.
    pub fn denominator(&self, c: &CoweightQ) -> BigInt {
        crate::rational::lcm_of_denominators(&self.lattice_coordinates(c))
    }

    pub fn half(&self) -> Q {
        q_frac(1, 2)
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

fn parse_rank(s: &str) -> Option<usize> {
    let s = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(s);
    s.parse().ok()
}

fn identity_q(n: usize) -> QMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| q(i64::from(i == j))).collect())
        .collect()
}

/// Simple coroots followed by unit central vectors.
fn default_lattice(cartan: &[Vec<i64>], central: usize) -> QMatrix {
    let r = cartan.len();
    let mut rows: QMatrix = (0..r)
        .map(|i| {
            let mut row: Vec<Q> = cartan[i].iter().map(|&c| q(c)).collect();
            row.extend(std::iter::repeat_n(Q::zero(), central));
            row
        })
        .collect();
    for l in 0..central {
        let mut row = vec![Q::zero(); r + central];
        row[r + l] = q(1);
        rows.push(row);
    }
    rows
}

fn block_diagonal(blocks: &[Vec<Vec<i64>>]) -> Vec<Vec<i64>> {
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut m = vec![vec![0; n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m[off + i][off + j] = x;
            }
        }
        off += b.len();
    }
    m
}

/// Cartan matrices in Bourbaki numbering, `m[i][j] = <α_i^∨, α_j>`.
pub fn named_cartan(letter: &str, n: usize) -> Option<Vec<Vec<i64>>> {
    let chain = |n: usize| {
        let mut m = vec![vec![0i64; n]; n];
        for i in 0..n {
            m[i][i] = 2;
            if i + 1 < n {
                m[i][i + 1] = -1;
                m[i + 1][i] = -1;
            }
        }
        m
    };
    let link = |m: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        m[i][j] = -1;
        m[j][i] = -1;
    };
    match (letter, n) {
        ("A", n) => Some(chain(n)),
        ("B", n) if n >= 2 => {
            let mut m = chain(n);
            m[n - 1][n - 2] = -2;
            Some(m)
        }
        ("C", n) if n >= 2 => {
            let mut m = chain(n);
            m[n - 2][n - 1] = -2;
            Some(m)
        }
        ("D", n) if n >= 3 => {
            let mut m = chain(n - 1);
            m.iter_mut().for_each(|row| row.push(0));
            m.push(vec![0; n]);
            m[n - 1][n - 1] = 2;
            link(&mut m, n - 3, n - 1);
            Some(m)
        }
        ("E", n @ 6..=8) => {
            let mut m = vec![vec![0i64; n]; n];
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = 2;
            }
            link(&mut m, 0, 2);
            link(&mut m, 1, 3);
            for i in 2..n - 1 {
                link(&mut m, i, i + 1);
            }
            Some(m)
        }
        ("F", 4) => {
            let mut m = chain(4);
            m[2][1] = -2;
            Some(m)
        }
        ("G", 2) => Some(vec![vec![2, -3], vec![-1, 2]]),
        _ => None,
    }
}
