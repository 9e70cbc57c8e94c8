//! Dominance orders, dominant weight polytopes and their strata, the meet of
//! dominant coweights, smallest integral approximations, Steinberg-stratum
//! membership and enhanced coweights.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::multiplicity::{root_coordinates, Freudenthal};
use crate::rational::{
    fmt_q, inverse, is_integral, q, solve_integral, to_i64, to_qmatrix, QMatrix, Q,
};
use crate::root_datum::{CoweightQ, RootDatum};
use crate::series::{LaurentSeries, Valuation};
use crate::torus::TorusElement;

/// Largest semisimple rank accepted by Steinberg membership.
pub const MAX_STEINBERG_RANK: usize = 3;

/// `ν ≤_ℚ λ`: `λ − ν` is a nonnegative rational combination of simple coroots.
pub fn leq_q(datum: &RootDatum, nu: &CoweightQ, lam: &CoweightQ) -> bool {
    let diff = lam.sub(nu);
    diff.central.iter().all(Zero::is_zero)
        && datum
            .coroot_coefficients(&diff)
            .iter()
            .all(|x| !x.is_negative())
}

/// `μ ≤ λ`: `λ − μ` is a nonnegative integral combination of simple coroots.
pub fn leq_int(datum: &RootDatum, mu: &CoweightQ, lam: &CoweightQ) -> Result<bool> {
    for c in [mu, lam] {
        if !datum.is_integral(c) {
            return Err(Error::NotIntegral(datum.format_coweight(c)));
        }
    }
    let diff = lam.sub(mu);
    Ok(diff.central.iter().all(Zero::is_zero)
        && datum
            .coroot_coefficients(&diff)
            .iter()
            .all(|x| is_integral(x) && !x.is_negative()))
}

fn require_integral_dominant(datum: &RootDatum, c: &CoweightQ) -> Result<()> {
    if !datum.is_integral(c) {
        return Err(Error::NotIntegral(datum.format_coweight(c)));
    }
    if !datum.is_dominant(c) {
        return Err(Error::NotDominant(datum.format_coweight(c)));
    }
    Ok(())
}

/// The dominant `μ` with `(λ₁ − D) ∩ (λ₂ − D) = μ − D`, where `D` is the
/// nonnegative coroot cone.
pub fn meet(datum: &RootDatum, lam1: &CoweightQ, lam2: &CoweightQ) -> Result<CoweightQ> {
    require_integral_dominant(datum, lam1)?;
    require_integral_dominant(datum, lam2)?;
    if !datum.same_det_class(lam1, lam2) {
        return Err(Error::DetClassMismatch);
    }
    let n = datum.coroot_coefficients(&lam1.sub(lam2));
    if !n.iter().all(is_integral) {
        return Err(Error::Inconsistent(
            "λ₁ − λ₂ is not in the coroot lattice".into(),
        ));
    }
    let positive: Vec<Q> = n
        .iter()
        .map(|x| {
            if x.is_positive() {
                x.clone()
            } else {
                Q::zero()
            }
        })
        .collect();
    let mu = lam1.sub(&datum.from_coroot_coefficients(&positive));
    if !(datum.is_dominant(&mu) && leq_q(datum, &mu, lam1) && leq_q(datum, &mu, lam2)) {
        return Err(Error::Inconsistent(format!(
            "meet {} fails its postcondition",
            datum.format_coweight(&mu)
        )));
    }
    Ok(mu)
}

/// `P_λ = Λ_ℚ⁺ ∩ Conv(W·λ)`, tested as dominance plus `ν ≤_ℚ λ`.
pub fn in_polytope(datum: &RootDatum, lam: &CoweightQ, nu: &CoweightQ) -> bool {
    datum.is_dominant(nu) && leq_q(datum, nu, lam)
}

/// Dominant integral `μ ≤ λ` with `ν ≤_ℚ μ` (all of them if `nu` is `None`),
/// excluding `λ` itself.
pub fn dominant_below(
    datum: &RootDatum,
    lam: &CoweightQ,
    nu: Option<&CoweightQ>,
) -> Vec<CoweightQ> {
    let top = datum.coroot_coefficients(&match nu {
        Some(n) => lam.sub(n),
        None => lam.clone(),
    });
    let bound: Vec<i64> = top
        .iter()
        .map(|x| x.floor().to_integer().to_i64().unwrap_or(0).max(0))
        .collect();
    let r = datum.rank();
    let mut out = Vec::new();
    let mut m = vec![0i64; r];
    loop {
        let mut i = 0;
        while i < r {
            m[i] += 1;
            if m[i] <= bound[i] {
                break;
            }
            m[i] = 0;
            i += 1;
        }
        if i == r {
            break;
        }
        let mu =
            lam.sub(&datum.from_coroot_coefficients(&m.iter().map(|&x| q(x)).collect::<Vec<_>>()));
        if datum.is_dominant(&mu) && nu.is_none_or(|n| leq_q(datum, n, &mu)) {
            out.push(mu);
        }
    }
    out
}

/// `ν ∈ P_λ° = P_λ − ⋃_{μ<λ} P_μ`.
pub fn in_open_stratum(datum: &RootDatum, lam: &CoweightQ, nu: &CoweightQ) -> Result<bool> {
    require_integral_dominant(datum, lam)?;
    if !in_polytope(datum, lam, nu) {
        return Ok(false);
    }
    Ok(dominant_below(datum, lam, Some(nu)).is_empty())
}

/// Result of [`smallest_integral_approximation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Approximation {
    pub nu: CoweightQ,
    pub stratum: CoweightQ,
    /// Greedy ascent from the ceiling point to the stratum, one coroot at a time.
    pub witness_chain: Vec<CoweightQ>,
    /// Minimal candidates found by the box search (a singleton).
    pub minimal_candidates: Vec<CoweightQ>,
}

impl Approximation {
    pub fn to_json(&self, datum: &RootDatum) -> serde_json::Value {
        let user = |c: &CoweightQ| -> Vec<String> {
            datum.coweight_to_user(c).iter().map(fmt_q).collect()
        };
        serde_json::json!({
            "nu": user(&self.nu),
            "stratum": user(&self.stratum),
            "witness_chain": self.witness_chain.iter().map(user).collect::<Vec<_>>(),
        })
    }
}

/// An integral coweight with the same central part as `c`.
fn integral_in_class(datum: &RootDatum, c: &CoweightQ) -> Option<CoweightQ> {
    let r = datum.rank();
    let central_cols: QMatrix = datum
        .lattice_basis()
        .iter()
        .map(|row| row[r..].to_vec())
        .collect();
    let z = solve_integral(&central_cols, &c.central)?;
    let zq: Vec<Q> = z.into_iter().map(Q::from_integer).collect();
    Some(datum.from_lattice_coordinates(&zq))
}

/// The unique minimal dominant integral `μ` with `ν ≤_ℚ μ`.
pub fn smallest_integral_approximation(datum: &RootDatum, nu: &CoweightQ) -> Result<Approximation> {
    if !datum.is_dominant(nu) {
        return Err(Error::NotDominant(datum.format_coweight(nu)));
    }
    let x0 = integral_in_class(datum, nu)
        .ok_or_else(|| Error::NoIntegralDominator(datum.format_coweight(nu)))?;
    let r = datum.rank();
    let floor_n: Vec<i64> = datum
        .coroot_coefficients(&nu.sub(&x0))
        .iter()
        .map(|x| {
            x.ceil()
                .to_integer()
                .to_i64()
                .expect("coordinates fit in i64")
        })
        .collect();
    let at = |n: &[i64]| {
        x0.add(&datum.from_coroot_coefficients(&n.iter().map(|&v| q(v)).collect::<Vec<_>>()))
    };

    // Greedy ascent: raise along α_j^∨ while <α_j, μ> < 0.
    let mut n = floor_n.clone();
    let mut chain = vec![at(&n)];
    loop {
        let cur = chain.last().expect("nonempty chain");
        match cur.ss.iter().position(|x| x.is_negative()) {
            None => break,
            Some(j) => {
                n[j] += 1;
                chain.push(at(&n));
            }
        }
    }
    let greedy = chain.last().cloned().expect("nonempty chain");

    // Box search over floor_n ≤ n ≤ n(upper), upper = ceiling point + t·2ρ^∨.
    let ceiling = at(&floor_n);
    let t = ceiling
        .ss
        .iter()
        .map(|x| {
            (-x / BigInt::from(2))
                .ceil()
                .to_integer()
                .to_i64()
                .unwrap_or(0)
                .max(0)
        })
        .max()
        .unwrap_or(0);
    let rho_coeffs = datum.coroot_coefficients(&CoweightQ::new(
        vec![q(2); r],
        vec![Q::zero(); datum.central_rank()],
    ));
    let upper: Vec<i64> = (0..r)
        .map(|i| {
            floor_n[i]
                + to_i64(&(&rho_coeffs[i] * BigInt::from(t)))
                    .expect("2ρ^∨ is in the coroot lattice")
        })
        .collect();
    let mut candidates: Vec<(Vec<i64>, CoweightQ)> = Vec::new();
    let mut m = floor_n.clone();
    'scan: loop {
        let mu = at(&m);
        if datum.is_dominant(&mu) {
            candidates.push((m.clone(), mu));
        }
        let mut i = 0;
        loop {
            if i == r {
                break 'scan;
            }
            m[i] += 1;
            if m[i] <= upper[i] {
                break;
            }
            m[i] = floor_n[i];
            i += 1;
        }
    }
    let minimal: Vec<CoweightQ> = candidates
        .iter()
        .filter(|(a, _)| {
            !candidates
                .iter()
                .any(|(b, _)| b != a && b.iter().zip(a.iter()).all(|(x, y)| x <= y))
        })
        .map(|(_, c)| c.clone())
        .collect();
    let mut folded = minimal
        .first()
        .cloned()
        .ok_or_else(|| Error::Inconsistent("no dominant candidate in the search box".into()))?;
    for c in &minimal[1..] {
        folded = meet(datum, &folded, c)?;
    }
    if minimal.len() != 1 || folded != greedy {
        return Err(Error::Inconsistent(format!(
            "{} minimal candidates; meet {} vs greedy {}",
            minimal.len(),
            datum.format_coweight(&folded),
            datum.format_coweight(&greedy)
        )));
    }
    Ok(Approximation {
        nu: nu.clone(),
        stratum: greedy,
        witness_chain: chain,
        minimal_candidates: minimal,
    })
}

/// The largest dominant integral `μ` with `μ ≤_ℚ ν` in the same class, when
/// one exists: the approximation from below used for affine Deligne–Lusztig
/// varieties, exposed for comparison only.
pub fn largest_integral_approximation(
    datum: &RootDatum,
    nu: &CoweightQ,
) -> Result<Option<CoweightQ>> {
    if !datum.is_dominant(nu) {
        return Err(Error::NotDominant(datum.format_coweight(nu)));
    }
    let Some(x0) = integral_in_class(datum, nu) else {
        return Err(Error::NoIntegralDominator(datum.format_coweight(nu)));
    };
    let top: Vec<i64> = datum
        .coroot_coefficients(&nu.sub(&x0))
        .iter()
        .map(|x| {
            x.floor()
                .to_integer()
                .to_i64()
                .expect("coordinates fit in i64")
        })
        .collect();
    let mu =
        x0.add(&datum.from_coroot_coefficients(&top.iter().map(|&v| q(v)).collect::<Vec<_>>()));
    if !datum.is_dominant(&mu) {
        // Every dominant integral μ ≤ ν lies below `mu`; take the maximal ones.
        let below = dominant_below(datum, &mu, None);
        let maximal: Vec<&CoweightQ> = below
            .iter()
            .filter(|a| !below.iter().any(|b| b != *a && leq_q(datum, a, b)))
            .collect();
        return Ok(match maximal.as_slice() {
            [one] => Some((*one).clone()),
            _ => None,
        });
    }
    Ok(Some(mu))
}

/// `val Tr ρ_{ω_i}(γ) = base + val(series)`, where `base = <ω_i, μ>` with
/// `ω_i` vanishing on the central directions and the series is the trace of
/// `ϖ^{-μ}`-normalized characters `χ − ω_i`, up to a unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceValuation {
    pub base: Q,
    pub series: Valuation,
}

/// Valuations of the fundamental traces `Tr ρ_{ω_i}(γ)`, used to decide
/// `χ(γ) ∈ C_{≤λ}` for every `λ` at once.
#[derive(Debug, Clone)]
pub struct SteinbergData {
    /// For each `i`, the characters `χ − ω_i` (simple-root coordinates) of
    /// the `i`-th fundamental representation with their multiplicities.
    shifted_characters: Vec<Vec<(Vec<i64>, u64)>>,
}

impl SteinbergData {
    pub fn new(datum: &RootDatum) -> Result<Self> {
        let r = datum.rank();
        if r > MAX_STEINBERG_RANK {
            return Err(Error::RankTooLarge(r));
        }
        let sys = datum.root_system();
        let cinv = if r == 0 {
            Vec::new()
        } else {
            inverse(&to_qmatrix(sys.cartan())).expect("invertible")
        };
        let mut shifted_characters = Vec::with_capacity(r);
        for i in 0..r {
            let mut omega = vec![0; r];
            omega[i] = 1;
            let mut f = Freudenthal::new(sys, &omega)?;
            let chars = f
                .full_character()
                .into_iter()
                .map(|(chi, m)| {
                    let diff: Vec<i64> = chi.iter().zip(&omega).map(|(a, b)| a - b).collect();
                    let c = root_coordinates(&cinv, &diff)
                        .expect("weights of V(ω_i) lie in ω_i + root lattice");
                    (c, m)
                })
                .collect();
            shifted_characters.push(chars);
        }
        Ok(SteinbergData { shifted_characters })
    }

    /// `val Tr ρ_{ω_i}(γ)` for each `i`.
    pub fn trace_valuations(
        &self,
        datum: &RootDatum,
        g: &TorusElement,
    ) -> Result<Vec<TraceValuation>> {
        let TorusElement::Concrete { mu, units } = g else {
            return Err(Error::InvalidTorusElement(
                "Steinberg membership needs a concrete element".into(),
            ));
        };
        let r = datum.rank();
        let mut out = Vec::with_capacity(r);
        for (i, chars) in self.shifted_characters.iter().enumerate() {
            // Exponent of u_k in (χ − ω_i)(t₀), and the common denominator.
            let exps: Vec<(i64, Vec<i64>, u64)> = chars
                .iter()
                .map(|(c, m)| {
                    let m_pi =
                        to_i64(&crate::rational::dot_i(c, &mu.ss)).expect("integral pairing");
                    let e = datum
                        .lattice_basis()
                        .iter()
                        .map(|b| {
                            to_i64(&crate::rational::dot_i(c, &b[..r])).expect("integral pairing")
                        })
                        .collect();
                    (m_pi, e, *m)
                })
                .collect();
            let nk = units.len();
            let shift: Vec<i64> = (0..nk)
                .map(|k| exps.iter().map(|(_, e, _)| -e[k]).max().unwrap_or(0).max(0))
                .collect();
            let mut sum = LaurentSeries::zero();
            for (m_pi, e, mult) in &exps {
                let mut term = LaurentSeries::monomial(q(*mult as i64), *m_pi);
                for k in 0..nk {
                    let p = e[k] + shift[k];
                    if p > 0 {
                        term = term.mul(&units[k].pow(p)?);
                    }
                }
                sum = sum.add(&term);
            }
            out.push(TraceValuation {
                base: datum.omega_pair(i, mu),
                series: sum.valuation(),
            });
        }
        Ok(out)
    }

    /// Decides membership from precomputed trace valuations.
    pub fn contains_with(
        &self,
        datum: &RootDatum,
        g: &TorusElement,
        traces: &[TraceValuation],
        lam: &CoweightQ,
    ) -> Result<bool> {
        require_integral_dominant(datum, lam)?;
        let TorusElement::Concrete { mu, .. } = g else {
            return Err(Error::InvalidTorusElement(
                "Steinberg membership needs a concrete element".into(),
            ));
        };
        if !datum.same_det_class(mu, lam) {
            return Ok(false);
        }
        let w0lam = datum.apply_weyl(datum.w0(), lam);
        for (i, v) in traces.iter().enumerate() {
            let bound = datum.omega_pair(i, &w0lam) - &v.base;
            match v.series {
                Valuation::Infinite => {}
                Valuation::Finite { value } if q(value) >= bound => {}
                Valuation::Finite { .. } => return Ok(false),
                Valuation::Inconclusive { at_least } if q(at_least) >= bound => {}
                Valuation::Inconclusive { at_least } => {
                    return Err(Error::InconclusiveTruncation(at_least))
                }
            }
        }
        Ok(true)
    }

    pub fn contains(&self, datum: &RootDatum, g: &TorusElement, lam: &CoweightQ) -> Result<bool> {
        let traces = self.trace_valuations(datum, g)?;
        self.contains_with(datum, g, &traces, lam)
    }
}

/// `χ(γ) ∈ C_{≤λ}`: `val Tr ρ_{ω_i}(γ) ≥ <ω_i, w₀λ>` for all `i` and matching
/// abelianization.
pub fn steinberg_contains(datum: &RootDatum, g: &TorusElement, lam: &CoweightQ) -> Result<bool> {
    SteinbergData::new(datum)?.contains(datum, g, lam)
}

/// `χ(γ) ∈ C_λ°`: in `C_{≤λ}` but in no `C_{≤μ}` for dominant `μ < λ`.
pub fn steinberg_open_contains(
    datum: &RootDatum,
    g: &TorusElement,
    lam: &CoweightQ,
) -> Result<bool> {
    let data = SteinbergData::new(datum)?;
    let traces = data.trace_valuations(datum, g)?;
    if !data.contains_with(datum, g, &traces, lam)? {
        return Ok(false);
    }
    for mu in dominant_below(datum, lam, None) {
        if data.contains_with(datum, g, &traces, &mu)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A coweight of the enhanced torus: pairs `(ν₁, ν₂)` of adjoint coweights
/// (fundamental-coweight coordinates) with `ν₁ + ν₂` in the coroot lattice.
/// `ν₁` carries the roots; `ν₂` is the abelianization component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EnhancedCoweight {
    #[serde(with = "crate::rational::serde_qvec")]
    pub nu1: Vec<Q>,
    #[serde(with = "crate::rational::serde_qvec")]
    pub nu2: Vec<Q>,
}

impl EnhancedCoweight {
    pub fn new(datum: &RootDatum, nu1: Vec<Q>, nu2: Vec<Q>) -> Result<Self> {
        let r = datum.rank();
        if nu1.len() != r || nu2.len() != r {
            return Err(Error::DimensionMismatch {
                expected: r,
                got: nu1.len().max(nu2.len()),
            });
        }
        if !nu1.iter().chain(&nu2).all(is_integral) {
            return Err(Error::NotIntegral(
                "enhanced coweights live in the adjoint lattice".into(),
            ));
        }
        let sum: Vec<Q> = nu1.iter().zip(&nu2).map(|(a, b)| a + b).collect();
        if !coroot_coeffs(datum, &sum).iter().all(is_integral) {
            return Err(Error::NotIntegral(
                "ν₁ + ν₂ is not in the coroot lattice".into(),
            ));
        }
        Ok(EnhancedCoweight { nu1, nu2 })
    }

    pub fn is_dominant(&self) -> bool {
        self.nu1.iter().all(|x| !x.is_negative())
    }
}

fn coroot_coeffs(datum: &RootDatum, ss: &[Q]) -> Vec<Q> {
    datum.coroot_coefficients(&CoweightQ::new(
        ss.to_vec(),
        vec![Q::zero(); datum.central_rank()],
    ))
}

/// `λ⁺ = (−w₀λ̄, w₀λ̄)` with `λ̄` the adjoint image of `λ`.
pub fn lambda_plus(datum: &RootDatum, lam: &CoweightQ) -> Result<EnhancedCoweight> {
    require_integral_dominant(datum, lam)?;
    let w0bar = datum.w0().apply(&lam.ss);
    let nu1 = w0bar.iter().map(|x| -x).collect();
    EnhancedCoweight::new(datum, nu1, w0bar)
}

/// `<w₀ω_i⁺, ν⁺> = <w₀ω_i, ν₁> + <ω_i, ν₂>`.
pub fn enhanced_pairing(datum: &RootDatum, i: usize, x: &EnhancedCoweight) -> Q {
    let w0nu1 = datum.w0().apply(&x.nu1);
    coroot_coeffs(datum, &w0nu1)[i].clone() + coroot_coeffs(datum, &x.nu2)[i].clone()
}

/// `μ⁺ ≤ λ⁺` by the fundamental-representation test, cross-checked against
/// the coroot-cone definition.
pub fn enhanced_leq(
    datum: &RootDatum,
    mu: &EnhancedCoweight,
    lam: &EnhancedCoweight,
) -> Result<bool> {
    if mu.nu2 != lam.nu2 {
        return Err(Error::AbelianizationMismatch);
    }
    if !(mu.is_dominant() && lam.is_dominant()) {
        return Err(Error::NotDominant(
            "enhanced coweights must be dominant".into(),
        ));
    }
    let by_pairing = (0..datum.rank())
        .all(|i| enhanced_pairing(datum, i, mu) >= enhanced_pairing(datum, i, lam));
    let direct = enhanced_leq_direct(datum, mu, lam)?;
    if by_pairing != direct {
        return Err(Error::Inconsistent(
            "enhanced dominance tests disagree".into(),
        ));
    }
    Ok(by_pairing)
}

/// `λ⁺ − μ⁺ = (Σ n_i α_i^∨, 0)` with integers `n_i ≥ 0`.
pub fn enhanced_leq_direct(
    datum: &RootDatum,
    mu: &EnhancedCoweight,
    lam: &EnhancedCoweight,
) -> Result<bool> {
    if mu.nu2 != lam.nu2 {
        return Err(Error::AbelianizationMismatch);
    }
    let diff: Vec<Q> = lam.nu1.iter().zip(&mu.nu1).map(|(a, b)| a - b).collect();
    Ok(coroot_coeffs(datum, &diff)
        .iter()
        .all(|x| is_integral(x) && !x.is_negative()))
}
