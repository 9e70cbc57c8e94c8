//! Numerical invariants of generalized affine Springer fibers `X_γ^λ`:
//! nonemptiness, dimensions, the twisted discriminant, orbit counts and the
//! Coxeter lower bound on weight multiplicities.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coxeter::count_coxeter;
use crate::error::{Error, Result};
use crate::multiplicity::{kostant_multiplicity, Freudenthal, PartitionFunction};
use crate::rational::{fmt_q, is_integral, q, Q};
use crate::root_datum::{CoweightQ, RootDatum};
use crate::strata::{leq_q, smallest_integral_approximation, SteinbergData, MAX_STEINBERG_RANK};
use crate::torus::{GammaInvariants, TorusElement};

/// Epistemic status of a reported number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Tag {
    Theorem,
    Conjectural,
    Companion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tagged<T> {
    pub value: T,
    pub tag: Tag,
}

/// Everything known about `X_γ^λ`. Fields other than `nonempty` are `None`
/// when the fiber is empty.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberReport {
    pub nonempty: bool,
    pub newton: Option<CoweightQ>,
    pub mu_star: Option<CoweightQ>,
    pub d: Option<Q>,
    pub r: Option<Q>,
    pub c: Option<usize>,
    pub d_lambda: Option<Q>,
    pub dim_regular: Option<Q>,
    pub dim_total: Option<Tagged<Q>>,
    pub orbit_count: Option<Tagged<u64>>,
    pub regular_orbit_bound: Option<u128>,
    pub regular_bound_exact: Option<bool>,
    pub zero_dimensional: Option<bool>,
    pub certified: bool,
    pub warnings: Vec<String>,
}

/// Wire form of [`FiberReport`]; coweights in user coordinates, rationals as strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberReportJson {
    pub nonempty: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub newton: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_star: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_lambda: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_regular: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_total: Option<Tagged<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit_count: Option<Tagged<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regular_orbit_bound: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regular_bound_exact: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero_dimensional: Option<bool>,
    pub certified: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl FiberReport {
    fn empty() -> Self {
        FiberReport {
            nonempty: false,
            newton: None,
            mu_star: None,
            d: None,
            r: None,
            c: None,
            d_lambda: None,
            dim_regular: None,
            dim_total: None,
            orbit_count: None,
            regular_orbit_bound: None,
            regular_bound_exact: None,
            zero_dimensional: None,
            certified: true,
            warnings: Vec::new(),
        }
    }

    pub fn to_wire(&self, datum: &RootDatum) -> FiberReportJson {
        let user = |c: &CoweightQ| -> Vec<String> {
            datum.coweight_to_user(c).iter().map(fmt_q).collect()
        };
        FiberReportJson {
            nonempty: self.nonempty,
            newton: self.newton.as_ref().map(user),
            mu_star: self.mu_star.as_ref().map(user),
            d: self.d.as_ref().map(fmt_q),
            r: self.r.as_ref().map(fmt_q),
            c: self.c,
            d_lambda: self.d_lambda.as_ref().map(fmt_q),
            dim_regular: self.dim_regular.as_ref().map(fmt_q),
            dim_total: self.dim_total.as_ref().map(|t| Tagged {
                value: fmt_q(&t.value),
                tag: t.tag,
            }),
            orbit_count: self.orbit_count.clone(),
            regular_orbit_bound: self.regular_orbit_bound.map(|b| b as u64),
            regular_bound_exact: self.regular_bound_exact,
            zero_dimensional: self.zero_dimensional,
            certified: self.certified,
            warnings: self.warnings.clone(),
        }
    }
}

fn require_integral_dominant(datum: &RootDatum, lam: &CoweightQ) -> Result<()> {
    if !datum.is_integral(lam) {
        return Err(Error::NotIntegral(datum.format_coweight(lam)));
    }
    if !datum.is_dominant(lam) {
        return Err(Error::NotDominant(datum.format_coweight(lam)));
    }
    Ok(())
}

/// Computes fiber invariants for one datum, reusing fundamental-trace data.
#[derive(Debug, Clone)]
pub struct Springer<'a> {
    datum: &'a RootDatum,
    steinberg: Option<SteinbergData>,
}

impl<'a> Springer<'a> {
    pub fn new(datum: &'a RootDatum) -> Result<Self> {
        let steinberg = if datum.rank() <= MAX_STEINBERG_RANK {
            Some(SteinbergData::new(datum)?)
        } else {
            None
        };
        Ok(Springer { datum, steinberg })
    }

    pub fn datum(&self) -> &RootDatum {
        self.datum
    }

    /// `X_γ^λ ≠ ∅` iff `ν_γ ≤_ℚ λ`; concrete elements of rank ≤ 3 are also
    /// tested through the fundamental traces and the answers must agree.
    pub fn is_nonempty(&self, g: &TorusElement, lam: &CoweightQ) -> Result<bool> {
        require_integral_dominant(self.datum, lam)?;
        let by_newton = leq_q(self.datum, &g.newton_point(self.datum), lam);
        if let (Some(st), true) = (&self.steinberg, g.is_concrete()) {
            let by_traces = st.contains(self.datum, g, lam)?;
            if by_traces != by_newton {
                return Err(Error::CriteriaDisagree(format!(
                    "λ = {}: Newton point test says {by_newton}, trace test says {by_traces}",
                    self.datum.format_coweight(lam)
                )));
            }
        }
        Ok(by_newton)
    }

    fn require_nonempty(&self, g: &TorusElement, lam: &CoweightQ) -> Result<()> {
        if self.is_nonempty(g, lam)? {
            Ok(())
        } else {
            Err(Error::EmptyFiber(format!(
                "ν_γ is not ≤ {}",
                self.datum.format_coweight(lam)
            )))
        }
    }

    /// `<ρ, λ> + d(γ)/2` for split elements, cross-checked with the
    /// semi-infinite orbit count `<ρ, λ + ν> + r(γ) − <2ρ, ν>`.
    pub fn dimension_unramified(&self, g: &TorusElement, lam: &CoweightQ) -> Result<Q> {
        if !g.is_concrete() {
            return Err(Error::InvalidTorusElement(
                "the unramified dimension formula needs a concrete element".into(),
            ));
        }
        self.require_nonempty(g, lam)?;
        let d = g.discriminant_valuation(self.datum)?;
        let dim = self.datum.rho_pair(lam) + d / BigInt::from(2);
        let nu = g.newton_point(self.datum);
        let mv = self.datum.rho_pair(&lam.add(&nu)) + g.r_gamma(self.datum)?
            - self.datum.two_rho_pair(&nu);
        if mv != dim {
            return Err(Error::Inconsistent(format!(
                "dimension {} vs {}",
                fmt_q(&dim),
                fmt_q(&mv)
            )));
        }
        Ok(dim)
    }

    /// `<ρ, λ> + (d(γ) − c(γ))/2`.
    pub fn dimension_regular_locus(&self, g: &TorusElement, lam: &CoweightQ) -> Result<Q> {
        self.require_nonempty(g, lam)?;
        let d = g.discriminant_valuation(self.datum)?;
        let c = g.c_gamma(self.datum);
        Ok(self.datum.rho_pair(lam) + (d - q(c as i64)) / BigInt::from(2))
    }

    /// The same value from the direct root sum for `d` and the projector trace for `c`.
    pub fn dimension_regular_locus_recomputed(
        &self,
        g: &TorusElement,
        lam: &CoweightQ,
    ) -> Result<Q> {
        self.require_nonempty(g, lam)?;
        let d = g.discriminant_valuation_direct(self.datum)?;
        let c = g.c_gamma_by_trace(self.datum);
        let two = BigInt::from(2);
        let rho = crate::rational::dot_i(self.datum.two_rho(), &lam.ss) / &two;
        Ok(rho + d / two - q(c as i64) / BigInt::from(2))
    }

    /// `d_λ = Σ_{α∈Φ, <α,ν>=0} v_α + <2ρ, λ − ν>`, checked against `<2ρ, λ> + d(γ)`.
    pub fn twisted_discriminant(&self, g: &TorusElement, lam: &CoweightQ) -> Result<Q> {
        self.require_nonempty(g, lam)?;
        let nu = g.newton_point(self.datum);
        let profile = g.valuation_profile(self.datum)?;
        let first = profile.total() * BigInt::from(2) + self.datum.two_rho_pair(&lam.sub(&nu));
        let second = self.datum.two_rho_pair(lam) + g.discriminant_valuation_direct(self.datum)?;
        if first != second {
            return Err(Error::Inconsistent(format!(
                "d_λ: {} vs {}",
                fmt_q(&first),
                fmt_q(&second)
            )));
        }
        if first.is_negative() {
            return Err(Error::Inconsistent(format!("d_λ = {} < 0", fmt_q(&first))));
        }
        Ok(first)
    }

    /// The rigid case `d_λ = 0`: then `ν = λ`, the profile vanishes and the
    /// fiber is a single point-like torsor.
    pub fn zero_dim_report(&self, g: &TorusElement, lam: &CoweightQ) -> Result<ZeroDimReport> {
        let dl = self.twisted_discriminant(g, lam)?;
        if !dl.is_zero() {
            return Err(Error::NotZeroTwisted(fmt_q(&dl)));
        }
        let nu = g.newton_point(self.datum);
        if &nu != lam || !g.valuation_profile(self.datum)?.is_zero() {
            return Err(Error::Inconsistent(
                "d_λ = 0 without ν = λ and a zero profile".into(),
            ));
        }
        let m = Freudenthal::new(self.datum.dual_system(), &lam.ss_i64().expect("integral"))?
            .multiplicity(&lam.ss_i64().expect("integral"));
        Ok(ZeroDimReport {
            dim: 0,
            torsor: true,
            count: m,
        })
    }

    /// `m_{λ, μ*}`, a theorem for split elements and for `λ = 0`.
    pub fn orbit_count(&self, g: &TorusElement, lam: &CoweightQ) -> Result<Tagged<u64>> {
        self.require_nonempty(g, lam)?;
        let mu_star =
            smallest_integral_approximation(self.datum, &g.newton_point(self.datum))?.stratum;
        let value = crate::multiplicity::freudenthal(self.datum, lam, &mu_star)?;
        let tag = if g.is_concrete() || lam.is_zero() {
            Tag::Theorem
        } else {
            Tag::Conjectural
        };
        Ok(Tagged { value, tag })
    }

    /// `(|Cox(W,S)|, exact)`, exact when `λ` is chamber-interior and `λ − μ*`
    /// lies in the interior of the coroot cone.
    pub fn regular_orbit_bound(&self, g: &TorusElement, lam: &CoweightQ) -> Result<(u128, bool)> {
        self.require_nonempty(g, lam)?;
        let mu_star =
            smallest_integral_approximation(self.datum, &g.newton_point(self.datum))?.stratum;
        Ok((
            count_coxeter(self.datum),
            regular_bound_exact(self.datum, lam, &mu_star),
        ))
    }

    pub fn full_report(&self, g: &TorusElement, lam: &CoweightQ) -> Result<FiberReport> {
        if !self.is_nonempty(g, lam)? {
            return Ok(FiberReport::empty());
        }
        let datum = self.datum;
        let GammaInvariants {
            newton,
            profile: _,
            d,
            d_direct: _,
            r,
            c,
            mut warnings,
        } = g.invariants(datum)?;
        let mu_star = smallest_integral_approximation(datum, &newton)?.stratum;
        let d_lambda = self.twisted_discriminant(g, lam)?;
        let dim_regular = self.dimension_regular_locus(g, lam)?;
        if dim_regular != self.dimension_regular_locus_recomputed(g, lam)? {
            return Err(Error::Inconsistent(
                "regular-locus dimension routes disagree".into(),
            ));
        }
        let dim_total = if g.is_concrete() {
            let dim = self.dimension_unramified(g, lam)?;
            if dim != dim_regular {
                return Err(Error::Inconsistent(
                    "c = 0 but the two dimensions differ".into(),
                ));
            }
            Tagged {
                value: dim,
                tag: Tag::Theorem,
            }
        } else {
            Tagged {
                value: dim_regular.clone(),
                tag: Tag::Companion,
            }
        };
        if !is_integral(&dim_regular) {
            warnings.push(format!(
                "dimension {} is not an integer: the input is not realizable",
                fmt_q(&dim_regular)
            ));
        }
        let orbit_count = self.orbit_count(g, lam)?;
        let (bound, exact) = self.regular_orbit_bound(g, lam)?;
        if orbit_count.value < 1 {
            return Err(Error::Inconsistent(
                "nonempty fiber with zero orbit count".into(),
            ));
        }
        if exact && u128::from(orbit_count.value) < bound {
            return Err(Error::Inconsistent(format!(
                "m = {} below the Coxeter bound {bound}",
                orbit_count.value
            )));
        }
        let zero_dimensional = d_lambda.is_zero();
        if zero_dimensional {
            let z = self.zero_dim_report(g, lam)?;
            if z.count != orbit_count.value || !dim_regular.is_zero() {
                return Err(Error::Inconsistent(
                    "zero-dimensional report disagrees with the full report".into(),
                ));
            }
        }
        Ok(FiberReport {
            nonempty: true,
            newton: Some(newton),
            mu_star: Some(mu_star),
            d: Some(d),
            r: Some(r),
            c: Some(c),
            d_lambda: Some(d_lambda),
            dim_regular: Some(dim_regular),
            dim_total: Some(dim_total),
            orbit_count: Some(orbit_count),
            regular_orbit_bound: Some(bound),
            regular_bound_exact: Some(exact),
            zero_dimensional: Some(zero_dimensional),
            certified: g.is_validated(),
            warnings,
        })
    }
}

/// `<α_i, λ> > 0` and `<ω_i, λ − μ> > 0` for all `i`.
pub fn regular_bound_exact(datum: &RootDatum, lam: &CoweightQ, mu: &CoweightQ) -> bool {
    lam.ss.iter().all(Signed::is_positive)
        && datum
            .coroot_coefficients(&lam.sub(mu))
            .iter()
            .all(Signed::is_positive)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroDimReport {
    pub dim: u32,
    pub torsor: bool,
    pub count: u64,
}

pub fn is_nonempty(datum: &RootDatum, g: &TorusElement, lam: &CoweightQ) -> Result<bool> {
    Springer::new(datum)?.is_nonempty(g, lam)
}

pub fn full_report(datum: &RootDatum, g: &TorusElement, lam: &CoweightQ) -> Result<FiberReport> {
    Springer::new(datum)?.full_report(g, lam)
}

/// Maximum radius accepted by [`verify_lower_bound`].
pub const MAX_SCAN_RADIUS: i64 = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundRow {
    pub lambda: Vec<i64>,
    pub mu: Vec<i64>,
    pub multiplicity: u64,
    pub kostant: i64,
    pub bound: u128,
}

impl LowerBoundRow {
    pub fn passed(&self) -> bool {
        u128::from(self.multiplicity) >= self.bound
            && i64::try_from(self.multiplicity) == Ok(self.kostant)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundScan {
    pub datum: String,
    pub radius: i64,
    pub bound: u128,
    pub rows: Vec<LowerBoundRow>,
}

impl LowerBoundScan {
    pub fn failed(&self) -> usize {
        self.rows.iter().filter(|r| !r.passed()).count()
    }

    pub fn minimum(&self) -> Option<&LowerBoundRow> {
        self.rows
            .iter()
            .min_by_key(|r| (r.multiplicity, r.lambda.clone(), r.mu.clone()))
    }

    pub fn passed(&self) -> bool {
        self.failed() == 0
    }
}

/// Checks `m_{λμ} ≥ |Cox(W,S)|` on every pair with fundamental coordinates
/// in `[0, radius]`, `λ` chamber-interior, `λ − μ` in the interior of the
/// coroot cone. `λ` ranges over all dominant adjoint coweights and `μ` over
/// its class modulo the coroot lattice.
pub fn verify_lower_bound(datum: &RootDatum, radius: i64) -> Result<LowerBoundScan> {
    let r = datum.rank();
    if r > MAX_STEINBERG_RANK {
        return Err(Error::RankTooLarge(r));
    }
    if !(0..=MAX_SCAN_RADIUS).contains(&radius) {
        return Err(Error::MalformedSpec(format!(
            "radius must lie in 0..={MAX_SCAN_RADIUS}"
        )));
    }
    let sys = datum.dual_system();
    let weyl = datum.weyl_group()?;
    let mut pf = PartitionFunction::new(sys);
    let bound = count_coxeter(datum);
    let mut rows = Vec::new();
    for lambda in grid(r, 1, radius) {
        let mut f = Freudenthal::new(sys, &lambda)?;
        for mu in grid(r, 0, radius) {
            let lam_c = CoweightQ::new(
                lambda.iter().map(|&x| q(x)).collect(),
                vec![Q::zero(); datum.central_rank()],
            );
            let mu_c = CoweightQ::new(
                mu.iter().map(|&x| q(x)).collect(),
                vec![Q::zero(); datum.central_rank()],
            );
            let n = datum.coroot_coefficients(&lam_c.sub(&mu_c));
            if !n.iter().all(|x| is_integral(x) && x.is_positive()) {
                continue;
            }
            let m = f.multiplicity(&mu);
            let k = kostant_multiplicity(sys, &weyl, &mut pf, &lambda, &mu);
            rows.push(LowerBoundRow {
                lambda: lambda.clone(),
                mu,
                multiplicity: m,
                kostant: k,
                bound,
            });
        }
    }
    Ok(LowerBoundScan {
        datum: datum.name().to_string(),
        radius,
        bound,
        rows,
    })
}

/// All integer vectors of length `r` with entries in `[lo, hi]`, lexicographic.
pub fn grid(r: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=hi).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}
