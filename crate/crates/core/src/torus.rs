//! Regular semisimple elements of the maximal torus and their invariants:
//! Newton point, valuation profile, discriminant valuation `d(γ)`, `r(γ)`
//! and `c(γ)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{dot_i, fmt_q, is_integral, q, rank, serde_q, serde_qvec, QMatrix, Q};
use crate::root_datum::{CoweightQ, RootDatum};
use crate::root_system::{matmul, WeylElement};
use crate::series::{LaurentSeries, Valuation};

/// `v_α = val(α(γ) − 1)` for positive roots, keyed by positive-root index.
/// Missing entries are zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValuationProfile {
    values: BTreeMap<usize, Q>,
}

impl ValuationProfile {
    pub fn new(values: BTreeMap<usize, Q>) -> Self {
        let values = values.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        ValuationProfile { values }
    }

    pub fn get(&self, i: usize) -> Q {
        self.values.get(&i).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = (&usize, &Q)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total(&self) -> Q {
        self.values.values().fold(Q::zero(), |a, b| a + b)
    }

    /// `v_{α+β} ≥ min(v_α, v_β)` whenever all three roots pair to zero with `nu`.
    pub fn check_ultrametric(
        &self,
        datum: &RootDatum,
        nu: &CoweightQ,
    ) -> std::result::Result<(), String> {
        let roots = datum.positive_roots();
        let flat: Vec<bool> = roots
            .iter()
            .map(|b| datum.pair_root(b, nu).is_zero())
            .collect();
        for (a, ra) in roots.iter().enumerate() {
            for (b, rb) in roots.iter().enumerate().skip(a + 1) {
                let sum: Vec<i64> = ra.iter().zip(rb).map(|(x, y)| x + y).collect();
                let Some(s) = datum.root_system().root_index(&sum) else {
                    continue;
                };
                if !(flat[a] && flat[b] && flat[s]) {
                    continue;
                }
                let m = std::cmp::min(self.get(a), self.get(b));
                if self.get(s) < m {
                    return Err(format!(
                        "v at root {s} is {} < min({}, {})",
                        fmt_q(&self.get(s)),
                        fmt_q(&self.get(a)),
                        fmt_q(&self.get(b))
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        Value::Object(
            self.values
                .iter()
                .map(|(k, v)| (k.to_string(), json!(fmt_q(v))))
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TorusElement {
    /// `γ = ϖ^μ · t₀` with `t₀ = Π b_k(u_k)` over the lattice basis `b_k`.
    Concrete {
        mu: CoweightQ,
        units: Vec<LaurentSeries>,
    },
    /// A ramified element described by its splitting data.
    Abstract {
        e: u32,
        w: WeylElement,
        nu: CoweightQ,
        profile: ValuationProfile,
        validated: bool,
    },
}

/// The invariants of a regular semisimple element.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaInvariants {
    pub newton: CoweightQ,
    pub profile: ValuationProfile,
    /// `d(γ)` by the split form `2Σ_{α>0} v_α − <2ρ, ν>`.
    pub d: Q,
    /// `d(γ)` by summing `val(1 − α(γ))` over all roots.
    pub d_direct: Q,
    pub r: Q,
    pub c: usize,
    pub warnings: Vec<String>,
}

impl TorusElement {
    pub fn concrete(datum: &RootDatum, mu: CoweightQ, units: Vec<LaurentSeries>) -> Result<Self> {
        if mu.ss.len() != datum.rank() || mu.central.len() != datum.central_rank() {
            return Err(Error::DimensionMismatch {
                expected: datum.total_rank(),
                got: mu.ss.len() + mu.central.len(),
            });
        }
        if !datum.is_integral(&mu) {
            return Err(Error::InvalidTorusElement(format!(
                "mu = {} is not integral",
                datum.format_coweight(&mu)
            )));
        }
        if units.len() != datum.total_rank() {
            return Err(Error::InvalidTorusElement(format!(
                "expected {} unit coordinates, got {}",
                datum.total_rank(),
                units.len()
            )));
        }
        if let Some((k, u)) = units.iter().enumerate().find(|(_, u)| !u.is_unit()) {
            return Err(Error::InvalidTorusElement(format!(
                "unit coordinate {k} has valuation {}, not 0",
                u.valuation()
            )));
        }
        Ok(TorusElement::Concrete { mu, units })
    }

    /// `ϖ^μ` with all unit coordinates equal to one.
    pub fn uniformizer(datum: &RootDatum, mu: CoweightQ) -> Result<Self> {
        Self::concrete(datum, mu, vec![LaurentSeries::one(); datum.total_rank()])
    }

    /// Validates ramified splitting data. With `allow_unvalidated`, a profile
    /// failing the ultrametric check is accepted and marked as such.
    pub fn ramified(
        datum: &RootDatum,
        e: u32,
        w: WeylElement,
        nu: CoweightQ,
        profile: ValuationProfile,
        allow_unvalidated: bool,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidTorusElement(m));
        if e == 0 {
            return bad("ramification degree must be positive".into());
        }
        if w.order() != e as usize {
            return bad(format!(
                "twist {} has order {}, not e = {e}",
                w.word_string(),
                w.order()
            ));
        }
        if nu.ss.len() != datum.rank() || nu.central.len() != datum.central_rank() {
            return Err(Error::DimensionMismatch {
                expected: datum.total_rank(),
                got: nu.ss.len() + nu.central.len(),
            });
        }
        if !datum.is_dominant(&nu) {
            return bad(format!(
                "nu = {} is not dominant",
                datum.format_coweight(&nu)
            ));
        }
        let e_q = q(i64::from(e));
        if !datum.is_integral(&nu.scale(&e_q)) {
            return bad(format!("e·nu is not integral for e = {e}"));
        }
        let n = datum.num_positive_roots();
        for (&i, v) in profile.support() {
            if i >= n {
                return bad(format!(
                    "profile index {i} is not a positive root index (< {n})"
                ));
            }
            if v.is_negative() {
                return bad(format!("profile value at {i} is negative"));
            }
            if !is_integral(&(v * &e_q)) {
                return bad(format!(
                    "profile value {} at {i} has denominator not dividing e",
                    fmt_q(v)
                ));
            }
            if !datum.pair_root(&datum.positive_roots()[i], &nu).is_zero() {
                return bad(format!(
                    "profile is supported on root {i}, which pairs nontrivially with nu"
                ));
            }
        }
        let validated = match profile.check_ultrametric(datum, &nu) {
            Ok(()) => true,
            Err(msg) if !allow_unvalidated => {
                return bad(format!("profile fails the ultrametric check: {msg}"))
            }
            Err(_) => false,
        };
        Ok(TorusElement::Abstract {
            e,
            w,
            nu,
            profile,
            validated,
        })
    }

    pub fn is_concrete(&self) -> bool {
        matches!(self, TorusElement::Concrete { .. })
    }

    pub fn is_validated(&self) -> bool {
        match self {
            TorusElement::Concrete { .. } => true,
            TorusElement::Abstract { validated, .. } => *validated,
        }
    }

    pub fn newton_point(&self, datum: &RootDatum) -> CoweightQ {
        match self {
            TorusElement::Concrete { mu, .. } => datum.dominant_representative(mu).0,
            TorusElement::Abstract { nu, .. } => nu.clone(),
        }
    }

    /// `val(χ(γ) − 1)` for a character in the root lattice (simple-root
    /// coordinates) of a concrete element.
    pub fn character_minus_one_valuation(
        &self,
        datum: &RootDatum,
        chi: &[i64],
    ) -> Result<Valuation> {
        let TorusElement::Concrete { mu, units } = self else {
            return Err(Error::InvalidTorusElement(
                "series evaluation needs a concrete element".into(),
            ));
        };
        let (num, den) = evaluate_fraction(datum, mu, units, chi)?;
        let diff = num.sub(&den);
        Ok(match diff.valuation() {
            Valuation::Finite { value } => Valuation::Finite {
                value: value - den.lead(),
            },
            Valuation::Inconclusive { at_least } => Valuation::Inconclusive {
                at_least: at_least - den.lead(),
            },
            Valuation::Infinite => Valuation::Infinite,
        })
    }

    fn certified_minus_one(&self, datum: &RootDatum, chi: &[i64]) -> Result<i64> {
        match self.character_minus_one_valuation(datum, chi)? {
            Valuation::Finite { value } => Ok(value),
            Valuation::Infinite => Err(Error::NotRegularSemisimple(format!(
                "root {chi:?} takes the value 1"
            ))),
            Valuation::Inconclusive { at_least } => Err(Error::InconclusiveTruncation(at_least)),
        }
    }

    /// Profile in the dominant chamber: for positive `α` with `<α, ν> = 0`,
    /// `v_α = val((w⁻¹α)(γ) − 1)` where `w μ = ν`.
    pub fn valuation_profile(&self, datum: &RootDatum) -> Result<ValuationProfile> {
        match self {
            TorusElement::Abstract { profile, .. } => Ok(profile.clone()),
            TorusElement::Concrete { mu, .. } => {
                let (nu, w) = datum.dominant_representative(mu);
                let winv = w.inverse();
                let mut values = BTreeMap::new();
                for (i, alpha) in datum.positive_roots().iter().enumerate() {
                    if !datum.pair_root(alpha, &nu).is_zero() {
                        continue;
                    }
                    let beta = winv.apply_to_root(datum.root_system(), alpha);
                    let v = self.certified_minus_one(datum, &beta)?;
                    values.insert(i, q(v));
                }
                Ok(ValuationProfile::new(values))
            }
        }
    }

    /// `d(γ) = Σ_{α∈Φ} val(1 − α(γ))`, summed root by root on the unsorted element.
    pub fn discriminant_valuation_direct(&self, datum: &RootDatum) -> Result<Q> {
        let mut d = Q::zero();
        match self {
            TorusElement::Concrete { .. } => {
                for alpha in datum.positive_roots() {
                    let neg: Vec<i64> = alpha.iter().map(|x| -x).collect();
                    d += q(self.certified_minus_one(datum, alpha)?);
                    d += q(self.certified_minus_one(datum, &neg)?);
                }
            }
            TorusElement::Abstract { nu, profile, .. } => {
                for (i, alpha) in datum.positive_roots().iter().enumerate() {
                    let p = datum.pair_root(alpha, nu);
                    if p.is_zero() {
                        d += profile.get(i) * BigInt::from(2);
                    } else {
                        // val(1 − α(γ)) = min(0, <α, ν>) for ±α.
                        d -= p.abs();
                    }
                }
            }
        }
        Ok(d)
    }

    /// `d(γ) = 2 Σ_{α>0} v_α − <2ρ, ν>`.
    pub fn discriminant_valuation(&self, datum: &RootDatum) -> Result<Q> {
        let profile = self.valuation_profile(datum)?;
        let nu = self.newton_point(datum);
        Ok(profile.total() * BigInt::from(2) - datum.two_rho_pair(&nu))
    }

    /// `r(γ) = Σ_{α>0} v_α`, checked against `d/2 + <ρ, ν>`.
    pub fn r_gamma(&self, datum: &RootDatum) -> Result<Q> {
        let r = self.valuation_profile(datum)?.total();
        let d = self.discriminant_valuation_direct(datum)?;
        let nu = self.newton_point(datum);
        let other = d / BigInt::from(2) + datum.rho_pair(&nu);
        if other != r {
            return Err(Error::Inconsistent(format!(
                "r = {} but d/2 + <ρ,ν> = {}",
                fmt_q(&r),
                fmt_q(&other)
            )));
        }
        Ok(r)
    }

    pub fn twist(&self, datum: &RootDatum) -> WeylElement {
        match self {
            TorusElement::Concrete { .. } => datum.dual_system().identity_element(),
            TorusElement::Abstract { w, .. } => w.clone(),
        }
    }

    /// `c(γ) = rank − dim (Λ⊗ℚ)^{w}` via the rank of `M_w − I`.
    pub fn c_gamma(&self, datum: &RootDatum) -> usize {
        let w = self.twist(datum);
        let r = datum.rank();
        let m: QMatrix = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| q(w.matrix()[i][j] - i64::from(i == j)))
                    .collect()
            })
            .collect();
        rank(&m)
    }

    /// `c(γ)` via the trace of the averaging projector `(1/e) Σ_k M_w^k`.
    pub fn c_gamma_by_trace(&self, datum: &RootDatum) -> usize {
        let w = self.twist(datum);
        let e = w.order();
        let r = datum.rank();
        let mut power = crate::root_system::identity(r);
        let mut trace_sum = 0i64;
        for _ in 0..e {
            trace_sum += (0..r).map(|i| power[i][i]).sum::<i64>();
            power = matmul(&power, w.matrix());
        }
        r - (trace_sum / e as i64) as usize
    }

    /// All invariants, with both `d` routes and both `c` routes compared.
    pub fn invariants(&self, datum: &RootDatum) -> Result<GammaInvariants> {
        let newton = self.newton_point(datum);
        let profile = self.valuation_profile(datum)?;
        let d = self.discriminant_valuation(datum)?;
        let d_direct = self.discriminant_valuation_direct(datum)?;
        if d != d_direct {
            return Err(Error::Inconsistent(format!(
                "d(γ): split form {} vs direct sum {}",
                fmt_q(&d),
                fmt_q(&d_direct)
            )));
        }
        let r = self.r_gamma(datum)?;
        let c = self.c_gamma(datum);
        if c != self.c_gamma_by_trace(datum) {
            return Err(Error::Inconsistent(
                "c(γ) rank and trace computations differ".into(),
            ));
        }
        let mut warnings = Vec::new();
        if !is_integral(&d) {
            warnings.push(format!("d(γ) = {} is not an integer", fmt_q(&d)));
        }
        if let TorusElement::Concrete { .. } = self {
            if let Err(msg) = profile.check_ultrametric(datum, &newton) {
                return Err(Error::Inconsistent(format!(
                    "concrete profile violates the ultrametric inequality: {msg}"
                )));
            }
        }
        if !self.is_validated() {
            warnings.push("unvalidated input: profile fails the ultrametric check".into());
        }
        Ok(GammaInvariants {
            newton,
            profile,
            d,
            d_direct,
            r,
            c,
            warnings,
        })
    }

    pub fn from_json(datum: &RootDatum, text: &str) -> Result<Self> {
        let raw: GammaJson = serde_json::from_str(text)
            .map_err(|e| Error::MalformedSpec(format!("gamma JSON: {e}")))?;
        match raw {
            GammaJson::Concrete { mu, units } => {
                let mu = datum.coweight_from_user(&mu)?;
                let units = units.unwrap_or_else(|| vec![LaurentSeries::one(); datum.total_rank()]);
                Self::concrete(datum, mu, units)
            }
            GammaJson::Abstract {
                e,
                w,
                nu,
                profile,
                allow_unvalidated,
            } => {
                let w = datum.parse_weyl_word(&w)?;
                let nu = datum.coweight_from_user(&nu)?;
                let values = profile
                    .into_iter()
                    .map(|(k, v)| {
                        let i = k.parse::<usize>().map_err(|_| {
                            Error::MalformedSpec(format!("profile key {k:?} is not a root index"))
                        })?;
                        Ok((i, v.0))
                    })
                    .collect::<Result<BTreeMap<_, _>>>()?;
                Self::ramified(
                    datum,
                    e,
                    w,
                    nu,
                    ValuationProfile::new(values),
                    allow_unvalidated,
                )
            }
        }
    }

    pub fn to_json(&self, datum: &RootDatum) -> Value {
        let user = |c: &CoweightQ| -> Vec<String> {
            datum.coweight_to_user(c).iter().map(fmt_q).collect()
        };
        match self {
            TorusElement::Concrete { mu, units } => json!({
                "model": "concrete",
                "mu": user(mu),
                "units": units,
            }),
            TorusElement::Abstract {
                e,
                w,
                nu,
                profile,
                validated,
            } => {
                let mut v = json!({
                    "model": "abstract",
                    "e": e,
                    "w": w.word_string(),
                    "nu": user(nu),
                    "profile": profile.to_json(),
                });
                if !validated {
                    v["allow_unvalidated"] = json!(true);
                }
                v
            }
        }
    }
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
enum GammaJson {
    Concrete {
        #[serde(with = "serde_qvec")]
        mu: Vec<Q>,
        #[serde(default)]
        units: Option<Vec<LaurentSeries>>,
    },
    Abstract {
        e: u32,
        #[serde(default)]
        w: String,
        #[serde(with = "serde_qvec")]
        nu: Vec<Q>,
        #[serde(default)]
        profile: BTreeMap<String, QWrap>,
        #[serde(default)]
        allow_unvalidated: bool,
    },
}

#[derive(Debug, Deserialize, Serialize)]
struct QWrap(#[serde(with = "serde_q")] Q);

/// `χ(γ) = N / D` with `N = ϖ^{<χ,μ>} Π_{e_k>0} u_k^{e_k}` and
/// `D = Π_{e_k<0} u_k^{-e_k}`, avoiding series inversion.
fn evaluate_fraction(
    datum: &RootDatum,
    mu: &CoweightQ,
    units: &[LaurentSeries],
    chi: &[i64],
) -> Result<(LaurentSeries, LaurentSeries)> {
    let m = crate::rational::to_i64(&dot_i(chi, &mu.ss)).ok_or_else(|| {
        Error::InvalidTorusElement("character does not pair integrally with mu".into())
    })?;
    let mut num = LaurentSeries::uniformizer_power(m);
    let mut den = LaurentSeries::one();
    for (b, u) in datum.lattice_basis().iter().zip(units) {
        let exp = crate::rational::to_i64(&dot_i(chi, &b[..datum.rank()]))
            .ok_or_else(|| Error::Inconsistent("roots must be integral on the lattice".into()))?;
        match exp {
            0 => {}
            e if e > 0 => num = num.mul(&u.pow(e)?),
            e => den = den.mul(&u.pow(-e)?),
        }
    }
    Ok((num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_frac;

    fn gl(n: usize) -> RootDatum {
        RootDatum::general_linear(n).unwrap()
    }

    fn series(lead: i64, c: &[i64]) -> LaurentSeries {
        LaurentSeries::from_ints(lead, c, None)
    }

    #[test]
    fn gl2_uniformizer_fixture() {
        let d = gl(2);
        let g = TorusElement::uniformizer(&d, d.parse_coweight("1,0").unwrap()).unwrap();
        let inv = g.invariants(&d).unwrap();
        assert_eq!(d.format_coweight(&inv.newton), "1,0");
        assert_eq!(inv.d, q(-1));
        assert_eq!(inv.r, q(0));
        assert_eq!(inv.c, 0);
        assert!(inv.profile.is_zero());
        let swapped = TorusElement::uniformizer(&d, d.parse_coweight("0,1").unwrap()).unwrap();
        assert_eq!(d.format_coweight(&swapped.newton_point(&d)), "1,0");
    }

    #[test]
    fn gl2_units_profile() {
        let d = gl(2);
        let g = TorusElement::concrete(
            &d,
            d.parse_coweight("0,0").unwrap(),
            vec![series(0, &[1, 1]), series(0, &[1])],
        )
        .unwrap();
        assert_eq!(g.valuation_profile(&d).unwrap().get(0), q(1));
        assert_eq!(g.discriminant_valuation(&d).unwrap(), q(2));
        let g3 = TorusElement::concrete(
            &d,
            CoweightQ::zero(1, 1),
            vec![series(0, &[1, 0, 0, 5]), series(0, &[1])],
        )
        .unwrap();
        assert_eq!(g3.r_gamma(&d).unwrap(), q(3));
        let bad = TorusElement::concrete(
            &d,
            CoweightQ::zero(1, 1),
            vec![series(0, &[1]), series(0, &[1])],
        )
        .unwrap();
        assert!(matches!(
            bad.valuation_profile(&d),
            Err(Error::NotRegularSemisimple(_))
        ));
        let murky = TorusElement::concrete(
            &d,
            CoweightQ::zero(1, 1),
            vec![LaurentSeries::from_ints(0, &[1], Some(4)), series(0, &[1])],
        )
        .unwrap();
        assert!(matches!(
            murky.valuation_profile(&d),
            Err(Error::InconclusiveTruncation(4))
        ));
    }

    #[test]
    fn ramified_c_values() {
        let d = gl(2);
        let s = d.parse_weyl_word("s1").unwrap();
        let nu = d.parse_coweight("1/2,1/2").unwrap();
        let g = TorusElement::ramified(&d, 2, s.clone(), nu, ValuationProfile::default(), false)
            .unwrap();
        assert_eq!(g.c_gamma(&d), 1);
        assert_eq!(g.c_gamma_by_trace(&d), 1);
        assert_eq!(d.format_coweight(&g.newton_point(&d)), "1/2,1/2");
        let mut p = BTreeMap::new();
        p.insert(0, q_frac(1, 3));
        let wrong = TorusElement::ramified(
            &d,
            2,
            s,
            CoweightQ::zero(1, 1),
            ValuationProfile::new(p),
            false,
        );
        assert!(matches!(wrong, Err(Error::InvalidTorusElement(_))));
    }

    #[test]
    fn json_forms() {
        let d = gl(2);
        let g = TorusElement::from_json(
            &d,
            r#"{"model":"abstract","e":2,"w":"s1","nu":["1/2","1/2"],"profile":{"0":"1/2"}}"#,
        );
        let g = g.unwrap();
        let inv = g.invariants(&d).unwrap();
        assert_eq!((inv.d.clone(), inv.c), (q(1), 1));
        let again = TorusElement::from_json(&d, &g.to_json(&d).to_string()).unwrap();
        assert_eq!(again, g);
        let c = TorusElement::from_json(
            &d,
            r#"{"model":"concrete","mu":[1,0],"units":[{"lead":0,"coeffs":[1]},{"coeffs":["2"]}]}"#,
        )
        .unwrap();
        assert_eq!(
            TorusElement::from_json(&d, &c.to_json(&d).to_string()).unwrap(),
            c
        );
        assert!(TorusElement::from_json(
            &d,
            r#"{"model":"concrete","mu":[1,0],"units":[{"lead":1,"coeffs":[1]},{"coeffs":[1]}]}"#
        )
        .is_err());
        assert!(TorusElement::from_json(&d, r#"{"model":"split","mu":[1,0]}"#).is_err());
    }
}
