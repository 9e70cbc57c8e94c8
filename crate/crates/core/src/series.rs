//! Truncated Laurent series in `ϖ` with exact rational coefficients.
//!
//! A series is either an exact Laurent polynomial (`trunc == None`) or is
//! known only for exponents strictly below `trunc`.

use std::cmp::{max, min};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, serde_qvec, Q};

/// Relative precision used when inverting an exact Laurent polynomial that is
/// not a monomial.
pub const DEFAULT_TRUNCATION: i64 = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    lead: i64,
    coeffs: Vec<Q>,
    trunc: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Valuation {
    Finite {
        value: i64,
    },
    /// Every known coefficient vanishes; the valuation is at least `at_least`.
    Inconclusive {
        at_least: i64,
    },
    /// The exact zero series.
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite { value } => Some(value),
            _ => None,
        }
    }

    /// A certified lower bound (`i64::MAX` for the zero series).
    pub fn lower_bound(self) -> i64 {
        match self {
            Valuation::Finite { value } => value,
            Valuation::Inconclusive { at_least } => at_least,
            Valuation::Infinite => i64::MAX,
        }
    }

    pub fn is_certified(self) -> bool {
        !matches!(self, Valuation::Inconclusive { .. })
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite { value } => write!(f, "{value}"),
            Valuation::Inconclusive { at_least } => write!(f, "INCONCLUSIVE(>={at_least})"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Wire form: `{"lead": e, "coeffs": ["p/q", ...], "trunc": N}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesJson {
    #[serde(default)]
    pub lead: i64,
    #[serde(with = "serde_qvec")]
    pub coeffs: Vec<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trunc: Option<i64>,
}

impl Serialize for LaurentSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson {
            lead: self.lead,
            coeffs: self.coeffs.clone(),
            trunc: self.trunc,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SeriesJson::deserialize(d)?;
        Ok(LaurentSeries::new(j.lead, j.coeffs, j.trunc))
    }
}

impl LaurentSeries {
    /// Builds `Σ coeffs[k] ϖ^{lead+k}`, known below `trunc`, in canonical form.
    pub fn new(lead: i64, coeffs: Vec<Q>, trunc: Option<i64>) -> Self {
        let mut s = LaurentSeries {
            lead,
            coeffs,
            trunc,
        };
        s.normalize();
        s
    }

    pub fn from_ints(lead: i64, coeffs: &[i64], trunc: Option<i64>) -> Self {
        Self::new(lead, coeffs.iter().map(|&c| q(c)).collect(), trunc)
    }

    pub fn zero() -> Self {
        Self::new(0, Vec::new(), None)
    }

    /// Zero known only below `n`.
    pub fn zero_to(n: i64) -> Self {
        Self::new(n, Vec::new(), Some(n))
    }

    pub fn one() -> Self {
        Self::monomial(q(1), 0)
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Q, k: i64) -> Self {
        Self::new(k, vec![c], None)
    }

    /// `ϖ^k`.
    pub fn uniformizer_power(k: i64) -> Self {
        Self::monomial(q(1), k)
    }

    fn normalize(&mut self) {
        if let Some(n) = self.trunc {
            let keep = (n - self.lead).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        let skip = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if skip > 0 {
            self.coeffs.drain(..skip);
            self.lead += skip as i64;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.lead = self.trunc.unwrap_or(0);
        }
    }

    pub fn lead(&self) -> i64 {
        self.lead
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn trunc(&self) -> Option<i64> {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    /// Coefficient of `ϖ^k`, or `None` if it is beyond the truncation.
    pub fn coeff(&self, k: i64) -> Option<Q> {
        if self.trunc.is_some_and(|n| k >= n) {
            return None;
        }
        if k < self.lead || k >= self.lead + self.coeffs.len() as i64 {
            return Some(Q::zero());
        }
        Some(self.coeffs[(k - self.lead) as usize].clone())
    }

    pub fn valuation(&self) -> Valuation {
        match (self.coeffs.is_empty(), self.trunc) {
            (false, _) => Valuation::Finite { value: self.lead },
            (true, None) => Valuation::Infinite,
            (true, Some(n)) => Valuation::Inconclusive { at_least: n },
        }
    }

    /// Lower bound on the valuation used for truncation bookkeeping.
    fn val_bound(&self) -> i64 {
        if self.coeffs.is_empty() {
            self.trunc.unwrap_or(i64::MAX / 4)
        } else {
            self.lead
        }
    }

    /// The same series known only below `n`.
    pub fn truncate(&self, n: i64) -> Self {
        let t = Some(self.trunc.map_or(n, |m| min(m, n)));
        Self::new(self.lead, self.coeffs.clone(), t)
    }

    /// Multiplication by `ϖ^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::new(
            self.lead + k,
            self.coeffs.clone(),
            self.trunc.map(|n| n + k),
        )
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return match self.trunc {
                None => Self::zero(),
                Some(_) => Self::new(self.lead, Vec::new(), self.trunc.map(|_| self.val_bound())),
            };
        }
        Self::new(
            self.lead,
            self.coeffs.iter().map(|x| x * c).collect(),
            self.trunc,
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(&q(-1))
    }

    pub fn add(&self, other: &Self) -> Self {
        let trunc = match (self.trunc, other.trunc) {
            (None, t) | (t, None) => t,
            (Some(a), Some(b)) => Some(min(a, b)),
        };
        let lo = min(self.lead, other.lead);
        let hi = max(
            self.lead + self.coeffs.len() as i64,
            other.lead + other.coeffs.len() as i64,
        );
        let hi = trunc.map_or(hi, |n| min(hi, n));
        let coeffs = (lo..hi.max(lo))
            .map(|k| self.coeff(k).unwrap_or_default() + other.coeff(k).unwrap_or_default())
            .collect();
        Self::new(lo, coeffs, trunc)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if (self.coeffs.is_empty() && self.is_exact())
            || (other.coeffs.is_empty() && other.is_exact())
        {
            return Self::zero();
        }
        let trunc = match (self.trunc, other.trunc) {
            (None, None) => None,
            (Some(na), None) => Some(na + other.val_bound()),
            (None, Some(nb)) => Some(nb + self.val_bound()),
            (Some(na), Some(nb)) => Some(min(na + other.val_bound(), nb + self.val_bound())),
        };
        let mut coeffs =
            vec![Q::zero(); (self.coeffs.len() + other.coeffs.len()).saturating_sub(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        let lead = if coeffs.is_empty() {
            trunc.unwrap_or(0)
        } else {
            self.lead + other.lead
        };
        Self::new(lead, coeffs, trunc)
    }

    fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Multiplicative inverse. Exact non-monomials are expanded to relative
    /// precision [`DEFAULT_TRUNCATION`].
    pub fn inv(&self) -> Result<Self> {
        self.inv_with_precision(DEFAULT_TRUNCATION)
    }

    pub fn inv_with_precision(&self, precision: i64) -> Result<Self> {
        let v = self.valuation().finite().ok_or(Error::NotInvertible)?;
        let a0 = &self.coeffs[0];
        if self.is_exact() && self.is_monomial() {
            return Ok(Self::monomial(a0.recip(), -v));
        }
        let rel = match self.trunc {
            Some(n) => n - v,
            None => precision.max(1),
        };
        let a0inv = a0.recip();
        let mut b: Vec<Q> = Vec::with_capacity(rel as usize);
        for n in 0..rel as usize {
            if n == 0 {
                b.push(a0inv.clone());
                continue;
            }
            let mut acc = Q::zero();
            for k in 1..=n.min(self.coeffs.len() - 1) {
                acc += &self.coeffs[k] * &b[n - k];
            }
            b.push(-acc * &a0inv);
        }
        Ok(Self::new(-v, b, Some(rel - v)))
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// `u^a` for a rational exponent and a principal unit `u = 1 + O(ϖ)`,
    /// expanded to `precision` terms when `u` is exact.
    pub fn principal_unit_power(&self, a: &Q, precision: i64) -> Result<Self> {
        if self.lead != 0 || self.coeffs.first() != Some(&Q::one()) {
            return Err(Error::InvalidTorusElement(
                "rational powers need a series of the form 1 + O(ϖ)".into(),
            ));
        }
        let n = self.trunc.unwrap_or(precision).max(1) as usize;
        let u = |k: usize| self.coeffs.get(k).cloned().unwrap_or_default();
        let mut y = vec![Q::one()];
        for m in 1..n {
            let mut acc = Q::zero();
            for k in 1..=m {
                let uk = u(k);
                if uk.is_zero() {
                    continue;
                }
                let factor = a * BigInt::from(k) - Q::from_integer(BigInt::from(m - k));
                acc += factor * uk * &y[m - k];
            }
            y.push(acc / BigInt::from(m));
        }
        Ok(Self::new(0, y, Some(n as i64)))
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Valuation::Finite { value: 0 }
    }

    /// Whether `self` and `other` agree on every coefficient both know.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let n = match (self.trunc, other.trunc) {
            (None, None) => return self == other,
            (Some(a), None) | (None, Some(a)) => a,
            (Some(a), Some(b)) => min(a, b),
        };
        self.truncate(n) == other.truncate(n)
    }

    pub fn parse_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::MalformedSpec(format!("series JSON: {e}")))
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.lead + i as i64;
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let coef = fmt_q(&mag);
            match (k, coef.as_str()) {
                (0, _) => f.write_str(&coef)?,
                (1, "1") => f.write_str("ϖ")?,
                (1, _) => write!(f, "{coef}ϖ")?,
                (_, "1") => write!(f, "ϖ^{k}")?,
                _ => write!(f, "{coef}ϖ^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        if let Some(n) = self.trunc {
            write!(f, " + O(ϖ^{n})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_frac;

    #[test]
    fn valuations() {
        let s = LaurentSeries::from_ints(2, &[1, 1], Some(10));
        assert_eq!(s.valuation(), Valuation::Finite { value: 2 });
        assert_eq!(
            LaurentSeries::zero_to(10).valuation(),
            Valuation::Inconclusive { at_least: 10 }
        );
        let one_plus = LaurentSeries::from_ints(0, &[1, 1], None);
        assert_eq!(
            one_plus.sub(&LaurentSeries::one()).valuation(),
            Valuation::Finite { value: 1 }
        );
        assert_eq!(LaurentSeries::zero().valuation(), Valuation::Infinite);
    }

    #[test]
    fn products_and_inverses() {
        let p = LaurentSeries::uniformizer_power(1);
        assert_eq!(p.mul(&p.inv().unwrap()), LaurentSeries::one());
        let a = LaurentSeries::from_ints(0, &[1, 1], None);
        let b = LaurentSeries::from_ints(0, &[1, -1], None);
        assert_eq!(a.mul(&b), LaurentSeries::from_ints(0, &[1, 0, -1], None));
        let g = b.inv().unwrap();
        assert_eq!(g.trunc(), Some(DEFAULT_TRUNCATION));
        assert!(g.coeffs().iter().all(|c| *c == q(1)));
        assert_eq!(g.coeffs().len(), DEFAULT_TRUNCATION as usize);
        assert!(matches!(
            LaurentSeries::zero_to(5).inv(),
            Err(Error::NotInvertible)
        ));
    }

    #[test]
    fn truncation_bookkeeping() {
        let a = LaurentSeries::from_ints(1, &[1, 2], Some(6));
        let b = LaurentSeries::from_ints(-1, &[3], Some(4));
        // min(6 + (-1), 4 + 1)
        assert_eq!(a.mul(&b).trunc(), Some(5));
        let inv = a.inv().unwrap();
        assert_eq!(inv.trunc(), Some(4));
        assert!(a.mul(&inv).agrees_with(&LaurentSeries::one()));
    }

    #[test]
    fn rational_powers_of_principal_units() {
        let u = LaurentSeries::from_ints(0, &[1, 1], None);
        let r = u.principal_unit_power(&q_frac(1, 3), 12).unwrap();
        let cube = r.pow(3).unwrap();
        assert!(cube.agrees_with(&u));
        assert_eq!(cube.trunc(), Some(12));
    }

    #[test]
    fn json_round_trip() {
        let s = LaurentSeries::parse_json(r#"{"lead": -1, "coeffs": ["1/2", 0, "3"], "trunc": 7}"#)
            .unwrap();
        assert_eq!(s.coeff(-1), Some(q_frac(1, 2)));
        assert_eq!(s.coeff(7), None);
        let back: LaurentSeries =
            serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
        assert_eq!(s.to_string(), "1/2ϖ^-1 + 3ϖ + O(ϖ^7)");
    }
}
