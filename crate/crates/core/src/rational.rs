//! Exact rational scalars and the small dense linear algebra the rest of the
//! crate needs (inverses, ranks, determinants of matrices of size ≤ 9).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

/// Exact rational number used for every coordinate in the crate.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qvec(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::MalformedSpec(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

/// Parses a comma separated list of rationals, e.g. `"1/2,-1,0"`.
pub fn parse_qlist(s: &str) -> Result<Vec<Q>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_q).collect()
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn fmt_qlist(v: &[Q]) -> String {
    v.iter().map(fmt_q).collect::<Vec<_>>().join(",")
}

pub fn is_integral(x: &Q) -> bool {
    x.is_integer()
}

/// Converts an integral rational to `i64`; `None` if fractional or too large.
pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn lcm_of_denominators(v: &[Q]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_i(a: &[i64], b: &[Q]) -> Q {
    a.iter()
        .zip(b)
        .fold(Q::zero(), |acc, (&x, y)| acc + y * BigInt::from(x))
}

pub type QMatrix = Vec<Vec<Q>>;

pub fn to_qmatrix(m: &[Vec<i64>]) -> QMatrix {
    m.iter().map(|row| qvec(row)).collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// `v · M` for a row vector `v`.
pub fn row_times(v: &[Q], m: &QMatrix) -> Vec<Q> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| {
            v.iter()
                .zip(m)
                .fold(Q::zero(), |acc, (x, row)| acc + x * &row[j])
        })
        .collect()
}

/// `M · v` for a column vector `v`.
pub fn times_col(m: &QMatrix, v: &[Q]) -> Vec<Q> {
    m.iter().map(|row| dot(row, v)).collect()
}

/// Gauss-Jordan inverse; `None` for singular input.
pub fn inverse(m: &QMatrix) -> Option<QMatrix> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row.iter()) {
                    *x = &*x - &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Rank by row reduction.
pub fn rank(m: &QMatrix) -> usize {
    let mut a = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in 0..rows {
            if r != rank && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[rank][col];
                let pivot_row = a[rank].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row.iter()) {
                    *x = &*x - &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn determinant(m: &QMatrix) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Q::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        det = &det * &a[col][col];
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row.iter()) {
                    *x = &*x - &f * y;
                }
            }
        }
    }
    det
}

/// An integer vector `z` with `Σ z_i rows[i] = target`, if one exists.
pub fn solve_integral(rows: &[Vec<Q>], target: &[Q]) -> Option<Vec<BigInt>> {
    let n = rows.len();
    let k = target.len();
    let denom = rows
        .iter()
        .flatten()
        .chain(target)
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scale = |x: &Q| (x * &denom).to_integer();
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(scale).collect()).collect();
    let mut t: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(i64::from(i == j))).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut p = 0;
    for col in 0..k {
        loop {
            let best = (p..n)
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()));
            let Some(b) = best else { break };
            a.swap(p, b);
            t.swap(p, b);
            let mut done = true;
            for i in p + 1..n {
                if a[i][col].is_zero() {
                    continue;
                }
                let f = a[i][col].div_floor(&a[p][col]);
                for c in 0..k {
                    let d = &f * &a[p][c];
                    a[i][c] -= d;
                }
                for c in 0..n {
                    let d = &f * &t[p][c];
                    t[i][c] -= d;
                }
                done &= a[i][col].is_zero();
            }
            if done {
                pivots.push((p, col));
                p += 1;
                break;
            }
        }
        if p == n {
            break;
        }
    }
    let mut residual: Vec<BigInt> = target.iter().map(scale).collect();
    let mut y = vec![BigInt::zero(); n];
    for &(row, col) in &pivots {
        let (quot, rem) = residual[col].div_rem(&a[row][col]);
        if !rem.is_zero() {
            return None;
        }
        for c in 0..k {
            let d = &quot * &a[row][c];
            residual[c] -= d;
        }
        y[row] = quot;
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(
        (0..n)
            .map(|j| (0..n).fold(BigInt::zero(), |acc, i| acc + &y[i] * &t[i][j]))
            .collect(),
    )
}

pub fn is_nonnegative(v: &[Q]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

pub fn is_positive(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_positive())
}

pub mod serde_q {
    //! Rationals serialized as `"p/q"` strings.
    use super::*;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        value_to_q(&v).map_err(serde::de::Error::custom)
    }

    pub(crate) fn value_to_q(v: &serde_json::Value) -> std::result::Result<Q, String> {
        match v {
            serde_json::Value::String(s) => parse_q(s).map_err(|e| e.to_string()),
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(q)
                .ok_or_else(|| format!("expected an integer or \"p/q\" string, got {n}")),
            other => Err(format!("expected a rational, got {other}")),
        }
    }
}

pub mod serde_qvec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&fmt_q(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Q>, D::Error> {
        let v = Vec::<serde_json::Value>::deserialize(d)?;
        v.iter()
            .map(|x| serde_q::value_to_q(x).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("3/6").unwrap(), q_frac(1, 2));
        assert_eq!(parse_q(" -4 ").unwrap(), q(-4));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
        assert_eq!(fmt_q(&q_frac(-2, 4)), "-1/2");
        assert_eq!(fmt_qlist(&parse_qlist("1,1/2").unwrap()), "1,1/2");
    }

    #[test]
    fn inverse_of_a2_cartan() {
        let c = to_qmatrix(&[vec![2, -1], vec![-1, 2]]);
        let inv = inverse(&c).unwrap();
        assert_eq!(inv[0][0], q_frac(2, 3));
        assert_eq!(inv[0][1], q_frac(1, 3));
        assert_eq!(determinant(&c), q(3));
        assert_eq!(rank(&c), 2);
        assert!(inverse(&to_qmatrix(&[vec![1, 2], vec![2, 4]])).is_none());
    }

    #[test]
    fn integral_solutions() {
        let rows = vec![qvec(&[4, 6]), qvec(&[6, 9]), qvec(&[2, 4])];
        let z = solve_integral(&rows, &qvec(&[2, 2])).unwrap();
        let back: Vec<BigInt> = (0..2)
            .map(|c| {
                (0..3).fold(BigInt::zero(), |acc, i| {
                    acc + &z[i] * rows[i][c].to_integer()
                })
            })
            .collect();
        assert_eq!(back, vec![BigInt::from(2), BigInt::from(2)]);
        assert!(solve_integral(&rows, &qvec(&[1, 0])).is_none());
        assert!(solve_integral(&[vec![q_frac(1, 2)]], &[q_frac(3, 2)]).is_some());
    }
}
