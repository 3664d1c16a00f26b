//! Truncated power series with exact integer coefficients, and the
//! partition-function generating series built from them.
//!
//! A [`TruncSeries`] of truncation `N` stores `c_0..=c_N` for the formal
//! variable α; every operation discards terms of degree above `N`.
//! [`BiSeries`] is the two-variable analogue used for bigraded Tor counts,
//! with σ marking the homological degree `s` and α the internal degree `t`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("truncation mismatch: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("constant term {0} is not a unit in the integers")]
    NonUnitConstant(String),
    #[error("bigraded truncation mismatch: ({0},{1}) vs ({2},{3})")]
    BiTruncationMismatch(usize, usize, usize, usize),
}

/// The number of unordered partitions of `n`, by Euler's pentagonal recurrence.
pub fn partitions(n: usize) -> BigInt {
    partition_table(n).pop().expect("table has n+1 entries")
}

/// `p(0), p(1), ..., p(n)`.
pub fn partition_table(n: usize) -> Vec<BigInt> {
    let mut p: Vec<BigInt> = Vec::with_capacity(n + 1);
    p.push(BigInt::one());
    for m in 1..=n {
        let mut acc = BigInt::zero();
        for j in 1.. {
            // generalized pentagonal numbers j(3j-1)/2 and j(3j+1)/2
            let g1 = j * (3 * j - 1) / 2;
            if g1 > m {
                break;
            }
            let sign_pos = j % 2 == 1;
            let g2 = j * (3 * j + 1) / 2;
            let mut term = p[m - g1].clone();
            if g2 <= m {
                term += &p[m - g2];
            }
            if sign_pos {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p.push(acc);
    }
    p
}

/// `p(n)` as a machine integer, for the small arguments used as multiplicities.
/// Negative arguments give 0.
pub fn partitions_u64(n: i64) -> u64 {
    if n < 0 {
        return 0;
    }
    partitions(n as usize)
        .to_u64()
        .expect("partition count exceeds u64")
}

/// Truncated power series `c_0 + c_1 α + ... + c_N α^N` over the integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    coeffs: Vec<BigInt>,
}

impl TruncSeries {
    pub fn zero(trunc: usize) -> Self {
        TruncSeries {
            coeffs: vec![BigInt::zero(); trunc + 1],
        }
    }

    pub fn one(trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// Builds a series from the listed coefficients, padding with zeros or
    /// dropping terms above `trunc`.
    pub fn from_coeffs<I, T>(trunc: usize, coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut s = Self::zero(trunc);
        for (d, c) in coeffs.into_iter().enumerate() {
            if d > trunc {
                break;
            }
            s.coeffs[d] = c.into();
        }
        s
    }

    /// `c · α^d`, or zero when `d > trunc`.
    pub fn monomial(trunc: usize, degree: usize, c: impl Into<BigInt>) -> Self {
        let mut s = Self::zero(trunc);
        if degree <= trunc {
            s.coeffs[degree] = c.into();
        }
        s
    }

    pub fn trunc_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of α^d; zero beyond the truncation.
    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    fn check_same(&self, other: &Self) -> Result<(), SeriesError> {
        if self.trunc_degree() != other.trunc_degree() {
            return Err(SeriesError::TruncationMismatch(
                self.trunc_degree(),
                other.trunc_degree(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_same(other)?;
        Ok(TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_same(other)?;
        Ok(TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_same(other)?;
        let n = self.trunc_degree();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse; the constant term must be ±1.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let c0 = &self.coeffs[0];
        if c0.abs() != BigInt::one() {
            return Err(SeriesError::NonUnitConstant(c0.to_string()));
        }
        let n = self.trunc_degree();
        let mut inv = Self::zero(n);
        inv.coeffs[0] = c0.clone();
        for d in 1..=n {
            let mut acc = BigInt::zero();
            for i in 1..=d {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &inv.coeffs[d - i];
                }
            }
            // c0 * b_d = -acc and c0 = ±1, so b_d = -c0 * acc
            inv.coeffs[d] = -(c0 * acc);
        }
        Ok(inv)
    }

    /// `self^e` for any integer exponent; negative exponents go through [`inverse`](Self::inverse).
    pub fn pow(&self, exponent: i64) -> Result<Self, SeriesError> {
        let base = if exponent < 0 {
            self.inverse()?
        } else {
            self.clone()
        };
        let mut e = exponent.unsigned_abs();
        let mut acc = Self::one(self.trunc_degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Drops terms above `trunc` (or zero-pads when `trunc` is larger).
    pub fn truncate_to(&self, trunc: usize) -> Self {
        Self::from_coeffs(trunc, self.coeffs.iter().cloned())
    }

    /// The substitution α ↦ α^`factor`, truncated at `trunc`.
    pub fn substitute_power(&self, factor: usize, trunc: usize) -> Self {
        assert!(factor >= 1, "substitution exponent must be positive");
        let mut out = Self::zero(trunc);
        for (d, c) in self.coeffs.iter().enumerate() {
            let target = d * factor;
            if target > trunc {
                break;
            }
            out.coeffs[target] = c.clone();
        }
        out
    }
}

/// Truncated product of `base^exponent` over the factors. An empty list
/// gives the constant series 1 at truncation `trunc`.
pub fn product_pow(trunc: usize, factors: &[(TruncSeries, i64)]) -> Result<TruncSeries, SeriesError> {
    let mut acc = TruncSeries::one(trunc);
    for (base, e) in factors {
        acc = acc.mul(&base.pow(*e)?)?;
    }
    Ok(acc)
}

/// `1 + sign·α^d` at truncation `trunc`; the building block of every
/// partition-type product.
pub fn binomial_factor(trunc: usize, degree: usize, sign: i64) -> TruncSeries {
    let mut s = TruncSeries::one(trunc);
    if degree <= trunc {
        s.coeffs[degree] += BigInt::from(sign);
    }
    s
}

/// `∏_{m=1..N} (1 - α^m)^{-1}`, the generating function of `p(d)`.
pub fn partition_generating_series(trunc: usize) -> TruncSeries {
    let factors: Vec<_> = (1..=trunc)
        .map(|m| (binomial_factor(trunc, m, -1), -1))
        .collect();
    product_pow(trunc, &factors).expect("unit constant terms")
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries(N={}; ", self.trunc_degree())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (d, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "a")?,
                (1, false) => write!(f, "{mag}a")?,
                (_, true) => write!(f, "a^{d}")?,
                (_, false) => write!(f, "{mag}a^{d}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(a^{})", self.trunc_degree() + 1)
    }
}

pub(crate) fn serialize_bigint<S: serde::Serializer>(c: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&bigint_to_json(c), serializer)
}

pub(crate) fn bigint_to_json(c: &BigInt) -> serde_json::Number {
    c.to_string()
        .parse()
        .expect("decimal integers are valid JSON numbers")
}

fn json_to_bigint(n: &serde_json::Number) -> Result<BigInt, String> {
    n.to_string()
        .parse::<BigInt>()
        .map_err(|_| format!("coefficient {n} is not an integer"))
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    trunc: usize,
    coeffs: Vec<serde_json::Number>,
}

impl Serialize for TruncSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SeriesJson {
            trunc: self.trunc_degree(),
            coeffs: self.coeffs.iter().map(bigint_to_json).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TruncSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = SeriesJson::deserialize(deserializer)?;
        if raw.coeffs.len() != raw.trunc + 1 {
            return Err(D::Error::custom(format!(
                "expected {} coefficients for trunc {}, found {}",
                raw.trunc + 1,
                raw.trunc,
                raw.coeffs.len()
            )));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(json_to_bigint)
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        Ok(TruncSeries { coeffs })
    }
}

/// Bigraded truncated series `Σ c_{s,t} σ^s α^t`, `0 ≤ s ≤ S`, `0 ≤ t ≤ N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    s_trunc: usize,
    t_trunc: usize,
    // row-major in s
    coeffs: Vec<BigInt>,
}

impl BiSeries {
    pub fn zero(s_trunc: usize, t_trunc: usize) -> Self {
        BiSeries {
            s_trunc,
            t_trunc,
            coeffs: vec![BigInt::zero(); (s_trunc + 1) * (t_trunc + 1)],
        }
    }

    pub fn one(s_trunc: usize, t_trunc: usize) -> Self {
        let mut b = Self::zero(s_trunc, t_trunc);
        b.coeffs[0] = BigInt::one();
        b
    }

    pub fn s_trunc(&self) -> usize {
        self.s_trunc
    }

    pub fn t_trunc(&self) -> usize {
        self.t_trunc
    }

    fn idx(&self, s: usize, t: usize) -> usize {
        s * (self.t_trunc + 1) + t
    }

    pub fn coeff(&self, s: usize, t: usize) -> BigInt {
        if s > self.s_trunc || t > self.t_trunc {
            return BigInt::zero();
        }
        self.coeffs[self.idx(s, t)].clone()
    }

    pub fn set(&mut self, s: usize, t: usize, c: impl Into<BigInt>) {
        if s <= self.s_trunc && t <= self.t_trunc {
            let i = self.idx(s, t);
            self.coeffs[i] = c.into();
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        if (self.s_trunc, self.t_trunc) != (other.s_trunc, other.t_trunc) {
            return Err(SeriesError::BiTruncationMismatch(
                self.s_trunc,
                self.t_trunc,
                other.s_trunc,
                other.t_trunc,
            ));
        }
        let mut out = Self::zero(self.s_trunc, self.t_trunc);
        for s1 in 0..=self.s_trunc {
            for t1 in 0..=self.t_trunc {
                let a = &self.coeffs[self.idx(s1, t1)];
                if a.is_zero() {
                    continue;
                }
                for s2 in 0..=self.s_trunc - s1 {
                    for t2 in 0..=self.t_trunc - t1 {
                        let b = &other.coeffs[other.idx(s2, t2)];
                        if !b.is_zero() {
                            let i = out.idx(s1 + s2, t1 + t2);
                            out.coeffs[i] += a * b;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Multiplies in place by `(1 + σ α^t)^mult`.
    pub fn mul_exterior_factor(&mut self, t: usize, mult: u64) {
        for _ in 0..mult {
            if t > self.t_trunc || self.s_trunc == 0 {
                return;
            }
            for s in (1..=self.s_trunc).rev() {
                for tt in (t..=self.t_trunc).rev() {
                    let add = self.coeffs[self.idx(s - 1, tt - t)].clone();
                    if !add.is_zero() {
                        let i = self.idx(s, tt);
                        self.coeffs[i] += add;
                    }
                }
            }
        }
    }

    /// Collapses onto total degree `s + t`, keeping degrees `≤ trunc`.
    pub fn total_degree(&self, trunc: usize) -> TruncSeries {
        let mut out = TruncSeries::zero(trunc);
        for s in 0..=self.s_trunc {
            for t in 0..=self.t_trunc {
                if s + t <= trunc {
                    out.coeffs[s + t] += &self.coeffs[self.idx(s, t)];
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(trunc: usize, c: &[i64]) -> TruncSeries {
        TruncSeries::from_coeffs(trunc, c.iter().copied())
    }

    /// Counts partitions of `n` into parts of size at most `max` by explicit enumeration.
    fn brute_partitions(n: usize, max: usize) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=max.min(n)).map(|part| brute_partitions(n - part, part)).sum()
    }

    #[test]
    fn partition_values() {
        assert_eq!(partitions(0), BigInt::from(1));
        assert_eq!(partitions(4), BigInt::from(brute_partitions(4, 4)));
        assert_eq!(brute_partitions(4, 4), 5);
        assert_eq!(brute_partitions(10, 10), 42);
        assert_eq!(partitions(10), BigInt::from(42));
        for n in 0..=25 {
            assert_eq!(partitions(n), BigInt::from(brute_partitions(n, n)), "p({n})");
        }
        assert_eq!(partitions_u64(-1), 0);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(s(3, &[1, 1]).mul(&s(3, &[1, -1])).unwrap(), s(3, &[1, 0, -1]));
        assert_eq!(s(3, &[1, 1]).mul(&s(3, &[1])).unwrap(), s(3, &[1, 1]));
        // convolution: (1+a+a^2+a^3)(1+2a^3) = 1+a+a^2+3a^3+2a^4 (+2a^5.. dropped)
        assert_eq!(
            s(4, &[1, 1, 1, 1]).mul(&s(4, &[1, 0, 0, 2])).unwrap(),
            s(4, &[1, 1, 1, 3, 2])
        );
        assert_eq!(
            s(3, &[1]).mul(&s(4, &[1])),
            Err(SeriesError::TruncationMismatch(3, 4))
        );
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(s(3, &[1, 1]).inverse().unwrap(), s(3, &[1, -1, 1, -1]));
        assert_eq!(s(3, &[1]).inverse().unwrap(), s(3, &[1]));
        assert_eq!(s(4, &[1, -1]).inverse().unwrap(), s(4, &[1, 1, 1, 1, 1]));
        assert_eq!(s(2, &[-1, 1]).inverse().unwrap(), s(2, &[-1, -1, -1]));
        assert!(matches!(
            s(3, &[2, 1]).inverse(),
            Err(SeriesError::NonUnitConstant(_))
        ));
        assert!(s(3, &[0, 1]).inverse().is_err());
    }

    #[test]
    fn product_pow_examples() {
        let g = partition_generating_series(6);
        assert_eq!(g, s(6, &[1, 1, 2, 3, 5, 7, 11]));
        for d in 0..=6 {
            assert_eq!(g.coeff(d), BigInt::from(brute_partitions(d, d)));
        }
        assert_eq!(product_pow(5, &[]).unwrap(), TruncSeries::one(5));
        assert_eq!(product_pow(2, &[(s(2, &[1, 1]), 2)]).unwrap(), s(2, &[1, 2, 1]));
        assert!(product_pow(2, &[(s(2, &[3, 1]), -1)]).is_err());
    }

    #[test]
    fn substitution_and_display() {
        let a = s(3, &[1, 2, 3, 4]);
        assert_eq!(a.substitute_power(2, 6), s(6, &[1, 0, 2, 0, 3, 0, 4]));
        assert_eq!(a.substitute_power(2, 4), s(4, &[1, 0, 2, 0, 3]));
        assert_eq!(s(3, &[1, 0, -1]).to_string(), "1 - a^2 + O(a^4)");
        assert_eq!(TruncSeries::zero(1).to_string(), "0 + O(a^2)");
    }

    #[test]
    fn json_shape() {
        let a = s(2, &[1, -3, 7]);
        let j = serde_json::to_string(&a).unwrap();
        assert_eq!(j, r#"{"trunc":2,"coeffs":[1,-3,7]}"#);
        let back: TruncSeries = serde_json::from_str(&j).unwrap();
        assert_eq!(back, a);
        let big = TruncSeries::from_coeffs(0, [BigInt::from(10).pow(40)]);
        let j = serde_json::to_string(&big).unwrap();
        assert_eq!(j, format!(r#"{{"trunc":0,"coeffs":[1{}]}}"#, "0".repeat(40)));
        assert_eq!(serde_json::from_str::<TruncSeries>(&j).unwrap(), big);
        assert!(serde_json::from_str::<TruncSeries>(r#"{"trunc":2,"coeffs":[1]}"#).is_err());
    }

    #[test]
    fn biseries_exterior_and_collapse() {
        // (1 + σ)^2 with no internal degree
        let mut b = BiSeries::one(3, 2);
        b.mul_exterior_factor(0, 2);
        assert_eq!(b.coeff(1, 0), BigInt::from(2));
        assert_eq!(b.coeff(2, 0), BigInt::from(1));
        assert_eq!(b.coeff(3, 0), BigInt::from(0));
        // (1 + σα)^2
        let mut c = BiSeries::one(3, 3);
        c.mul_exterior_factor(1, 2);
        assert_eq!(c.coeff(1, 1), BigInt::from(2));
        assert_eq!(c.coeff(2, 2), BigInt::from(1));
        assert_eq!(c.total_degree(4), s(4, &[1, 0, 2, 0, 1]));
        let mut d = BiSeries::one(3, 3);
        d.mul_exterior_factor(1, 1);
        assert_eq!(d.mul(&d).unwrap(), c);
    }

    fn arb_series(trunc: usize) -> impl Strategy<Value = TruncSeries> {
        proptest::collection::vec(-50i64..50, trunc + 1)
            .prop_map(move |v| TruncSeries::from_coeffs(trunc, v))
    }

    fn arb_unit_series(trunc: usize) -> impl Strategy<Value = TruncSeries> {
        (prop::bool::ANY, proptest::collection::vec(-50i64..50, trunc)).prop_map(
            move |(neg, rest)| {
                let c0 = if neg { -1 } else { 1 };
                TruncSeries::from_coeffs(trunc, std::iter::once(c0).chain(rest))
            },
        )
    }

    proptest! {
        #[test]
        fn inverse_is_two_sided(a in arb_unit_series(9)) {
            let inv = a.inverse().unwrap();
            prop_assert_eq!(a.mul(&inv).unwrap(), TruncSeries::one(9));
            prop_assert_eq!(inv.mul(&a).unwrap(), TruncSeries::one(9));
        }

        #[test]
        fn mul_commutative_associative(a in arb_series(7), b in arb_series(7), c in arb_series(7)) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        }

        #[test]
        fn truncation_consistency(a in arb_unit_series(10), b in arb_series(10), low in 0usize..10) {
            let full = a.inverse().unwrap().mul(&b).unwrap().truncate_to(low);
            let direct = a.truncate_to(low).inverse().unwrap().mul(&b.truncate_to(low)).unwrap();
            prop_assert_eq!(full, direct);
        }

        #[test]
        fn pow_matches_repeated_mul(a in arb_unit_series(6), e in -4i64..5) {
            let mut expect = TruncSeries::one(6);
            let base = if e < 0 { a.inverse().unwrap() } else { a.clone() };
            for _ in 0..e.unsigned_abs() {
                expect = expect.mul(&base).unwrap();
            }
            prop_assert_eq!(a.pow(e).unwrap(), expect);
        }
    }
}
