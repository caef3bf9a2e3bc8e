//! Exact rational vectors.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Formats as `"p/q"`, always including the denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(s.to_string());
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

/// A point or vector of some finite-dimensional rational space.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Value(Vec<Rational>);

impl Value {
    pub fn new(coords: Vec<Rational>) -> Self {
        Value(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Value(vec![Rational::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Value(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Rational) -> Value {
        Value(self.0.iter().map(|c| c * s).collect())
    }

    pub fn checked_add(&self, other: &Value) -> Result<Value> {
        self.check_dim(other)?;
        Ok(Value(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn checked_sub(&self, other: &Value) -> Result<Value> {
        self.check_dim(other)?;
        Ok(Value(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn add_assign(&mut self, other: &Value) {
        assert_eq!(self.dim(), other.dim(), "value dimension mismatch");
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
    }

    pub fn sub_assign(&mut self, other: &Value) {
        assert_eq!(self.dim(), other.dim(), "value dimension mismatch");
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a -= b;
        }
    }

    /// Euclidean norm, computed in floating point.
    pub fn norm_f64(&self) -> f64 {
        self.0
            .iter()
            .map(|c| {
                let x = c.abs().to_f64().unwrap_or(f64::INFINITY);
                x * x
            })
            .sum::<f64>()
            .sqrt()
    }

    /// Canonical text encoding, used as the input of the random-map hash.
    pub fn encode(&self) -> String {
        self.0
            .iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .join(",")
    }

    fn check_dim(&self, other: &Value) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

impl Index<usize> for Value {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Add for &Value {
    type Output = Value;

    fn add(self, rhs: &Value) -> Value {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub for &Value {
    type Output = Value;

    fn sub(self, rhs: &Value) -> Value {
        let mut out = self.clone();
        out.sub_assign(rhs);
        out
    }
}

impl Neg for &Value {
    type Output = Value;

    fn neg(self) -> Value {
        Value(self.0.iter().map(|c| -c).collect())
    }
}

impl FromIterator<Rational> for Value {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        Value(iter.into_iter().collect())
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.encode())
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.0.iter().map(format_rational).collect();
        strs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let strs = Vec::<String>::deserialize(deserializer)?;
        strs.iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map(Value)
            .map_err(serde::de::Error::custom)
    }
}
