//! Exact rational parameter vectors `(a, b, c, d)`.
//!
//! The same type carries even-coloring parameters `(w, x, y, z)`; the
//! positional correspondence is a↔w, b↔x, c↔y, d↔z.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::states::VertexClass;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("malformed rational `{0}`")]
    Malformed(String),
    #[error("expected 4 comma-separated parameters, got {0}")]
    Arity(usize),
}

/// Parses `7`, `-3/4`, or `1.25` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, ParamError> {
    let s = s.trim();
    let bad = || ParamError::Malformed(s.to_string());
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_part = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int).map_err(|_| bad())?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac_part = BigInt::from_str(frac).map_err(|_| bad())?;
        let magnitude = Rational::new(int_part.abs() * &scale + frac_part, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    BigInt::from_str(s)
        .map(Rational::from_integer)
        .map_err(|_| bad())
}

/// `n` for integers, `n/d` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParamVec(pub [Rational; 4]);

impl ParamVec {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Self([a, b, c, d])
    }

    pub fn from_ints(v: [i64; 4]) -> Self {
        Self(v.map(int))
    }

    pub fn uniform() -> Self {
        Self::from_ints([1, 1, 1, 1])
    }

    pub fn a(&self) -> &Rational {
        &self.0[0]
    }
    pub fn b(&self) -> &Rational {
        &self.0[1]
    }
    pub fn c(&self) -> &Rational {
        &self.0[2]
    }
    pub fn d(&self) -> &Rational {
        &self.0[3]
    }

    /// The weight a vertex of the given class contributes.
    pub fn weight(&self, class: VertexClass) -> &Rational {
        &self.0[class.index()]
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|x| x.is_positive())
    }

    pub fn has_zero(&self) -> bool {
        self.0.iter().any(|x| x.is_zero())
    }

    /// `(a, b, c, -d)`.
    pub fn flip_d(&self) -> Self {
        let [a, b, c, d] = self.0.clone();
        Self([a, b, c, -d])
    }

    /// `(-a, -b, -c, -d)`.
    pub fn negate(&self) -> Self {
        Self(self.0.clone().map(|x| -x))
    }

    /// The planar swap `(b, a, d, c)`.
    pub fn swap_planar(&self) -> Self {
        let [a, b, c, d] = self.0.clone();
        Self([b, a, d, c])
    }

    pub fn to_f64(&self) -> [f64; 4] {
        let f = |x: &Rational| x.to_f64().unwrap_or(f64::NAN);
        [f(&self.0[0]), f(&self.0[1]), f(&self.0[2]), f(&self.0[3])]
    }

    pub fn is_uniform(&self) -> bool {
        self.0.iter().all(|x| x.is_one())
    }
}

impl FromStr for ParamVec {
    type Err = ParamError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(ParamError::Arity(parts.len()));
        }
        let mut v: [Rational; 4] = Default::default();
        for (slot, p) in v.iter_mut().zip(parts) {
            *slot = parse_rational(p)?;
        }
        Ok(Self(v))
    }
}

impl fmt::Display for ParamVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Serialize for ParamVec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        parts.serialize(s)
    }
}
