//! Exact rational scalars and vectors.
//!
//! Every coordinate in the maximal abelian subspace is carried as a reduced
//! fraction over `i128`. Arithmetic is checked: an overflow panics instead of
//! silently wrapping, since a wrapped value would corrupt every verdict
//! downstream.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Index, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A reduced fraction with positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(Ratio<i128>);

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));

    /// Builds `num/den`. Panics if `den == 0`.
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "rational with zero denominator");
        Rational(Ratio::new(num, den))
    }

    pub fn from_int(n: i128) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn floor(&self) -> i128 {
        Integer::div_floor(&self.numer(), &self.denom())
    }

    pub fn ceil(&self) -> i128 {
        Integer::div_ceil(&self.numer(), &self.denom())
    }

    /// The integer value, if this rational is one.
    pub fn to_integer(&self) -> Option<i128> {
        self.is_integer().then(|| self.numer())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    /// Largest integer `m >= 0` with `m^2 <= self`; zero for negative input.
    pub fn floor_sqrt(&self) -> i128 {
        if !self.is_positive() {
            return 0;
        }
        let target = self.floor();
        let mut m = (target as f64).sqrt() as i128;
        while m * m > target {
            m -= 1;
        }
        while (m + 1) * (m + 1) <= target {
            m += 1;
        }
        m
    }
}

macro_rules! checked_binop {
    ($trait:ident, $method:ident, $checked:ident, $what:literal) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(
                    self.0
                        .$checked(&rhs.0)
                        .unwrap_or_else(|| panic!(concat!("rational overflow in ", $what))),
                )
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                (*self).$method(*rhs)
            }
        }
    };
}

checked_binop!(Add, add, checked_add, "addition");
checked_binop!(Sub, sub, checked_sub, "subtraction");
checked_binop!(Mul, mul, checked_mul, "multiplication");

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rational(
            self.0
                .checked_div(&rhs.0)
                .expect("rational overflow in division"),
        )
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |a, b| a + b)
    }
}

impl From<i128> for Rational {
    fn from(n: i128) -> Self {
        Rational::from_int(n)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n as i128)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_int(n as i128)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p`, `p/q`, with optional sign and surrounding whitespace.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("invalid rational `{s}`"));
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: i128 = num.parse().map_err(|_| bad())?;
        let den: i128 = den.parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        Ok(Rational::new(num, den))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Int(n) => Ok(Rational::from(n)),
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// A vector in the maximal abelian subspace, in the fixed coordinate basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RatVec(pub Vec<Rational>);

impl RatVec {
    pub fn zeros(dim: usize) -> Self {
        RatVec(vec![Rational::ZERO; dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Rational::ONE;
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        RatVec(xs.iter().map(|&x| Rational::from(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    /// Plain coordinate dot product (no metric).
    pub fn dot(&self, other: &RatVec) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| *a * *b).sum()
    }

    pub fn scale(&self, s: Rational) -> RatVec {
        RatVec(self.0.iter().map(|x| *x * s).collect())
    }

    pub fn add(&self, other: &RatVec) -> RatVec {
        RatVec(self.0.iter().zip(&other.0).map(|(a, b)| *a + *b).collect())
    }

    pub fn sub(&self, other: &RatVec) -> RatVec {
        RatVec(self.0.iter().zip(&other.0).map(|(a, b)| *a - *b).collect())
    }

    /// Concatenates two vectors (used for product spaces).
    pub fn concat(&self, other: &RatVec) -> RatVec {
        RatVec(self.0.iter().chain(&other.0).copied().collect())
    }

    /// Parses a comma separated list of rationals, e.g. `2,1/2`.
    pub fn parse_list(s: &str) -> Result<RatVec, Error> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Err(Error::Parse("empty vector".into()));
        }
        s.split(',')
            .map(|c| c.parse::<Rational>())
            .collect::<Result<Vec<_>, _>>()
            .map(RatVec)
    }
}

impl Index<usize> for RatVec {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Vec<Rational>> for RatVec {
    fn from(v: Vec<Rational>) -> Self {
        RatVec(v)
    }
}

/// Greatest common divisor of a list of integers (0 for the empty or all-zero list).
pub fn gcd_all(xs: &[i128]) -> i128 {
    xs.iter().fold(0i128, |g, &x| g.gcd(&x))
}
