//! Exact-or-float scalar arithmetic.
//!
//! Sequence elements and correlation values are [`Numeric`]: an
//! arbitrary-precision rational when every input was exact, an `f64`
//! otherwise. Elements of the Fibonacci families grow like `s^M`, which
//! overflows fixed-width integers well inside the lengths covered here, so
//! the exact side uses big rationals throughout.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Pow, Signed, ToPrimitive, Zero};

/// Scaling parameter of a sequence family.
///
/// Carries the exactness flag: values built from integer or rational
/// literals stay exact through every construction, float values take the
/// `f64` path everywhere.
#[derive(Clone, Debug, PartialEq)]
pub enum Scale {
    Exact(BigRational),
    Float(f64),
}

impl Scale {
    pub fn from_int(v: i64) -> Self {
        Scale::Exact(BigRational::from_integer(BigInt::from(v)))
    }

    /// Exact rational p/q. Panics if `q == 0`.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        Scale::Exact(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_f64(v: f64) -> Self {
        Scale::Float(v)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scale::Exact(_))
    }

    pub fn approx(&self) -> f64 {
        match self {
            Scale::Exact(r) => ratio_to_f64(r),
            Scale::Float(v) => *v,
        }
    }

    pub fn to_numeric(&self) -> Numeric {
        match self {
            Scale::Exact(r) => Numeric::from_rational(r.clone()),
            Scale::Float(v) => Numeric::from_f64(*v),
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_numeric())
    }
}

/// Scale parsing: a token containing `/` or no decimal point is exact, a
/// decimal (or scientific) literal is a float.
impl FromStr for Scale {
    type Err = ParseScaleError;

    fn from_str(token: &str) -> Result<Self, Self::Err> {
        let t = token.trim();
        if t.is_empty() {
            return Err(ParseScaleError {
                token: token.to_string(),
            });
        }
        if let Some((p, q)) = t.split_once('/') {
            let p = BigInt::from_str(p.trim()).map_err(|_| ParseScaleError {
                token: token.to_string(),
            })?;
            let q = BigInt::from_str(q.trim()).map_err(|_| ParseScaleError {
                token: token.to_string(),
            })?;
            if q.is_zero() {
                return Err(ParseScaleError {
                    token: token.to_string(),
                });
            }
            return Ok(Scale::Exact(BigRational::new(p, q)));
        }
        if let Ok(n) = BigInt::from_str(t) {
            return Ok(Scale::Exact(BigRational::from_integer(n)));
        }
        t.parse::<f64>()
            .map(Scale::Float)
            .map_err(|_| ParseScaleError {
                token: token.to_string(),
            })
    }
}

/// Token that parses as neither an integer, a `p/q` rational, nor a float.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseScaleError {
    pub token: String,
}

impl fmt::Display for ParseScaleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cannot parse {:?} as a scale (integer, p/q, or float)",
            self.token
        )
    }
}

impl std::error::Error for ParseScaleError {}

/// A scalar that is exact when it can be, float otherwise.
///
/// `approx` is always populated; when `exact` is present it is that rational
/// rounded to the nearest `f64`. Arithmetic between two exact values stays
/// exact; mixing with a float demotes the result to float.
#[derive(Clone, Debug)]
pub struct Numeric {
    exact: Option<BigRational>,
    approx: f64,
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl Numeric {
    pub fn from_rational(r: BigRational) -> Self {
        let approx = ratio_to_f64(&r);
        Numeric {
            exact: Some(r),
            approx,
        }
    }

    pub fn from_i64(v: i64) -> Self {
        Numeric::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    /// Exact rational p/q. Panics if `q == 0`.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        Numeric::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_f64(v: f64) -> Self {
        Numeric {
            exact: None,
            approx: v,
        }
    }

    pub fn zero() -> Self {
        Numeric::from_i64(0)
    }

    pub fn one() -> Self {
        Numeric::from_i64(1)
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn approx(&self) -> f64 {
        self.approx
    }

    pub fn exact(&self) -> Option<&BigRational> {
        self.exact.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        match &self.exact {
            Some(r) => r.is_zero(),
            None => self.approx == 0.0,
        }
    }

    pub fn abs(&self) -> Numeric {
        match &self.exact {
            Some(r) => Numeric::from_rational(r.abs()),
            None => Numeric::from_f64(self.approx.abs()),
        }
    }

    /// Integer power; negative exponents invert (exact zero base panics).
    pub fn powi(&self, exp: i32) -> Numeric {
        match &self.exact {
            Some(r) => Numeric::from_rational(Pow::pow(r, exp)),
            None => Numeric::from_f64(self.approx.powi(exp)),
        }
    }

    fn binary(
        &self,
        other: &Numeric,
        exact_op: impl Fn(&BigRational, &BigRational) -> BigRational,
        float_op: impl Fn(f64, f64) -> f64,
    ) -> Numeric {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => Numeric::from_rational(exact_op(a, b)),
            _ => Numeric::from_f64(float_op(self.approx, other.approx)),
        }
    }
}

impl PartialEq for Numeric {
    fn eq(&self, other: &Self) -> bool {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => a == b,
            _ => self.approx == other.approx,
        }
    }
}

impl PartialOrd for Numeric {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => Some(a.cmp(b)),
            _ => self.approx.partial_cmp(&other.approx),
        }
    }
}

macro_rules! numeric_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Numeric> for &Numeric {
            type Output = Numeric;
            fn $method(self, rhs: &Numeric) -> Numeric {
                self.binary(rhs, |a, b| a $op b, |a, b| a $op b)
            }
        }

        impl $trait for Numeric {
            type Output = Numeric;
            fn $method(self, rhs: Numeric) -> Numeric {
                (&self).$method(&rhs)
            }
        }
    };
}

numeric_binop!(Add, add, +);
numeric_binop!(Sub, sub, -);
numeric_binop!(Mul, mul, *);

/// Exact division panics on an exact zero divisor; callers guard.
impl Div<&Numeric> for &Numeric {
    type Output = Numeric;
    fn div(self, rhs: &Numeric) -> Numeric {
        self.binary(rhs, |a, b| a / b, |a, b| a / b)
    }
}

impl Div for Numeric {
    type Output = Numeric;
    fn div(self, rhs: Numeric) -> Numeric {
        (&self).div(&rhs)
    }
}

impl Neg for &Numeric {
    type Output = Numeric;
    fn neg(self) -> Numeric {
        match &self.exact {
            Some(r) => Numeric::from_rational(-r),
            None => Numeric::from_f64(-self.approx),
        }
    }
}

impl Neg for Numeric {
    type Output = Numeric;
    fn neg(self) -> Numeric {
        -(&self)
    }
}

impl<'a> Sum<&'a Numeric> for Numeric {
    fn sum<I: Iterator<Item = &'a Numeric>>(iter: I) -> Numeric {
        iter.fold(Numeric::zero(), |acc, x| &acc + x)
    }
}

impl Sum for Numeric {
    fn sum<I: Iterator<Item = Numeric>>(iter: I) -> Numeric {
        iter.fold(Numeric::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for Numeric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Some(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            None => write!(f, "{:?}", self.approx),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic_stays_exact() {
        let a = Numeric::from_ratio(1, 3);
        let b = Numeric::from_ratio(1, 6);
        let sum = &a + &b;
        assert!(sum.is_exact());
        assert_eq!(sum, Numeric::from_ratio(1, 2));
        assert_eq!(sum.approx(), 0.5);
    }

    #[test]
    fn mixing_with_float_demotes() {
        let a = Numeric::from_i64(2);
        let b = Numeric::from_f64(0.5);
        let prod = &a * &b;
        assert!(!prod.is_exact());
        assert_eq!(prod.approx(), 1.0);
    }

    #[test]
    fn approx_is_rounding_of_exact() {
        // 1/3 has no finite binary expansion; approx must be the nearest f64.
        let third = Numeric::from_ratio(1, 3);
        assert_eq!(third.approx(), 1.0 / 3.0);
        let huge = Numeric::from_i64(10).powi(30);
        assert_eq!(huge.approx(), 1e30);
    }

    #[test]
    fn negative_powers_invert() {
        let three = Numeric::from_i64(3);
        assert_eq!(three.powi(-2), Numeric::from_ratio(1, 9));
        let f = Numeric::from_f64(2.0);
        assert_eq!(f.powi(-1).approx(), 0.5);
    }

    #[test]
    fn scale_parsing_rules() {
        assert_eq!("3".parse::<Scale>().unwrap(), Scale::from_int(3));
        assert_eq!("-7/2".parse::<Scale>().unwrap(), Scale::from_ratio(-7, 2));
        assert_eq!("0.1".parse::<Scale>().unwrap(), Scale::from_f64(0.1));
        assert_eq!("1e-3".parse::<Scale>().unwrap(), Scale::from_f64(1e-3));
        assert!("1/0".parse::<Scale>().is_err());
        assert!("abc".parse::<Scale>().is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Numeric::from_ratio(-8, 3).to_string(), "-8/3");
        assert_eq!(Numeric::from_i64(70).to_string(), "70");
        assert_eq!(Numeric::from_f64(1.5).to_string(), "1.5");
    }

    #[test]
    fn ordering_spans_exact_and_float() {
        let a = Numeric::from_ratio(1, 2);
        let b = Numeric::from_f64(0.75);
        assert!(a < b);
        assert!(Numeric::from_i64(2) > Numeric::from_ratio(3, 2));
    }
}
