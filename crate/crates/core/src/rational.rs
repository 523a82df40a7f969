//! Exact rationals: the scalar field underneath every polynomial.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// A normalized fraction `numerator / denominator` with `denominator >= 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExactRational(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid character {ch:?} at offset {offset}")]
    InvalidChar { ch: char, offset: usize },
    #[error("zero denominator")]
    ZeroDenominator,
}

impl ExactRational {
    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        ExactRational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        ExactRational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(ExactRational(BigRational::new(num, den)))
        }
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        ExactRational(self.0.abs())
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(ExactRational(self.0.recip()))
        }
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, exp: i32) -> Option<Self> {
        if exp < 0 {
            return self.recip().map(|r| r.pow(-exp).expect("nonneg"));
        }
        let mut acc = BigRational::one();
        let mut base = self.0.clone();
        let mut e = exp as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Some(ExactRational(acc))
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        ExactRational::from_integer(n)
    }
}

impl From<BigRational> for ExactRational {
    fn from(r: BigRational) -> Self {
        ExactRational(r)
    }
}

impl FromStr for ExactRational {
    type Err = RationalParseError;

    /// Accepts `n`, `-n`, `n/d`, `-n/d` with decimal digits only.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(RationalParseError::Empty);
        }
        let body = s.strip_prefix('-').unwrap_or(s);
        let sign_len = s.len() - body.len();
        let (num_s, den_s) = match body.find('/') {
            Some(i) => (&body[..i], Some(&body[i + 1..])),
            None => (body, None),
        };
        check_digits(num_s, sign_len)?;
        let num: BigInt = num_s.parse().expect("digits checked");
        let num = if sign_len == 1 { -num } else { num };
        let den = match den_s {
            Some(d) => {
                check_digits(d, sign_len + num_s.len() + 1)?;
                d.parse::<BigInt>().expect("digits checked")
            }
            None => BigInt::one(),
        };
        ExactRational::from_bigints(num, den).ok_or(RationalParseError::ZeroDenominator)
    }
}

fn check_digits(s: &str, base_offset: usize) -> Result<(), RationalParseError> {
    if s.is_empty() {
        return Err(RationalParseError::Empty);
    }
    for (i, ch) in s.char_indices() {
        if !ch.is_ascii_digit() {
            return Err(RationalParseError::InvalidChar {
                ch,
                offset: base_offset + i,
            });
        }
    }
    Ok(())
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for &ExactRational {
    type Output = ExactRational;
    /// Panics on division by zero; use [`ExactRational::recip`] when unsure.
    fn div(self, rhs: &ExactRational) -> ExactRational {
        assert!(!rhs.is_zero(), "division by zero rational");
        ExactRational(&self.0 / &rhs.0)
    }
}

impl AddAssign<&ExactRational> for ExactRational {
    fn add_assign(&mut self, rhs: &ExactRational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&ExactRational> for ExactRational {
    fn sub_assign(&mut self, rhs: &ExactRational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&ExactRational> for ExactRational {
    fn mul_assign(&mut self, rhs: &ExactRational) {
        self.0 *= &rhs.0;
    }
}

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl Neg for &ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-&self.0)
    }
}

/// `gcd(|num|, den)`; exposed for invariant checks in tests.
pub fn reduced(r: &ExactRational) -> bool {
    r.numerator().gcd(r.denominator()).is_one() && r.denominator().is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes() {
        let r = ExactRational::new(6, -4);
        assert_eq!(r.to_string(), "-3/2");
        assert!(reduced(&r));
        assert_eq!(ExactRational::new(0, 5).to_string(), "0");
        assert!(ExactRational::new(0, -5).denominator().is_one());
    }

    #[test]
    fn parse_forms() {
        assert_eq!("3/4".parse::<ExactRational>().unwrap(), ExactRational::new(3, 4));
        assert_eq!("-2/6".parse::<ExactRational>().unwrap(), ExactRational::new(-1, 3));
        assert_eq!("17".parse::<ExactRational>().unwrap(), ExactRational::from(17));
        assert_eq!("1/0".parse::<ExactRational>(), Err(RationalParseError::ZeroDenominator));
        assert!(matches!(
            "1/x".parse::<ExactRational>(),
            Err(RationalParseError::InvalidChar { ch: 'x', offset: 2 })
        ));
        assert!("+1".parse::<ExactRational>().is_err());
        assert!("".parse::<ExactRational>().is_err());
        assert!("-".parse::<ExactRational>().is_err());
        assert!("1/".parse::<ExactRational>().is_err());
    }

    #[test]
    fn powers() {
        let h = ExactRational::new(1, 2);
        assert_eq!(h.pow(3).unwrap(), ExactRational::new(1, 8));
        assert_eq!(h.pow(-2).unwrap(), ExactRational::from(4));
        assert_eq!(h.pow(0).unwrap(), ExactRational::one());
        assert!(ExactRational::zero().pow(-1).is_none());
    }
}
