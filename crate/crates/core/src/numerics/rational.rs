use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use super::NumericsError;

/// Exact rational number, always in lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Self(BigRational::from_integer(v))
    }

    /// Panics on a zero denominator.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn new(num: BigInt, den: BigInt) -> Result<Self, NumericsError> {
        if den.is_zero() {
            return Err(NumericsError::DivisionByZero);
        }
        Ok(Self(BigRational::new(num, den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    pub fn floor(&self) -> Self {
        Self(self.0.floor())
    }

    /// `self * 2^exp`.
    pub fn mul_pow2(&self, exp: i64) -> Self {
        let (n, d) = (self.numer().clone(), self.denom().clone());
        if exp >= 0 {
            Self(BigRational::new(n << exp as usize, d))
        } else {
            Self(BigRational::new(n, d << (-exp) as usize))
        }
    }

    /// `10^exp` for any integer exponent.
    pub fn pow10(exp: i64) -> Self {
        let p = BigInt::from(10u32).pow(exp.unsigned_abs() as u32);
        if exp >= 0 {
            Self(BigRational::from_integer(p))
        } else {
            Self(BigRational::new(BigInt::one(), p))
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, NumericsError> {
        if rhs.is_zero() {
            return Err(NumericsError::DivisionByZero);
        }
        Ok(Self(&self.0 / &rhs.0))
    }

    /// Parses `a/b`, or a decimal literal with optional sign, fraction and exponent.
    pub fn parse(text: &str) -> Result<Self, NumericsError> {
        let text = text.trim();
        if let Some((n, d)) = text.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| NumericsError::InvalidNumber)?;
            let d: BigInt = d.trim().parse().map_err(|_| NumericsError::InvalidNumber)?;
            return Self::new(n, d);
        }
        let (mantissa, exp) = match text.find(['e', 'E']) {
            Some(i) => {
                let e: i64 = text[i + 1..]
                    .parse()
                    .map_err(|_| NumericsError::InvalidNumber)?;
                (&text[..i], e)
            }
            None => (text, 0),
        };
        let (neg, body) = match mantissa.as_bytes().first() {
            Some(b'-') => (true, &mantissa[1..]),
            Some(b'+') => (false, &mantissa[1..]),
            _ => (false, mantissa),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(NumericsError::InvalidNumber);
        }
        if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(NumericsError::InvalidNumber);
        }
        let mut digits = String::with_capacity(int_part.len() + frac_part.len());
        digits.push_str(int_part);
        digits.push_str(frac_part);
        let mag = BigUint::parse_bytes(digits.as_bytes(), 10).ok_or(NumericsError::InvalidNumber)?;
        let sign = if neg { Sign::Minus } else { Sign::Plus };
        let value = Self::from_bigint(BigInt::from_biguint(sign, mag));
        Ok(&value * &Self::pow10(exp - frac_part.len() as i64))
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&ExactRational> for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Panics on division by zero, like the integer types.
forward_binop!(Div, div);

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

impl ExactRational {
    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        self.0.abs().cmp(&other.0.abs())
    }
}
