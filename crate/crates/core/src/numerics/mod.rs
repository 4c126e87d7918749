//! Arithmetic substrate: a configurable-precision binary float, exact rationals,
//! and a precision-doubling audit.
//!
//! Precision is requested in decimal digits. The float carries
//! `working_digits + guard_digits` decimal digits internally, rounded up to a
//! whole number of 64-bit limbs, and rounds to nearest (ties to even) after
//! every operation unless a directed mode is requested explicitly.

mod audit;
mod float;
pub mod limbs;
mod rational;

use core::fmt;

pub use audit::{agreed_digits, precision_audit};
pub use float::{Float, Round, Scratch};
pub use limbs::SmallDivisor;
pub use rational::ExactRational;

/// Smallest accepted working precision, in decimal digits.
pub const MIN_WORKING_DIGITS: u32 = 30;
/// Smallest accepted guard precision, in decimal digits.
pub const MIN_GUARD_DIGITS: u32 = 10;
/// Guard digits used by [`PrecisionContext::new`].
pub const DEFAULT_GUARD_DIGITS: u32 = 15;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NumericsError {
    PrecisionTooLow { requested: u32, minimum: u32 },
    GuardTooLow { requested: u32, minimum: u32 },
    InvalidNumber,
    DivisionByZero,
}

impl fmt::Display for NumericsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::PrecisionTooLow { requested, minimum } => {
                write!(f, "precision too low: {requested} digits requested, at least {minimum} required")
            }
            Self::GuardTooLow { requested, minimum } => {
                write!(f, "guard precision too low: {requested} digits requested, at least {minimum} required")
            }
            Self::InvalidNumber => write!(f, "malformed number"),
            Self::DivisionByZero => write!(f, "division by zero"),
        }
    }
}

impl core::error::Error for NumericsError {}

/// Working precision for every floating-point value in a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    working_digits: u32,
    guard_digits: u32,
}

impl PrecisionContext {
    /// Context with the default 15 guard digits.
    pub fn new(working_digits: u32) -> Result<Self, NumericsError> {
        Self::with_guard(working_digits, DEFAULT_GUARD_DIGITS)
    }

    pub fn with_guard(working_digits: u32, guard_digits: u32) -> Result<Self, NumericsError> {
        if working_digits < MIN_WORKING_DIGITS {
            return Err(NumericsError::PrecisionTooLow {
                requested: working_digits,
                minimum: MIN_WORKING_DIGITS,
            });
        }
        if guard_digits < MIN_GUARD_DIGITS {
            return Err(NumericsError::GuardTooLow {
                requested: guard_digits,
                minimum: MIN_GUARD_DIGITS,
            });
        }
        Ok(Self {
            working_digits,
            guard_digits,
        })
    }

    pub fn working_digits(&self) -> u32 {
        self.working_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    /// `working_digits + guard_digits`.
    pub fn internal_digits(&self) -> u32 {
        self.working_digits + self.guard_digits
    }

    /// Significand width in bits: `ceil(internal_digits * log2(10))` rounded up to whole limbs.
    pub fn bits(&self) -> u64 {
        self.limbs() as u64 * 64
    }

    pub fn limbs(&self) -> usize {
        // log2(10) < 3.321928095
        let bits = (self.internal_digits() as u64 * 3_321_928_095).div_ceil(1_000_000_000);
        bits.div_ceil(64) as usize
    }

    /// The same guard with twice the working digits.
    pub fn doubled(&self) -> Self {
        Self {
            working_digits: self.working_digits * 2,
            guard_digits: self.guard_digits,
        }
    }

    pub fn zero(&self) -> Float {
        Float::zero(self.limbs())
    }

    pub fn one(&self) -> Float {
        Float::from_u64(1, self.limbs())
    }

    pub fn int(&self, v: i64) -> Float {
        Float::from_i64(v, self.limbs())
    }

    pub fn uint(&self, v: u64) -> Float {
        Float::from_u64(v, self.limbs())
    }

    /// `num / den` correctly rounded.
    pub fn ratio(&self, num: i64, den: i64) -> Float {
        self.rational(&ExactRational::from_ratio(num, den))
    }

    pub fn rational(&self, q: &ExactRational) -> Float {
        Float::from_rational(q, self.limbs(), Round::Nearest)
    }

    /// Parses a decimal literal (`-12.5e-3`) or a fraction (`7/36`).
    pub fn parse(&self, text: &str) -> Result<Float, NumericsError> {
        let q = ExactRational::parse(text)?;
        Ok(self.rational(&q))
    }
}

/// Converts an exact rational to the context's precision.
///
/// The result is within half an internal ulp of `q`, so well inside one unit in
/// the last working digit.
pub fn rational_to_decimal(q: &ExactRational, ctx: &PrecisionContext) -> Float {
    ctx.rational(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_bounds() {
        let c = PrecisionContext::new(1200).unwrap();
        assert!(c.internal_digits() >= 1210);
        assert!(c.bits() as f64 >= 1215.0 * core::f64::consts::LOG2_10);
        assert!(PrecisionContext::new(30).is_ok());
        assert_eq!(
            PrecisionContext::new(29),
            Err(NumericsError::PrecisionTooLow {
                requested: 29,
                minimum: 30
            })
        );
        assert!(matches!(
            PrecisionContext::with_guard(40, 9),
            Err(NumericsError::GuardTooLow { .. })
        ));
    }

    #[test]
    fn doubled_keeps_guard() {
        let c = PrecisionContext::with_guard(50, 12).unwrap().doubled();
        assert_eq!((c.working_digits(), c.guard_digits()), (100, 12));
    }
}
