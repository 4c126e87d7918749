use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use super::limbs::{self, SmallDivisor};
use super::{ExactRational, NumericsError};

const HALF: u64 = 1 << 63;

/// Rounding direction for operations that accept one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    /// Nearest, ties to even.
    Nearest,
    /// Toward positive infinity.
    Up,
    /// Toward negative infinity.
    Down,
}

/// Arbitrary-precision binary floating point.
///
/// The value is `(-1)^neg * 0.m * 2^exp` where `m` is the limb vector read as a
/// fraction in `[1/2, 1)`. Zero is the all-zero vector with `exp == 0`. The
/// limb count is the precision; it is fixed at construction.
#[derive(Clone, Debug)]
pub struct Float {
    neg: bool,
    exp: i64,
    mant: Vec<u64>,
}

/// Reusable buffers for the in-place kernels.
#[derive(Clone, Debug, Default)]
pub struct Scratch {
    x: Vec<u64>,
    y: Vec<u64>,
}

impl Scratch {
    pub fn new() -> Self {
        Self::default()
    }

    fn prepare(&mut self, len: usize) {
        if self.x.len() != len {
            self.x.resize(len, 0);
            self.y.resize(len, 0);
        }
    }
}

fn limbs_to_biguint(l: &[u64]) -> BigUint {
    let mut digits = Vec::with_capacity(l.len() * 2);
    for &v in l {
        digits.push(v as u32);
        digits.push((v >> 32) as u32);
    }
    BigUint::new(digits)
}

/// Rounds `mag * 2^exp2` (plus something in `(0, 1)` units of the last bit when
/// `sticky`) to `limbs` limbs. When `sticky` is set the caller guarantees `mag`
/// has at least two bits beyond the target width.
fn round_biguint(neg: bool, mag: BigUint, exp2: i64, sticky: bool, limbs: usize, mode: Round) -> Float {
    if mag.is_zero() {
        return Float::zero(limbs);
    }
    let target = limbs as u64 * 64;
    let bits = mag.bits();
    let (mut kept, shifted, inexact_above_half, exactly_half, inexact) = if bits > target {
        let sh = bits - target;
        let kept = &mag >> sh;
        let rem = &mag - (&kept << sh);
        let half = BigUint::one() << (sh - 1);
        let above = rem > half || (rem == half && sticky);
        let exact_half = rem == half && !sticky;
        let inexact = !rem.is_zero() || sticky;
        (kept, sh as i64, above, exact_half, inexact)
    } else {
        debug_assert!(!sticky);
        let sh = target - bits;
        (mag << sh, -(sh as i64), false, false, sticky)
    };
    let round_up = match mode {
        Round::Nearest => inexact_above_half || (exactly_half && kept.bit(0)),
        Round::Up => inexact && !neg,
        Round::Down => inexact && neg,
    };
    let mut exp = exp2 + shifted + target as i64;
    if round_up {
        kept += 1u32;
        if kept.bits() > target {
            kept >>= 1u32;
            exp += 1;
        }
    }
    let mut mant = kept.to_u64_digits();
    mant.resize(limbs, 0);
    Float { neg, exp, mant }
}

/// Applies the final round-to-nearest-even step of the in-place kernels:
/// `work[0]` is the guard limb, `work[1..]` the result.
#[inline(always)]
fn round_work(work: &mut [u64], sticky: bool, exp: &mut i64) {
    let guard = work[0];
    let res = &mut work[1..];
    let up = guard > HALF || (guard == HALF && (sticky || res[0] & 1 == 1));
    if up && limbs::increment(res) {
        let n = res.len();
        res[n - 1] = HALF;
        *exp += 1;
    }
}

impl Float {
    pub fn zero(limbs: usize) -> Self {
        assert!(limbs > 0);
        Self {
            neg: false,
            exp: 0,
            mant: vec![0; limbs],
        }
    }

    pub fn from_u64(v: u64, limbs: usize) -> Self {
        let mut f = Self::zero(limbs);
        if v != 0 {
            let lz = v.leading_zeros();
            f.mant[limbs - 1] = v << lz;
            f.exp = 64 - lz as i64;
        }
        f
    }

    pub fn from_i64(v: i64, limbs: usize) -> Self {
        let mut f = Self::from_u64(v.unsigned_abs(), limbs);
        f.neg = v < 0;
        f
    }

    pub fn from_rational(q: &ExactRational, limbs: usize, mode: Round) -> Self {
        let neg = q.is_negative();
        let n = q.numer().magnitude();
        let d = q.denom().magnitude();
        if n.is_zero() {
            return Self::zero(limbs);
        }
        let s = (limbs as i64) * 64 + 3 + d.bits() as i64 - n.bits() as i64;
        let (num, den) = if s >= 0 {
            (n << s as u64, d.clone())
        } else {
            (n.clone(), d << (-s) as u64)
        };
        let (quot, rem) = num.div_rem(&den);
        round_biguint(neg, quot, -s, !rem.is_zero(), limbs, mode)
    }

    /// Exact conversion of a finite `f64`; panics on NaN or infinity.
    pub fn from_f64(v: f64, limbs: usize) -> Self {
        assert!(v.is_finite(), "non-finite f64");
        if v == 0.0 {
            return Self::zero(limbs);
        }
        let bits = v.to_bits();
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1 << 52) - 1);
        let (m, e) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1 << 52), biased - 1075)
        };
        let mut f = Self::from_u64(m, limbs);
        f.exp += e;
        f.neg = v < 0.0;
        f
    }

    /// Overwrites `self` with `src` without reallocating when precisions match.
    pub fn assign(&mut self, src: &Float) {
        self.neg = src.neg;
        self.exp = src.exp;
        self.mant.clone_from(&src.mant);
    }

    pub fn set_zero(&mut self) {
        self.neg = false;
        self.exp = 0;
        self.mant.iter_mut().for_each(|l| *l = 0);
    }

    /// Converts to a different precision.
    pub fn with_limbs(&self, limbs: usize, mode: Round) -> Self {
        if limbs == self.limbs() {
            return self.clone();
        }
        let (neg, mag, e2) = self.parts();
        round_biguint(neg, mag, e2, false, limbs, mode)
    }

    pub fn limbs(&self) -> usize {
        self.mant.len()
    }

    pub fn is_zero(&self) -> bool {
        self.mant[self.mant.len() - 1] == 0
    }

    pub fn is_negative(&self) -> bool {
        self.neg
    }

    pub fn is_positive(&self) -> bool {
        !self.neg && !self.is_zero()
    }

    /// Binary exponent `e` with `2^(e-1) <= |x| < 2^e`; zero for zero.
    pub fn binary_exponent(&self) -> i64 {
        self.exp
    }

    /// `(neg, M, e)` with value `(-1)^neg * M * 2^e`.
    fn parts(&self) -> (bool, BigUint, i64) {
        (
            self.neg,
            limbs_to_biguint(&self.mant),
            self.exp - 64 * self.mant.len() as i64,
        )
    }

    /// Exact rational value.
    pub fn to_rational(&self) -> ExactRational {
        let (neg, mag, e2) = self.parts();
        let sign = if neg { Sign::Minus } else { Sign::Plus };
        ExactRational::from_bigint(BigInt::from_biguint(sign, mag)).mul_pow2(e2)
    }

    pub fn abs(&self) -> Self {
        let mut r = self.clone();
        r.neg = false;
        r
    }

    /// One unit in the last place of `self` (`2^(exp - bits)`); zero maps to zero.
    pub fn ulp(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut r = Self::zero(self.limbs());
        r.mant[self.limbs() - 1] = HALF;
        r.exp = self.exp - 64 * self.limbs() as i64 + 1;
        r
    }

    /// Next representable value toward positive infinity. Zero is returned unchanged.
    pub fn next_up(&self) -> Self {
        let mut r = self.clone();
        if r.is_zero() {
            return r;
        }
        if r.neg {
            r.shrink_magnitude();
        } else {
            r.grow_magnitude();
        }
        r
    }

    /// Next representable value toward negative infinity. Zero is returned unchanged.
    pub fn next_down(&self) -> Self {
        let mut r = self.clone();
        if r.is_zero() {
            return r;
        }
        if r.neg {
            r.grow_magnitude();
        } else {
            r.shrink_magnitude();
        }
        r
    }

    fn grow_magnitude(&mut self) {
        if limbs::increment(&mut self.mant) {
            let n = self.mant.len();
            self.mant[n - 1] = HALF;
            self.exp += 1;
        }
    }

    fn shrink_magnitude(&mut self) {
        let n = self.mant.len();
        let at_power_of_two =
            self.mant[n - 1] == HALF && self.mant[..n - 1].iter().all(|&l| l == 0);
        if at_power_of_two {
            self.mant.iter_mut().for_each(|l| *l = u64::MAX);
            self.exp -= 1;
        } else {
            limbs::decrement(&mut self.mant);
        }
    }

    /// `self += rhs` with round-to-nearest, without allocating.
    pub fn add_assign_with(&mut self, rhs: &Float, scratch: &mut Scratch) {
        self.add_signed(rhs, rhs.neg, scratch);
    }

    /// `self -= rhs` with round-to-nearest, without allocating.
    pub fn sub_assign_with(&mut self, rhs: &Float, scratch: &mut Scratch) {
        self.add_signed(rhs, !rhs.neg, scratch);
    }

    fn add_signed(&mut self, rhs: &Float, rhs_neg: bool, scratch: &mut Scratch) {
        if rhs.is_zero() {
            return;
        }
        let p = self.limbs();
        if rhs.limbs() != p {
            let mut r = rhs.clone();
            r.neg = rhs_neg;
            *self = self.add_rounded(&r, Round::Nearest);
            return;
        }
        if self.is_zero() {
            self.mant.copy_from_slice(&rhs.mant);
            self.exp = rhs.exp;
            self.neg = rhs_neg;
            return;
        }
        scratch.prepare(p + 1);
        let self_larger = match self.exp.cmp(&rhs.exp) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => limbs::cmp_limbs(&self.mant, &rhs.mant) != Ordering::Less,
        };
        let (big, big_neg, small, small_neg) = if self_larger {
            (&self.mant, self.neg, &rhs.mant, rhs_neg)
        } else {
            (&rhs.mant, rhs_neg, &self.mant, self.neg)
        };
        let (big_exp, small_exp) = if self_larger {
            (self.exp, rhs.exp)
        } else {
            (rhs.exp, self.exp)
        };
        let x = &mut scratch.x;
        let y = &mut scratch.y;
        let d = (big_exp - small_exp) as u64;
        if big_neg == small_neg && d < 64 {
            // fused align-and-add; the shifted-out part of `small` fits in the guard limb
            let mut carry = false;
            let (guard, body) = x.split_first_mut().expect("p + 1 limbs");
            if d == 0 {
                *guard = 0;
                for ((o, &a), &b) in body.iter_mut().zip(big).zip(small) {
                    let (s1, c1) = a.overflowing_add(b);
                    let (s2, c2) = s1.overflowing_add(carry as u64);
                    *o = s2;
                    carry = c1 | c2;
                }
            } else {
                let inv = 64 - d;
                *guard = small[0] << inv;
                let (last_out, body) = body.split_last_mut().expect("p limbs");
                for ((o, &a), w) in body.iter_mut().zip(big).zip(small.windows(2)) {
                    let b = (w[0] >> d) | (w[1] << inv);
                    let (s1, c1) = a.overflowing_add(b);
                    let (s2, c2) = s1.overflowing_add(carry as u64);
                    *o = s2;
                    carry = c1 | c2;
                }
                let b = small[p - 1] >> d;
                let (s1, c1) = big[p - 1].overflowing_add(b);
                let (s2, c2) = s1.overflowing_add(carry as u64);
                *last_out = s2;
                carry = c1 | c2;
            }
            let mut exp = big_exp;
            let mut sticky = false;
            if carry {
                sticky = limbs::shr1(x, true);
                exp += 1;
            }
            round_work(x, sticky, &mut exp);
            self.mant.copy_from_slice(&x[1..]);
            self.exp = exp;
            self.neg = big_neg;
            return;
        }
        x[0] = 0;
        x[1..].copy_from_slice(big);
        // both operands have p limbs, so the alignment shift is 64 - d
        let mut sticky = if d > 64 * (p as u64 + 2) {
            y.iter_mut().for_each(|l| *l = 0);
            true
        } else {
            limbs::align_into(small, 64 - d as i64, y)
        };
        let mut exp = big_exp;
        if big_neg == small_neg {
            if limbs::add_in_place(x, y) {
                sticky |= limbs::shr1(x, true);
                exp += 1;
            }
        } else {
            limbs::sub_in_place(x, y);
            if sticky {
                limbs::decrement(x);
            }
            let lz = limbs::leading_zeros(x);
            if lz == 64 * (p as u64 + 1) {
                self.mant.iter_mut().for_each(|l| *l = 0);
                self.exp = 0;
                self.neg = false;
                return;
            }
            if lz > 0 {
                limbs::shl_in_place(x, lz);
                exp -= lz as i64;
            }
        }
        round_work(x, sticky, &mut exp);
        self.mant.copy_from_slice(&x[1..]);
        self.exp = exp;
        self.neg = big_neg;
    }

    /// `self /= divisor` with round-to-nearest, without allocating.
    pub fn div_small_assign_with(&mut self, divisor: &SmallDivisor, scratch: &mut Scratch) {
        if self.is_zero() {
            return;
        }
        let p = self.limbs();
        scratch.prepare(p + 1);
        let x = &mut scratch.x;
        let rem = divisor.div_shifted(&self.mant, x);
        let lz = limbs::leading_zeros(x);
        limbs::shl_in_place(x, lz);
        let mut exp = self.exp - lz as i64;
        round_work(x, rem != 0, &mut exp);
        self.mant.copy_from_slice(&x[1..]);
        self.exp = exp;
    }

    /// Exact sum rounded once in the requested direction, at `self`'s precision.
    pub fn add_rounded(&self, rhs: &Float, mode: Round) -> Float {
        let (an, am, ae) = self.parts();
        let (bn, bm, be) = rhs.parts();
        let e = ae.min(be);
        let a = BigInt::from_biguint(if an { Sign::Minus } else { Sign::Plus }, am << (ae - e) as u64);
        let b = BigInt::from_biguint(if bn { Sign::Minus } else { Sign::Plus }, bm << (be - e) as u64);
        let s = a + b;
        let neg = s.sign() == Sign::Minus;
        round_biguint(neg, s.magnitude().clone(), e, false, self.limbs(), mode)
    }

    pub fn sub_rounded(&self, rhs: &Float, mode: Round) -> Float {
        self.add_rounded(&-rhs, mode)
    }

    pub fn mul_rounded(&self, rhs: &Float, mode: Round) -> Float {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.limbs());
        }
        let (an, am, ae) = self.parts();
        let (bn, bm, be) = rhs.parts();
        round_biguint(an != bn, am * bm, ae + be, false, self.limbs(), mode)
    }

    pub fn div_rounded(&self, rhs: &Float, mode: Round) -> Result<Float, NumericsError> {
        if rhs.is_zero() {
            return Err(NumericsError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.limbs()));
        }
        let (an, am, ae) = self.parts();
        let (bn, bm, be) = rhs.parts();
        let s = self.limbs() as i64 * 64 + 3 + bm.bits() as i64 - am.bits() as i64;
        let s = s.max(0);
        let (q, r) = (am << s as u64).div_rem(&bm);
        Ok(round_biguint(an != bn, q, ae - be - s, !r.is_zero(), self.limbs(), mode))
    }

    pub fn sqrt(&self) -> Result<Float, NumericsError> {
        self.sqrt_rounded(Round::Nearest)
    }

    pub fn sqrt_rounded(&self, mode: Round) -> Result<Float, NumericsError> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        if self.neg {
            return Err(NumericsError::InvalidNumber);
        }
        let (_, m, e2) = self.parts();
        let p = self.limbs() as i64;
        let mut shift = (2 * (64 * p + 2) - m.bits() as i64 + 2).max(0);
        if (e2 - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let radicand = m << shift as u64;
        let root = radicand.sqrt();
        let sticky = &root * &root != radicand;
        Ok(round_biguint(false, root, (e2 - shift) / 2, sticky, self.limbs(), mode))
    }

    /// `self^n` by binary powering, every product rounded in `mode`.
    ///
    /// With `Round::Up` or `Round::Down` and a nonnegative base the result bounds
    /// the exact power in that direction.
    pub fn pow_u64(&self, mut n: u64, mode: Round) -> Float {
        let mut result = Float::from_u64(1, self.limbs());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul_rounded(&base, mode);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_rounded(&base, mode);
            }
        }
        result
    }

    /// `round(|self| * 10^k)` (or truncated toward zero) as an integer.
    fn scaled_integer(&self, k: i64, truncate: bool) -> BigUint {
        let (_, m, e2) = self.parts();
        let mut num = m;
        let mut den = BigUint::one();
        if k >= 0 {
            num *= BigUint::from(10u32).pow(k as u64);
        } else {
            den *= BigUint::from(10u32).pow((-k) as u64);
        }
        if e2 >= 0 {
            num <<= e2 as u64;
        } else {
            den <<= (-e2) as u64;
        }
        let (mut q, r) = num.div_rem(&den);
        if !truncate {
            let twice = r << 1u32;
            if twice > den || (twice == den && q.bit(0)) {
                q += 1u32;
            }
        }
        q
    }

    /// Leading `sig` significant decimal digits and the decimal exponent of the
    /// first one, so the value is about `d.ddd * 10^exp10`.
    pub fn decimal_digits(&self, sig: usize, truncate: bool) -> (bool, String, i64) {
        assert!(sig > 0);
        if self.is_zero() {
            return (false, "0".repeat(sig), 0);
        }
        // 2^(exp-1) <= |x| < 2^exp; 30103/100000 < log10(2)
        let mut est = ((self.exp - 1) * 30103).div_euclid(100_000);
        let lower = BigUint::from(10u32).pow(sig as u64 - 1);
        let upper = &lower * 10u32;
        loop {
            let n = self.scaled_integer(sig as i64 - 1 - est, truncate);
            if n >= upper {
                est += 1;
            } else if n < lower {
                est -= 1;
            } else {
                return (self.neg, n.to_str_radix(10), est);
            }
        }
    }

    /// `(neg, integer part, first `decimals` fractional digits)` of `|self|`,
    /// truncated toward zero.
    pub fn fixed_digits(&self, decimals: usize) -> (bool, BigUint, String) {
        let n = self.scaled_integer(decimals as i64, true);
        let scale = BigUint::from(10u32).pow(decimals as u64);
        let (int, frac) = n.div_rem(&scale);
        let mut s = frac.to_str_radix(10);
        if s.len() < decimals {
            let mut padded = "0".repeat(decimals - s.len());
            padded.push_str(&s);
            s = padded;
        }
        if decimals == 0 {
            s.clear();
        }
        (self.neg, int, s)
    }

    /// Decimal rendering with `sig` significant digits, rounded to nearest:
    /// plain notation for moderate exponents, `d.ddde±x` otherwise.
    pub fn to_decimal_string(&self, sig: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let (neg, digits, e10) = self.decimal_digits(sig, false);
        let mut out = String::with_capacity(sig + 24);
        if neg {
            out.push('-');
        }
        if (-5..sig as i64).contains(&e10) {
            if e10 < 0 {
                out.push_str("0.");
                out.push_str(&"0".repeat((-e10 - 1) as usize));
                out.push_str(&digits);
            } else {
                let split = e10 as usize + 1;
                out.push_str(&digits[..split]);
                if split < digits.len() {
                    out.push('.');
                    out.push_str(&digits[split..]);
                }
            }
        } else {
            out.push_str(&digits[..1]);
            if digits.len() > 1 {
                out.push('.');
                out.push_str(&digits[1..]);
            }
            out.push('e');
            out.push_str(&alloc::format!("{e10}"));
        }
        out
    }

    /// Significant decimal digits the precision can represent.
    pub fn representable_digits(&self) -> usize {
        // floor(bits * log10(2))
        (self.limbs() as u64 * 64 * 30103 / 100_000) as usize
    }

    pub fn to_f64(&self) -> f64 {
        self.to_decimal_string(20).parse().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Float {
    /// Uses the formatter precision as the significant-digit count, defaulting
    /// to every representable digit.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or_else(|| self.representable_digits()).max(1);
        f.write_str(&self.to_decimal_string(sig))
    }
}

impl PartialEq for Float {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Float {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.limbs() != other.limbs() {
            return Some(self.to_rational().cmp(&other.to_rational()));
        }
        let sign = |x: &Float| {
            if x.is_zero() {
                0
            } else if x.neg {
                -1
            } else {
                1
            }
        };
        let (sa, sb) = (sign(self), sign(other));
        if sa != sb || sa == 0 {
            return Some(sa.cmp(&sb));
        }
        let mag = self
            .exp
            .cmp(&other.exp)
            .then_with(|| limbs::cmp_limbs(&self.mant, &other.mant));
        Some(if sa > 0 { mag } else { mag.reverse() })
    }
}

impl Neg for &Float {
    type Output = Float;
    fn neg(self) -> Float {
        let mut r = self.clone();
        if !r.is_zero() {
            r.neg = !r.neg;
        }
        r
    }
}

impl Neg for Float {
    type Output = Float;
    fn neg(self) -> Float {
        -&self
    }
}

impl Add<&Float> for &Float {
    type Output = Float;
    fn add(self, rhs: &Float) -> Float {
        let mut r = self.clone();
        r.add_assign_with(rhs, &mut Scratch::new());
        r
    }
}

impl Sub<&Float> for &Float {
    type Output = Float;
    fn sub(self, rhs: &Float) -> Float {
        let mut r = self.clone();
        r.sub_assign_with(rhs, &mut Scratch::new());
        r
    }
}

impl Mul<&Float> for &Float {
    type Output = Float;
    fn mul(self, rhs: &Float) -> Float {
        self.mul_rounded(rhs, Round::Nearest)
    }
}

impl Div<&Float> for &Float {
    type Output = Float;
    /// Panics on division by zero.
    fn div(self, rhs: &Float) -> Float {
        self.div_rounded(rhs, Round::Nearest).expect("division by zero")
    }
}

impl AddAssign<&Float> for Float {
    fn add_assign(&mut self, rhs: &Float) {
        self.add_assign_with(rhs, &mut Scratch::new());
    }
}

impl SubAssign<&Float> for Float {
    fn sub_assign(&mut self, rhs: &Float) {
        self.sub_assign_with(rhs, &mut Scratch::new());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::PrecisionContext;
    use proptest::prelude::*;

    fn ctx(d: u32) -> PrecisionContext {
        PrecisionContext::new(d).unwrap()
    }

    fn arb_float(limbs: usize) -> impl Strategy<Value = Float> {
        (any::<bool>(), -300i64..300, proptest::collection::vec(any::<u64>(), limbs)).prop_map(
            move |(neg, exp, mut mant)| {
                mant[limbs - 1] |= HALF;
                Float { neg, exp, mant }
            },
        )
    }

    #[test]
    fn small_integers_are_exact() {
        let c = ctx(30);
        assert_eq!(c.uint(6).to_rational(), ExactRational::from_int(6));
        assert_eq!(c.int(-7).to_rational(), ExactRational::from_int(-7));
        assert!(c.zero().is_zero());
        assert_eq!(c.one().binary_exponent(), 1);
    }

    #[test]
    fn rational_rendering() {
        let c = ctx(30);
        assert_eq!(c.ratio(1, 6).to_decimal_string(10), "0.1666666667");
        assert_eq!(c.ratio(2, 7).to_decimal_string(10), "0.2857142857");
        assert_eq!(c.ratio(0, 1).to_decimal_string(10), "0");
        assert_eq!(c.ratio(-49020, 1).to_decimal_string(5), "-49020");
        assert_eq!(c.ratio(49020, 1).to_decimal_string(3), "4.90e4");
        assert_eq!(c.parse("1.5e-1023").unwrap().to_decimal_string(3), "1.50e-1023");
        assert_eq!(c.ratio(1, 1000).to_decimal_string(2), "0.0010");
        assert_eq!(c.ratio(9999, 1000).to_decimal_string(2), "10");
    }

    #[test]
    fn fixed_digits_truncate() {
        let c = ctx(30);
        let (neg, int, frac) = c.parse("7.0797642375").unwrap().fixed_digits(6);
        assert!(!neg);
        assert_eq!(int, BigUint::from(7u32));
        assert_eq!(frac, "079764");
        let (_, int, frac) = c.parse("0.000012").unwrap().fixed_digits(4);
        assert_eq!((int, frac.as_str()), (BigUint::zero(), "0000"));
    }

    #[test]
    fn sqrt_and_pow() {
        let c = ctx(40);
        let two = c.uint(2);
        let r = two.sqrt().unwrap();
        let back = &r * &r;
        assert!((&back - &two).abs() <= two.ulp().mul_rounded(&c.uint(4), Round::Nearest));
        assert_eq!(c.uint(3).pow_u64(5, Round::Nearest).to_rational(), ExactRational::from_int(243));
        assert!(c.int(-4).sqrt().is_err());
        let lo = two.sqrt_rounded(Round::Down).unwrap();
        let hi = two.sqrt_rounded(Round::Up).unwrap();
        assert_eq!(lo.next_up(), hi);
        let (lq, hq, tq) = (lo.to_rational(), hi.to_rational(), two.to_rational());
        assert!(&lq * &lq < tq && &hq * &hq > tq);
    }

    #[test]
    fn f64_conversion_is_exact() {
        for v in [0.1f64, -3.5, 1e-310, 6.02e23, f64::MIN_POSITIVE] {
            let f = Float::from_f64(v, 2);
            assert_eq!(f.to_f64(), v);
        }
        assert_eq!(Float::from_f64(0.5, 1).to_rational(), ExactRational::from_ratio(1, 2));
    }

    #[test]
    fn directed_rounding_brackets() {
        let c = ctx(30);
        let third = ExactRational::from_ratio(1, 3);
        let up = Float::from_rational(&third, c.limbs(), Round::Up);
        let down = Float::from_rational(&third, c.limbs(), Round::Down);
        assert!(down.to_rational() < third && third < up.to_rational());
        assert_eq!(down.next_up(), up);
        assert_eq!(up.next_down(), down);
        let one = c.one();
        assert_eq!(one.next_down().next_up(), one);
    }

    #[test]
    fn cancellation_is_exact() {
        let c = ctx(30);
        let a = c.ratio(1, 3);
        assert!((&a - &a).is_zero());
        let b = a.next_up();
        assert_eq!(&b - &a, a.ulp());
    }

    fn oracle_round(q: &ExactRational, limbs: usize) -> Float {
        Float::from_rational(q, limbs, Round::Nearest)
    }

    proptest! {
        #[test]
        fn fast_add_is_correctly_rounded(a in arb_float(3), b in arb_float(3), sub in any::<bool>()) {
            let mut fast = a.clone();
            let mut scratch = Scratch::new();
            let exact = if sub {
                fast.sub_assign_with(&b, &mut scratch);
                &a.to_rational() - &b.to_rational()
            } else {
                fast.add_assign_with(&b, &mut scratch);
                &a.to_rational() + &b.to_rational()
            };
            let want = oracle_round(&exact, 3);
            prop_assert_eq!(fast.to_rational(), want.to_rational());
        }

        #[test]
        fn fast_add_close_exponents(a in arb_float(2), mant in proptest::collection::vec(any::<u64>(), 2), shift in 0i64..140, neg in any::<bool>()) {
            let mut m = mant.clone();
            m[1] |= HALF;
            let b = Float { neg, exp: a.exp - shift, mant: m };
            let mut fast = a.clone();
            fast.add_assign_with(&b, &mut Scratch::new());
            let exact = &a.to_rational() + &b.to_rational();
            prop_assert_eq!(fast.to_rational(), oracle_round(&exact, 2).to_rational());
        }

        #[test]
        fn small_division_is_correctly_rounded(a in arb_float(3), d in 1u64..1_000_000) {
            let mut fast = a.clone();
            fast.div_small_assign_with(&SmallDivisor::new(d), &mut Scratch::new());
            let exact = &a.to_rational() / &ExactRational::from_int(d as i64);
            prop_assert_eq!(fast.to_rational(), oracle_round(&exact, 3).to_rational());
        }

        #[test]
        fn mul_div_correctly_rounded(a in arb_float(2), b in arb_float(2)) {
            let exact = &a.to_rational() * &b.to_rational();
            prop_assert_eq!((&a * &b).to_rational(), oracle_round(&exact, 2).to_rational());
            let exact = &a.to_rational() / &b.to_rational();
            prop_assert_eq!((&a / &b).to_rational(), oracle_round(&exact, 2).to_rational());
        }

        #[test]
        fn finer_context_rounds_to_coarser(n in -10_000i64..10_000, d in 1i64..10_000) {
            let q = ExactRational::from_ratio(n, d);
            let coarse = ctx(30).rational(&q);
            let fine = ctx(60).rational(&q);
            let diff = (&fine.with_limbs(coarse.limbs(), Round::Nearest) - &coarse).abs();
            prop_assert!(diff <= coarse.ulp());
        }

        #[test]
        fn decimal_digits_round_trip(a in arb_float(2)) {
            let text = a.to_decimal_string(45);
            let back = Float::from_rational(&ExactRational::parse(&text).unwrap(), 2, Round::Nearest);
            prop_assert_eq!(back, a);
        }
    }
}
