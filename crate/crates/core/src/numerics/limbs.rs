//! Little-endian `u64` limb primitives used by the in-place float kernels.
//!
//! Nothing here allocates; callers own every buffer.

/// Division by a fixed single-limb divisor using a precomputed reciprocal
/// (two-by-one division with invariant divisor, Möller & Granlund 2011).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SmallDivisor {
    divisor: u64,
    shift: u32,
    normalized: u64,
    inverse: u64,
}

impl SmallDivisor {
    /// Panics if `divisor` is zero.
    pub fn new(divisor: u64) -> Self {
        assert!(divisor != 0, "division by zero");
        let shift = divisor.leading_zeros();
        let normalized = divisor << shift;
        let inverse = (((!normalized as u128) << 64) | u64::MAX as u128) / normalized as u128;
        Self {
            divisor,
            shift,
            normalized,
            inverse: inverse as u64,
        }
    }

    pub fn get(&self) -> u64 {
        self.divisor
    }

    /// Divides the two-limb value `hi:lo` by the normalized divisor. Requires `hi < normalized`.
    #[inline(always)]
    fn div_2by1(&self, hi: u64, lo: u64) -> (u64, u64) {
        let d = self.normalized;
        let p = (self.inverse as u128) * (hi as u128) + (((hi as u128) << 64) | lo as u128);
        let mut q1 = ((p >> 64) as u64).wrapping_add(1);
        let q0 = p as u64;
        let mut r = lo.wrapping_sub(q1.wrapping_mul(d));
        if r > q0 {
            q1 = q1.wrapping_sub(1);
            r = r.wrapping_add(d);
        }
        if r >= d {
            q1 = q1.wrapping_add(1);
            r -= d;
        }
        (q1, r)
    }

    /// Writes `floor(num * 2^64 / divisor)` into `quot` (one limb longer than `num`)
    /// and returns the remainder.
    pub fn div_shifted(&self, num: &[u64], quot: &mut [u64]) -> u64 {
        debug_assert_eq!(quot.len(), num.len() + 1);
        let s = self.shift;
        let n = num.len();
        if s == 0 {
            let mut r = 0u64;
            for i in (0..n).rev() {
                let (q, rr) = self.div_2by1(r, num[i]);
                quot[i + 1] = q;
                r = rr;
            }
            let (q, rr) = self.div_2by1(r, 0);
            quot[0] = q;
            return rr;
        }
        // Stream the numerator shifted left by `s` bits; the quotient is unchanged.
        let mut r = num[n - 1] >> (64 - s);
        for i in (0..n).rev() {
            let low = if i > 0 { num[i - 1] >> (64 - s) } else { 0 };
            let limb = (num[i] << s) | low;
            let (q, rr) = self.div_2by1(r, limb);
            quot[i + 1] = q;
            r = rr;
        }
        let (q, rr) = self.div_2by1(r, 0);
        quot[0] = q;
        rr >> s
    }
}

/// `dst = floor(src * 2^shift)` truncated to `dst.len()` limbs. Returns true when
/// nonzero bits were shifted out below the least significant limb of `dst`.
///
/// For left shifts the caller guarantees the result fits.
pub fn align_into(src: &[u64], shift: i64, dst: &mut [u64]) -> bool {
    dst.iter_mut().for_each(|l| *l = 0);
    if shift >= 0 {
        let limb_shift = (shift / 64) as usize;
        let bit_shift = (shift % 64) as u32;
        for (i, &limb) in src.iter().enumerate() {
            let j = i + limb_shift;
            if j < dst.len() {
                dst[j] |= limb << bit_shift;
            }
            if bit_shift != 0 && j + 1 < dst.len() {
                dst[j + 1] |= limb >> (64 - bit_shift);
            }
        }
        false
    } else {
        let rshift = (-shift) as u64;
        let limb_shift = rshift / 64;
        let bit_shift = (rshift % 64) as u32;
        if limb_shift >= src.len() as u64 {
            return src.iter().any(|&l| l != 0);
        }
        let limb_shift = limb_shift as usize;
        let mut sticky = src[..limb_shift].iter().any(|&l| l != 0);
        if bit_shift != 0 {
            sticky |= src[limb_shift] << (64 - bit_shift) != 0;
        }
        for (k, slot) in dst.iter_mut().enumerate() {
            let i = k + limb_shift;
            if i >= src.len() {
                break;
            }
            let mut v = src[i] >> bit_shift;
            if bit_shift != 0 && i + 1 < src.len() {
                v |= src[i + 1] << (64 - bit_shift);
            }
            *slot = v;
        }
        sticky
    }
}

/// `acc += rhs`, returning the carry out.
#[inline]
pub fn add_in_place(acc: &mut [u64], rhs: &[u64]) -> bool {
    let mut carry = false;
    for (a, &b) in acc.iter_mut().zip(rhs) {
        let (s1, c1) = a.overflowing_add(b);
        let (s2, c2) = s1.overflowing_add(carry as u64);
        *a = s2;
        carry = c1 | c2;
    }
    carry
}

/// `acc -= rhs`, returning the borrow out.
#[inline]
pub fn sub_in_place(acc: &mut [u64], rhs: &[u64]) -> bool {
    let mut borrow = false;
    for (a, &b) in acc.iter_mut().zip(rhs) {
        let (d1, b1) = a.overflowing_sub(b);
        let (d2, b2) = d1.overflowing_sub(borrow as u64);
        *a = d2;
        borrow = b1 | b2;
    }
    borrow
}

/// Adds one at the least significant limb; returns the carry out.
#[inline]
pub fn increment(acc: &mut [u64]) -> bool {
    for a in acc.iter_mut() {
        let (s, c) = a.overflowing_add(1);
        *a = s;
        if !c {
            return false;
        }
    }
    true
}

/// Subtracts one at the least significant limb; returns the borrow out.
#[inline]
pub fn decrement(acc: &mut [u64]) -> bool {
    for a in acc.iter_mut() {
        let (d, b) = a.overflowing_sub(1);
        *a = d;
        if !b {
            return false;
        }
    }
    true
}

/// Logical right shift by one bit with `top` entering at the most significant position.
/// Returns the bit shifted out.
#[inline]
pub fn shr1(acc: &mut [u64], top: bool) -> bool {
    let Some(&first) = acc.first() else {
        return false;
    };
    let n = acc.len();
    for i in 0..n - 1 {
        acc[i] = (acc[i] >> 1) | (acc[i + 1] << 63);
    }
    acc[n - 1] = (acc[n - 1] >> 1) | ((top as u64) << 63);
    first & 1 == 1
}

/// Left shift by `bits` in place (any amount); bits leaving the top are discarded.
pub fn shl_in_place(acc: &mut [u64], bits: u64) {
    let n = acc.len();
    let limb_shift = (bits / 64) as usize;
    let bit_shift = (bits % 64) as u32;
    if limb_shift >= n {
        acc.iter_mut().for_each(|l| *l = 0);
        return;
    }
    if limb_shift > 0 {
        acc.copy_within(..n - limb_shift, limb_shift);
        acc[..limb_shift].iter_mut().for_each(|l| *l = 0);
    }
    if bit_shift != 0 {
        for i in (limb_shift + 1..n).rev() {
            acc[i] = (acc[i] << bit_shift) | (acc[i - 1] >> (64 - bit_shift));
        }
        acc[limb_shift] <<= bit_shift;
    }
}

/// Number of leading zero bits across the whole limb array (top limb first).
pub fn leading_zeros(acc: &[u64]) -> u64 {
    let mut total = 0u64;
    for &l in acc.iter().rev() {
        if l == 0 {
            total += 64;
        } else {
            return total + l.leading_zeros() as u64;
        }
    }
    total
}

/// Compares two equal-length limb arrays as unsigned integers.
pub fn cmp_limbs(a: &[u64], b: &[u64]) -> core::cmp::Ordering {
    debug_assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            core::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    core::cmp::Ordering::Equal
}
