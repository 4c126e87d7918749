use core::cmp::Ordering;

use crate::numerics::{ExactRational, Float, Round};

use super::CertifyError;

/// Field operations shared by exact and floating evaluation of the series.
pub trait SeriesScalar: Clone {
    /// The integer `v` in the same representation (and precision) as `self`.
    fn int_like(&self, v: i64) -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    /// `rhs` is never zero at the call sites.
    fn over(&self, rhs: &Self) -> Self;
    fn cmp_int(&self, v: i64) -> Ordering;
}

impl SeriesScalar for ExactRational {
    fn int_like(&self, v: i64) -> Self {
        ExactRational::from_int(v)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn over(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn cmp_int(&self, v: i64) -> Ordering {
        self.cmp(&ExactRational::from_int(v))
    }
}

impl SeriesScalar for Float {
    fn int_like(&self, v: i64) -> Self {
        Float::from_i64(v, self.limbs())
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn over(&self, rhs: &Self) -> Self {
        self.div_rounded(rhs, Round::Nearest).expect("nonzero divisor")
    }
    fn cmp_int(&self, v: i64) -> Ordering {
        self.partial_cmp(&Float::from_i64(v, self.limbs()))
            .expect("floats are totally ordered")
    }
}

/// Closed form of `sum_{j>=0} [(K+1+j)^2 - K^2 - d] r^j t`:
///
/// ```text
/// t * [ (2K+1-d)/(1-r) + 2(K+1) r/(1-r)^2 + r(1+r)/(1-r)^3 ]
/// ```
pub fn sigma_series<T: SeriesScalar>(d: i64, r: &T, t: &T, k: u64) -> Result<T, CertifyError> {
    if d != 1 && d != 5 {
        return Err(CertifyError::InvalidShift { d });
    }
    if r.cmp_int(0) != Ordering::Greater {
        return Err(CertifyError::InvalidRatio);
    }
    if r.cmp_int(1) != Ordering::Less {
        return Err(CertifyError::Divergent);
    }
    let k = i64::try_from(k).map_err(|_| CertifyError::CutoffOverflow)?;
    let one = r.int_like(1);
    let gap = one.minus(r);
    let gap2 = gap.times(&gap);
    let gap3 = gap2.times(&gap);
    let constant = r.int_like(2 * k + 1 - d).over(&gap);
    let linear = r.int_like(2 * (k + 1)).times(r).over(&gap2);
    let quadratic = r.times(&one.plus(r)).over(&gap3);
    Ok(t.times(&constant.plus(&linear).plus(&quadratic)))
}
