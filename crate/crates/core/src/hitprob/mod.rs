//! Probability `p_n` that the partial sums of a fair six-sided die ever equal `n`.
//!
//! `p_n = (p_{n-1} + ... + p_{n-6}) / 6` with `p_0 = 1` and `p_n = 0` for
//! `n < 0`. The characteristic polynomial `6z^6 - z^5 - ... - z - 1` factors as
//! `(z - 1)(6z^5 + 5z^4 + 4z^3 + 3z^2 + 2z + 1)`, giving
//!
//! ```text
//! p_n = (2 + u^n + v+^n + v-^n + w+^n + w-^n) / 7
//! ```
//!
//! and the envelope `|p_n - 2/7| <= eps_n = (5/7) |w+|^n`.

mod roots;

use alloc::vec::Vec;
use core::fmt;

use crate::numerics::{ExactRational, Float, PrecisionContext, Round, SmallDivisor};
use crate::walkmodel::RollingWindow;

pub use roots::{characteristic_residual, compute_roots, CharacteristicRoots, ComplexFloat};

/// Largest `n` accepted by [`pn_exact`].
pub const EXACT_MAX_N: u64 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HitProbError {
    OutOfRange { n: u64, max: u64 },
    ZeroIndex,
    NonConvergence { root: usize },
}

impl fmt::Display for HitProbError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::OutOfRange { n, max } => write!(f, "n = {n} is beyond the exact range 0..={max}"),
            Self::ZeroIndex => f.write_str("n must be at least 1"),
            Self::NonConvergence { root } => write!(f, "root refinement did not converge (root {root})"),
        }
    }
}

impl core::error::Error for HitProbError {}

/// `p_0, ..., p_n` in one representation; `q_n = 1 - p_n` on demand.
#[derive(Clone, Debug)]
pub struct HitProbSeries<T> {
    values: Vec<T>,
}

impl<T> HitProbSeries<T> {
    /// `p_n`, or `None` past the end of the series.
    pub fn get(&self, n: u64) -> Option<&T> {
        self.values.get(usize::try_from(n).ok()?)
    }

    /// Largest index held.
    pub fn max_n(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }
}

impl HitProbSeries<ExactRational> {
    pub fn exact(n_max: u64) -> Result<Self, HitProbError> {
        if n_max > EXACT_MAX_N {
            return Err(HitProbError::OutOfRange { n: n_max, max: EXACT_MAX_N });
        }
        let six = ExactRational::from_int(6);
        let mut values = Vec::with_capacity(n_max as usize + 1);
        values.push(ExactRational::one());
        for n in 1..=n_max as usize {
            let sum = values[n.saturating_sub(6)..n]
                .iter()
                .fold(ExactRational::zero(), |acc, p| &acc + p);
            values.push(&sum / &six);
        }
        Ok(Self { values })
    }

    pub fn skip(&self, n: u64) -> Option<ExactRational> {
        self.get(n).map(|p| &ExactRational::one() - p)
    }
}

impl HitProbSeries<Float> {
    pub fn decimal(n_max: u64, ctx: &PrecisionContext) -> Self {
        let mut values = Vec::new();
        sweep_decimal(n_max, ctx, |_, p| values.push(p.clone()));
        Self { values }
    }

    pub fn skip(&self, n: u64) -> Option<Float> {
        self.get(n).map(|p| Float::from_u64(1, p.limbs()).sub_rounded(p, Round::Nearest))
    }
}

/// Forward recursion through a seven-slot window; `p_n` sits at position `n + 6`
/// so the zero seeds for `n < 0` occupy positions `0..6`.
fn sweep_decimal(n_max: u64, ctx: &PrecisionContext, mut visit: impl FnMut(u64, &Float)) {
    let mut w = RollingWindow::new(7, &ctx.zero());
    w.set(6, &ctx.one());
    visit(0, w.get(6));
    let div = SmallDivisor::new(6);
    for n in 1..=n_max {
        let pos = n + 6;
        w.average_into(pos, (n..pos).rev(), &div, None);
        visit(n, w.get(pos));
    }
}

/// Exact `p_n` for `n <= 64`.
pub fn pn_exact(n: u64) -> Result<ExactRational, HitProbError> {
    let series = HitProbSeries::exact(n)?;
    Ok(series.values[n as usize].clone())
}

/// `p_n` from the recurrence at the context's precision.
pub fn pn_decimal(n: u64, ctx: &PrecisionContext) -> Float {
    let mut out = ctx.one();
    sweep_decimal(n, ctx, |k, p| {
        if k == n {
            out.assign(p);
        }
    });
    out
}

/// Rows `(n, p_n)` for `n = 1..=n_max`.
pub fn pn_table(n_max: u64, ctx: &PrecisionContext) -> Result<Vec<(u64, Float)>, HitProbError> {
    if n_max == 0 {
        return Err(HitProbError::ZeroIndex);
    }
    let mut rows = Vec::with_capacity(n_max as usize);
    sweep_decimal(n_max, ctx, |n, p| {
        if n > 0 {
            rows.push((n, p.clone()));
        }
    });
    Ok(rows)
}

/// `eps_n = (5/7) |w+|^n`, rounded so that it never understates the exact envelope.
#[derive(Clone, Debug)]
pub struct EpsilonBound {
    pub n: u64,
    pub epsilon: Float,
}

pub fn epsilon(n: u64, roots: &CharacteristicRoots) -> Result<EpsilonBound, HitProbError> {
    if n == 0 {
        return Err(HitProbError::ZeroIndex);
    }
    let limbs = roots.modulus_w.limbs();
    let five_sevenths = Float::from_rational(&ExactRational::from_ratio(5, 7), limbs, Round::Up);
    let power = roots.modulus_w_upper().pow_u64(n, Round::Up);
    Ok(EpsilonBound {
        n,
        epsilon: five_sevenths.mul_rounded(&power, Round::Up),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_and_small_values() {
        assert_eq!(pn_exact(0).unwrap(), ExactRational::one());
        assert_eq!(pn_exact(3).unwrap(), ExactRational::from_ratio(49, 216));
        assert_eq!(
            pn_exact(65),
            Err(HitProbError::OutOfRange { n: 65, max: EXACT_MAX_N })
        );
        let s = HitProbSeries::exact(2).unwrap();
        assert_eq!(s.skip(1).unwrap(), ExactRational::from_ratio(5, 6));
        assert_eq!(s.max_n(), 2);
        assert!(s.get(3).is_none());
    }

    #[test]
    fn decimal_tracks_exact() {
        let ctx = PrecisionContext::new(50).unwrap();
        let exact = HitProbSeries::exact(EXACT_MAX_N).unwrap();
        let dec = HitProbSeries::decimal(EXACT_MAX_N, &ctx);
        for n in 0..=EXACT_MAX_N {
            let want = ctx.rational(exact.get(n).unwrap());
            let got = dec.get(n).unwrap();
            assert_eq!(got.to_decimal_string(50), want.to_decimal_string(50), "n = {n}");
        }
        assert_eq!(pn_decimal(7, &ctx), *dec.get(7).unwrap());
        assert_eq!(pn_decimal(0, &ctx), ctx.one());
    }

    #[test]
    fn table_rows() {
        let ctx = PrecisionContext::new(30).unwrap();
        let rows = pn_table(1, &ctx).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].1.to_decimal_string(10), "0.1666666667");
        assert_eq!(pn_table(0, &ctx).unwrap_err(), HitProbError::ZeroIndex);
    }
}
