//! Two-sided bounds for the expected hitting time of the perfect squares.
//!
//! With `N = K^2`, `P = P_0(A_N)` and overshoot constants `L_N < U_N`,
//!
//! ```text
//! E_N(0) + L_N P  <  E(0)  <  E_N(0) + U_N P
//! ```
//!
//! where, writing `eps = (5/7)|w+|^(2K-4)`,
//!
//! ```text
//! L_N = sigma(5; 5/7 - eps, 2/7 - eps) / 6
//! U_N = sigma(1; 5/7 + eps, 2/7 + eps)
//! ```

mod series;

use core::fmt;

use crate::hitprob::{self, CharacteristicRoots, HitProbError};
use crate::numerics::{ExactRational, Float, PrecisionContext, Round};
use crate::walkmodel::{self, DieModel, TargetSet, WalkError};

pub use series::{sigma_series, SeriesScalar};

/// Smallest cutoff root for which the overshoot bounds hold.
pub const MIN_K: u64 = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertifyError {
    KTooSmall { k: u64 },
    CutoffOverflow,
    InvalidShift { d: i64 },
    InvalidRatio,
    Divergent,
    EnvelopeTooWide,
    PrecisionInsufficient { required: u32, available: u32 },
    NonPositiveRadius,
    Walk(WalkError),
    Roots(HitProbError),
}

impl fmt::Display for CertifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::KTooSmall { k } => write!(f, "K must be at least {MIN_K}, got {k}"),
            Self::CutoffOverflow => f.write_str("K^2 does not fit in 64 bits"),
            Self::InvalidShift { d } => write!(f, "series shift must be 1 or 5, got {d}"),
            Self::InvalidRatio => f.write_str("series ratio must be positive"),
            Self::Divergent => f.write_str("series ratio must be below 1"),
            Self::EnvelopeTooWide => f.write_str("envelope is not below 2/7"),
            Self::PrecisionInsufficient { required, available } => write!(
                f,
                "{available} working digits is too few for this K; use at least {required}"
            ),
            Self::NonPositiveRadius => f.write_str("error radius must be positive"),
            Self::Walk(e) => e.fmt(f),
            Self::Roots(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for CertifyError {}

impl From<WalkError> for CertifyError {
    fn from(e: WalkError) -> Self {
        Self::Walk(e)
    }
}

impl From<HitProbError> for CertifyError {
    fn from(e: HitProbError) -> Self {
        Self::Roots(e)
    }
}

/// `ceil(0.15 K) + 60`, the working digits required by [`certify_squares`].
pub fn recommended_digits(k: u64) -> u32 {
    let d = (15 * k as u128).div_ceil(100) + 60;
    u32::try_from(d).unwrap_or(u32::MAX)
}

/// Overshoot constants in exact arithmetic for a given envelope value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactOvershootBounds {
    pub k: u64,
    pub epsilon_n: ExactRational,
    pub r_minus: ExactRational,
    pub r_plus: ExactRational,
    pub t_minus: ExactRational,
    pub t_plus: ExactRational,
    pub l_n: ExactRational,
    pub u_n: ExactRational,
}

pub fn overshoot_bounds_exact(k: u64, epsilon_n: &ExactRational) -> Result<ExactOvershootBounds, CertifyError> {
    if k < MIN_K {
        return Err(CertifyError::KTooSmall { k });
    }
    if epsilon_n.is_negative() {
        return Err(CertifyError::InvalidRatio);
    }
    let five_sevenths = ExactRational::from_ratio(5, 7);
    let two_sevenths = ExactRational::from_ratio(2, 7);
    let r_minus = &five_sevenths - epsilon_n;
    let r_plus = &five_sevenths + epsilon_n;
    let t_minus = &two_sevenths - epsilon_n;
    let t_plus = &two_sevenths + epsilon_n;
    if t_minus <= ExactRational::zero() {
        return Err(CertifyError::EnvelopeTooWide);
    }
    let l_n = &sigma_series(5, &r_minus, &t_minus, k)? / &ExactRational::from_int(6);
    let u_n = sigma_series(1, &r_plus, &t_plus, k)?;
    Ok(ExactOvershootBounds {
        k,
        epsilon_n: epsilon_n.clone(),
        r_minus,
        r_plus,
        t_minus,
        t_plus,
        l_n,
        u_n,
    })
}

/// Overshoot constants at working precision. `l_n` is rounded down and `u_n`
/// up, so the enclosure is never narrowed by rounding.
#[derive(Clone, Debug)]
pub struct OvershootBounds {
    pub k: u64,
    pub epsilon_n: Float,
    pub r_minus: Float,
    pub r_plus: Float,
    pub t_minus: Float,
    pub t_plus: Float,
    pub l_n: Float,
    pub u_n: Float,
}

pub fn overshoot_bounds(
    k: u64,
    roots: &CharacteristicRoots,
    ctx: &PrecisionContext,
) -> Result<OvershootBounds, CertifyError> {
    if k < MIN_K {
        return Err(CertifyError::KTooSmall { k });
    }
    let eps = hitprob::epsilon(2 * k - 4, roots)?.epsilon;
    let exact = overshoot_bounds_exact(k, &eps.to_rational())?;
    let limbs = ctx.limbs();
    let conv = |q: &ExactRational, mode| Float::from_rational(q, limbs, mode);
    Ok(OvershootBounds {
        k,
        epsilon_n: eps.with_limbs(limbs, Round::Up),
        r_minus: conv(&exact.r_minus, Round::Down),
        r_plus: conv(&exact.r_plus, Round::Up),
        t_minus: conv(&exact.t_minus, Round::Down),
        t_plus: conv(&exact.t_plus, Round::Up),
        l_n: conv(&exact.l_n, Round::Down),
        u_n: conv(&exact.u_n, Round::Up),
    })
}

/// Result of [`certify_squares`]: the true `E(s)` lies in
/// `(point_value, point_value + error_radius)`.
#[derive(Clone, Debug)]
pub struct CertifiedEstimate {
    pub k: u64,
    pub cutoff: u64,
    pub start: u64,
    pub precision_digits: u32,
    pub e_n: Float,
    pub p_overshoot: Float,
    pub bounds: OvershootBounds,
    pub point_value: Float,
    pub error_radius: Float,
    pub certified_digits: usize,
    /// `P_s(A_N) = 0`: the truncated value is exact and the radius is zero.
    pub degenerate: bool,
}

/// Decimal places shared by `point` and `point + radius` (integer parts must agree).
pub fn certified_digit_count(point: &Float, radius: &Float) -> Result<usize, CertifyError> {
    if !radius.is_positive() {
        return Err(CertifyError::NonPositiveRadius);
    }
    let upper = point.add_rounded(radius, Round::Up);
    let (_, _, exp10) = radius.decimal_digits(1, true);
    let places = usize::try_from(2 - exp10.min(0)).expect("small");
    let (ln, li, lf) = point.fixed_digits(places);
    let (un, ui, uf) = upper.fixed_digits(places);
    if ln != un || li != ui {
        return Ok(0);
    }
    Ok(lf.bytes().zip(uf.bytes()).take_while(|(a, b)| a == b).count())
}

/// Certifies `E(start)` for the perfect squares with a fair six-sided die and
/// cutoff `N = K^2`.
pub fn certify_squares(k: u64, ctx: &PrecisionContext, start: u64) -> Result<CertifiedEstimate, CertifyError> {
    certify_squares_with(k, ctx, start, |_| {})
}

/// As [`certify_squares`], calling `progress(s)` after each state of the sweep.
pub fn certify_squares_with(
    k: u64,
    ctx: &PrecisionContext,
    start: u64,
    mut progress: impl FnMut(u64),
) -> Result<CertifiedEstimate, CertifyError> {
    if k < MIN_K {
        return Err(CertifyError::KTooSmall { k });
    }
    let cutoff = k.checked_mul(k).ok_or(CertifyError::CutoffOverflow)?;
    let required = recommended_digits(k);
    if ctx.working_digits() < required {
        return Err(CertifyError::PrecisionInsufficient {
            required,
            available: ctx.working_digits(),
        });
    }
    let roots = hitprob::compute_roots(ctx)?;
    let bounds = overshoot_bounds(k, &roots, ctx)?;
    let sol = walkmodel::solve_pair_with(
        &TargetSet::perfect_squares(),
        &DieModel::six(),
        cutoff,
        start,
        ctx,
        |s, _, _| progress(s),
    )?;
    let p = &sol.overshoot_prob;
    let point_value = &sol.e_n_value + &bounds.l_n.mul_rounded(p, Round::Nearest);
    let gap = bounds.u_n.sub_rounded(&bounds.l_n, Round::Up);
    let error_radius = gap.mul_rounded(p, Round::Up);
    let cap = (ctx.working_digits() - ctx.guard_digits()) as usize;
    let degenerate = p.is_zero();
    let certified_digits = if degenerate {
        cap
    } else {
        certified_digit_count(&point_value, &error_radius)?.min(cap)
    };
    Ok(CertifiedEstimate {
        k,
        cutoff,
        start,
        precision_digits: ctx.working_digits(),
        e_n: sol.e_n_value,
        p_overshoot: sol.overshoot_prob,
        bounds,
        point_value,
        error_radius,
        certified_digits,
        degenerate,
    })
}
