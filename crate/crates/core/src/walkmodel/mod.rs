//! The cumulative-sum walk with uniform increments on `{1, ..., M}` and the two
//! truncated backward recursions on `[0, N]`:
//!
//! ```text
//! E_N(s) = 0                                  s in H, s <= N
//! E_N(s) = 1 + (E_N(s+1) + ... + E_N(s+M))/M  s <= N, s not in H
//! E_N(s) = 0                                  s > N
//!
//! P_s(A_N) = 0                                s in H, s <= N
//! P_s(A_N) = (P_{s+1} + ... + P_{s+M})/M      s <= N, s not in H
//! P_s(A_N) = 1                                s > N
//! ```
//!
//! `E_N(s)` is the expected number of rolls until the walk either enters the
//! target or passes `N`; `P_s(A_N)` is the probability that it passes `N`
//! first. Both are swept from `s = N` down to the requested start holding only
//! `M + 1` values per recursion.

mod target;
mod window;

use core::fmt;

use crate::numerics::{ExactRational, Float, PrecisionContext, SmallDivisor};

pub use target::{DescendingMembership, TargetKind, TargetSet};
pub(crate) use window::RollingWindow;

/// Largest supported die.
pub const MAX_SIDES: u32 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WalkError {
    InvalidDie { sides: u32 },
    CutoffExceedsTargetBound { cutoff: u64, bound: u64 },
    UnsortedTarget { index: usize },
    ElementBeyondBound { element: u64, bound: u64 },
}

impl fmt::Display for WalkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidDie { sides } => {
                write!(f, "die must have between 2 and {MAX_SIDES} sides, got {sides}")
            }
            Self::CutoffExceedsTargetBound { cutoff, bound } => write!(
                f,
                "cutoff {cutoff} exceeds the target's declared membership bound {bound}"
            ),
            Self::UnsortedTarget { index } => {
                write!(f, "target elements must be strictly increasing (entry {index})")
            }
            Self::ElementBeyondBound { element, bound } => {
                write!(f, "target element {element} exceeds declared bound {bound}")
            }
        }
    }
}

impl core::error::Error for WalkError {}

/// Fair die with faces `1..=sides`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DieModel {
    sides: u32,
    divisor: SmallDivisor,
}

impl DieModel {
    pub fn new(sides: u32) -> Result<Self, WalkError> {
        if !(2..=MAX_SIDES).contains(&sides) {
            return Err(WalkError::InvalidDie { sides });
        }
        Ok(Self {
            sides,
            divisor: SmallDivisor::new(sides as u64),
        })
    }

    pub fn six() -> Self {
        Self::new(6).expect("six sides")
    }

    pub fn sides(&self) -> u32 {
        self.sides
    }

    /// `(M + 1) / 2`.
    pub fn mean(&self) -> ExactRational {
        ExactRational::from_ratio(self.sides as i64 + 1, 2)
    }

    pub(crate) fn divisor(&self) -> &SmallDivisor {
        &self.divisor
    }
}

/// `E_N(s)` and `P_s(A_N)` at one start state.
#[derive(Clone, Debug)]
pub struct TruncationSolution {
    pub cutoff: u64,
    pub start: u64,
    pub e_n_value: Float,
    pub overshoot_prob: Float,
    pub die: DieModel,
    pub target_kind: TargetKind,
}

type Visitor<'a> = &'a mut dyn FnMut(u64, Option<&Float>, Option<&Float>);

#[allow(clippy::too_many_arguments)]
fn sweep(
    target: &TargetSet,
    die: &DieModel,
    cutoff: u64,
    start: u64,
    ctx: &PrecisionContext,
    mut expect: Option<&mut RollingWindow>,
    mut overshoot: Option<&mut RollingWindow>,
    visit: Visitor<'_>,
) -> Result<(), WalkError> {
    if target.declared_bound() < cutoff {
        return Err(WalkError::CutoffExceedsTargetBound {
            cutoff,
            bound: target.declared_bound(),
        });
    }
    if start > cutoff {
        return Ok(());
    }
    let one = ctx.one();
    let m = die.sides() as u64;
    let div = die.divisor();
    let mut members = target.descending(cutoff);
    let mut s = cutoff;
    loop {
        let absorbing = members.contains(s);
        if let Some(w) = expect.as_deref_mut() {
            if absorbing {
                w.set_zero(s);
            } else {
                w.average_into(s, s + 1..=s + m, div, Some(&one));
            }
        }
        if let Some(w) = overshoot.as_deref_mut() {
            if absorbing {
                w.set_zero(s);
            } else {
                w.average_into(s, s + 1..=s + m, div, None);
            }
        }
        visit(
            s,
            expect.as_deref().map(|w| w.get(s)),
            overshoot.as_deref().map(|w| w.get(s)),
        );
        if s == start {
            return Ok(());
        }
        s -= 1;
    }
}

fn width(die: &DieModel) -> usize {
    die.sides() as usize + 1
}

/// `E_N(start)`, visiting `(s, E_N(s))` for every `s` from `cutoff` down to `start`.
pub fn solve_truncated_with(
    target: &TargetSet,
    die: &DieModel,
    cutoff: u64,
    start: u64,
    ctx: &PrecisionContext,
    mut visit: impl FnMut(u64, &Float),
) -> Result<Float, WalkError> {
    let mut w = RollingWindow::new(width(die), &ctx.zero());
    sweep(target, die, cutoff, start, ctx, Some(&mut w), None, &mut |s, e, _| {
        visit(s, e.expect("expectation window"))
    })?;
    Ok(if start > cutoff { ctx.zero() } else { w.get(start).clone() })
}

pub fn solve_truncated(
    target: &TargetSet,
    die: &DieModel,
    cutoff: u64,
    start: u64,
    ctx: &PrecisionContext,
) -> Result<Float, WalkError> {
    solve_truncated_with(target, die, cutoff, start, ctx, |_, _| {})
}

/// `P_start(A_N)`, visiting `(s, P_s(A_N))` in descending `s`.
pub fn solve_overshoot_with(
    target: &TargetSet,
    die: &DieModel,
    cutoff: u64,
    start: u64,
    ctx: &PrecisionContext,
    mut visit: impl FnMut(u64, &Float),
) -> Result<Float, WalkError> {
    let mut w = RollingWindow::new(width(die), &ctx.one());
    sweep(target, die, cutoff, start, ctx, None, Some(&mut w), &mut |s, _, p| {
        visit(s, p.expect("overshoot window"))
    })?;
    Ok(if start > cutoff { ctx.one() } else { w.get(start).clone() })
}

pub fn solve_overshoot(
    target: &TargetSet,
    die: &DieModel,
    cutoff: u64,
    start: u64,
    ctx: &PrecisionContext,
) -> Result<Float, WalkError> {
    solve_overshoot_with(target, die, cutoff, start, ctx, |_, _| {})
}

/// Both recursions in one descending sweep, visiting `(s, E_N(s), P_s(A_N))`.
/// Results are digit-identical to the separate solves.
pub fn solve_pair_with(
    target: &TargetSet,
    die: &DieModel,
    cutoff: u64,
    start: u64,
    ctx: &PrecisionContext,
    mut visit: impl FnMut(u64, &Float, &Float),
) -> Result<TruncationSolution, WalkError> {
    let mut we = RollingWindow::new(width(die), &ctx.zero());
    let mut wp = RollingWindow::new(width(die), &ctx.one());
    sweep(
        target,
        die,
        cutoff,
        start,
        ctx,
        Some(&mut we),
        Some(&mut wp),
        &mut |s, e, p| visit(s, e.expect("expectation window"), p.expect("overshoot window")),
    )?;
    let (e, p) = if start > cutoff {
        (ctx.zero(), ctx.one())
    } else {
        (we.get(start).clone(), wp.get(start).clone())
    };
    Ok(TruncationSolution {
        cutoff,
        start,
        e_n_value: e,
        overshoot_prob: p,
        die: *die,
        target_kind: target.kind(),
    })
}

pub fn solve_pair(
    target: &TargetSet,
    die: &DieModel,
    cutoff: u64,
    start: u64,
    ctx: &PrecisionContext,
) -> Result<TruncationSolution, WalkError> {
    solve_pair_with(target, die, cutoff, start, ctx, |_, _, _| {})
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(40).unwrap()
    }

    #[test]
    fn die_validation() {
        assert_eq!(DieModel::new(1), Err(WalkError::InvalidDie { sides: 1 }));
        assert!(DieModel::new(2).is_ok());
        assert_eq!(DieModel::six().mean(), ExactRational::from_ratio(7, 2));
    }

    #[test]
    fn absorbing_and_boundary_rows() {
        let t = TargetSet::perfect_squares();
        let d = DieModel::six();
        let c = ctx();
        let at_square = solve_pair(&t, &d, 16, 16, &c).unwrap();
        assert!(at_square.e_n_value.is_zero() && at_square.overshoot_prob.is_zero());
        assert!(solve_overshoot(&t, &d, 16, 9, &c).unwrap().is_zero());
        let beyond = solve_pair(&t, &d, 16, 17, &c).unwrap();
        assert!(beyond.e_n_value.is_zero());
        assert_eq!(beyond.overshoot_prob, c.one());
    }

    #[test]
    fn single_step_before_cutoff() {
        // s = N, N not a square: one roll always passes N.
        let t = TargetSet::perfect_squares();
        let c = ctx();
        let sol = solve_pair(&t, &DieModel::six(), 15, 15, &c).unwrap();
        assert_eq!(sol.e_n_value, c.one());
        assert_eq!(sol.overshoot_prob, c.one());
    }

    #[test]
    fn bound_is_enforced() {
        let t = TargetSet::interval(1, 50);
        let err = solve_pair(&t, &DieModel::six(), 51, 0, &ctx()).unwrap_err();
        assert_eq!(err, WalkError::CutoffExceedsTargetBound { cutoff: 51, bound: 50 });
    }

    #[test]
    fn visitor_sees_descending_states() {
        let t = TargetSet::perfect_squares();
        let mut seen = Vec::new();
        solve_pair_with(&t, &DieModel::six(), 20, 3, &ctx(), |s, _, _| seen.push(s)).unwrap();
        assert_eq!(seen, (3..=20).rev().collect::<Vec<_>>());
    }

    #[test]
    fn dense_target_gives_exact_one_step() {
        // From 0 every face lands in {1, ..., N}: E = 1, P = 0.
        let t = TargetSet::interval(1, 100);
        let c = ctx();
        let sol = solve_pair(&t, &DieModel::six(), 100, 0, &c).unwrap();
        assert_eq!(sol.e_n_value, c.one());
        assert!(sol.overshoot_prob.is_zero());
    }

    #[test]
    fn pair_matches_separate_solves() {
        let c = ctx();
        for t in [
            TargetSet::perfect_squares(),
            TargetSet::explicit(vec![3, 7, 20], None).unwrap(),
        ] {
            for die in [DieModel::six(), DieModel::new(3).unwrap()] {
                let pair = solve_pair(&t, &die, 400, 0, &c).unwrap();
                let e = solve_truncated(&t, &die, 400, 0, &c).unwrap();
                let p = solve_overshoot(&t, &die, 400, 0, &c).unwrap();
                assert_eq!(pair.e_n_value.to_decimal_string(60), e.to_decimal_string(60));
                assert_eq!(pair.overshoot_prob.to_decimal_string(60), p.to_decimal_string(60));
            }
        }
    }
}
