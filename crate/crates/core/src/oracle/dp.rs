use alloc::vec;
use alloc::vec::Vec;

use crate::numerics::ExactRational;
use crate::walkmodel::{DieModel, TargetSet, WalkError};

use super::OracleError;

/// Largest cutoff accepted by the exact solver.
pub const EXACT_MAX_CUTOFF: u64 = 5000;

/// `E_N(s)` and `P_s(A_N)` for every `s` in `0..=N`, in exact arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactTable {
    pub cutoff: u64,
    pub expect: Vec<ExactRational>,
    pub overshoot: Vec<ExactRational>,
}

impl ExactTable {
    /// The pair at `s`, with the boundary values `(0, 1)` for `s > N`.
    pub fn at(&self, s: u64) -> (ExactRational, ExactRational) {
        match usize::try_from(s).ok().filter(|&i| i < self.expect.len()) {
            Some(i) => (self.expect[i].clone(), self.overshoot[i].clone()),
            None => (ExactRational::zero(), ExactRational::one()),
        }
    }
}

/// Backward substitution over the full state array `0..=N+M`.
pub fn exact_dp_table(target: &TargetSet, die: &DieModel, cutoff: u64) -> Result<ExactTable, OracleError> {
    if cutoff > EXACT_MAX_CUTOFF {
        return Err(OracleError::CutoffTooLarge {
            cutoff,
            max: EXACT_MAX_CUTOFF,
        });
    }
    if target.declared_bound() < cutoff {
        return Err(WalkError::CutoffExceedsTargetBound {
            cutoff,
            bound: target.declared_bound(),
        }
        .into());
    }
    let n = cutoff as usize;
    let m = die.sides() as usize;
    let sides = ExactRational::from_int(m as i64);
    let one = ExactRational::one();
    let mut e = vec![ExactRational::zero(); n + m + 1];
    let mut p = vec![ExactRational::one(); n + m + 1];
    for s in (0..=n).rev() {
        if target.membership(s as u64) == Some(true) {
            e[s] = ExactRational::zero();
            p[s] = ExactRational::zero();
            continue;
        }
        let mut se = ExactRational::zero();
        let mut sp = ExactRational::zero();
        for j in s + 1..=s + m {
            se = &se + &e[j];
            sp = &sp + &p[j];
        }
        e[s] = &(&se / &sides) + &one;
        p[s] = &sp / &sides;
    }
    e.truncate(n + 1);
    p.truncate(n + 1);
    Ok(ExactTable {
        cutoff,
        expect: e,
        overshoot: p,
    })
}

/// Exact `(E_N(s), P_s(A_N))`.
pub fn exact_dp(
    target: &TargetSet,
    die: &DieModel,
    cutoff: u64,
    start: u64,
) -> Result<(ExactRational, ExactRational), OracleError> {
    Ok(exact_dp_table(target, die, cutoff)?.at(start))
}
