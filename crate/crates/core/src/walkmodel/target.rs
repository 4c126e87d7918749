use alloc::vec;
use alloc::vec::Vec;

use num_integer::Roots;

use super::WalkError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TargetKind {
    PerfectSquares,
    ExplicitList,
    PredicateTable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Squares,
    /// Strictly increasing.
    List(Vec<u64>),
    /// Bit `h` set iff `h` is a member, for `h <= declared_bound`.
    Table { bits: Vec<u64>, max_member: Option<u64> },
}

/// Set of nonnegative integers that stops the walk on first entry.
///
/// Membership is answerable for every `h <= declared_bound()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetSet {
    repr: Repr,
    declared_bound: u64,
}

impl TargetSet {
    /// `{1, 4, 9, ...}`; zero is not a member.
    pub fn perfect_squares() -> Self {
        Self {
            repr: Repr::Squares,
            declared_bound: u64::MAX,
        }
    }

    /// A finite set given by its elements in strictly increasing order.
    ///
    /// Without an explicit bound the set answers membership everywhere (every
    /// integer not listed is a non-member).
    pub fn explicit(elements: Vec<u64>, bound: Option<u64>) -> Result<Self, WalkError> {
        if let Some(pos) = elements.windows(2).position(|w| w[0] >= w[1]) {
            return Err(WalkError::UnsortedTarget { index: pos + 1 });
        }
        let declared_bound = bound.unwrap_or(u64::MAX);
        if let Some(&last) = elements.last() {
            if last > declared_bound {
                return Err(WalkError::ElementBeyondBound {
                    element: last,
                    bound: declared_bound,
                });
            }
        }
        Ok(Self {
            repr: Repr::List(elements),
            declared_bound,
        })
    }

    /// Bit table of `predicate(h)` for `0 <= h <= bound`.
    pub fn from_predicate(bound: u64, predicate: impl Fn(u64) -> bool) -> Self {
        let len = (bound / 64 + 1) as usize;
        let mut bits = vec![0u64; len];
        let mut max_member = None;
        for h in 0..=bound {
            if predicate(h) {
                bits[(h / 64) as usize] |= 1 << (h % 64);
                max_member = Some(h);
            }
        }
        Self {
            repr: Repr::Table { bits, max_member },
            declared_bound: bound,
        }
    }

    /// Every integer in `lo..=hi`, answerable up to `hi`.
    pub fn interval(lo: u64, hi: u64) -> Self {
        Self::from_predicate(hi, |h| h >= lo)
    }

    pub fn kind(&self) -> TargetKind {
        match self.repr {
            Repr::Squares => TargetKind::PerfectSquares,
            Repr::List(_) => TargetKind::ExplicitList,
            Repr::Table { .. } => TargetKind::PredicateTable,
        }
    }

    pub fn declared_bound(&self) -> u64 {
        self.declared_bound
    }

    /// `None` beyond the declared bound.
    pub fn membership(&self, h: u64) -> Option<bool> {
        if h > self.declared_bound {
            return None;
        }
        Some(match &self.repr {
            Repr::Squares => h != 0 && {
                let r = h.sqrt();
                r * r == h
            },
            Repr::List(elems) => elems.binary_search(&h).is_ok(),
            Repr::Table { bits, .. } => bits[(h / 64) as usize] >> (h % 64) & 1 == 1,
        })
    }

    /// Whether some member `>= h` exists within the answerable range.
    pub fn has_member_at_or_above(&self, h: u64) -> bool {
        match &self.repr {
            Repr::Squares => true,
            Repr::List(elems) => elems.last().is_some_and(|&last| last >= h),
            Repr::Table { max_member, .. } => max_member.is_some_and(|m| m >= h),
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.has_member_at_or_above(0)
    }

    /// Membership cursor for queries at non-increasing positions, starting at `from`.
    pub fn descending(&self, from: u64) -> DescendingMembership<'_> {
        let state = match &self.repr {
            Repr::Squares => from.sqrt(),
            Repr::List(elems) => elems.partition_point(|&e| e <= from) as u64,
            Repr::Table { .. } => 0,
        };
        DescendingMembership {
            target: self,
            state,
            last: from,
        }
    }
}

/// O(1) amortized membership for a sweep that visits states in descending order.
pub struct DescendingMembership<'a> {
    target: &'a TargetSet,
    // squares: floor(sqrt(last)); list: number of elements <= last
    state: u64,
    last: u64,
}

impl DescendingMembership<'_> {
    /// Requires `h` not to exceed the previous query (or the starting point)
    /// and to lie within the declared bound.
    #[inline]
    pub fn contains(&mut self, h: u64) -> bool {
        debug_assert!(h <= self.last);
        self.last = h;
        match &self.target.repr {
            Repr::Squares => {
                while self.state > 0 && self.state * self.state > h {
                    self.state -= 1;
                }
                self.state > 0 && self.state * self.state == h
            }
            Repr::List(elems) => {
                while self.state > 0 && elems[self.state as usize - 1] > h {
                    self.state -= 1;
                }
                self.state > 0 && elems[self.state as usize - 1] == h
            }
            Repr::Table { bits, .. } => bits[(h / 64) as usize] >> (h % 64) & 1 == 1,
        }
    }
}
