use alloc::vec::Vec;

use crate::numerics::{Float, Scratch, SmallDivisor};

/// Circular buffer of `width` values indexed by position modulo `width`.
///
/// The averaging step sums the source slots in the order given, divides by the
/// die size and optionally adds one; every operation rounds to nearest. Any
/// reference implementation must use the same order to be digit-identical.
pub(crate) struct RollingWindow {
    slots: Vec<Float>,
    acc: Float,
    scratch: Scratch,
}

impl RollingWindow {
    pub(crate) fn new(width: usize, fill: &Float) -> Self {
        Self {
            slots: (0..width).map(|_| fill.clone()).collect(),
            acc: fill.clone(),
            scratch: Scratch::new(),
        }
    }

    #[inline]
    fn slot(&self, pos: u64) -> usize {
        (pos % self.slots.len() as u64) as usize
    }

    #[inline]
    pub(crate) fn get(&self, pos: u64) -> &Float {
        &self.slots[self.slot(pos)]
    }

    #[inline]
    pub(crate) fn set_zero(&mut self, pos: u64) {
        let i = self.slot(pos);
        self.slots[i].set_zero();
    }

    pub(crate) fn set(&mut self, pos: u64, value: &Float) {
        let i = self.slot(pos);
        self.slots[i].assign(value);
    }

    /// `slots[pos] = (slots[sources[0]] + ... + slots[sources[k-1]]) / divisor (+ 1)`.
    #[inline]
    pub(crate) fn average_into(
        &mut self,
        pos: u64,
        sources: impl Iterator<Item = u64>,
        divisor: &SmallDivisor,
        plus: Option<&Float>,
    ) {
        let mut first = true;
        for src in sources {
            let i = self.slot(src);
            if first {
                self.acc.assign(&self.slots[i]);
                first = false;
            } else {
                self.acc.add_assign_with(&self.slots[i], &mut self.scratch);
            }
        }
        self.acc.div_small_assign_with(divisor, &mut self.scratch);
        if let Some(one) = plus {
            self.acc.add_assign_with(one, &mut self.scratch);
        }
        let i = self.slot(pos);
        core::mem::swap(&mut self.acc, &mut self.slots[i]);
    }
}
