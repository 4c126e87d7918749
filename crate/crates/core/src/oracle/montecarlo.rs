use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::walkmodel::{DieModel, TargetSet};

use super::OracleError;

/// Trials drawn from one generator stream.
pub const CHUNK_TRIALS: u64 = 1 << 16;
pub const DEFAULT_MAX_STEPS: u64 = 1_000_000;

const GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// Generator for chunk `c`: a SplitMix64 stream seeded with output `c + 1` of
/// the SplitMix64 stream seeded with `seed`.
pub fn chunk_rng(seed: u64, chunk: u64) -> SplitMix64 {
    let mut master = SplitMix64::seed_from_u64(seed.wrapping_add(chunk.wrapping_mul(GAMMA)));
    SplitMix64::seed_from_u64(master.next_u64())
}

pub fn chunk_count(trials: u64) -> u64 {
    trials.div_ceil(CHUNK_TRIALS)
}

/// `1 + floor(M u)` with `u = (x >> 11) 2^-53`, computed in integers.
#[inline]
pub fn roll(rng: &mut SplitMix64, sides: u32) -> u64 {
    let u = rng.next_u64() >> 11;
    1 + ((u as u128 * sides as u128) >> 53) as u64
}

#[derive(Clone, Debug)]
pub struct McConfig {
    pub trials: u64,
    pub seed: u64,
    pub die: DieModel,
    pub target: TargetSet,
    pub start: u64,
    pub max_steps: u64,
}

impl McConfig {
    pub fn new(target: TargetSet, trials: u64, seed: u64) -> Self {
        Self {
            trials,
            seed,
            die: DieModel::six(),
            target,
            start: 0,
            max_steps: DEFAULT_MAX_STEPS,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct McResult {
    pub mean: f64,
    pub std_error: f64,
    pub trials_completed: u64,
    /// Trials abandoned at `max_steps` or once no member could still be reached.
    pub capped_trials: u64,
}

impl McResult {
    /// An unbiased estimate of `E_s[T]` needs every trial to finish.
    pub fn is_valid(&self) -> bool {
        self.capped_trials == 0
    }
}

/// Integer moments of the completed trials; merging is exact and order independent.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct McAccumulator {
    pub completed: u64,
    pub capped: u64,
    pub sum: u128,
    pub sum_sq: u128,
}

impl McAccumulator {
    pub fn merge(&mut self, other: &Self) {
        self.completed += other.completed;
        self.capped += other.capped;
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
    }

    pub fn finish(&self) -> Result<McResult, OracleError> {
        if self.completed == 0 {
            return Err(OracleError::AllCapped { trials: self.capped });
        }
        let n = self.completed as f64;
        let mean = self.sum as f64 / n;
        let std_error = if self.completed > 1 {
            // n * sum_sq - sum^2 is exact in integers up to the u128 range
            let spread = (self.completed as u128)
                .checked_mul(self.sum_sq)
                .and_then(|a| a.checked_sub(self.sum * self.sum));
            let var = match spread {
                Some(s) => s as f64 / (n * (n - 1.0)),
                None => (self.sum_sq as f64 - self.sum as f64 * mean) / (n - 1.0),
            };
            libm::sqrt(var.max(0.0) / n)
        } else {
            0.0
        };
        Ok(McResult {
            mean,
            std_error,
            trials_completed: self.completed,
            capped_trials: self.capped,
        })
    }
}

/// Runs the trials belonging to `chunk`.
pub fn simulate_chunk(cfg: &McConfig, chunk: u64) -> McAccumulator {
    let mut rng = chunk_rng(cfg.seed, chunk);
    let first = chunk * CHUNK_TRIALS;
    let count = cfg.trials.saturating_sub(first).min(CHUNK_TRIALS);
    let sides = cfg.die.sides();
    let mut acc = McAccumulator::default();
    for _ in 0..count {
        match run_trial(&mut rng, sides, &cfg.target, cfg.start, cfg.max_steps) {
            Some(t) => {
                acc.completed += 1;
                acc.sum += t as u128;
                acc.sum_sq += (t as u128) * (t as u128);
            }
            None => acc.capped += 1,
        }
    }
    acc
}

fn run_trial(rng: &mut SplitMix64, sides: u32, target: &TargetSet, start: u64, max_steps: u64) -> Option<u64> {
    let mut pos = start;
    let mut steps = 0u64;
    loop {
        match target.membership(pos) {
            Some(true) => return Some(steps),
            Some(false) if steps < max_steps && target.has_member_at_or_above(pos) => {}
            _ => return None,
        }
        pos = pos.checked_add(roll(rng, sides))?;
        steps += 1;
    }
}

fn check(cfg: &McConfig) -> Result<(), OracleError> {
    if cfg.trials == 0 || cfg.max_steps == 0 {
        return Err(OracleError::InvalidConfig);
    }
    if !cfg.target.has_member_at_or_above(cfg.start) {
        return Err(OracleError::Unreachable);
    }
    Ok(())
}

/// Simulates `T = inf{t : S_t in H}` from `cfg.start`; deterministic in `cfg.seed`.
pub fn simulate_hitting(cfg: &McConfig) -> Result<McResult, OracleError> {
    check(cfg)?;
    let mut total = McAccumulator::default();
    for c in 0..chunk_count(cfg.trials) {
        total.merge(&simulate_chunk(cfg, c));
    }
    total.finish()
}

/// As [`simulate_hitting`] with the chunks spread over `workers` scoped threads.
#[cfg(feature = "std")]
pub fn simulate_hitting_parallel(cfg: &McConfig, workers: usize) -> Result<McResult, OracleError> {
    check(cfg)?;
    let chunks = chunk_count(cfg.trials);
    let workers = (workers.max(1) as u64).min(chunks);
    let mut total = McAccumulator::default();
    std::thread::scope(|scope| {
        let handles: alloc::vec::Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    let mut acc = McAccumulator::default();
                    for c in (w..chunks).step_by(workers as usize) {
                        acc.merge(&simulate_chunk(cfg, c));
                    }
                    acc
                })
            })
            .collect();
        for h in handles {
            total.merge(&h.join().expect("worker panicked"));
        }
    });
    total.finish()
}

#[derive(Clone, Debug, PartialEq)]
pub struct EverHitEstimate {
    pub n: u64,
    pub hits: u64,
    pub trials: u64,
    pub estimate: f64,
    /// Binomial standard error `sqrt(p(1-p)/trials)` at the estimate.
    pub std_error: f64,
}

/// Fraction of walks from 0 that land on `n` before passing it.
pub fn simulate_ever_hit(n: u64, trials: u64, seed: u64, die: &DieModel) -> Result<EverHitEstimate, OracleError> {
    if n == 0 || trials == 0 {
        return Err(OracleError::InvalidConfig);
    }
    let sides = die.sides();
    let mut hits = 0u64;
    for c in 0..chunk_count(trials) {
        let mut rng = chunk_rng(seed, c);
        let count = (trials - c * CHUNK_TRIALS).min(CHUNK_TRIALS);
        for _ in 0..count {
            let mut pos = 0u64;
            while pos < n {
                pos += roll(&mut rng, sides);
            }
            hits += (pos == n) as u64;
        }
    }
    let estimate = hits as f64 / trials as f64;
    Ok(EverHitEstimate {
        n,
        hits,
        trials,
        estimate,
        std_error: libm::sqrt(estimate * (1.0 - estimate) / trials as f64),
    })
}
