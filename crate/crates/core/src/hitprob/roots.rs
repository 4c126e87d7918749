use crate::numerics::{ExactRational, Float, PrecisionContext, Round};

use super::HitProbError;

/// `6z^6 - z^5 - z^4 - z^3 - z^2 - z - 1`, highest degree first.
const SEXTIC: [i64; 7] = [6, -1, -1, -1, -1, -1, -1];
const SEXTIC_DERIV: [i64; 6] = [36, -5, -4, -3, -2, -1];
const NEWTON_ITERS: usize = 200;

/// Complex number with `Float` parts; every operation rounds to nearest.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexFloat {
    pub re: Float,
    pub im: Float,
}

impl ComplexFloat {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn real(re: Float) -> Self {
        let im = Float::zero(re.limbs());
        Self { re, im }
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(
            &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }

    /// `None` when `rhs` is zero.
    pub fn div(&self, rhs: &Self) -> Option<Self> {
        let den = &(&rhs.re * &rhs.re) + &(&rhs.im * &rhs.im);
        if den.is_zero() {
            return None;
        }
        let re = &(&self.re * &rhs.re) + &(&self.im * &rhs.im);
        let im = &(&self.im * &rhs.re) - &(&self.re * &rhs.im);
        Some(Self::new(
            re.div_rounded(&den, Round::Nearest).ok()?,
            im.div_rounded(&den, Round::Nearest).ok()?,
        ))
    }

    pub fn pow_u64(&self, mut n: u64) -> Self {
        let limbs = self.re.limbs();
        let mut result = Self::real(Float::from_u64(1, limbs));
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn modulus(&self) -> Float {
        let sq = &(&self.re * &self.re) + &(&self.im * &self.im);
        sq.sqrt().expect("nonnegative")
    }

    /// A value no smaller than the exact modulus of `self`.
    fn modulus_up(&self) -> Float {
        let re2 = self.re.mul_rounded(&self.re, Round::Up);
        let im2 = self.im.mul_rounded(&self.im, Round::Up);
        re2.add_rounded(&im2, Round::Up)
            .sqrt_rounded(Round::Up)
            .expect("nonnegative")
    }

    /// Largest binary exponent of the two parts; `None` for zero.
    fn magnitude_exp(&self) -> Option<i64> {
        [&self.re, &self.im]
            .into_iter()
            .filter(|x| !x.is_zero())
            .map(Float::binary_exponent)
            .max()
    }
}

fn horner(coeffs: &[i64], z: &ComplexFloat) -> ComplexFloat {
    let limbs = z.re.limbs();
    let mut acc = ComplexFloat::real(Float::from_i64(coeffs[0], limbs));
    for &c in &coeffs[1..] {
        acc = acc.mul(z);
        acc.re = &acc.re + &Float::from_i64(c, limbs);
    }
    acc
}

/// `|z^6 - (z^5 + z^4 + z^3 + z^2 + z + 1)/6|`.
pub fn characteristic_residual(z: &ComplexFloat) -> Float {
    let f = horner(&SEXTIC, z);
    let six = Float::from_u64(6, z.re.limbs());
    let scaled = ComplexFloat::new(
        f.re.div_rounded(&six, Round::Nearest).expect("nonzero"),
        f.im.div_rounded(&six, Round::Nearest).expect("nonzero"),
    );
    scaled.modulus()
}

/// The six roots of `z^6 = (z^5 + ... + 1)/6`: the unit root, the real root `u`,
/// and the conjugate pairs `v` (smaller modulus) and `w` (larger modulus).
/// The `_plus` member of each pair has positive imaginary part.
#[derive(Clone, Debug)]
pub struct CharacteristicRoots {
    pub root_unit: Float,
    pub u: Float,
    pub v_plus: ComplexFloat,
    pub v_minus: ComplexFloat,
    pub w_plus: ComplexFloat,
    pub w_minus: ComplexFloat,
    pub modulus_u: Float,
    pub modulus_v: Float,
    pub modulus_w: Float,
}

impl CharacteristicRoots {
    /// `[1, u, v+, v-, w+, w-]`.
    pub fn all(&self) -> [ComplexFloat; 6] {
        [
            ComplexFloat::real(self.root_unit.clone()),
            ComplexFloat::real(self.u.clone()),
            self.v_plus.clone(),
            self.v_minus.clone(),
            self.w_plus.clone(),
            self.w_minus.clone(),
        ]
    }

    /// Upper bound on the exact `|w+|`: the upward-rounded modulus of the refined
    /// root, padded by 256 ulp for the refinement error.
    pub fn modulus_w_upper(&self) -> Float {
        let m = self.w_plus.modulus_up();
        let pad = m.ulp().mul_rounded(&Float::from_u64(256, m.limbs()), Round::Up);
        m.add_rounded(&pad, Round::Up)
    }
}

type C64 = (f64, f64);

fn cmul(a: C64, b: C64) -> C64 {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cdiv(a: C64, b: C64) -> C64 {
    let d = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
}

/// Durand-Kerner on the monic quintic `z^5 + (5z^4 + 4z^3 + 3z^2 + 2z + 1)/6`.
fn quintic_roots_f64() -> [C64; 5] {
    let coeffs = [1.0, 5.0 / 6.0, 4.0 / 6.0, 3.0 / 6.0, 2.0 / 6.0, 1.0 / 6.0];
    let eval = |z: C64| {
        coeffs[1..].iter().fold((coeffs[0], 0.0), |acc, &c| {
            let m = cmul(acc, z);
            (m.0 + c, m.1)
        })
    };
    let mut z = [(0.0, 0.0); 5];
    let seed = (0.4, 0.9);
    let mut p = seed;
    for slot in &mut z {
        *slot = p;
        p = cmul(p, seed);
    }
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..5 {
            let mut den = (1.0, 0.0);
            for j in 0..5 {
                if j != i {
                    den = cmul(den, (z[i].0 - z[j].0, z[i].1 - z[j].1));
                }
            }
            let step = cdiv(eval(z[i]), den);
            z[i] = (z[i].0 - step.0, z[i].1 - step.1);
            moved = moved.max(step.0.abs() + step.1.abs());
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn refine(start: C64, index: usize, ctx: &PrecisionContext) -> Result<ComplexFloat, HitProbError> {
    let limbs = ctx.limbs();
    let bits = ctx.bits() as i64;
    let mut z = ComplexFloat::new(Float::from_f64(start.0, limbs), Float::from_f64(start.1, limbs));
    for _ in 0..NEWTON_ITERS {
        let f = horner(&SEXTIC, &z);
        let df = horner(&SEXTIC_DERIV, &z);
        let step = f.div(&df).ok_or(HitProbError::NonConvergence { root: index })?;
        z = z.sub(&step);
        let Some(size) = z.magnitude_exp() else {
            return Err(HitProbError::NonConvergence { root: index });
        };
        match step.magnitude_exp() {
            None => return Ok(z),
            Some(e) if e < size - bits + 8 => return Ok(z),
            _ => {}
        }
    }
    Err(HitProbError::NonConvergence { root: index })
}

pub fn compute_roots(ctx: &PrecisionContext) -> Result<CharacteristicRoots, HitProbError> {
    let mut approx = quintic_roots_f64();
    approx.sort_by(|a, b| a.1.abs().total_cmp(&b.1.abs()));
    let real = (approx[0].0, 0.0);
    let mut upper: [C64; 2] = [approx[1], approx[2], approx[3], approx[4]]
        .into_iter()
        .filter(|z| z.1 > 0.0)
        .collect::<alloc::vec::Vec<_>>()
        .try_into()
        .map_err(|_| HitProbError::NonConvergence { root: 0 })?;
    upper.sort_by(|a, b| (a.0 * a.0 + a.1 * a.1).total_cmp(&(b.0 * b.0 + b.1 * b.1)));

    let u = refine(real, 1, ctx)?.re;
    let v_plus = refine(upper[0], 2, ctx)?;
    let w_plus = refine(upper[1], 4, ctx)?;

    let tolerance = ctx.rational(&ExactRational::pow10(
        ctx.guard_digits() as i64 - ctx.working_digits() as i64,
    ));
    let roots = CharacteristicRoots {
        root_unit: ctx.one(),
        modulus_u: u.abs(),
        modulus_v: v_plus.modulus(),
        modulus_w: w_plus.modulus(),
        u,
        v_minus: v_plus.conj(),
        v_plus,
        w_minus: w_plus.conj(),
        w_plus,
    };
    for (i, z) in roots.all().iter().enumerate() {
        if characteristic_residual(z) >= tolerance {
            return Err(HitProbError::NonConvergence { root: i });
        }
    }
    let one = ctx.one();
    if !(roots.modulus_u <= roots.modulus_w
        && roots.modulus_v <= roots.modulus_w
        && roots.modulus_w < one)
    {
        return Err(HitProbError::NonConvergence { root: 4 });
    }
    Ok(roots)
}
