use super::{Float, PrecisionContext};

/// Number of leading significant decimal digits (at most `digits`) on which
/// `a` and `b` agree, comparing truncated expansions.
pub fn agreed_digits(a: &Float, b: &Float, digits: usize) -> usize {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return digits,
        (true, false) | (false, true) => return 0,
        _ => {}
    }
    let (na, da, ea) = a.decimal_digits(digits, true);
    let (nb, db, eb) = b.decimal_digits(digits, true);
    if na != nb || ea != eb {
        return 0;
    }
    da.bytes().zip(db.bytes()).take_while(|(x, y)| x == y).count()
}

/// Re-runs `computation` at twice the working precision and reports how many
/// leading significant digits of the two results agree, capped at the working
/// digit count.
pub fn precision_audit<E, F>(computation: F, ctx: &PrecisionContext) -> Result<usize, E>
where
    F: Fn(&PrecisionContext) -> Result<Float, E>,
{
    let base = computation(ctx)?;
    let fine = computation(&ctx.doubled())?;
    Ok(agreed_digits(&base, &fine, ctx.working_digits() as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::NumericsError;

    #[test]
    fn exact_operand_agrees_to_working_digits() {
        let ctx = PrecisionContext::new(40).unwrap();
        let n = precision_audit(|c| Ok::<_, NumericsError>(c.ratio(1, 6)), &ctx).unwrap();
        assert!(n + 1 >= 40, "{n}");
    }

    #[test]
    fn zero_agrees_fully() {
        let ctx = PrecisionContext::new(35).unwrap();
        let n = precision_audit(|c| Ok::<_, NumericsError>(c.zero()), &ctx).unwrap();
        assert_eq!(n, 35);
    }

    #[test]
    fn starved_precision_is_detected() {
        // Sum of 1/k drifts by roundoff at low precision but not when doubled.
        let ctx = PrecisionContext::with_guard(30, 10).unwrap();
        let n = precision_audit(
            |c| {
                let mut acc = c.zero();
                for k in 1..=2000u64 {
                    acc += &(&c.one() / &c.uint(k));
                }
                Ok::<_, NumericsError>(acc)
            },
            &ctx,
        )
        .unwrap();
        assert!((28..=30).contains(&n), "{n}");
    }

    #[test]
    fn errors_propagate() {
        let ctx = PrecisionContext::new(30).unwrap();
        let r = precision_audit(|_| Err::<Float, _>(NumericsError::InvalidNumber), &ctx);
        assert_eq!(r, Err(NumericsError::InvalidNumber));
    }

    #[test]
    fn sign_and_magnitude_mismatch() {
        let ctx = PrecisionContext::new(30).unwrap();
        assert_eq!(agreed_digits(&ctx.uint(1), &ctx.int(-1), 30), 0);
        assert_eq!(agreed_digits(&ctx.uint(1), &ctx.uint(10), 30), 0);
        assert_eq!(agreed_digits(&ctx.parse("1.2345").unwrap(), &ctx.parse("1.2346").unwrap(), 30), 4);
    }
}
