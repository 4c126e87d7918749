use dicehit_core::hitprob::{compute_roots, pn_exact, ComplexFloat, HitProbSeries, EXACT_MAX_N};
use dicehit_core::numerics::{ExactRational, PrecisionContext};
use dicehit_core::oracle::simulate_ever_hit;
use dicehit_core::walkmodel::DieModel;

#[test]
fn closed_form_matches_recurrence() {
    let ctx = PrecisionContext::new(80).unwrap();
    let roots = compute_roots(&ctx).unwrap();
    let series = HitProbSeries::decimal(200, &ctx);
    let tol = ctx.rational(&ExactRational::pow10(-75));
    let seven = ctx.uint(7);
    for n in 0..=200u64 {
        let mut sum = ComplexFloat::real(ctx.uint(2));
        let u = ComplexFloat::real(roots.u.clone());
        for r in [&u, &roots.v_plus, &roots.v_minus, &roots.w_plus, &roots.w_minus] {
            sum = sum.add(&r.pow_u64(n));
        }
        let closed = &sum.re / &seven;
        assert!(sum.im.abs() < tol, "imaginary part at n = {n}");
        let p = if n == 0 { ctx.one() } else { series.get(n).unwrap().clone() };
        assert!((&closed - &p).abs() < tol, "n = {n}");
    }
}

#[test]
fn largest_value_is_at_six() {
    let series = HitProbSeries::exact(EXACT_MAX_N).unwrap();
    let best = (1..=EXACT_MAX_N)
        .max_by(|&a, &b| series.get(a).unwrap().cmp(series.get(b).unwrap()))
        .unwrap();
    assert_eq!(best, 6);
    assert_eq!(pn_exact(6).unwrap(), ExactRational::from_ratio(16807, 46656));

    let ctx = PrecisionContext::new(40).unwrap();
    let decimal = HitProbSeries::decimal(2000, &ctx);
    let peak = decimal.get(6).unwrap();
    assert!((7..=2000).all(|n| decimal.get(n).unwrap() < peak));
}

#[test]
fn simulation_agrees_with_exact_values() {
    let die = DieModel::six();
    let ctx = PrecisionContext::new(30).unwrap();
    for n in 1..=8u64 {
        let est = simulate_ever_hit(n, 200_000, 1000 + n, &die).unwrap();
        let exact = ctx.rational(&pn_exact(n).unwrap()).to_f64();
        assert!(
            (est.estimate - exact).abs() < 5.0 * est.std_error,
            "n = {n}: {} vs {exact}",
            est.estimate
        );
    }
}
