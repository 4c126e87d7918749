use dicehit_core::numerics::PrecisionContext;
use dicehit_core::walkmodel::{solve_pair, DieModel, TargetSet};

fn main() {
    let n: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1_000_000);
    let digits: u32 = std::env::args().nth(2).and_then(|a| a.parse().ok()).unwrap_or(1200);
    let ctx = PrecisionContext::new(digits).unwrap();
    let t0 = std::time::Instant::now();
    let sol = solve_pair(&TargetSet::perfect_squares(), &DieModel::six(), n, 0, &ctx).unwrap();
    let dt = t0.elapsed().as_secs_f64();
    println!("N={n} digits={digits} limbs={} time={dt:.2}s ns/state={:.0}", ctx.limbs(), dt * 1e9 / n as f64);
    println!("E={}", sol.e_n_value.to_decimal_string(40));
    println!("P={}", sol.overshoot_prob.to_decimal_string(40));
}
