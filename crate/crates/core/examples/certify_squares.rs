use std::time::Instant;

use dicehit_core::certify::certify_squares;
use dicehit_core::numerics::PrecisionContext;

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("integer"));
    let k = args.next().unwrap_or(500);
    let digits = args.next().unwrap_or(200) as u32;
    let ctx = PrecisionContext::new(digits).expect("precision");
    let t = Instant::now();
    let est = certify_squares(k, &ctx, 0).expect("certify");
    println!("K={k} digits={digits} time={:.2}s", t.elapsed().as_secs_f64());
    println!("P0={}", est.p_overshoot.to_decimal_string(40));
    println!("radius={}", est.error_radius.to_decimal_string(40));
    println!("L={} U={}", est.bounds.l_n.to_decimal_string(20), est.bounds.u_n.to_decimal_string(20));
    println!("certified_digits={}", est.certified_digits);
    println!("point={}", est.point_value.to_decimal_string(digits as usize));
}
