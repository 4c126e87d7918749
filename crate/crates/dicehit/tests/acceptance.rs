//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Set `DICEHIT_ACCEPTANCE_QUICK=1` to skip the K = 7000 reproduction.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use dicehit::report::CertificationReport;
use dicehit_core::certify::{self, overshoot_bounds_exact};
use dicehit_core::hitprob::{self, pn_exact, HitProbSeries};
use dicehit_core::numerics::{ExactRational, Float, PrecisionContext, Round};
use dicehit_core::oracle::{exact_dp_table, simulate_hitting, McConfig};
use dicehit_core::walkmodel::{solve_pair_with, solve_truncated, DieModel, TargetSet};

const BIN: &str = env!("CARGO_BIN_EXE_dicehit");

// time limits
const LIMIT_1: Duration = Duration::from_secs(1);
const LIMIT_2: Duration = Duration::from_secs(1);
const LIMIT_3: Duration = Duration::from_secs(5);
const LIMIT_4: Duration = Duration::from_secs(30);
const LIMIT_5: Duration = Duration::from_secs(1);
const LIMIT_6: Duration = Duration::from_secs(1200);
const LIMIT_7: Duration = Duration::from_secs(60);
const LIMIT_8: Duration = Duration::from_secs(30);
const LIMIT_9: Duration = Duration::from_secs(30);
const LIMIT_10: Duration = Duration::from_secs(10);

// precisions and tolerances
const ROOT_DIGITS: u32 = 50;
const ROOT_SIG: usize = 10;
const ENVELOPE_DIGITS: u32 = 60;
const ENVELOPE_MAX_N: u64 = 500;
const DESK_PREFIX: &str = "7.079764237551105103895";
const DESK_MIN_CERTIFIED: usize = 21;
const FULL_MIN_CERTIFIED: usize = 1017;
const FULL_POINT_DIGITS: usize = 1000;
// reference values are rounded to 40 significant digits
const FULL_REL_TOL_DIGITS: i64 = 39;
const ORACLE_DIGITS: u32 = 60;
const ORACLE_SLACK_DIGITS: i64 = 5;
const MONOTONE_DIGITS: u32 = 100;
const MC_TRIALS: u64 = 1_000_000;
const MC_SEED: u64 = 42;
const MC_REFERENCE: f64 = 7.0797642;
// two-sided normal tail beyond 5 sd is about 5.7e-7
const MC_Z: f64 = 5.0;
const WINDOW_CUTOFF: u64 = 10_000;
const WINDOW_DIGITS: u32 = 100;

const FRACTIONS: [(i64, i64); 8] = [
    (1, 6),
    (7, 36),
    (49, 216),
    (343, 1296),
    (2401, 7776),
    (16807, 46656),
    (70993, 279936),
    (450295, 1679616),
];

const FULL_P0: &str = "1.508850331472307815412722898448210123557e-1023";
const FULL_RADIUS: &str = "6.163754194086475579815333888354168235404e-1019";
const FULL_VALUE: &str = "7.07976423755110510389555305690818489468171144426320880590887310151729303063665728915061944021592958614064385305823661783903880543742703716198322519884350186929568137764982344407152338880088207455310681022793519122014973993129695437655893319219536939495835101115311411179991908813850513859935726427345829553465365370554872047713037370464944960704627520884082079161536318359378698408559420205288447520824784290051829145780142625549483259082303050477481368412903038361866109199472934631689912665825868674472177662369216433999878648607063025635917229321393013112666066130535372709127528303382190959637116446334635134314327655953367908892943379540959207377339951829641654047029489532362362922499299747776085305390389398973135328718793113670443609423474664666397670343946771234117171861908531740730855238789909407353308626205768714355747406176345739813624118213842081492989647834854612658631250450904865604273619185751109877911661314817966485037997898765609167650129994420108679079073707154328930788419727197020508990677538";

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn ctx(digits: u32) -> PrecisionContext {
    PrecisionContext::new(digits).expect("valid precision")
}

fn certify_cli(k: u64, digits: u32) -> Result<CertificationReport, String> {
    let out = Command::new(BIN)
        .args(["certify", "--K", &k.to_string(), "--precision", &digits.to_string()])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "exit {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn rel_close(a: &str, b: &str, digits: i64) -> bool {
    let (a, b) = match (ExactRational::parse(a), ExactRational::parse(b)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return false,
    };
    (&a - &b).abs() <= &b.abs() * &ExactRational::pow10(-digits)
}

fn criterion_1() -> Outcome {
    let mut bad = Vec::new();
    for (i, &(num, den)) in FRACTIONS.iter().enumerate() {
        let n = i as u64 + 1;
        let got = pn_exact(n).expect("in range");
        if got != ExactRational::from_ratio(num, den) {
            bad.push(format!("p_{n} = {got}"));
        }
    }
    ok(bad.is_empty(), if bad.is_empty() { "p_1..p_8 exact".to_string() } else { bad.join(", ") })
}

fn criterion_2() -> Outcome {
    let r = match hitprob::compute_roots(&ctx(ROOT_DIGITS)) {
        Ok(r) => r,
        Err(e) => return ok(false, e.to_string()),
    };
    let got = [
        r.modulus_w.to_decimal_string(ROOT_SIG),
        r.modulus_v.to_decimal_string(ROOT_SIG),
        r.modulus_u.to_decimal_string(ROOT_SIG),
    ];
    let want = ["0.7302499667", "0.6828225223", "0.6703320476"];
    ok(got == want, format!("|w+| {} |v| {} |u| {}", got[0], got[1], got[2]))
}

fn criterion_3() -> Outcome {
    let c = ctx(ENVELOPE_DIGITS);
    let roots = hitprob::compute_roots(&c).expect("roots");
    let series = HitProbSeries::decimal(ENVELOPE_MAX_N, &c);
    let limit = c.ratio(2, 7);
    let mut worst = f64::INFINITY;
    for n in 1..=ENVELOPE_MAX_N {
        let p = series.get(n).expect("in range");
        let gap = (p - &limit).abs();
        let eps = hitprob::epsilon(n, &roots).expect("n >= 1").epsilon;
        if gap > eps {
            return ok(false, format!("n = {n}: |p_n - 2/7| = {} > {}", gap.to_decimal_string(8), eps.to_decimal_string(8)));
        }
        if !gap.is_zero() {
            let ratio = eps.div_rounded(&gap, Round::Nearest).expect("nonzero").to_f64();
            worst = worst.min(ratio);
        }
    }
    ok(true, format!("n = 1..{ENVELOPE_MAX_N}, smallest eps_n / |p_n - 2/7| = {worst:.3}"))
}

fn criterion_4() -> Outcome {
    match certify_cli(500, 200) {
        Ok(r) => ok(
            r.certified_digits >= DESK_MIN_CERTIFIED && r.point_value.starts_with(DESK_PREFIX),
            format!("certified_digits = {}, point = {}...", r.certified_digits, &r.point_value[..30]),
        ),
        Err(e) => ok(false, e),
    }
}

fn criterion_5() -> Outcome {
    for k in (4..=200).chain([500, 7000, 1_000_000]) {
        let b = overshoot_bounds_exact(k, &ExactRational::zero()).expect("K >= 4");
        let l = &ExactRational::from_ratio(7 * k as i64, 6) + &ExactRational::from_ratio(8, 3);
        let u = ExactRational::from_int(7 * k as i64 + 20);
        if b.l_n != l || b.u_n != u {
            return ok(false, format!("K = {k}: L = {}, U = {}", b.l_n, b.u_n));
        }
    }
    let b = overshoot_bounds_exact(7000, &ExactRational::zero()).expect("K >= 4");
    let pass = b.l_n == ExactRational::from_ratio(24508, 3) && b.u_n == ExactRational::from_int(49020);
    let l = ctx(30).rational(&b.l_n).to_decimal_string(12);
    ok(pass, format!("K = 7000: L = {} = {l}, U = {}", b.l_n, b.u_n))
}

fn criterion_6() -> Outcome {
    let r = match certify_cli(7000, 1200) {
        Ok(r) => r,
        Err(e) => return ok(false, e),
    };
    let p0 = rel_close(&r.p_overshoot, FULL_P0, FULL_REL_TOL_DIGITS);
    let radius = rel_close(&r.error_radius, FULL_RADIUS, FULL_REL_TOL_DIGITS);
    let digits = r.certified_digits >= FULL_MIN_CERTIFIED;
    let prefix_len = FULL_POINT_DIGITS + 1;
    let point = r.point_value.get(..prefix_len) == FULL_VALUE.get(..prefix_len);
    ok(
        p0 && radius && digits && point,
        format!(
            "P0 {} radius {} certified_digits = {} first {FULL_POINT_DIGITS} digits {}",
            if p0 { "matches" } else { "differs" },
            if radius { "matches" } else { "differs" },
            r.certified_digits,
            if point { "match" } else { "differ" }
        ),
    )
}

/// `|a - b| <= 10^-digits |b|`, or both zero.
fn close(a: &Float, b: &ExactRational, digits: i64) -> bool {
    let diff = (&a.to_rational() - b).abs();
    diff <= &b.abs() * &ExactRational::pow10(-digits)
}

fn criterion_7() -> Outcome {
    let c = ctx(ORACLE_DIGITS);
    let tol = ORACLE_DIGITS as i64 - ORACLE_SLACK_DIGITS;
    let die = DieModel::six();
    let mut checked = 0usize;
    for n in [10u64, 16, 100, 1000] {
        let targets = [
            ("squares", TargetSet::perfect_squares()),
            ("{3,7,20}", TargetSet::explicit(vec![3, 7, 20], None).expect("sorted")),
            ("dense", TargetSet::interval(1, n)),
        ];
        for (name, t) in &targets {
            let exact = exact_dp_table(t, &die, n).expect("within cap");
            let mut failure = None;
            solve_pair_with(t, &die, n, 0, &c, |s, e, p| {
                let (qe, qp) = exact.at(s);
                checked += 1;
                if failure.is_none() && !(close(e, &qe, tol) && close(p, &qp, tol)) {
                    failure = Some(s);
                }
            })
            .expect("solve");
            if let Some(s) = failure {
                return ok(false, format!("{name}, N = {n}, s = {s}"));
            }
        }
    }
    ok(true, format!("{checked} (target, N, s) pairs agree to {tol} digits"))
}

fn criterion_8() -> Outcome {
    let c = ctx(MONOTONE_DIGITS);
    let squares = TargetSet::perfect_squares();
    let values: Vec<Float> = [16u64, 100, 400, 2500, 10_000]
        .iter()
        .map(|&n| solve_truncated(&squares, &DieModel::six(), n, 0, &c).expect("solve"))
        .collect();
    let monotone = values.windows(2).all(|w| w[0] <= w[1]);
    let small = certify::certify_squares(50, &c, 0).expect("K = 50");
    let large = certify::certify_squares(200, &c, 0).expect("K = 200");
    let upper = small.point_value.add_rounded(&small.error_radius, Round::Up);
    let nested = small.point_value < large.point_value && large.point_value <= upper;
    ok(
        monotone && nested,
        format!(
            "E_N(0) nondecreasing: {monotone}; K = 200 point inside K = 50 interval: {nested}"
        ),
    )
}

fn criterion_9() -> Outcome {
    let cfg = McConfig::new(TargetSet::perfect_squares(), MC_TRIALS, MC_SEED);
    match simulate_hitting(&cfg) {
        Ok(r) => {
            let z = (r.mean - MC_REFERENCE) / r.std_error;
            ok(
                r.is_valid() && z.abs() < MC_Z,
                format!("mean = {:.5}, std_error = {:.5}, z = {z:.2}", r.mean, r.std_error),
            )
        }
        Err(e) => ok(false, e.to_string()),
    }
}

/// Full-array solve with the same summation order, using the general
/// correctly rounded operations rather than the in-place kernels.
fn reference_solve(t: &TargetSet, n: u64, c: &PrecisionContext) -> (Vec<Float>, Vec<Float>) {
    let m = 6usize;
    let len = n as usize + m + 1;
    let mut e = vec![c.zero(); len];
    let mut p = vec![c.one(); len];
    let six = c.uint(6);
    let one = c.one();
    for s in (0..=n as usize).rev() {
        if t.membership(s as u64) == Some(true) {
            e[s] = c.zero();
            p[s] = c.zero();
            continue;
        }
        let mut se = e[s + 1].clone();
        let mut sp = p[s + 1].clone();
        for j in s + 2..=s + m {
            se = se.add_rounded(&e[j], Round::Nearest);
            sp = sp.add_rounded(&p[j], Round::Nearest);
        }
        e[s] = se.div_rounded(&six, Round::Nearest).expect("nonzero").add_rounded(&one, Round::Nearest);
        p[s] = sp.div_rounded(&six, Round::Nearest).expect("nonzero");
    }
    (e, p)
}

fn criterion_10() -> Outcome {
    let c = ctx(WINDOW_DIGITS);
    let t = TargetSet::perfect_squares();
    let (re, rp) = reference_solve(&t, WINDOW_CUTOFF, &c);
    let mut mismatch = None;
    solve_pair_with(&t, &DieModel::six(), WINDOW_CUTOFF, 0, &c, |s, e, p| {
        let i = s as usize;
        let same = *e == re[i]
            && *p == rp[i]
            && e.to_decimal_string(WINDOW_DIGITS as usize) == re[i].to_decimal_string(WINDOW_DIGITS as usize)
            && p.to_decimal_string(WINDOW_DIGITS as usize) == rp[i].to_decimal_string(WINDOW_DIGITS as usize);
        if !same && mismatch.is_none() {
            mismatch = Some(s);
        }
    })
    .expect("solve");
    match mismatch {
        None => ok(true, format!("all {} states identical at {WINDOW_DIGITS} digits", WINDOW_CUTOFF + 1)),
        Some(s) => ok(false, format!("first mismatch at s = {s}")),
    }
}

fn main() -> ExitCode {
    let quick = std::env::var_os("DICEHIT_ACCEPTANCE_QUICK").is_some();
    let criteria: [Criterion; 10] = [
        (1, "exact fractions", LIMIT_1, criterion_1),
        (2, "root moduli", LIMIT_2, criterion_2),
        (3, "hit-probability envelope", LIMIT_3, criterion_3),
        (4, "desk-scale certification", LIMIT_4, criterion_4),
        (5, "constants at zero envelope", LIMIT_5, criterion_5),
        (6, "full reproduction K = 7000", LIMIT_6, criterion_6),
        (7, "oracle equivalence", LIMIT_7, criterion_7),
        (8, "monotonicity and nesting", LIMIT_8, criterion_8),
        (9, "Monte Carlo sanity", LIMIT_9, criterion_9),
        (10, "rolling-window equivalence", LIMIT_10, criterion_10),
    ];
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        if id == 6 && quick {
            println!("SKIP criterion {id:>2} ({name}): DICEHIT_ACCEPTANCE_QUICK set");
            continue;
        }
        let started = Instant::now();
        let outcome = check();
        let elapsed = started.elapsed();
        let in_time = elapsed <= limit;
        let pass = outcome.pass && in_time;
        failed += usize::from(!pass);
        println!(
            "{} criterion {id:>2} ({name}): {} [{:.2} s, limit {} s{}]",
            if pass { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64(),
            limit.as_secs(),
            if in_time { "" } else { ", over time" }
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
