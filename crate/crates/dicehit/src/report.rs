//! Machine-readable output. Real numbers are always written as decimal strings.

use serde::{Deserialize, Serialize};

use dicehit_core::certify::CertifiedEstimate;
use dicehit_core::hitprob::CharacteristicRoots;
use dicehit_core::numerics::Float;
use dicehit_core::oracle::McResult;

pub const SCHEMA: u32 = 1;

/// Decimal rendering with `digits` significant digits.
pub fn real(x: &Float, digits: usize) -> String {
    x.to_decimal_string(digits)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificationReport {
    pub schema: u32,
    #[serde(rename = "K")]
    pub k: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub s: u64,
    pub precision_digits: u32,
    #[serde(rename = "E_N_0")]
    pub e_n: String,
    #[serde(rename = "P0_AN")]
    pub p_overshoot: String,
    #[serde(rename = "L_N")]
    pub l_n: String,
    #[serde(rename = "U_N")]
    pub u_n: String,
    #[serde(rename = "epsilon_N")]
    pub epsilon_n: String,
    pub point_value: String,
    pub error_radius: String,
    pub certified_digits: usize,
    pub degenerate: bool,
    pub runtime_seconds: String,
}

impl CertificationReport {
    pub fn new(est: &CertifiedEstimate, runtime_seconds: f64) -> Self {
        let d = est.precision_digits as usize;
        Self {
            schema: SCHEMA,
            k: est.k,
            n: est.cutoff,
            s: est.start,
            precision_digits: est.precision_digits,
            e_n: real(&est.e_n, d),
            p_overshoot: real(&est.p_overshoot, d),
            l_n: real(&est.bounds.l_n, d),
            u_n: real(&est.bounds.u_n, d),
            epsilon_n: real(&est.bounds.epsilon_n, d),
            point_value: real(&est.point_value, d),
            error_radius: real(&est.error_radius, d),
            certified_digits: est.certified_digits,
            degenerate: est.degenerate,
            runtime_seconds: format!("{runtime_seconds:.2}"),
        }
    }

    pub fn to_text(&self) -> String {
        format!(
            "K                 {}\nN                 {}\ns                 {}\nprecision_digits  {}\n\
             E_N(s)            {}\nP_s(A_N)          {}\nL_N               {}\nU_N               {}\n\
             epsilon_N         {}\npoint_value       {}\nerror_radius      {}\ncertified_digits  {}\n\
             runtime_seconds   {}\n",
            self.k,
            self.n,
            self.s,
            self.precision_digits,
            self.e_n,
            self.p_overshoot,
            self.l_n,
            self.u_n,
            self.epsilon_n,
            self.point_value,
            self.error_radius,
            self.certified_digits,
            self.runtime_seconds
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub schema: u32,
    pub target: String,
    #[serde(rename = "N")]
    pub n: u64,
    pub s: u64,
    pub die: u32,
    pub precision_digits: u32,
    #[serde(rename = "E_N_s")]
    pub e_n: String,
    #[serde(rename = "P_s_AN")]
    pub p_overshoot: String,
    /// `UNCERTIFIED` unless the target is the squares with a six-sided die.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub label: Option<String>,
    pub runtime_seconds: String,
}

impl SolveReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(label) = &self.label {
            out.push_str(label);
            out.push('\n');
        }
        out.push_str(&format!(
            "target    {}\nN         {}\ns         {}\ndie       {}\nE_N(s)    {}\nP_s(A_N)  {}\n",
            self.target, self.n, self.s, self.die, self.e_n, self.p_overshoot
        ));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootsReport {
    pub schema: u32,
    pub precision_digits: u32,
    pub unit: String,
    pub u: String,
    pub v_plus: ComplexValue,
    pub v_minus: ComplexValue,
    pub w_plus: ComplexValue,
    pub w_minus: ComplexValue,
    pub modulus_u: String,
    pub modulus_v: String,
    pub modulus_w: String,
}

impl RootsReport {
    pub fn new(r: &CharacteristicRoots, digits: u32) -> Self {
        let d = digits as usize;
        let c = |z: &dicehit_core::hitprob::ComplexFloat| ComplexValue {
            re: real(&z.re, d),
            im: real(&z.im, d),
        };
        Self {
            schema: SCHEMA,
            precision_digits: digits,
            unit: real(&r.root_unit, d),
            u: real(&r.u, d),
            v_plus: c(&r.v_plus),
            v_minus: c(&r.v_minus),
            w_plus: c(&r.w_plus),
            w_minus: c(&r.w_minus),
            modulus_u: real(&r.modulus_u, d),
            modulus_v: real(&r.modulus_v, d),
            modulus_w: real(&r.modulus_w, d),
        }
    }

    pub fn to_text(&self) -> String {
        let c = |z: &ComplexValue| {
            let (sign, mag) = match z.im.strip_prefix('-') {
                Some(m) => ('-', m),
                None => ('+', z.im.as_str()),
            };
            format!("{} {sign} {mag}i", z.re)
        };
        format!(
            "1\nu    {}\nv+   {}\nv-   {}\nw+   {}\nw-   {}\n|u|  {}\n|v|  {}\n|w|  {}\n",
            self.u,
            c(&self.v_plus),
            c(&self.v_minus),
            c(&self.w_plus),
            c(&self.w_minus),
            self.modulus_u,
            self.modulus_v,
            self.modulus_w
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub schema: u32,
    pub target: String,
    pub s: u64,
    pub die: u32,
    pub seed: u64,
    pub trials: u64,
    pub mean: String,
    pub std_error: String,
    pub trials_completed: u64,
    pub capped_trials: u64,
    pub valid: bool,
}

impl SimulationReport {
    pub fn new(target: &str, s: u64, die: u32, seed: u64, trials: u64, r: &McResult) -> Self {
        Self {
            schema: SCHEMA,
            target: target.to_string(),
            s,
            die,
            seed,
            trials,
            mean: format!("{:.10}", r.mean),
            std_error: format!("{:.10}", r.std_error),
            trials_completed: r.trials_completed,
            capped_trials: r.capped_trials,
            valid: r.is_valid(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "mean              {}\nstd_error         {}\ntrials_completed  {}\ncapped_trials     {}\n",
            self.mean, self.std_error, self.trials_completed, self.capped_trials
        );
        if !self.valid {
            out.push_str("WARNING: some trials were capped; the mean is not an estimate of E[T]\n");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EverHitReport {
    pub schema: u32,
    pub n: u64,
    pub seed: u64,
    pub trials: u64,
    pub hits: u64,
    pub estimate: String,
    pub std_error: String,
}

/// `n,p_n` rows.
pub fn csv_table<'a>(rows: impl IntoIterator<Item = (u64, &'a str)>) -> String {
    let mut out = String::from("n,p_n\n");
    for (n, p) in rows {
        out.push_str(&format!("{n},{p}\n"));
    }
    out
}
