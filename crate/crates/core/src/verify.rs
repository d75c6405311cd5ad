//! Self-check suites over ranges of Talbot orders.
//!
//! Each suite sweeps coprime `p/q` and reports how many checks ran, how
//! many failed and the worst numerical error seen. Work is spread over
//! rayon; results are gathered in sweep order so reports are reproducible.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gauss_phase::{
    dft, gauss_sum_direct, is_chu_equivalent, periodic_autocorrelation, spectral_weights, talbot_phases,
    xi0_bruteforce, xi0_p_form, xi0_s_form,
};
use crate::numtheory::Int;
use crate::tai::{check_concentration, equivalent_up_to_shift_and_phase, r_based_phases, tai_forward, tai_phases};
use crate::talbot_s::{
    closed_form_s, complement_s, compute_s, compute_s_alt, s_upper_bound, verify_s, Sign, TalbotOrder,
};

/// Chu membership is a cubic search per sequence; it stops at this `q`.
pub const CHU_Q_MAX: Int = 32;

/// Samples per bin in the illuminator suite.
pub const TAI_SAMPLES_PER_BIN: usize = 16;

/// Failures listed in a report before truncation.
const MAX_LISTED: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    S,
    Dft,
    Autocorr,
    AppendixB,
    Props,
    Tai,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::S, Suite::Dft, Suite::Autocorr, Suite::AppendixB, Suite::Props, Suite::Tai];

    pub fn name(self) -> &'static str {
        match self {
            Suite::S => "s",
            Suite::Dft => "dft",
            Suite::Autocorr => "autocorr",
            Suite::AppendixB => "appendixB",
            Suite::Props => "props",
            Suite::Tai => "tai",
        }
    }

    pub fn run(self, q_max: Int, tol: f64) -> Result<Report> {
        if q_max < 1 {
            return Err(Error::domain(format!("q_max must be positive, got {q_max}")));
        }
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
        }
        let checks = match self {
            Suite::S => run_orders(q_max.max(2), 2, Sign::Plus, check_s)?,
            Suite::Dft => both_signs(q_max, |o| check_dft(o, tol))?,
            Suite::Autocorr => both_signs(q_max, |o| check_autocorr(o, tol))?,
            Suite::AppendixB => {
                let orders = TalbotOrder::sweep(2..=q_max.max(2), |_| q_max, Sign::Plus);
                collect(&orders, check_appendix_b)?
            }
            Suite::Props => both_signs(q_max, check_props)?,
            Suite::Tai => both_signs(q_max, |o| check_tai(o, tol))?,
        };
        Ok(Report::from_checks(self.name(), checks))
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub checked: usize,
    pub failed: usize,
    pub max_error: f64,
    /// The first few failures.
    pub failures: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    fn from_checks(suite: &str, checks: Vec<Check>) -> Self {
        let failures: Vec<_> = checks.iter().filter_map(|c| c.failure.clone()).collect();
        Report {
            suite: suite.to_owned(),
            checked: checks.len(),
            failed: failures.len(),
            max_error: checks.iter().map(|c| c.error).fold(0.0, f64::max),
            failures: failures.into_iter().take(MAX_LISTED).collect(),
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {}: {} checked, {} failed, max error {:.3e}",
            self.suite, self.checked, self.failed, self.max_error
        )?;
        for msg in &self.failures {
            write!(f, "\n  {msg}")?;
        }
        Ok(())
    }
}

/// Runs every suite in order.
pub fn run_all(q_max: Int, tol: f64) -> Result<Vec<Report>> {
    Suite::ALL.into_iter().map(|s| s.run(q_max, tol)).collect()
}

/// Result of one order: the worst error and a message when it failed.
struct Check {
    error: f64,
    failure: Option<String>,
}

impl Check {
    fn numeric(order: &TalbotOrder, what: &str, error: f64, tol: f64) -> Self {
        Check { error, failure: (error >= tol).then(|| format!("{order}: {what} error {error:.3e}")) }
    }

    fn exact(order: &TalbotOrder, problems: Vec<String>) -> Self {
        let failure = (!problems.is_empty()).then(|| format!("{order}: {}", problems.join("; ")));
        Check { error: 0.0, failure }
    }

    fn worst(checks: impl IntoIterator<Item = Check>) -> Self {
        checks.into_iter().fold(Check { error: 0.0, failure: None }, |acc, c| Check {
            error: acc.error.max(c.error),
            failure: acc.failure.or(c.failure),
        })
    }
}

fn collect(orders: &[TalbotOrder], f: impl Fn(&TalbotOrder) -> Result<Check> + Sync) -> Result<Vec<Check>> {
    orders.par_iter().map(&f).collect()
}

fn run_orders(
    q_max: Int,
    q_min: Int,
    sigma: Sign,
    f: impl Fn(&TalbotOrder) -> Result<Check> + Sync,
) -> Result<Vec<Check>> {
    collect(&TalbotOrder::sweep(q_min..=q_max, |q| 2 * q, sigma), f)
}

fn both_signs(q_max: Int, f: impl Fn(&TalbotOrder) -> Result<Check> + Sync) -> Result<Vec<Check>> {
    let mut out = run_orders(q_max, 1, Sign::Plus, &f)?;
    out.extend(run_orders(q_max, 1, Sign::Minus, &f)?);
    Ok(out)
}

fn max_dist(a: impl IntoIterator<Item = Complex64>, b: impl IntoIterator<Item = Complex64>) -> f64 {
    a.into_iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn check_s(o: &TalbotOrder) -> Result<Check> {
    let s = compute_s(o)?.s();
    let solutions: Vec<Int> = (1..=s_upper_bound(o.q())).filter(|&c| verify_s(o, c)).collect();
    let mut problems = Vec::new();
    if solutions != [s] {
        problems.push(format!("s = {s}, admissible values {solutions:?}"));
    }
    Ok(Check::exact(o, problems))
}

fn check_dft(o: &TalbotOrder, tol: f64) -> Result<Check> {
    let x = talbot_phases(o)?;
    let big = spectral_weights(o)?.values();
    let pair = max_dist(dft(x.entries())?, big.iter().copied());
    let direct = max_dist((0..o.q()).map(|n| gauss_sum_direct(o, n)), x.entries().iter().copied());

    let ts = compute_s(o)?;
    let s_form = xi0_s_form(&ts)?;
    let mut xi_problems = Vec::new();
    if s_form != xi0_p_form(&o.with_sign(Sign::Plus))? {
        xi_problems.push("s-form and p-form of ξ₀ differ".to_owned());
    }
    let brute = (s_form.to_unit() - xi0_bruteforce(ts.s(), o.q())).norm();
    Ok(Check::worst([
        Check::numeric(o, "DFT pair", pair, tol),
        Check::numeric(o, "direct Gauss sum", direct, tol),
        Check::numeric(o, "ξ₀ brute force", brute, tol),
        Check::exact(o, xi_problems),
    ]))
}

fn delta_error(r: &[Complex64], q: Int) -> f64 {
    r.iter().enumerate().map(|(n, v)| (v - if n == 0 { q as f64 } else { 0.0 }).norm()).fold(0.0, f64::max)
}

fn check_autocorr(o: &TalbotOrder, tol: f64) -> Result<Check> {
    let q = o.q();
    let x = talbot_phases(o)?;
    let big = spectral_weights(o)?;
    let rx = delta_error(&periodic_autocorrelation(x.entries()), q);
    let rbig = delta_error(&periodic_autocorrelation(big.entries()), q);
    let mut problems = Vec::new();
    if q <= CHU_Q_MAX {
        if !is_chu_equivalent(x.entries()) {
            problems.push("x is not a Chu sequence".to_owned());
        }
        if !is_chu_equivalent(big.entries()) {
            problems.push("X/√q is not a Chu sequence".to_owned());
        }
    }
    Ok(Check::worst([
        Check::numeric(o, "autocorrelation of x", rx, tol),
        Check::numeric(o, "autocorrelation of X", rbig, tol),
        Check::exact(o, problems),
    ]))
}

fn check_appendix_b(o: &TalbotOrder) -> Result<Check> {
    let (s, alt) = (compute_s(o)?.s(), compute_s_alt(o)?);
    let problems = if s == alt { vec![] } else { vec![format!("s = {s}, residue formula gives {alt}")] };
    Ok(Check::exact(o, problems))
}

fn check_props(o: &TalbotOrder) -> Result<Check> {
    let ts = compute_s(o)?;
    let (p, q, s) = (o.p(), o.q(), ts.s());
    let mut problems = Vec::new();
    if let Some(cf) = closed_form_s(o) {
        if cf != s {
            problems.push(format!("closed form gives {cf}, s = {s}"));
        }
    }
    if p < q {
        let comp = TalbotOrder::new(q - p, q, o.sigma())?;
        let expected = compute_s(&comp)?.s();
        let got = complement_s(&ts)?;
        if got != expected {
            problems.push(format!("complement gives {got}, s of {comp} is {expected}"));
        }
    }
    let x = talbot_phases(o)?;
    if equivalent_up_to_shift_and_phase(x.entries(), r_based_phases(o)?.entries()).is_none() {
        problems.push("r-based phases are not a shift of x".to_owned());
    }
    Ok(Check::exact(o, problems))
}

fn check_tai(o: &TalbotOrder, tol: f64) -> Result<Check> {
    let design = tai_phases(o)?;
    let out = tai_forward(&design, TAI_SAMPLES_PER_BIN)?;
    let c = check_concentration(&design, &out, TAI_SAMPLES_PER_BIN, tol)?;
    let error = c.center_error.max(c.flatness_error).max(c.dark_max);
    let failure = (!c.pass).then(|| {
        format!(
            "{o}: bright bin {} (expected {}), center error {:.3e}, dark max {:.3e}, gain {:.6}",
            c.bright_bin, c.expected_bin, c.center_error, c.dark_max, c.power_gain
        )
    });
    Ok(Check { error, failure })
}
