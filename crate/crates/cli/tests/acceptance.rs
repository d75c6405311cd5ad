//! Acceptance run: ten criteria, one PASS/FAIL line each. Exits non-zero
//! when any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use talbot_gauss_core::gauss_phase::{
    dft, gauss_sum_direct, is_chu_equivalent, periodic_autocorrelation, xi0_bruteforce, xi0_p_form, xi0_s_form,
};
use talbot_gauss_core::tai::{
    check_concentration, equivalent_up_to_shift_and_phase, r_based_phases, r_value, tai_forward,
};
use talbot_gauss_core::talbot_field::{compare, synthesize};
use talbot_gauss_core::talbot_s::{closed_form_s, complement_s, compute_s_alt, s_upper_bound, verify_s};
use talbot_gauss_core::*;

/// Reference values, rows q = 2..=11, columns p = 1..=10, 0 where
/// gcd(p, q) > 1. Row q = 2 is 1,3,1,3,1 on its coprime cells.
const TABLE: [[i64; 10]; 10] = [
    [1, 0, 3, 0, 1, 0, 3, 0, 1, 0],
    [4, 2, 0, 4, 2, 0, 4, 2, 0, 4],
    [1, 0, 3, 0, 5, 0, 7, 0, 1, 0],
    [6, 8, 2, 4, 0, 6, 8, 2, 4, 0],
    [1, 0, 0, 0, 5, 0, 7, 0, 0, 0],
    [8, 4, 12, 2, 10, 6, 0, 8, 4, 12],
    [1, 0, 11, 0, 13, 0, 7, 0, 9, 0],
    [10, 14, 0, 16, 2, 0, 4, 8, 0, 10],
    [1, 0, 7, 0, 0, 0, 3, 0, 9, 0],
    [12, 6, 4, 14, 20, 2, 8, 18, 16, 10],
];

type Criterion = (&'static str, Duration, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn orders(q_range: std::ops::RangeInclusive<Int>, both: bool) -> Vec<TalbotOrder> {
    let mut out = TalbotOrder::sweep(q_range.clone(), |q| 2 * q, Sign::Plus);
    if both {
        out.extend(TalbotOrder::sweep(q_range, |q| 2 * q, Sign::Minus));
    }
    out
}

fn max_dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn table_reproduction() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_talbot-gauss"))
        .args(["s-table", "--qmax", "11", "--pmax", "10"])
        .output()
        .expect("run talbot-gauss");
    if !out.status.success() {
        return outcome(false, format!("exit status {}", out.status));
    }
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    if lines.next() != Some("q,1,2,3,4,5,6,7,8,9,10") {
        return outcome(false, "unexpected header");
    }
    let mut cells = 0;
    let mut mismatches = Vec::new();
    for (row, line) in TABLE.iter().zip(lines.by_ref()) {
        let fields: Vec<&str> = line.split(',').collect();
        let q: i64 = fields[0].parse().unwrap_or(-1);
        for (p, (&expected, field)) in row.iter().zip(&fields[1..]).enumerate() {
            let got = if field.is_empty() { 0 } else { field.parse().unwrap_or(-1) };
            if expected != 0 {
                cells += 1;
            }
            if got != expected {
                mismatches.push(format!("(p={}, q={q}): {got} vs {expected}", p + 1));
            }
        }
    }
    let extra = lines.count();
    outcome(
        mismatches.is_empty() && extra == 0,
        format!("{cells} coprime cells, {} mismatches {:?}", mismatches.len(), mismatches),
    )
}

fn uniqueness() -> Outcome {
    let all = orders(1..=100, false);
    let bad: Vec<_> = all
        .par_iter()
        .filter(|o| (1..=s_upper_bound(o.q())).filter(|&s| verify_s(o, s)).count() != 1)
        .map(|o| o.to_string())
        .collect();
    outcome(bad.is_empty(), format!("{} pairs, {} without a unique s (q = 1 searched in [1, 2])", all.len(), bad.len()))
}

fn dft_pair() -> Outcome {
    let all = orders(1..=64, true);
    let worst = all
        .par_iter()
        .map(|o| {
            let x = talbot_phases(o).unwrap();
            let big = spectral_weights(o).unwrap().values();
            let direct: Vec<_> = (0..o.q()).map(|n| gauss_sum_direct(o, n)).collect();
            max_dist(&dft(x.entries()).unwrap(), &big).max(max_dist(x.entries(), &direct))
        })
        .reduce(|| 0.0, f64::max);
    outcome(worst < 1e-10, format!("{} orders, l_inf {worst:.3e}", all.len()))
}

fn xi0_forms() -> Outcome {
    let all = orders(1..=64, true);
    let results: Vec<(bool, f64)> = all
        .par_iter()
        .map(|o| {
            let plus = o.with_sign(Sign::Plus);
            let ts = compute_s(&plus).unwrap();
            let s_form = xi0_s_form(&ts).unwrap();
            let p_form = xi0_p_form(&plus).unwrap();
            let brute = xi0_bruteforce(ts.s(), o.q());
            // The sequence stores σ·ξ₀.
            let mut stored = talbot_phases(o).unwrap().xi0().unwrap().to_unit();
            if o.sigma() == Sign::Minus {
                stored = stored.conj();
            }
            (s_form == p_form, (s_form.to_unit() - brute).norm().max((s_form.to_unit() - stored).norm()))
        })
        .collect();
    let exact_ok = results.iter().all(|r| r.0);
    let worst = results.iter().map(|r| r.1).fold(0.0, f64::max);
    outcome(exact_ok && worst < 1e-12, format!("{} orders, forms equal: {exact_ok}, l_inf {worst:.3e}", all.len()))
}

fn delta_error(r: &[Complex64], q: Int) -> f64 {
    r.iter().enumerate().map(|(n, v)| (v - if n == 0 { q as f64 } else { 0.0 }).norm()).fold(0.0, f64::max)
}

fn autocorrelation() -> Outcome {
    let all = orders(1..=64, true);
    let worst = all
        .par_iter()
        .map(|o| {
            let x = talbot_phases(o).unwrap();
            let big = spectral_weights(o).unwrap();
            delta_error(&periodic_autocorrelation(x.entries()), o.q())
                .max(delta_error(&periodic_autocorrelation(big.entries()), o.q()))
        })
        .reduce(|| 0.0, f64::max);
    let small = orders(1..=32, true);
    let not_chu = small
        .par_iter()
        .filter(|o| {
            let x = talbot_phases(o).unwrap();
            let big = spectral_weights(o).unwrap();
            !(is_chu_equivalent(x.entries()) && is_chu_equivalent(big.entries()))
        })
        .count();
    outcome(
        worst < 1e-10 && not_chu == 0,
        format!(
            "{} orders, max |R - qδ| {worst:.3e}; Chu check on {} orders, {not_chu} outside",
            all.len(),
            small.len()
        ),
    )
}

fn residue_formulas() -> Outcome {
    let all = TalbotOrder::sweep(2..=50, |_| 50, Sign::Plus);
    let mut cases = [0usize; 3];
    let mut bad = 0;
    for o in &all {
        let case = match (o.p() % 2, o.q() % 2) {
            (1, 1) => 0,
            (_, 1) => 1,
            _ => 2,
        };
        cases[case] += 1;
        if compute_s_alt(o).unwrap() != compute_s(o).unwrap().s() {
            bad += 1;
        }
    }
    outcome(
        bad == 0 && cases.iter().all(|&c| c > 0),
        format!(
            "{} pairs (p,q odd: {}, p even q odd: {}, q even: {}), {bad} mismatches",
            all.len(),
            cases[0],
            cases[1],
            cases[2]
        ),
    )
}

fn special_series() -> Outcome {
    let all = orders(1..=100, false);
    let (mut closed, mut complements, mut bad) = (0, 0, Vec::new());
    for o in &all {
        let ts = compute_s(o).unwrap();
        if let Some(cf) = closed_form_s(o) {
            closed += 1;
            if cf != ts.s() {
                bad.push(format!("closed form {o}"));
            }
        }
        if o.p() < o.q() {
            complements += 1;
            let comp = TalbotOrder::plus(o.q() - o.p(), o.q()).unwrap();
            if complement_s(&ts).unwrap() != compute_s(&comp).unwrap().s() {
                bad.push(format!("complement {o}"));
            }
        }
    }
    let s_of = |p, q| compute_s(&TalbotOrder::plus(p, q).unwrap()).unwrap().s();
    let anchors = [(5, 11, 20), (4, 5, 4), (5, 8, 13)];
    for (p, q, s) in anchors {
        if s_of(p, q) != s {
            bad.push(format!("anchor {p}/{q}"));
        }
    }
    outcome(
        bad.is_empty(),
        format!("{closed} closed-form hits, {complements} complement pairs, 3 anchors, failures {bad:?}"),
    )
}

fn r_family() -> Outcome {
    let all = orders(1..=32, true);
    let failed = all
        .par_iter()
        .filter(|o| {
            let x = talbot_phases(o).unwrap();
            equivalent_up_to_shift_and_phase(x.entries(), r_based_phases(o).unwrap().entries()).is_none()
        })
        .count();
    let anchor = TalbotOrder::plus(5, 8).unwrap();
    let (r, s) = (r_value(&anchor).unwrap(), compute_s(&anchor).unwrap().s());
    outcome(
        failed == 0 && r == 5 && s == 13,
        format!("{} orders, {failed} unmatched; 5/8: r = {r}, s = {s}", all.len()),
    )
}

fn illuminator() -> Outcome {
    const SPB: usize = 16;
    let all = orders(1..=16, true);
    let reports: Vec<_> = all
        .par_iter()
        .map(|o| {
            let d = tai_phases(o).unwrap();
            let out = tai_forward(&d, SPB).unwrap();
            (*o, check_concentration(&d, &out, SPB, 1e-9).unwrap())
        })
        .collect();
    let failed: Vec<_> = reports.iter().filter(|(_, c)| !c.pass).map(|(o, _)| o.to_string()).collect();
    let amp = reports.iter().map(|(_, c)| c.center_error.max(c.flatness_error)).fold(0.0, f64::max);
    let dark = reports.iter().map(|(_, c)| c.dark_max).fold(0.0, f64::max);
    let gain = reports.iter().map(|(o, c)| (c.power_gain - o.q() as f64).abs()).fold(0.0, f64::max);
    outcome(
        failed.is_empty() && gain < 1e-9,
        format!(
            "{} orders, N = 16q, amplitude error {amp:.3e}, dark {dark:.3e}, gain error {gain:.3e}, failed {failed:?}",
            all.len()
        ),
    )
}

/// Band-limited random samples kept on the first bin `[0, T/q)`.
fn random_cell(rng: &mut ChaCha8Rng, q: usize, n: usize) -> PeriodicEnvelope {
    let band = (n / 8) as Int;
    let lines: Vec<_> =
        (-band..=band).map(|h| (h, Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))).collect();
    let full = synthesize(&LineSpectrum::from_lines(1.0, n, lines).unwrap());
    let samples =
        full.samples().iter().enumerate().map(|(k, z)| if k < n / q { *z } else { Complex64::new(0.0, 0.0) }).collect();
    PeriodicEnvelope::new(1.0, samples).unwrap()
}

fn propagation() -> Outcome {
    let all = orders(1..=16, true);
    let worst = all
        .par_iter()
        .enumerate()
        .map(|(i, o)| {
            let mut rng = ChaCha8Rng::seed_from_u64(0x7a1b07 + i as u64);
            let n = 64 * o.q() as usize;
            (0..3)
                .map(|_| {
                    let cell = random_cell(&mut rng, o.q() as usize, n);
                    let a = propagate(&cell, o);
                    let b = reconstruct_fractional(&cell, o).unwrap();
                    compare(&a, &b).unwrap().l_inf
                })
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    outcome(worst < 1e-9, format!("{} orders x 3 cells, N = 64q, l_inf {worst:.3e}", all.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("table of s, q <= 11, p <= 10", Duration::from_secs(1), table_reproduction),
        ("unique s, q <= 100, p <= 2q", Duration::from_secs(5), uniqueness),
        ("DFT pair and direct Gauss sums, q <= 64", Duration::from_secs(30), dft_pair),
        ("global phase closed forms, q <= 64", Duration::from_secs(30), xi0_forms),
        ("perfect autocorrelation and Chu form", Duration::from_secs(60), autocorrelation),
        ("residue formulas for s, p, q <= 50", Duration::from_secs(1), residue_formulas),
        ("closed-form series and complements, q <= 100", Duration::from_secs(1), special_series),
        ("r-based levels, q <= 32", Duration::from_secs(10), r_family),
        ("array illuminator forward run, q <= 16", Duration::from_secs(60), illuminator),
        ("propagation vs shifted-cell sum, q <= 16", Duration::from_secs(60), propagation),
    ];
    let mut failures = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        if !result.pass {
            failures += 1;
        }
        let verdict = if result.pass { "PASS" } else { "FAIL" };
        let timing = if elapsed > *budget { " (over time budget)" } else { "" };
        println!(
            "criterion {:>2} {verdict}: {name}: {} [{:.2?} of {:?}{timing}]",
            i + 1,
            result.detail,
            elapsed,
            budget
        );
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
