//! Talbot array illuminators.
//!
//! A cw carrier phase-modulated with `q` levels `Φ_n = conj(x_n)`, one per
//! bin `[nT/q, (n+1)T/q)`, is compressed by the dispersive line at order
//! `p/q` into a rectangle train of amplitude `√q` and width `T/q`, one
//! pulse per period. Bins interfere through the periodic autocorrelation
//! of `x_n`, which vanishes off the origin.
//!
//! The module also carries the related level families: the `r = [1/p]_q`
//! form, the `p = 1` series and the spectral Talbot modulation, together
//! with the shift-and-phase equivalence test that relates them.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gauss_phase::{dft, matches_shifted, talbot_phases, Family, PhaseSequence};
use crate::numtheory::{mod_inverse, modulo, mul_mod, parity, Int};
use crate::phase::ExactPhase;
use crate::talbot_field::{harmonic_of, propagate, LineSpectrum, PeriodicEnvelope};
use crate::talbot_s::{compute_s, Sign, TalbotOrder};

/// Default number of samples per bin used by the forward check.
pub const DEFAULT_SAMPLES_PER_BIN: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct TaiDesign {
    order: TalbotOrder,
    s: Int,
    phases: PhaseSequence,
}

impl TaiDesign {
    pub fn order(&self) -> TalbotOrder {
        self.order
    }

    pub fn s(&self) -> Int {
        self.s
    }

    /// The `q` levels `Φ_n`.
    pub fn phases(&self) -> &PhaseSequence {
        &self.phases
    }

    /// Bin width `T/q` for a period `T`.
    pub fn bin_width(&self, period: f64) -> f64 {
        period / self.order.q() as f64
    }
}

/// `Φ_n = exp[-jσ(ξ₀ + π s n²/q)]`, the conjugates of the propagation phases.
pub fn tai_phases(order: &TalbotOrder) -> Result<TaiDesign> {
    let x = talbot_phases(order)?;
    let s = x.s().expect("talbot phases carry s");
    Ok(TaiDesign { order: *order, s, phases: x.conj().relabel(Family::Tai) })
}

/// The phase-modulated cw input: level `Φ_n` on samples
/// `[n·spb, (n+1)·spb)`, period 1.
pub fn tai_input(design: &TaiDesign, samples_per_bin: usize) -> Result<PeriodicEnvelope> {
    if samples_per_bin < 2 {
        return Err(Error::domain(format!("samples_per_bin must be at least 2, got {samples_per_bin}")));
    }
    let q = design.order.q() as usize;
    if design.order.shifted() && samples_per_bin % 2 != 0 {
        return Err(Error::Grid(format!(
            "order {}/{} needs an even number of samples per bin for the half-period shift",
            design.order.p(),
            design.order.q()
        )));
    }
    let levels = design.phases.entries();
    let samples = (0..q * samples_per_bin).map(|k| levels[k / samples_per_bin]).collect();
    PeriodicEnvelope::new(1.0, samples)
}

/// Modulates, then propagates at the design order.
pub fn tai_forward(design: &TaiDesign, samples_per_bin: usize) -> Result<PeriodicEnvelope> {
    Ok(propagate(&tai_input(design, samples_per_bin)?, &design.order))
}

/// Outcome of the concentration check on a forward run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Concentration {
    /// Bin (on the output bin grid) with the largest center amplitude.
    pub bright_bin: usize,
    /// Bin where the pulse must land: 0, on a grid delayed by `T/2` when
    /// `p·q` is odd.
    pub expected_bin: usize,
    /// Field at the bright bin center.
    pub center_re: f64,
    pub center_im: f64,
    /// `|E_center - √q|`.
    pub center_error: f64,
    /// Largest `|E - √q|` over the bright bin.
    pub flatness_error: f64,
    /// Largest `|E|` outside the bright bin.
    pub dark_max: f64,
    /// Peak power over cw input power.
    pub power_gain: f64,
    pub pass: bool,
}

/// Checks that `output` is the `√q` rectangle train. The bin grid is
/// delayed by half a period when `p·q` is odd.
pub fn check_concentration(
    design: &TaiDesign,
    output: &PeriodicEnvelope,
    samples_per_bin: usize,
    tol: f64,
) -> Result<Concentration> {
    let q = design.order.q() as usize;
    if output.len() != q * samples_per_bin {
        return Err(Error::Shape(format!("{} samples, expected {} bins of {samples_per_bin}", output.len(), q)));
    }
    let offset = if design.order.shifted() { output.len() / 2 } else { 0 };
    let sample = |bin: usize, i: usize| output.at((offset + bin * samples_per_bin + i) as Int);
    let center = |bin: usize| sample(bin, samples_per_bin / 2);
    let bright_bin = (0..q).max_by(|&a, &b| center(a).norm().total_cmp(&center(b).norm())).unwrap_or(0);
    let amp = (q as f64).sqrt();
    let c = center(bright_bin);
    let flatness_error = (0..samples_per_bin).map(|i| (sample(bright_bin, i) - amp).norm()).fold(0.0, f64::max);
    let dark_max = (0..q)
        .filter(|&b| b != bright_bin)
        .flat_map(|b| (0..samples_per_bin).map(move |i| (b, i)))
        .map(|(b, i)| sample(b, i).norm())
        .fold(0.0, f64::max);
    let center_error = (c - amp).norm();
    let power_gain = output.peak().powi(2);
    let expected_bin = 0;
    let pass = bright_bin == expected_bin
        && center_error < tol
        && flatness_error < tol
        && dark_max < tol
        && (power_gain - q as f64).abs() < tol * 2.0 * amp;
    Ok(Concentration {
        bright_bin,
        expected_bin,
        center_re: c.re,
        center_im: c.im,
        center_error,
        flatness_error,
        dark_max,
        power_gain,
        pass,
    })
}

fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        let px = std::f64::consts::PI * x;
        px.sin() / px
    }
}

/// Continuous-time lines `c_m` of the modulated input, for the balanced
/// band of `n_lines` harmonics:
///
/// ```text
/// c_m = (1/q) sinc(m/q) e^{-jπm/q} Σ_n Φ_n e^{-2πj mn/q}
/// ```
///
/// The `e^{-jπm/q}` factor places bin `n` on `[nT/q, (n+1)T/q)`.
pub fn tai_spectrum(design: &TaiDesign, n_lines: usize) -> Result<LineSpectrum> {
    let q = design.order.q();
    let levels_dft = dft(design.phases.entries())?;
    let lines = (0..n_lines).map(|k| {
        let m = harmonic_of(k, n_lines);
        let x = m as f64 / q as f64;
        let envelope = Complex64::from_polar(sinc(x) / q as f64, -std::f64::consts::PI * x);
        (m, envelope * levels_dft[m.rem_euclid(q) as usize])
    });
    LineSpectrum::from_lines(1.0, n_lines, lines)
}

/// Lines of the target train `√q·rect` on `[0, T/q)`, delayed by `T/2`
/// when `p·q` is odd: `(1/√q) sinc(m/q) e^{-jπm/q} (-1)^{m·pq}`.
pub fn rect_train_spectrum(order: &TalbotOrder, n_lines: usize) -> Result<LineSpectrum> {
    let q = order.q() as f64;
    let shifted = order.shifted();
    let lines = (0..n_lines).map(|k| {
        let m = harmonic_of(k, n_lines);
        let x = m as f64 / q;
        let sign = if shifted && parity(m) == 1 { -1.0 } else { 1.0 };
        (m, Complex64::from_polar(sign * sinc(x) / q.sqrt(), -std::f64::consts::PI * x))
    });
    LineSpectrum::from_lines(1.0, n_lines, lines)
}

/// `r = [1/p]_q`. Undefined for `q = 1`.
pub fn r_value(order: &TalbotOrder) -> Result<Int> {
    mod_inverse(order.p(), order.q())
}

/// `s` recovered from `r`: `r + q·e_r (mod 2q)` for odd `q`; for even `q`
/// whichever of `r`, `r + q` inverts `p` modulo `2q`.
pub fn s_from_r(order: &TalbotOrder) -> Result<Int> {
    let (p, q) = (order.p(), order.q());
    let r = r_value(order)?;
    if parity(q) == 1 {
        Ok(modulo(r + q * parity(r), 2 * q))
    } else if mul_mod(r, p, 2 * q) == 1 {
        Ok(r)
    } else {
        Ok(r + q)
    }
}

/// `exp(jπσ r m²/q)` for even `q`, `exp(jπσ r m(m-1)/q)` for odd `q`.
pub fn r_based_phases(order: &TalbotOrder) -> Result<PhaseSequence> {
    let q = order.q();
    if q == 1 {
        return Ok(PhaseSequence::from_exact(vec![ExactPhase::ZERO], Family::RBased));
    }
    let r = r_value(order)?;
    let m2q = 2 * q;
    let sigma = order.sigma().value();
    let phases = (0..q)
        .map(|m| {
            let poly = if parity(q) == 0 { mul_mod(m, m, m2q) } else { mul_mod(m, m - 1, m2q) };
            ExactPhase::from_product(sigma * r, poly, q)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PhaseSequence::from_exact(phases, Family::RBased))
}

/// A cyclic shift and global phase relating two sequences.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Equivalence {
    pub shift: usize,
    pub global_phase: Complex64,
}

/// Finds `(shift, γ)` with `a[n] = γ·b[(n + shift) mod q]` for every `n`,
/// trying shifts in increasing order.
pub fn equivalent_up_to_shift_and_phase(a: &[Complex64], b: &[Complex64]) -> Option<Equivalence> {
    if a.len() != b.len() || a.is_empty() {
        return None;
    }
    (0..a.len()).find_map(|shift| matches_shifted(a, b, shift).map(|global_phase| Equivalence { shift, global_phase }))
}

/// The `p = 1` illuminator series `(-1)^{n e_q} exp(jσπ n²/q)`.
pub fn leger_phases(q: Int, sigma: Sign) -> Result<PhaseSequence> {
    if q < 1 {
        return Err(Error::domain(format!("q must be positive, got {q}")));
    }
    let eq = parity(q);
    let phases = (0..q)
        .map(|n| {
            let alt = ExactPhase::new(n * eq, 1)?;
            alt.checked_add(ExactPhase::from_product(sigma.value(), mul_mod(n, n, 2 * q), q)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PhaseSequence::from_exact(phases, Family::Leger))
}

/// Spectral Talbot levels and the smallest period of the infinite sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralTalbot {
    pub phases: PhaseSequence,
    pub min_period: usize,
}

/// `exp(jσπ p n²/q)` for `n ∈ [0, length)`. Its period is `q` when `p·q`
/// is even and `2q` otherwise.
pub fn spectral_talbot_phases(order: &TalbotOrder, length: usize) -> Result<SpectralTalbot> {
    if length == 0 {
        return Err(Error::domain("length must be at least 1"));
    }
    let (p, q) = (order.p(), order.q());
    let m2q = 2 * q;
    let phase = |n: Int| ExactPhase::from_product(order.sigma().value() * p, mul_mod(n, n, m2q), q);
    let phases = (0..length as Int).map(phase).collect::<Result<Vec<_>>>()?;
    // The sequence is 2q-periodic; scan one full period for the smallest one.
    let one_period = (0..m2q).map(phase).collect::<Result<Vec<_>>>()?;
    let min_period = (1..=m2q as usize)
        .find(|&t| (0..m2q as usize).all(|n| one_period[n] == one_period[(n + t) % m2q as usize]))
        .expect("2q is always a period");
    Ok(SpectralTalbot { phases: PhaseSequence::from_exact(phases, Family::SpectralTalbot), min_period })
}

/// `s` for the design order, exposed for symmetry with [`r_value`].
pub fn design_s(order: &TalbotOrder) -> Result<Int> {
    Ok(compute_s(order)?.s())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss_phase::periodic_autocorrelation;
    use std::f64::consts::PI;

    fn order(p: Int, q: Int, sigma: Sign) -> TalbotOrder {
        TalbotOrder::new(p, q, sigma).unwrap()
    }

    fn cis(t: f64) -> Complex64 {
        Complex64::from_polar(1.0, t)
    }

    #[test]
    fn design_examples() {
        let d = tai_phases(&order(1, 2, Sign::Plus)).unwrap();
        let l = d.phases().entries();
        assert!((l[0] - cis(PI / 4.0)).norm() < 1e-12);
        assert!((l[1] - cis(-PI / 4.0)).norm() < 1e-12);
        assert_eq!(d.bin_width(1.0), 0.5);

        let d = tai_phases(&order(1, 1, Sign::Plus)).unwrap();
        assert!((d.phases().entries()[0] - 1.0).norm() < 1e-12);

        let d = tai_phases(&order(1, 4, Sign::Plus)).unwrap();
        assert_eq!(d.s(), 1);
        let e = d.phases().exact().unwrap();
        for n in 0..4i64 {
            assert_eq!(e[n as usize] - e[0], ExactPhase::new(-n * n, 4).unwrap());
        }
    }

    #[test]
    fn forward_concentrates_half_order() {
        let d = tai_phases(&order(1, 2, Sign::Plus)).unwrap();
        let out = tai_forward(&d, 32).unwrap();
        let c = check_concentration(&d, &out, 32, 1e-9).unwrap();
        assert!(c.pass, "{c:?}");
        assert!(out.samples()[..32].iter().all(|z| (z.norm() - 2f64.sqrt()).abs() < 1e-9));
        assert!(out.samples()[32..].iter().all(|z| z.norm() < 1e-9));
    }

    #[test]
    fn forward_integer_order_passes_through() {
        let d = tai_phases(&order(1, 1, Sign::Plus)).unwrap();
        let out = tai_forward(&d, 16).unwrap();
        let c = check_concentration(&d, &out, 16, 1e-9).unwrap();
        assert!(c.pass, "{c:?}");
        assert!((c.power_gain - 1.0).abs() < 1e-9);
    }

    #[test]
    fn forward_rejects_bad_grids() {
        let d = tai_phases(&order(1, 3, Sign::Plus)).unwrap();
        assert!(tai_forward(&d, 1).is_err());
        assert!(matches!(tai_forward(&d, 5), Err(Error::Grid(_))));
        let d = tai_phases(&order(2, 3, Sign::Plus)).unwrap();
        assert!(tai_forward(&d, 5).is_ok());
    }

    #[test]
    fn forward_sweep() {
        for sigma in Sign::BOTH {
            for o in TalbotOrder::sweep(1..=10, |q| 2 * q, sigma) {
                let d = tai_phases(&o).unwrap();
                let out = tai_forward(&d, DEFAULT_SAMPLES_PER_BIN).unwrap();
                let c = check_concentration(&d, &out, DEFAULT_SAMPLES_PER_BIN, 1e-9).unwrap();
                assert!(c.pass, "{o}: {c:?}");
                assert!((c.power_gain - o.q() as f64).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn unconjugated_levels_do_not_concentrate() {
        let o = order(1, 3, Sign::Plus);
        let d = tai_phases(&o).unwrap();
        let wrong = TaiDesign { phases: d.phases().conj(), ..d.clone() };
        let out = tai_forward(&wrong, 16).unwrap();
        assert!(!check_concentration(&wrong, &out, 16, 1e-9).unwrap().pass);
    }

    #[test]
    fn bin_interference_is_autocorrelation() {
        // Σ_n e^{jσ(ξ_{k-n} - ξ_n)} = q·δ_{k ≡ 0}.
        for sigma in Sign::BOTH {
            for o in TalbotOrder::sweep(1..=32, |q| 2 * q, sigma) {
                let x = talbot_phases(&o).unwrap();
                let q = o.q();
                for k in 0..q {
                    let sum: Complex64 = (0..q).map(|n| x.at(k - n) * x.at(n).conj()).sum();
                    let expected = if k == 0 { q as f64 } else { 0.0 };
                    assert!((sum - expected).norm() < 1e-10, "{o} k={k}");
                }
                let r = periodic_autocorrelation(x.entries());
                assert!((r[0] - q as f64).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn spectrum_examples() {
        let d = tai_phases(&order(1, 2, Sign::Plus)).unwrap();
        let spec = tai_spectrum(&d, 32).unwrap();
        let c0 = spec.coefficient(0).unwrap();
        assert!((c0.norm() - 1.0 / 2f64.sqrt()).abs() < 1e-12);
        for m in -8..=8i64 {
            let x = m as f64 / 2.0;
            assert!((spec.coefficient(m).unwrap().norm() - sinc(x).abs() / 2f64.sqrt()).abs() < 1e-12);
        }

        let d = tai_phases(&order(3, 1, Sign::Plus)).unwrap();
        let spec = tai_spectrum(&d, 16).unwrap();
        for (m, c) in spec.lines() {
            assert!((c - Complex64::from_polar(sinc(m as f64), -PI * m as f64)).norm() < 1e-12);
        }
        for q in 1..=9 {
            let d = tai_phases(&order(1, q, Sign::Minus)).unwrap();
            let c0 = tai_spectrum(&d, 8).unwrap().coefficient(0).unwrap();
            assert!((c0.norm() - 1.0 / (q as f64).sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn spectrum_agrees_with_sampled_input() {
        let d = tai_phases(&order(1, 2, Sign::Plus)).unwrap();
        let spb = 2048;
        let sampled = crate::talbot_field::analyze(&tai_input(&d, spb).unwrap());
        let analytic = tai_spectrum(&d, 64).unwrap();
        for m in -6..=6 {
            let err = (sampled.coefficient(m).unwrap() - analytic.coefficient(m).unwrap()).norm();
            assert!(err < 2e-3, "m={m}: {err}");
        }
    }

    #[test]
    fn dispersion_removes_the_chirp() {
        for sigma in Sign::BOTH {
            for o in TalbotOrder::sweep(1..=16, |q| 2 * q, sigma) {
                let d = tai_phases(&o).unwrap();
                let n_lines = 8 * o.q() as usize;
                let compensated = tai_spectrum(&d, n_lines)
                    .unwrap()
                    .map_lines(|m, c| c * crate::talbot_field::transfer_phase(&o, m).to_unit());
                let target = rect_train_spectrum(&o, n_lines).unwrap();
                for (m, c) in compensated.lines() {
                    assert!((c - target.coefficient(m).unwrap()).norm() < 1e-9, "{o} m={m}");
                }
            }
        }
    }

    #[test]
    fn r_examples() {
        let o = order(5, 8, Sign::Plus);
        assert_eq!(r_value(&o).unwrap(), 5);
        assert_eq!(design_s(&o).unwrap(), 13);
        let o = order(1, 3, Sign::Plus);
        assert_eq!(r_value(&o).unwrap(), 1);
        assert_eq!(s_from_r(&o).unwrap(), 4);
        let o = order(1, 2, Sign::Plus);
        let eq = equivalent_up_to_shift_and_phase(
            talbot_phases(&o).unwrap().entries(),
            r_based_phases(&o).unwrap().entries(),
        )
        .unwrap();
        assert_eq!(eq.shift, 0);
        assert!(r_value(&order(1, 1, Sign::Plus)).is_err());
        assert_eq!(r_based_phases(&order(1, 1, Sign::Plus)).unwrap().len(), 1);
    }

    #[test]
    fn s_from_r_relation() {
        for o in TalbotOrder::sweep(2..=100, |q| 2 * q, Sign::Plus) {
            let s = design_s(&o).unwrap();
            let r = r_value(&o).unwrap();
            assert_eq!(s_from_r(&o).unwrap(), s, "{o}");
            if o.q() % 2 == 0 {
                assert!(s == r || s == r + o.q());
                assert_eq!(s % 2, 1);
            }
        }
    }

    #[test]
    fn equivalence_examples() {
        let x = talbot_phases(&order(3, 7, Sign::Plus)).unwrap();
        let e = equivalent_up_to_shift_and_phase(x.entries(), x.entries()).unwrap();
        assert_eq!(e.shift, 0);
        assert!((e.global_phase - 1.0).norm() < 1e-12);

        let o = order(1, 8, Sign::Plus);
        assert!(equivalent_up_to_shift_and_phase(
            talbot_phases(&o).unwrap().entries(),
            r_based_phases(&o).unwrap().entries()
        )
        .is_some());

        let j = Complex64::i();
        let one = Complex64::new(1.0, 0.0);
        assert!(equivalent_up_to_shift_and_phase(&[one, j, -one], &[one, -j, -one]).is_none());
        assert!(equivalent_up_to_shift_and_phase(&[one], &[one, one]).is_none());
    }

    #[test]
    fn r_family_shift_is_half_period_when_s_differs() {
        // q even and s = r + q: the shift is q/2.
        let o = order(5, 8, Sign::Plus);
        let e = equivalent_up_to_shift_and_phase(
            talbot_phases(&o).unwrap().entries(),
            r_based_phases(&o).unwrap().entries(),
        )
        .unwrap();
        assert_eq!(e.shift, 4);
    }

    #[test]
    fn r_based_levels_match_for_all_small_orders() {
        for sigma in Sign::BOTH {
            for o in TalbotOrder::sweep(1..=32, |q| 2 * q, sigma) {
                let found = equivalent_up_to_shift_and_phase(
                    talbot_phases(&o).unwrap().entries(),
                    r_based_phases(&o).unwrap().entries(),
                );
                assert!(found.is_some(), "{o}");
            }
        }
    }

    #[test]
    fn leger_examples() {
        let l = leger_phases(2, Sign::Plus).unwrap();
        assert!((l.entries()[0] - 1.0).norm() < 1e-12);
        assert!((l.entries()[1] - Complex64::i()).norm() < 1e-12);
        assert_eq!(leger_phases(1, Sign::Plus).unwrap().len(), 1);
        assert!(leger_phases(0, Sign::Plus).is_err());
        let l = leger_phases(3, Sign::Plus).unwrap();
        for n in 0..3 {
            let expected = cis(PI * (n * n) as f64 / 3.0) * if n % 2 == 1 { -1.0 } else { 1.0 };
            assert!((l.entries()[n as usize] - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn leger_series_is_the_unconjugated_family() {
        // The series equals x_n of 1/q (Φ of the opposite sign) with zero
        // shift; against Φ of the same sign it is the complex conjugate.
        for q in 1..=32 {
            for sigma in Sign::BOTH {
                let l = leger_phases(q, sigma).unwrap();
                let x = talbot_phases(&order(1, q, sigma)).unwrap();
                let e = equivalent_up_to_shift_and_phase(l.entries(), x.entries()).unwrap();
                assert_eq!(e.shift, 0);
                let tai = tai_phases(&order(1, q, sigma.flip())).unwrap();
                assert!(equivalent_up_to_shift_and_phase(l.entries(), tai.phases().entries()).is_some());
                let conj = tai_phases(&order(1, q, sigma)).unwrap().phases().conj();
                assert!(equivalent_up_to_shift_and_phase(l.entries(), conj.entries()).is_some());
            }
        }
    }

    #[test]
    fn spectral_talbot_examples() {
        let st = spectral_talbot_phases(&order(1, 2, Sign::Plus), 8).unwrap();
        assert_eq!(st.phases.len(), 8);
        assert_eq!(st.min_period, 2);
        let st = spectral_talbot_phases(&order(2, 3, Sign::Plus), 6).unwrap();
        assert_eq!(st.min_period, 3);
        let st = spectral_talbot_phases(&order(1, 3, Sign::Plus), 6).unwrap();
        assert_eq!(st.min_period, 6);
        assert!(spectral_talbot_phases(&order(1, 3, Sign::Plus), 0).is_err());

        // Self-dual order: p = s, so the quadratic parts coincide.
        let o = order(3, 4, Sign::Plus);
        let st = spectral_talbot_phases(&o, 4).unwrap();
        let x = talbot_phases(&o).unwrap();
        let e = equivalent_up_to_shift_and_phase(x.entries(), st.phases.entries()).unwrap();
        assert_eq!(e.shift, 0);
    }

    #[test]
    fn spectral_talbot_period_rule() {
        for o in TalbotOrder::sweep(1..=30, |q| 2 * q, Sign::Plus) {
            let st = spectral_talbot_phases(&o, 1).unwrap();
            let expected = if o.shifted() { 2 * o.q() } else { o.q() };
            assert_eq!(st.min_period as Int, expected, "{o}");
        }
    }
}
