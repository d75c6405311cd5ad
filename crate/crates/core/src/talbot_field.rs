//! Temporal Talbot propagation of uniformly sampled periodic envelopes.
//!
//! Two independent routes produce the field at order `p/q`:
//!
//! * [`propagate`] multiplies Fourier line `n` by `exp(-jπσ p n²/q)`;
//! * [`reconstruct_fractional`] sums `q` copies of the unit cell delayed by
//!   `nT/q` and weighted by `x_n/√q`, then delays the train by `T/2` when
//!   `p·q` is odd.
//!
//! On a grid of `N = M·q` samples (with `M` even when `p·q` is odd) the
//! transfer function is `N`-periodic in `n` and both routes agree to
//! rounding for any sampled cell.

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss_phase::talbot_phases;
use crate::numtheory::{mul_mod, Int};
use crate::phase::ExactPhase;
use crate::talbot_s::TalbotOrder;

/// One period of a complex envelope sampled at `t_k = k·T/N`.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicEnvelope {
    period: f64,
    samples: Vec<Complex64>,
}

impl PeriodicEnvelope {
    pub fn new(period: f64, samples: Vec<Complex64>) -> Result<Self> {
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::domain(format!("period {period} must be positive and finite")));
        }
        if samples.is_empty() {
            return Err(Error::domain("an envelope needs at least one sample"));
        }
        if samples.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::domain("envelope samples must be finite"));
        }
        Ok(PeriodicEnvelope { period, samples })
    }

    /// Constant (cw) envelope of amplitude 1.
    pub fn cw(period: f64, n: usize) -> Result<Self> {
        Self::new(period, vec![Complex64::new(1.0, 0.0); n])
    }

    /// Unit rectangle on the half-open sample range `[start, start + width)`,
    /// taken cyclically.
    pub fn rect(period: f64, n: usize, start: usize, width: usize) -> Result<Self> {
        let mut samples = vec![Complex64::new(0.0, 0.0); n];
        for k in 0..width.min(n) {
            samples[(start + k) % n.max(1)] = Complex64::new(1.0, 0.0);
        }
        Self::new(period, samples)
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    /// Sample time `k·T/N`.
    pub fn time(&self, k: usize) -> f64 {
        k as f64 * self.period / self.len() as f64
    }

    /// Sample with cyclic indexing.
    pub fn at(&self, k: Int) -> Complex64 {
        self.samples[k.rem_euclid(self.len() as Int) as usize]
    }

    /// Mean of `|E|²` over the period.
    pub fn mean_power(&self) -> f64 {
        self.samples.iter().map(Complex64::norm_sqr).sum::<f64>() / self.len() as f64
    }

    pub fn peak(&self) -> f64 {
        self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Cyclic delay by `shift` samples: `out[k] = in[k - shift]`.
    pub fn delayed(&self, shift: Int) -> Self {
        let n = self.len() as Int;
        let samples = (0..n).map(|k| self.at(k - shift)).collect();
        PeriodicEnvelope { period: self.period, samples }
    }
}

/// Fourier-series lines `c_n` of a sampled envelope, `n` in the balanced
/// range `(-N/2, N/2]`, with `E(t_k) = Σ_n c_n e^{2πj n k/N}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LineSpectrum {
    period: f64,
    // FFT order: slot k holds harmonic `harmonic_of(k)`.
    coefficients: Vec<Complex64>,
}

impl LineSpectrum {
    /// Builds a spectrum of `n_samples` lines from `(n, c_n)` pairs; lines
    /// not listed are zero.
    pub fn from_lines(
        period: f64,
        n_samples: usize,
        lines: impl IntoIterator<Item = (Int, Complex64)>,
    ) -> Result<Self> {
        if n_samples == 0 {
            return Err(Error::domain("a spectrum needs at least one line"));
        }
        let mut coefficients = vec![Complex64::new(0.0, 0.0); n_samples];
        for (n, c) in lines {
            let slot = slot_of(n, n_samples)
                .ok_or_else(|| Error::domain(format!("harmonic {n} outside band of {n_samples} lines")))?;
            coefficients[slot] = c;
        }
        Ok(LineSpectrum { period, coefficients })
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn n_samples(&self) -> usize {
        self.coefficients.len()
    }

    /// `c_n`, or `None` outside the band.
    pub fn coefficient(&self, n: Int) -> Option<Complex64> {
        slot_of(n, self.n_samples()).map(|k| self.coefficients[k])
    }

    /// Lines as `(n, c_n)` in increasing `n`.
    pub fn lines(&self) -> Vec<(Int, Complex64)> {
        let len = self.n_samples();
        let mut out: Vec<_> = (0..len).map(|k| (harmonic_of(k, len), self.coefficients[k])).collect();
        out.sort_by_key(|(n, _)| *n);
        out
    }

    /// `Σ |c_n|²`.
    pub fn power(&self) -> f64 {
        self.coefficients.iter().map(Complex64::norm_sqr).sum()
    }

    /// Multiplies every line by `f(n)`.
    pub fn map_lines(&self, f: impl Fn(Int, Complex64) -> Complex64) -> Self {
        let len = self.n_samples();
        let coefficients = self.coefficients.iter().enumerate().map(|(k, &c)| f(harmonic_of(k, len), c)).collect();
        LineSpectrum { period: self.period, coefficients }
    }
}

/// Signed harmonic stored at FFT slot `k`.
pub fn harmonic_of(k: usize, len: usize) -> Int {
    if 2 * k <= len {
        k as Int
    } else {
        k as Int - len as Int
    }
}

fn slot_of(n: Int, len: usize) -> Option<usize> {
    let l = len as Int;
    // Balanced range (-len/2, len/2].
    if 2 * n > l || 2 * n <= -l {
        return None;
    }
    Some(n.rem_euclid(l) as usize)
}

/// Discrete Fourier series of the samples (forward FFT divided by `N`).
pub fn analyze(env: &PeriodicEnvelope) -> LineSpectrum {
    let len = env.len();
    let mut buf = env.samples.clone();
    FftPlanner::new().plan_fft_forward(len).process(&mut buf);
    let scale = 1.0 / len as f64;
    buf.iter_mut().for_each(|c| *c *= scale);
    LineSpectrum { period: env.period, coefficients: buf }
}

/// Inverse of [`analyze`].
pub fn synthesize(spec: &LineSpectrum) -> PeriodicEnvelope {
    let mut buf = spec.coefficients.clone();
    FftPlanner::new().plan_fft_inverse(buf.len()).process(&mut buf);
    PeriodicEnvelope { period: spec.period, samples: buf }
}

/// Exact phase of `H(ω_n) = exp(-jπσ p n²/q)`.
pub fn transfer_phase(order: &TalbotOrder, n: Int) -> ExactPhase {
    let m2q = 2 * order.q();
    let n2 = mul_mod(n, n, m2q);
    ExactPhase::from_product(-order.sigma().value() * order.p(), n2, order.q()).expect("denominator q is positive")
}

/// Spectral propagation through the dispersive line at order `p/q`.
pub fn propagate(env: &PeriodicEnvelope, order: &TalbotOrder) -> PeriodicEnvelope {
    let spec = analyze(env).map_lines(|n, c| c * transfer_phase(order, n).to_unit());
    synthesize(&spec)
}

fn check_grid(len: usize, order: &TalbotOrder) -> Result<()> {
    let q = order.q() as usize;
    if len % q != 0 {
        return Err(Error::Grid(format!("{len} samples are not divisible by q = {q}")));
    }
    if order.shifted() && len % 2 != 0 {
        return Err(Error::Grid(format!(
            "order {}/{} shifts by half a period; {len} samples is odd",
            order.p(),
            order.q()
        )));
    }
    Ok(())
}

/// `(1/√q) Σ_n x_n · w(t - nT/q)`, periodized, then delayed by `T/2` when
/// `p·q` is odd. No Fourier transform is involved.
pub fn reconstruct_fractional(cell: &PeriodicEnvelope, order: &TalbotOrder) -> Result<PeriodicEnvelope> {
    let len = cell.len();
    check_grid(len, order)?;
    let weights = talbot_phases(order)?;
    let q = order.q();
    let step = (len as Int) / q;
    let half = if order.shifted() { len as Int / 2 } else { 0 };
    let norm = 1.0 / (q as f64).sqrt();
    let samples = (0..len as Int)
        .map(|k| (0..q).map(|n| weights.entries()[n as usize] * cell.at(k - n * step - half)).sum::<Complex64>() * norm)
        .collect();
    Ok(PeriodicEnvelope { period: cell.period, samples })
}

/// Distances between two envelopes on the same grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    /// `max_k |a_k - b_k|`.
    pub l_inf: f64,
    /// Root-mean-square of `a - b`.
    pub l2: f64,
    /// `max|a| / max|b|` (1 when both vanish).
    pub peak_ratio: f64,
}

pub fn compare(a: &PeriodicEnvelope, b: &PeriodicEnvelope) -> Result<Comparison> {
    if a.len() != b.len() {
        return Err(Error::Shape(format!("{} vs {} samples", a.len(), b.len())));
    }
    if (a.period - b.period).abs() > 1e-12 * a.period.abs().max(b.period.abs()) {
        return Err(Error::Shape(format!("period {} vs {}", a.period, b.period)));
    }
    let diffs = a.samples.iter().zip(&b.samples).map(|(x, y)| (x - y).norm());
    let (l_inf, sq) = diffs.fold((0.0f64, 0.0f64), |(m, s), d| (m.max(d), s + d * d));
    let (pa, pb) = (a.peak(), b.peak());
    let peak_ratio = match (pa == 0.0, pb == 0.0) {
        (true, true) => 1.0,
        (_, true) => f64::INFINITY,
        _ => pa / pb,
    };
    Ok(Comparison { l_inf, l2: (sq / a.len() as f64).sqrt(), peak_ratio })
}
