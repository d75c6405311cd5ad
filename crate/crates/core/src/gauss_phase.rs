//! The Gauss-sum phases of a fractional Talbot order as a DFT pair.
//!
//! For coprime `p, q` with integer `s`,
//!
//! ```text
//! x_n = e^{jσξ₀} · exp(jπσ s n² / q)
//! X_m = √q · exp(-jπσ p (1 + q e_q) m² / q)      X = DFT(x)
//! ```
//!
//! and the global phase `ξ₀` has a closed form in Jacobi symbols and
//! eighth roots of unity. Closed-form phases are built as [`ExactPhase`]
//! values and only turned into floats at the edge; the direct sums in this
//! module ([`xi0_bruteforce`], [`gauss_sum_direct`], [`dft`]) are the
//! floating-point oracles they are checked against.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numtheory::{coprime, jacobi, mul_mod, parity, Int};
use crate::phase::ExactPhase;
use crate::talbot_s::{compute_s, Sign, TalbotOrder, TalbotS};

/// Which construction produced a sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `x_n`, the propagation phases.
    Talbot,
    /// `X_m`, the DFT partner of `x_n`.
    Spectral,
    /// Conjugated `x_n`, the illuminator levels.
    Tai,
    /// Levels written with `r = [1/p]_q`.
    RBased,
    /// The `p = 1` illuminator series.
    Leger,
    /// `exp(±jπ p n²/q)`, the spectral Talbot modulation.
    SpectralTalbot,
    Chu,
    Custom,
}

/// A periodic sequence of unit phases, optionally backed by exact phases,
/// with a common real gain (`√q` for `X_m`, 1 otherwise).
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseSequence {
    entries: Vec<Complex64>,
    exact: Option<Vec<ExactPhase>>,
    gain: f64,
    family: Family,
    order: Option<TalbotOrder>,
    s: Option<Int>,
    xi0: Option<ExactPhase>,
}

impl PhaseSequence {
    pub fn from_exact(phases: Vec<ExactPhase>, family: Family) -> Self {
        PhaseSequence {
            entries: phases.iter().map(ExactPhase::to_unit).collect(),
            exact: Some(phases),
            gain: 1.0,
            family,
            order: None,
            s: None,
            xi0: None,
        }
    }

    /// Arbitrary complex values; no exact backing, gain 1.
    pub fn from_complex(values: Vec<Complex64>) -> Self {
        PhaseSequence {
            entries: values,
            exact: None,
            gain: 1.0,
            family: Family::Custom,
            order: None,
            s: None,
            xi0: None,
        }
    }

    fn with_meta(mut self, ts: &TalbotS, xi0: Option<ExactPhase>) -> Self {
        self.order = Some(ts.order());
        self.s = Some(ts.s());
        self.xi0 = xi0;
        self
    }

    fn with_gain(mut self, gain: f64) -> Self {
        self.gain = gain;
        self
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The unit-magnitude entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Entries scaled by the gain.
    pub fn values(&self) -> Vec<Complex64> {
        self.entries.iter().map(|z| z * self.gain).collect()
    }

    pub fn exact(&self) -> Option<&[ExactPhase]> {
        self.exact.as_deref()
    }

    pub fn gain(&self) -> f64 {
        self.gain
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn order(&self) -> Option<TalbotOrder> {
        self.order
    }

    pub fn s(&self) -> Option<Int> {
        self.s
    }

    pub fn xi0(&self) -> Option<ExactPhase> {
        self.xi0
    }

    /// Entry `n` under the periodic index contract `x_n = x_{n mod len}`.
    pub fn at(&self, n: Int) -> Complex64 {
        self.entries[n.rem_euclid(self.len() as Int) as usize]
    }

    /// Exact phase of entry `n` (periodic), when backed.
    pub fn exact_at(&self, n: Int) -> Option<ExactPhase> {
        self.exact.as_ref().map(|e| e[n.rem_euclid(e.len() as Int) as usize])
    }

    /// Elementwise conjugate; exact phases are negated.
    pub fn conj(&self) -> Self {
        PhaseSequence {
            entries: self.entries.iter().map(Complex64::conj).collect(),
            exact: self.exact.as_ref().map(|e| e.iter().map(|&p| -p).collect()),
            xi0: self.xi0.map(|p| -p),
            ..self.clone()
        }
    }

    pub(crate) fn relabel(mut self, family: Family) -> Self {
        self.family = family;
        self
    }
}

fn jacobi_phase(a: Int, b: Int) -> Result<ExactPhase> {
    match jacobi(a, b)? {
        1 => Ok(ExactPhase::ZERO),
        -1 => Ok(ExactPhase::PI),
        _ => Err(Error::domain(format!("Jacobi symbol ({a}/{b}) vanishes"))),
    }
}

/// `ξ₀` from `s` (for `σ = +1`):
/// `(s/q)·e^{jπ(q-1)/4}` for odd `q`, `(q/s)·e^{-jπs/4}` for even `q`.
/// A Jacobi value of `-1` contributes `π`.
pub fn xi0_s_form(ts: &TalbotS) -> Result<ExactPhase> {
    let (q, s) = (ts.order().q(), ts.s());
    if parity(q) == 1 {
        Ok(jacobi_phase(s, q)? + ExactPhase::new(q - 1, 4)?)
    } else {
        Ok(jacobi_phase(q, s)? + ExactPhase::new(-s, 4)?)
    }
}

/// `ξ₀` written with `p` instead of `s`:
/// `(p/q)·e^{jπ(q-1)/4}` for odd `q`, `(q/p)·e^{-jπp/4}` for even `q`.
pub fn xi0_p_form(order: &TalbotOrder) -> Result<ExactPhase> {
    let (p, q) = (order.p(), order.q());
    if parity(q) == 1 {
        Ok(jacobi_phase(p, q)? + ExactPhase::new(q - 1, 4)?)
    } else {
        Ok(jacobi_phase(q, p)? + ExactPhase::from_product(-1, p, 4)?)
    }
}

/// Exact `ξ₀` for `σ = +1`; callers conjugate for `σ = -1`.
pub fn xi0(order: &TalbotOrder) -> Result<ExactPhase> {
    xi0_s_form(&compute_s(order)?)
}

/// `(1/√q) Σ_{m<q} exp(-jπ s m²/q)`, summed directly.
pub fn xi0_bruteforce(s: Int, q: Int) -> Complex64 {
    assert!(q >= 1, "q must be positive");
    let sum: Complex64 = (0..q)
        .map(|m| {
            // Only s·m² mod 2q matters.
            let k = mul_mod(s, mul_mod(m, m, 2 * q), 2 * q);
            Complex64::from_polar(1.0, -std::f64::consts::PI * k as f64 / q as f64)
        })
        .sum();
    sum / (q as f64).sqrt()
}

/// `x_n = e^{jσξ₀} exp(jπσ s n²/q)`, `n ∈ [0, q)`, with exact backing.
pub fn talbot_phases(order: &TalbotOrder) -> Result<PhaseSequence> {
    let ts = compute_s(order)?;
    let xi = xi0_s_form(&ts)?;
    let (q, s) = (order.q(), ts.s());
    let sigma = order.sigma().value();
    let phases = (0..q)
        .map(|n| {
            let quad = ExactPhase::from_product(s, mul_mod(n, n, 2 * q), q)?;
            let p = xi.checked_add(quad)?;
            Ok(if sigma < 0 { -p } else { p })
        })
        .collect::<Result<Vec<_>>>()?;
    let xi_signed = if sigma < 0 { -xi } else { xi };
    Ok(PhaseSequence::from_exact(phases, Family::Talbot).with_meta(&ts, Some(xi_signed)))
}

/// `X_m = √q exp(-jπσ p(1 + q e_q) m²/q)`; entries are the unit phases and
/// `gain()` is `√q`.
pub fn spectral_weights(order: &TalbotOrder) -> Result<PhaseSequence> {
    let ts = compute_s(order)?;
    let (p, q) = (order.p(), order.q());
    let m2q = 2 * q;
    let coeff = mul_mod(p, 1 + q * parity(q), m2q);
    let sigma = order.sigma().value();
    let phases =
        (0..q).map(|m| ExactPhase::from_product(-sigma * coeff, mul_mod(m, m, m2q), q)).collect::<Result<Vec<_>>>()?;
    Ok(PhaseSequence::from_exact(phases, Family::Spectral).with_meta(&ts, None).with_gain((q as f64).sqrt()))
}

/// `e^{jσξ_n} = (1/√q) Σ_m exp(-jπσ p(1+q e_q) m²/q) exp(2πj nm/q)`,
/// summed term by term without reference to `s`.
pub fn gauss_sum_direct(order: &TalbotOrder, n: Int) -> Complex64 {
    let (p, q) = (order.p(), order.q());
    let m2q = 2 * q;
    let coeff = mul_mod(p, 1 + q * parity(q), m2q);
    let sigma = order.sigma().value();
    let sum: Complex64 = (0..q)
        .map(|m| {
            // π·(-σ·coeff·m² + 2nm)/q, reduced mod 2π.
            let quad = mul_mod(-sigma * coeff, mul_mod(m, m, m2q), m2q);
            let lin = mul_mod(2 * n.rem_euclid(q), m, m2q);
            let k = (quad + lin) % m2q;
            Complex64::from_polar(1.0, std::f64::consts::PI * k as f64 / q as f64)
        })
        .sum();
    sum / (q as f64).sqrt()
}

fn twiddles(len: usize, sign: f64) -> Vec<Complex64> {
    (0..len).map(|k| Complex64::from_polar(1.0, sign * std::f64::consts::TAU * k as f64 / len as f64)).collect()
}

/// `X_m = Σ_n x_n e^{-2πj nm/q}` by direct summation.
pub fn dft(x: &[Complex64]) -> Result<Vec<Complex64>> {
    if x.is_empty() {
        return Err(Error::domain("dft of an empty sequence"));
    }
    let q = x.len();
    let w = twiddles(q, -1.0);
    Ok((0..q).map(|m| x.iter().enumerate().map(|(n, xn)| xn * w[(n * m) % q]).sum()).collect())
}

/// `x_n = (1/q) Σ_m X_m e^{2πj nm/q}`.
pub fn idft(x: &[Complex64]) -> Result<Vec<Complex64>> {
    if x.is_empty() {
        return Err(Error::domain("idft of an empty sequence"));
    }
    let q = x.len();
    let w = twiddles(q, 1.0);
    Ok((0..q).map(|n| x.iter().enumerate().map(|(m, xm)| xm * w[(n * m) % q]).sum::<Complex64>() / q as f64).collect())
}

/// `R(n) = Σ_k conj(x_k) x_{(k+n) mod q}` for `n ∈ [0, q)`.
pub fn periodic_autocorrelation(x: &[Complex64]) -> Vec<Complex64> {
    let q = x.len();
    (0..q).map(|n| (0..q).map(|k| x[k].conj() * x[(k + n) % q]).sum()).collect()
}

/// Chu's sequence of length `len`: `exp(±jπ N m²/M)` for even `M`,
/// `exp(±jπ N m(m+1)/M)` for odd `M`.
pub fn chu_sequence(n: Int, len: Int, sign: Sign) -> Result<PhaseSequence> {
    if len < 1 {
        return Err(Error::domain(format!("Chu length {len} must be positive")));
    }
    if !coprime(n, len) {
        return Err(Error::domain(format!("Chu parameters {n}, {len} are not coprime")));
    }
    let m2 = 2 * len;
    let phases = (0..len)
        .map(|m| {
            let poly = if parity(len) == 0 { mul_mod(m, m, m2) } else { mul_mod(m, m + 1, m2) };
            ExactPhase::from_product(sign.value() * n, poly, len)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PhaseSequence::from_exact(phases, Family::Chu))
}

/// Tolerance for matching sequences entry by entry.
pub const MATCH_TOL: f64 = 1e-10;

/// Whether `a[n] = γ · b[(n + shift) mod q]` holds for all `n`, with `γ`
/// fixed from `n = 0`.
pub(crate) fn matches_shifted(a: &[Complex64], b: &[Complex64], shift: usize) -> Option<Complex64> {
    let q = a.len();
    let anchor = b[shift % q];
    if anchor.norm() < MATCH_TOL {
        return None;
    }
    let gamma = a[0] / anchor;
    (0..q).all(|n| (a[n] - gamma * b[(n + shift) % q]).norm() < MATCH_TOL).then_some(gamma)
}

/// Exhaustive search for `(N, sign, shift, global phase)` making `seq` a
/// Chu sequence of its own length, with `N ∈ [1, 2q]`.
pub fn is_chu_equivalent(seq: &[Complex64]) -> bool {
    let q = seq.len();
    if q == 0 {
        return false;
    }
    let len = q as Int;
    (1..=2 * len).filter(|&n| coprime(n, len)).any(|n| {
        Sign::BOTH.iter().any(|&sign| {
            let chu = chu_sequence(n, len, sign).expect("coprime parameters");
            (0..q).any(|shift| matches_shifted(seq, chu.entries(), shift).is_some())
        })
    })
}
