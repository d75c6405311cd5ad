//! The parity-dependent modular inverse `s` attached to a fractional
//! Talbot order `p/q`.
//!
//! `s` is the unique integer in `[1, 2q-1]` with
//!
//! ```text
//! s·p ≡ 1 + q·e_q (mod 2q),   parity(s) ≠ parity(q),
//! ```
//!
//! where `e_q` is the parity of `q`. It is built as `[1/p]_{2q}` for even
//! `q` and as `2·[1/2p]_q` for odd `q`. Besides that construction this
//! module carries the alternative residue formulas, the closed-form series
//! and the complementary-order sum rule, each usable as a cross-check of
//! the others.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{coprime, gcd, mod_inverse, modulo, mul_mod, parity, Int};

/// Largest accepted `q`; keeps `4q` and `p·q` inside 64 bits.
pub const MAX_Q: Int = 1 << 40;

/// Sign of the dispersion coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> Int {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.value() as i8
    }
}

impl TryFrom<i8> for Sign {
    type Error = Error;
    fn try_from(v: i8) -> Result<Sign> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::domain(format!("sign must be +1 or -1, got {v}"))),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// A fractional Talbot plane: coprime `p, q ≥ 1` and the dispersion sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TalbotOrder {
    p: Int,
    q: Int,
    sigma: Sign,
}

impl TalbotOrder {
    pub fn new(p: Int, q: Int, sigma: Sign) -> Result<Self> {
        if p < 1 || q < 1 {
            return Err(Error::domain(format!("order {p}/{q}: p and q must be positive")));
        }
        if q > MAX_Q || p > Int::MAX / 4 {
            return Err(Error::Overflow("talbot order"));
        }
        if !coprime(p, q) {
            return Err(Error::domain(format!("order {p}/{q}: p and q are not coprime")));
        }
        Ok(TalbotOrder { p, q, sigma })
    }

    /// Shorthand for `σ = +1`.
    pub fn plus(p: Int, q: Int) -> Result<Self> {
        Self::new(p, q, Sign::Plus)
    }

    pub fn p(&self) -> Int {
        self.p
    }

    pub fn q(&self) -> Int {
        self.q
    }

    pub fn sigma(&self) -> Sign {
        self.sigma
    }

    pub fn with_sign(self, sigma: Sign) -> Self {
        TalbotOrder { sigma, ..self }
    }

    /// Parity of `p·q`: whether the output train is shifted by half a period.
    pub fn shifted(&self) -> bool {
        parity(self.p) == 1 && parity(self.q) == 1
    }

    /// All coprime orders with `q` in `q_range` and `1 ≤ p ≤ p_of(q)`.
    pub fn sweep(q_range: std::ops::RangeInclusive<Int>, p_of: impl Fn(Int) -> Int, sigma: Sign) -> Vec<TalbotOrder> {
        q_range
            .flat_map(|q| {
                let p_max = p_of(q);
                (1..=p_max).filter(move |&p| coprime(p, q)).map(move |p| (p, q))
            })
            .map(|(p, q)| TalbotOrder { p, q, sigma })
            .collect()
    }
}

impl fmt::Display for TalbotOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} (σ={})", self.p, self.q, self.sigma)
    }
}

/// An order together with its integer `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TalbotS {
    order: TalbotOrder,
    s: Int,
}

impl TalbotS {
    pub fn order(&self) -> TalbotOrder {
        self.order
    }

    pub fn s(&self) -> Int {
        self.s
    }
}

/// Upper end of the admissible range of `s`.
///
/// For `q = 1` the range `[1, 2q-1]` holds no even integer, so the
/// degenerate order uses `[1, 2]` and `s = 2`.
pub fn s_upper_bound(q: Int) -> Int {
    if q == 1 {
        2
    } else {
        2 * q - 1
    }
}

/// Checks range, the modular equation, parity opposition and coprimality
/// with `q`. Independent of [`compute_s`].
pub fn verify_s(order: &TalbotOrder, s: Int) -> bool {
    let (p, q) = (order.p, order.q);
    if s < 1 || s > s_upper_bound(q) {
        return false;
    }
    let target = modulo(1 + q * parity(q), 2 * q);
    mul_mod(s, p, 2 * q) == target && parity(s) == 1 - parity(q) && matches!(gcd(s, q), Ok(1))
}

/// `s = [1/p]_{2q}` for even `q`, `s = 2·[1/2p]_q` for odd `q`.
pub fn compute_s(order: &TalbotOrder) -> Result<TalbotS> {
    let (p, q) = (order.p, order.q);
    if !coprime(p, q) {
        return Err(Error::domain(format!("order {p}/{q} is not coprime")));
    }
    let s = if q == 1 {
        2
    } else if parity(q) == 0 {
        mod_inverse(p, 2 * q)?
    } else {
        2 * mod_inverse(mul_mod(2, p, q), q)?
    };
    debug_assert!(verify_s(order, s), "s={s} fails for {order}");
    Ok(TalbotS { order: *order, s })
}

/// The residue formulas for `s` used by earlier evaluations of the sums,
/// reduced to `[0, 2q-1]`:
///
/// * `p, q` odd: `4p·[1/2p]_q² mod 2q`
/// * otherwise:  `p·[1/p]_q² mod 2q`
pub fn compute_s_alt(order: &TalbotOrder) -> Result<Int> {
    let (p, q) = (order.p, order.q);
    if q < 2 {
        return Err(Error::domain("alternative s formulas need q ≥ 2"));
    }
    if !coprime(p, q) {
        return Err(Error::domain(format!("order {p}/{q} is not coprime")));
    }
    let m = 2 * q;
    let s = if parity(p) == 1 && parity(q) == 1 {
        let inv = mod_inverse(mul_mod(2, p, q), q)?;
        mul_mod(mul_mod(4, p, m), mul_mod(inv, inv, m), m)
    } else {
        let inv = mod_inverse(p, q)?;
        mul_mod(p, mul_mod(inv, inv, m), m)
    };
    Ok(s)
}

/// Closed-form `s` for the three special series, or `None` when the order
/// belongs to none of them:
///
/// * `p ≡ 1 (mod 2q)` gives `s = 1 + q·e_q`;
/// * `p ≡ q ± 1 (mod 2q)` gives `s = q ± 1`;
/// * `q = 1 + 2np` gives `s ≡ -2n`, and `q = -1 + 2np` gives `s ≡ +2n (mod 2q)`.
///
/// In the last series the sign of `s` runs opposite to the `±1` in `q`;
/// `p` is taken modulo `2q` before matching.
pub fn closed_form_s(order: &TalbotOrder) -> Option<Int> {
    let q = order.q;
    let m = 2 * q;
    let p = modulo(order.p, m);
    if p == modulo(1, m) {
        return Some(1 + q * parity(q));
    }
    if p == modulo(q + 1, m) {
        return Some(q + 1);
    }
    if p == q - 1 {
        return Some(q - 1);
    }
    if p > 0 {
        if (q - 1) % (2 * p) == 0 && q > 1 {
            let n = (q - 1) / (2 * p);
            return Some(modulo(-2 * n, m));
        }
        if (q + 1) % (2 * p) == 0 {
            let n = (q + 1) / (2 * p);
            return Some(modulo(2 * n, m));
        }
    }
    None
}

/// `s'` for the complementary order `(q - p)/q`, from `s` of `p/q`.
pub fn complement_s(ts: &TalbotS) -> Result<Int> {
    let (p, q, s) = (ts.order.p, ts.order.q, ts.s);
    if p >= q {
        return Err(Error::domain(format!("complement rule needs p < q, got {p}/{q}; reduce p first")));
    }
    Ok(if parity(q) == 1 {
        2 * q - s
    } else if s < q {
        q - s
    } else {
        3 * q - s
    })
}

/// Values of `s` for `q ∈ [2, q_max]`, `p ∈ [1, p_max]`; `None` where
/// `gcd(p, q) ≠ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct STable {
    q_max: Int,
    p_max: Int,
    rows: Vec<Vec<Option<Int>>>,
}

/// One JSON record of the table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SEntry {
    pub p: Int,
    pub q: Int,
    pub s: Int,
}

impl STable {
    pub fn q_max(&self) -> Int {
        self.q_max
    }

    pub fn p_max(&self) -> Int {
        self.p_max
    }

    pub fn get(&self, p: Int, q: Int) -> Option<Int> {
        if !(1..=self.p_max).contains(&p) || !(2..=self.q_max).contains(&q) {
            return None;
        }
        self.rows[(q - 2) as usize][(p - 1) as usize]
    }

    pub fn entries(&self) -> Vec<SEntry> {
        (2..=self.q_max)
            .flat_map(|q| (1..=self.p_max).map(move |p| (p, q)))
            .filter_map(|(p, q)| self.get(p, q).map(|s| SEntry { p, q, s }))
            .collect()
    }

    /// Rows `q`, columns `p`, empty cell where `p` and `q` share a factor.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["q".to_string()];
        header.extend((1..=self.p_max).map(|p| p.to_string()));
        w.write_record(&header)?;
        for (i, row) in self.rows.iter().enumerate() {
            let mut rec = vec![(i as Int + 2).to_string()];
            rec.extend(row.iter().map(|c| c.map(|s| s.to_string()).unwrap_or_default()));
            w.write_record(&rec)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.entries())?)
    }
}

pub fn s_table(q_max: Int, p_max: Int) -> Result<STable> {
    if q_max < 2 {
        return Err(Error::domain(format!("q_max must be at least 2, got {q_max}")));
    }
    if p_max < 1 {
        return Err(Error::domain(format!("p_max must be at least 1, got {p_max}")));
    }
    if q_max > MAX_Q || p_max > Int::MAX / 4 {
        return Err(Error::Overflow("s_table"));
    }
    let rows = (2..=q_max)
        .into_par_iter()
        .map(|q| {
            (1..=p_max).map(|p| TalbotOrder::plus(p, q).ok().map(|o| compute_s(&o).expect("coprime order").s)).collect()
        })
        .collect();
    Ok(STable { q_max, p_max, rows })
}
