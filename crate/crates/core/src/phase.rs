//! Phases held as exact rational multiples of π.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::Int;

/// The angle `π * num / den`, kept canonical: `den > 0`, the fraction is
/// reduced and `num` lies in `[0, 2*den)`. Two phases are equal exactly
/// when their canonical forms are equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPhase")]
pub struct ExactPhase {
    num: Int,
    den: Int,
}

#[derive(Deserialize)]
struct RawPhase {
    num: Int,
    den: Int,
}

impl TryFrom<RawPhase> for ExactPhase {
    type Error = Error;
    fn try_from(raw: RawPhase) -> Result<Self> {
        ExactPhase::new(raw.num, raw.den)
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl ExactPhase {
    pub const ZERO: ExactPhase = ExactPhase { num: 0, den: 1 };
    pub const PI: ExactPhase = ExactPhase { num: 1, den: 1 };

    /// `π * num / den`, canonicalized.
    pub fn new(num: Int, den: Int) -> Result<Self> {
        if den == 0 {
            return Err(Error::domain("phase denominator must be non-zero"));
        }
        Self::canonical(num as i128, den as i128)
    }

    fn canonical(num: i128, den: i128) -> Result<Self> {
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let num = num.rem_euclid(2 * den);
        let g = gcd_u128(num.unsigned_abs(), den.unsigned_abs()).max(1) as i128;
        let (num, den) = (num / g, den / g);
        Ok(ExactPhase {
            num: Int::try_from(num).map_err(|_| Error::Overflow("phase"))?,
            den: Int::try_from(den).map_err(|_| Error::Overflow("phase"))?,
        })
    }

    /// The phase `π * k * num / den` where only `k * num mod 2*den` matters;
    /// used for quadratic exponents such as `π s n² / q`.
    pub fn from_product(k: Int, num: Int, den: Int) -> Result<Self> {
        if den == 0 {
            return Err(Error::domain("phase denominator must be non-zero"));
        }
        let modulus = 2 * (den as i128).abs();
        let prod = ((k as i128).rem_euclid(modulus) * (num as i128).rem_euclid(modulus)) % modulus;
        Self::canonical(prod, den as i128)
    }

    pub fn num(&self) -> Int {
        self.num
    }

    pub fn den(&self) -> Int {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        let (n1, d1) = (self.num as i128, self.den as i128);
        let (n2, d2) = (rhs.num as i128, rhs.den as i128);
        let g = gcd_u128(d1 as u128, d2 as u128) as i128;
        let lcm = d1 / g * d2;
        Self::canonical(n1 * (lcm / d1) + n2 * (lcm / d2), lcm)
    }

    /// Angle in radians, in `[0, 2π)`.
    pub fn radians(&self) -> f64 {
        std::f64::consts::PI * (self.num as f64) / (self.den as f64)
    }

    /// `exp(j * angle)`.
    pub fn to_unit(&self) -> Complex64 {
        // Signed representative in (-π, π] keeps the argument small.
        let signed = if self.num > self.den { self.num - 2 * self.den } else { self.num };
        let theta = std::f64::consts::PI * (signed as f64) / (self.den as f64);
        Complex64::new(theta.cos(), theta.sin())
    }
}

impl Add for ExactPhase {
    type Output = ExactPhase;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("phase denominator overflow")
    }
}

impl Neg for ExactPhase {
    type Output = ExactPhase;
    fn neg(self) -> Self {
        if self.num == 0 {
            self
        } else {
            ExactPhase { num: 2 * self.den - self.num, den: self.den }
        }
    }
}

impl Sub for ExactPhase {
    type Output = ExactPhase;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl fmt::Display for ExactPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.num, self.den) {
            (0, _) => write!(f, "0"),
            (1, 1) => write!(f, "π"),
            (n, 1) => write!(f, "{n}π"),
            (1, d) => write!(f, "π/{d}"),
            (n, d) => write!(f, "{n}π/{d}"),
        }
    }
}
