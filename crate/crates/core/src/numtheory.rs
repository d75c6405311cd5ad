//! Exact integer primitives: gcd, Bézout coefficients, modular inverse,
//! Jacobi symbol and parity.
//!
//! Values are `i64`; products and intermediate remainders are carried in
//! `i128` and narrowed with a checked conversion, so every function either
//! returns the exact answer or [`Error::Overflow`].

use crate::error::{Error, Result};

/// Signed integer used throughout the crate.
pub type Int = i64;

fn narrow(v: i128, what: &'static str) -> Result<Int> {
    Int::try_from(v).map_err(|_| Error::Overflow(what))
}

/// Non-negative greatest common divisor. Fails when both inputs are zero.
pub fn gcd(a: Int, b: Int) -> Result<Int> {
    if a == 0 && b == 0 {
        return Err(Error::domain("gcd(0, 0) is undefined"));
    }
    let (mut x, mut y) = (a.unsigned_abs(), b.unsigned_abs());
    while y != 0 {
        (x, y) = (y, x % y);
    }
    Int::try_from(x).map_err(|_| Error::Overflow("gcd"))
}

/// `true` when `gcd(a, b) == 1`.
pub fn coprime(a: Int, b: Int) -> bool {
    matches!(gcd(a, b), Ok(1))
}

/// Extended Euclid: returns `(d, x, y)` with `a*x + b*y = d = gcd(a, b)`.
pub fn bezout(a: Int, b: Int) -> Result<(Int, Int, Int)> {
    if a == 0 && b == 0 {
        return Err(Error::domain("bezout(0, 0) is undefined"));
    }
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_x, mut x) = (1i128, 0i128);
    let (mut old_y, mut y) = (0i128, 1i128);
    while r != 0 {
        let quot = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - quot * r);
        (old_x, x) = (x, old_x - quot * x);
        (old_y, y) = (y, old_y - quot * y);
    }
    if old_r < 0 {
        (old_r, old_x, old_y) = (-old_r, -old_x, -old_y);
    }
    Ok((narrow(old_r, "bezout")?, narrow(old_x, "bezout")?, narrow(old_y, "bezout")?))
}

/// Least non-negative residue of `a` modulo `m` (`m > 0`).
pub fn modulo(a: Int, m: Int) -> Int {
    debug_assert!(m > 0);
    a.rem_euclid(m)
}

/// `a * b mod m` in `[0, m)`, exact for any `i64` inputs.
pub fn mul_mod(a: Int, b: Int, m: Int) -> Int {
    debug_assert!(m > 0);
    ((a as i128 * b as i128).rem_euclid(m as i128)) as Int
}

/// The modular inverse `[1/a]_b`: the unique `x` in `[1, b-1]` with
/// `a*x ≡ 1 (mod b)`.
pub fn mod_inverse(a: Int, b: Int) -> Result<Int> {
    if b < 2 {
        return Err(Error::domain(format!("modulus {b} must be at least 2")));
    }
    let (d, x, _) = bezout(modulo(a, b), b)?;
    if d != 1 {
        return Err(Error::domain(format!("{a} is not invertible modulo {b} (gcd {d})")));
    }
    Ok(modulo(x, b))
}

/// Jacobi symbol `(a/b)` for odd positive `b`.
///
/// Returns 0 when `gcd(a, b) != 1`. Uses the binary reciprocity recursion,
/// so no factorization of `b` is needed.
pub fn jacobi(a: Int, b: Int) -> Result<i8> {
    if b <= 0 || b % 2 == 0 {
        return Err(Error::domain(format!("Jacobi denominator {b} must be odd and positive")));
    }
    let mut n = b as u64;
    let mut a = modulo(a, b) as u64;
    let mut sign = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && matches!(n % 8, 3 | 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        (a, n) = (n % a, a);
    }
    Ok(if n == 1 { sign } else { 0 })
}

/// Parity indicator: 0 for even, 1 for odd (negatives included).
pub fn parity(x: Int) -> Int {
    x & 1
}
