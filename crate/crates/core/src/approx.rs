//! Binary fixed-point evaluation of polynomials in a root of unity.
//!
//! Used for human-readable coordinates at a chosen precision. Nothing in
//! here feeds back into an exact predicate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

const GUARD_BITS: u32 = 32;

/// A real number `value · 2^{-bits}`.
#[derive(Debug, Clone)]
pub(crate) struct Fixed {
    value: BigInt,
    bits: u32,
}

impl Fixed {
    pub(crate) fn to_f64(&self) -> f64 {
        Rational::new(self.value.clone(), BigInt::one() << self.bits)
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    /// Decimal expansion rounded to `digits` fractional digits.
    pub(crate) fn to_decimal(&self, digits: usize) -> String {
        let half = BigInt::one() << (self.bits - 1);
        let scaled = (self.value.abs() * BigInt::from(10).pow(digits as u32) + half) >> self.bits;
        let s = scaled.to_string();
        let s = if s.len() <= digits {
            format!("{}{}", "0".repeat(digits + 1 - s.len()), s)
        } else {
            s
        };
        let (int, frac) = s.split_at(s.len() - digits);
        let sign = if self.value.is_negative() { "-" } else { "" };
        format!("{sign}{int}.{frac}")
    }
}

pub(crate) fn decimal_digits(bits: u32) -> usize {
    (bits as f64 * std::f64::consts::LOG10_2).floor() as usize
}

/// atan(1/x) scaled by 2^w.
fn atan_inv(x: u64, w: u32) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = (BigInt::one() << w) / &x;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

/// π scaled by 2^w (Machin's formula).
fn pi(w: u32) -> BigInt {
    atan_inv(5, w) * 16 - atan_inv(239, w) * 4
}

/// (cos θ, sin θ) scaled by 2^w, for θ = 2πk/n reduced into (−π, π].
fn cos_sin(k: usize, n: usize, w: u32) -> (BigInt, BigInt) {
    let k = (k % n) as i64;
    let n = n as i64;
    let k = if 2 * k > n { k - n } else { k };
    let theta = (pi(w) * BigInt::from(2 * k)).div_floor(&BigInt::from(n));
    let theta2 = (&theta * &theta) >> w;

    let one = BigInt::one() << w;
    let mut cos = one.clone();
    let mut sin = theta.clone();
    let mut c_term = one;
    let mut s_term = theta;
    let mut i = 1u64;
    loop {
        c_term = -((&c_term * &theta2) >> w) / BigInt::from((2 * i - 1) * (2 * i));
        s_term = -((&s_term * &theta2) >> w) / BigInt::from((2 * i) * (2 * i + 1));
        if c_term.is_zero() && s_term.is_zero() {
            break;
        }
        cos += &c_term;
        sin += &s_term;
        i += 1;
    }
    (cos, sin)
}

/// Σ cₖ·e^{2πik/n} at `bits` bits of fixed-point precision.
pub(crate) fn eval_root_poly(n: usize, coeffs: &[(usize, Rational)], bits: u32) -> (Fixed, Fixed) {
    let w = bits + GUARD_BITS;
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    for (k, c) in coeffs {
        let (cos, sin) = cos_sin(*k, n, w);
        re += (c.numer() * cos).div_floor(c.denom());
        im += (c.numer() * sin).div_floor(c.denom());
    }
    let round = |v: BigInt| Fixed {
        value: (v + (BigInt::one() << (GUARD_BITS - 1))) >> GUARD_BITS,
        bits,
    };
    (round(re), round(im))
}
