//! The coordinate-domain abstraction shared by every geometric routine.
//!
//! A [`Scalar`] is an exact commutative ring element with a decidable zero
//! test. Division is not part of the contract: every predicate in this crate
//! reduces to sign-free cross-product zero tests.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

/// Exact scalar domain for point and line coordinates.
///
/// The arithmetic operators may panic when two values from incompatible
/// domains are combined (cyclotomic elements of different order). Callers
/// that accept external input check [`Scalar::compatible`] first.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Exact zero test, no tolerance.
    fn is_exact_zero(&self) -> bool;

    /// Whether `self` and `other` live in the same domain and may be combined.
    fn compatible(&self, other: &Self) -> bool;

    /// The additive identity of the domain `self` lives in.
    fn zero_like(&self) -> Self;

    /// The multiplicative identity of the domain `self` lives in.
    fn one_like(&self) -> Self;

    /// Embeds a rational constant into the domain of `self`.
    fn rational_like(&self, r: &Rational) -> Self;

    /// Real part of a double-precision approximation. Display and
    /// cross-checks only.
    fn approx_f64(&self) -> f64;

    /// `a*d - b*c` for borrowed operands.
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        a.clone() * d.clone() - b.clone() * c.clone()
    }

    /// Rescales a direction vector into a canonical representative when the
    /// domain admits one. The default leaves it untouched.
    fn normalize_direction(dx: Self, dy: Self) -> (Self, Self) {
        (dx, dy)
    }
}

impl Scalar for Rational {
    fn is_exact_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn compatible(&self, _other: &Self) -> bool {
        true
    }

    fn zero_like(&self) -> Self {
        Rational::zero()
    }

    fn one_like(&self) -> Self {
        Rational::one()
    }

    fn rational_like(&self, r: &Rational) -> Self {
        r.clone()
    }

    fn approx_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn cross(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        a * d - b * c
    }

    /// Integer coordinates with gcd 1, `dx > 0` or `dx = 0, dy = 1`.
    fn normalize_direction(dx: Self, dy: Self) -> (Self, Self) {
        let scale = dx.denom().lcm(dy.denom());
        let mut nx = dx.numer() * (&scale / dx.denom());
        let mut ny = dy.numer() * (&scale / dy.denom());
        let g = nx.gcd(&ny);
        if g.is_zero() {
            return (dx, dy);
        }
        nx /= &g;
        ny /= &g;
        if nx.is_negative() || (nx.is_zero() && ny.is_negative()) {
            nx = -nx;
            ny = -ny;
        }
        (Rational::from_integer(nx), Rational::from_integer(ny))
    }
}
