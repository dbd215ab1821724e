//! Exact arithmetic in the cyclotomic field Q(ζₙ).
//!
//! Elements are dense coefficient vectors of length φ(n) in the power basis
//! 1, ζ, …, ζ^{φ(n)-1}, reduced modulo the cyclotomic polynomial Φₙ. The
//! representation is unique, so equality is structural. Internally the
//! coefficients are stored as integer numerators over one shared positive
//! denominator with overall gcd 1.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::approx;
use crate::error::FieldError;
use crate::rational::format_rational;
use crate::scalar::Scalar;
use crate::Rational;

/// Integer polynomial, coefficients from the constant term upwards.
pub type IntPoly = Vec<i64>;

static CYCLOTOMIC_POLYS: Lazy<Mutex<HashMap<usize, IntPoly>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

static FIELDS: Lazy<Mutex<HashMap<usize, Arc<CyclotomicField>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Φₙ, obtained by dividing xⁿ − 1 by Φ_d for every proper divisor d of n.
///
/// Panics if `n == 0`.
pub fn cyclotomic_poly(n: usize) -> IntPoly {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = CYCLOTOMIC_POLYS.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut quotient = vec![0i64; n + 1];
    quotient[0] = -1;
    quotient[n] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        quotient = divide_monic(&quotient, &cyclotomic_poly(d));
    }
    CYCLOTOMIC_POLYS
        .lock()
        .unwrap()
        .insert(n, quotient.clone());
    quotient
}

/// Exact quotient of `dividend` by a monic `divisor`; the remainder must vanish.
fn divide_monic(dividend: &[i64], divisor: &[i64]) -> IntPoly {
    let dd = divisor.len() - 1;
    debug_assert_eq!(divisor[dd], 1);
    let mut rem = dividend.to_vec();
    let mut quot = vec![0i64; dividend.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (j, &m) in divisor.iter().enumerate() {
                rem[k + j] -= c * m;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// The field Q(ζₙ) together with its defining polynomial.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    order: usize,
    modulus: IntPoly,
}

impl CyclotomicField {
    /// Shared handle to Q(ζₙ). Handles are cached per order.
    pub fn new(order: usize) -> Result<Arc<Self>, FieldError> {
        if order == 0 {
            return Err(FieldError::InvalidOrder);
        }
        let mut fields = FIELDS.lock().unwrap();
        let field = fields.entry(order).or_insert_with(|| {
            Arc::new(CyclotomicField {
                order,
                modulus: cyclotomic_poly(order),
            })
        });
        Ok(Arc::clone(field))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// φ(n), the degree of Φₙ and the length of every coefficient vector.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    /// Reduces an integer polynomial of any length modulo Φₙ, in place.
    fn reduce(&self, poly: &mut Vec<BigInt>) {
        let d = self.degree();
        for k in (d..poly.len()).rev() {
            let c = std::mem::take(&mut poly[k]);
            if c.is_zero() {
                continue;
            }
            for (j, &m) in self.modulus[..d].iter().enumerate() {
                if m != 0 {
                    poly[k - d + j] -= &c * m;
                }
            }
        }
        poly.resize(d, BigInt::zero());
    }
}

/// An element of Q(ζₙ).
#[derive(Clone)]
pub struct CycloElement {
    field: Arc<CyclotomicField>,
    numer: Vec<BigInt>,
    denom: BigInt,
}

impl CycloElement {
    fn from_parts(field: Arc<CyclotomicField>, numer: Vec<BigInt>, denom: BigInt) -> Self {
        let mut e = CycloElement {
            field,
            numer,
            denom,
        };
        e.normalize();
        e
    }

    fn normalize(&mut self) {
        debug_assert_eq!(self.numer.len(), self.field.degree());
        if self.numer.iter().all(Zero::is_zero) {
            self.denom = BigInt::one();
            return;
        }
        let mut g = self.denom.clone();
        for c in &self.numer {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.denom.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in &mut self.numer {
                *c /= &g;
            }
            self.denom /= &g;
        }
    }

    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        CycloElement {
            field: Arc::clone(field),
            numer: vec![BigInt::zero(); field.degree()],
            denom: BigInt::one(),
        }
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_rational(field, &Rational::one())
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, r: &Rational) -> Self {
        let mut numer = vec![BigInt::zero(); field.degree()];
        numer[0] = r.numer().clone();
        Self::from_parts(Arc::clone(field), numer, r.denom().clone())
    }

    /// ζₙᵏ; negative exponents are taken mod n.
    pub fn zeta_pow(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let n = field.order() as i64;
        let e = k.rem_euclid(n) as usize;
        let mut poly = vec![BigInt::zero(); e.max(field.degree()) + 1];
        poly[e] = BigInt::one();
        field.reduce(&mut poly);
        Self::from_parts(Arc::clone(field), poly, BigInt::one())
    }

    /// Builds an element from its power-basis coefficients.
    pub fn from_coeffs(
        field: &Arc<CyclotomicField>,
        coeffs: &[Rational],
    ) -> Result<Self, FieldError> {
        if coeffs.len() != field.degree() {
            return Err(FieldError::CoefficientLength {
                expected: field.degree(),
                got: coeffs.len(),
            });
        }
        let denom = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let numer = coeffs
            .iter()
            .map(|c| c.numer() * (&denom / c.denom()))
            .collect();
        Ok(Self::from_parts(Arc::clone(field), numer, denom))
    }

    /// Polynomial in ζₙ given by coefficients of any length; reduced mod Φₙ.
    pub fn from_poly(field: &Arc<CyclotomicField>, coeffs: &[Rational]) -> Self {
        let n = field.order();
        let mut folded = vec![Rational::zero(); n.max(field.degree())];
        for (k, c) in coeffs.iter().enumerate() {
            folded[k % n] += c;
        }
        let denom = folded
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut numer: Vec<BigInt> = folded
            .iter()
            .map(|c| c.numer() * (&denom / c.denom()))
            .collect();
        field.reduce(&mut numer);
        Self::from_parts(Arc::clone(field), numer, denom)
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.field.order()
    }

    /// Power-basis coefficients, length φ(n).
    pub fn coeffs(&self) -> Vec<Rational> {
        self.numer
            .iter()
            .map(|c| Rational::new(c.clone(), self.denom.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.numer.iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.numer[1..].iter().all(Zero::is_zero) {
            Some(Rational::new(self.numer[0].clone(), self.denom.clone()))
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if self.field.order() == other.field.order() {
            Ok(())
        } else {
            Err(FieldError::OrderMismatch {
                left: self.field.order(),
                right: other.field.order(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.combine(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.combine(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let (mut prod, denom) = self.raw_product(other);
        self.field.reduce(&mut prod);
        Ok(Self::from_parts(Arc::clone(&self.field), prod, denom))
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
        let (numer, denom) = if self.denom == other.denom {
            let numer = self
                .numer
                .iter()
                .zip(&other.numer)
                .map(|(a, b)| if subtract { a - b } else { a + b })
                .collect();
            (numer, self.denom.clone())
        } else {
            let numer = self
                .numer
                .iter()
                .zip(&other.numer)
                .map(|(a, b)| {
                    let l = a * &other.denom;
                    let r = b * &self.denom;
                    if subtract {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect();
            (numer, &self.denom * &other.denom)
        };
        Self::from_parts(Arc::clone(&self.field), numer, denom)
    }

    /// Unreduced polynomial product of the numerators, and the product of
    /// the denominators.
    fn raw_product(&self, other: &Self) -> (Vec<BigInt>, BigInt) {
        let d = self.field.degree();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.numer.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.numer.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        (prod, &self.denom * &other.denom)
    }

    /// Complex conjugation, the automorphism ζₙ ↦ ζₙ^{n−1}.
    pub fn conj(&self) -> Self {
        let n = self.field.order();
        let mut poly = vec![BigInt::zero(); n.max(self.field.degree())];
        for (k, c) in self.numer.iter().enumerate() {
            poly[(n - k) % n] += c;
        }
        self.field.reduce(&mut poly);
        Self::from_parts(Arc::clone(&self.field), poly, self.denom.clone())
    }

    /// Multiplication by a rational constant.
    pub fn scale(&self, r: &Rational) -> Self {
        let numer = self.numer.iter().map(|c| c * r.numer()).collect();
        Self::from_parts(Arc::clone(&self.field), numer, &self.denom * r.denom())
    }

    /// Double-precision evaluation at ζₙ = e^{2πi/n}.
    ///
    /// The absolute error is at most about `4·φ(n)·ε·Σ|cₖ|` with ε the
    /// double-precision unit roundoff.
    pub fn to_complex64(&self) -> Complex64 {
        let n = self.field.order() as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.numer.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = Rational::new(c.clone(), self.denom.clone())
                .to_f64()
                .unwrap_or(f64::NAN);
            let theta = std::f64::consts::TAU * k as f64 / n;
            acc += Complex64::from_polar(coeff, theta);
        }
        acc
    }

    /// Evaluation at ζₙ = e^{2πi/n} carried out in `precision_bits`-bit
    /// fixed point, then rounded to the nearest doubles.
    ///
    /// Precisions below 53 bits are raised to 53. The fixed-point result is
    /// within [`CycloElement::approx_error_bound`] of the exact value.
    pub fn approx(&self, precision_bits: u32) -> Complex64 {
        let (re, im) = self.approx_fixed(precision_bits);
        Complex64::new(re.to_f64(), im.to_f64())
    }

    /// Real and imaginary parts as decimal strings carrying about
    /// `precision_bits · log10(2)` fractional digits.
    pub fn approx_decimal(&self, precision_bits: u32) -> (String, String) {
        let (re, im) = self.approx_fixed(precision_bits);
        let digits = approx::decimal_digits(precision_bits.max(53));
        (re.to_decimal(digits), im.to_decimal(digits))
    }

    fn approx_fixed(&self, precision_bits: u32) -> (approx::Fixed, approx::Fixed) {
        let bits = precision_bits.max(53);
        let coeffs: Vec<(usize, Rational)> = self
            .numer
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, Rational::new(c.clone(), self.denom.clone())))
            .collect();
        approx::eval_root_poly(self.field.order(), &coeffs, bits)
    }

    /// Upper bound on the absolute error of [`CycloElement::approx`] before
    /// the final rounding to double precision: `(Σ|cₖ| + 1)·2^{-bits}`.
    pub fn approx_error_bound(&self, precision_bits: u32) -> f64 {
        let bits = precision_bits.max(53) as i32;
        let sum = crate::rational::abs_sum(self.coeffs().iter())
            .to_f64()
            .unwrap_or(f64::INFINITY);
        (sum + 1.0) * 2f64.powi(-bits)
    }
}

impl PartialEq for CycloElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.order() == other.field.order()
            && self.denom == other.denom
            && self.numer == other.numer
    }
}

impl Eq for CycloElement {}

impl std::hash::Hash for CycloElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.order().hash(state);
        self.numer.hash(state);
        self.denom.hash(state);
    }
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs().into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = format_rational(&c.abs());
            let body = match (k, c.abs().is_one()) {
                (0, _) => mag,
                (1, true) => "z".to_string(),
                (1, false) => format!("{mag}*z"),
                (_, true) => format!("z^{k}"),
                (_, false) => format!("{mag}*z^{k}"),
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            terms.push((sign, body));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (sign, body)) in terms.iter().enumerate() {
            match (i, *sign) {
                (0, "-") => write!(f, "-{body}")?,
                (0, _) => write!(f, "{body}")?,
                (_, s) => write!(f, " {s} {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(z_{})[{}]", self.field.order(), self)
    }
}

fn expect<T>(r: Result<T, FieldError>) -> T {
    r.unwrap_or_else(|e| panic!("{e}"))
}

impl Add for CycloElement {
    type Output = CycloElement;
    fn add(self, rhs: Self) -> Self {
        expect(self.try_add(&rhs))
    }
}

impl Add<&CycloElement> for &CycloElement {
    type Output = CycloElement;
    fn add(self, rhs: &CycloElement) -> CycloElement {
        expect(self.try_add(rhs))
    }
}

impl Sub for CycloElement {
    type Output = CycloElement;
    fn sub(self, rhs: Self) -> Self {
        expect(self.try_sub(&rhs))
    }
}

impl Sub<&CycloElement> for &CycloElement {
    type Output = CycloElement;
    fn sub(self, rhs: &CycloElement) -> CycloElement {
        expect(self.try_sub(rhs))
    }
}

impl Mul for CycloElement {
    type Output = CycloElement;
    fn mul(self, rhs: Self) -> Self {
        expect(self.try_mul(&rhs))
    }
}

impl Mul<&CycloElement> for &CycloElement {
    type Output = CycloElement;
    fn mul(self, rhs: &CycloElement) -> CycloElement {
        expect(self.try_mul(rhs))
    }
}

impl Neg for CycloElement {
    type Output = CycloElement;
    fn neg(mut self) -> Self {
        for c in &mut self.numer {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        -self.clone()
    }
}

impl Scalar for CycloElement {
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }

    fn compatible(&self, other: &Self) -> bool {
        self.field.order() == other.field.order()
    }

    fn zero_like(&self) -> Self {
        CycloElement::zero(&self.field)
    }

    fn one_like(&self) -> Self {
        CycloElement::one(&self.field)
    }

    fn rational_like(&self, r: &Rational) -> Self {
        CycloElement::from_rational(&self.field, r)
    }

    fn approx_f64(&self) -> f64 {
        self.to_complex64().re
    }

    /// One reduction mod Φₙ for the whole expression instead of two.
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        expect(a.check(b).and(a.check(c)).and(a.check(d)));
        let (ad, den_ad) = a.raw_product(d);
        let (bc, den_bc) = b.raw_product(c);
        let mut poly: Vec<BigInt> = if den_ad == den_bc {
            ad.into_iter().zip(bc).map(|(x, y)| x - y).collect()
        } else {
            ad.into_iter()
                .zip(bc)
                .map(|(x, y)| x * &den_bc - y * &den_ad)
                .collect()
        };
        let denom = if den_ad == den_bc {
            den_ad
        } else {
            den_ad * den_bc
        };
        a.field.reduce(&mut poly);
        Self::from_parts(Arc::clone(&a.field), poly, denom)
    }
}
