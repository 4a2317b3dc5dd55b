//! Coefficient fields and their scalars.
//!
//! Three carriers are supported: arbitrary-precision rationals, prime
//! fields GF(p), and complex doubles with a relative equality tolerance.
//! The two exact kinds are the verification substrate; the float kind
//! exists to exercise tolerance-based comparison.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// Default relative tolerance for the complex field.
pub const DEFAULT_EPS_REL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(f64),
}

/// The coefficient field of a matrix and its equality policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldSpec {
    /// Exact rationals with arbitrary-precision integer parts.
    ExactRational,
    /// GF(p) for a prime modulus p, residues stored in `[0, p)`.
    PrimeField(u64),
    /// Complex doubles; equality is relative to the given tolerance.
    ComplexFloat(f64),
}

impl FieldSpec {
    pub fn rational() -> Self {
        FieldSpec::ExactRational
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn complex(eps_rel: f64) -> Result<Self, FieldError> {
        if eps_rel > 0.0 {
            Ok(FieldSpec::ComplexFloat(eps_rel))
        } else {
            Err(FieldError::NonPositiveTolerance(eps_rel))
        }
    }

    pub fn complex_default() -> Self {
        FieldSpec::ComplexFloat(DEFAULT_EPS_REL)
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, FieldSpec::ComplexFloat(_))
    }

    /// Relative tolerance; zero for the exact kinds.
    pub fn eps_rel(&self) -> f64 {
        match self {
            FieldSpec::ComplexFloat(eps) => *eps,
            _ => 0.0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::ExactRational => Scalar::Rational(BigRational::zero()),
            FieldSpec::PrimeField(_) => Scalar::Prime(0),
            FieldSpec::ComplexFloat(_) => Scalar::Complex(Complex64::ZERO),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::ExactRational => Scalar::Rational(BigRational::one()),
            FieldSpec::PrimeField(_) => Scalar::Prime(1 % self.modulus()),
            FieldSpec::ComplexFloat(_) => Scalar::Complex(Complex64::ONE),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::ExactRational => Scalar::Rational(BigRational::from_integer(v.into())),
            FieldSpec::PrimeField(p) => {
                let m = v.rem_euclid(*p as i64);
                Scalar::Prime(m as u64)
            }
            FieldSpec::ComplexFloat(_) => Scalar::Complex(Complex64::new(v as f64, 0.0)),
        }
    }

    pub fn add(&self, x: &Scalar, y: &Scalar) -> Scalar {
        match (self, x, y) {
            (FieldSpec::ExactRational, Scalar::Rational(a), Scalar::Rational(b)) => {
                Scalar::Rational(a + b)
            }
            (FieldSpec::PrimeField(p), Scalar::Prime(a), Scalar::Prime(b)) => {
                Scalar::Prime(((*a as u128 + *b as u128) % *p as u128) as u64)
            }
            (FieldSpec::ComplexFloat(_), Scalar::Complex(a), Scalar::Complex(b)) => {
                Scalar::Complex(a + b)
            }
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    pub fn sub(&self, x: &Scalar, y: &Scalar) -> Scalar {
        self.add(x, &self.neg(y))
    }

    pub fn neg(&self, x: &Scalar) -> Scalar {
        match (self, x) {
            (FieldSpec::ExactRational, Scalar::Rational(a)) => Scalar::Rational(-a),
            (FieldSpec::PrimeField(p), Scalar::Prime(a)) => {
                Scalar::Prime(if *a == 0 { 0 } else { p - a })
            }
            (FieldSpec::ComplexFloat(_), Scalar::Complex(a)) => Scalar::Complex(-a),
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    pub fn mul(&self, x: &Scalar, y: &Scalar) -> Scalar {
        match (self, x, y) {
            (FieldSpec::ExactRational, Scalar::Rational(a), Scalar::Rational(b)) => {
                Scalar::Rational(a * b)
            }
            (FieldSpec::PrimeField(p), Scalar::Prime(a), Scalar::Prime(b)) => {
                Scalar::Prime(((*a as u128 * *b as u128) % *p as u128) as u64)
            }
            (FieldSpec::ComplexFloat(_), Scalar::Complex(a), Scalar::Complex(b)) => {
                Scalar::Complex(a * b)
            }
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    /// Multiplicative inverse. Panics on zero; callers guard pivots.
    pub fn inv(&self, x: &Scalar) -> Scalar {
        match (self, x) {
            (FieldSpec::ExactRational, Scalar::Rational(a)) => {
                assert!(!a.is_zero(), "inverse of zero");
                Scalar::Rational(a.recip())
            }
            (FieldSpec::PrimeField(p), Scalar::Prime(a)) => {
                assert!(*a != 0, "inverse of zero");
                Scalar::Prime(mod_inverse(*a, *p))
            }
            (FieldSpec::ComplexFloat(_), Scalar::Complex(a)) => {
                Scalar::Complex(Complex64::ONE / a)
            }
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    pub fn div(&self, x: &Scalar, y: &Scalar) -> Scalar {
        self.mul(x, &self.inv(y))
    }

    fn modulus(&self) -> u64 {
        match self {
            FieldSpec::PrimeField(p) => *p,
            _ => panic!("modulus of a non-prime field"),
        }
    }
}

/// A single field element. The variant must match the owning `FieldSpec`.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    /// Reduced fraction with positive denominator (kept canonical by `BigRational`).
    Rational(BigRational),
    /// Canonical residue in `[0, p)`.
    Prime(u64),
    Complex(Complex64),
}

impl Scalar {
    pub fn rational(num: i64, den: i64) -> Self {
        Scalar::Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        Scalar::Rational(BigRational::new(num, den))
    }

    pub fn complex(re: f64, im: f64) -> Self {
        Scalar::Complex(Complex64::new(re, im))
    }

    /// Structural zero test; tolerances are applied by matrix routines, not here.
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime(r) => *r == 0,
            Scalar::Complex(z) => z.is_zero(),
        }
    }

    /// Squared magnitude as a double, for Frobenius norms and pivot selection.
    /// GF(p) residues are measured as their integer representatives, which is
    /// only meaningful as a zero / nonzero indicator.
    pub fn abs_sq(&self) -> f64 {
        match self {
            Scalar::Rational(r) => {
                let v = r.to_f64().unwrap_or_else(|| {
                    // fall back for fractions whose parts overflow f64
                    let n = r.numer().to_f64().unwrap_or(f64::MAX);
                    let d = r.denom().to_f64().unwrap_or(f64::MAX);
                    n / d
                });
                v * v
            }
            Scalar::Prime(r) => (*r as f64) * (*r as f64),
            Scalar::Complex(z) => z.norm_sqr(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Prime(r) => *r as f64,
            Scalar::Complex(z) => z.re,
        }
    }
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime(r) => write!(f, "{r}"),
            Scalar::Complex(z) => write!(f, "{}+{}i", z.re, z.im),
        }
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // extended Euclid over i128; p prime, a nonzero residue
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert!(r0 == 1, "element not invertible mod {p}");
    t0.rem_euclid(p as i128) as u64
}

/// Deterministic Miller-Rabin, valid for all u64 inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(5));
        assert!(is_prime(7));
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(0));
        assert!(!is_prime(1));
        assert!(!is_prime(4));
        assert!(!is_prime(561)); // Carmichael
        assert!(!is_prime(6));
    }

    #[test]
    fn prime_field_rejects_composite_modulus() {
        assert_eq!(FieldSpec::prime(6), Err(FieldError::NotPrime(6)));
        assert!(FieldSpec::prime(5).is_ok());
    }

    #[test]
    fn complex_rejects_bad_tolerance() {
        assert!(FieldSpec::complex(0.0).is_err());
        assert!(FieldSpec::complex(-1.0).is_err());
        assert!(FieldSpec::complex(1e-9).is_ok());
    }

    #[test]
    fn gf5_arithmetic_wraps() {
        let f = FieldSpec::prime(5).unwrap();
        let three = f.from_i64(3);
        let four = f.from_i64(4);
        assert_eq!(f.add(&three, &four), Scalar::Prime(2));
        assert_eq!(f.mul(&three, &four), Scalar::Prime(2));
        assert_eq!(f.neg(&three), Scalar::Prime(2));
        assert_eq!(f.from_i64(-3), Scalar::Prime(2));
        // 3 * 2 = 6 = 1 mod 5
        assert_eq!(f.inv(&three), Scalar::Prime(2));
    }

    #[test]
    fn rational_stays_reduced() {
        let f = FieldSpec::rational();
        let half = Scalar::rational(2, 4);
        match &half {
            Scalar::Rational(r) => {
                assert_eq!(r.numer(), &BigInt::from(1));
                assert_eq!(r.denom(), &BigInt::from(2));
            }
            _ => unreachable!(),
        }
        let sum = f.add(&half, &Scalar::rational(1, 2));
        assert_eq!(sum, f.one());
    }

    #[test]
    fn mod_inverse_small_field() {
        for p in [2u64, 3, 5, 7, 11] {
            for a in 1..p {
                assert_eq!(mul_mod(a, mod_inverse(a, p), p), 1);
            }
        }
    }
}
