//! Coefficient fields: exact rationals and word-sized prime fields.

use std::fmt;
use std::hash::Hash;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Default modulus for the prime-field backend (2^31 - 1).
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Smallest modulus accepted by [`PrimeField::new`].
pub const MIN_PRIME: u64 = 1 << 20;

/// Runtime description of a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    pub fn parse(src: &str) -> Option<FieldSpec> {
        let src = src.trim();
        match src {
            "q" | "Q" | "qq" | "QQ" => Some(FieldSpec::Rational),
            "fp" => Some(FieldSpec::Prime(DEFAULT_PRIME)),
            _ => {
                let rest = src.strip_prefix("fp:")?;
                rest.trim().parse::<u64>().ok().map(FieldSpec::Prime)
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

/// A field-independent coefficient value, used at API boundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficient {
    Rational(BigRational),
    PrimeField { value: u64, modulus: u64 },
}

/// Arithmetic of a coefficient field. Elements carry no context; the field
/// value (stored in the polynomial ring) supplies it.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// `a - c * b`, the reduction kernel.
    fn sub_mul(&self, a: &Self::Elem, c: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(c, b))
    }

    fn from_bigint(&self, n: &BigInt) -> Self::Elem;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    /// `num / den`; `None` when the denominator vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Self::Elem> {
        let d = self.from_bigint(den);
        let d = self.inv(&d)?;
        Some(self.mul(&self.from_bigint(num), &d))
    }

    /// Sign and magnitude text of an element, e.g. `(true, "3/4")` for -3/4.
    /// Prime-field elements use the symmetric representative.
    fn signed_repr(&self, a: &Self::Elem) -> (bool, String);

    /// Rescale a coefficient vector (leading entry first) to the canonical
    /// display form. The default makes it monic.
    fn display_normalize(&self, coeffs: &mut [Self::Elem]) {
        if let Some(lead) = coeffs.first() {
            if let Some(s) = self.inv(lead) {
                for c in coeffs.iter_mut() {
                    *c = self.mul(c, &s);
                }
            }
        }
    }

    /// Random nonzero element used as generic data (ML degree sampling).
    fn sample_data<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Random element for property tests; may be zero.
    fn sample_small<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        self.from_i64(rng.gen_range(-9..=9))
    }

    fn to_coefficient(&self, a: &Self::Elem) -> Coefficient;
}

/// The field of rational numbers with arbitrary-precision components.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<BigRational> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }
    fn signed_repr(&self, a: &BigRational) -> (bool, String) {
        let neg = a.is_negative();
        let abs = a.abs();
        let text = if abs.denom().is_one() {
            abs.numer().to_string()
        } else {
            format!("{}/{}", abs.numer(), abs.denom())
        };
        (neg, text)
    }

    /// Integer-cleared, content one, positive leading coefficient.
    fn display_normalize(&self, coeffs: &mut [BigRational]) {
        if coeffs.is_empty() {
            return;
        }
        let mut den = BigInt::one();
        for c in coeffs.iter() {
            den = den.lcm(c.denom());
        }
        let mut content = BigInt::zero();
        let ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        for n in &ints {
            content = content.gcd(n);
        }
        if content.is_zero() {
            return;
        }
        if ints[0].sign() == Sign::Minus {
            content = -content;
        }
        for (c, n) in coeffs.iter_mut().zip(ints) {
            *c = BigRational::from_integer(n / &content);
        }
    }

    fn sample_data<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        BigRational::from_integer(BigInt::from(rng.gen_range(1..=10_000i64)))
    }

    fn to_coefficient(&self, a: &BigRational) -> Coefficient {
        Coefficient::Rational(a.clone())
    }
}

/// Integers modulo a prime `p` with `2^20 < p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl PrimeField {
    /// Fails unless `p` is a prime in `(2^20, 2^32)`.
    pub fn new(p: u64) -> Result<Self, String> {
        if p <= MIN_PRIME || p >= (1 << 32) {
            return Err(format!("modulus {p} outside (2^20, 2^32)"));
        }
        if !is_prime(p) {
            return Err(format!("modulus {p} is not prime"));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduce an exact rational into the field; `None` if the denominator
    /// is divisible by the modulus.
    pub fn reduce_rational(&self, r: &BigRational) -> Option<u64> {
        self.from_ratio(r.numer(), r.denom())
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if (*a).is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    #[inline]
    fn sub_mul(&self, a: &u64, c: &u64, b: &u64) -> u64 {
        let prod = c * b % self.p;
        self.sub(a, &prod)
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn signed_repr(&self, a: &u64) -> (bool, String) {
        if *a > self.p / 2 {
            (true, (self.p - a).to_string())
        } else {
            (false, a.to_string())
        }
    }
    fn sample_data<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(1..self.p)
    }
    fn to_coefficient(&self, a: &u64) -> Coefficient {
        Coefficient::PrimeField {
            value: *a,
            modulus: self.p,
        }
    }
}
