//! Exact coefficient arithmetic: prime fields `Z_p` and the rationals.
//!
//! A [`Field`] is a lightweight runtime handle; a [`Scalar`] is one element.
//! Elements of `Z_p` are kept in canonical form as the least nonnegative
//! residue, so scalar equality is plain structural equality.  Rational
//! scalars are arbitrary-precision and always in lowest terms with a
//! positive denominator.

use crate::error::Error;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;

/// A coefficient field: `Z_p` for a prime `p`, or the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Prime(u64),
    Rationals,
}

/// One element of a [`Field`].
///
/// `Mod(v)` is the canonical residue `0 <= v < p`; the modulus lives in the
/// field handle, not the scalar.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Scalar {
    Mod(u64),
    Rat(BigRational),
}

/// Deterministic trial division; fine for the desk-scale moduli used here.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    /// The field `Z_p`.  Errors unless `p` is prime.
    pub fn prime(p: u64) -> Result<Field, Error> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NonPrimeModulus(p))
        }
    }

    /// The field of rational numbers.
    pub fn rationals() -> Field {
        Field::Rationals
    }

    /// The characteristic: `p` for `Z_p`, `0` for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            Field::Rationals => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Mod(0),
            Field::Rationals => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Mod(1),
            Field::Rationals => Scalar::Rat(BigRational::one()),
        }
    }

    /// The image of the integer `n` under the canonical ring map `Z -> F`.
    pub fn embed(&self, n: i64) -> Scalar {
        match self {
            Field::Prime(p) => {
                let r = n.rem_euclid(*p as i64) as u64;
                Scalar::Mod(r % p)
            }
            Field::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
        }
    }

    fn expect_mod(&self, a: &Scalar) -> u64 {
        match (self, a) {
            (Field::Prime(p), Scalar::Mod(v)) => {
                debug_assert!(v < p, "non-canonical residue {v} mod {p}");
                *v
            }
            _ => panic!("scalar {a:?} does not belong to {self:?}"),
        }
    }

    fn expect_rat<'a>(&self, a: &'a Scalar) -> &'a BigRational {
        match (self, a) {
            (Field::Rationals, Scalar::Rat(r)) => r,
            _ => panic!("scalar {a:?} does not belong to {self:?}"),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Prime(p) => {
                let (x, y) = (self.expect_mod(a), self.expect_mod(b));
                Scalar::Mod((x + y) % p)
            }
            Field::Rationals => Scalar::Rat(self.expect_rat(a) + self.expect_rat(b)),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Prime(p) => {
                let (x, y) = (self.expect_mod(a), self.expect_mod(b));
                Scalar::Mod((x + p - y) % p)
            }
            Field::Rationals => Scalar::Rat(self.expect_rat(a) - self.expect_rat(b)),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Prime(p) => {
                let (x, y) = (self.expect_mod(a), self.expect_mod(b));
                Scalar::Mod((x as u128 * y as u128 % *p as u128) as u64)
            }
            Field::Rationals => Scalar::Rat(self.expect_rat(a) * self.expect_rat(b)),
        }
    }

    /// The multiplicative inverse; errors on zero.
    pub fn inv(&self, a: &Scalar) -> Result<Scalar, Error> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Field::Prime(p) => {
                // Extended Euclid on (a, p); p prime guarantees gcd 1.
                let (mut r0, mut r1) = (self.expect_mod(a) as i128, *p as i128);
                let (mut s0, mut s1) = (1i128, 0i128);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (s0, s1) = (s1, s0 - q * s1);
                }
                debug_assert_eq!(r0, 1);
                Ok(Scalar::Mod(s0.rem_euclid(*p as i128) as u64))
            }
            Field::Rationals => Ok(Scalar::Rat(self.expect_rat(a).recip())),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, Error> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Scalar, e: u64) -> Scalar {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod(v) => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod(v) => *v == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    /// For rationals: true when the scalar is negative (used for display).
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Mod(_) => false,
            Scalar::Rat(r) => r.is_negative(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod(v) => write!(f, "{v}"),
            Scalar::Rat(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "Z_{p}"),
            Field::Rationals => write!(f, "Q"),
        }
    }
}
