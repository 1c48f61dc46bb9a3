//! Runtime-selected coefficient rings.
//!
//! Every scalar is carried as a [`BigRational`]; the [`Ring`] tag decides which
//! values are legal and how arithmetic is reduced. Integers are rationals with
//! denominator one, and prime-field elements are integers in `0..p`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Scalar = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Integers,
    Rationals,
    PrimeField(u64),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("unknown ring '{0}' (expected Z, Q or Fp:<prime>)")]
    Unknown(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("operation requires a field, got {0}")]
    NotAField(Ring),
    #[error("value {0} is not an element of {1}")]
    NotAnElement(Scalar, Ring),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Ring, RingError> {
        if is_prime(p) {
            Ok(Ring::PrimeField(p))
        } else {
            Err(RingError::NotPrime(p))
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Ring::Integers)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::PrimeField(p) => *p,
            _ => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.from_int(&BigInt::from(v))
    }

    /// Image of an integer under the unique ring map from Z.
    pub fn from_int(&self, v: &BigInt) -> Scalar {
        match self {
            Ring::PrimeField(p) => Scalar::from_integer(v.mod_floor(&BigInt::from(*p))),
            _ => Scalar::from_integer(v.clone()),
        }
    }

    /// Checks that `v` is a legal element of this ring and returns its reduced form.
    pub fn element(&self, v: &Scalar) -> Result<Scalar, RingError> {
        match self {
            Ring::Rationals => Ok(v.clone()),
            Ring::Integers => {
                if v.is_integer() {
                    Ok(v.clone())
                } else {
                    Err(RingError::NotAnElement(v.clone(), *self))
                }
            }
            Ring::PrimeField(p) => {
                let p_big = BigInt::from(*p);
                if v.denom().is_multiple_of(&p_big) {
                    return Err(RingError::NotAnElement(v.clone(), *self));
                }
                let den = self.inv_mod(&v.denom().mod_floor(&p_big));
                Ok(Scalar::from_integer((v.numer() * den).mod_floor(&p_big)))
            }
        }
    }

    fn reduce(&self, v: Scalar) -> Scalar {
        match self {
            Ring::PrimeField(p) => {
                debug_assert!(v.is_integer());
                Scalar::from_integer(v.to_integer().mod_floor(&BigInt::from(*p)))
            }
            _ => v,
        }
    }

    fn inv_mod(&self, a: &BigInt) -> BigInt {
        let p = BigInt::from(self.characteristic());
        let e = a.extended_gcd(&p);
        e.x.mod_floor(&p)
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.reduce(-a)
    }

    /// Multiplicative inverse; `None` for zero, and for non-units of Z.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            Ring::Rationals => Some(a.recip()),
            Ring::Integers => {
                if a.abs().is_one() {
                    Some(a.clone())
                } else {
                    None
                }
            }
            Ring::PrimeField(_) => Some(Scalar::from_integer(self.inv_mod(&a.to_integer()))),
        }
    }

    /// Scales by `(-1)^k`.
    pub fn signed(&self, a: &Scalar, negative: bool) -> Scalar {
        if negative {
            self.neg(a)
        } else {
            a.clone()
        }
    }

    /// Small prime-field values as machine words, for the fast elimination path.
    pub(crate) fn to_u64(&self, a: &Scalar) -> u64 {
        a.to_integer().to_u64().expect("reduced prime-field element")
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "Z" | "z" => Ok(Ring::Integers),
            "Q" | "q" => Ok(Ring::Rationals),
            other => {
                let digits = other
                    .strip_prefix("Fp:")
                    .or_else(|| other.strip_prefix("F"))
                    .ok_or_else(|| RingError::Unknown(other.to_string()))?;
                let p: u64 = digits
                    .parse()
                    .map_err(|_| RingError::Unknown(other.to_string()))?;
                Ring::prime_field(p)
            }
        }
    }
}

/// Renders a scalar the way reports print it: integers plainly, fractions as `a/b`.
pub fn format_scalar(v: &Scalar) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}
