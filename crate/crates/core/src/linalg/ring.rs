use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact scalar. Integers and residues are stored as rationals with unit
/// denominator; the owning [`Ring`] keeps them canonical.
pub type Scalar = BigRational;

/// Coefficient ring of every matrix, complex and representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Integers,
    Rationals,
    PrimeField(u64),
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn int(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Ring> {
        if is_prime(p) {
            Ok(Ring::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Ring::Integers)
    }

    /// Characteristic of the ring (0 for ℤ and ℚ).
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
        Scalar::one()
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.normalize(int(v))
    }

    /// Brings an element that is already known to belong to the ring into
    /// canonical form (residues in `[0, p)`).
    pub fn normalize(&self, x: Scalar) -> Scalar {
        match self {
            Ring::PrimeField(p) => {
                let p = BigInt::from(*p);
                if x.is_integer() {
                    BigRational::from_integer(x.to_integer().mod_floor(&p))
                } else {
                    let num = x.numer().mod_floor(&p);
                    let den = x.denom().mod_floor(&p);
                    BigRational::from_integer((num * mod_inverse(&den, &p)).mod_floor(&p))
                }
            }
            _ => x,
        }
    }

    /// Converts an arbitrary rational into the ring, failing when it has no
    /// image (a fraction over ℤ, or a denominator divisible by `p`).
    pub fn coerce(&self, x: Scalar) -> Result<Scalar> {
        match self {
            Ring::Integers if !x.is_integer() => Err(Error::NotInRing {
                value: x.to_string(),
                ring: *self,
            }),
            Ring::PrimeField(p) if (x.denom() % BigInt::from(*p)).is_zero() => {
                Err(Error::NotInRing {
                    value: x.to_string(),
                    ring: *self,
                })
            }
            _ => Ok(self.normalize(x)),
        }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        match self {
            Ring::Integers => x.is_integer(),
            Ring::Rationals => true,
            Ring::PrimeField(p) => {
                x.is_integer() && !x.is_negative() && x.to_integer() < BigInt::from(*p)
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.normalize(-a)
    }

    pub fn is_unit(&self, a: &Scalar) -> bool {
        match self {
            Ring::Integers => a.abs().is_one(),
            _ => !a.is_zero(),
        }
    }

    /// Inverse of a unit. Panics on non-units.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(self.is_unit(a), "{a} is not a unit in {self}");
        match self {
            Ring::PrimeField(p) => {
                let p = BigInt::from(*p);
                BigRational::from_integer(mod_inverse(&a.to_integer(), &p))
            }
            _ => a.recip(),
        }
    }

    /// Exact quotient `a / b`, if `b` divides `a` in the ring.
    pub fn div_exact(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        if b.is_zero() {
            return if a.is_zero() { Some(Scalar::zero()) } else { None };
        }
        match self {
            Ring::Integers => {
                let (q, r) = a.to_integer().div_rem(&b.to_integer());
                r.is_zero().then(|| BigRational::from_integer(q))
            }
            _ => Some(self.mul(a, &self.inv(b))),
        }
    }

    /// Euclidean division `a = q b + r` with `r` smaller than `b`.
    pub fn div_rem(&self, a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
        match self {
            Ring::Integers => {
                let (q, r) = a.to_integer().div_mod_floor(&b.to_integer());
                (BigRational::from_integer(q), BigRational::from_integer(r))
            }
            _ => (self.mul(a, &self.inv(b)), Scalar::zero()),
        }
    }

    /// Euclidean size used for pivot selection.
    pub(crate) fn size(&self, a: &Scalar) -> BigInt {
        match self {
            Ring::Integers => a.to_integer().abs(),
            _ => {
                if a.is_zero() {
                    BigInt::zero()
                } else {
                    BigInt::one()
                }
            }
        }
    }

    /// Canonical associate: |a| over ℤ, 1 for nonzero field elements.
    pub fn associate(&self, a: &Scalar) -> Scalar {
        match self {
            Ring::Integers => a.abs(),
            _ if a.is_zero() => Scalar::zero(),
            _ => Scalar::one(),
        }
    }

    /// Field used for rank and determinant computations (ℚ for ℤ).
    pub(crate) fn fraction_field(&self) -> Ring {
        match self {
            Ring::Integers => Ring::Rationals,
            r => *r,
        }
    }

    pub fn parse_tag(s: &str) -> Result<Ring> {
        match s {
            "Z" | "ZZ" | "Integers" => Ok(Ring::Integers),
            "Q" | "QQ" | "Rationals" => Ok(Ring::Rationals),
            _ => {
                let digits = s
                    .strip_prefix("GF")
                    .or_else(|| s.strip_prefix('F'))
                    .ok_or_else(|| Error::UnknownRing(s.to_string()))?;
                let p: u64 = digits
                    .trim_start_matches('_')
                    .parse()
                    .map_err(|_| Error::UnknownRing(s.to_string()))?;
                Ring::prime_field(p)
            }
        }
    }

    pub fn tag(&self) -> String {
        match self {
            Ring::Integers => "Z".into(),
            Ring::Rationals => "Q".into(),
            Ring::PrimeField(p) => format!("F{p}"),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let g = a.mod_floor(p).extended_gcd(p);
    assert!(g.gcd.is_one(), "{a} is not invertible mod {p}");
    g.x.mod_floor(p)
}

/// Renders a scalar the way input files spell it.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
