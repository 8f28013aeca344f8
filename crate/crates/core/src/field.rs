//! Base fields `K0`: the rationals or a prime field `GF(p)`.
//!
//! Elements of both are carried as [`Q`]; prime-field elements are kept
//! reduced to an integer in `0..p`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Q;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseField {
    Rationals,
    Prime(u64),
}

impl BaseField {
    /// Maps a rational into the field. Fails when the denominator vanishes mod p.
    pub fn from_q(&self, x: &Q) -> Result<Q> {
        match self {
            BaseField::Rationals => Ok(x.clone()),
            BaseField::Prime(p) => {
                let p = BigInt::from(*p);
                let num = x.numer().mod_floor(&p);
                let den = x.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(Error::NotInvertible(format!("{} mod {}", x, p)));
                }
                let inv = mod_inverse(&den, &p);
                Ok(Q::from_integer((num * inv).mod_floor(&p)))
            }
        }
    }

    fn reduce(&self, x: Q) -> Q {
        match self {
            BaseField::Rationals => x,
            BaseField::Prime(p) => {
                debug_assert!(x.is_integer());
                Q::from_integer(x.to_integer().mod_floor(&BigInt::from(*p)))
            }
        }
    }

    pub fn add(&self, a: &Q, b: &Q) -> Q {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &Q, b: &Q) -> Q {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &Q, b: &Q) -> Q {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &Q) -> Q {
        self.reduce(-a)
    }

    pub fn inv(&self, a: &Q) -> Result<Q> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            BaseField::Rationals => Ok(a.recip()),
            BaseField::Prime(p) => {
                let p = BigInt::from(*p);
                Ok(Q::from_integer(mod_inverse(&a.to_integer(), &p)))
            }
        }
    }

    pub fn is_one(&self, a: &Q) -> bool {
        a.is_one()
    }

    /// `-1` in this field.
    pub fn minus_one(&self) -> Q {
        self.neg(&Q::one())
    }

    /// Whether `a` should render with a leading minus sign. Prime-field
    /// elements above `p/2` are shown as negatives.
    pub fn signed_repr(&self, a: &Q) -> Q {
        match self {
            BaseField::Rationals => a.clone(),
            BaseField::Prime(p) => {
                let p = BigInt::from(*p);
                let v = a.to_integer();
                if &v * 2 > p {
                    Q::from_integer(v - p)
                } else {
                    Q::from_integer(v)
                }
            }
        }
    }

    pub fn is_negative_repr(&self, a: &Q) -> bool {
        self.signed_repr(a).is_negative()
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let g = a.extended_gcd(p);
    debug_assert!(g.gcd.is_one());
    g.x.mod_floor(p)
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => write!(f, "QQ"),
            BaseField::Prime(p) => write!(f, "GF({p})"),
        }
    }
}
