//! The value group `Q^n` with its lexicographic order, plus infinity.
//!
//! Coordinate `s` (1-based) belongs to the uniformizer `t_s`. Comparison
//! scans from coordinate `n` down to coordinate 1, so the outermost
//! uniformizer dominates: `(1, 0) < (0, 1)`.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, Q};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LexValue {
    Finite(Vec<Q>),
    Inf,
}

/// Lexicographic comparison of equal-length rational vectors, last
/// coordinate most significant.
pub fn lex_cmp_slices(a: &[Q], b: &[Q]) -> Ordering {
    debug_assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// Same order on integer exponent vectors.
pub fn lex_cmp_ints(a: &[i64], b: &[i64]) -> Ordering {
    debug_assert_eq!(a.len(), b.len());
    a.iter().rev().cmp(b.iter().rev())
}

/// Sign of a vector under the lex order.
pub fn lex_sign(a: &[Q]) -> Ordering {
    for x in a.iter().rev() {
        if x.is_positive() {
            return Ordering::Greater;
        }
        if x.is_negative() {
            return Ordering::Less;
        }
    }
    Ordering::Equal
}

impl LexValue {
    pub fn zero(n: usize) -> Self {
        LexValue::Finite(vec![Q::zero(); n])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        LexValue::Finite(v.iter().map(|&x| Q::from_integer(x.into())).collect())
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, LexValue::Inf)
    }

    pub fn coords(&self) -> Option<&[Q]> {
        match self {
            LexValue::Finite(v) => Some(v),
            LexValue::Inf => None,
        }
    }

    /// Dimension of a finite value; `None` for infinity, which is
    /// compatible with every dimension.
    pub fn dim(&self) -> Option<usize> {
        self.coords().map(<[Q]>::len)
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        match (self.dim(), other.dim()) {
            (Some(a), Some(b)) if a != b => Err(Error::DimensionMismatch {
                expected: a,
                found: b,
            }),
            _ => Ok(()),
        }
    }

    pub fn lex_compare(&self, other: &Self) -> Result<Ordering> {
        self.check_dims(other)?;
        Ok(match (self, other) {
            (LexValue::Inf, LexValue::Inf) => Ordering::Equal,
            (LexValue::Inf, _) => Ordering::Greater,
            (_, LexValue::Inf) => Ordering::Less,
            (LexValue::Finite(a), LexValue::Finite(b)) => lex_cmp_slices(a, b),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(match (self, other) {
            (LexValue::Finite(a), LexValue::Finite(b)) => {
                LexValue::Finite(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => LexValue::Inf,
        })
    }

    pub fn neg(&self) -> Self {
        match self {
            LexValue::Finite(a) => LexValue::Finite(a.iter().map(|x| -x).collect()),
            LexValue::Inf => LexValue::Inf,
        }
    }

    /// Scalar action of `Q` on the value group. Infinity is fixed.
    pub fn scalar_mul(&self, c: &Q) -> Self {
        match self {
            LexValue::Finite(a) => LexValue::Finite(a.iter().map(|x| x * c).collect()),
            LexValue::Inf => LexValue::Inf,
        }
    }
}

impl PartialOrd for LexValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.lex_compare(other).ok()
    }
}

/// Lexicographic minimum of a nonempty list, with every index attaining it.
/// Infinite entries only attain the minimum when every entry is infinite.
pub fn min_lex(values: &[LexValue]) -> Result<(LexValue, Vec<usize>)> {
    let first = values.first().ok_or(Error::Empty("min_lex of an empty list"))?;
    let mut best = first.clone();
    let mut idx = vec![0];
    for (i, v) in values.iter().enumerate().skip(1) {
        match v.lex_compare(&best)? {
            Ordering::Less => {
                best = v.clone();
                idx.clear();
                idx.push(i);
            }
            Ordering::Equal => idx.push(i),
            Ordering::Greater => {}
        }
    }
    Ok((best, idx))
}

impl fmt::Display for LexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LexValue::Inf => write!(f, "inf"),
            LexValue::Finite(v) => {
                let parts: Vec<String> = v.iter().map(fmt_q).collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    }
}
