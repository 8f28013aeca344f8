//! Elements of an n-dimensional local field `K0((t1))...((tn))`.
//!
//! An element is a finitely supported Laurent polynomial in the
//! uniformizers. Fractional exponents are realised on a ramified cover: the
//! tower records, per coordinate, an index `N_s` with `t_s = u_s^{N_s}`, and
//! exponents are stored as integers in the `u_s`. Valuations are always
//! reported in the original normalization, i.e. divided by `N_s`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::BaseField;
use crate::rational::{denom_u64, fmt_q, lcm_u64, to_i64, Q};
use crate::valuegroup::{lex_cmp_ints, LexValue};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldTower {
    base: BaseField,
    names: Vec<String>,
    ramification: Vec<u64>,
}

pub type TowerRef = Arc<FieldTower>;

impl FieldTower {
    pub fn new(base: BaseField, names: Vec<String>) -> Result<Self> {
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::Unsupported(format!("duplicate uniformizer name {a}")));
            }
        }
        let ramification = vec![1; names.len()];
        Ok(FieldTower {
            base,
            names,
            ramification,
        })
    }

    /// `base((t1))...((tn))`.
    pub fn standard(base: BaseField, n: usize) -> Self {
        let names = (1..=n).map(|i| format!("t{i}")).collect();
        FieldTower::new(base, names).expect("standard names are distinct")
    }

    pub fn height(&self) -> usize {
        self.names.len()
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn ramification(&self) -> &[u64] {
        &self.ramification
    }

    pub fn is_unramified(&self) -> bool {
        self.ramification.iter().all(|&r| r == 1)
    }

    pub fn with_ramification(&self, ramification: Vec<u64>) -> Self {
        assert_eq!(ramification.len(), self.height());
        FieldTower {
            ramification,
            ..self.clone()
        }
    }

    /// Residue tower after stripping the 1-based coordinate `s`.
    pub fn residue(&self, s: usize) -> Self {
        let mut t = self.clone();
        t.names.remove(s - 1);
        t.ramification.remove(s - 1);
        t
    }

    /// Smallest common ramified cover of two covers of the same tower.
    pub fn join(&self, other: &Self) -> Result<Self> {
        if self.base != other.base || self.names != other.names {
            return Err(Error::TowerMismatch(self.to_string(), other.to_string()));
        }
        let ramification = self
            .ramification
            .iter()
            .zip(&other.ramification)
            .map(|(&a, &b)| lcm_u64(a, b))
            .collect();
        Ok(self.with_ramification(ramification))
    }

    /// Converts an original-normalization exponent to cover units.
    fn to_cover(&self, s: usize, e: &Q) -> Option<i64> {
        to_i64(&(e * BigInt::from(self.ramification[s])))
    }

    fn to_original(&self, s: usize, e: i64) -> Q {
        Q::new(BigInt::from(e), BigInt::from(self.ramification[s]))
    }
}

impl fmt::Display for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        for (name, &r) in self.names.iter().zip(&self.ramification) {
            if r == 1 {
                write!(f, "(({name}))")?;
            } else {
                write!(f, "(({name}^(1/{r})))")?;
            }
        }
        Ok(())
    }
}

fn same_tower(a: &TowerRef, b: &TowerRef) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::TowerMismatch(a.to_string(), b.to_string()))
    }
}

#[derive(Debug, Clone)]
pub struct FieldElement {
    tower: TowerRef,
    terms: BTreeMap<Vec<i64>, Q>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        *self.tower == *other.tower && self.terms == other.terms
    }
}

impl Eq for FieldElement {}

/// Valuation of a nonzero element together with its leading coefficient
/// in the residue tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueData {
    pub value: LexValue,
    pub unit_part: FieldElement,
}

impl FieldElement {
    pub fn zero(tower: &TowerRef) -> Self {
        FieldElement {
            tower: tower.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(tower: &TowerRef, c: &Q) -> Result<Self> {
        let c = tower.base.from_q(c)?;
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; tower.height()], c);
        }
        Ok(FieldElement {
            tower: tower.clone(),
            terms,
        })
    }

    pub fn one(tower: &TowerRef) -> Self {
        Self::constant(tower, &Q::one()).expect("1 is in every field")
    }

    /// `c * t^e` with `e` in original normalization. Fails if some `e_s`
    /// is not representable on this cover.
    pub fn monomial(tower: &TowerRef, c: &Q, e: &[Q]) -> Result<Self> {
        check_len(tower.height(), e.len())?;
        let exps = e
            .iter()
            .enumerate()
            .map(|(s, x)| {
                tower.to_cover(s, x).ok_or_else(|| {
                    Error::Unsupported(format!(
                        "exponent {} needs a ramified cover of {}",
                        fmt_q(x),
                        tower
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_cover_terms(tower, [(exps, c.clone())])
    }

    /// Builds from `(exponent in cover units, coefficient)` pairs, summing
    /// duplicates and dropping zeros.
    pub fn from_cover_terms<I>(tower: &TowerRef, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, Q)>,
    {
        let base = tower.base;
        let mut map: BTreeMap<Vec<i64>, Q> = BTreeMap::new();
        for (e, c) in terms {
            check_len(tower.height(), e.len())?;
            let c = base.from_q(&c)?;
            let slot = map.entry(e).or_insert_with(Q::zero);
            *slot = base.add(slot, &c);
        }
        map.retain(|_, c| !c.is_zero());
        Ok(FieldElement {
            tower: tower.clone(),
            terms: map,
        })
    }

    pub fn tower(&self) -> &TowerRef {
        &self.tower
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(exponent in cover units, coefficient)`.
    pub fn cover_terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Q)> {
        self.terms.iter()
    }

    /// Terms with exponents in original normalization.
    pub fn terms(&self) -> Vec<(Vec<Q>, Q)> {
        self.terms
            .iter()
            .map(|(e, c)| (self.original_exponent(e), c.clone()))
            .collect()
    }

    fn original_exponent(&self, e: &[i64]) -> Vec<Q> {
        e.iter()
            .enumerate()
            .map(|(s, &x)| self.tower.to_original(s, x))
            .collect()
    }

    /// The base-field value if this is a constant.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Lex-minimal exponent of the support, in original normalization.
    /// Distinct monomials never cancel, so this is the valuation.
    pub fn valuation(&self) -> LexValue {
        match self.lowest_cover_exponent() {
            None => LexValue::Inf,
            Some(e) => LexValue::Finite(self.original_exponent(e)),
        }
    }

    fn lowest_cover_exponent(&self) -> Option<&Vec<i64>> {
        self.terms.keys().min_by(|a, b| lex_cmp_ints(a, b))
    }

    /// Minimal exponent of the 1-based coordinate `s` over the support.
    pub fn order_at(&self, s: usize) -> Option<Q> {
        self.terms
            .keys()
            .map(|e| e[s - 1])
            .min()
            .map(|x| self.tower.to_original(s - 1, x))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_tower(&self.tower, &other.tower)?;
        let base = self.tower.base;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let slot = terms.entry(e.clone()).or_insert_with(Q::zero);
            *slot = base.add(slot, c);
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(FieldElement {
            tower: self.tower.clone(),
            terms,
        })
    }

    pub fn neg(&self) -> Self {
        let base = self.tower.base;
        FieldElement {
            tower: self.tower.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), base.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        same_tower(&self.tower, &other.tower)?;
        let base = self.tower.base;
        let mut terms: BTreeMap<Vec<i64>, Q> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let slot = terms.entry(e).or_insert_with(Q::zero);
                *slot = base.add(slot, &base.mul(c1, c2));
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(FieldElement {
            tower: self.tower.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &Q) -> Result<Self> {
        let base = self.tower.base;
        let c = base.from_q(c)?;
        let mut terms: BTreeMap<Vec<i64>, Q> = self
            .terms
            .iter()
            .map(|(e, x)| (e.clone(), base.mul(x, &c)))
            .collect();
        terms.retain(|_, c| !c.is_zero());
        Ok(FieldElement {
            tower: self.tower.clone(),
            terms,
        })
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = FieldElement::one(&self.tower);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Inverse of a monomial `c t^e`; other elements are not units of the
    /// Laurent polynomial ring.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_monomial() {
            return Err(Error::NotInvertible(self.to_string()));
        }
        let (e, c) = self.terms.iter().next().expect("monomial");
        let inv = self.tower.base.inv(c)?;
        Ok(FieldElement {
            tower: self.tower.clone(),
            terms: BTreeMap::from([(e.iter().map(|x| -x).collect(), inv)]),
        })
    }

    /// Re-expresses this element on a cover `target` of its own tower.
    pub fn lift(&self, target: &TowerRef) -> Result<Self> {
        if Arc::ptr_eq(&self.tower, target) || *self.tower == **target {
            return Ok(FieldElement {
                tower: target.clone(),
                terms: self.terms.clone(),
            });
        }
        let joined = self.tower.join(target)?;
        if joined != **target {
            return Err(Error::TowerMismatch(self.tower.to_string(), target.to_string()));
        }
        let factors: Vec<i64> = target
            .ramification
            .iter()
            .zip(&self.tower.ramification)
            .map(|(&big, &small)| (big / small) as i64)
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                (
                    e.iter().zip(&factors).map(|(x, f)| x * f).collect(),
                    c.clone(),
                )
            })
            .collect();
        Ok(FieldElement {
            tower: target.clone(),
            terms,
        })
    }

    /// The residue-field image at the 1-based stage `s`: keeps the terms of
    /// `t_s`-order zero and deletes that coordinate.
    pub fn reduce_once(&self, s: usize) -> Result<Self> {
        let h = self.tower.height();
        if s == 0 || s > h {
            return Err(Error::StageMismatch { stage: s, height: h });
        }
        if let Some((e, c)) = self.terms.iter().find(|(e, _)| e[s - 1] < 0) {
            let single = FieldElement {
                tower: self.tower.clone(),
                terms: BTreeMap::from([(e.clone(), c.clone())]),
            };
            return Err(Error::NotIntegral {
                term: single.to_string(),
                stage: s,
            });
        }
        let residue = Arc::new(self.tower.residue(s));
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[s - 1] == 0)
            .map(|(e, c)| {
                let mut e = e.clone();
                e.remove(s - 1);
                (e, c.clone())
            })
            .collect();
        Ok(FieldElement {
            tower: residue,
            terms,
        })
    }

    /// Multiplies by `prod t_s^{e_s}`. When some `e_s` is not integral on the
    /// current cover, the result lives on the minimal cover where it is.
    pub fn uniformizer_shift(&self, e: &[Q]) -> Result<Self> {
        let tower = shift_cover(&self.tower, e)?;
        let lifted = self.lift(&tower)?;
        lifted.shift_exact(e)
    }

    /// Multiplies by `t^e`, which must be representable on the current cover.
    pub fn shift_exact(&self, e: &[Q]) -> Result<Self> {
        check_len(self.tower.height(), e.len())?;
        let delta = e
            .iter()
            .enumerate()
            .map(|(s, x)| {
                self.tower
                    .to_cover(s, x)
                    .ok_or_else(|| Error::Unsupported(format!("exponent {} off cover", fmt_q(x))))
            })
            .collect::<Result<Vec<i64>>>()?;
        Ok(FieldElement {
            tower: self.tower.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.iter().zip(&delta).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        })
    }

    /// Valuation and leading unit in the residue tower.
    pub fn residue_data(&self) -> Option<ResidueData> {
        let value = self.valuation();
        let v = value.coords()?.to_vec();
        let n = self.tower.height();
        let normalized = self.shift_exact(&v.iter().map(|x| -x).collect::<Vec<_>>()).ok()?;
        let unit_part = normalized.reduce_once(n).ok()?;
        Some(ResidueData { value, unit_part })
    }

    fn sorted_terms(&self) -> Vec<(&Vec<i64>, &Q)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| lex_cmp_ints(a.0, b.0));
        v
    }

    /// Renders the `t`-monomial for a cover exponent, e.g. `t1^2*t2^(1/2)`.
    fn monomial_text(&self, e: &[i64]) -> String {
        let mut parts = Vec::new();
        for (s, &x) in e.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let name = &self.tower.names[s];
            let q = self.tower.to_original(s, x);
            parts.push(if q.is_one() {
                name.clone()
            } else if q.is_integer() {
                format!("{name}^{}", q.numer())
            } else {
                format!("{name}^({})", fmt_q(&q))
            });
        }
        parts.join("*")
    }
}

/// Minimal cover of `tower` on which `t^e` is representable.
pub fn shift_cover(tower: &TowerRef, e: &[Q]) -> Result<TowerRef> {
    check_len(tower.height(), e.len())?;
    if e.iter().enumerate().all(|(s, x)| tower.to_cover(s, x).is_some()) {
        return Ok(tower.clone());
    }
    let ram = tower
        .ramification
        .iter()
        .zip(e)
        .map(|(&r, x)| lcm_u64(r, denom_u64(x)))
        .collect();
    Ok(Arc::new(tower.with_ramification(ram)))
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Writes a signed sum `a + b - c` from `(negative, body)` pieces.
pub(crate) fn join_signed(pieces: &[(bool, String)]) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in pieces.iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(body);
    }
    out
}

impl FieldElement {
    /// Signed pieces for rendering: one `(negative, |term|)` per term.
    pub(crate) fn signed_pieces(&self) -> Vec<(bool, String)> {
        let base = self.tower.base;
        self.sorted_terms()
            .into_iter()
            .map(|(e, c)| {
                let signed = base.signed_repr(c);
                let neg = signed < Q::zero();
                let mag = if neg { -signed } else { signed };
                let mono = self.monomial_text(e);
                let body = match (mono.is_empty(), mag.is_one()) {
                    (true, _) => fmt_q(&mag),
                    (false, true) => mono,
                    (false, false) => format!("{}*{}", fmt_q(&mag), mono),
                };
                (neg, body)
            })
            .collect()
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}", join_signed(&self.signed_pieces()))
    }
}

/// Compares two elements by valuation.
pub fn cmp_valuation(a: &FieldElement, b: &FieldElement) -> Ordering {
    a.valuation()
        .lex_compare(&b.valuation())
        .unwrap_or(Ordering::Equal)
}
