//! Laurent polynomials over the tower in torus variables `x1..xm`, weight
//! matrices, and initial forms.
//!
//! A weight matrix assigns each variable `x_i` a vector `w_i` in `Q^n`. The
//! weight of a term `a_d x^d` is `val(a_d) + sum_i d_i * w_i`, the same
//! quantity the tropical evaluation minimises, so that substituting
//! `x_i -> t^{w_i} x_i` and taking lowest-order terms gives the initial form.
//! The opposite sign convention is obtained by negating the matrix.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hlf::{join_signed, shift_cover, FieldElement, FieldTower, TowerRef};
use crate::rational::{dot_iq, fmt_q, q, Q};
use crate::valuegroup::{lex_cmp_slices, LexValue};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightMatrix {
    rows: Vec<Vec<Q>>,
    n: usize,
}

impl WeightMatrix {
    /// One row per torus variable; every row has the tower height as length.
    pub fn new(rows: Vec<Vec<Q>>) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        Ok(WeightMatrix { rows, n })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    pub fn zeros(m: usize, n: usize) -> Self {
        WeightMatrix {
            rows: vec![vec![Q::zero(); n]; m],
            n,
        }
    }

    /// From variable-major coordinates `(w11, .., w1n, w21, ..)`.
    pub fn from_flat(flat: &[Q], m: usize, n: usize) -> Result<Self> {
        if flat.len() != m * n {
            return Err(Error::DimensionMismatch {
                expected: m * n,
                found: flat.len(),
            });
        }
        Ok(WeightMatrix {
            rows: flat.chunks(n.max(1)).take(m).map(<[Q]>::to_vec).collect(),
            n,
        })
    }

    pub fn to_flat(&self) -> Vec<Q> {
        self.rows.concat()
    }

    pub fn nvars(&self) -> usize {
        self.rows.len()
    }

    pub fn height(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    /// The stage-`s` coordinates `(w_{1s}, .., w_{ms})`, 1-based.
    pub fn column(&self, s: usize) -> Vec<Q> {
        self.rows.iter().map(|r| r[s - 1].clone()).collect()
    }

    pub fn negated(&self) -> Self {
        WeightMatrix {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|x| -x).collect())
                .collect(),
            n: self.n,
        }
    }
}

impl fmt::Display for WeightMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(fmt_q).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

#[derive(Debug, Clone)]
pub struct KPolynomial {
    tower: TowerRef,
    nvars: usize,
    terms: BTreeMap<Vec<i64>, FieldElement>,
}

impl PartialEq for KPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && *self.tower == *other.tower && self.terms == other.terms
    }
}

impl Eq for KPolynomial {}

/// Result of one degeneration stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageInitial {
    /// The degenerated polynomial over the residue tower.
    pub poly: KPolynomial,
    /// The `t_s`-order divided out (original normalization).
    pub shift: Q,
}

/// The full degeneration chain for a weight matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialForm {
    /// `stages[k]` is the polynomial after reducing uniformizers `n..n-k`.
    pub stages: Vec<KPolynomial>,
    /// Divided-out uniformizer power, one coordinate per stage.
    pub normalization: LexValue,
}

impl InitialForm {
    /// The fully degenerate form over the base field.
    pub fn form(&self) -> &KPolynomial {
        self.stages.last().expect("at least one stage")
    }
}

impl KPolynomial {
    pub fn zero(tower: &TowerRef, nvars: usize) -> Self {
        KPolynomial {
            tower: tower.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldElement, nvars: usize) -> Self {
        Self::monomial(c, vec![0; nvars]).expect("exponent length matches")
    }

    pub fn monomial(c: FieldElement, d: Vec<i64>) -> Result<Self> {
        let tower = c.tower().clone();
        Self::from_terms(&tower, d.len(), [(d, c)])
    }

    /// The variable `x_i` (0-based).
    pub fn variable(tower: &TowerRef, nvars: usize, i: usize) -> Self {
        let mut d = vec![0; nvars];
        d[i] = 1;
        Self::monomial(FieldElement::one(tower), d).expect("valid monomial")
    }

    /// Sums duplicate exponents and drops zero coefficients. Coefficients
    /// must live on `tower` or a tower it covers.
    pub fn from_terms<I>(tower: &TowerRef, nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, FieldElement)>,
    {
        let mut map: BTreeMap<Vec<i64>, FieldElement> = BTreeMap::new();
        for (d, c) in terms {
            if d.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: d.len(),
                });
            }
            let c = c.lift(tower)?;
            match map.get_mut(&d) {
                Some(slot) => *slot = slot.add(&c)?,
                None => {
                    map.insert(d, c);
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        Ok(KPolynomial {
            tower: tower.clone(),
            nvars,
            terms: map,
        })
    }

    pub fn tower(&self) -> &TowerRef {
        &self.tower
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    /// Support points in ascending lexicographic order.
    pub fn support(&self) -> Vec<Vec<i64>> {
        self.terms.keys().cloned().collect()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<i64>, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, d: &[i64]) -> Option<&FieldElement> {
        self.terms.get(d)
    }

    /// True iff the support is a single point.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Lifts every coefficient to a cover of the current tower.
    pub fn lift(&self, tower: &TowerRef) -> Result<Self> {
        Self::from_terms(
            tower,
            self.nvars,
            self.terms.iter().map(|(d, c)| (d.clone(), c.clone())),
        )
    }

    /// Lifts both operands to their common cover.
    pub fn unify(&self, other: &Self) -> Result<(Self, Self)> {
        if *self.tower == *other.tower {
            return Ok((self.clone(), other.lift(&self.tower)?));
        }
        let joined = Arc::new(self.tower.join(&other.tower)?);
        Ok((self.lift(&joined)?, other.lift(&joined)?))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        if *self.tower != *other.tower {
            return Err(Error::TowerMismatch(
                self.tower.to_string(),
                other.tower.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Self::from_terms(
            &self.tower,
            self.nvars,
            self.terms
                .iter()
                .chain(&other.terms)
                .map(|(d, c)| (d.clone(), c.clone())),
        )
    }

    pub fn neg(&self) -> Self {
        KPolynomial {
            tower: self.tower.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(d, c)| (d.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Vec::with_capacity(self.len() * other.len());
        for (d1, c1) in &self.terms {
            for (d2, c2) in &other.terms {
                let d = d1.iter().zip(d2).map(|(a, b)| a + b).collect();
                out.push((d, c1.mul(c2)?));
            }
        }
        Self::from_terms(&self.tower, self.nvars, out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::constant(FieldElement::one(&self.tower), self.nvars);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Inverse of a monomial `c t^e x^d`.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_monomial() {
            return Err(Error::NotInvertible(self.to_string()));
        }
        let (d, c) = self.terms.iter().next().expect("monomial");
        Self::monomial(c.inverse()?, d.iter().map(|x| -x).collect())
    }

    /// Multiplies every coefficient by `t^e`, passing to a ramified cover
    /// when needed.
    pub fn uniformizer_shift(&self, e: &[Q]) -> Result<Self> {
        let cover = shift_cover(&self.tower, e)?;
        let terms = self
            .terms
            .iter()
            .map(|(d, c)| Ok((d.clone(), c.lift(&cover)?.shift_exact(e)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(&cover, self.nvars, terms)
    }

    fn check_weights(&self, w: &WeightMatrix) -> Result<()> {
        if w.nvars() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: w.nvars(),
            });
        }
        if w.height() != self.tower.height() {
            return Err(Error::DimensionMismatch {
                expected: self.tower.height(),
                found: w.height(),
            });
        }
        Ok(())
    }

    /// `val(a_d) + sum_i d_i w_i` for a support point `d`.
    pub fn weight_of_term(&self, d: &[i64], w: &WeightMatrix) -> Result<LexValue> {
        self.check_weights(w)?;
        let c = self
            .terms
            .get(d)
            .ok_or_else(|| Error::NotInSupport(d.to_vec()))?;
        let mut acc = c.valuation();
        for (di, wi) in d.iter().zip(w.rows()) {
            acc = acc.add(&LexValue::Finite(wi.clone()).scalar_mul(&q(*di)))?;
        }
        Ok(acc)
    }

    /// Substitutes `x_i -> t^{w_i} x_i`.
    pub fn twist(&self, w: &WeightMatrix) -> Result<Self> {
        self.check_weights(w)?;
        let n = self.tower.height();
        let shifts: Vec<Vec<Q>> = self
            .terms
            .keys()
            .map(|d| (1..=n).map(|s| dot_iq(d, &w.column(s))).collect())
            .collect();
        let mut cover = self.tower.clone();
        for e in &shifts {
            cover = shift_cover(&cover, e)?;
        }
        let terms = self
            .terms
            .iter()
            .zip(&shifts)
            .map(|((d, c), e)| Ok((d.clone(), c.lift(&cover)?.shift_exact(e)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(&cover, self.nvars, terms)
    }

    /// One degeneration stage at the outermost uniformizer `t_s` of a
    /// height-`s` tower, using the stage weights `w = (w_{1s}, .., w_{ms})`:
    /// substitute `x_i -> t_s^{w_i} x_i`, divide by the lowest power of
    /// `t_s`, and pass to the residue field.
    pub fn stage_initial(&self, s: usize, w: &[Q]) -> Result<StageInitial> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("initial form"));
        }
        let h = self.tower.height();
        if s != h || s == 0 {
            return Err(Error::StageMismatch { stage: s, height: h });
        }
        if w.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: w.len(),
            });
        }
        let mut flat = vec![Q::zero(); self.nvars * h];
        for (i, wi) in w.iter().enumerate() {
            flat[i * h + (s - 1)] = wi.clone();
        }
        let twisted = self.twist(&WeightMatrix::from_flat(&flat, self.nvars, h)?)?;
        let shift = twisted
            .terms
            .values()
            .filter_map(|c| c.order_at(s))
            .min()
            .expect("nonzero polynomial");
        let mut e = vec![Q::zero(); h];
        e[s - 1] = -shift.clone();
        let residue = Arc::new(twisted.tower.residue(s));
        let terms = twisted
            .terms
            .iter()
            .map(|(d, c)| Ok((d.clone(), c.shift_exact(&e)?.reduce_once(s)?)))
            .collect::<Result<Vec<_>>>()?;
        let poly = Self::from_terms(&residue, self.nvars, terms)?;
        Ok(StageInitial { poly, shift })
    }

    /// The iterated degeneration `X -> X_{w_n} -> ... -> X_w`, ending over
    /// the base field.
    pub fn initial_form(&self, w: &WeightMatrix) -> Result<InitialForm> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("initial form"));
        }
        self.check_weights(w)?;
        let n = self.tower.height();
        let mut current = self.clone();
        let mut stages = Vec::with_capacity(n);
        let mut normalization = vec![Q::zero(); n];
        for s in (1..=n).rev() {
            let step = current.stage_initial(s, &w.column(s))?;
            normalization[s - 1] = step.shift;
            current = step.poly;
            stages.push(current.clone());
        }
        if stages.is_empty() {
            stages.push(current);
        }
        Ok(InitialForm {
            stages,
            normalization: LexValue::Finite(normalization),
        })
    }

    /// `f_b(z) = sum_d a_d z^{b.d}`.
    pub fn univariate_reduce(&self, b: &[i64]) -> Result<Self> {
        if b.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: b.len(),
            });
        }
        let mut seen: BTreeMap<i64, &Vec<i64>> = BTreeMap::new();
        let mut terms = Vec::with_capacity(self.len());
        for (d, c) in &self.terms {
            let k: i64 = d.iter().zip(b).map(|(x, y)| x * y).sum();
            if let Some(prev) = seen.insert(k, d) {
                return Err(Error::NonInjective {
                    b: b.to_vec(),
                    first: prev.clone(),
                    second: d.clone(),
                });
            }
            terms.push((vec![k], c.clone()));
        }
        Self::from_terms(&self.tower, 1, terms)
    }

    /// Divides by the monomial `x^d`.
    pub fn shift_exponents(&self, d: &[i64]) -> Self {
        KPolynomial {
            tower: self.tower.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(d).map(|(a, b)| a - b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Whether `other = u * self` for a monomial `u = c t^e x^d`.
    pub fn equal_up_to_monomial(&self, other: &Self) -> bool {
        if self.nvars != other.nvars || self.len() != other.len() || *self.tower != *other.tower {
            return false;
        }
        if self.is_zero() {
            return true;
        }
        let (d0, a0) = self.terms.iter().next().expect("nonzero");
        let (e0, b0) = other.terms.iter().next().expect("nonzero");
        let delta: Vec<i64> = e0.iter().zip(d0).map(|(a, b)| a - b).collect();
        let (Some(va), Some(vb)) = (a0.valuation().coords().map(<[Q]>::to_vec), b0.valuation().coords().map(<[Q]>::to_vec)) else {
            return false;
        };
        let lowest = |c: &FieldElement, v: &[Q]| {
            c.terms()
                .into_iter()
                .find(|(e, _)| e.as_slice() == v)
                .map(|(_, k)| k)
                .expect("lowest term")
        };
        let base = self.tower.base();
        let Ok(ratio) = base.inv(&lowest(a0, &va)) else {
            return false;
        };
        let ratio = base.mul(&ratio, &lowest(b0, &vb));
        let e: Vec<Q> = vb.iter().zip(va).map(|(x, y)| x - y).collect();
        let Ok(unit) = FieldElement::monomial(&self.tower, &ratio, &e) else {
            return false;
        };
        self.terms.iter().all(|(d, c)| {
            let target: Vec<i64> = d.iter().zip(&delta).map(|(a, b)| a + b).collect();
            match (other.terms.get(&target), c.mul(&unit)) {
                (Some(b), Ok(prod)) => *b == prod,
                _ => false,
            }
        })
    }

    /// Renders with the given variable names, highest exponent first.
    pub fn display_with(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let pieces: Vec<(bool, String)> = self
            .terms
            .iter()
            .rev()
            .map(|(d, c)| render_term(c, &variable_monomial(d, vars)))
            .collect();
        join_signed(&pieces)
    }
}

fn variable_monomial(d: &[i64], vars: &[String]) -> String {
    d.iter()
        .zip(vars)
        .filter(|(e, _)| **e != 0)
        .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

fn render_term(c: &FieldElement, mono: &str) -> (bool, String) {
    let pieces = c.signed_pieces();
    if pieces.len() == 1 {
        let (neg, body) = pieces.into_iter().next().expect("one piece");
        let body = match (mono.is_empty(), body == "1") {
            (true, _) => body,
            (false, true) => mono.to_string(),
            (false, false) => format!("{body}*{mono}"),
        };
        return (neg, body);
    }
    // A leading minus on the lowest term is pulled out of the parentheses.
    let neg = pieces[0].0;
    let inner = if neg {
        let flipped: Vec<(bool, String)> = pieces.into_iter().map(|(s, b)| (!s, b)).collect();
        join_signed(&flipped)
    } else {
        join_signed(&pieces)
    };
    let body = if mono.is_empty() {
        format!("({inner})")
    } else {
        format!("({inner})*{mono}")
    };
    (neg, body)
}

/// Default variable names: `x, y, z` for up to three variables, else `x1..xm`.
pub fn default_variables(m: usize) -> Vec<String> {
    if m <= 3 {
        ["x", "y", "z"][..m].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=m).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for KPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&default_variables(self.nvars)))
    }
}

/// First injective substitution vector in a deterministic enumeration:
/// nonnegative vectors by increasing max-norm, lexicographically within a
/// shell.
pub fn find_generic_b(support: &[Vec<i64>], m: usize) -> Vec<i64> {
    let injective = |b: &[i64]| {
        let mut vals: Vec<i64> = support
            .iter()
            .map(|d| d.iter().zip(b).map(|(x, y)| x * y).sum())
            .collect();
        vals.sort_unstable();
        vals.windows(2).all(|w| w[0] != w[1])
    };
    if m == 0 || support.len() <= 1 {
        return vec![0; m];
    }
    for r in 1i64.. {
        let mut b = vec![0i64; m];
        loop {
            if b.contains(&r) && injective(&b) {
                return b;
            }
            if !odometer_step(&mut b, r) {
                break;
            }
        }
    }
    unreachable!("some shell always contains an injective vector")
}

/// Advances `b` through `[0, r]^m`, last coordinate fastest.
fn odometer_step(b: &mut [i64], r: i64) -> bool {
    for k in (0..b.len()).rev() {
        if b[k] < r {
            b[k] += 1;
            for x in &mut b[k + 1..] {
                *x = 0;
            }
            return true;
        }
    }
    false
}

/// Compares coefficient valuations at two support points.
pub fn cmp_weights(a: &LexValue, b: &LexValue) -> Ordering {
    match (a.coords(), b.coords()) {
        (Some(x), Some(y)) => lex_cmp_slices(x, y),
        _ => a.lex_compare(b).unwrap_or(Ordering::Equal),
    }
}

/// The height-`n` rational tower with default uniformizer names.
pub fn rational_tower(n: usize) -> TowerRef {
    Arc::new(FieldTower::standard(crate::field::BaseField::Rationals, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::rational::qf;

    fn poly(text: &str, n: usize) -> KPolynomial {
        parse_polynomial(text, &rational_tower(n), &default_variables(2)).unwrap()
    }

    fn wm(rows: &[&[Q]]) -> WeightMatrix {
        WeightMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn term_weights() {
        let f = poly("x + y + 1", 2);
        let zero = WeightMatrix::zeros(2, 2);
        assert_eq!(f.weight_of_term(&[1, 0], &zero), Ok(LexValue::zero(2)));
        let w = WeightMatrix::from_ints(&[&[1, 1], &[0, 0]]).unwrap();
        assert_eq!(f.weight_of_term(&[1, 0], &w), Ok(LexValue::from_ints(&[1, 1])));
        let g = poly("(x - t1)*(x - t1^2) + y^2", 2);
        let w = WeightMatrix::from_ints(&[&[1, 0], &[1, 0]]).unwrap();
        assert_eq!(g.weight_of_term(&[2, 0], &w), Ok(LexValue::from_ints(&[2, 0])));
        assert_eq!(g.weight_of_term(&[1, 1], &w), Err(Error::NotInSupport(vec![1, 1])));
    }

    #[test]
    fn initial_forms_of_the_tripod() {
        let f = poly("x + y + 1", 2);
        let vars = default_variables(2);
        let zero = WeightMatrix::zeros(2, 2);
        assert_eq!(f.initial_form(&zero).unwrap().form().display_with(&vars), "x + y + 1");
        let w = wm(&[&[q(0), q(0)], &[q(3), q(0)]]);
        assert_eq!(f.initial_form(&w).unwrap().form().display_with(&vars), "x + 1");
    }

    #[test]
    fn initial_forms_of_the_impure_example() {
        let f = poly("(x - t1)*(x - t1^2) + y^2", 2);
        let vars = default_variables(2);
        let w = WeightMatrix::from_ints(&[&[1, 0], &[1, 0]]).unwrap();
        assert_eq!(
            f.initial_form(&w).unwrap().form().display_with(&vars),
            "x^2 - x + y^2"
        );
        // Tie of -x and y^2 on 1 < w11 < 2 sits at w21 = (w11 + 1)/2.
        let w = wm(&[&[qf(3, 2), q(0)], &[qf(5, 4), q(0)]]);
        let init = f.initial_form(&w).unwrap();
        assert_eq!(init.form().display_with(&vars), "-x + y^2");
        assert_eq!(init.normalization, LexValue::Finite(vec![qf(5, 2), q(0)]));
    }

    #[test]
    fn single_stage() {
        let vars = default_variables(2);
        let f = poly("x + y + 1", 2);
        let st = f.stage_initial(2, &[q(0), q(0)]).unwrap();
        assert_eq!(st.poly.tower().height(), 1);
        assert_eq!(st.poly.display_with(&vars), "x + y + 1");
        let st = f.stage_initial(2, &[q(0), q(1)]).unwrap();
        assert_eq!(st.poly.display_with(&vars), "x + 1");
        let g = poly("(x - t1)*(x - t1^2) + y^2", 2);
        let st = g.stage_initial(2, &[q(0), q(0)]).unwrap();
        assert_eq!(st.poly.display_with(&vars), "x^2 - (t1 + t1^2)*x + y^2 + t1^3");
        assert!(matches!(
            g.stage_initial(1, &[q(0), q(0)]),
            Err(Error::StageMismatch { stage: 1, height: 2 })
        ));
    }

    #[test]
    fn fractional_weights_ramify() {
        let f = poly("x + 1", 1);
        let f = KPolynomial::from_terms(
            f.tower(),
            2,
            f.terms().map(|(d, c)| (d.clone(), c.clone())),
        )
        .unwrap();
        let st = f.stage_initial(1, &[qf(1, 2), q(0)]).unwrap();
        assert_eq!(st.shift, q(0));
        assert_eq!(st.poly.to_string(), "1");
    }

    #[test]
    fn monomial_check() {
        assert!(!poly("x + 1", 1).is_monomial());
        assert!(poly("3*x^2*y^-1", 1).is_monomial());
        assert!(!KPolynomial::zero(&rational_tower(1), 2).is_monomial());
    }

    #[test]
    fn univariate_reduction() {
        let vars = vec!["z".to_string()];
        let f = poly("x + y + 1", 2);
        assert_eq!(f.univariate_reduce(&[1, 2]).unwrap().display_with(&vars), "z^2 + z + 1");
        assert!(matches!(
            f.univariate_reduce(&[1, 1]),
            Err(Error::NonInjective { .. })
        ));
        let g = poly("x*y^-1 + t1", 1);
        assert_eq!(g.univariate_reduce(&[2, 1]).unwrap().display_with(&vars), "z + t1");
        assert_eq!(find_generic_b(&f.support(), 2), vec![1, 2]);
    }

    #[test]
    fn monomial_equivalence() {
        let f = poly("x + y + 1", 2);
        let g = poly("t1^2*t2*x^2*y + t1^2*t2*x*y^2 + t1^2*t2*x*y", 2);
        assert!(f.equal_up_to_monomial(&g));
        let h = poly("x + y - 1", 2);
        assert!(!f.equal_up_to_monomial(&h));
    }
}
