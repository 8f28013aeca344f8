//! Exact rational polyhedra and polyhedral complexes.
//!
//! A polyhedron is `{x : <a_i, x> = b_i, <c_j, x> >= d_j}` where each
//! inequality may be flagged strict. Strict flags describe relatively open
//! cells; "closed" queries ignore them. Feasibility is decided by
//! Fourier-Motzkin elimination after the equalities have been solved away.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::linalg::{echelon, rank, rref};
use crate::rational::{dot, q, Q};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub normal: Vec<Q>,
    pub offset: Q,
}

impl Constraint {
    pub fn new(normal: Vec<Q>, offset: Q) -> Self {
        Constraint { normal, offset }
    }

    pub fn from_ints(normal: &[i64], offset: i64) -> Self {
        Constraint::new(normal.iter().map(|&x| q(x)).collect(), q(offset))
    }

    /// `<normal, x> - offset`.
    pub fn slack(&self, x: &[Q]) -> Q {
        dot(&self.normal, x) - &self.offset
    }

    fn negated(&self) -> Self {
        Constraint::new(self.normal.iter().map(|x| -x).collect(), -self.offset.clone())
    }

    fn augmented(&self) -> Vec<Q> {
        let mut row = self.normal.clone();
        row.push(self.offset.clone());
        row
    }
}

/// How a feasibility witness is picked inside the bounds of each variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessRule {
    /// Fraction of the way from the lower to the upper bound.
    pub bias: Q,
    /// Rotation of the variable elimination order.
    pub rotation: usize,
}

impl Default for WitnessRule {
    fn default() -> Self {
        WitnessRule {
            bias: Q::new(1.into(), 2.into()),
            rotation: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPolyhedron {
    ambient_dim: usize,
    pub equalities: Vec<Constraint>,
    pub inequalities: Vec<Constraint>,
    pub strict: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Ineq {
    coeffs: Vec<Q>,
    rhs: Q,
    strict: bool,
}

impl RationalPolyhedron {
    /// The whole space `Q^d`.
    pub fn universe(ambient_dim: usize) -> Self {
        RationalPolyhedron {
            ambient_dim,
            equalities: Vec::new(),
            inequalities: Vec::new(),
            strict: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn with_equality(mut self, c: Constraint) -> Self {
        self.add_equality(c);
        self
    }

    pub fn with_inequality(mut self, c: Constraint, strict: bool) -> Self {
        self.add_inequality(c, strict);
        self
    }

    pub fn add_equality(&mut self, c: Constraint) {
        assert_eq!(c.normal.len(), self.ambient_dim, "normal length");
        self.equalities.push(c);
    }

    pub fn add_inequality(&mut self, c: Constraint, strict: bool) {
        assert_eq!(c.normal.len(), self.ambient_dim, "normal length");
        self.inequalities.push(c);
        self.strict.push(strict);
    }

    /// Same constraints with every strict flag dropped.
    pub fn closure(&self) -> Self {
        RationalPolyhedron {
            strict: vec![false; self.inequalities.len()],
            ..self.clone()
        }
    }

    pub fn is_closed(&self) -> bool {
        self.strict.iter().all(|s| !s)
    }

    /// Image under `x -> -x`.
    pub fn negated(&self) -> Self {
        let flip = |c: &Constraint| Constraint::new(c.normal.iter().map(|x| -x).collect(), c.offset.clone());
        RationalPolyhedron {
            ambient_dim: self.ambient_dim,
            equalities: self.equalities.iter().map(flip).collect(),
            inequalities: self.inequalities.iter().map(flip).collect(),
            strict: self.strict.clone(),
        }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut out = self.clone();
        out.equalities.extend(other.equalities.iter().cloned());
        out.inequalities.extend(other.inequalities.iter().cloned());
        out.strict.extend(other.strict.iter().copied());
        out
    }

    /// Places this polyhedron's coordinates at `positions` of a
    /// `target_dim`-dimensional space; the other coordinates are free.
    pub fn embed(&self, target_dim: usize, positions: &[usize]) -> Self {
        assert_eq!(positions.len(), self.ambient_dim);
        let spread = |c: &Constraint| {
            let mut normal = vec![Q::zero(); target_dim];
            for (x, &p) in c.normal.iter().zip(positions) {
                normal[p] = x.clone();
            }
            Constraint::new(normal, c.offset.clone())
        };
        RationalPolyhedron {
            ambient_dim: target_dim,
            equalities: self.equalities.iter().map(spread).collect(),
            inequalities: self.inequalities.iter().map(spread).collect(),
            strict: self.strict.clone(),
        }
    }

    pub fn contains_point(&self, x: &[Q], honor_strict: bool) -> bool {
        self.equalities.iter().all(|c| c.slack(x).is_zero())
            && self
                .inequalities
                .iter()
                .zip(&self.strict)
                .all(|(c, &s)| {
                    let sl = c.slack(x);
                    if s && honor_strict {
                        sl.is_positive()
                    } else {
                        !sl.is_negative()
                    }
                })
    }

    /// Decides nonemptiness and returns a rational witness.
    pub fn is_feasible(&self, honor_strict: bool) -> Option<Vec<Q>> {
        self.feasible_with(honor_strict, &WitnessRule::default())
    }

    pub fn feasible_with(&self, honor_strict: bool, rule: &WitnessRule) -> Option<Vec<Q>> {
        let d = self.ambient_dim;
        let eq_rows: Vec<Vec<Q>> = self.equalities.iter().map(Constraint::augmented).collect();
        let ech = rref(&eq_rows, d);
        if !ech.consistent {
            return None;
        }
        let free: Vec<usize> = (0..d).filter(|c| !ech.pivots.contains(c)).collect();
        // x_p = rhs_p - sum_f a_pf x_f for each pivot row.
        let reduced: Vec<Ineq> = self
            .inequalities
            .iter()
            .zip(&self.strict)
            .map(|(c, &s)| {
                let mut coeffs: Vec<Q> = free.iter().map(|&f| c.normal[f].clone()).collect();
                let mut rhs = c.offset.clone();
                for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                    let np = &c.normal[p];
                    if np.is_zero() {
                        continue;
                    }
                    for (k, &f) in free.iter().enumerate() {
                        coeffs[k] -= np * &row[f];
                    }
                    rhs -= np * &row[d];
                }
                Ineq {
                    coeffs,
                    rhs,
                    strict: s && honor_strict,
                }
            })
            .collect();
        let values = fourier_motzkin(reduced, free.len(), rule)?;
        let mut x = vec![Q::zero(); d];
        for (k, &f) in free.iter().enumerate() {
            x[f] = values[k].clone();
        }
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            let mut v = row[d].clone();
            for &f in &free {
                v -= &row[f] * &x[f];
            }
            x[p] = v;
        }
        debug_assert!(self.contains_point(&x, honor_strict), "witness check");
        Some(x)
    }

    pub fn is_empty(&self) -> bool {
        self.is_feasible(true).is_none()
    }

    /// Indices of inequalities that hold with equality on the whole closure.
    pub fn implicit_equalities(&self) -> Vec<usize> {
        let closed = self.closure();
        let Some(w) = closed.is_feasible(false) else {
            return Vec::new();
        };
        (0..self.inequalities.len())
            .filter(|&i| {
                let c = &self.inequalities[i];
                if c.slack(&w).is_positive() {
                    return false;
                }
                closed
                    .clone()
                    .with_inequality(c.negated(), true)
                    .is_feasible(true)
                    .is_none()
            })
            .collect()
    }

    fn hull_rows(&self) -> Vec<Vec<Q>> {
        let mut rows: Vec<Vec<Q>> = self.equalities.iter().map(Constraint::augmented).collect();
        for i in self.implicit_equalities() {
            rows.push(self.inequalities[i].augmented());
        }
        rows
    }

    /// Dimension of the set (strict flags honored), `-1` when empty.
    pub fn dimension(&self) -> i64 {
        if self.is_feasible(true).is_none() {
            return -1;
        }
        if self.inequalities.is_empty() || self.strict.iter().all(|&s| s) {
            // A nonempty relatively open set spans the equality subspace.
            let rows: Vec<Vec<Q>> = self.equalities.iter().map(Constraint::augmented).collect();
            return (self.ambient_dim - rank(&rows, self.ambient_dim)) as i64;
        }
        (self.ambient_dim - rank(&self.hull_rows(), self.ambient_dim)) as i64
    }

    /// Minimal equality system (reduced row echelon form) of the affine hull.
    pub fn affine_hull(&self) -> Option<Vec<Constraint>> {
        self.is_feasible(true)?;
        let ech = rref(&self.hull_rows(), self.ambient_dim);
        Some(
            ech.rows
                .into_iter()
                .map(|mut r| {
                    let offset = r.pop().expect("augmented row");
                    Constraint::new(r, offset)
                })
                .collect(),
        )
    }

    /// Affine hull in echelon form with pivots chosen from the given
    /// column order (used when rendering constraints).
    pub fn affine_hull_pivoting(&self, order: &[usize]) -> Option<(Vec<Constraint>, Vec<usize>)> {
        self.is_feasible(true)?;
        let ech = echelon(&self.hull_rows(), self.ambient_dim, order);
        let rows = ech
            .rows
            .into_iter()
            .map(|mut r| {
                let offset = r.pop().expect("augmented row");
                Constraint::new(r, offset)
            })
            .collect();
        Some((rows, ech.pivots))
    }

    /// Closed containment `other ⊆ self` (strict flags ignored on both).
    pub fn contains(&self, other: &Self) -> bool {
        let base = other.closure();
        if base.is_feasible(false).is_none() {
            return true;
        }
        let escapes = |c: Constraint| base.clone().with_inequality(c, true).is_feasible(true).is_some();
        for c in &self.inequalities {
            if escapes(c.negated()) {
                return false;
            }
        }
        for c in &self.equalities {
            if escapes(c.negated()) || escapes(c.clone()) {
                return false;
            }
        }
        true
    }

    /// Equality of closures.
    pub fn same_closure(&self, other: &Self) -> bool {
        self.contains(other) && other.contains(self)
    }
}

/// Normalizes the leading nonzero coefficient to magnitude one.
fn normalize(mut c: Ineq) -> Ineq {
    if let Some(lead) = c.coeffs.iter().find(|x| !x.is_zero()).map(|x| x.abs()) {
        if !lead.is_one() {
            let inv = lead.recip();
            for x in c.coeffs.iter_mut() {
                *x *= &inv;
            }
            c.rhs *= &inv;
        }
    }
    c
}

/// Keeps the tightest copy of constraints with equal coefficient vectors.
fn dedupe(cs: Vec<Ineq>) -> Vec<Ineq> {
    let mut best: HashMap<Vec<Q>, (Q, bool)> = HashMap::new();
    let mut order = Vec::new();
    for c in cs {
        match best.get_mut(&c.coeffs) {
            Some((rhs, strict)) => {
                if c.rhs > *rhs {
                    *rhs = c.rhs;
                    *strict = c.strict;
                } else if c.rhs == *rhs {
                    *strict |= c.strict;
                }
            }
            None => {
                order.push(c.coeffs.clone());
                best.insert(c.coeffs, (c.rhs, c.strict));
            }
        }
    }
    order
        .into_iter()
        .map(|coeffs| {
            let (rhs, strict) = best.remove(&coeffs).expect("present");
            Ineq {
                coeffs,
                rhs,
                strict,
            }
        })
        .collect()
}

/// Trivial constraints `0 >= rhs` are checked and removed.
fn check_constants(cs: Vec<Ineq>) -> Option<Vec<Ineq>> {
    let mut out = Vec::with_capacity(cs.len());
    for c in cs {
        if c.coeffs.iter().all(Zero::is_zero) {
            let ok = if c.strict {
                c.rhs.is_negative()
            } else {
                !c.rhs.is_positive()
            };
            if !ok {
                return None;
            }
        } else {
            out.push(c);
        }
    }
    Some(out)
}

fn fourier_motzkin(system: Vec<Ineq>, k: usize, rule: &WitnessRule) -> Option<Vec<Q>> {
    let order: Vec<usize> = (0..k).map(|i| (i + rule.rotation) % k.max(1)).collect();
    let mut current = dedupe(check_constants(system.into_iter().map(normalize).collect())?);
    let mut levels: Vec<(usize, Vec<Ineq>)> = Vec::with_capacity(k);
    for &v in &order {
        let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in &current {
            if c.coeffs[v].is_positive() {
                lower.push(c);
            } else if c.coeffs[v].is_negative() {
                upper.push(c);
            } else {
                rest.push(c.clone());
            }
        }
        for l in &lower {
            for u in &upper {
                let a = &l.coeffs[v];
                let b = -&u.coeffs[v];
                let coeffs: Vec<Q> = l
                    .coeffs
                    .iter()
                    .zip(&u.coeffs)
                    .map(|(x, y)| x * &b + y * a)
                    .collect();
                rest.push(normalize(Ineq {
                    coeffs,
                    rhs: &l.rhs * &b + &u.rhs * a,
                    strict: l.strict || u.strict,
                }));
            }
        }
        levels.push((v, current));
        current = dedupe(check_constants(rest)?);
    }
    debug_assert!(current.is_empty());
    let mut x: Vec<Option<Q>> = vec![None; k];
    for (v, system) in levels.iter().rev() {
        let mut lo: Option<(Q, bool)> = None;
        let mut hi: Option<(Q, bool)> = None;
        for c in system {
            let a = &c.coeffs[*v];
            if a.is_zero() {
                continue;
            }
            let mut rest = c.rhs.clone();
            for (j, cj) in c.coeffs.iter().enumerate() {
                if j != *v && !cj.is_zero() {
                    rest -= cj * x[j].as_ref().expect("later variable assigned");
                }
            }
            let bound = rest / a;
            if a.is_positive() {
                lo = Some(tighter(lo, bound, c.strict, true));
            } else {
                hi = Some(tighter(hi, bound, c.strict, false));
            }
        }
        let two_bias = &rule.bias * q(2);
        let value = match (lo, hi) {
            (Some((l, _)), Some((h, _))) => {
                if l == h {
                    l
                } else {
                    debug_assert!(l < h);
                    &l + &rule.bias * (&h - &l)
                }
            }
            (Some((l, _)), None) => l + two_bias,
            (None, Some((h, _))) => h - two_bias,
            (None, None) => Q::zero(),
        };
        x[*v] = Some(value);
    }
    Some(x.into_iter().map(|v| v.unwrap_or_else(Q::zero)).collect())
}

fn tighter(cur: Option<(Q, bool)>, bound: Q, strict: bool, is_lower: bool) -> (Q, bool) {
    match cur {
        None => (bound, strict),
        Some((b, s)) => {
            let better = if is_lower { bound > b } else { bound < b };
            if better {
                (bound, strict)
            } else if bound == b {
                (b, s || strict)
            } else {
                (b, s)
            }
        }
    }
}

/// A finite collection of closed rational polyhedra with the face-of relation
/// between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyhedralComplex {
    pub ambient_dim: usize,
    pub cells: Vec<RationalPolyhedron>,
    pub dims: Vec<i64>,
    /// `(i, j)`: cell `i` is a proper face of cell `j`.
    pub adjacency: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexSummary {
    pub dim: i64,
    pub pure: bool,
    pub maximal: Vec<usize>,
}

impl PolyhedralComplex {
    /// Builds from closed cells; empty cells are dropped and cells with equal
    /// closures merged.
    pub fn from_cells(ambient_dim: usize, cells: Vec<RationalPolyhedron>) -> Self {
        let mut kept: Vec<RationalPolyhedron> = Vec::new();
        let mut dims = Vec::new();
        for c in cells {
            let c = c.closure();
            let dim = c.dimension();
            if dim < 0 {
                continue;
            }
            let dup = kept
                .iter()
                .zip(&dims)
                .any(|(k, &kd)| kd == dim && k.same_closure(&c));
            if !dup {
                kept.push(c);
                dims.push(dim);
            }
        }
        Self::from_distinct_cells(ambient_dim, kept, dims)
    }

    /// Builds from cells already known to be nonempty with distinct closures.
    pub fn from_distinct_cells(
        ambient_dim: usize,
        cells: Vec<RationalPolyhedron>,
        dims: Vec<i64>,
    ) -> Self {
        let witnesses: Vec<Option<Vec<Q>>> = cells.iter().map(|c| c.is_feasible(false)).collect();
        let mut adjacency = Vec::new();
        for (i, ci) in cells.iter().enumerate() {
            let Some(w) = &witnesses[i] else { continue };
            for (j, cj) in cells.iter().enumerate() {
                if dims[i] < dims[j] && cj.contains_point(w, false) && cj.contains(ci) {
                    adjacency.push((i, j));
                }
            }
        }
        PolyhedralComplex {
            ambient_dim,
            cells,
            dims,
            adjacency,
        }
    }

    pub fn empty(ambient_dim: usize) -> Self {
        PolyhedralComplex {
            ambient_dim,
            cells: Vec::new(),
            dims: Vec::new(),
            adjacency: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Dimension, purity and maximal cells.
    pub fn dimension_and_purity(&self) -> ComplexSummary {
        let maximal: Vec<usize> = (0..self.cells.len())
            .filter(|&i| !self.adjacency.iter().any(|&(a, _)| a == i))
            .collect();
        let dim = self.dims.iter().copied().max().unwrap_or(-1);
        let pure = maximal.iter().all(|&i| self.dims[i] == dim);
        ComplexSummary { dim, pure, maximal }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    fn ineq(n: &[i64], off: i64) -> Constraint {
        Constraint::from_ints(n, off)
    }

    #[test]
    fn interval_feasibility() {
        let p = RationalPolyhedron::universe(1)
            .with_inequality(ineq(&[1], 0), false)
            .with_inequality(ineq(&[-1], -1), false);
        assert_eq!(p.is_feasible(false), Some(vec![qf(1, 2)]));
        let empty = RationalPolyhedron::universe(1)
            .with_inequality(ineq(&[1], 1), false)
            .with_inequality(ineq(&[-1], 0), false);
        assert_eq!(empty.is_feasible(false), None);
        let point = RationalPolyhedron::universe(1)
            .with_inequality(ineq(&[1], 0), true)
            .with_inequality(ineq(&[-1], 0), true);
        assert_eq!(point.is_feasible(true), None);
        assert_eq!(point.is_feasible(false), Some(vec![q(0)]));
    }

    #[test]
    fn dimensions() {
        let diag = RationalPolyhedron::universe(2).with_equality(ineq(&[1, -1], 0));
        assert_eq!(diag.dimension(), 1);
        assert_eq!(RationalPolyhedron::universe(4).dimension(), 4);
        // (t, 0, t/2, 0) for 1 <= t <= 2 written with inequalities only.
        let seg = RationalPolyhedron::universe(4)
            .with_inequality(ineq(&[1, 0, -2, 0], 0), false)
            .with_inequality(ineq(&[-1, 0, 2, 0], 0), false)
            .with_inequality(ineq(&[0, 1, 0, 0], 0), false)
            .with_inequality(ineq(&[0, -1, 0, 0], 0), false)
            .with_inequality(ineq(&[0, 0, 0, 1], 0), false)
            .with_inequality(ineq(&[0, 0, 0, -1], 0), false)
            .with_inequality(ineq(&[1, 0, 0, 0], 1), false)
            .with_inequality(ineq(&[-1, 0, 0, 0], -2), false);
        assert_eq!(seg.dimension(), 1);
        let hull = seg.affine_hull().unwrap();
        assert_eq!(
            hull,
            vec![
                Constraint::new(vec![q(1), q(0), q(-2), q(0)], q(0)),
                Constraint::from_ints(&[0, 1, 0, 0], 0),
                Constraint::from_ints(&[0, 0, 0, 1], 0),
            ]
        );
        let empty = RationalPolyhedron::universe(1)
            .with_inequality(ineq(&[1], 1), false)
            .with_inequality(ineq(&[-1], 0), false);
        assert_eq!(empty.dimension(), -1);
        assert!(empty.affine_hull().is_none());
    }

    #[test]
    fn hull_of_point_and_space() {
        let pt = RationalPolyhedron::universe(3)
            .with_equality(ineq(&[1, 0, 0], 1))
            .with_equality(ineq(&[0, 1, 0], 2))
            .with_equality(ineq(&[1, 1, 1], 0));
        assert_eq!(pt.affine_hull().unwrap().len(), 3);
        assert!(RationalPolyhedron::universe(3).affine_hull().unwrap().is_empty());
    }

    #[test]
    fn containment() {
        let ray = RationalPolyhedron::universe(2)
            .with_equality(ineq(&[0, 1], 0))
            .with_inequality(ineq(&[1, 0], 0), false);
        let origin = RationalPolyhedron::universe(2)
            .with_equality(ineq(&[1, 0], 0))
            .with_equality(ineq(&[0, 1], 0));
        assert!(ray.contains(&origin));
        assert!(!origin.contains(&ray));
        let open_ray = ray.clone().with_inequality(ineq(&[1, 0], 0), true);
        assert!(open_ray.same_closure(&ray));
    }

    #[test]
    fn tripod_is_pure() {
        let rays = [
            RationalPolyhedron::universe(2)
                .with_equality(ineq(&[1, -1], 0))
                .with_inequality(ineq(&[-1, 0], 0), false),
            RationalPolyhedron::universe(2)
                .with_equality(ineq(&[1, 0], 0))
                .with_inequality(ineq(&[0, 1], 0), false),
            RationalPolyhedron::universe(2)
                .with_equality(ineq(&[0, 1], 0))
                .with_inequality(ineq(&[1, 0], 0), false),
        ];
        let origin = RationalPolyhedron::universe(2)
            .with_equality(ineq(&[1, 0], 0))
            .with_equality(ineq(&[0, 1], 0));
        let mut cells = rays.to_vec();
        cells.push(origin);
        cells.push(rays[0].clone());
        let c = PolyhedralComplex::from_cells(2, cells);
        assert_eq!(c.len(), 4);
        let s = c.dimension_and_purity();
        assert_eq!((s.dim, s.pure, s.maximal), (1, true, vec![0, 1, 2]));
        let single = PolyhedralComplex::from_cells(2, vec![c.cells[3].clone()]);
        let s = single.dimension_and_purity();
        assert_eq!((s.dim, s.pure), (0, true));
    }
}
