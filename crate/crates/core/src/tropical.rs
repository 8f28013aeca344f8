//! Tropical evaluation, membership and the fibered tropicalization.
//!
//! Tropicalization over a height-n tower is computed one uniformizer at a
//! time, outermost first. At stage `s` the polynomial is viewed through the
//! `t_s`-order of its coefficients only, which makes it an ordinary rank-one
//! tropical hypersurface in `Q^m` (the coordinates `w_{1s}, .., w_{ms}`). Its
//! tie locus is cut into relatively open strata on which the set of minimal
//! terms is constant; over each stratum the degenerate polynomial is fixed,
//! and the next stage recurses on it. A root-to-leaf path is a product of
//! strata, i.e. a relatively open cell of `Q^{nm}` in variable-major order
//! `(w_11, .., w_1n, w_21, ..)`.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::kpolynomial::{find_generic_b, KPolynomial, WeightMatrix};
use crate::newton::{build_polytope, SlopeEdge};
use crate::polyhedra::{ComplexSummary, Constraint, PolyhedralComplex, RationalPolyhedron, WitnessRule};
use crate::rational::{qf, Q};
use crate::valuegroup::{min_lex, LexValue};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalEvaluation {
    pub value: LexValue,
    pub achievers: Vec<Vec<i64>>,
}

/// `min_d val(a_d) + <d, u>` together with every support point attaining it.
pub fn trop_eval(f: &KPolynomial, u: &WeightMatrix) -> Result<TropicalEvaluation> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("tropical evaluation"));
    }
    let support = f.support();
    let weights = support
        .iter()
        .map(|d| f.weight_of_term(d, u))
        .collect::<Result<Vec<_>>>()?;
    let (value, idx) = min_lex(&weights)?;
    Ok(TropicalEvaluation {
        value,
        achievers: idx.into_iter().map(|i| support[i].clone()).collect(),
    })
}

/// Both membership routes for one weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub evaluation: TropicalEvaluation,
    pub initial_form: KPolynomial,
}

/// Decides `w ∈ Trop(V(f))` by the tie condition and by the initial form,
/// and fails if the two disagree.
pub fn membership(f: &KPolynomial, w: &WeightMatrix) -> Result<Membership> {
    let evaluation = trop_eval(f, w)?;
    let init = f.initial_form(w)?;
    let by_ties = evaluation.achievers.len() >= 2;
    let by_form = !init.form().is_monomial();
    if by_ties != by_form {
        return Err(Error::Inconsistent(format!(
            "tie test says {by_ties} but initial form {} says {by_form}",
            init.form()
        )));
    }
    if init.normalization != evaluation.value {
        return Err(Error::Inconsistent(format!(
            "initial form normalization {} differs from tropical value {}",
            init.normalization, evaluation.value
        )));
    }
    Ok(Membership {
        member: by_ties,
        evaluation,
        initial_form: init.form().clone(),
    })
}

pub fn is_in_trop(f: &KPolynomial, w: &WeightMatrix) -> Result<bool> {
    membership(f, w).map(|m| m.member)
}

/// Knobs for the fibered computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropOptions {
    /// Upper bound on the number of fibered cells.
    pub max_cells: usize,
    pub witness: WitnessRule,
}

impl Default for TropOptions {
    fn default() -> Self {
        TropOptions {
            max_cells: 100_000,
            witness: WitnessRule::default(),
        }
    }
}

/// A relatively open cell of a rank-one tie locus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    /// Indices into the point list, ascending.
    pub tied: Vec<usize>,
    pub cell: RationalPolyhedron,
}

/// `{u : v_d + <d,u>` equal on `tied`, and `<=` (or `<`) off it`}`.
fn tie_cell(points: &[(Vec<i64>, Q)], tied: &[usize], strict: bool) -> RationalPolyhedron {
    let m = points[0].0.len();
    let (d0, v0) = &points[tied[0]];
    let diff = |e: &[i64]| -> Vec<Q> {
        e.iter()
            .zip(d0)
            .map(|(a, b)| Q::from_integer((a - b).into()))
            .collect()
    };
    let mut cell = RationalPolyhedron::universe(m);
    for &i in &tied[1..] {
        let (d, v) = &points[i];
        cell.add_equality(Constraint::new(diff(d), v0 - v));
    }
    for (i, (e, v)) in points.iter().enumerate() {
        if !tied.contains(&i) {
            cell.add_inequality(Constraint::new(diff(e), v0 - v), strict);
        }
    }
    cell
}

/// All nonempty strata with at least two tied points. Subsets are grown one
/// point at a time; a subset whose closed tie cell is empty has no nonempty
/// supersets, so it is not extended.
pub fn tie_strata(points: &[(Vec<i64>, Q)], max_cells: usize) -> Result<Vec<Stratum>> {
    let mut out = Vec::new();
    if points.len() < 2 {
        return Ok(out);
    }
    let mut frontier: Vec<Vec<usize>> = (0..points.len())
        .map(|i| vec![i])
        .filter(|s| tie_cell(points, s, false).is_feasible(false).is_some())
        .collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            let last = *s.last().expect("nonempty subset");
            for j in last + 1..points.len() {
                let mut t = s.clone();
                t.push(j);
                if tie_cell(points, &t, false).is_feasible(false).is_none() {
                    continue;
                }
                let open = tie_cell(points, &t, true);
                if open.is_feasible(true).is_some() {
                    if out.len() >= max_cells {
                        return Err(Error::TooManyCells(max_cells));
                    }
                    out.push(Stratum {
                        tied: t.clone(),
                        cell: open,
                    });
                }
                next.push(t);
            }
        }
        frontier = next;
    }
    Ok(out)
}

/// Classical tropical hypersurface of a polynomial over a height-one tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank1Hypersurface {
    pub complex: PolyhedralComplex,
    /// Support points minimal on the relative interior of each cell.
    pub tied: Vec<Vec<Vec<i64>>>,
}

/// Tie cells of every pair of support points, deduplicated by closure.
pub fn rank1_hypersurface(g: &KPolynomial) -> Result<Rank1Hypersurface> {
    let h = g.tower().height();
    if h != 1 {
        return Err(Error::StageMismatch { stage: 1, height: h });
    }
    if g.is_zero() {
        return Err(Error::ZeroPolynomial("tropical hypersurface"));
    }
    let m = g.nvars();
    let points = stage_points(g, 1);
    let mut cells: Vec<RationalPolyhedron> = Vec::new();
    let mut dims = Vec::new();
    let mut tied = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let cell = tie_cell(&points, &[i, j], false);
            let dim = cell.dimension();
            if dim < 0 {
                continue;
            }
            if cells
                .iter()
                .zip(&dims)
                .any(|(c, &d): (&RationalPolyhedron, &i64)| d == dim && c.same_closure(&cell))
            {
                continue;
            }
            let implicit = cell.implicit_equalities();
            let others: Vec<usize> = (0..points.len()).filter(|&k| k != i && k != j).collect();
            let mut set: BTreeSet<Vec<i64>> = [points[i].0.clone(), points[j].0.clone()].into();
            for k in implicit {
                set.insert(points[others[k]].0.clone());
            }
            tied.push(set.into_iter().collect());
            cells.push(cell);
            dims.push(dim);
        }
    }
    Ok(Rank1Hypersurface {
        complex: PolyhedralComplex::from_distinct_cells(m, cells, dims),
        tied,
    })
}

/// `(d, t_s-order of a_d)` for every support point.
fn stage_points(f: &KPolynomial, s: usize) -> Vec<(Vec<i64>, Q)> {
    f.terms()
        .map(|(d, c)| (d.clone(), c.order_at(s).expect("nonzero coefficient")))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberedCell {
    /// Relatively open stratum in the stage coordinates `Q^m`.
    pub cell: RationalPolyhedron,
    pub tied: Vec<Vec<i64>>,
    pub witness: Vec<Q>,
    /// Degenerate polynomial over the height-`(stage - 1)` tower.
    pub residual: KPolynomial,
    pub child: Option<FiberedComplex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberedComplex {
    pub stage: usize,
    pub nvars: usize,
    pub cells: Vec<FiberedCell>,
}

impl FiberedComplex {
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Total number of cells at every stage.
    pub fn node_count(&self) -> usize {
        self.cells
            .iter()
            .map(|c| 1 + c.child.as_ref().map_or(0, FiberedComplex::node_count))
            .sum()
    }
}

/// Stage-by-stage tropicalization of a hypersurface.
pub fn iterated_trop(f: &KPolynomial, opts: &TropOptions) -> Result<FiberedComplex> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("tropicalization"));
    }
    let n = f.tower().height();
    if n == 0 {
        return Err(Error::Unsupported("tower of height zero".into()));
    }
    let mut budget = opts.max_cells;
    fibered_stage(f, n, opts, &mut budget)
}

fn fibered_stage(
    f: &KPolynomial,
    s: usize,
    opts: &TropOptions,
    budget: &mut usize,
) -> Result<FiberedComplex> {
    let points = stage_points(f, s);
    let strata = tie_strata(&points, opts.max_cells)?;
    let alt_rule = WitnessRule {
        bias: qf(1, 3),
        rotation: opts.witness.rotation + 1,
    };
    let mut cells = Vec::with_capacity(strata.len());
    for st in strata {
        if *budget == 0 {
            return Err(Error::TooManyCells(opts.max_cells));
        }
        *budget -= 1;
        let witness = st
            .cell
            .feasible_with(true, &opts.witness)
            .ok_or_else(|| Error::Inconsistent("stratum lost its witness".into()))?;
        let residual = f.stage_initial(s, &witness)?.poly;
        let tied: Vec<Vec<i64>> = st.tied.iter().map(|&i| points[i].0.clone()).collect();
        if residual.support() != tied {
            return Err(Error::Inconsistent(format!(
                "stage {s} residual {residual} does not match the tie set"
            )));
        }
        let other = st
            .cell
            .feasible_with(true, &alt_rule)
            .ok_or_else(|| Error::Inconsistent("stratum lost its witness".into()))?;
        if !residual.equal_up_to_monomial(&f.stage_initial(s, &other)?.poly) {
            return Err(Error::Inconsistent(format!(
                "stage {s} residual is not constant on its stratum"
            )));
        }
        if residual.is_monomial() {
            continue;
        }
        let child = if s > 1 {
            Some(fibered_stage(&residual, s - 1, opts, budget)?)
        } else {
            None
        };
        cells.push(FiberedCell {
            cell: st.cell,
            tied,
            witness,
            residual,
            child,
        });
    }
    Ok(FiberedComplex {
        stage: s,
        nvars: f.nvars(),
        cells,
    })
}

/// One root-to-leaf path of the fibered complex, as a cell of `Q^{nm}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatCell {
    /// Relatively open product of strata.
    pub stratum: RationalPolyhedron,
    pub closed: RationalPolyhedron,
    /// Cell index chosen at stage `n`, `n-1`, .., `1`.
    pub path: Vec<usize>,
    pub stage_dims: Vec<i64>,
    pub dim: i64,
    pub initial_form: KPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flattened {
    pub ambient_dim: usize,
    pub cells: Vec<FlatCell>,
}

impl Flattened {
    pub fn max_dim(&self) -> i64 {
        self.cells.iter().map(|c| c.dim).max().unwrap_or(-1)
    }

    /// The closed complex with its face relation.
    pub fn complex(&self) -> PolyhedralComplex {
        PolyhedralComplex::from_distinct_cells(
            self.ambient_dim,
            self.cells.iter().map(|c| c.closed.clone()).collect(),
            self.cells.iter().map(|c| c.dim).collect(),
        )
    }
}

/// Position of `w_{i,s}` (0-based `i`, 1-based `s`) in variable-major order.
pub fn flat_index(i: usize, s: usize, n: usize) -> usize {
    i * n + (s - 1)
}

pub fn flatten(fc: &FiberedComplex) -> Flattened {
    let n = fc.stage;
    let m = fc.nvars;
    let mut cells = Vec::new();
    let mut path = Vec::new();
    let mut dims = Vec::new();
    walk(
        fc,
        n,
        m,
        RationalPolyhedron::universe(n * m),
        &mut path,
        &mut dims,
        &mut cells,
    );
    Flattened {
        ambient_dim: n * m,
        cells,
    }
}

fn walk(
    fc: &FiberedComplex,
    n: usize,
    m: usize,
    acc: RationalPolyhedron,
    path: &mut Vec<usize>,
    dims: &mut Vec<i64>,
    out: &mut Vec<FlatCell>,
) {
    let positions: Vec<usize> = (0..m).map(|i| flat_index(i, fc.stage, n)).collect();
    for (k, c) in fc.cells.iter().enumerate() {
        let here = acc.intersect(&c.cell.embed(n * m, &positions));
        path.push(k);
        dims.push(c.cell.dimension());
        match &c.child {
            Some(child) => walk(child, n, m, here, path, dims, out),
            None => {
                let dim = dims.iter().sum();
                out.push(FlatCell {
                    closed: here.closure(),
                    stratum: here,
                    path: path.clone(),
                    stage_dims: dims.clone(),
                    dim,
                    initial_form: c.residual.clone(),
                });
            }
        }
        path.pop();
        dims.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropReport {
    pub n: usize,
    pub m: usize,
    pub dim: i64,
    pub expected_dim: i64,
    pub pure: bool,
    pub maximal: Vec<usize>,
    /// Maximal cells of dimension below the top dimension.
    pub violating: Vec<usize>,
    pub fibered: FiberedComplex,
    pub flattened: Flattened,
    pub complex: PolyhedralComplex,
}

impl TropReport {
    pub fn dimension_law_holds(&self) -> bool {
        self.dim == self.expected_dim
    }
}

pub fn trop_report(f: &KPolynomial, opts: &TropOptions) -> Result<TropReport> {
    let fibered = iterated_trop(f, opts)?;
    let flattened = flatten(&fibered);
    let complex = flattened.complex();
    let ComplexSummary { dim, pure, maximal } = complex.dimension_and_purity();
    let violating = maximal
        .iter()
        .copied()
        .filter(|&i| complex.dims[i] < dim)
        .collect();
    let n = f.tower().height();
    let m = f.nvars();
    Ok(TropReport {
        n,
        m,
        dim,
        expected_dim: (n * m) as i64 - n as i64,
        pure,
        maximal,
        violating,
        fibered,
        flattened,
        complex,
    })
}

/// Certificate that a weight carries a root: after moving the weight to the
/// origin, a generic monomial substitution gives a univariate polynomial
/// whose Newton polygon has an edge of slope zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootWitness {
    pub b: Vec<i64>,
    /// `f(t^w x)` divided by its minimal coefficient valuation.
    pub normalized: KPolynomial,
    pub univariate: KPolynomial,
    pub edge: SlopeEdge,
}

pub fn root_witness(f: &KPolynomial, w: &WeightMatrix) -> Result<RootWitness> {
    let member = membership(f, w)?;
    if !member.member {
        return Err(Error::NotInTrop);
    }
    let Some(value) = member.evaluation.value.coords() else {
        return Err(Error::Inconsistent("infinite tropical value".into()));
    };
    let shift: Vec<Q> = value.iter().map(|x| -x).collect();
    let normalized = f.twist(w)?.uniformizer_shift(&shift)?;
    let b = find_generic_b(&normalized.support(), f.nvars());
    let univariate = normalized.univariate_reduce(&b)?;
    let edges = build_polytope(&univariate)?.lower_hull_univariate()?;
    let edge = edges
        .into_iter()
        .find(|e| e.slope.iter().all(Zero::is_zero))
        .ok_or_else(|| {
            Error::Inconsistent(format!("no slope-zero edge for {univariate} although w is a tie"))
        })?;
    Ok(RootWitness {
        b,
        normalized,
        univariate,
        edge,
    })
}

/// Sign convention for reported weights. Internally the weight of a term is
/// `val(a_d) + <d, w>`; the minus convention reports `-w` instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    #[default]
    Plus,
    PaperMinus,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::Plus => "plus",
            Convention::PaperMinus => "paper-minus",
        }
    }

    pub fn is_minus(self) -> bool {
        self == Convention::PaperMinus
    }

    pub fn weight(self, w: &WeightMatrix) -> WeightMatrix {
        if self.is_minus() { w.negated() } else { w.clone() }
    }

    pub fn point(self, x: &[Q]) -> Vec<Q> {
        if self.is_minus() { x.iter().map(|v| -v).collect() } else { x.to_vec() }
    }

    pub fn polyhedron(self, p: &RationalPolyhedron) -> RationalPolyhedron {
        if self.is_minus() { p.negated() } else { p.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kpolynomial::rational_tower;
    use crate::parse::parse_polynomial;
    use crate::rational::q;

    fn poly(text: &str, n: usize, m: usize) -> KPolynomial {
        let vars = crate::kpolynomial::default_variables(m);
        parse_polynomial(text, &rational_tower(n), &vars).unwrap()
    }

    fn w(rows: &[&[i64]]) -> WeightMatrix {
        WeightMatrix::from_ints(rows).unwrap()
    }

    #[test]
    fn evaluation_and_membership() {
        let f = poly("x + y + 1", 2, 2);
        let e = trop_eval(&f, &w(&[&[0, 0], &[0, 0]])).unwrap();
        assert_eq!(e.value, LexValue::zero(2));
        assert_eq!(e.achievers.len(), 3);
        let e = trop_eval(&f, &w(&[&[1, 1], &[0, 0]])).unwrap();
        assert_eq!(e.achievers, vec![vec![0, 0], vec![0, 1]]);
        assert!(is_in_trop(&f, &w(&[&[1, 1], &[0, 0]])).unwrap());
        let m = membership(&f, &w(&[&[-1, -1], &[0, 0]])).unwrap();
        assert!(!m.member);
        assert_eq!(m.initial_form.to_string(), "x");

        let g = poly("(x - t1)*(x - t1^2) + y^2", 2, 2);
        let e = trop_eval(&g, &w(&[&[2, 0], &[2, 0]])).unwrap();
        assert_eq!(trop_eval(&g, &w(&[&[2, 0], &[1, 0]])).unwrap().achievers, vec![vec![0, 2]]);
        assert!(e.achievers.contains(&vec![1, 0]) && e.achievers.contains(&vec![0, 0]));
    }

    #[test]
    fn rank_one_examples() {
        let r = rank1_hypersurface(&poly("x + y + 1", 1, 2)).unwrap();
        let s = r.complex.dimension_and_purity();
        assert_eq!((s.dim, s.pure), (1, true));
        assert_eq!(r.complex.dims.iter().filter(|&&d| d == 1).count(), 3);
        let line = rank1_hypersurface(&poly("x + 1", 1, 2)).unwrap();
        assert_eq!(line.complex.dims, vec![1]);
        let point = rank1_hypersurface(&poly("x^2 + x + 1", 1, 1)).unwrap();
        assert_eq!(point.complex.dims, vec![0]);
        assert!(rank1_hypersurface(&poly("t1*x", 1, 1)).unwrap().complex.is_empty());
        assert!(matches!(
            rank1_hypersurface(&poly("x + 1", 2, 1)),
            Err(Error::StageMismatch { .. })
        ));
    }

    #[test]
    fn tripod_over_tripod() {
        let r = trop_report(&poly("x + y + 1", 2, 2), &TropOptions::default()).unwrap();
        assert_eq!((r.dim, r.expected_dim, r.pure), (2, 2, true));
        let forms: BTreeSet<String> = r.flattened.cells.iter().map(|c| c.initial_form.to_string()).collect();
        for f in ["x + y", "x + y + 1", "x + 1", "y + 1"] {
            assert!(forms.contains(f), "{f} missing from {forms:?}");
        }
        for c in &r.flattened.cells {
            assert_eq!(c.dim, c.stratum.dimension());
            assert_eq!(c.dim, c.stage_dims.iter().sum::<i64>());
            let wit = c.stratum.is_feasible(true).unwrap();
            let wm = WeightMatrix::from_flat(&wit, 2, 2).unwrap();
            let m = membership(&poly("x + y + 1", 2, 2), &wm).unwrap();
            assert!(m.member);
            assert!(m.initial_form.equal_up_to_monomial(&c.initial_form));
        }
    }

    #[test]
    fn impure_example() {
        let f = poly("(x - t1)*(x - t1^2) + y^2", 2, 2);
        let r = trop_report(&f, &TropOptions::default()).unwrap();
        assert_eq!(r.dim, 2);
        assert!(!r.pure);
        let forms: Vec<KPolynomial> = r.flattened.cells.iter().map(|c| c.initial_form.clone()).collect();
        for text in ["x^2 + y^2", "x^2 - x + y^2", "x^2 - x", "-x + y^2", "x - 1"] {
            let g = poly(text, 0, 2);
            assert!(forms.iter().any(|h| h.equal_up_to_monomial(&g)), "{text}");
        }
        // The maximal segment (t, 0, (t + 1)/2, 0), 1 <= t <= 2.
        let seg = r
            .violating
            .iter()
            .map(|&i| &r.complex.cells[i])
            .find(|c| c.contains_point(&[q(1), q(0), q(1), q(0)], false))
            .expect("segment");
        assert!(seg.contains_point(&[q(2), q(0), crate::rational::qf(3, 2), q(0)], false));
        assert!(!seg.contains_point(&[q(3), q(0), q(2), q(0)], false));
    }

    #[test]
    fn binomial_and_monomial() {
        let r = trop_report(&poly("x + 1", 2, 1), &TropOptions::default()).unwrap();
        assert_eq!((r.dim, r.expected_dim, r.pure), (0, 0, true));
        assert_eq!(r.flattened.cells.len(), 1);
        let r = trop_report(&poly("t2*x", 2, 1), &TropOptions::default()).unwrap();
        assert!(r.flattened.cells.is_empty());
        assert_eq!(r.dim, -1);
    }

    #[test]
    fn witnesses() {
        let f = poly("x + y + 1", 2, 2);
        let rw = root_witness(&f, &w(&[&[0, 0], &[0, 0]])).unwrap();
        assert_eq!(rw.b, vec![1, 2]);
        assert_eq!(rw.univariate.to_string(), "x^2 + x + 1");
        assert_eq!(rw.edge.multiplicity, 2);
        let g = poly("x + t1", 2, 1);
        let rw = root_witness(&g, &w(&[&[1, 0]])).unwrap();
        assert_eq!(rw.edge.slope, vec![q(0), q(0)]);
        assert_eq!(root_witness(&poly("x + 1", 2, 1), &w(&[&[1, 0]])), Err(Error::NotInTrop));
    }

    #[test]
    fn too_many_cells() {
        let opts = TropOptions { max_cells: 2, ..TropOptions::default() };
        assert!(matches!(
            iterated_trop(&poly("x + y + 1", 2, 2), &opts),
            Err(Error::TooManyCells(2))
        ));
    }
}
