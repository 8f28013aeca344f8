//! Plain-text plot data: clipped cell outlines in two-dimensional
//! projections, and lifted Newton points. One record per line, fields
//! separated by spaces, so the output feeds gnuplot or a few lines of
//! script directly.

use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::kpolynomial::KPolynomial;
use crate::linalg::solve_square;
use crate::newton::build_polytope;
use crate::polyhedra::{Constraint, RationalPolyhedron};
use crate::rational::{q, Q};

/// Largest ambient dimension handled by vertex enumeration.
pub const MAX_PLOT_DIM: usize = 4;

/// Vertices of `p ∩ [-bound, bound]^D` (closure taken).
pub fn clipped_vertices(p: &RationalPolyhedron, bound: i64) -> Vec<Vec<Q>> {
    let d = p.ambient_dim();
    let mut boxed = p.closure();
    for i in 0..d {
        let mut e = vec![q(0); d];
        e[i] = q(1);
        boxed.add_inequality(Constraint::new(e.clone(), q(-bound)), false);
        e[i] = q(-1);
        boxed.add_inequality(Constraint::new(e, q(-bound)), false);
    }
    let Some(hull) = boxed.affine_hull() else {
        return Vec::new();
    };
    let need = d - hull.len();
    let mut out: Vec<Vec<Q>> = Vec::new();
    let ineqs = &boxed.inequalities;
    let mut pick: Vec<usize> = (0..need).collect();
    if need > ineqs.len() {
        return out;
    }
    loop {
        let rows: Vec<Vec<Q>> = hull
            .iter()
            .chain(pick.iter().map(|&i| &ineqs[i]))
            .map(|c| {
                let mut r = c.normal.clone();
                r.push(c.offset.clone());
                r
            })
            .collect();
        if let Some(x) = solve_square(&rows, d) {
            if boxed.contains_point(&x, false) && !out.contains(&x) {
                out.push(x);
            }
        }
        if !next_combination(&mut pick, ineqs.len()) {
            break;
        }
    }
    out
}

fn next_combination(pick: &mut [usize], n: usize) -> bool {
    let k = pick.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if pick[i] < n - k + i {
            pick[i] += 1;
            for j in i + 1..k {
                pick[j] = pick[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Coordinate pairs drawn for a `D`-dimensional complex built from `n`
/// stages: all four mixed pairs when `D = 4`, otherwise every pair.
pub fn projections(dim: usize, n: usize) -> Vec<(usize, usize)> {
    if dim == 4 && n == 2 {
        // (w11, w21), (w12, w22), (w11, w12), (w21, w22)
        return vec![(0, 2), (1, 3), (0, 1), (2, 3)];
    }
    let mut out = Vec::new();
    for a in 0..dim {
        for b in a + 1..dim {
            out.push((a, b));
        }
    }
    out
}

/// Axis label of flat coordinate `k`: `w<i><s>`.
pub fn axis_label(k: usize, n: usize) -> String {
    format!("w{}{}", k / n + 1, k % n + 1)
}

fn f(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Points in counter-clockwise hull order (collinear points kept at the ends).
fn hull_2d(mut pts: Vec<(Q, Q)>) -> Vec<(Q, Q)> {
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let cross = |o: &(Q, Q), a: &(Q, Q), b: &(Q, Q)| {
        (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
    };
    let mut lower: Vec<(Q, Q)> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= q(0) {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<(Q, Q)> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= q(0) {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// One `cell` record per (cell, projection):
/// `cell <index> dim <d> proj <label_a> <label_b> x1 y1 x2 y2 ..`,
/// the points forming the projected outline in order.
pub fn complex_plot_data(cells: &[RationalPolyhedron], n: usize, bound: i64) -> Result<String> {
    let Some(first) = cells.first() else {
        return Ok(String::new());
    };
    let dim = first.ambient_dim();
    if dim > MAX_PLOT_DIM {
        return Err(Error::Unsupported(format!(
            "plot data needs ambient dimension at most {MAX_PLOT_DIM}, got {dim}"
        )));
    }
    let mut out = String::new();
    let projs = if dim == 1 { vec![(0, 0)] } else { projections(dim, n) };
    for (idx, cell) in cells.iter().enumerate() {
        let verts = clipped_vertices(cell, bound);
        let d = cell.dimension();
        for &(a, b) in &projs {
            let pts: Vec<(Q, Q)> = verts
                .iter()
                .map(|v| (v[a].clone(), if a == b { q(0) } else { v[b].clone() }))
                .collect();
            let outline = hull_2d(pts);
            let lb = if a == b { "0".to_string() } else { axis_label(b, n) };
            write!(out, "cell {idx} dim {d} proj {} {lb}", axis_label(a, n)).expect("string write");
            for (x, y) in &outline {
                write!(out, " {} {}", f(x), f(y)).expect("string write");
            }
            out.push('\n');
        }
    }
    Ok(out)
}

/// `point <i> <v_n> <v_(n-1)>` for each lifted Newton point, then
/// `edge <i> <j> <slope..>` for each lower edge. A missing second
/// coordinate (height one) is written as 0.
pub fn newton_plot_data(f: &KPolynomial) -> Result<String> {
    let poly = build_polytope(f)?;
    let mut out = String::new();
    for g in &poly.generators {
        let n = g.value.len();
        let top = g.value.last().map(self::f).unwrap_or(0.0);
        let next = if n >= 2 { self::f(&g.value[n - 2]) } else { 0.0 };
        writeln!(out, "point {} {top} {next}", g.point[0]).expect("string write");
    }
    if poly.generators.len() >= 2 {
        for e in poly.lower_hull_univariate()? {
            let slope: Vec<String> = e.slope.iter().map(crate::rational::fmt_q).collect();
            writeln!(out, "edge {} {} {}", e.from.0, e.to.0, slope.join(" ")).expect("string write");
        }
    }
    Ok(out)
}
