//! Human-readable descriptions of weight cells, in the style
//! `ω₁₂ = ω₂₂ < 0` or `1 < ω₁₁ < 2, ω₂₁ = ω₁₁/2 + 1/2`.

use std::cmp::Ordering;

use lextrop::polyhedra::{Constraint, RationalPolyhedron};
use lextrop::rational::fmt_q;
use lextrop::Q;
use num_traits::{One, Signed, Zero};

const SUBSCRIPTS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];

/// Name of the weight coordinate of variable `i` at stage `s` (both 1-based).
pub fn omega(i: usize, s: usize) -> String {
    if i < 10 && s < 10 {
        format!("ω{}{}", SUBSCRIPTS[i], SUBSCRIPTS[s])
    } else {
        format!("ω_{{{i},{s}}}")
    }
}

pub fn stage_names(m: usize, s: usize) -> Vec<String> {
    (1..=m).map(|i| omega(i, s)).collect()
}

/// `sum coeffs[k] * names[k] + constant`, e.g. `ω₁₁/2 + 1/2`.
pub fn linear(coeffs: &[Q], names: &[String], constant: &Q) -> String {
    let mut pieces: Vec<(bool, String)> = Vec::new();
    for (c, name) in coeffs.iter().zip(names) {
        if c.is_zero() {
            continue;
        }
        let a = c.abs();
        let numer = a.numer().clone();
        let denom = a.denom().clone();
        let mut body = if numer.is_one() { name.clone() } else { format!("{numer}{name}") };
        if !denom.is_one() {
            body = format!("{body}/{denom}");
        }
        pieces.push((c.is_negative(), body));
    }
    if !constant.is_zero() || pieces.is_empty() {
        pieces.push((constant.is_negative(), fmt_q(&constant.abs())));
    }
    let mut out = String::new();
    for (k, (neg, body)) in pieces.iter().enumerate() {
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(body);
    }
    out
}

struct Bound {
    value: Q,
    strict: bool,
}

/// Keeps the tighter of two bounds; `upper` flips the comparison.
fn tighten(slot: &mut Option<Bound>, value: Q, strict: bool, upper: bool) {
    match slot {
        None => *slot = Some(Bound { value, strict }),
        Some(b) => {
            let ord = value.cmp(&b.value);
            let better = if upper { ord == Ordering::Less } else { ord == Ordering::Greater };
            if better {
                *b = Bound { value, strict };
            } else if ord == Ordering::Equal {
                b.strict |= strict;
            }
        }
    }
}

/// Constraints of `cell` in terms of its free coordinates: pivots are taken
/// from the rightmost columns of the affine hull.
pub fn describe(cell: &RationalPolyhedron, names: &[String]) -> String {
    let k = cell.ambient_dim();
    let order: Vec<usize> = (0..k).rev().collect();
    let Some((hull, pivots)) = cell.affine_hull_pivoting(&order) else {
        return "∅".to_string();
    };
    let free: Vec<usize> = (0..k).filter(|c| !pivots.contains(c)).collect();
    // Each pivot as an affine function of the free coordinates.
    let exprs: Vec<(usize, Vec<Q>, Q)> = hull
        .iter()
        .zip(&pivots)
        .map(|(row, &p)| {
            let coeffs: Vec<Q> = (0..k)
                .map(|c| if free.contains(&c) { -row.normal[c].clone() } else { Q::zero() })
                .collect();
            (p, coeffs, row.offset.clone())
        })
        .collect();
    let mut reduced: Vec<(Vec<Q>, Q, bool)> = Vec::new();
    for (c, &strict) in cell.inequalities.iter().zip(&cell.strict) {
        let (coeffs, rhs) = substitute(c, &exprs, k);
        if coeffs.iter().all(Zero::is_zero) {
            continue;
        }
        let lead = coeffs.iter().find(|x| !x.is_zero()).expect("nonzero").abs();
        let coeffs: Vec<Q> = coeffs.iter().map(|x| x / &lead).collect();
        let rhs = rhs / &lead;
        if let Some(e) = reduced.iter_mut().find(|e| e.0 == coeffs) {
            match rhs.cmp(&e.1) {
                Ordering::Greater => *e = (coeffs, rhs, strict),
                Ordering::Equal => e.2 |= strict,
                Ordering::Less => {}
            }
        } else {
            reduced.push((coeffs, rhs, strict));
        }
    }

    // (sort key, text)
    let mut pieces: Vec<(usize, String)> = Vec::new();
    let mut consumed: Vec<usize> = Vec::new();
    if free.len() == 1 {
        let f = free[0];
        let mut chain = vec![f];
        for (p, coeffs, off) in &exprs {
            if off.is_zero() && coeffs[f].is_one() && coeffs.iter().filter(|x| !x.is_zero()).count() == 1 {
                chain.push(*p);
                consumed.push(*p);
            }
        }
        chain.sort();
        let chain_text = chain.iter().map(|&c| names[c].clone()).collect::<Vec<_>>().join(" = ");
        let (mut lo, mut hi) = (None, None);
        for (coeffs, rhs, strict) in &reduced {
            let a = &coeffs[f];
            let v = rhs / a;
            if a.is_positive() {
                tighten(&mut lo, v, *strict, false);
            } else {
                tighten(&mut hi, v, *strict, true);
            }
        }
        let rel = |b: &Bound| if b.strict { "<" } else { "≤" };
        let text = match (&lo, &hi) {
            (Some(l), Some(h)) => format!("{} {} {chain_text} {} {}", fmt_q(&l.value), rel(l), rel(h), fmt_q(&h.value)),
            (Some(l), None) => format!("{chain_text} {} {}", if l.strict { ">" } else { "≥" }, fmt_q(&l.value)),
            (None, Some(h)) => format!("{chain_text} {} {}", rel(h), fmt_q(&h.value)),
            (None, None) if chain.len() > 1 => chain_text,
            (None, None) => format!("{chain_text} ∈ R"),
        };
        pieces.push((chain[0], text));
    }
    // Constant pivots, grouped by value.
    let mut constants: Vec<(Q, Vec<usize>)> = Vec::new();
    for (p, coeffs, off) in &exprs {
        if consumed.contains(p) || !coeffs.iter().all(Zero::is_zero) {
            continue;
        }
        match constants.iter_mut().find(|(v, _)| v == off) {
            Some((_, ps)) => ps.push(*p),
            None => constants.push((off.clone(), vec![*p])),
        }
    }
    for (v, mut ps) in constants {
        ps.sort();
        consumed.extend(&ps);
        let lhs = ps.iter().map(|&c| names[c].clone()).collect::<Vec<_>>().join(" = ");
        pieces.push((ps[0], format!("{lhs} = {}", fmt_q(&v))));
    }
    for (p, coeffs, off) in &exprs {
        if !consumed.contains(p) {
            pieces.push((*p, format!("{} = {}", names[*p], linear(coeffs, names, off))));
        }
    }
    if free.len() >= 2 {
        if reduced.is_empty() && exprs.is_empty() {
            let all = free.iter().map(|&c| names[c].clone()).collect::<Vec<_>>().join(", ");
            pieces.push((free[0], format!("{all} ∈ R")));
        }
        for (coeffs, rhs, strict) in &reduced {
            let first = coeffs.iter().position(|x| !x.is_zero()).unwrap_or(0);
            let rel = if *strict { ">" } else { "≥" };
            pieces.push((first, format!("{} {rel} {}", linear(coeffs, names, &Q::zero()), fmt_q(rhs))));
        }
    }
    pieces.sort_by_key(|p| p.0);
    pieces.into_iter().map(|p| p.1).collect::<Vec<_>>().join(", ")
}

/// Rewrites `<n, x> >= b` with every pivot replaced by its expression.
fn substitute(c: &Constraint, exprs: &[(usize, Vec<Q>, Q)], k: usize) -> (Vec<Q>, Q) {
    let mut coeffs = c.normal.clone();
    let mut rhs = c.offset.clone();
    for (p, e, off) in exprs {
        let np = coeffs[*p].clone();
        if np.is_zero() {
            continue;
        }
        coeffs[*p] = Q::zero();
        for j in 0..k {
            coeffs[j] += &np * &e[j];
        }
        rhs -= &np * off;
    }
    (coeffs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lextrop::rational::{q, qf};

    fn names(s: usize) -> Vec<String> {
        stage_names(2, s)
    }

    #[test]
    fn chain_with_bound() {
        let c = RationalPolyhedron::universe(2)
            .with_equality(Constraint::from_ints(&[1, -1], 0))
            .with_inequality(Constraint::from_ints(&[-1, 0], 0), true);
        assert_eq!(describe(&c, &names(2)), "ω₁₂ = ω₂₂ < 0");
    }

    #[test]
    fn interval_and_expression() {
        let c = RationalPolyhedron::universe(2)
            .with_equality(Constraint::new(vec![q(-1), q(2)], q(1)))
            .with_inequality(Constraint::from_ints(&[1, 0], 1), true)
            .with_inequality(Constraint::from_ints(&[-1, 0], -2), true);
        assert_eq!(describe(&c, &names(1)), "1 < ω₁₁ < 2, ω₂₁ = ω₁₁/2 + 1/2");
    }

    #[test]
    fn points_and_free() {
        let p = RationalPolyhedron::universe(2)
            .with_equality(Constraint::from_ints(&[1, 0], 0))
            .with_equality(Constraint::from_ints(&[0, 1], 0));
        assert_eq!(describe(&p, &names(1)), "ω₁₁ = ω₂₁ = 0");
        let line = RationalPolyhedron::universe(2).with_equality(Constraint::from_ints(&[1, 0], 2));
        assert_eq!(describe(&line, &names(1)), "ω₁₁ = 2, ω₂₁ ∈ R");
        assert_eq!(describe(&RationalPolyhedron::universe(2), &names(1)), "ω₁₁, ω₂₁ ∈ R");
    }

    #[test]
    fn expressions() {
        let n = names(1);
        assert_eq!(linear(&[qf(3, 2), q(-1)], &n, &q(0)), "3ω₁₁/2 - ω₂₁");
        assert_eq!(linear(&[q(0), q(0)], &n, &qf(-1, 2)), "-1/2");
    }
}
