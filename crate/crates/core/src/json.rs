//! JSON views of the main objects. Rationals are written as strings
//! (`"3/2"`) so that no precision is lost.

use serde_json::{json, Value};

use crate::kpolynomial::KPolynomial;
use crate::newton::{RootValuations, SlopeEdge};
use crate::polyhedra::{Constraint, PolyhedralComplex, RationalPolyhedron};
use crate::rational::{fmt_q, Q};
use crate::tropical::{Convention, FiberedComplex, Flattened, Membership, RootWitness, TropReport};
use crate::valuegroup::LexValue;

pub fn rationals(v: &[Q]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(fmt_q(x))).collect())
}

pub fn lex_value(v: &LexValue) -> Value {
    match v.coords() {
        Some(c) => rationals(c),
        None => Value::String("inf".into()),
    }
}

fn constraint(c: &Constraint) -> Value {
    let mut row: Vec<Q> = c.normal.clone();
    row.push(c.offset.clone());
    rationals(&row)
}

/// `{"equalities": [[a.., b]..], "inequalities": .., "strict": .., "dim": d}`
/// where each row `[a.., b]` reads `<a, x> = b` or `<a, x> >= b` (`>` when
/// strict).
pub fn polyhedron(p: &RationalPolyhedron) -> Value {
    json!({
        "equalities": p.equalities.iter().map(constraint).collect::<Vec<_>>(),
        "inequalities": p.inequalities.iter().map(constraint).collect::<Vec<_>>(),
        "strict": p.strict,
        "dim": p.dimension(),
    })
}

pub fn complex(c: &PolyhedralComplex, conv: Convention) -> Value {
    let summary = c.dimension_and_purity();
    json!({
        "dim": summary.dim,
        "pure": summary.pure,
        "maximal": summary.maximal,
        "cells": c.cells.iter().map(|p| polyhedron(&conv.polyhedron(p))).collect::<Vec<_>>(),
        "faces": c.adjacency,
    })
}

pub fn fibered(fc: &FiberedComplex, vars: &[String], conv: Convention) -> Value {
    let cells: Vec<Value> = fc
        .cells
        .iter()
        .map(|c| {
            json!({
                "cell": polyhedron(&conv.polyhedron(&c.cell)),
                "tied": c.tied,
                "witness": rationals(&conv.point(&c.witness)),
                "residual": c.residual.display_with(vars),
                "children": c.child.as_ref().map(|ch| fibered(ch, vars, conv)),
            })
        })
        .collect();
    json!({ "stage": fc.stage, "cells": cells })
}

pub fn flattened(fl: &Flattened, vars: &[String], conv: Convention) -> Value {
    let cells: Vec<Value> = fl
        .cells
        .iter()
        .map(|c| {
            json!({
                "path": c.path,
                "dim": c.dim,
                "stage_dims": c.stage_dims,
                "cell": polyhedron(&conv.polyhedron(&c.closed)),
                "initial_form": c.initial_form.display_with(vars),
            })
        })
        .collect();
    json!({ "ambient_dim": fl.ambient_dim, "cells": cells })
}

pub fn report(r: &TropReport, f: &KPolynomial, vars: &[String], conv: Convention) -> Value {
    json!({
        "tower": f.tower().to_string(),
        "polynomial": f.display_with(vars),
        "variables": vars,
        "convention": conv.name(),
        "n": r.n,
        "m": r.m,
        "dim": r.dim,
        "expected_dim": r.expected_dim,
        "pure": r.pure,
        "maximal": r.maximal,
        "violating": r.violating,
        "fibered": fibered(&r.fibered, vars, conv),
        "flattened": flattened(&r.flattened, vars, conv),
    })
}

pub fn edge(e: &SlopeEdge) -> Value {
    json!({
        "from": [e.from.0, rationals(&e.from.1)],
        "to": [e.to.0, rationals(&e.to.1)],
        "slope": rationals(&e.slope),
        "multiplicity": e.multiplicity,
    })
}

pub fn roots(r: &RootValuations, edges: &[SlopeEdge]) -> Value {
    json!({
        "roots": r.roots.iter().map(|(v, k)| json!({"valuation": lex_value(v), "multiplicity": k})).collect::<Vec<_>>(),
        "zero_root_multiplicity": r.lowest_exponent,
        "edges": edges.iter().map(edge).collect::<Vec<_>>(),
    })
}

pub fn membership(m: &Membership, vars: &[String]) -> Value {
    json!({
        "member": m.member,
        "value": lex_value(&m.evaluation.value),
        "achievers": m.evaluation.achievers,
        "initial_form": m.initial_form.display_with(vars),
    })
}

pub fn root_witness(w: &RootWitness, vars: &[String]) -> Value {
    json!({
        "b": w.b,
        "normalized": w.normalized.display_with(vars),
        "univariate": w.univariate.display_with(&["z".to_string()]),
        "edge": edge(&w.edge),
    })
}
