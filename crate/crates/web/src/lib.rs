//! Browser demo bindings. Every export takes plain strings and returns a
//! JSON document, `{"ok": ...}` on success or `{"error": "..."}`, so the
//! same functions are testable natively.

use std::sync::Arc;

use lextrop::newton::{build_polytope, root_valuations};
use lextrop::parse::{infer_variables, parse_polynomial, parse_tower, parse_weight, symbols};
use lextrop::plot::clipped_vertices;
use lextrop::tropical::{flatten, iterated_trop, membership as member, TropOptions};
use lextrop::{json, Q};
use num_traits::ToPrimitive;
use serde_json::{json as jv, Value};
use wasm_bindgen::prelude::*;

fn respond(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => jv!({ "ok": v }).to_string(),
        Err(e) => jv!({ "error": e }).to_string(),
    }
}

fn float(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Tropical curve of a bivariate polynomial over `QQ((t))`, clipped to
/// `[-bound, bound]^2`: one entry per cell with its outline and the
/// initial form on it.
#[wasm_bindgen]
pub fn tropical_curve(polynomial: &str, bound: i32) -> String {
    respond(curve(polynomial, bound.clamp(1, 1000) as i64))
}

fn curve(text: &str, bound: i64) -> Result<Value, String> {
    let tower = Arc::new(parse_tower("QQ((t))").expect("valid tower"));
    let vars = vec!["x".to_string(), "y".to_string()];
    let f = parse_polynomial(text, &tower, &vars).map_err(|e| e.to_string())?;
    let flat = flatten(&iterated_trop(&f, &TropOptions::default()).map_err(|e| e.to_string())?);
    let cells: Vec<Value> = flat
        .cells
        .iter()
        .map(|c| {
            let pts: Vec<[f64; 2]> = clipped_vertices(&c.closed, bound)
                .iter()
                .map(|v| [float(&v[0]), float(&v[1])])
                .collect();
            jv!({ "dim": c.dim, "points": pts, "form": c.initial_form.display_with(&vars) })
        })
        .collect();
    Ok(jv!({ "polynomial": f.display_with(&vars), "cells": cells }))
}

/// Lifted points, lower edges and root valuations of a univariate
/// polynomial over the given tower.
#[wasm_bindgen]
pub fn newton_polygon(polynomial: &str, tower: &str) -> String {
    respond(newton(polynomial, tower))
}

fn newton(text: &str, tower: &str) -> Result<Value, String> {
    let tower = Arc::new(parse_tower(tower).map_err(|e| e.to_string())?);
    let mut vars = symbols(text, &tower).map_err(|e| e.to_string())?;
    if vars.len() > 1 {
        return Err(format!("expected one variable, found {}", vars.join(", ")));
    }
    if vars.is_empty() {
        vars.push("z".into());
    }
    let f = parse_polynomial(text, &tower, &vars).map_err(|e| e.to_string())?;
    let poly = build_polytope(&f).map_err(|e| e.to_string())?;
    let points: Vec<Value> = poly
        .generators
        .iter()
        .map(|g| jv!({ "i": g.point[0], "value": json::rationals(&g.value) }))
        .collect();
    let roots = root_valuations(&f).map_err(|e| e.to_string())?;
    let edges = poly.lower_hull_univariate().map_err(|e| e.to_string())?;
    Ok(jv!({
        "polynomial": f.display_with(&vars),
        "points": points,
        "roots": json::roots(&roots, &edges),
    }))
}

/// Membership of a weight in the tropical variety, with the initial form.
#[wasm_bindgen]
pub fn membership(polynomial: &str, tower: &str, weight: &str) -> String {
    respond(check_member(polynomial, tower, weight))
}

fn check_member(text: &str, tower: &str, weight: &str) -> Result<Value, String> {
    let tower = Arc::new(parse_tower(tower).map_err(|e| e.to_string())?);
    let vars = infer_variables(text, &tower).map_err(|e| e.to_string())?;
    let f = parse_polynomial(text, &tower, &vars).map_err(|e| e.to_string())?;
    let w = parse_weight(weight, f.nvars(), tower.height()).map_err(|e| e.to_string())?;
    let m = member(&f, &w).map_err(|e| e.to_string())?;
    Ok(json::membership(&m, &vars))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(s: &str) -> Value {
        let v: Value = serde_json::from_str(s).unwrap();
        v["ok"].clone()
    }

    #[test]
    fn tripod() {
        let v = ok(&tropical_curve("x + y + 1", 2));
        let cells = v["cells"].as_array().unwrap();
        assert_eq!(cells.iter().filter(|c| c["dim"] == 1).count(), 3);
    }

    #[test]
    fn errors_are_reported() {
        let v: Value = serde_json::from_str(&membership("x + w", "QQ((t))", "0")).unwrap();
        assert!(v["error"].as_str().unwrap().contains("unknown symbol"));
    }
}
