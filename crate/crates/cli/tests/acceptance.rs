//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use lextrop::field::BaseField;
use lextrop::hlf::{FieldElement, FieldTower, TowerRef};
use lextrop::kpolynomial::{default_variables, rational_tower};
use lextrop::newton::root_valuations;
use lextrop::parse::parse_polynomial;
use lextrop::polyhedra::{Constraint, PolyhedralComplex, RationalPolyhedron};
use lextrop::rational::{q, Q};
use lextrop::tropical::{flatten, iterated_trop, membership, rank1_hypersurface, root_witness, TropOptions};
use lextrop::{KPolynomial, LexValue, WeightMatrix};
use lextrop_cli::run;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn table_json(poly: &str) -> Result<(Vec<(String, String)>, Duration), String> {
    let start = Instant::now();
    let out = run(["lextrop", "table", "--tower", "QQ((t1))((t2))", "--output", "json", poly]);
    let elapsed = start.elapsed();
    ensure(out.code == 0, || format!("exit {}: {}", out.code, out.stderr))?;
    let rows: Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
    let rows = rows
        .as_array()
        .ok_or("table output is not an array")?
        .iter()
        .filter(|r| r["stage"] == 1)
        .map(|r| {
            (
                r["condition"].as_str().unwrap_or_default().to_string(),
                r["degeneration"].as_str().unwrap_or_default().to_string(),
            )
        })
        .collect();
    Ok((rows, elapsed))
}

fn residue_form(text: &str) -> KPolynomial {
    parse_polynomial(text, &rational_tower(0), &default_variables(2)).expect("form parses")
}

/// Every expected (condition, form) pair occurs among the leaf rows, with
/// forms compared up to a monomial factor.
fn missing_rows(rows: &[(String, String)], expected: &[(&str, &str)]) -> Vec<String> {
    expected
        .iter()
        .filter(|(cond, form)| {
            let want = residue_form(form);
            !rows
                .iter()
                .any(|(c, f)| c == cond && residue_form(f).equal_up_to_monomial(&want))
        })
        .map(|(c, f)| format!("({c}; {f})"))
        .collect()
}

fn criterion_1() -> Check {
    let expected = [
        ("ω₁₂ = ω₂₂ < 0, ω₁₁ = ω₂₁", "x + y"),
        ("ω₁₂ = ω₂₂ = 0, ω₁₁ = ω₂₁ < 0", "x + y"),
        ("ω₁₂ = ω₂₂ = 0, ω₁₁ = ω₂₁ = 0", "x + y + 1"),
        ("ω₁₂ = ω₂₂ = 0, ω₁₁ = 0, ω₂₁ > 0", "x + 1"),
        ("ω₁₂ = ω₂₂ = 0, ω₁₁ > 0, ω₂₁ = 0", "y + 1"),
        ("ω₁₂ = 0, ω₂₂ > 0, ω₁₁ = 0, ω₂₁ ∈ R", "x + 1"),
        ("ω₁₂ > 0, ω₂₂ = 0, ω₁₁ ∈ R, ω₂₁ = 0", "y + 1"),
    ];
    let (rows, elapsed) = table_json("x + y + 1")?;
    let missing = missing_rows(&rows, &expected);
    ensure(missing.is_empty(), || format!("missing rows {missing:?}"))?;
    ensure(rows.len() == expected.len(), || {
        format!("{} leaf rows, expected {}", rows.len(), expected.len())
    })?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("{} rows matched in {elapsed:?}", rows.len()))
}

fn criterion_2(notes: &mut Vec<String>) -> Check {
    let (rows, elapsed) = table_json("(x - t1)*(x - t1^2) + y^2")?;
    let forms = ["x^2 + y^2", "x^2 - x + y^2", "x^2 - x", "-x + y^2", "x - 1"];
    let absent: Vec<&str> = forms
        .iter()
        .copied()
        .filter(|f| !rows.iter().any(|(_, g)| residue_form(g).equal_up_to_monomial(&residue_form(f))))
        .collect();
    ensure(absent.is_empty(), || format!("leaf forms missing: {absent:?}"))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    let corrected = ("ω₁₂ = ω₂₂ = 0, 1 < ω₁₁ < 2, ω₂₁ = ω₁₁/2 + 1/2", "-x + y^2");
    notes.push(format!(
        "criterion 2: corrected interval row {:?} present: {}",
        corrected.0,
        missing_rows(&rows, &[corrected]).is_empty()
    ));
    let literal = ("ω₁₂ = ω₂₂ = 0, 1 < ω₁₁ < 2, ω₂₁ = ω₁₁/2", "-x + y^2");
    let missing = missing_rows(&rows, &[literal]);
    let computed: Vec<&String> = rows.iter().filter(|(_, f)| f == "-x + y^2").map(|(c, _)| c).collect();
    ensure(missing.is_empty(), || {
        format!("all five forms found, but the interval row {:?} is absent; computed {computed:?}", literal.0)
    })?;
    Ok(format!("all leaf forms and the interval row matched in {elapsed:?}"))
}

fn segment(offset: i64) -> RationalPolyhedron {
    // x1 - 2 x3 = offset, x2 = 0, x4 = 0, 1 <= x1 <= 2
    RationalPolyhedron::universe(4)
        .with_equality(Constraint::from_ints(&[1, 0, -2, 0], offset))
        .with_equality(Constraint::from_ints(&[0, 1, 0, 0], 0))
        .with_equality(Constraint::from_ints(&[0, 0, 0, 1], 0))
        .with_inequality(Constraint::from_ints(&[1, 0, 0, 0], 1), false)
        .with_inequality(Constraint::from_ints(&[-1, 0, 0, 0], -2), false)
}

fn criterion_3(notes: &mut Vec<String>) -> Check {
    let f = parse_polynomial("(x - t1)*(x - t1^2) + y^2", &rational_tower(2), &default_variables(2))
        .map_err(|e| e.to_string())?;
    let r = lextrop::tropical::trop_report(&f, &TropOptions::default()).map_err(|e| e.to_string())?;
    ensure(r.dim == 2, || format!("dimension {}", r.dim))?;
    ensure(!r.pure, || "complex reported pure".into())?;
    let has = |target: &RationalPolyhedron| {
        r.maximal
            .iter()
            .any(|&i| r.complex.dims[i] == 1 && r.complex.cells[i].same_closure(target))
    };
    notes.push(format!(
        "criterion 3: maximal segment x1 - 2x3 = -1, x2 = x4 = 0, 1 <= x1 <= 2 present: {}",
        has(&segment(-1))
    ));
    ensure(has(&segment(0)), || {
        "dim 2 and impure, but no maximal 1-cell equals {x1 = 2x3, x2 = 0, x4 = 0, 1 <= x1 <= 2}".into()
    })?;
    Ok("dim 2, impure, segment found".into())
}

fn random_element(rng: &mut StdRng, tower: &TowerRef, max_terms: usize) -> FieldElement {
    let n = tower.height();
    loop {
        let k = rng.gen_range(1..=max_terms);
        let terms: Vec<(Vec<i64>, Q)> = (0..k)
            .map(|_| {
                let e: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
                let c = loop {
                    let c = rng.gen_range(-3..=3);
                    if c != 0 {
                        break c;
                    }
                };
                (e, q(c))
            })
            .collect();
        let x = FieldElement::from_cover_terms(tower, terms).expect("valid terms");
        if !x.is_zero() {
            return x;
        }
    }
}

fn random_poly(rng: &mut StdRng, n: usize, m: usize, max_terms: usize) -> KPolynomial {
    let tower = rational_tower(n);
    loop {
        let k = rng.gen_range(2..=max_terms);
        let terms: Vec<(Vec<i64>, FieldElement)> = (0..k)
            .map(|_| {
                let d: Vec<i64> = (0..m).map(|_| rng.gen_range(0..=2)).collect();
                (d, random_element(rng, &tower, 2))
            })
            .collect();
        let f = KPolynomial::from_terms(&tower, m, terms).expect("valid terms");
        if f.len() >= 2 {
            return f;
        }
    }
}

fn criterion_4() -> Check {
    let mut rng = StdRng::seed_from_u64(4);
    let mut count = 0;
    for n in 1..=3 {
        for m in 1..=3 {
            let max_terms = if n * m >= 6 { 4 } else { 5 };
            for _ in 0..6 {
                let f = random_poly(&mut rng, n, m, max_terms);
                let fc = iterated_trop(&f, &TropOptions::default()).map_err(|e| format!("{f}: {e}"))?;
                let flat = flatten(&fc);
                let expected = (n * (m - 1)) as i64;
                ensure(flat.max_dim() == expected, || {
                    format!("{f} over height {n}: max dim {} != {expected}", flat.max_dim())
                })?;
                for c in &flat.cells {
                    ensure(c.dim == c.stratum.dimension(), || {
                        format!("{f}: cell {:?} dim {} but stratum dim {}", c.path, c.dim, c.stratum.dimension())
                    })?;
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} hypersurfaces, n, m in 1..=3"))
}

/// Lexicographic order with the last coordinate most significant.
fn lex(a: &[Q], b: &[Q]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

fn criterion_5() -> Check {
    let mut rng = StdRng::seed_from_u64(5);
    let vars = vec!["z".to_string()];
    for trial in 0..240 {
        let n = 1 + trial % 3;
        let tower = rational_tower(n);
        let k = rng.gen_range(1..=4);
        let mut f = KPolynomial::constant(FieldElement::one(&tower), 1);
        let mut expected: BTreeMap<Vec<Q>, u64> = BTreeMap::new();
        for _ in 0..k {
            let e: Vec<Q> = (0..n).map(|_| q(rng.gen_range(-3..=3))).collect();
            let c = loop {
                let c = rng.gen_range(-3..=3);
                if c != 0 {
                    break c;
                }
            };
            // 1 - z / (c t^e)
            let inv = FieldElement::monomial(&tower, &(q(1) / q(c)), &e.iter().map(|x| -x).collect::<Vec<_>>())
                .map_err(|e| e.to_string())?;
            let factor = KPolynomial::from_terms(
                &tower,
                1,
                [(vec![0], FieldElement::one(&tower)), (vec![1], inv.neg())],
            )
            .map_err(|e| e.to_string())?;
            f = f.mul(&factor).map_err(|e| e.to_string())?;
            *expected.entry(e).or_default() += 1;
        }
        let r = root_valuations(&f).map_err(|e| format!("{}: {e}", f.display_with(&vars)))?;
        let mut got: Vec<(Vec<Q>, u64)> = r
            .roots
            .iter()
            .map(|(v, k)| (v.coords().expect("finite").to_vec(), *k))
            .collect();
        got.sort_by(|a, b| lex(&a.0, &b.0));
        let mut want: Vec<(Vec<Q>, u64)> = expected.into_iter().collect();
        want.sort_by(|a, b| lex(&a.0, &b.0));
        ensure(got == want && r.lowest_exponent == 0, || {
            format!("{}: got {got:?}, want {want:?}", f.display_with(&vars))
        })?;
    }
    Ok("240 products over heights 1..=3".into())
}

/// Brute-force tropical value: min over terms of val(a_d) + <d, w>.
fn brute_value(f: &KPolynomial, w: &WeightMatrix) -> (Vec<Q>, Vec<Vec<i64>>) {
    let mut best: Option<(Vec<Q>, Vec<Vec<i64>>)> = None;
    for (d, c) in f.terms() {
        let mut v: Vec<Q> = c
            .terms()
            .into_iter()
            .map(|(e, _)| e)
            .min_by(|a, b| lex(a, b))
            .expect("nonzero coefficient");
        for (i, &di) in d.iter().enumerate() {
            for (s, x) in w.rows()[i].iter().enumerate() {
                v[s] += q(di) * x;
            }
        }
        best = match best {
            None => Some((v, vec![d.clone()])),
            Some((b, mut ds)) => match lex(&v, &b) {
                Ordering::Less => Some((v, vec![d.clone()])),
                Ordering::Equal => {
                    ds.push(d.clone());
                    Some((b, ds))
                }
                Ordering::Greater => Some((b, ds)),
            },
        };
    }
    best.expect("nonzero polynomial")
}

fn criterion_6() -> Check {
    let mut rng = StdRng::seed_from_u64(6);
    let mut members = 0;
    let total = 600;
    for trial in 0..total {
        let n = 1 + trial % 2;
        let m = 1 + (trial / 2) % 2;
        let f = random_poly(&mut rng, n, m, 4);
        let w = if trial % 3 == 0 {
            let rows: Vec<Vec<Q>> = (0..m)
                .map(|_| (0..n).map(|_| Q::new(rng.gen_range(-4..=4).into(), 2.into())).collect())
                .collect();
            WeightMatrix::new(rows).map_err(|e| e.to_string())?
        } else {
            let flat = flatten(&iterated_trop(&f, &TropOptions::default()).map_err(|e| e.to_string())?);
            let cell = &flat.cells[rng.gen_range(0..flat.cells.len())];
            let pt = cell.stratum.is_feasible(true).ok_or("empty stratum")?;
            WeightMatrix::from_flat(&pt, m, n).map_err(|e| e.to_string())?
        };
        let mem = membership(&f, &w).map_err(|e| format!("{f} at {w}: {e}"))?;
        let (value, achievers) = brute_value(&f, &w);
        ensure(mem.evaluation.value == LexValue::Finite(value.clone()), || {
            format!("{f} at {w}: value {} vs brute force {value:?}", mem.evaluation.value)
        })?;
        ensure(mem.member == (achievers.len() >= 2), || format!("{f} at {w}: tie routes disagree"))?;
        if mem.member {
            members += 1;
            let rw = root_witness(&f, &w).map_err(|e| format!("{f} at {w}: {e}"))?;
            ensure(rw.edge.slope.iter().all(|x| *x == q(0)), || format!("{f} at {w}: nonzero slope"))?;
        }
    }
    Ok(format!("{total} pairs, {members} members, all witnessed"))
}

fn covered(a: &PolyhedralComplex, b: &PolyhedralComplex) -> bool {
    a.cells.iter().all(|c| b.cells.iter().any(|d| d.contains(c)))
}

fn same_maximal(a: &PolyhedralComplex, b: &PolyhedralComplex) -> bool {
    let ma = a.dimension_and_purity().maximal;
    let mb = b.dimension_and_purity().maximal;
    ma.len() == mb.len()
        && ma
            .iter()
            .all(|&i| mb.iter().any(|&j| a.cells[i].same_closure(&b.cells[j])))
}

fn criterion_7() -> Check {
    let mut rng = StdRng::seed_from_u64(7);
    let count = 60;
    for _ in 0..count {
        let f = random_poly(&mut rng, 1, 2, 5);
        let rank1 = rank1_hypersurface(&f).map_err(|e| e.to_string())?.complex;
        let fibered = flatten(&iterated_trop(&f, &TropOptions::default()).map_err(|e| e.to_string())?).complex();
        ensure(covered(&rank1, &fibered) && covered(&fibered, &rank1), || format!("{f}: supports differ"))?;
        ensure(same_maximal(&rank1, &fibered), || format!("{f}: maximal cells differ"))?;
    }
    let g = parse_polynomial("x + y + 1", &rational_tower(1), &default_variables(2)).map_err(|e| e.to_string())?;
    let tripod = rank1_hypersurface(&g).map_err(|e| e.to_string())?.complex;
    let flat = flatten(&iterated_trop(&g, &TropOptions::default()).map_err(|e| e.to_string())?).complex();
    let origin = [q(0), q(0)];
    for cx in [&tripod, &flat] {
        let s = cx.dimension_and_purity();
        let rays: Vec<usize> = s.maximal.iter().copied().filter(|&i| cx.dims[i] == 1).collect();
        ensure(s.maximal.len() == 3 && rays.len() == 3, || format!("{} maximal cells", s.maximal.len()))?;
        ensure(rays.iter().all(|&i| cx.cells[i].contains_point(&origin, false)), || "rays miss the origin".into())?;
    }
    let expected = [
        RationalPolyhedron::universe(2)
            .with_equality(Constraint::from_ints(&[1, -1], 0))
            .with_inequality(Constraint::from_ints(&[-1, 0], 0), false),
        RationalPolyhedron::universe(2)
            .with_equality(Constraint::from_ints(&[1, 0], 0))
            .with_inequality(Constraint::from_ints(&[0, 1], 0), false),
        RationalPolyhedron::universe(2)
            .with_equality(Constraint::from_ints(&[0, 1], 0))
            .with_inequality(Constraint::from_ints(&[1, 0], 0), false),
    ];
    ensure(
        expected.iter().all(|e| tripod.cells.iter().any(|c| c.same_closure(e))),
        || "tripod rays differ".into(),
    )?;
    Ok(format!("{count} bivariate polynomials; x + y + 1 gives three rays at the origin"))
}

fn oracle_valuation(x: &FieldElement) -> LexValue {
    x.terms()
        .into_iter()
        .map(|(e, _)| e)
        .min_by(|a, b| lex(a, b))
        .map_or(LexValue::Inf, LexValue::Finite)
}

fn lex_ord(a: &LexValue, b: &LexValue) -> Ordering {
    match (a.coords(), b.coords()) {
        (None, None) => Ordering::Equal,
        (None, _) => Ordering::Greater,
        (_, None) => Ordering::Less,
        (Some(x), Some(y)) => lex(x, y),
    }
}

fn criterion_8() -> Check {
    let mut rng = StdRng::seed_from_u64(8);
    let count = 1200;
    let mut distinct = 0;
    for trial in 0..count {
        let n = 1 + trial % 3;
        let base = if trial % 4 == 3 { BaseField::Prime(5) } else { BaseField::Rationals };
        let tower: TowerRef = Arc::new(FieldTower::standard(base, n));
        let a = random_element(&mut rng, &tower, 3);
        let b = if trial % 10 == 0 {
            a.neg()
        } else {
            random_element(&mut rng, &tower, 3)
        };
        let (va, vb) = (oracle_valuation(&a), oracle_valuation(&b));
        ensure(a.valuation() == va && b.valuation() == vb, || format!("valuation of {a} or {b}"))?;
        let prod = a.mul(&b).map_err(|e| e.to_string())?;
        let vsum = va.add(&vb).map_err(|e| e.to_string())?;
        ensure(prod.valuation() == vsum, || format!("v({a} * {b}) != v(a) + v(b)"))?;
        let sum = a.add(&b).map_err(|e| e.to_string())?;
        let vs = sum.valuation();
        let lo = if lex_ord(&va, &vb) == Ordering::Greater { &vb } else { &va };
        ensure(lex_ord(&vs, lo) != Ordering::Less, || format!("v({a} + {b}) < min"))?;
        if va != vb {
            distinct += 1;
            ensure(vs == *lo, || format!("v({a} + {b}) != min for distinct valuations"))?;
        }
    }
    Ok(format!("{count} pairs ({distinct} with distinct valuations)"))
}

fn main() {
    let start = Instant::now();
    let mut notes = Vec::new();
    let results: Vec<(&str, Check)> = vec![
        ("1 Table 1 reproduction", criterion_1()),
        ("2 Table 2 reproduction", criterion_2(&mut notes)),
        ("3 Impurity of the Table 2 complex", criterion_3(&mut notes)),
        ("4 Dimension law", criterion_4()),
        ("5 Root valuations of products", criterion_5()),
        ("6 Tie and initial-form membership agree", criterion_6()),
        ("7 Rank-one regression", criterion_7()),
        ("8 Valuation axioms", criterion_8()),
    ];
    let elapsed = start.elapsed();
    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    for n in &notes {
        println!("note: {n}");
    }
    let budget = Duration::from_secs(300);
    println!(
        "{} suite runtime {elapsed:?} (limit {budget:?})",
        if elapsed < budget { "PASS" } else { "FAIL" }
    );
    if elapsed >= budget {
        failed += 1;
    }
    println!("{} of {} criteria passed", results.len() - failed.min(results.len()), results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
