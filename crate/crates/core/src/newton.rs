//! Extended Newton polytopes and valuations of roots.
//!
//! For a univariate `f = sum a_i z^i` over the tower, the lifted points
//! `(i, val(a_i))` live in `Z x Q^n`. Since `Q^n` with the lexicographic
//! order is an ordered `Q`-vector space, the usual lower-hull sweep works
//! verbatim once slopes `(v' - v) / (i' - i)` are compared lexicographically.
//! Each bounded edge of slope `s` and horizontal length `k` accounts for
//! exactly `k` roots of valuation `-s`.

use std::cmp::Ordering;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::kpolynomial::KPolynomial;
use crate::rational::Q;
use crate::valuegroup::{lex_cmp_slices, LexValue};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub point: Vec<i64>,
    pub value: Vec<Q>,
}

/// Generators of the polytope; the recession cone (every valuation
/// coordinate may increase) is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedNewtonPolytope {
    pub nvars: usize,
    pub height: usize,
    pub generators: Vec<Generator>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeEdge {
    pub from: (i64, Vec<Q>),
    pub to: (i64, Vec<Q>),
    pub slope: Vec<Q>,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootValuations {
    /// `(valuation, multiplicity)` in edge order, i.e. decreasing root
    /// valuation.
    pub roots: Vec<(LexValue, u64)>,
    /// Power of `z` stripped before the hull was taken.
    pub lowest_exponent: i64,
}

pub fn build_polytope(f: &KPolynomial) -> Result<ExtendedNewtonPolytope> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("Newton polytope"));
    }
    let generators = f
        .terms()
        .map(|(d, c)| Generator {
            point: d.clone(),
            value: c.valuation().coords().expect("nonzero coefficient").to_vec(),
        })
        .collect();
    Ok(ExtendedNewtonPolytope {
        nvars: f.nvars(),
        height: f.tower().height(),
        generators,
    })
}

/// `(v' - v) / (i' - i)`.
pub fn generalized_slope(a: &(i64, Vec<Q>), b: &(i64, Vec<Q>)) -> Vec<Q> {
    let di = Q::from_integer(BigInt::from(b.0 - a.0));
    a.1.iter().zip(&b.1).map(|(x, y)| (y - x) / &di).collect()
}

impl ExtendedNewtonPolytope {
    /// Bounded lower edges in increasing abscissa; slopes strictly increase.
    pub fn lower_hull_univariate(&self) -> Result<Vec<SlopeEdge>> {
        if self.nvars != 1 {
            return Err(Error::NotUnivariate(self.nvars));
        }
        if self.generators.len() < 2 {
            return Err(Error::TooFewGenerators);
        }
        let mut pts: Vec<(i64, Vec<Q>)> = self
            .generators
            .iter()
            .map(|g| (g.point[0], g.value.clone()))
            .collect();
        pts.sort_by_key(|p| p.0);
        let mut hull: Vec<(i64, Vec<Q>)> = Vec::with_capacity(pts.len());
        for p in pts {
            while hull.len() >= 2 {
                let k = hull.len();
                let s1 = generalized_slope(&hull[k - 2], &hull[k - 1]);
                let s2 = generalized_slope(&hull[k - 1], &p);
                // The middle point is on or above the chord: drop it.
                if lex_cmp_slices(&s1, &s2) != Ordering::Less {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        Ok(hull
            .windows(2)
            .map(|w| SlopeEdge {
                slope: generalized_slope(&w[0], &w[1]),
                multiplicity: (w[1].0 - w[0].0) as u64,
                from: w[0].clone(),
                to: w[1].clone(),
            })
            .collect())
    }
}

/// Valuations of the roots of a univariate polynomial with multiplicities.
pub fn root_valuations(f: &KPolynomial) -> Result<RootValuations> {
    if f.nvars() != 1 {
        return Err(Error::NotUnivariate(f.nvars()));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("roots"));
    }
    let support = f.support();
    let lowest_exponent = support[0][0];
    if support.len() < 2 {
        return Err(Error::Constant);
    }
    let hull = build_polytope(f)?.lower_hull_univariate()?;
    let roots = hull
        .into_iter()
        .map(|e| {
            (
                LexValue::Finite(e.slope.iter().map(|x| -x).collect()),
                e.multiplicity,
            )
        })
        .collect();
    Ok(RootValuations {
        roots,
        lowest_exponent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kpolynomial::rational_tower;
    use crate::parse::parse_polynomial;
    use crate::rational::{q, qf};

    fn upoly(text: &str, n: usize) -> KPolynomial {
        parse_polynomial(text, &rational_tower(n), &["z".to_string()]).unwrap()
    }

    fn gen(i: i64, v: &[Q]) -> Generator {
        Generator {
            point: vec![i],
            value: v.to_vec(),
        }
    }

    fn poly_from(gens: Vec<Generator>) -> ExtendedNewtonPolytope {
        ExtendedNewtonPolytope {
            nvars: 1,
            height: 2,
            generators: gens,
        }
    }

    #[test]
    fn generators() {
        let f = upoly("1 - (t1^-1 + t1^-2)*z + t1^-3*z^2", 2);
        let p = build_polytope(&f).unwrap();
        let vals: Vec<(i64, Vec<Q>)> = p
            .generators
            .iter()
            .map(|g| (g.point[0], g.value.clone()))
            .collect();
        assert_eq!(
            vals,
            vec![
                (0, vec![q(0), q(0)]),
                (1, vec![q(-2), q(0)]),
                (2, vec![q(-3), q(0)])
            ]
        );
        let g = parse_polynomial("t1*x + 1", &rational_tower(2), &["x".into()]).unwrap();
        assert_eq!(build_polytope(&g).unwrap().generators[1].value, vec![q(1), q(0)]);
    }

    #[test]
    fn hull_edges() {
        let edges = poly_from(vec![
            gen(0, &[q(0), q(0)]),
            gen(1, &[q(-2), q(0)]),
            gen(2, &[q(-3), q(0)]),
        ])
        .lower_hull_univariate()
        .unwrap();
        let slopes: Vec<(Vec<Q>, u64)> = edges.iter().map(|e| (e.slope.clone(), e.multiplicity)).collect();
        assert_eq!(slopes, vec![(vec![q(-2), q(0)], 1), (vec![q(-1), q(0)], 1)]);

        let collinear = poly_from(vec![
            gen(0, &[q(0), q(0)]),
            gen(1, &[q(1), q(0)]),
            gen(2, &[q(2), q(0)]),
        ])
        .lower_hull_univariate()
        .unwrap();
        assert_eq!(collinear.len(), 1);
        assert_eq!((collinear[0].slope.clone(), collinear[0].multiplicity), (vec![q(1), q(0)], 2));

        let two = poly_from(vec![gen(0, &[q(0), q(0)]), gen(2, &[q(0), q(-1)])])
            .lower_hull_univariate()
            .unwrap();
        assert_eq!((two[0].slope.clone(), two[0].multiplicity), (vec![q(0), qf(-1, 2)], 2));

        assert_eq!(
            poly_from(vec![gen(0, &[q(0), q(0)])]).lower_hull_univariate(),
            Err(Error::TooFewGenerators)
        );
    }

    #[test]
    fn root_valuation_examples() {
        let f = upoly("(1 - z/t1)*(1 - z/t1^2)", 2);
        let r = root_valuations(&f).unwrap();
        assert_eq!(
            r.roots,
            vec![(LexValue::from_ints(&[2, 0]), 1), (LexValue::from_ints(&[1, 0]), 1)]
        );
        let g = upoly("(1 - z/t2)^2", 2);
        assert_eq!(root_valuations(&g).unwrap().roots, vec![(LexValue::from_ints(&[0, 1]), 2)]);
        let h = upoly("1 + z", 2);
        assert_eq!(root_valuations(&h).unwrap().roots, vec![(LexValue::zero(2), 1)]);
        let shifted = upoly("z^3 + z^4", 2);
        assert_eq!(root_valuations(&shifted).unwrap().lowest_exponent, 3);
        assert_eq!(root_valuations(&upoly("t1*z^2", 2)), Err(Error::Constant));
    }
}
