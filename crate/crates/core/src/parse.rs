//! Text input: field towers, polynomials and weight matrices.
//!
//! Polynomial grammar:
//!
//! ```text
//! expr     := ['+' | '-'] term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := '-' unary | power
//! power    := atom ['^' exponent]
//! exponent := ['-'] INT | '(' ['-'] INT ['/' INT] ')'
//! atom     := INT | IDENT | '(' expr ')'
//! ```
//!
//! Division and negative powers are only allowed for monomials. A fractional
//! exponent is only allowed on a pure uniformizer power and passes to a
//! ramified cover.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::field::BaseField;
use crate::hlf::{FieldElement, FieldTower, TowerRef};
use crate::kpolynomial::{KPolynomial, WeightMatrix};
use crate::rational::{parse_q, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub token: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {} (at '{}')",
            self.line, self.column, self.message, self.token
        )
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = std::result::Result<T, ParseError>;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    text: String,
    line: usize,
    column: usize,
}

fn tokenize(src: &str) -> PResult<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            Tok::Int(s.parse().expect("digits"))
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if "+-*/^()".contains(c) {
            i += 1;
            Tok::Sym(c)
        } else if c == '−' {
            i += 1;
            Tok::Sym('-')
        } else {
            return Err(ParseError {
                line: l0,
                column: c0,
                token: c.to_string(),
                message: "unexpected character".into(),
            });
        };
        col += i - start;
        out.push(Token {
            tok,
            text: chars[start..i].iter().collect(),
            line: l0,
            column: c0,
        });
    }
    out.push(Token {
        tok: Tok::End,
        text: "<end>".into(),
        line,
        column: col,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    tower: &'a TowerRef,
    vars: &'a [String],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, at: &Token, message: impl Into<String>) -> ParseError {
        ParseError {
            line: at.line,
            column: at.column,
            token: at.text.clone(),
            message: message.into(),
        }
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn expect_sym(&mut self, c: char) -> PResult<()> {
        if self.is_sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(self.peek(), format!("expected '{c}'")))
        }
    }

    fn lift_err<T>(&self, at: &Token, r: crate::error::Result<T>) -> PResult<T> {
        r.map_err(|e| self.error(at, e.to_string()))
    }

    fn binary(
        &self,
        at: &Token,
        a: KPolynomial,
        b: KPolynomial,
        op: fn(&KPolynomial, &KPolynomial) -> crate::error::Result<KPolynomial>,
    ) -> PResult<KPolynomial> {
        let (a, b) = self.lift_err(at, a.unify(&b))?;
        self.lift_err(at, op(&a, &b))
    }

    fn expr(&mut self) -> PResult<KPolynomial> {
        let mut negate = false;
        if self.is_sym('+') || self.is_sym('-') {
            negate = self.bump().tok == Tok::Sym('-');
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        while self.is_sym('+') || self.is_sym('-') {
            let op = self.bump();
            let rhs = self.term()?;
            acc = if op.tok == Tok::Sym('+') {
                self.binary(&op, acc, rhs, KPolynomial::add)?
            } else {
                self.binary(&op, acc, rhs, KPolynomial::sub)?
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> PResult<KPolynomial> {
        let mut acc = self.unary()?;
        while self.is_sym('*') || self.is_sym('/') {
            let op = self.bump();
            let rhs_tok = self.peek().clone();
            let rhs = self.unary()?;
            let rhs = if op.tok == Tok::Sym('/') {
                if rhs.is_zero() {
                    return Err(self.error(&rhs_tok, "division by zero"));
                }
                self.lift_err(&rhs_tok, rhs.inverse())
                    .map_err(|e| ParseError {
                        message: format!("can only divide by a monomial: {}", e.message),
                        ..e
                    })?
            } else {
                rhs
            };
            acc = self.binary(&op, acc, rhs, KPolynomial::mul)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<KPolynomial> {
        if self.is_sym('-') {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> PResult<KPolynomial> {
        let base_tok = self.peek().clone();
        let base = self.atom()?;
        if !self.is_sym('^') {
            return Ok(base);
        }
        self.bump();
        let exp_tok = self.peek().clone();
        let e = self.exponent()?;
        if e.is_integer() {
            let k = e
                .to_integer()
                .to_i64()
                .filter(|k| k.abs() <= 10_000)
                .ok_or_else(|| self.error(&exp_tok, "exponent out of range"))?;
            let b = if k < 0 {
                self.lift_err(&base_tok, base.inverse())?
            } else {
                base
            };
            return self.lift_err(&exp_tok, b.pow(k.unsigned_abs() as u32));
        }
        self.fractional_power(&base_tok, &base, &e)
    }

    fn fractional_power(&self, at: &Token, base: &KPolynomial, e: &Q) -> PResult<KPolynomial> {
        let err = || self.error(at, "fractional exponents apply only to uniformizer powers");
        if !base.is_monomial() {
            return Err(err());
        }
        let (d, c) = base.terms().next().expect("monomial");
        if d.iter().any(|&x| x != 0) || !c.is_monomial() {
            return Err(err());
        }
        let (texp, coeff) = c.terms().into_iter().next().expect("monomial");
        if !coeff.is_one() {
            return Err(err());
        }
        let scaled: Vec<Q> = texp.iter().map(|x| x * e).collect();
        let one = FieldElement::one(base.tower());
        let elt = self.lift_err(at, one.uniformizer_shift(&scaled))?;
        Ok(KPolynomial::constant(elt, base.nvars()))
    }

    fn exponent(&mut self) -> PResult<Q> {
        let paren = self.is_sym('(');
        if paren {
            self.bump();
        }
        let neg = if self.is_sym('-') {
            self.bump();
            true
        } else {
            false
        };
        let num_tok = self.bump();
        let Tok::Int(num) = num_tok.tok.clone() else {
            return Err(self.error(&num_tok, "malformed exponent"));
        };
        let mut value = Q::from_integer(num);
        if paren {
            if self.is_sym('/') {
                self.bump();
                let den_tok = self.bump();
                match den_tok.tok {
                    Tok::Int(d) if d.is_positive() => value /= Q::from_integer(d),
                    _ => return Err(self.error(&den_tok, "malformed exponent")),
                }
            }
            self.expect_sym(')')?;
        }
        Ok(if neg { -value } else { value })
    }

    fn atom(&mut self) -> PResult<KPolynomial> {
        let t = self.bump();
        let m = self.vars.len();
        match &t.tok {
            Tok::Int(v) => {
                let c = FieldElement::constant(self.tower, &Q::from_integer(v.clone()));
                Ok(KPolynomial::constant(self.lift_err(&t, c)?, m))
            }
            Tok::Ident(name) => {
                if let Some(i) = self.vars.iter().position(|v| v == name) {
                    return Ok(KPolynomial::variable(self.tower, m, i));
                }
                if let Some(s) = self.tower.names().iter().position(|v| v == name) {
                    let mut e = vec![Q::from_integer(0.into()); self.tower.height()];
                    e[s] = Q::one();
                    let c = FieldElement::monomial(self.tower, &Q::one(), &e);
                    return Ok(KPolynomial::constant(self.lift_err(&t, c)?, m));
                }
                Err(self.error(&t, format!("unknown symbol '{name}'")))
            }
            Tok::Sym('(') => {
                let inner = self.expr()?;
                self.expect_sym(')')?;
                Ok(inner)
            }
            _ => Err(self.error(&t, "expected a number, symbol or '('")),
        }
    }
}

/// Parses a polynomial over `tower` in the variables `vars`.
pub fn parse_polynomial(text: &str, tower: &TowerRef, vars: &[String]) -> PResult<KPolynomial> {
    let toks = tokenize(text)?;
    check_names(tower, vars, &toks)?;
    let mut p = Parser {
        toks,
        pos: 0,
        tower,
        vars,
    };
    let f = p.expr()?;
    if p.peek().tok != Tok::End {
        return Err(p.error(p.peek(), "unexpected trailing input"));
    }
    Ok(f)
}

fn check_names(tower: &TowerRef, vars: &[String], toks: &[Token]) -> PResult<()> {
    if let Some(v) = vars.iter().find(|v| tower.names().contains(v)) {
        let at = toks.first().expect("end token");
        return Err(ParseError {
            line: at.line,
            column: at.column,
            token: v.clone(),
            message: "variable name clashes with a uniformizer".into(),
        });
    }
    Ok(())
}

/// Infers torus variables from the identifiers used: a prefix of `x, y, z`,
/// or `x1..xk` when indexed names are used.
pub fn infer_variables(text: &str, tower: &FieldTower) -> PResult<Vec<String>> {
    let toks = tokenize(text)?;
    let idents: Vec<&Token> = toks
        .iter()
        .filter(|t| matches!(&t.tok, Tok::Ident(s) if !tower.names().contains(s)))
        .collect();
    let xyz = ["x", "y", "z"];
    let mut max_xyz = 0;
    let mut max_indexed = 0;
    for t in &idents {
        if let Some(k) = xyz.iter().position(|v| *v == t.text) {
            max_xyz = max_xyz.max(k + 1);
        } else if let Some(k) = t
            .text
            .strip_prefix('x')
            .and_then(|r| r.parse::<usize>().ok())
            .filter(|&k| k >= 1)
        {
            max_indexed = max_indexed.max(k);
        } else {
            return Err(ParseError {
                line: t.line,
                column: t.column,
                token: t.text.clone(),
                message: format!("unknown symbol '{}'", t.text),
            });
        }
    }
    if max_xyz > 0 && max_indexed > 0 {
        let t = idents[0];
        return Err(ParseError {
            line: t.line,
            column: t.column,
            token: t.text.clone(),
            message: "mixes x,y,z with indexed variables; declare variables explicitly".into(),
        });
    }
    Ok(if max_indexed > 0 {
        (1..=max_indexed).map(|i| format!("x{i}")).collect()
    } else {
        xyz[..max_xyz.max(1)].iter().map(|s| s.to_string()).collect()
    })
}

/// Distinct non-uniformizer identifiers in order of first appearance.
pub fn symbols(text: &str, tower: &FieldTower) -> PResult<Vec<String>> {
    let mut out: Vec<String> = Vec::new();
    for t in tokenize(text)? {
        if let Tok::Ident(s) = t.tok {
            if !tower.names().contains(&s) && !out.contains(&s) {
                out.push(s);
            }
        }
    }
    Ok(out)
}

fn simple_error(text: &str, message: impl Into<String>) -> ParseError {
    ParseError {
        line: 1,
        column: 1,
        token: text.to_string(),
        message: message.into(),
    }
}

/// Parses `QQ((t1))((t2))`, `Q((t))` or `GF(p)((t1))...`.
pub fn parse_tower(text: &str) -> PResult<FieldTower> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let (base, mut rest) = if let Some(r) = s.strip_prefix("QQ") {
        (BaseField::Rationals, r)
    } else if let Some(r) = s.strip_prefix("GF(") {
        let (p, r) = r
            .split_once(')')
            .ok_or_else(|| simple_error(text, "unterminated GF(p)"))?;
        let p: u64 = p
            .parse()
            .map_err(|_| simple_error(text, "GF(p) needs an integer p"))?;
        if !is_prime(p) {
            return Err(simple_error(text, format!("{p} is not prime")));
        }
        (BaseField::Prime(p), r)
    } else if let Some(r) = s.strip_prefix('Q') {
        (BaseField::Rationals, r)
    } else {
        return Err(simple_error(text, "base field must be QQ or GF(p)"));
    };
    let mut names = Vec::new();
    while !rest.is_empty() {
        let r = rest
            .strip_prefix("((")
            .ok_or_else(|| simple_error(text, "expected '((name))'"))?;
        let (name, r) = r
            .split_once("))")
            .ok_or_else(|| simple_error(text, "unterminated '((name'"))?;
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(simple_error(text, format!("bad uniformizer name '{name}'")));
        }
        names.push(name.to_string());
        rest = r;
    }
    if names.is_empty() {
        return Err(simple_error(text, "tower needs at least one uniformizer"));
    }
    FieldTower::new(base, names).map_err(|e| simple_error(text, e.to_string()))
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Parses `w11,..,w1n;w21,..;...` (coordinate 1 first). A bare `0` is the
/// zero matrix.
pub fn parse_weight(text: &str, m: usize, n: usize) -> PResult<WeightMatrix> {
    if text.trim() == "0" {
        return Ok(WeightMatrix::zeros(m, n));
    }
    let rows = text
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|x| {
                    parse_q(x).ok_or_else(|| simple_error(x.trim(), "malformed rational"))
                })
                .collect::<PResult<Vec<Q>>>()
        })
        .collect::<PResult<Vec<_>>>()?;
    if rows.len() != m {
        return Err(simple_error(
            text,
            format!("expected {m} weight vectors, found {}", rows.len()),
        ));
    }
    if let Some(bad) = rows.iter().find(|r| r.len() != n) {
        return Err(simple_error(
            text,
            format!("each weight vector needs {n} coordinates, found {}", bad.len()),
        ));
    }
    WeightMatrix::new(rows).map_err(|e| simple_error(text, e.to_string()))
}

/// Parses a comma-separated variable list.
pub fn parse_variables(text: &str) -> PResult<Vec<String>> {
    let vars: Vec<String> = text.split(',').map(|s| s.trim().to_string()).collect();
    for (i, v) in vars.iter().enumerate() {
        if v.is_empty() || !v.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(simple_error(v, "bad variable name"));
        }
        if vars[..i].contains(v) {
            return Err(simple_error(v, "duplicate variable"));
        }
    }
    Ok(vars)
}

/// Convenience: tower, inferred variables and polynomial in one go.
pub fn parse_with_tower(tower: &str, poly: &str) -> PResult<(KPolynomial, Vec<String>)> {
    let tower = Arc::new(parse_tower(tower)?);
    let vars = infer_variables(poly, &tower)?;
    Ok((parse_polynomial(poly, &tower, &vars)?, vars))
}
