//! Command-line front end for `lextrop`.
//!
//! [`run`] parses arguments, dispatches a subcommand and returns the exit
//! code together with everything that would be printed, so the binary is a
//! thin wrapper and tests can drive the CLI in-process.

pub mod render;

use std::fmt::Write;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use lextrop::hlf::TowerRef;
use lextrop::newton::{build_polytope, root_valuations};
use lextrop::parse::{infer_variables, parse_polynomial, parse_tower, parse_variables, parse_weight, symbols, ParseError};
use lextrop::plot::{complex_plot_data, newton_plot_data};
use lextrop::polyhedra::WitnessRule;
use lextrop::rational::fmt_q;
use lextrop::tropical::{
    iterated_trop, membership, root_witness, trop_eval, trop_report, Convention, FiberedComplex, TropOptions,
};
use lextrop::{json, Error, KPolynomial, LexValue, WeightMatrix};
use serde_json::{json as jv, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

/// Half-width of the box that unbounded cells are clipped to in plot data.
const PLOT_BOUND: i64 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Json,
    Table,
    PlotData,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Plus,
    PaperMinus,
}

#[derive(Debug, Parser)]
#[command(name = "lextrop", version, about = "Tropical geometry over iterated Laurent series fields")]
pub struct Cli {
    /// Coefficient field, e.g. "QQ((t1))((t2))" or "GF(5)((t))".
    #[arg(long, global = true, default_value = "QQ((t1))((t2))")]
    pub tower: String,
    /// Comma-separated torus variables (default: inferred from the input).
    #[arg(long, global = true)]
    pub vars: Option<String>,
    /// Weight matrix: one vector per variable separated by ';', coordinates
    /// separated by ',', first uniformizer first ("1,0;1/2,0").
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub weight: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Table)]
    pub output: OutputMode,
    #[arg(long, global = true, value_enum, default_value_t = ConventionArg::Plus)]
    pub convention: ConventionArg,
    /// Upper bound on the number of cells computed.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub max_cells: usize,
    /// Rotates the elimination order used to pick cell witnesses.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed_pivot: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tropical variety of a hypersurface: dimension, purity and cells.
    Trop { polynomial: String },
    /// Degeneration table: one row per cell of every stage.
    Table { polynomial: String },
    /// Valuations of the roots of a univariate polynomial.
    Newton { polynomial: String },
    /// Whether --weight lies on the tropical variety.
    Member { polynomial: String },
    /// Newton polygon certificate for a root over --weight.
    Witness { polynomial: String },
    /// Tropical polynomial at --weight and the terms attaining it.
    Eval { polynomial: String },
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
pub enum Failure {
    Parse(String),
    Computation(String),
    Inconsistent(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(format!("parse error: {e}"))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistent(_) => Failure::Inconsistent(e.to_string()),
            _ => Failure::Computation(e.to_string()),
        }
    }
}

pub struct Session {
    pub tower: TowerRef,
    pub vars: Option<Vec<String>>,
    pub convention: Convention,
    pub output: OutputMode,
    pub options: TropOptions,
}

impl Session {
    pub fn from_cli(cli: &Cli) -> Result<Self, Failure> {
        let tower = Arc::new(parse_tower(&cli.tower)?);
        let vars = cli.vars.as_deref().map(parse_variables).transpose()?;
        if let Some(v) = vars.iter().flatten().find(|v| tower.names().contains(v)) {
            return Err(Failure::Parse(format!("parse error: variable '{v}' clashes with a uniformizer")));
        }
        Ok(Session {
            tower,
            vars,
            convention: match cli.convention {
                ConventionArg::Plus => Convention::Plus,
                ConventionArg::PaperMinus => Convention::PaperMinus,
            },
            output: cli.output,
            options: TropOptions {
                max_cells: cli.max_cells,
                witness: WitnessRule {
                    rotation: cli.seed_pivot,
                    ..WitnessRule::default()
                },
            },
        })
    }

    pub fn parse(&self, text: &str) -> Result<(KPolynomial, Vec<String>), Failure> {
        let vars = match &self.vars {
            Some(v) => v.clone(),
            None => infer_variables(text, &self.tower)?,
        };
        Ok((parse_polynomial(text, &self.tower, &vars)?, vars))
    }

    /// Weight given on the command line, in the internal sign convention.
    fn weight(&self, text: Option<&str>, m: usize) -> Result<WeightMatrix, Failure> {
        let text = text.ok_or_else(|| Failure::Parse("parse error: this command needs --weight".into()))?;
        let w = parse_weight(text, m, self.tower.height())?;
        Ok(self.convention.weight(&w))
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_PARSE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut stderr = String::new();
    let result = Session::from_cli(&cli).and_then(|s| dispatch(&s, &cli, &mut stderr));
    match result {
        Ok(stdout) => Outcome { code: EXIT_OK, stdout, stderr },
        Err(f) => {
            let (code, msg) = match f {
                Failure::Parse(m) => (EXIT_PARSE, m),
                Failure::Computation(m) => (EXIT_COMPUTATION, format!("error: {m}")),
                Failure::Inconsistent(m) => (EXIT_INCONSISTENT, format!("error: {m}")),
            };
            stderr.push_str(&msg);
            stderr.push('\n');
            Outcome { code, stdout: String::new(), stderr }
        }
    }
}

fn dispatch(s: &Session, cli: &Cli, stderr: &mut String) -> Result<String, Failure> {
    let weight = cli.weight.as_deref();
    match &cli.command {
        Command::Trop { polynomial } => cmd_trop(s, polynomial, stderr),
        Command::Table { polynomial } => cmd_table(s, polynomial),
        Command::Newton { polynomial } => cmd_newton(s, polynomial),
        Command::Member { polynomial } => cmd_member(s, polynomial, weight),
        Command::Witness { polynomial } => cmd_witness(s, polynomial, weight),
        Command::Eval { polynomial } => cmd_eval(s, polynomial, weight),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

/// `(1,0)` style rendering.
fn compact(v: &LexValue) -> String {
    match v.coords() {
        Some(c) => format!("({})", c.iter().map(fmt_q).collect::<Vec<_>>().join(",")),
        None => "inf".into(),
    }
}

fn monomial_text(d: &[i64], vars: &[String]) -> String {
    let parts: Vec<String> = d
        .iter()
        .zip(vars)
        .filter(|(e, _)| **e != 0)
        .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    if parts.is_empty() { "1".into() } else { parts.join("*") }
}

fn plot_cells(s: &Session, cells: Vec<lextrop::RationalPolyhedron>) -> Result<String, Failure> {
    let cells: Vec<_> = cells.iter().map(|c| s.convention.polyhedron(c)).collect();
    Ok(complex_plot_data(&cells, s.tower.height(), PLOT_BOUND)?)
}

pub fn cmd_trop(s: &Session, text: &str, stderr: &mut String) -> Result<String, Failure> {
    let (f, vars) = s.parse(text)?;
    if f.is_zero() {
        return Err(Failure::Computation("the zero polynomial defines no hypersurface".into()));
    }
    if f.is_monomial() {
        stderr.push_str("warning: a monomial has empty tropicalization\n");
    }
    let r = trop_report(&f, &s.options)?;
    match s.output {
        OutputMode::Json => Ok(pretty(&json::report(&r, &f, &vars, s.convention))),
        OutputMode::PlotData => plot_cells(s, r.flattened.cells.iter().map(|c| c.closed.clone()).collect()),
        OutputMode::Table => {
            let mut out = String::new();
            let w = |out: &mut String, line: String| {
                out.push_str(&line);
                out.push('\n');
            };
            w(&mut out, format!("tower: {}", f.tower()));
            w(&mut out, format!("polynomial: {}", f.display_with(&vars)));
            w(&mut out, format!("convention: {}", s.convention.name()));
            w(&mut out, format!("dim: {} (expected {})", r.dim, r.expected_dim));
            w(&mut out, format!("pure: {}", if r.pure { "yes" } else { "no" }));
            w(&mut out, format!("cells: {} (maximal: {})", r.flattened.cells.len(), r.maximal.len()));
            let conditions = path_conditions(&r.fibered, s.convention);
            for (k, c) in r.flattened.cells.iter().enumerate() {
                let tag = if r.violating.contains(&k) {
                    " [maximal, low-dimensional]"
                } else if r.maximal.contains(&k) {
                    " [maximal]"
                } else {
                    ""
                };
                w(
                    &mut out,
                    format!(
                        "cell {k} dim {}{tag}: {} | {}",
                        c.dim,
                        conditions[k],
                        c.initial_form.display_with(&vars)
                    ),
                );
            }
            Ok(out)
        }
    }
}

/// Condition text for every root-to-leaf path, in flattening order.
fn path_conditions(fc: &FiberedComplex, conv: Convention) -> Vec<String> {
    fn go(fc: &FiberedComplex, conv: Convention, prefix: &str, out: &mut Vec<String>) {
        let names = render::stage_names(fc.nvars, fc.stage);
        for c in &fc.cells {
            let own = render::describe(&conv.polyhedron(&c.cell), &names);
            let text = if prefix.is_empty() { own } else { format!("{prefix}, {own}") };
            match &c.child {
                Some(ch) => go(ch, conv, &text, out),
                None => out.push(text),
            }
        }
    }
    let mut out = Vec::new();
    go(fc, conv, "", &mut out);
    out
}

/// One row of the degeneration table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub stage: usize,
    pub path: Vec<usize>,
    pub condition: String,
    pub degeneration: String,
}

/// Rows for every node of the fibered complex, outermost stage first and
/// then by cell index along the path.
pub fn table_rows(fc: &FiberedComplex, vars: &[String], conv: Convention) -> Vec<TableRow> {
    let mut rows = Vec::new();
    let mut level: Vec<(&FiberedComplex, Vec<usize>, String)> = vec![(fc, Vec::new(), String::new())];
    while !level.is_empty() {
        let mut next = Vec::new();
        for (node, path, prefix) in level {
            let names = render::stage_names(node.nvars, node.stage);
            for (k, c) in node.cells.iter().enumerate() {
                let own = render::describe(&conv.polyhedron(&c.cell), &names);
                let condition = if prefix.is_empty() { own } else { format!("{prefix}, {own}") };
                let mut p = path.clone();
                p.push(k);
                rows.push(TableRow {
                    stage: node.stage,
                    path: p.clone(),
                    condition: condition.clone(),
                    degeneration: c.residual.display_with(vars),
                });
                if let Some(ch) = &c.child {
                    next.push((ch, p, condition));
                }
            }
        }
        level = next;
    }
    rows
}

pub fn cmd_table(s: &Session, text: &str) -> Result<String, Failure> {
    let (f, vars) = s.parse(text)?;
    let fc = iterated_trop(&f, &s.options)?;
    let rows = table_rows(&fc, &vars, s.convention);
    match s.output {
        OutputMode::Json => Ok(pretty(&Value::Array(
            rows.iter()
                .map(|r| jv!({"stage": r.stage, "path": r.path, "condition": r.condition, "degeneration": r.degeneration}))
                .collect(),
        ))),
        OutputMode::PlotData => plot_cells(s, lextrop::tropical::flatten(&fc).cells.into_iter().map(|c| c.closed).collect()),
        OutputMode::Table => {
            let head = ("weight condition", "initial degeneration");
            let width = rows
                .iter()
                .map(|r| r.condition.chars().count())
                .chain([head.0.len()])
                .max()
                .unwrap_or(0);
            let mut out = String::new();
            let pad = |t: &str| format!("{t}{}", " ".repeat(width - t.chars().count()));
            writeln!(out, "{} | {}", pad(head.0), head.1).expect("write");
            writeln!(out, "{}-+-{}", "-".repeat(width), "-".repeat(head.1.len())).expect("write");
            for r in &rows {
                writeln!(out, "{} | {}", pad(&r.condition), r.degeneration).expect("write");
            }
            Ok(out)
        }
    }
}

pub fn cmd_newton(s: &Session, text: &str) -> Result<String, Failure> {
    let vars = match &s.vars {
        Some(v) => v.clone(),
        None => {
            let found = symbols(text, &s.tower)?;
            if found.len() > 1 {
                return Err(Error::NotUnivariate(found.len()).into());
            }
            if found.is_empty() { vec!["z".to_string()] } else { found }
        }
    };
    let f = parse_polynomial(text, &s.tower, &vars)?;
    if s.output == OutputMode::PlotData {
        return Ok(newton_plot_data(&f)?);
    }
    let r = root_valuations(&f)?;
    let edges = build_polytope(&f)?.lower_hull_univariate()?;
    if s.output == OutputMode::Json {
        return Ok(pretty(&json::roots(&r, &edges)));
    }
    let mut roots = r.roots.clone();
    roots.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("same height"));
    let mut parts: Vec<String> = roots.iter().map(|(v, k)| format!("{} ×{k}", compact(v))).collect();
    if r.lowest_exponent > 0 {
        parts.push(format!("inf ×{}", r.lowest_exponent));
    }
    let mut out = parts.join(", ");
    out.push('\n');
    for e in &edges {
        writeln!(
            out,
            "edge {} -> {}: slope {}, length {}",
            e.from.0,
            e.to.0,
            compact(&LexValue::Finite(e.slope.clone())),
            e.multiplicity
        )
        .expect("write");
    }
    Ok(out)
}

pub fn cmd_member(s: &Session, text: &str, weight: Option<&str>) -> Result<String, Failure> {
    let (f, vars) = s.parse(text)?;
    let w = s.weight(weight, f.nvars())?;
    let m = membership(&f, &w)?;
    Ok(match s.output {
        OutputMode::Json => pretty(&json::membership(&m, &vars)),
        _ if m.member => "member\n".into(),
        _ => format!("not member (initial form = {})\n", m.initial_form.display_with(&vars)),
    })
}

pub fn cmd_witness(s: &Session, text: &str, weight: Option<&str>) -> Result<String, Failure> {
    let (f, vars) = s.parse(text)?;
    let w = s.weight(weight, f.nvars())?;
    let rw = root_witness(&f, &w)?;
    Ok(match s.output {
        OutputMode::Json => pretty(&json::root_witness(&rw, &vars)),
        _ => {
            let b: Vec<String> = rw.b.iter().map(|x| x.to_string()).collect();
            format!(
                "b: ({})\nnormalized: {}\nf_b: {}\nedge: {} -> {}, slope {}, length {}\n",
                b.join(","),
                rw.normalized.display_with(&vars),
                rw.univariate.display_with(&["z".to_string()]),
                rw.edge.from.0,
                rw.edge.to.0,
                compact(&LexValue::Finite(rw.edge.slope.clone())),
                rw.edge.multiplicity
            )
        }
    })
}

pub fn cmd_eval(s: &Session, text: &str, weight: Option<&str>) -> Result<String, Failure> {
    let (f, vars) = s.parse(text)?;
    let w = s.weight(weight, f.nvars())?;
    let e = trop_eval(&f, &w)?;
    Ok(match s.output {
        OutputMode::Json => pretty(&jv!({
            "value": json::lex_value(&e.value),
            "achievers": e.achievers,
        })),
        _ => {
            let terms: Vec<String> = e.achievers.iter().map(|d| monomial_text(d, &vars)).collect();
            format!("value: {}\nattained at: {}\n", compact(&e.value), terms.join(", "))
        }
    })
}
