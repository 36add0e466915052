//! Command line front end: one JSON document in, one JSON document out.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::acceptance;
use crate::arith::rat::{rat_to_string, rat_vec};
use crate::arith::{FieldDesc, Rat};
use crate::chi::{self, VarietySpec};
use crate::error::{Error, Result};
use crate::hodge::{self, HodgeDiamond, StandardVariety};
use crate::quadform::{DiagForm, GramForm, GwElement};
use crate::traceform::{count_real_roots, parse_coeffs, trace_gram, EtaleAlgebra, Poly};

#[derive(Debug, Parser)]
#[command(
    name = "gw-euler",
    version,
    about = "Quadratic forms, trace forms, Hodge data and GW-valued Euler characteristics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the JSON result to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank, discriminants, signature and Hasse invariants of a form.
    FormInvariants {
        /// Form as inline JSON or a path: {"diag": [...]} or {"gram": [[...]]}.
        input: Option<String>,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Q (default), Fp:<p>, R or Cbar.
        #[arg(long)]
        field: Option<String>,
    },
    /// Decide whether two forms are isometric.
    FormIsometric {
        first: String,
        second: String,
        #[arg(long)]
        field: Option<String>,
    },
    /// Arithmetic in the Grothendieck–Witt ring.
    GwOp {
        #[arg(value_enum)]
        op: GwOp,
        /// One or two operands: GW elements, forms, or Witt classes.
        #[arg(num_args = 1..=2, required = true)]
        operands: Vec<String>,
        #[arg(long)]
        field: Option<String>,
    },
    /// Scaled trace form of ℚ[x]/(f) and its class in GW(ℚ).
    Trace {
        /// Polynomial: {"coeffs": [...]}, "[c0, c1, ...]" or a path.
        poly: Option<String>,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Twist δ, same formats as the polynomial; defaults to 1.
        #[arg(long)]
        delta: Option<String>,
    },
    /// Hodge diamond with its Euler characteristic and m.
    Hodge {
        /// Smooth hypersurface of dimension N and degree D in ℙ^{N+1}.
        #[arg(long, num_args = 2, value_names = ["N", "D"])]
        hypersurface: Option<Vec<u64>>,
        /// Standard variety or explicit diamond as inline JSON or a path.
        #[arg(long)]
        spec: Option<String>,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// χ(X/ℚ) for a catalog variety, with cross-checks.
    Chi {
        /// Variety spec as inline JSON or a path.
        #[arg(long)]
        spec: Option<String>,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Fail with exit code 3 when the middle form is not determined.
        #[arg(long)]
        require_middle: bool,
    },
    /// Run the acceptance suite; the table goes to stderr.
    Verify {
        #[arg(long, default_value_t = acceptance::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GwOp {
    Sum,
    Neg,
    Tensor,
    Lambda2,
    Equal,
    Witt,
    WittEqual,
}

/// Result of one invocation.
#[derive(Debug)]
pub struct Output {
    pub doc: Value,
    pub exit_code: i32,
    pub table: Option<String>,
}

impl Output {
    fn ok(doc: Value) -> Output {
        Output {
            doc,
            exit_code: 0,
            table: None,
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn parse_json(text: &str, what: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::invalid(format!("{what}: {e}")))
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))
}

/// Inline JSON when the argument looks like JSON, a file path otherwise.
fn load(arg: &str) -> Result<Value> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        parse_json(t, "inline JSON")
    } else {
        parse_json(&read_file(Path::new(arg))?, arg)
    }
}

fn load_one(input: Option<&str>, json: Option<&Path>, what: &str) -> Result<Value> {
    match (input, json) {
        (Some(s), None) => load(s),
        (None, Some(p)) => parse_json(&read_file(p)?, &p.display().to_string()),
        (Some(_), Some(_)) => Err(Error::invalid(format!(
            "give the {what} either inline or with --json, not both"
        ))),
        (None, None) => Err(Error::invalid(format!("missing {what}"))),
    }
}

fn from_value<T: serde::de::DeserializeOwned>(v: Value, what: &str) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::invalid(format!("{what}: {e}")))
}

fn parse_field(flag: Option<&str>) -> Result<Option<FieldDesc>> {
    flag.map(str::parse).transpose()
}

/// Fills in or checks the field of every form inside a form-like document.
fn apply_field(v: &mut Value, field: Option<&FieldDesc>) -> Result<()> {
    let Value::Object(map) = v else {
        return Ok(());
    };
    if map.contains_key("diag") || map.contains_key("gram") {
        match (map.get("field"), field) {
            (None, f) => {
                let f = f.cloned().unwrap_or(FieldDesc::Rationals);
                map.insert("field".into(), Value::String(f.to_string()));
            }
            (Some(existing), Some(f)) => {
                let existing: FieldDesc = from_value(existing.clone(), "field")?;
                existing.ensure_same(f)?;
            }
            (Some(_), None) => {}
        }
    }
    for key in ["plus", "minus", "anisotropic"] {
        if let Some(inner) = map.get_mut(key) {
            apply_field(inner, field)?;
        }
    }
    Ok(())
}

/// Raw diagonal entries; square classes are formed outside serde so that
/// factoring errors keep their exit code.
#[derive(Deserialize)]
struct DiagInput {
    field: FieldDesc,
    #[serde(with = "rat_vec")]
    diag: Vec<Rat>,
}

impl DiagInput {
    fn build(self) -> Result<DiagForm> {
        DiagForm::from_rats(self.field, &self.diag)
    }
}

/// A form given either diagonally or by a Gram matrix.
fn read_form(mut v: Value, field: Option<&FieldDesc>) -> Result<DiagForm> {
    apply_field(&mut v, field)?;
    if v.get("gram").is_some() {
        let g: GramForm = from_value(v, "Gram form")?;
        Ok(g.diagonalize()?.0)
    } else {
        from_value::<DiagInput>(v, "diagonal form")?.build()
    }
}

/// A GW element, a form, or a Witt class (anisotropic part plus hyperbolic count).
fn read_gw(mut v: Value, field: Option<&FieldDesc>) -> Result<GwElement> {
    apply_field(&mut v, field)?;
    if let Some(plus) = v.get("plus").cloned() {
        let plus = read_form(plus, field)?;
        let minus = match v.get("minus").cloned() {
            Some(m) => read_form(m, field)?,
            None => DiagForm::empty(plus.field().clone()),
        };
        return GwElement::new(plus, minus);
    }
    if let Some(aniso) = v.get("anisotropic").cloned() {
        let count = v
            .get("hyperbolic_count")
            .and_then(Value::as_i64)
            .ok_or_else(|| Error::invalid("Witt class needs an integer hyperbolic_count"))?;
        let q = read_form(aniso, field)?;
        let f = q.field().clone();
        return GwElement::from(q).sum(&GwElement::hyperbolic_multiple(&f, count));
    }
    Ok(GwElement::from(read_form(v, field)?))
}

/// Polynomial from {"coeffs": …}, a coefficient list, or a file holding either.
fn read_poly(arg: &str) -> Result<Poly> {
    let t = arg.trim();
    if t.starts_with('{') {
        return from_value(parse_json(t, "polynomial")?, "polynomial");
    }
    if t.starts_with('[') || !Path::new(t).exists() {
        return parse_coeffs(t);
    }
    read_poly(&read_file(Path::new(t))?)
}

fn poly_from_value(v: Value) -> Result<Poly> {
    match v {
        Value::Array(_) => read_poly(&v.to_string()),
        other => from_value(other, "polynomial"),
    }
}

fn form_invariants_doc(q: &DiagForm) -> Value {
    let mut doc = to_value(&q.invariants());
    if let (Value::Object(d), Value::Object(form)) = (&mut doc, to_value(q)) {
        d.extend(form);
    }
    doc
}

fn gw_op(op: GwOp, operands: &[String], field: Option<&FieldDesc>) -> Result<Value> {
    let binary = matches!(op, GwOp::Sum | GwOp::Tensor | GwOp::Equal | GwOp::WittEqual);
    let want = if binary { 2 } else { 1 };
    if operands.len() != want {
        return Err(Error::invalid(format!(
            "{op:?} takes {want} operand(s), got {}",
            operands.len()
        )));
    }
    if op == GwOp::Lambda2 {
        let x = read_gw(load(&operands[0])?, field)?;
        if !x.minus().is_empty() {
            return Err(Error::invalid(
                "lambda2 needs a form, not a formal difference",
            ));
        }
        return Ok(to_value(&crate::quadform::gw_lambda2(x.plus())));
    }
    let xs = operands
        .iter()
        .map(|s| read_gw(load(s)?, field))
        .collect::<Result<Vec<_>>>()?;
    Ok(match op {
        GwOp::Sum => to_value(&xs[0].sum(&xs[1])?),
        GwOp::Neg => to_value(&xs[0].neg()),
        GwOp::Tensor => to_value(&xs[0].tensor(&xs[1])?),
        GwOp::Equal => json!({ "equal": xs[0].equal(&xs[1])? }),
        GwOp::WittEqual => json!({ "equal": xs[0].witt_equal(&xs[1])? }),
        GwOp::Witt => to_value(&xs[0].witt()?),
        GwOp::Lambda2 => unreachable!("handled above"),
    })
}

fn trace_doc(v: Value, delta_flag: Option<&str>) -> Result<Value> {
    let (f, embedded_delta) = match v {
        Value::Object(mut map) if map.contains_key("modulus") => {
            let f = poly_from_value(map.remove("modulus").expect("checked"))?;
            let d = map.remove("delta").map(poly_from_value).transpose()?;
            (f, d)
        }
        other => (poly_from_value(other)?, None),
    };
    let delta = match delta_flag {
        Some(s) => read_poly(s)?,
        None => embedded_delta.unwrap_or_else(|| Poly::from_ints(&[1])),
    };
    let a = EtaleAlgebra::new(f.clone())?;
    let g = trace_gram(&a, &delta)?;
    let (diag, _) = g.diagonalize()?;
    let t = GwElement::from(diag);
    let gram: Vec<Vec<String>> = g
        .gram()
        .iter()
        .map(|row| row.iter().map(rat_to_string).collect())
        .collect();
    Ok(json!({
        "modulus": f,
        "delta": delta,
        "degree": a.degree(),
        "discriminant": rat_to_string(&f.discriminant()),
        "gram": gram,
        "transfer": t,
        "rank": t.rank(),
        "signature": t.signature(),
        "real_roots": count_real_roots(&f),
    }))
}

fn hodge_doc(diamond: &HodgeDiamond, hypersurface: Option<(usize, u64)>) -> Value {
    let mut doc = json!({
        "diamond": diamond,
        "euler_rank": hodge::euler_rank(diamond),
        "m": hodge::m_coefficient(diamond),
    });
    if let Some((n, d)) = hypersurface {
        doc["chi_top"] = Value::String(hodge::chi_top_hypersurface(n, d).to_string());
    }
    doc
}

fn hodge_from_value(v: Value) -> Result<HodgeDiamond> {
    if let Some(d) = v.get("diamond") {
        return from_value(d.clone(), "Hodge diamond");
    }
    if v.get("type").is_some() {
        let s: StandardVariety = from_value(v, "standard variety")?;
        return Ok(hodge::hodge_standard(&s));
    }
    from_value(v, "Hodge diamond")
}

fn chi_doc(v: Value, require_middle: bool) -> Result<Value> {
    let v = match v {
        Value::Object(mut map) if !map.contains_key("type") && map.contains_key("spec") => {
            map.remove("spec").expect("checked")
        }
        other => other,
    };
    let spec: VarietySpec = from_value(v, "variety spec")?;
    let report = chi::compute(&spec)?;
    if require_middle && report.result.gw.is_none() {
        return Err(Error::Unsupported(
            "the middle form of this variety is not determined by its spec".into(),
        ));
    }
    let mut doc = to_value(&report);
    doc["spec"] = to_value(&spec);
    Ok(doc)
}

/// Executes a parsed command line without touching stdout.
pub fn execute(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::FormInvariants { input, json, field } => {
            let f = parse_field(field.as_deref())?;
            let v = load_one(input.as_deref(), json.as_deref(), "form")?;
            Ok(Output::ok(form_invariants_doc(&read_form(v, f.as_ref())?)))
        }
        Command::FormIsometric {
            first,
            second,
            field,
        } => {
            let f = parse_field(field.as_deref())?;
            let a = read_form(load(first)?, f.as_ref())?;
            let b = read_form(load(second)?, f.as_ref())?;
            Ok(Output::ok(json!({ "isometric": a.is_isometric(&b)? })))
        }
        Command::GwOp {
            op,
            operands,
            field,
        } => {
            let f = parse_field(field.as_deref())?;
            Ok(Output::ok(gw_op(*op, operands, f.as_ref())?))
        }
        Command::Trace { poly, json, delta } => {
            let v = match (poly.as_deref(), json.as_deref()) {
                (Some(p), None) if !p.trim_start().starts_with('{') => to_value(&read_poly(p)?),
                (p, j) => load_one(p, j, "polynomial")?,
            };
            Ok(Output::ok(trace_doc(v, delta.as_deref())?))
        }
        Command::Hodge {
            hypersurface,
            spec,
            json,
        } => {
            let doc = match (hypersurface, spec.as_deref(), json.as_deref()) {
                (Some(nd), None, None) => {
                    let (n, d) = (nd[0] as usize, nd[1]);
                    hodge_doc(&hodge::hodge_hypersurface(n, d)?, Some((n, d)))
                }
                (None, s, j) if s.is_some() || j.is_some() => {
                    hodge_doc(&hodge_from_value(load_one(s, j, "Hodge spec")?)?, None)
                }
                _ => {
                    return Err(Error::invalid(
                        "give exactly one of --hypersurface, --spec or --json",
                    ))
                }
            };
            Ok(Output::ok(doc))
        }
        Command::Chi {
            spec,
            json,
            require_middle,
        } => {
            let v = load_one(spec.as_deref(), json.as_deref(), "variety spec")?;
            Ok(Output::ok(chi_doc(v, *require_middle)?))
        }
        Command::Verify { seed } => {
            let outcomes = acceptance::run_all(*seed);
            let passed = outcomes.iter().all(|o| o.passed);
            let table = outcomes
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("\n");
            let criteria: Vec<Value> = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "id": o.id,
                        "name": o.name,
                        "passed": o.passed,
                        "detail": o.detail,
                        "limit_ms": o.limit_ms.map(|l| l as u64),
                    })
                })
                .collect();
            Ok(Output {
                doc: json!({ "criteria": criteria, "passed": passed, "seed": seed }),
                exit_code: if passed { 0 } else { 1 },
                table: Some(table),
            })
        }
    }
}

fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable");
    s.push('\n');
    s
}

fn error_doc(e: &Error) -> Value {
    let mut m = Map::new();
    m.insert("error".into(), Value::String(e.to_string()));
    m.insert("exit_code".into(), Value::from(e.exit_code()));
    Value::Object(m)
}

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let out = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = std::io::stderr().write_all(render(&error_doc(&e)).as_bytes());
            return e.exit_code();
        }
    };
    if let Some(table) = &out.table {
        eprintln!("{table}");
    }
    let text = render(&out.doc);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text.as_bytes())
            .map_err(|e| Error::invalid(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Error::invalid(format!("cannot write to stdout: {e}"))),
    };
    match written {
        Ok(()) => out.exit_code,
        Err(e) => {
            let _ = std::io::stderr().write_all(render(&error_doc(&e)).as_bytes());
            e.exit_code()
        }
    }
}
