//! File-driven command line front end.
//!
//! Every subcommand reads one JSON payload (`--input`, or standard input) and writes one
//! result (`--output`, or standard output) as JSON or CSV. Failures go to standard error
//! as a JSON object and select the exit code: 1 for invalid input, 2 for a computation
//! outside the domain, 3 for a resource cap.

use std::collections::BTreeSet;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::amu::{self, corpus, RibbonCurve, Smoothing};
use crate::asymptotics::{fourier_integral, h_sum, h_sum_angle, regime_classify, witten_compare, PiecewisePoly, Regime, RootRule};
use crate::cyclotomic::{check_level, parse_rational, CycElem, RootSpec};
use crate::laurent::LaurentPoly;
use crate::qtorus::HomClass;
use crate::trace::{convergence_report, AnnularLink, Subject, WeightedMulticurve};
use crate::verlinde::{count_colorings, lattice_bound_check, spines, verlinde_dim, ColoredGraph, LatticeKind};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "wrt-limits", version, about = "Limits of WRT traces on Σ × S¹, exact at every level")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON payload; standard input when absent.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Result file; standard output when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads; all cores when absent.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for sampled inputs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Limit polynomial `P_L` of a weighted multicurve or an annular stack.
    PLimit,
    /// Exact normalized traces at the given levels.
    Trace,
    /// `p·|ev tr_p − P_L(u)|` over a list of levels.
    Converge,
    /// Admissible coloring counts, Verlinde dimensions, and the lattice bound on boxes.
    Verlinde,
    /// Color-3 state sum, incompressibility certificate and degree accounting of a curve.
    Amu,
    /// Exact traces against the push-forward integral.
    Witten,
    /// Riemann sums against roots of unity and their limit regime.
    Limits,
}

/// A computed result: a JSON document and, for tabular results, its rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub value: Value,
    pub table: Option<Table>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    fn scalar(value: Value) -> Self {
        Self { value, table: None }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.value).expect("values serialize") + "\n"),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| Error::Invalid(format!("csv: {e}"));
                match &self.table {
                    Some(t) => {
                        w.write_record(&t.header).map_err(io)?;
                        for r in &t.rows {
                            w.write_record(r).map_err(io)?;
                        }
                    }
                    None => {
                        w.write_record(["key", "value"]).map_err(io)?;
                        if let Value::Object(m) = &self.value {
                            for (k, v) in m {
                                let cell = match v {
                                    Value::String(s) => s.clone(),
                                    other => other.to_string(),
                                };
                                w.write_record([k.as_str(), cell.as_str()]).map_err(io)?;
                            }
                        }
                    }
                }
                let bytes = w.into_inner().map_err(|e| Error::Invalid(format!("csv: {e}")))?;
                Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
            }
        }
    }
}

/// Structured failure written to standard error.
pub fn error_json(e: &Error) -> Value {
    let message = e.to_string();
    let diagnostics: Vec<String> = match e {
        Error::MalformedPresentation(d) | Error::MalformedCurve(d) | Error::Invalid(d) => {
            d.split("; ").map(str::to_string).collect()
        }
        _ => vec![message.clone()],
    };
    json!({ "error": e.kind(), "message": message, "exit_code": e.exit_code(), "diagnostics": diagnostics })
}

/// Fixed-precision text for floating point output.
fn fx(x: f64) -> String {
    format!("{x:.12e}")
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

/// Reject keys a command does not read, listing all of them.
fn check_keys(payload: &Value, allowed: &[&str]) -> Result<Map<String, Value>> {
    let Value::Object(map) = payload else { return Err(invalid("payload must be a JSON object")) };
    let unknown: Vec<String> =
        map.keys().filter(|k| !allowed.contains(&k.as_str())).map(|k| format!("unknown field {k:?}")).collect();
    if unknown.is_empty() {
        Ok(map.clone())
    } else {
        Err(invalid(unknown.join("; ")))
    }
}

fn field<T: for<'de> Deserialize<'de>>(map: &Map<String, Value>, key: &str) -> Result<Option<T>> {
    match map.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => serde_json::from_value(v.clone()).map(Some).map_err(|e| invalid(format!("field {key:?}: {e}"))),
    }
}

fn required<T: for<'de> Deserialize<'de>>(map: &Map<String, Value>, key: &str) -> Result<T> {
    field(map, key)?.ok_or_else(|| invalid(format!("missing field {key:?}")))
}

fn classes(pairs: Vec<(i64, i64)>) -> Vec<HomClass> {
    pairs.into_iter().map(HomClass::from).collect()
}

/// `"graph": {...}` or `"spine": name` (with `"genus"` for the families).
fn graph_of(map: &Map<String, Value>) -> Result<Option<ColoredGraph>> {
    if let Some(g) = map.get("graph") {
        return ColoredGraph::from_json(g).map(Some);
    }
    let Some(name) = field::<String>(map, "spine")? else { return Ok(None) };
    let genus = field::<usize>(map, "genus")?;
    let family = |f: fn(usize) -> ColoredGraph| -> Result<ColoredGraph> {
        match genus {
            Some(g) if g >= 2 => Ok(f(g)),
            _ => Err(invalid(format!("spine {name:?} needs \"genus\" of at least 2"))),
        }
    };
    let g = match name.as_str() {
        "genus-one" => spines::genus_one(),
        "genus-one-surgery" => spines::genus_one_surgery(),
        "theta" => spines::theta(),
        "genus-two-surgery" => spines::genus_two_surgery(),
        "k4" => spines::k4(),
        "necklace" => family(spines::necklace)?,
        "chain" => family(spines::chain)?,
        "standard" => match genus {
            Some(g) if g >= 1 => spines::standard(g),
            _ => return Err(invalid("spine \"standard\" needs \"genus\" of at least 1")),
        },
        other => return Err(invalid(format!("unknown spine {other:?}"))),
    };
    Ok(Some(g))
}

const SUBJECT_KEYS: [&str; 7] = ["graph", "spine", "genus", "weights", "stack", "components", "trivial_circles"];

/// A weighted multicurve (`weights` over a graph) or an annular link (`stack` or `components`).
fn subject_of(map: &Map<String, Value>, need_graph: bool) -> Result<Subject> {
    let graph = graph_of(map)?;
    if let Some(w) = field::<Vec<(i64, i64)>>(map, "weights")? {
        if map.contains_key("stack") || map.contains_key("components") {
            return Err(invalid("give either \"weights\" or an annular stack, not both"));
        }
        let graph = graph.ok_or_else(|| invalid("\"weights\" need a \"graph\" or \"spine\""))?;
        return Ok(Subject::Weighted(WeightedMulticurve::new(graph, classes(w))?));
    }
    let components = match (field::<Vec<(i64, i64)>>(map, "stack")?, field::<Vec<(usize, Vec<(i64, i64)>)>>(map, "components")?) {
        (Some(_), Some(_)) => return Err(invalid("give either \"stack\" or \"components\", not both")),
        (Some(s), None) => vec![(0, classes(s))],
        (None, Some(c)) => c.into_iter().map(|(i, s)| (i, classes(s))).collect(),
        (None, None) => Vec::new(),
    };
    let circles = field::<u32>(map, "trivial_circles")?.unwrap_or(0);
    if components.is_empty() && circles == 0 && !map.contains_key("stack") && !map.contains_key("components") {
        return Err(invalid("payload needs \"weights\", \"stack\" or \"components\""));
    }
    let link = AnnularLink::new(components, circles)?;
    let graph = match graph {
        Some(g) => g,
        None if need_graph => return Err(invalid("traces need a \"graph\" or \"spine\"")),
        None => spines::genus_one_surgery(),
    };
    Ok(Subject::Annular { link, graph })
}

fn levels_of(map: &Map<String, Value>, default: &[i64]) -> Result<Vec<i64>> {
    let mut levels = match (field::<i64>(map, "p")?, field::<Vec<i64>>(map, "levels")?) {
        (Some(_), Some(_)) => return Err(invalid("give either \"p\" or \"levels\", not both")),
        (Some(p), None) => vec![p],
        (None, Some(l)) => l,
        (None, None) => default.to_vec(),
    };
    if levels.is_empty() {
        return Err(invalid("no levels given"));
    }
    let bad: Vec<String> = levels.iter().filter_map(|&p| check_level(p).err().map(|e| e.to_string())).collect();
    if !bad.is_empty() {
        return Err(Error::Invalid(bad.join("; ")));
    }
    levels.dedup();
    Ok(levels)
}

fn poly_json(p: &LaurentPoly) -> Value {
    let c = p.parseval_classify();
    json!({
        "polynomial": p.to_string(),
        "coefficients": p,
        "classification": format!("{:?}", c.kind).to_uppercase(),
        "l2_mass": c.mass.to_string(),
    })
}

fn p_limit(payload: &Value) -> Result<Report> {
    let map = check_keys(payload, &SUBJECT_KEYS)?;
    let subject = subject_of(&map, false)?;
    Ok(Report::scalar(poly_json(&subject.p_limit())))
}

fn cyc_cells(x: &CycElem) -> (String, String) {
    let coeffs: Vec<String> = x.coeffs().iter().map(ToString::to_string).collect();
    (x.scale().to_string(), coeffs.join(" "))
}

fn trace(payload: &Value) -> Result<Report> {
    let mut keys = SUBJECT_KEYS.to_vec();
    keys.extend(["p", "levels"]);
    let map = check_keys(payload, &keys)?;
    let subject = subject_of(&map, true)?;
    let levels = levels_of(&map, &[])?;
    let values = levels.iter().map(|&p| subject.trace(p)).collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    let mut docs = Vec::new();
    for (&p, x) in levels.iter().zip(&values) {
        let ev: Complex64 = x.ev_root(&RootSpec::minus_first(p)?)?;
        let (scale, coeffs) = cyc_cells(x);
        rows.push(vec![p.to_string(), scale, coeffs, fx(ev.re), fx(ev.im)]);
        docs.push(json!({ "p": p, "exact": x, "ev_re": fx(ev.re), "ev_im": fx(ev.im) }));
    }
    Ok(Report {
        value: json!({ "root": "A_p = -exp(i*pi/p)", "traces": docs }),
        table: Some(Table { header: ["p", "scale", "coeffs", "ev_re", "ev_im"].map(String::from).to_vec(), rows }),
    })
}

fn converge(payload: &Value) -> Result<Report> {
    let mut keys = SUBJECT_KEYS.to_vec();
    keys.extend(["u_angle", "levels", "p"]);
    let map = check_keys(payload, &keys)?;
    let subject = subject_of(&map, true)?;
    let u = field::<f64>(&map, "u_angle")?.unwrap_or(0.3);
    let levels = levels_of(&map, &[6, 8, 10, 12, 16, 20, 24, 32, 40])?;
    let rows = convergence_report(&subject, u, &levels)?;
    let bound = rows.iter().map(|r| r.p_times_err).fold(0.0, f64::max);
    let table = Table {
        header: ["p", "k", "re", "im", "abs_err", "p_times_err"].map(String::from).to_vec(),
        rows: rows
            .iter()
            .map(|r| vec![r.p.to_string(), r.k.to_string(), fx(r.re), fx(r.im), fx(r.abs_err), fx(r.p_times_err)])
            .collect(),
    };
    let docs: Vec<Value> = table.rows.iter().map(|r| Value::Object(table.header.iter().cloned().zip(r.iter().map(|c| json!(c))).collect())).collect();
    Ok(Report {
        value: json!({
            "u_angle": fx(u),
            "p_limit": subject.p_limit().to_string(),
            "max_p_times_err": fx(bound),
            "rows": docs,
        }),
        table: Some(table),
    })
}

fn verlinde(payload: &Value) -> Result<Report> {
    let map = check_keys(payload, &["graph", "spine", "genus", "p", "levels", "boundary", "box", "lattice", "r"])?;
    if let Some(sides) = field::<Vec<u64>>(&map, "box")? {
        let lattice = field::<LatticeKind>(&map, "lattice")?.unwrap_or(LatticeKind::Unit);
        let r = required::<u64>(&map, "r")?;
        let rep = lattice_bound_check(&sides, lattice, r)?;
        return Ok(Report::scalar(json!({
            "sides": rep.sides,
            "lattice": rep.lattice,
            "interior_count": rep.interior_count.to_string(),
            "volume_ratio": fx(rep.volume_ratio),
            "deviation": fx(rep.deviation),
            "bound": fx(rep.bound),
            "pass": rep.pass,
        })));
    }
    let graph = graph_of(&map)?.ok_or_else(|| invalid("payload needs \"graph\", \"spine\" or \"box\""))?;
    let boundary = field::<Vec<u32>>(&map, "boundary")?;
    let levels = levels_of(&map, &[])?;
    let mut rows = Vec::new();
    for &p in &levels {
        let r = p as u32 / 2;
        let n = match &boundary {
            Some(b) => count_colorings(&graph, b, r)?,
            None if graph.is_closed() => verlinde_dim(&graph, r)?,
            None => count_colorings(&graph.glue_closed(), &[], r)?,
        };
        rows.push(vec![p.to_string(), r.to_string(), n.to_string()]);
    }
    let table = Table { header: ["p", "r", "count"].map(String::from).to_vec(), rows };
    let value = if levels.len() == 1 {
        json!({ "p": levels[0], "r": levels[0] / 2, "count": table.rows[0][2] })
    } else {
        json!({ "counts": table.rows.iter().map(|r| json!({ "p": r[0].parse::<i64>().unwrap(), "count": r[2] })).collect::<Vec<_>>() })
    };
    Ok(Report { value, table: Some(table) })
}

fn amu(payload: &Value) -> Result<Report> {
    let map = check_keys(payload, &["curve", "corpus", "operations", "smoothing", "xi"])?;
    let curve = match (map.get("curve"), field::<String>(&map, "corpus")?) {
        (Some(_), Some(_)) => return Err(invalid("give either \"curve\" or \"corpus\", not both")),
        (Some(c), None) => RibbonCurve::from_json(c)?,
        (None, Some(name)) => corpus::by_name(&name).ok_or_else(|| {
            let names: Vec<&str> = corpus::all().iter().map(|c| c.name).collect();
            invalid(format!("unknown corpus curve {name:?}; known: {}", names.join(", ")))
        })?,
        (None, None) => return Err(invalid("payload needs \"curve\" or \"corpus\"")),
    };
    let default_ops = if curve.annular_position().is_some() { vec!["certificate", "p_gamma3"] } else { vec!["certificate"] };
    let ops: Vec<String> = field(&map, "operations")?.unwrap_or_else(|| default_ops.iter().map(|s| s.to_string()).collect());
    let known: BTreeSet<&str> = ["certificate", "p_gamma3", "degree", "extremal"].into();
    let unknown: Vec<String> = ops.iter().filter(|o| !known.contains(o.as_str())).map(|o| format!("unknown operation {o:?}")).collect();
    if !unknown.is_empty() {
        return Err(Error::Invalid(unknown.join("; ")));
    }
    let mut out = Map::new();
    out.insert("double_points".into(), json!(curve.vertex_count()));
    out.insert("genus".into(), json!(curve.surface_genus()));
    for op in &ops {
        match op.as_str() {
            "certificate" => {
                out.insert(op.clone(), serde_json::to_value(amu::euler_certificate(&curve)?).expect("serializes"));
            }
            "p_gamma3" => {
                let p = amu::p_gamma3(&curve)?;
                let mut doc = poly_json(&p);
                doc["span"] = json!(p.degree());
                doc["bound"] = json!(4 * curve.vertex_count());
                out.insert(op.clone(), doc);
            }
            "degree" => {
                let s = Smoothing(required(&map, "smoothing")?);
                let xi: Vec<usize> = field(&map, "xi")?.unwrap_or_default();
                out.insert(op.clone(), serde_json::to_value(amu::degree_accounting(&curve, &s, &xi)?).expect("serializes"));
            }
            _ => {
                let states = amu::extremal_states(&curve)?;
                out.insert(op.clone(), serde_json::to_value(states).expect("serializes"));
            }
        }
    }
    Ok(Report::scalar(Value::Object(out)))
}

fn witten(payload: &Value) -> Result<Report> {
    let map = check_keys(payload, &["graph", "spine", "genus", "weights", "sigma", "levels", "p", "r_probe"])?;
    let graph = graph_of(&map)?.ok_or_else(|| invalid("payload needs \"graph\" or \"spine\""))?;
    let mc = WeightedMulticurve::new(graph, classes(required(&map, "weights")?))?;
    let sigma = field::<i64>(&map, "sigma")?.unwrap_or(1);
    let levels = levels_of(&map, &[40, 80, 160])?;
    let r_probe = field::<u32>(&map, "r_probe")?.unwrap_or(400);
    let rows = witten_compare(&mc, sigma, &levels, r_probe)?;
    let table = Table {
        header: ["p", "sigma", "ev_re", "ev_im", "integral", "integral_err", "gap"].map(String::from).to_vec(),
        rows: rows
            .iter()
            .map(|r| {
                vec![r.p.to_string(), r.sigma.to_string(), fx(r.ev_re), fx(r.ev_im), fx(r.integral), fx(r.integral_err), fx(r.gap)]
            })
            .collect(),
    };
    let docs: Vec<Value> = table.rows.iter().map(|r| Value::Object(table.header.iter().cloned().zip(r.iter().map(|c| json!(c))).collect())).collect();
    Ok(Report { value: json!({ "rows": docs }), table: Some(table) })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct KnotsJson {
    knots: Vec<String>,
    values: Vec<String>,
    bumps: Vec<String>,
}

fn rationals(v: &[String]) -> Result<Vec<BigRational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

/// `"tent"`, `{"random_cubic": pieces}` drawn from the seed, or explicit knots.
fn function_of(v: &Value, seed: u64) -> Result<PiecewisePoly> {
    match v {
        Value::String(s) if s == "tent" => Ok(PiecewisePoly::tent()),
        Value::Object(m) if m.contains_key("random_cubic") => {
            let pieces: usize = serde_json::from_value(m["random_cubic"].clone())
                .map_err(|e| invalid(format!("random_cubic: {e}")))?;
            PiecewisePoly::random_cubic(&mut ChaCha8Rng::seed_from_u64(seed), pieces)
        }
        Value::Object(_) => {
            let k: KnotsJson = serde_json::from_value(v.clone()).map_err(|e| invalid(format!("function: {e}")))?;
            PiecewisePoly::from_knots(&rationals(&k.knots)?, &rationals(&k.values)?, &rationals(&k.bumps)?)
        }
        _ => Err(invalid("function must be \"tent\", {\"random_cubic\": n} or {\"knots\", \"values\", \"bumps\"}")),
    }
}

fn limits(payload: &Value, seed: u64) -> Result<Report> {
    let map = check_keys(payload, &["function", "beta", "u_angle", "rule", "levels", "p"])?;
    let f = function_of(map.get("function").ok_or_else(|| invalid("missing field \"function\""))?, seed)?;
    let beta = field::<u32>(&map, "beta")?.unwrap_or(1);
    let u_text = field::<String>(&map, "u_angle")?.unwrap_or_else(|| "0".into());
    let u = parse_rational(&u_text)?;
    let rule = field::<RootRule>(&map, "rule")?.unwrap_or(RootRule::Offset { sigma: 1 });
    let levels = levels_of(&map, &[50, 100, 200, 400])?;
    let regime = regime_classify(&u, beta, rule)?;
    let limit = match regime {
        Regime::Case3 { sigma } => fourier_integral(&f, sigma),
        _ => Complex64::new(0.0, 0.0),
    };
    let u_f = u.numer().to_string().parse::<f64>().unwrap_or(f64::NAN) / u.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
    let mut rows = Vec::new();
    for &p in &levels {
        let h = match rule {
            RootRule::Offset { sigma } => h_sum_angle(&f, beta, p as u32, u_f + sigma as f64 / (beta as f64 * p as f64)),
            RootRule::PowerLaw { exponent } => h_sum_angle(&f, beta, p as u32, u_f + (p as f64).powf(-exponent)),
            RootRule::Nearest => h_sum(&f, beta, &RootSpec::nearest(p, u_f)?),
        };
        let gap = (h - limit).norm();
        rows.push(vec![p.to_string(), fx(h.re), fx(h.im), fx(gap), fx(p as f64 * gap)]);
    }
    let table = Table { header: ["p", "h_re", "h_im", "gap", "p_times_gap"].map(String::from).to_vec(), rows };
    let docs: Vec<Value> = table.rows.iter().map(|r| Value::Object(table.header.iter().cloned().zip(r.iter().map(|c| json!(c))).collect())).collect();
    Ok(Report {
        value: json!({
            "regime": regime,
            "limit_re": fx(limit.re),
            "limit_im": fx(limit.im),
            "rows": docs,
        }),
        table: Some(table),
    })
}

/// Run one subcommand on a parsed payload.
pub fn execute(command: Command, payload: &Value, seed: u64) -> Result<Report> {
    match command {
        Command::PLimit => p_limit(payload),
        Command::Trace => trace(payload),
        Command::Converge => converge(payload),
        Command::Verlinde => verlinde(payload),
        Command::Amu => amu(payload),
        Command::Witten => witten(payload),
        Command::Limits => limits(payload, seed),
    }
}

fn read_payload(input: &Option<PathBuf>) -> Result<Value> {
    let mut text = String::new();
    match input {
        Some(path) => {
            text = std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?
        }
        None => {
            std::io::stdin().read_to_string(&mut text).map_err(|e| invalid(format!("cannot read standard input: {e}")))?;
        }
    }
    serde_json::from_str(&text).map_err(|e| invalid(format!("malformed JSON at line {}, column {}: {e}", e.line(), e.column())))
}

fn run_inner(cli: &Cli) -> Result<()> {
    let payload = read_payload(&cli.input)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(invalid("--threads must be positive"));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| Error::ResourceCap(format!("thread pool: {e}")))?;
    let report = pool.install(|| execute(cli.command, &payload, cli.seed))?;
    let text = report.render(cli.format)?;
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| invalid(format!("cannot write {}: {e}", path.display())))?,
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| invalid(format!("cannot write output: {e}")))?,
    }
    Ok(())
}

/// Parse arguments, run, report failures on standard error; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let err = invalid(e.to_string().trim().to_string());
            eprintln!("{}", error_json(&err));
            return 1;
        }
        Err(e) => {
            print!("{e}");
            return 0;
        }
    };
    match run_inner(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", error_json(&e));
            e.exit_code()
        }
    }
}
