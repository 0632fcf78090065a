//! The `floer-gamma` command-line tool.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on input errors.
//! Text output is line-oriented `key = value`; `--json` prints one JSON object instead.
//! Input files may be paths or bare names of bundled fixtures.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serializer;
use serde_json::{json, Value};

use crate::cobordism::{self, CobordismDatum};
use crate::equivariant::{verify_triangle, TruncationWindow};
use crate::fixtures;
use crate::floer_datum::{validate, FloerDatum, ValidationReport};
use crate::gamma;
use crate::lattice::{self, ClassBound, LatticeData};
use crate::morse_minmax::{evaluate_class, MorseComplex};
use crate::seifert::{self, SeifertData};

pub fn ser_display<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn ser_opt_display<T: Display, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

pub fn ser_display_seq<'a, T, I, S>(v: &'a I, s: S) -> Result<S::Ok, S::Error>
where
    T: Display + 'a,
    &'a I: IntoIterator<Item = &'a T>,
    S: Serializer,
{
    s.collect_seq(v.into_iter().map(|x| x.to_string()))
}

#[derive(Parser, Debug)]
#[command(name = "floer-gamma", version, about = "Γ-invariants of Floer data, with cobordism, Seifert, lattice and Morse tools")]
struct Cli {
    /// Emit a JSON object instead of text lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a datum and check every structural identity.
    Validate { datum: String },
    /// Γ(k) for one k or an inclusive range.
    Gamma {
        datum: String,
        #[arg(long, allow_negative_numbers = true, conflicts_with = "range", required_unless_present = "range")]
        k: Option<i64>,
        /// Inclusive range `A..B`.
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
    },
    /// The h-invariant.
    H { datum: String },
    /// Lower bounds for τ and τ′, and η against a second datum.
    Bounds {
        datum: String,
        #[arg(long)]
        target: Option<String>,
    },
    /// Exactness identities of the equivariant triangle on a truncation window.
    Triangle {
        datum: String,
        #[arg(long, default_value = "6,4")]
        window: String,
    },
    #[command(subcommand)]
    Cobordism(CobordismCommand),
    #[command(subcommand)]
    Seifert(SeifertCommand),
    /// Minimal norm, Γ upper bounds and class bounds of a negative-definite lattice.
    Lattice(LatticeArgs),
    #[command(subcommand)]
    Morse(MorseCommand),
}

#[derive(Subcommand, Debug)]
enum CobordismCommand {
    /// Tilde chain-map identities and functoriality on a window.
    Verify {
        cob: String,
        #[arg(long, default_value = "6,4")]
        window: String,
    },
    /// Compose two cobordisms, first `a` then `b`.
    Compose {
        a: String,
        b: String,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Compare Γ of source and target over a range.
    GammaCompare {
        cob: String,
        #[arg(long, allow_hyphen_values = true, default_value = "-2..3")]
        range: String,
    },
}

#[derive(Subcommand, Debug)]
enum SeifertCommand {
    /// R-invariant and Seifert invariants of Σ(a_1, …, a_n).
    R {
        #[arg(required = true, num_args = 2..)]
        orders: Vec<i64>,
    },
    /// Γ prediction for a connected sum; each argument is `a1,a2,...`.
    Gamma {
        #[arg(required = true)]
        spaces: Vec<String>,
    },
    /// Bounds for the Whitehead double of the (p, q) torus knot.
    Whitehead { p: i64, q: i64 },
    /// Closed-form versus cotangent-sum audit over coprime tuples.
    Sweep {
        #[arg(long, default_value_t = 2000)]
        max_product: u64,
        #[arg(long, default_value = "3,4", value_delimiter = ',')]
        lengths: Vec<usize>,
    },
}

#[derive(Args, Debug)]
struct LatticeArgs {
    gram: String,
    /// Class representative `v1,v2,...`.
    #[arg(long, allow_hyphen_values = true)]
    e: Option<String>,
    /// Twist vector for the odd signed sum; requires `--m`.
    #[arg(long, allow_hyphen_values = true, requires = "e", requires = "m")]
    xi: Option<String>,
    #[arg(long, requires = "xi")]
    m: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum MorseCommand {
    /// Min-max value of a homology class.
    Eval {
        complex: String,
        #[arg(long)]
        class: String,
    },
}

/// Failure modes of one invocation.
enum Failure {
    Input(String),
}

impl<E: Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

/// Result of a subcommand: text lines, the equivalent JSON object and whether it passed.
struct Outcome {
    lines: Vec<String>,
    json: Value,
    pass: bool,
}

impl Outcome {
    fn new(lines: Vec<String>, json: Value, pass: bool) -> Self {
        Outcome { lines, json, pass }
    }
}

fn read_source(arg: &str) -> Result<(String, Option<PathBuf>), Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{arg}: {e}")))?;
        return Ok((text, Some(path.to_path_buf())));
    }
    fixtures::file(arg)
        .map(|s| (s.to_string(), None))
        .ok_or_else(|| Failure::Input(format!("{arg}: no such file or bundled fixture")))
}

fn load_datum(arg: &str) -> Result<FloerDatum, Failure> {
    let (text, _) = read_source(arg)?;
    FloerDatum::from_json_str(&text).map_err(|e| Failure::Input(format!("{arg}: {e}")))
}

fn load_valid_datum(arg: &str) -> Result<FloerDatum, Failure> {
    let d = load_datum(arg)?;
    let rep = validate(&d);
    match rep.first() {
        None => Ok(d),
        Some(v) => Err(Failure::Input(format!("{arg}: invalid datum: {}: {}", v.check, v.detail))),
    }
}

/// Resolves a datum reference from a cobordism file: a path relative to that file, then a bundled fixture.
/// References that resolve to files are rewritten to absolute paths.
fn resolve_ref(base: Option<&Path>, r: &str) -> Option<(FloerDatum, String)> {
    let dir = base.and_then(Path::parent).unwrap_or(Path::new("."));
    let candidate = dir.join(r);
    if candidate.is_file() {
        let text = std::fs::read_to_string(&candidate).ok()?;
        let d = FloerDatum::from_json_str(&text).ok()?;
        let abs = candidate.canonicalize().unwrap_or(candidate);
        return Some((d, abs.to_string_lossy().into_owned()));
    }
    fixtures::datum(r).map(|d| (d, r.to_string()))
}

fn load_cobordism(arg: &str) -> Result<CobordismDatum, Failure> {
    let (text, path) = read_source(arg)?;
    let resolve = |r: &str| resolve_ref(path.as_deref(), r).map(|(d, _)| d);
    let mut cob = CobordismDatum::from_json_str(&text, &resolve).map_err(|e| Failure::Input(format!("{arg}: {e}")))?;
    if let Some((_, s)) = resolve_ref(path.as_deref(), &cob.source_ref) {
        cob.source_ref = s;
    }
    if let Some((_, t)) = resolve_ref(path.as_deref(), &cob.target_ref) {
        cob.target_ref = t;
    }
    Ok(cob)
}

fn parse_window(s: &str) -> Result<TruncationWindow, Failure> {
    let (t, n) = s.split_once(',').ok_or_else(|| Failure::Input(format!("window `{s}` is not T,N")))?;
    let t: usize = t.trim().parse()?;
    let n: usize = n.trim().parse()?;
    Ok(TruncationWindow::new(t, n)?)
}

fn parse_range(s: &str) -> Result<(i64, i64), Failure> {
    let (a, b) = s.split_once("..").ok_or_else(|| Failure::Input(format!("range `{s}` is not A..B")))?;
    let (a, b): (i64, i64) = (a.trim().parse()?, b.trim().parse()?);
    if a > b {
        return Err(Failure::Input(format!("empty range {a}..{b}")));
    }
    Ok((a, b))
}

fn parse_ints(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',').map(|x| x.trim().parse::<i64>().map_err(Failure::from)).collect()
}

fn join<T: Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn report_json(rep: &ValidationReport) -> Value {
    json!(rep.violations)
}

fn report_lines(label: &str, rep: &ValidationReport, lines: &mut Vec<String>) {
    if rep.is_ok() {
        lines.push(format!("{label}: ok"));
    } else {
        lines.push(format!("{label}: FAIL"));
        lines.extend(rep.violations.iter().map(|v| format!("violation = {}: {}", v.check, v.detail)));
    }
}

fn cmd_validate(datum: &str) -> Result<Outcome, Failure> {
    let d = load_datum(datum)?;
    let rep = validate(&d);
    let mut lines = vec![format!("name = {}", d.name), format!("generators = {}", d.len())];
    lines.push(format!("valid = {}", rep.is_ok()));
    lines.extend(rep.violations.iter().map(|v| format!("violation = {}: {}", v.check, v.detail)));
    let j = json!({"name": d.name, "generators": d.len(), "valid": rep.is_ok(), "violations": report_json(&rep)});
    Ok(Outcome::new(lines, j, rep.is_ok()))
}

fn cmd_gamma(datum: &str, k: Option<i64>, range: Option<&str>) -> Result<Outcome, Failure> {
    let d = load_valid_datum(datum)?;
    let (a, b) = match (k, range) {
        (Some(k), _) => (k, k),
        (None, Some(r)) => parse_range(r)?,
        (None, None) => return Err(Failure::Input("one of --k or --range is required".into())),
    };
    let profile = gamma::gamma_profile(&d, a, b)?;
    let lines = profile.iter().map(|(k, v)| format!("gamma({k}) = {v}")).collect();
    let values: Vec<Value> = profile.iter().map(|(k, v)| json!({"k": k, "value": v.to_string()})).collect();
    Ok(Outcome::new(lines, json!({"datum": d.name, "values": values}), true))
}

fn cmd_h(datum: &str) -> Result<Outcome, Failure> {
    let d = load_valid_datum(datum)?;
    let h = gamma::h_invariant(&d)?;
    Ok(Outcome::new(vec![format!("h = {h}")], json!({"datum": d.name, "h": h}), true))
}

fn cmd_bounds(datum: &str, target: Option<&str>) -> Result<Outcome, Failure> {
    let d = load_valid_datum(datum)?;
    // With no irreducible generators the bounds are vacuous and print as "none".
    let show = |r: Result<crate::novikov::Rat, gamma::GammaError>| r.map_or("none".to_string(), |x| x.to_string());
    let tau = show(gamma::tau_lower_bound(&d));
    let tau_p = show(gamma::tau_prime_lower_bound(&d));
    let mut lines = vec![format!("tau_lb = {tau}"), format!("tau_prime_lb = {tau_p}")];
    let mut j = json!({"datum": d.name, "tau_lb": tau, "tau_prime_lb": tau_p});
    if let Some(t) = target {
        let t = load_valid_datum(t)?;
        let eta = show(gamma::eta_lower_bound(&d, &t));
        lines.push(format!("eta_lb = {eta}"));
        j["eta_lb"] = json!(eta);
    }
    Ok(Outcome::new(lines, j, true))
}

fn cmd_triangle(datum: &str, window: &str) -> Result<Outcome, Failure> {
    let d = load_valid_datum(datum)?;
    let w = parse_window(window)?;
    let rep = verify_triangle(&d, &w);
    let mut lines = Vec::new();
    report_lines("triangle", &rep, &mut lines);
    let j = json!({"datum": d.name, "window": [w.t, w.n], "ok": rep.is_ok(), "violations": report_json(&rep)});
    Ok(Outcome::new(lines, j, rep.is_ok()))
}

fn cmd_cob_verify(cob: &str, window: &str) -> Result<Outcome, Failure> {
    let c = load_cobordism(cob)?;
    let w = parse_window(window)?;
    let tilde = cobordism::verify_tilde_chain_map(&c);
    let func = if tilde.is_ok() { cobordism::verify_functoriality(&c, &w) } else { ValidationReport::ok() };
    let mut lines = vec![format!("source = {}", c.source.name), format!("target = {}", c.target.name), format!("c = {}", c.c)];
    report_lines("tilde_chain_map", &tilde, &mut lines);
    if tilde.is_ok() {
        report_lines("functoriality", &func, &mut lines);
    } else {
        lines.push("functoriality: skipped".into());
    }
    let drop = if tilde.is_ok() { cobordism::measure_mdeg_drop(&c, &w) } else { None };
    let drop_s = drop.as_ref().map_or("none".to_string(), |r| r.to_string());
    lines.push(format!("mdeg_drop = {drop_s}"));
    let pass = tilde.is_ok() && func.is_ok();
    let j = json!({
        "source": c.source.name, "target": c.target.name, "c": c.c,
        "tilde_chain_map": report_json(&tilde), "functoriality": report_json(&func),
        "mdeg_drop": drop.map(|r| r.to_string()), "ok": pass,
    });
    Ok(Outcome::new(lines, j, pass))
}

fn cmd_cob_compose(a: &str, b: &str, output: &Path) -> Result<Outcome, Failure> {
    let (ca, cb) = (load_cobordism(a)?, load_cobordism(b)?);
    let comp = cobordism::compose_tilde(&ca, &cb)?;
    std::fs::write(output, comp.to_json_string() + "\n").map_err(|e| Failure::Input(format!("{}: {e}", output.display())))?;
    let out = output.display().to_string();
    let lines = vec![
        format!("source = {}", comp.source.name),
        format!("target = {}", comp.target.name),
        format!("c = {}", comp.c),
        format!("written = {out}"),
    ];
    let j = json!({"source": comp.source.name, "target": comp.target.name, "c": comp.c, "written": out});
    Ok(Outcome::new(lines, j, true))
}

fn cmd_cob_compare(cob: &str, range: &str) -> Result<Outcome, Failure> {
    let c = load_cobordism(cob)?;
    let (a, b) = parse_range(range)?;
    let cmp = cobordism::gamma_comparison(&c, a, b)?;
    let mut lines: Vec<String> = cmp
        .rows
        .iter()
        .map(|r| {
            let rel = if r.k >= 1 { "<=" } else { "<= max(0)" };
            let verdict = if r.holds { "holds" } else { "fails" };
            format!("compare({}) = {} {rel} {} {verdict}", r.k, r.target, r.source)
        })
        .collect();
    lines.push(format!("eta_lb = {}", cmp.eta_lb.as_ref().map_or("none".to_string(), |r| r.to_string())));
    if let Some(n) = &cmp.eta_note {
        lines.push(format!("eta_note = {n}"));
    }
    let pass = cmp.all_hold();
    Ok(Outcome::new(lines, serde_json::to_value(&cmp)?, pass))
}

fn cmd_seifert_r(orders: &[i64]) -> Result<Outcome, Failure> {
    let s = SeifertData::new(orders)?;
    let inv = seifert::seifert_invariants(&s);
    let lines = vec![
        format!("R = {}", inv.r),
        format!("b = {}", inv.b),
        format!("beta = {}", join(&inv.beta)),
        format!("b_tuple = {}", join(&inv.b_tuple)),
    ];
    Ok(Outcome::new(lines, serde_json::to_value(&inv)?, true))
}

fn cmd_seifert_gamma(spaces: &[String]) -> Result<Outcome, Failure> {
    let data: Vec<SeifertData> = spaces.iter().map(|s| Ok(SeifertData::new(&parse_ints(s)?)?)).collect::<Result<_, Failure>>()?;
    let p = seifert::gamma_prediction(&data)?;
    let mut lines: Vec<String> = (1..=p.range_max).map(|i| format!("gamma({i}) = {}", p.value)).collect();
    lines.push(format!("range_max = {}", p.range_max));
    lines.push(format!("h_lower = {}", p.h_lower));
    lines.push(format!("h_lower_exact = {}", p.h_lower_exact));
    lines.push(format!("maximal = {}", join(&p.maximal)));
    let mut j = serde_json::to_value(&p)?;
    if data.len() > 1 {
        let f = seifert::furuta_independence(&data);
        lines.push(format!("independent = {}", f.independent));
        j["furuta"] = serde_json::to_value(&f)?;
    }
    Ok(Outcome::new(lines, j, true))
}

fn cmd_seifert_whitehead(p: i64, q: i64) -> Result<Outcome, Failure> {
    let w = seifert::whitehead_double_bounds(p, q)?;
    let lines = vec![format!("lower = {}", w.lower), format!("upper = {}", w.upper), format!("candidates = {}", join(&w.candidates))];
    Ok(Outcome::new(lines, serde_json::to_value(&w)?, true))
}

fn cmd_seifert_sweep(max_product: u64, lengths: &[usize]) -> Result<Outcome, Failure> {
    if lengths.iter().any(|&n| n < 3) {
        return Err(Failure::Input("tuple lengths must be at least 3".into()));
    }
    let rep = seifert::sweep(lengths, max_product);
    let mut lines = vec![
        format!("tuples = {}", rep.tuples),
        format!("family_checked = {}", rep.family_checked),
        format!("max_residual = {:e}", rep.max_residual),
        format!("min_r = {}", rep.min_r),
        format!("max_r = {}", rep.max_r),
        format!("failures = {}", rep.failures.len()),
    ];
    for f in &rep.failures {
        lines.push(format!(
            "failure = {}: closed_form {} cotangent {} residual {:e}",
            join(&f.orders),
            f.closed_form,
            f.cotangent,
            f.residual
        ));
    }
    Ok(Outcome::new(lines, serde_json::to_value(&rep)?, rep.ok()))
}

fn cmd_lattice(args: &LatticeArgs) -> Result<Outcome, Failure> {
    let (text, _) = read_source(&args.gram)?;
    let l = LatticeData::from_json_str(&text)?;
    let mn = lattice::minimal_norm(&l);
    let mut lines = vec![
        format!("rank = {}", l.rank()),
        format!("minimal_norm = {}", mn.norm),
        format!("minimal_vectors = {}", mn.vectors.len()),
    ];
    let bound = lattice::gamma_upper_bounds_from_lattice(&l);
    match &bound {
        Some(b) => {
            lines.push(format!("bound = {}", b.bound));
            lines.push(format!("range_max = {}", b.range_max));
        }
        None => lines.push("bound = none".into()),
    }
    let mut j = json!({
        "rank": l.rank(), "minimal_norm": mn.norm, "minimal_vectors": mn.vectors.len(),
        "bound": bound.as_ref().map(|b| b.bound.to_string()), "range_max": bound.as_ref().map(|b| b.range_max),
    });
    if let Some(e) = &args.e {
        let e = parse_ints(e)?;
        let xi = args.xi.as_deref().map(parse_ints).transpose()?;
        let twist = xi.as_deref().zip(args.m);
        let cb = lattice::bound_from_class(&l, &e, twist)?;
        match &cb {
            ClassBound::Bound { n0, bound, signed_sum } => {
                lines.push(format!("signed_sum = {signed_sum}"));
                lines.push(format!("n0 = {n0}"));
                lines.push(format!("class_bound = {bound}"));
            }
            ClassBound::SumVanishes => {
                lines.push("signed_sum = 0".into());
                lines.push("class_bound = none".into());
            }
        }
        j["class"] = serde_json::to_value(&cb)?;
    }
    Ok(Outcome::new(lines, j, true))
}

fn cmd_morse_eval(complex: &str, class: &str) -> Result<Outcome, Failure> {
    let (text, _) = read_source(complex)?;
    let m = MorseComplex::from_json_str(&text)?;
    let sigma = m.parse_class(class)?;
    let v = evaluate_class(&m, &sigma)?;
    Ok(Outcome::new(vec![format!("value = {v}")], json!({"complex": m.name, "value": v.to_string()}), true))
}

fn dispatch(cmd: &Command) -> Result<Outcome, Failure> {
    match cmd {
        Command::Validate { datum } => cmd_validate(datum),
        Command::Gamma { datum, k, range } => cmd_gamma(datum, *k, range.as_deref()),
        Command::H { datum } => cmd_h(datum),
        Command::Bounds { datum, target } => cmd_bounds(datum, target.as_deref()),
        Command::Triangle { datum, window } => cmd_triangle(datum, window),
        Command::Cobordism(CobordismCommand::Verify { cob, window }) => cmd_cob_verify(cob, window),
        Command::Cobordism(CobordismCommand::Compose { a, b, output }) => cmd_cob_compose(a, b, output),
        Command::Cobordism(CobordismCommand::GammaCompare { cob, range }) => cmd_cob_compare(cob, range),
        Command::Seifert(SeifertCommand::R { orders }) => cmd_seifert_r(orders),
        Command::Seifert(SeifertCommand::Gamma { spaces }) => cmd_seifert_gamma(spaces),
        Command::Seifert(SeifertCommand::Whitehead { p, q }) => cmd_seifert_whitehead(*p, *q),
        Command::Seifert(SeifertCommand::Sweep { max_product, lengths }) => cmd_seifert_sweep(*max_product, lengths),
        Command::Lattice(args) => cmd_lattice(args),
        Command::Morse(MorseCommand::Eval { complex, class }) => cmd_morse_eval(complex, class),
    }
}

/// Runs one invocation, writing to the given streams; returns the exit code.
pub fn run_with<I, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = OsString>,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok(o) => {
            let _ = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("json value serializes"))
            } else {
                o.lines.iter().try_for_each(|l| writeln!(out, "{l}"))
            };
            if o.pass {
                0
            } else {
                1
            }
        }
        Err(Failure::Input(msg)) => {
            let _ = if cli.json {
                writeln!(out, "{}", json!({"error": msg}))
            } else {
                writeln!(err, "error: {msg}")
            };
            2
        }
    }
}

pub fn run<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// Convenience for tests: runs with string arguments and captures stdout and stderr.
pub fn run_capture(args: &[&str]) -> (i32, String, String) {
    let argv = std::iter::once("floer-gamma").chain(args.iter().copied()).map(OsString::from);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&err).into_owned())
}
