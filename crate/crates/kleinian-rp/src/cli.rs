//! Command-line front end: classify / decide / construct / witnesses /
//! enumerate / mindist / verify-353 with JSON output and machine-readable
//! exit codes (0 decided, 1 error, 2 out of scope).

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::config::{EnumCaps, Tolerances};
use crate::geometry;
use crate::moebius::{construct_generators, params_of, MoebiusMap, ParamTriple};
use crate::oracle::{self, Status};
use crate::orbifold353;
use crate::witnesses::WitnessSet;

pub const CONFIG_ENV: &str = "KLEINIAN_RP_CONFIG";

#[derive(Parser)]
#[command(name = "kleinian-rp", version, about = "Discreteness of two-generator groups with real trace parameters")]
struct Cli {
    /// JSON config file (tolerances, caps, output mode)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Emit JSON instead of human-readable text
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true)]
    eps: Option<f64>,
    #[arg(long, global = true)]
    eps_det: Option<f64>,
    #[arg(long, global = true)]
    eps_axis: Option<f64>,
    #[arg(long, global = true)]
    eps_match: Option<f64>,
    /// Maximum denominator for rational angle recognition
    #[arg(long, global = true)]
    max_denominator: Option<u32>,
    /// Cap on the integer parameters n, m, p, k
    #[arg(long, global = true)]
    cap: Option<u32>,
    #[arg(long, global = true)]
    renorm_period: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a parameter triple
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long = "beta-prime", allow_hyphen_values = true)]
        beta_prime: f64,
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
    },
    /// Decide a generator pair given as matrices
    Decide {
        /// JSON file {"f": [[re,im],...], "g": [[re,im],...]}
        #[arg(long = "matrix-file")]
        matrix_file: PathBuf,
    },
    /// Construct the normalized generator pair for a triple
    Construct {
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long = "beta-prime", allow_hyphen_values = true)]
        beta_prime: f64,
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
    },
    /// Build the witness elements and report classes and residuals
    Witnesses {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "matrix_file")]
        beta: Option<f64>,
        #[arg(long = "beta-prime", allow_hyphen_values = true, requires = "beta")]
        beta_prime: Option<f64>,
        #[arg(long, allow_hyphen_values = true, requires = "beta")]
        gamma: Option<f64>,
        #[arg(long = "matrix-file")]
        matrix_file: Option<PathBuf>,
    },
    /// Stream the integer-parameter instances of a table row as JSON lines
    Enumerate {
        #[arg(long)]
        row: u32,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimal distance between elliptic axes of the given orders
    Mindist { p: u32, q: u32 },
    /// Verify the minimal-volume orbifold group has real parameters
    #[command(name = "verify-353")]
    Verify353,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ConfigFile {
    eps: Option<f64>,
    eps_det: Option<f64>,
    eps_axis: Option<f64>,
    eps_match: Option<f64>,
    max_denominator: Option<u32>,
    cap: Option<u32>,
    renorm_period: Option<u32>,
    output: Option<String>,
}

struct Settings {
    tol: Tolerances,
    caps: EnumCaps,
    json: bool,
}

fn load_settings(cli: &Cli) -> Result<Settings, String> {
    let mut tol = Tolerances::default();
    let mut caps = EnumCaps::default();
    let mut json = cli.json;

    let path = cli
        .config
        .clone()
        .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
    if let Some(path) = path {
        let text = fs::read_to_string(&path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let file: ConfigFile =
            serde_json::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))?;
        if let Some(v) = file.eps {
            tol.eps = v;
        }
        if let Some(v) = file.eps_det {
            tol.eps_det = v;
        }
        if let Some(v) = file.eps_axis {
            tol.eps_axis = v;
        }
        if let Some(v) = file.eps_match {
            tol.eps_match = v;
        }
        if let Some(v) = file.max_denominator {
            tol.max_denominator = v;
        }
        if let Some(v) = file.cap {
            caps = EnumCaps::uniform(v);
        }
        if let Some(v) = file.renorm_period {
            tol.renorm_period = v;
        }
        if let Some(mode) = file.output {
            json = json || mode == "json" || mode == "jsonl";
        }
    }
    if let Some(v) = cli.eps {
        tol.eps = v;
    }
    if let Some(v) = cli.eps_det {
        tol.eps_det = v;
    }
    if let Some(v) = cli.eps_axis {
        tol.eps_axis = v;
    }
    if let Some(v) = cli.eps_match {
        tol.eps_match = v;
    }
    if let Some(v) = cli.max_denominator {
        tol.max_denominator = v;
    }
    if let Some(v) = cli.cap {
        caps = EnumCaps::uniform(v);
    }
    if let Some(v) = cli.renorm_period {
        tol.renorm_period = v;
    }

    if tol.eps <= 0.0 || tol.eps_det <= 0.0 || tol.eps_axis <= 0.0 || tol.eps_match <= 0.0 {
        return Err("tolerances must be positive".into());
    }
    if caps.max_n < 2 || caps.max_m < 2 || caps.max_p < 2 || caps.max_k < 2 {
        return Err("caps must be at least 2".into());
    }
    if tol.max_denominator < 10 {
        return Err("max denominator must be at least 10".into());
    }
    Ok(Settings { tol, caps, json })
}

/// Render a JSON value with floats at 12 significant digits.
pub fn render_json(value: &Value) -> String {
    let mut s = String::new();
    write_value(&mut s, value);
    s
}

fn write_value(out: &mut String, v: &Value) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                out.push_str(&i.to_string());
            } else if let Some(u) = n.as_u64() {
                out.push_str(&u.to_string());
            } else {
                out.push_str(&format_sig(n.as_f64().unwrap_or(f64::NAN)));
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).unwrap()),
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(out, item);
            }
            out.push(']');
        }
        Value::Object(map) => {
            out.push('{');
            for (i, (k, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&serde_json::to_string(k).unwrap());
                out.push(':');
                write_value(out, item);
            }
            out.push('}');
        }
    }
}

/// 12 significant digits, JSON-compatible.
fn format_sig(x: f64) -> String {
    if !x.is_finite() {
        return "null".into();
    }
    if x == 0.0 {
        return "0.0".into();
    }
    format!("{x:.11e}")
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).unwrap_or(Value::Null)
}

/// Entry point: parse `argv`, dispatch, return the process exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version through this path
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let settings = match load_settings(&cli) {
        Ok(s) => s,
        Err(msg) => {
            eprintln!("kleinian-rp: {msg}");
            return 1;
        }
    };
    match dispatch(&cli.command, &settings) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("kleinian-rp: {msg}");
            1
        }
    }
}

fn verdict_value(v: &oracle::DiscretenessVerdict) -> Value {
    json!({
        "status": to_value(&v.status),
        "space_class": to_value(&v.space.kind),
        "k": v.space.pi_lox_count,
        "reason": v.space.reason,
        "triple": to_value(&v.triple),
        "input_triple": to_value(&v.input_triple),
        "matched_rows": to_value(&v.matched_rows),
        "theorem_a": to_value(&v.theorem_a),
        "agreement": to_value(&v.agreement),
        "notes": to_value(&v.notes),
    })
}

fn print_verdict_human(v: &oracle::DiscretenessVerdict) {
    let status = match v.status {
        Status::Discrete => "discrete",
        Status::NotDiscrete => "not discrete",
        Status::OutOfScope => "out of scope",
    };
    println!("status: {status}");
    let kind = match v.space.kind {
        crate::taxonomy::SpaceKind::Elementary => "elementary",
        crate::taxonomy::SpaceKind::InvariantPlane => "invariant plane",
        crate::taxonomy::SpaceKind::TrulySpatial => "truly spatial",
        crate::taxonomy::SpaceKind::Degenerate => "degenerate",
    };
    println!("space class: {kind} (k = {}, {})", v.space.pi_lox_count, v.space.reason);
    for m in &v.matched_rows {
        let params: Vec<String> = m.params.iter().map(|(k, x)| format!("{k} = {x}")).collect();
        if params.is_empty() {
            println!("row {}: {}", m.row, row_description(m.row));
        } else {
            println!("row {}: {} [{}]", m.row, row_description(m.row), params.join(", "));
        }
    }
    if let Some(outcome) = &v.theorem_a {
        match &outcome.matched {
            Some(m) => {
                let params: Vec<String> = m.params.iter().map(|(k, x)| format!("{k} = {x}")).collect();
                println!("clause {}: satisfied [{}]", m.clause, params.join(", "));
            }
            None => println!("no clause satisfied"),
        }
        if let Some(a) = v.agreement {
            println!("paths agree: {a}");
        }
    }
    for n in &v.notes {
        println!("note: {n}");
    }
}

fn verdict_exit(v: &oracle::DiscretenessVerdict) -> i32 {
    match v.status {
        Status::OutOfScope => 2,
        _ => 0,
    }
}

fn dispatch(cmd: &Command, s: &Settings) -> Result<i32, String> {
    match cmd {
        Command::Classify { beta, beta_prime, gamma } => {
            let triple = ParamTriple::new(*beta, *beta_prime, *gamma);
            let v = oracle::decide_triple(&triple, &s.caps, &s.tol).map_err(|e| e.to_string())?;
            if s.json {
                println!("{}", render_json(&verdict_value(&v)));
            } else {
                print_verdict_human(&v);
            }
            Ok(verdict_exit(&v))
        }
        Command::Decide { matrix_file } => {
            let text = fs::read_to_string(matrix_file)
                .map_err(|e| format!("cannot read {}: {e}", matrix_file.display()))?;
            let pair: MatrixPair = serde_json::from_str(&text).map_err(|e| e.to_string())?;
            let v = oracle::decide_matrices(&pair.f, &pair.g, &s.caps, &s.tol).map_err(|e| e.to_string())?;
            if s.json {
                println!("{}", render_json(&verdict_value(&v)));
            } else {
                print_verdict_human(&v);
            }
            Ok(verdict_exit(&v))
        }
        Command::Construct { beta, beta_prime, gamma } => {
            let triple = ParamTriple::new(*beta, *beta_prime, *gamma);
            let pair = construct_generators(&triple, &s.tol).map_err(|e| e.to_string())?;
            let round_trip = params_of(&pair.f, &pair.g, &s.tol).map_err(|e| e.to_string())?;
            let out = json!({
                "f": to_value(&pair.f),
                "g": to_value(&pair.g),
                "alternate_c": [pair.alternate_c.re, pair.alternate_c.im],
                "round_trip": to_value(&round_trip),
            });
            println!("{}", render_json(&out));
            Ok(0)
        }
        Command::Witnesses { beta, beta_prime, gamma, matrix_file } => {
            let (f, g) = if let Some(path) = matrix_file {
                let text =
                    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                let pair: MatrixPair = serde_json::from_str(&text).map_err(|e| e.to_string())?;
                (pair.f, pair.g)
            } else {
                let (Some(b), Some(bp), Some(gm)) = (beta, beta_prime, gamma) else {
                    return Err("need --beta/--beta-prime/--gamma or --matrix-file".into());
                };
                let pair = construct_generators(&ParamTriple::new(*b, *bp, *gm), &s.tol)
                    .map_err(|e| e.to_string())?;
                (pair.f, pair.g)
            };
            let ws = WitnessSet::build(&f, &g, &s.tol).map_err(|e| e.to_string())?;
            let witness_entry = |m: &MoebiusMap, class: &crate::moebius::ElementClass, residual: Option<f64>| {
                json!({
                    "trace": [m.trace().re, m.trace().im],
                    "class": to_value(class),
                    "word_residual": to_value(&residual),
                })
            };
            let out = json!({
                "n": ws.n,
                "h1": witness_entry(&ws.h1, &ws.h1_class, Some(ws.residuals.h1)),
                "h2": witness_entry(&ws.h2, &ws.h2_class, Some(ws.residuals.h2)),
                "h3": ws.h3.as_ref().map(|m| witness_entry(m, ws.h3_class.as_ref().unwrap(), ws.residuals.h3)),
                "h4": ws.h4.as_ref().map(|m| witness_entry(m, ws.h4_class.as_ref().unwrap(), ws.residuals.h4)),
                "tilde_h1_residual": to_value(&ws.residuals.tilde_h1),
            });
            println!("{}", render_json(&out));
            Ok(0)
        }
        Command::Enumerate { row, out } => {
            let items = oracle::enumerate_row(*row, &s.caps, &s.tol).map_err(|e| e.to_string())?;
            let mut lines = String::new();
            for e in &items {
                let v = json!({
                    "row": e.row,
                    "params": to_value(&e.params),
                    "triple": to_value(&e.triple),
                });
                lines.push_str(&render_json(&v));
                lines.push('\n');
            }
            match out {
                Some(path) => {
                    let mut fh = fs::File::create(path)
                        .map_err(|e| format!("cannot create {}: {e}", path.display()))?;
                    fh.write_all(lines.as_bytes()).map_err(|e| e.to_string())?;
                }
                None => print!("{lines}"),
            }
            Ok(0)
        }
        Command::Mindist { p, q } => {
            let cosh = geometry::min_distance(*p, *q).map_err(|e| e.to_string())?;
            let rho = cosh.acosh();
            if s.json {
                println!("{}", render_json(&json!({"p": p, "q": q, "cosh_rho_min": cosh, "rho_min": rho})));
            } else {
                println!("cosh rho_min({p}, {q}) = {cosh:.6}");
                println!("rho_min({p}, {q}) = {rho:.6}");
            }
            Ok(0)
        }
        Command::Verify353 => {
            let report = orbifold353::verify_353(&s.tol).map_err(|e| e.to_string())?;
            if s.json {
                println!("{}", render_json(&to_value(&report)));
            } else {
                println!("triple: ({:.12}, {:.12}, {:.12})", report.triple.beta, report.triple.beta_prime, report.triple.gamma);
                println!("max parameter imaginary part: {:.3e}", report.max_param_imag);
                println!("|tr e| = {:.3e}", report.e_trace_abs);
                println!("e^2 = identity residual: {:.3e}", report.word_residual);
                println!(
                    "axis(e) orthogonality residuals: {:.3e} (f), {:.3e} (g)",
                    report.axis_orthogonality.0, report.axis_orthogonality.1
                );
                println!("common point residual: {:.3e}", report.common_point_residual);
                println!("h1^4 residual: {:.3e}", report.h1_order4_residual);
                println!("h2^3 residual: {:.3e}", report.h2_order3_residual);
                match report.matched_row {
                    Some(r) => println!("matched table row: {r}"),
                    None => println!("matched table row: none"),
                }
                println!("order-3 conjugation check: skipped (needs an element outside the generators)");
                println!("overall: {}", if report.pass { "PASS" } else { "FAIL" });
            }
            Ok(if report.pass { 0 } else { 1 })
        }
    }
}

#[derive(Deserialize)]
struct MatrixPair {
    f: MoebiusMap,
    g: MoebiusMap,
}

/// Short human description of each table row's shape.
fn row_description(row: u32) -> &'static str {
    match row {
        1 => "both elliptic (orders n, m), gamma = -4cos^2(pi/p), cos(pi/p) > sin(pi/n)sin(pi/m)",
        2 => "both elliptic (orders n, m), gamma <= -4",
        3 => "both elliptic of odd order n >= 7, gamma = -(beta+2)^2, beta' = beta",
        4 => "elliptic order n with parabolic, gamma = -4cos^2(pi/p)",
        5 => "elliptic order n with parabolic, gamma <= -4",
        6 => "parabolic/hyperbolic pair, gamma = -4cos^2(pi/p)",
        7 => "parabolic/hyperbolic pair, gamma <= -4",
        8 => "elliptic order n with hyperbolic, disjoint axes, gamma = -4cos^2(pi/p)",
        9 => "elliptic order n with hyperbolic, disjoint axes, gamma <= -4",
        10 => "odd order n >= 5, gamma = -(beta+2)^2, beta' = 4(beta+4)cos^2(pi/p) - 4",
        11 => "odd order n >= 5, gamma = -(beta+2)^2, beta' >= 4(beta+3)",
        12 => "beta = -3, gamma = (sqrt5-3)/2, beta' = 2cos^2(pi/p)(7+3sqrt5) - 4",
        13 => "beta = -3, gamma = (sqrt5-3)/2, beta' >= 2(5+3sqrt5)",
        14 => "even order n, gamma = 2(cos(2pi/m)+cos(2pi/n)) (m even), beta' = 4cos^2(pi/p)/gamma - 4gamma/beta",
        15 => "even order n, gamma = 2(cos(2pi/m)+cos(2pi/n)) (m even), beta' >= 4/gamma - 4gamma/beta",
        16 => "even order n, gamma >= beta + 4, beta' = 4cos^2(pi/p)/gamma - 4gamma/beta",
        17 => "even order n, gamma >= beta + 4, beta' >= 4/gamma - 4gamma/beta",
        18 => "even order n, gamma = 2(cos(2pi/m)+cos(2pi/n)) (m odd), beta' = 4(gamma-beta)cos^2(pi/p)/gamma - 4gamma/beta",
        19 => "even order n, gamma = 2(cos(2pi/m)+cos(2pi/n)) (m odd), beta' >= 4(gamma-beta)/gamma - 4gamma/beta",
        20 => "beta = -2, gamma = 2cos(2pi/m) (m odd >= 5), beta' = gamma^2 + 4gamma",
        21 => "odd order n, gamma = 2(cos(2pi/m)+cos(2pi/n)) (m even), beta' = (2/gamma)(cos(pi/p)-cos(pi/n)) + U",
        22 => "odd order n, gamma = 2(cos(2pi/m)+cos(2pi/n)) (m even), beta' >= 2(1-cos(pi/n))/gamma + U",
        23 => "odd order n, gamma >= beta + 4, beta' = (2/gamma)(cos(pi/p)-cos(pi/n)) + U",
        24 => "odd order n, gamma >= beta + 4, beta' >= 2(1-cos(pi/n))/gamma + U",
        25 => "odd order n, gamma = 2(cos(2pi/m)+cos(2pi/n)) (m odd), beta' = 2(gamma-beta)cos(pi/p)/gamma + U",
        26 => "odd order n, gamma = 2(cos(2pi/m)+cos(2pi/n)) (m odd), beta' >= 2(gamma-beta)/gamma + U",
        27 => "odd order n >= 7, gamma = (beta+4)(beta+1), beta' = 2(beta+2)^2 cos(pi/p)/(beta+1) + V",
        28 => "odd order n >= 7, gamma = (beta+4)(beta+1), beta' >= 2(beta+2)^2/(beta+1) + V",
        29 => "odd order n >= 5 coprime to 3, gamma = beta + 3",
        30 => "odd order n >= 5 coprime to 3, gamma = 2(beta + 3)",
        31 => "beta = -3, gamma = 2cos(2pi/m) - 1 (m odd >= 7), beta' = 2(gamma^2+2gamma+3)/gamma",
        32 => "beta = -3, gamma = 2cos(pi/m) - 1 (m >= 4 coprime to 3), beta' = gamma^2 + 4gamma",
        33 => "beta = -3, gamma = 2cos(2pi/m) (m >= 7, gcd(m,4) <= 2), beta' = 2gamma",
        34 => "(-3, sqrt5, (sqrt5+1)/2)",
        35 => "(-3, sqrt5, (sqrt5-1)/2)",
        36 => "(-3, sqrt5-1, (sqrt5-1)/2)",
        37 => "((sqrt5-5)/2, sqrt5, (sqrt5-1)/2)",
        38 => "((sqrt5-5)/2, (3sqrt5-1)/2, (sqrt5-1)/2)",
        39 => "((sqrt5-5)/2, 3(sqrt5+1)/2, (sqrt5-1)/2)",
        40 => "((sqrt5-5)/2, 3(sqrt5+1)/2, (sqrt5+1)/2)",
        41 => "((sqrt5-5)/2, (7sqrt5+9)/2, sqrt5+2)",
        _ => "unknown row",
    }
}
