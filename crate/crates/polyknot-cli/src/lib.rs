//! Command-line front end: parse knot files, run the exact checks,
//! classification, coefficient paths, the density perturbation, diagram
//! invariants, and emit plot-ready curve samples.
//!
//! Knots are JSON objects with coefficient-string arrays in ascending
//! degree (exact decimals like `"-19.1167"` or rationals like `"3/7"`):
//!
//! ```json
//! { "name": "figure-eight", "d": 6,
//!   "f": ["51.84", "-164.016", "-31.92", "8.5", "1"],
//!   "g": ["-50.2762", "160.508", "32.439", "-29.11", "-1.5", "1"],
//!   "h": ["0", "-35.8427", "187.195", "11.2832", "-19.1167", "-0.48", "0.5"] }
//! ```
//!
//! Exit codes: 0 on success, 1 on property-negative results (a failed
//! embedding check or a path validation with failures), 2 on errors.

use std::fmt::Write as _;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num::{One, Signed, ToPrimitive};
use serde_json::{json, Value};

use polyknot::diagram::{
    determinant, diagram_with_retries, gauss_code, jones, writhe, LaurentPoly,
};
use polyknot::isotopy::{
    canonical_path_pd, densify_to_q, reparam_path, retraction_path, shrink_isotopy,
    target_affine_path, validate_path, CoefficientPath, PathReport, Space,
};
use polyknot::knotspace::{
    check_embedding, classify, sign_class, EmbeddingWitness, PolyMap3, SpaceMembership,
};
use polyknot::polycore::{parse_rat, Rat, UniPoly};

#[derive(Parser)]
#[command(name = "polyknot", version, about = "Exact polynomial-knot toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide exactly whether a knot file is an embedding.
    Check {
        file: String,
    },
    /// Space membership flags and the sign class at level d.
    Classify {
        file: String,
        #[arg(long)]
        d: Option<usize>,
    },
    /// Construct a named coefficient path and validate it at samples.
    Path {
        #[arg(long, value_enum)]
        kind: PathKindArg,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        #[arg(long, value_enum)]
        require: Option<SpaceArg>,
        #[arg(long)]
        d: Option<usize>,
        /// Scale for the reparam kind (positive rational).
        #[arg(long, default_value = "1/2")]
        alpha: String,
        /// Shift for the reparam kind.
        #[arg(long, default_value = "1")]
        beta: String,
        /// Diagonal scales for the affine kind, comma separated.
        #[arg(long, default_value = "2,2,2")]
        scales: String,
        /// Shear terms for the affine kind, comma separated.
        #[arg(long, default_value = "0,0,0")]
        shears: String,
        /// Offsets for the affine kind, comma separated.
        #[arg(long, default_value = "0,0,0")]
        offsets: String,
        file: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Perturb a map with the exact degree sequence into a knot nearby.
    Densify {
        #[arg(long)]
        eps: String,
        file: String,
        #[arg(long)]
        out: String,
    },
    /// Gauss code, writhe, Jones polynomial and determinant of a projection.
    Diagram {
        file: String,
        #[arg(long, default_value_t = 1)]
        drop_axis: u8,
        #[arg(long)]
        out: Option<String>,
    },
    /// Evenly spaced curve samples as CSV rows `t,x,y,z`.
    Sample {
        file: String,
        /// Shrink-family parameter; 1 is the knot itself.
        #[arg(long, default_value = "1")]
        s: String,
        #[arg(long, default_value = "-4")]
        tmin: String,
        #[arg(long, default_value = "4")]
        tmax: String,
        #[arg(long, default_value_t = 400)]
        n: usize,
        #[arg(long)]
        out: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PathKindArg {
    Shrink,
    Retract,
    Reparam,
    Affine,
    CanonicalPd,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    O,
    P,
    Q,
}

impl From<SpaceArg> for Space {
    fn from(s: SpaceArg) -> Space {
        match s {
            SpaceArg::O => Space::O,
            SpaceArg::P => Space::P,
            SpaceArg::Q => Space::Q,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    DegreeCap(String),
    BadRange(String),
    Io(String),
    Failed(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::DegreeCap(m) => write!(f, "degree cap error: {m}"),
            CliError::BadRange(m) => write!(f, "bad range: {m}"),
            CliError::Io(m) => write!(f, "io error: {m}"),
            CliError::Failed(m) => write!(f, "{m}"),
        }
    }
}

/// A parsed knot file: the map, the working level `d`, and the name.
pub struct KnotFile {
    pub map: PolyMap3,
    pub d: usize,
    pub name: Option<String>,
}

/// Parses the JSON knot format. Coefficients must be exact strings (decimal
/// or `p/q`) or integer literals; `d` defaults to the smallest level
/// admitting the map and is checked against the caps when given.
pub fn parse_knot_file(text: &str) -> Result<KnotFile, CliError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| CliError::Parse(format!("invalid JSON at line {}: {}", e.line(), e)))?;
    let obj = value.as_object().ok_or_else(|| CliError::Parse("expected a JSON object".into()))?;
    let mut comps: Vec<UniPoly> = Vec::with_capacity(3);
    for field in ["f", "g", "h"] {
        let arr = obj
            .get(field)
            .and_then(|v| v.as_array())
            .ok_or_else(|| CliError::Parse(format!("field {field:?} must be an array")))?;
        if arr.is_empty() {
            return Err(CliError::Parse(format!("field {field:?} must be non-empty")));
        }
        let mut coeffs = Vec::with_capacity(arr.len());
        for (i, c) in arr.iter().enumerate() {
            let r = match c {
                Value::String(s) => parse_rat(s),
                Value::Number(n) if n.is_i64() => Some(Rat::from_integer(n.as_i64().unwrap().into())),
                _ => None,
            };
            let r = r.ok_or_else(|| {
                CliError::Parse(format!("field {field:?}, entry {i}: not an exact coefficient"))
            })?;
            coeffs.push(r);
        }
        comps.push(UniPoly::from_coeffs(coeffs));
    }
    let h = comps.pop().unwrap();
    let g = comps.pop().unwrap();
    let f = comps.pop().unwrap();
    let map = PolyMap3::new(f, g, h);
    let min_d = map.min_cap_degree();
    let d = match obj.get("d") {
        None => min_d,
        Some(v) => {
            let d = v
                .as_u64()
                .ok_or_else(|| CliError::Parse("field \"d\" must be a positive integer".into()))?
                as usize;
            if d < min_d {
                return Err(CliError::DegreeCap(format!(
                    "d = {d} violates the degree caps; the map needs d ≥ {min_d}"
                )));
            }
            d
        }
    };
    let name = obj.get("name").and_then(|v| v.as_str()).map(str::to_owned);
    Ok(KnotFile { map, d, name })
}

/// Serializes a map back to the knot-file format; parsing the result
/// reproduces the coefficients exactly.
pub fn emit_knot_file(map: &PolyMap3, d: usize, name: Option<&str>) -> String {
    let comp = |p: &UniPoly| -> Value {
        let coeffs: Vec<Value> = if p.is_zero() {
            vec![Value::String("0".into())]
        } else {
            p.coeffs().iter().map(|c| Value::String(rat_string(c))).collect()
        };
        Value::Array(coeffs)
    };
    let mut obj = serde_json::Map::new();
    if let Some(n) = name {
        obj.insert("name".into(), Value::String(n.into()));
    }
    obj.insert("d".into(), json!(d));
    obj.insert("f".into(), comp(&map.f));
    obj.insert("g".into(), comp(&map.g));
    obj.insert("h".into(), comp(&map.h));
    serde_json::to_string_pretty(&Value::Object(obj)).unwrap()
}

fn rat_string(c: &Rat) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn rat_json(c: &Rat) -> Value {
    json!({ "exact": rat_string(c), "approx": c.to_f64() })
}

fn witness_json(w: &EmbeddingWitness) -> Value {
    let kind = match w.kind {
        polyknot::knotspace::WitnessKind::SelfIntersection => "self-intersection",
        polyknot::knotspace::WitnessKind::CriticalPoint => "critical-point",
    };
    json!({
        "kind": kind,
        "s0": { "lo": rat_json(&w.s0.lo), "hi": rat_json(&w.s0.hi) },
        "t0": { "lo": rat_json(&w.t0.lo), "hi": rat_json(&w.t0.hi) },
    })
}

fn membership_json(m: &SpaceMembership) -> Value {
    json!({
        "d": m.d,
        "in_a": m.in_a, "in_b": m.in_b, "in_c": m.in_c,
        "embedding": m.is_embedding,
        "in_o": m.in_o, "in_p": m.in_p, "in_q": m.in_q,
    })
}

fn jones_json(v: &LaurentPoly) -> Value {
    let terms: serde_json::Map<String, Value> =
        v.terms().map(|(e, c)| (e.to_string(), json!(c))).collect();
    json!({ "variable": v.var.to_string(), "terms": terms, "pretty": v.to_string() })
}

fn report_json(kind: &str, report: &PathReport, required: Option<Space>) -> Value {
    let failures: Vec<Value> = report
        .failures
        .iter()
        .map(|(s, w)| json!({ "s": rat_string(s), "witness": witness_json(w) }))
        .collect();
    json!({
        "kind": kind,
        "samples": report.n_samples,
        "failures": failures,
        "space_preserved": report.space_preserved,
        "required": required.map(|s| format!("{s:?}")),
    })
}

fn read_file(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))
}

fn write_output(path: Option<&str>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        None => {
            writeln!(stdout, "{text}").map_err(|e| CliError::Io(e.to_string()))?;
        }
        Some(p) => {
            std::fs::write(p, format!("{text}\n")).map_err(|e| CliError::Io(format!("{p}: {e}")))?;
        }
    }
    Ok(())
}

fn parse_rat_arg(text: &str, what: &str) -> Result<Rat, CliError> {
    parse_rat(text).ok_or_else(|| CliError::Parse(format!("{what}: not an exact number: {text:?}")))
}

fn parse_triple(text: &str, what: &str) -> Result<[Rat; 3], CliError> {
    let parts: Vec<_> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::Parse(format!("{what}: expected three comma-separated numbers")));
    }
    Ok([
        parse_rat_arg(parts[0], what)?,
        parse_rat_arg(parts[1], what)?,
        parse_rat_arg(parts[2], what)?,
    ])
}

/// Runs the CLI against the given arguments. The seed drives the rotation
/// retries of the diagram subcommand.
pub fn run<I, S>(args: I, seed: u64, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap renders its own help/usage text
            let rendered = e.render().to_string();
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(stdout, "{rendered}") } else { write!(stderr, "{rendered}") };
            return code;
        }
    };
    match dispatch(cli.command, seed, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn dispatch(cmd: Command, seed: u64, stdout: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Check { file } => {
            let knot = parse_knot_file(&read_file(&file)?)?;
            let verdict = check_embedding(&knot.map);
            let witnesses: Vec<Value> = verdict.witnesses().iter().map(witness_json).collect();
            let out = json!({
                "embedding": verdict.is_embedding(),
                "witnesses": witnesses,
            });
            writeln!(stdout, "{}", serde_json::to_string_pretty(&out).unwrap())
                .map_err(|e| CliError::Io(e.to_string()))?;
            Ok(if verdict.is_embedding() { 0 } else { 1 })
        }
        Command::Classify { file, d } => {
            let knot = parse_knot_file(&read_file(&file)?)?;
            let d = check_level(d, &knot)?;
            let m = classify(&knot.map, d);
            let sc = sign_class(&knot.map, d).ok();
            let out = json!({
                "membership": membership_json(&m),
                "degrees": [
                    knot.map.f.degree().to_string(),
                    knot.map.g.degree().to_string(),
                    knot.map.h.degree().to_string(),
                ],
                "sign_class": sc.map(|s| json!([s.e1, s.e2, s.e3])),
            });
            writeln!(stdout, "{}", serde_json::to_string_pretty(&out).unwrap())
                .map_err(|e| CliError::Io(e.to_string()))?;
            Ok(0)
        }
        Command::Path {
            kind,
            samples,
            require,
            d,
            alpha,
            beta,
            scales,
            shears,
            offsets,
            file,
            out,
        } => {
            let knot = parse_knot_file(&read_file(&file)?)?;
            let d = check_level(d, &knot)?;
            if samples < 2 {
                return Err(CliError::BadRange("--samples must be at least 2".into()));
            }
            let (name, path): (&str, CoefficientPath) = match kind {
                PathKindArg::Shrink => (
                    "shrink",
                    shrink_isotopy(&knot.map).map_err(|e| CliError::Failed(e.to_string()))?,
                ),
                PathKindArg::Retract => (
                    "retract",
                    retraction_path(&knot.map).map_err(|e| CliError::Failed(e.to_string()))?,
                ),
                PathKindArg::Reparam => {
                    let a = parse_rat_arg(&alpha, "--alpha")?;
                    let b = parse_rat_arg(&beta, "--beta")?;
                    (
                        "reparam",
                        reparam_path(&knot.map, &a, &b)
                            .map_err(|e| CliError::Failed(e.to_string()))?,
                    )
                }
                PathKindArg::Affine => {
                    let al = parse_triple(&scales, "--scales")?;
                    let be = parse_triple(&shears, "--shears")?;
                    let ga = parse_triple(&offsets, "--offsets")?;
                    (
                        "affine",
                        target_affine_path(&knot.map, &al, &be, &ga)
                            .map_err(|e| CliError::Failed(e.to_string()))?,
                    )
                }
                PathKindArg::CanonicalPd => (
                    "canonical-pd",
                    canonical_path_pd(&knot.map, d)
                        .map_err(|e| CliError::Failed(e.to_string()))?,
                ),
            };
            let report = validate_path(&path, samples, d, require.map(Space::from));
            let payload = report_json(name, &report, require.map(Space::from));
            write_output(
                out.as_deref(),
                &serde_json::to_string_pretty(&payload).unwrap(),
                stdout,
            )?;
            Ok(if report.all_passed() && report.space_preserved { 0 } else { 1 })
        }
        Command::Densify { eps, file, out } => {
            let knot = parse_knot_file(&read_file(&file)?)?;
            let eps = parse_rat_arg(&eps, "--eps")?;
            if !eps.is_positive() {
                return Err(CliError::BadRange("--eps must be positive".into()));
            }
            let psi = densify_to_q(&knot.map, knot.d, &eps)
                .map_err(|e| CliError::Failed(e.to_string()))?;
            let rho2 = polyknot::knotspace::metric_rho_squared(&knot.map, &psi, knot.d)
                .map_err(|e| CliError::Failed(e.to_string()))?;
            let emitted = emit_knot_file(&psi, knot.d, knot.name.as_deref());
            std::fs::write(&out, format!("{emitted}\n"))
                .map_err(|e| CliError::Io(format!("{out}: {e}")))?;
            let half = &eps / Rat::from_integer(2.into());
            let report = json!({
                "out": out,
                "eps": rat_string(&eps),
                "rho_squared": rat_json(&rho2),
                "bound_squared": rat_json(&(&half * &half)),
                "within_bound": rho2 <= &half * &half,
                "in_q": classify(&psi, knot.d).in_q,
            });
            writeln!(stdout, "{}", serde_json::to_string_pretty(&report).unwrap())
                .map_err(|e| CliError::Io(e.to_string()))?;
            Ok(0)
        }
        Command::Diagram { file, drop_axis, out } => {
            if !(1..=3).contains(&drop_axis) {
                return Err(CliError::BadRange("--drop-axis must be 1, 2 or 3".into()));
            }
            let knot = parse_knot_file(&read_file(&file)?)?;
            let diagram = diagram_with_retries(&knot.map, drop_axis, seed, 8)
                .map_err(|e| CliError::Failed(e.to_string()))?;
            let v = jones(&diagram).map_err(|e| CliError::Failed(e.to_string()))?;
            let det = determinant(&diagram).map_err(|e| CliError::Failed(e.to_string()))?;
            let payload = json!({
                "drop_axis": drop_axis,
                "crossings": diagram.crossing_count(),
                "writhe": writhe(&diagram),
                "gauss_code": gauss_code(&diagram),
                "jones": jones_json(&v),
                "determinant": det,
            });
            write_output(
                out.as_deref(),
                &serde_json::to_string_pretty(&payload).unwrap(),
                stdout,
            )?;
            Ok(0)
        }
        Command::Sample { file, s, tmin, tmax, n, out } => {
            let knot = parse_knot_file(&read_file(&file)?)?;
            let s = parse_rat_arg(&s, "--s")?;
            if s.is_negative() || s > Rat::one() {
                return Err(CliError::BadRange("--s must lie in [0, 1]".into()));
            }
            let tmin = parse_rat_arg(&tmin, "--tmin")?;
            let tmax = parse_rat_arg(&tmax, "--tmax")?;
            if n < 2 || tmin >= tmax {
                return Err(CliError::BadRange("need --n >= 2 and --tmin < --tmax".into()));
            }
            let map = if s == Rat::one() {
                knot.map.clone()
            } else {
                shrink_isotopy(&knot.map)
                    .map_err(|e| CliError::Failed(e.to_string()))?
                    .eval(&s)
            };
            let mut csv = String::from("t,x,y,z\n");
            let (a, b) = (tmin.to_f64().unwrap(), tmax.to_f64().unwrap());
            for k in 0..n {
                let t = a + (b - a) * k as f64 / (n - 1) as f64;
                let p = map.eval_f64(t);
                let _ = writeln!(csv, "{t},{},{},{}", p[0], p[1], p[2]);
            }
            std::fs::write(&out, csv).map_err(|e| CliError::Io(format!("{out}: {e}")))?;
            writeln!(stdout, "{}", json!({ "out": out, "rows": n }))
                .map_err(|e| CliError::Io(e.to_string()))?;
            Ok(0)
        }
    }
}

fn check_level(d: Option<usize>, knot: &KnotFile) -> Result<usize, CliError> {
    match d {
        None => Ok(knot.d),
        Some(d) => {
            if d < knot.map.min_cap_degree() {
                Err(CliError::DegreeCap(format!(
                    "d = {d} violates the degree caps; the map needs d ≥ {}",
                    knot.map.min_cap_degree()
                )))
            } else {
                Ok(d)
            }
        }
    }
}
