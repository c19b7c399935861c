use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_rational::BigRational;
use serde_json::{json, Value};
use tensegrity_core::elliptic::{model_invariants_check, torsion_subgroup};
use tensegrity_core::linking::{
    derive_intersection_formulas, intersection_params_at, linking_matrix, persistence_certificate,
    remark_check, IntersectionFormulas, DEFAULT_MARGIN,
};
use tensegrity_core::par::{self, Execution};
use tensegrity_core::scalar::Scalar;
use tensegrity_core::tensegrity::{Construction, EdgeKind, Framework};
use tensegrity_core::trajectory::{build_curves, trajectory_samples};
use tensegrity_core::verify;
use tensegrity_core::Error;

use crate::args::{AnalyzeArgs, CommonArgs, Format, SweepArgs, TrajectoryArgs};
use crate::input::XValue;

/// Failure modes mapped onto exit codes 2 (usage) and 1 (verification).
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Failed(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Parse(_) | Error::IrrationalBranch(_) | Error::NotOnCurve { .. } => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Failed(other.to_string()),
        }
    }
}

pub type CliResult = Result<(), CliError>;

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Usage(format!("{}: {e}", path.display()))
}

/// Writes to the file if given, else to standard output.
fn emit(out: Option<&Path>, content: &str) -> CliResult {
    match out {
        Some(p) => fs::write(p, content).map_err(|e| io_err(p, e)),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn format_or(format: Option<Format>, default: Format, allowed: &[Format], command: &str) -> Result<Format, CliError> {
    let f = format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Usage(format!("{command} does not support --format {}", f.name())))
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}

/// Floats in CSV and text output use 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

fn value_of<S: Scalar>(v: &S) -> Value {
    if S::EXACT {
        Value::String(v.render())
    } else {
        serde_json::Number::from_f64(v.to_f64()).map_or(Value::Null, Value::Number)
    }
}

pub fn analyze(args: &AnalyzeArgs) -> CliResult {
    let x = XValue::parse(&args.x).map_err(CliError::Usage)?;
    if !x.in_open_unit_interval() {
        return Err(CliError::Usage(format!("x = {} is outside (0, 1)", args.x)));
    }
    let format = format_or(args.common.format, Format::Json, &[Format::Json, Format::Obj, Format::Text], "analyze")?;
    let c = Construction::new()?;
    let f = derive_intersection_formulas(&c.group)?;
    let (report, obj) = match x {
        XValue::Exact(r) => {
            let fw = c.realize::<BigRational>(r)?;
            (analysis_report(&fw, &f, args.tol), fw.to_obj())
        }
        XValue::Float(v) => {
            let fw = c.realize::<f64>(v)?;
            (analysis_report(&fw, &f, args.tol), fw.to_obj())
        }
    };
    let content = match format {
        Format::Json => pretty(&report),
        Format::Obj => obj,
        _ => analysis_text(&report),
    };
    emit(args.common.out.as_deref(), &content)
}

pub fn analysis_report<S: Scalar>(fw: &Framework<S>, f: &IntersectionFormulas, tol: f64) -> Value {
    let residual = fw.equilibrium_residual();
    let intersection = match intersection_params_at(f, &fw.point) {
        Ok(p) => json!({
            "tau": value_of(&p.tau),
            "r1": value_of(&p.r1),
            "r2": value_of(&p.r2),
            "classification": p.classification,
        }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let linking = match linking_matrix(fw, DEFAULT_MARGIN) {
        Ok(m) => json!({ "matrix": m.entries, "mutual_hopf_link": m.is_mutual_hopf_link() }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let edges: Vec<Value> = fw
        .edges
        .iter()
        .map(|e| {
            let l2 = fw.edge_length_sq(e);
            json!({
                "i": e.i,
                "j": e.j,
                "kind": e.kind,
                "stress": value_of(&e.stress),
                "length_sq": value_of(&l2),
                "length": l2.to_f64().sqrt(),
            })
        })
        .collect();
    let record = fw.to_record();
    json!({
        "pipeline": if S::EXACT { "exact" } else { "numeric" },
        "point": {
            "x": value_of(&fw.point.x),
            "y": value_of(&fw.point.y),
            "branch": fw.point.branch,
            "stable": fw.stable,
        },
        "normalization": record.normalization,
        "nodes": record.nodes,
        "nodes_exact": record.nodes_exact,
        "edges": edges,
        "cable_lengths_equal": fw.cables_equal_length(if S::EXACT { 0.0 } else { tol }),
        "equilibrium_residual": residual,
        "equilibrium_ok": fw.in_equilibrium(tol),
        "intersection": intersection,
        "linking": linking,
    })
}

fn show(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.as_f64().map_or_else(|| n.to_string(), fmt_f64),
        other => other.to_string(),
    }
}

fn analysis_text(r: &Value) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "pipeline: {}", show(&r["pipeline"]));
    let _ = writeln!(s, "point: x = {}, y = {}, stable = {}", show(&r["point"]["x"]), show(&r["point"]["y"]), r["point"]["stable"]);
    let _ = writeln!(s, "equilibrium residual: {}", show(&r["equilibrium_residual"]));
    let _ = writeln!(s, "cable lengths equal: {}", r["cable_lengths_equal"]);
    let i = &r["intersection"];
    if let Some(e) = i.get("error") {
        let _ = writeln!(s, "intersection: {}", show(e));
    } else {
        let _ = writeln!(
            s,
            "tau = {}, R1 = {}, R2 = {} ({})",
            show(&i["tau"]),
            show(&i["r1"]),
            show(&i["r2"]),
            show(&i["classification"])
        );
    }
    let l = &r["linking"];
    if let Some(e) = l.get("error") {
        let _ = writeln!(s, "linking: {}", show(e));
    } else {
        let _ = writeln!(s, "linking matrix (mutual Hopf link: {}):", l["mutual_hopf_link"]);
        for row in l["matrix"].as_array().into_iter().flatten() {
            let _ = writeln!(s, "  {row}");
        }
    }
    s
}

struct Frame {
    body: String,
    row: Vec<String>,
}

pub const SWEEP_HEADER: [&str; 12] = [
    "frame",
    "x",
    "y",
    "strut_length",
    "cable_c1_length",
    "cable_c2_length",
    "cables_equal",
    "tau",
    "r1",
    "r2",
    "classification",
    "linking",
];

fn sweep_frame(c: &Construction, f: &IntersectionFormulas, k: usize, x: f64, format: Format, tol: f64) -> Result<Frame, Error> {
    let fw = c.realize::<f64>(x)?;
    let length = |kind: EdgeKind| {
        fw.edges_of(kind)
            .map(|e| fw.edge_length_sq(e).sqrt())
            .fold(0.0_f64, f64::max)
    };
    let (tau, r1, r2, class) = match intersection_params_at(f, &fw.point) {
        Ok(p) => (
            fmt_f64(p.tau),
            fmt_f64(p.r1),
            fmt_f64(p.r2),
            serde_json::to_value(p.classification).expect("serializes").as_str().unwrap_or_default().to_string(),
        ),
        Err(_) => (String::new(), String::new(), String::new(), "pole".to_string()),
    };
    let linking = match linking_matrix(&fw, DEFAULT_MARGIN) {
        Ok(m) if m.is_mutual_hopf_link() => "hopf",
        Ok(_) => "not-hopf",
        Err(_) => "degenerate",
    };
    let row = vec![
        k.to_string(),
        fmt_f64(x),
        fmt_f64(fw.point.y),
        fmt_f64(length(EdgeKind::Strut)),
        fmt_f64(length(EdgeKind::CableC1)),
        fmt_f64(length(EdgeKind::CableC2)),
        fw.cables_equal_length(tol).to_string(),
        tau,
        r1,
        r2,
        class,
        linking.to_string(),
    ];
    let body = match format {
        Format::Json => {
            let mut s = fw.to_json();
            s.push('\n');
            s
        }
        _ => fw.to_obj(),
    };
    Ok(Frame { body, row })
}

pub fn sweep(args: &SweepArgs) -> CliResult {
    let from = XValue::parse(&args.from).map_err(CliError::Usage)?.as_f64();
    let to = XValue::parse(&args.to).map_err(CliError::Usage)?.as_f64();
    if !(0.0 <= from && from < to && to <= 1.0) {
        return Err(CliError::Usage(format!("need 0 <= from < to <= 1, got {from} and {to}")));
    }
    if args.steps < 2 {
        return Err(CliError::Usage("--steps must be at least 2".into()));
    }
    if !matches!(args.format, Format::Obj | Format::Json) {
        return Err(CliError::Usage(format!("sweep frames are obj or json, not {}", args.format.name())));
    }
    let c = Construction::new()?;
    let f = derive_intersection_formulas(&c.group)?;
    let xs = par::linspace(from, to, args.steps);
    let indexed: Vec<(usize, f64)> = xs.into_iter().enumerate().collect();
    let frames = par::map(Execution::default(), &indexed, |&(k, x)| {
        sweep_frame(&c, &f, k, x, args.format, args.tol)
    });
    let frames = frames.into_iter().collect::<Result<Vec<_>, _>>()?;

    fs::create_dir_all(&args.out).map_err(|e| io_err(&args.out, e))?;
    let width = (args.steps - 1).to_string().len().max(3);
    let mut csv = csv::Writer::from_writer(Vec::new());
    csv.write_record(SWEEP_HEADER).map_err(|e| CliError::Failed(e.to_string()))?;
    for (k, fr) in frames.iter().enumerate() {
        let path = args.out.join(format!("frame_{k:0width$}.{}", args.format.name()));
        fs::write(&path, &fr.body).map_err(|e| io_err(&path, e))?;
        csv.write_record(&fr.row).map_err(|e| CliError::Failed(e.to_string()))?;
    }
    let bytes = csv.into_inner().map_err(|e| CliError::Failed(e.to_string()))?;
    let path = args.out.join("summary.csv");
    fs::write(&path, bytes).map_err(|e| io_err(&path, e))
}

pub fn verify(args: &CommonArgs) -> CliResult {
    let format = format_or(args.format, Format::Json, &[Format::Json, Format::Text], "verify")?;
    let report = verify::run_all(Execution::default());
    let content = match format {
        Format::Json => pretty(&report.to_json_value()),
        _ => {
            let mut s = String::new();
            for c in &report.checks {
                let status = if c.passed { "pass" } else { "FAIL" };
                let kind = if c.hard { "" } else { " (reported)" };
                let _ = writeln!(s, "{status:4}  {}{kind}", c.name);
                if !c.passed {
                    let _ = writeln!(s, "      {}", show(&c.detail));
                }
            }
            let _ = writeln!(s, "verdict: {}", report.verdict);
            s
        }
    };
    emit(args.out.as_deref(), &content)?;
    if report.verdict {
        Ok(())
    } else {
        let names: Vec<_> = report.failures().iter().map(|c| c.name).collect();
        Err(CliError::Failed(names.join(", ")))
    }
}

pub fn persistence(args: &CommonArgs) -> CliResult {
    let format = format_or(args.format, Format::Json, &[Format::Json, Format::Text], "persistence")?;
    let c = Construction::new()?;
    let f = derive_intersection_formulas(&c.group)?;
    let report = persistence_certificate(&f, Execution::default())?;
    let remark = remark_check(&report);
    let content = match format {
        Format::Json => pretty(&json!({ "certificate": report, "remark": remark, "verdict": report.verdict })),
        _ => {
            let mut s = String::new();
            for r in &report.functions {
                let _ = writeln!(s, "{}: {:?}, sign {} on the stable arc", r.name, r.status, r.sign_at_half);
                let _ = writeln!(s, "  Res_y = {}", r.resultant_text);
                for root in &r.roots_in_01 {
                    let _ = writeln!(s, "  root in [{}, {}]: {:?}", root.lo, root.hi, root.vanishes_on);
                }
            }
            let _ = writeln!(s, "remark consistent: {}", remark.consistent);
            let _ = writeln!(s, "verdict: {}", report.verdict);
            s
        }
    };
    emit(args.out.as_deref(), &content)?;
    if report.verdict {
        Ok(())
    } else {
        Err(CliError::Failed("persistence certificate".into()))
    }
}

pub fn torsion(args: &CommonArgs) -> CliResult {
    let format = format_or(args.format, Format::Json, &[Format::Json, Format::Text], "torsion")?;
    let t = torsion_subgroup()?;
    let iso = model_invariants_check()?;
    let report = t.report();
    let content = match format {
        Format::Json => pretty(&json!({ "torsion": report, "isomorphism": iso })),
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "structure: Z/{} x Z/{}", report.structure[0], report.structure[1]);
            for e in &report.elements {
                let _ = writeln!(s, "  {:>24}  order {}", format!("({}, {})", e.point[0], e.point[1]), e.order);
            }
            let _ = writeln!(s, "scale factor u = {}", iso.scale_factor);
            s
        }
    };
    emit(args.out.as_deref(), &content)
}

pub fn trajectory(args: &TrajectoryArgs) -> CliResult {
    let format = format_or(args.common.format, Format::Csv, &[Format::Csv, Format::Json], "trajectory")?;
    if args.steps < 2 {
        return Err(CliError::Usage("--steps must be at least 2".into()));
    }
    let curves = build_curves()?;
    let c = Construction::new()?;
    let f = derive_intersection_formulas(&c.group)?;
    let pts = trajectory_samples(&curves, &f, args.steps, Execution::default())?;
    let content = match format {
        Format::Json => pretty(&serde_json::to_value(&pts).expect("serializes")),
        _ => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| CliError::Failed(e.to_string());
            w.write_record(["x", "y", "u", "v", "K_residual"]).map_err(io)?;
            for p in &pts {
                w.write_record([p.x, p.y, p.u, p.v, p.k_residual].map(fmt_f64)).map_err(io)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| CliError::Failed(e.to_string()))?).expect("utf8")
        }
    };
    emit(args.common.out.as_deref(), &content)?;
    let worst = pts.iter().map(|p| p.k_residual).fold(0.0, f64::max);
    if worst < args.tol {
        Ok(())
    } else {
        Err(CliError::Failed(format!("max K residual {worst:e} >= {:e}", args.tol)))
    }
}
