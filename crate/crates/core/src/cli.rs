//! The `wpoly` command line. Every command prints one JSON document on
//! standard output. Exit codes: 0 success, 1 domain error (the document is
//! `{"error": {...}}`), 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::audit::{run_all, AuditConfig};
use crate::duality::{dual_to_json, polar_dual};
use crate::equilibria::classify;
use crate::fixtures;
use crate::generator::Generator;
use crate::json::PolyhedronFile;
use crate::monostatic::{find_obtuse_cycles, find_obtuse_paths, monostable_weighting, monounstable_weighting, ObtuseCycle};
use crate::polyhedron::{Polyhedron, WeightedPolyhedron};
use crate::tipping::tip_path;
use crate::vertex_links::{admissible_signature, dihedral_sign, vertex_signature};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "wpoly", version, about = "Static equilibria of weighted convex polyhedra, in exact arithmetic")]
pub struct Cli {
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Indented JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Compact JSON output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// A JSON file path or `fixtures:<name>`.
#[derive(Debug, Clone, Args)]
pub struct Input {
    /// Path to a polyhedron JSON file, or `fixtures:<name>`.
    pub input: String,
    /// Named center of a fixture, e.g. `M33` for `fixtures:nine_centers`.
    #[arg(long)]
    pub center: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stable faces, saddle edges and unstable vertices.
    Analyze(Input),
    /// Vertex signatures and dihedral classes of a tetrahedron.
    Signatures(Input),
    /// Obtuse paths of a tetrahedron.
    ObtusePath(Input),
    /// Obtuse cycles of a tetrahedron.
    ObtuseCycle(Input),
    /// Center making a tetrahedron monostable on one face.
    LoadMonostable {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        face: usize,
    },
    /// Center making a tetrahedron mono-unstable.
    LoadMonounstable {
        #[command(flatten)]
        input: Input,
        /// Obtuse cycle `a,b,c,d`; defaults to the first one found.
        #[arg(long, value_parser = parse_cycle)]
        cycle: Option<[usize; 4]>,
    },
    /// Polar dual about the center.
    Dual(Input),
    /// Quasi-static tipping from one face or from every face.
    Tip {
        #[command(flatten)]
        input: Input,
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        start_face: Option<usize>,
        #[arg(long)]
        all: bool,
    },
    /// Mono-monostatic polyhedron with the given face and vertex counts.
    Generate {
        #[arg(long)]
        faces: usize,
        #[arg(long)]
        vertices: usize,
        /// Also write the polyhedron in the file schema here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs the reproducibility audit and reports each criterion.
    VerifyPaper {
        /// Smaller samples, for smoke tests.
        #[arg(long)]
        quick: bool,
    },
}

/// A failed command: exit code plus the JSON error document.
#[derive(Debug)]
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
    details: Value,
}

impl Failure {
    fn domain(kind: &'static str, message: impl ToString) -> Self {
        Failure { code: EXIT_DOMAIN, kind, message: message.to_string(), details: Value::Null }
    }

    fn usage(message: impl ToString) -> Self {
        Failure { code: EXIT_USAGE, kind: "usage", message: message.to_string(), details: Value::Null }
    }

    fn with_details(mut self, details: Value) -> Self {
        self.details = details;
        self
    }

    fn to_json(&self) -> Value {
        let mut e = json!({"kind": self.kind, "message": self.message});
        if !self.details.is_null() {
            e["details"] = self.details.clone();
        }
        json!({ "error": e })
    }
}

type Outcome = Result<Value, Failure>;

enum Loaded {
    Fixture(fixtures::Fixture),
    File(PolyhedronFile),
}

fn load(input: &Input) -> Result<Loaded, Failure> {
    if let Some(name) = input.input.strip_prefix("fixtures:") {
        let f = fixtures::get(name)
            .ok_or_else(|| Failure::usage(format!("unknown fixture {name:?}; known: {}", fixtures::NAMES.join(", "))))?;
        if let Some(c) = &input.center {
            if f.named_center(c).is_none() {
                let known: Vec<&str> = f.named_centers.iter().map(|(n, _)| *n).collect();
                return Err(Failure::usage(format!("fixture {name} has no center {c:?}; known: {known:?}")));
            }
        }
        return Ok(Loaded::Fixture(f));
    }
    if input.center.is_some() {
        return Err(Failure::usage("--center applies to fixtures only"));
    }
    let text = std::fs::read_to_string(&input.input)
        .map_err(|e| Failure::domain("io", format!("{}: {e}", input.input)))?;
    PolyhedronFile::parse_str(&text).map(Loaded::File).map_err(model_failure)
}

fn model_failure(e: crate::polyhedron::ModelError) -> Failure {
    use crate::polyhedron::ModelError;
    let f = Failure::domain("invalid_input", &e);
    match &e {
        ModelError::Invalid(r) => f.with_details(serde_json::to_value(&r.violations).expect("serializable")),
        ModelError::CenterNotInterior { face } => {
            Failure::domain("center_not_interior", &e).with_details(json!({ "face": face }))
        }
        _ => f,
    }
}

fn load_shape(input: &Input) -> Result<Polyhedron, Failure> {
    match load(input)? {
        Loaded::Fixture(f) => Ok(f.shape),
        Loaded::File(file) => file.polyhedron().map_err(model_failure),
    }
}

fn load_weighted(input: &Input) -> Result<WeightedPolyhedron, Failure> {
    match load(input)? {
        Loaded::Fixture(f) => match &input.center {
            Some(c) => f.with_named_center(c).expect("checked in load"),
            None => f.weighted(),
        }
        .map_err(model_failure),
        Loaded::File(file) => file.weighted().map_err(model_failure),
    }
}

fn file_json(wp: &WeightedPolyhedron) -> Value {
    serde_json::to_value(PolyhedronFile::from_weighted(wp)).expect("serializable")
}

fn lower<T: std::fmt::Debug>(x: T) -> String {
    format!("{x:?}").to_lowercase()
}

fn analyze(input: &Input) -> Outcome {
    let wp = load_weighted(input)?;
    Ok(classify(&wp).to_json(wp.shape()))
}

fn signatures(input: &Input) -> Outcome {
    let t = load_shape(input)?;
    let mut vertices = Vec::new();
    for v in 0..t.num_vertices() {
        let s = vertex_signature(&t, v).map_err(|e| Failure::domain("not_a_tetrahedron", e))?;
        vertices.push(json!({
            "vertex": v,
            "signature": [s.m, s.n],
            "right_face_angles": s.right_face_angles,
            "right_dihedrals": s.right_dihedrals,
            "admissible": admissible_signature(&s),
        }));
    }
    let edges: Vec<Value> = t
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| json!({"edge": [e.endpoints.0, e.endpoints.1], "dihedral": lower(dihedral_sign(&t, i))}))
        .collect();
    Ok(json!({"vertices": vertices, "edges": edges}))
}

fn obtuse_path(input: &Input) -> Outcome {
    let t = load_shape(input)?;
    let paths = find_obtuse_paths(&t).map_err(|e| Failure::domain("not_a_tetrahedron", e))?;
    Ok(json!({"exists": !paths.is_empty(), "paths": paths.iter().map(|p| p.0).collect::<Vec<_>>()}))
}

fn obtuse_cycle(input: &Input) -> Outcome {
    let t = load_shape(input)?;
    let cycles = find_obtuse_cycles(&t).map_err(|e| Failure::domain("not_a_tetrahedron", e))?;
    Ok(json!({"exists": !cycles.is_empty(), "cycles": cycles.iter().map(|c| c.0).collect::<Vec<_>>()}))
}

fn load_monostable(input: &Input, face: usize) -> Outcome {
    let t = load_shape(input)?;
    let w = monostable_weighting(&t, face).map_err(|e| Failure::domain("construction_failed", e))?;
    Ok(json!({
        "face": face,
        "trace": w.region.to_json(),
        "report": w.report.to_json(w.weighted.shape()),
        "polyhedron": file_json(&w.weighted),
    }))
}

fn parse_cycle(s: &str) -> Result<[usize; 4], String> {
    let parts: Vec<usize> = s.split(',').map(|p| p.trim().parse::<usize>()).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    parts.try_into().map_err(|_| "expected four comma-separated vertex indices".to_string())
}

fn load_monounstable(input: &Input, cycle: Option<[usize; 4]>) -> Outcome {
    let t = load_shape(input)?;
    let cycle = match cycle {
        Some(c) => ObtuseCycle(c),
        None => *find_obtuse_cycles(&t)
            .map_err(|e| Failure::domain("not_a_tetrahedron", e))?
            .first()
            .ok_or_else(|| Failure::domain("construction_failed", "the tetrahedron has no obtuse cycle"))?,
    };
    let w = monounstable_weighting(&t, cycle).map_err(|e| Failure::domain("construction_failed", e))?;
    Ok(json!({
        "trace": w.trace_json(),
        "report": w.report.to_json(w.weighted.shape()),
        "polyhedron": file_json(&w.weighted),
    }))
}

fn dual(input: &Input) -> Outcome {
    let wp = load_weighted(input)?;
    let (d, corr) = polar_dual(&wp);
    Ok(dual_to_json(&d, &corr))
}

fn tip(input: &Input, start_face: Option<usize>) -> Outcome {
    let wp = load_weighted(input)?;
    let n = wp.shape().num_faces();
    let one = |f: usize| -> Result<Value, Value> {
        if f >= n {
            return Err(json!({"start_face": f, "kind": "no_such_face", "message": format!("face {f} of {n}")}));
        }
        tip_path(&wp, f)
            .map(|p| p.to_json(&wp))
            .map_err(|e| json!({"start_face": f, "kind": "tipping_failed", "message": e.to_string()}))
    };
    match start_face {
        Some(f) => one(f).map_err(|e| {
            let kind = if f >= n { "no_such_face" } else { "tipping_failed" };
            Failure::domain(kind, e["message"].as_str().unwrap_or_default()).with_details(json!({ "start_face": f }))
        }),
        None => {
            let results: Vec<Result<Value, Value>> = (0..n).map(one).collect();
            let failed = results.iter().filter(|r| r.is_err()).count();
            let paths: Vec<Value> = results.into_iter().map(|r| r.unwrap_or_else(|e| e)).collect();
            if failed > 0 {
                return Err(Failure::domain("tipping_failed", format!("{failed} of {n} starting faces failed"))
                    .with_details(json!({ "paths": paths })));
            }
            Ok(json!({ "paths": paths }))
        }
    }
}

fn generate(faces: usize, vertices: usize, out: Option<&PathBuf>) -> Outcome {
    let c = Generator::new().generate(faces, vertices).map_err(|e| Failure::domain("generation_failed", e))?;
    let report = classify(&c.weighted);
    let fv = c.weighted.shape().face_vector();
    let polyhedron = file_json(&c.weighted);
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&polyhedron).expect("serializable");
        std::fs::write(path, text + "\n").map_err(|e| Failure::domain("io", format!("{}: {e}", path.display())))?;
    }
    Ok(json!({
        "face_vector": [fv.f, fv.e, fv.v],
        "report": report.to_json(c.weighted.shape()),
        "trace": c.trace_json(),
        "polyhedron": polyhedron,
    }))
}

fn verify_paper(seed: u64, quick: bool) -> Outcome {
    let cfg = if quick { AuditConfig::quick(seed) } else { AuditConfig::full(seed) };
    let results = run_all(&cfg);
    let failed = results.iter().filter(|r| !r.passed).count();
    let doc = json!({
        "seed": seed,
        "quick": quick,
        "passed": results.len() - failed,
        "failed": failed,
        "criteria": results,
    });
    if failed > 0 {
        return Err(Failure::domain("criteria_failed", format!("{failed} criteria failed")).with_details(doc));
    }
    Ok(doc)
}

fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Analyze(i) => analyze(i),
        Command::Signatures(i) => signatures(i),
        Command::ObtusePath(i) => obtuse_path(i),
        Command::ObtuseCycle(i) => obtuse_cycle(i),
        Command::LoadMonostable { input, face } => load_monostable(input, *face),
        Command::LoadMonounstable { input, cycle } => load_monounstable(input, *cycle),
        Command::Dual(i) => dual(i),
        Command::Tip { input, start_face, .. } => tip(input, *start_face),
        Command::Generate { faces, vertices, out } => generate(*faces, *vertices, out.as_ref()),
        Command::VerifyPaper { quick } => verify_paper(cli.seed, *quick),
    }
}

fn render(v: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(v).expect("serializable")
    } else {
        serde_json::to_string(v).expect("serializable")
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Usage errors go to `err`; everything else to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let target: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let (code, doc) = match dispatch(&cli) {
        Ok(v) => (EXIT_OK, v),
        Err(f) if f.code == EXIT_USAGE => {
            let _ = writeln!(err, "error: {}", f.message);
            return EXIT_USAGE;
        }
        Err(f) => (f.code, f.to_json()),
    };
    let _ = writeln!(out, "{}", render(&doc, cli.pretty));
    code
}

/// Convenience for tests: runs `args` and captures stdout, stderr and the
/// exit code.
pub fn run_captured<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(args, &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&err).into_owned())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_ok(args: &[&str]) -> Value {
        let (code, out, err) = run_captured(std::iter::once("wpoly").chain(args.iter().copied()));
        assert_eq!(code, EXIT_OK, "{out}{err}");
        serde_json::from_str(&out).unwrap()
    }

    #[test]
    fn analyze_named_center() {
        let v = run_ok(&["analyze", "fixtures:nine_centers", "--center", "M33"]);
        assert_eq!(v["S"].as_array().unwrap().len(), 3);
        assert_eq!(v["U"].as_array().unwrap().len(), 3);
        assert_eq!(v["maxwell"], json!(true));
    }

    #[test]
    fn usage_errors_exit_two() {
        let (code, _, _) = run_captured(["wpoly", "analyze"]);
        assert_eq!(code, EXIT_USAGE);
        let (code, _, err) = run_captured(["wpoly", "analyze", "fixtures:nope"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("unknown fixture"));
        let (code, _, _) = run_captured(["wpoly", "tip", "fixtures:seed585"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn domain_errors_exit_one_with_json() {
        let (code, out, _) = run_captured(["wpoly", "analyze", "fixtures:t0"]);
        assert_eq!(code, EXIT_DOMAIN);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["error"]["kind"], json!("center_not_interior"));
    }
}
