//! Command-line front end. Every command produces a [`Report`], printed as
//! text or JSON; the exit status is 0 when all checks pass, 1 on a failed
//! check or computation, and 2 on a usage error.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::acceptance::{run_all, run_criterion};
use crate::algebra::{parse_modulus, parse_scalar, FieldSpec, GfElem};
use crate::families::{
    build_family, invariant, is_strange, residue_profile, singular_point, FamilyParams, FamilyParamsJson, FieldJson, Tag,
};
use crate::fibres::{
    classify_fibre, parameter_grid, scan, singular_locus, specialize_fibre, Bounds, FibreClass, Fibration, PlaneCurveFq,
};
use crate::isomorphisms::{apply_iso, check_iso, iso_maps, IsoWitness, WitnessJson};
use crate::resolution::{covering_check, dynkin_type, resolve_pencil, PencilSpec, ResolutionReport};
use crate::rng;
use crate::tower::{
    is_nonhyperelliptic, pseudocanonical_E_equals_F2, to_quartic_model, tower_invariant_and_aut, validate_presentation,
    verify_breve_relation, TowerKind, TowerPresentation,
};

#[derive(Debug, Parser)]
#[command(name = "quartics", version, about = "Quartic normal forms over F_q(t), their fibrations and pencil resolutions")]
pub struct Cli {
    /// Degree m of the constant field GF(2^m).
    #[arg(long, global = true, default_value_t = 1)]
    pub field_m: u32,
    /// Modulus of GF(2^m) as a polynomial in u, e.g. "u^2+u+1".
    #[arg(long, global = true)]
    pub field_poly: Option<String>,
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the report to a file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a normal form and report its singular point and invariants.
    Family(FamilyArgs),
    /// Validate a tower presentation and derive its quartic model.
    Tower(TowerArgs),
    /// Apply an isomorphism witness to a model.
    Iso(IsoArgs),
    /// Classify one member of a fibration.
    Fibre(FibreArgs),
    /// Classify the members of a fibration over a parameter grid.
    Scan(ScanArgs),
    /// Resolve the base points of a pencil.
    Resolve(ResolveArgs),
    /// Run the acceptance criteria.
    Accept(AcceptArgs),
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub tag: String,
    #[arg(long, default_value = "0")]
    pub a: String,
    #[arg(long, default_value = "0")]
    pub b: String,
    #[arg(long, default_value = "0")]
    pub c: String,
    #[arg(long, default_value = "0")]
    pub d: String,
}

#[derive(Debug, Args)]
pub struct TowerArgs {
    /// A, B, C or D.
    #[arg(long)]
    pub kind: String,
    /// Comma-separated constants in the kind's order (A: c0,c1,A2,B0,B1).
    #[arg(long)]
    pub consts: String,
}

#[derive(Debug, Args)]
pub struct IsoArgs {
    #[arg(long)]
    pub tag: String,
    /// Comma-separated model parameters a,b,c[,d].
    #[arg(long)]
    pub params: String,
    /// Comma-separated witness constants.
    #[arg(long)]
    pub witness: String,
    /// Check the substitution identity.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct FibreArgs {
    /// pi3, pi4, pi5, quartic-pencil or cubic-pencil.
    #[arg(long)]
    pub fibration: String,
    /// Comma-separated elements of GF(2^m), written in the generator g.
    #[arg(long)]
    pub params: String,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub fibration: String,
    /// Keep only grid points with the given parameter value, e.g. d=0; repeatable.
    #[arg(long = "fix")]
    pub fix: Vec<String>,
    /// Classify this many seeded random points instead of the whole grid.
    #[arg(long)]
    pub sample: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ResolveArgs {
    /// quartic or cubic.
    #[arg(long, default_value = "quartic")]
    pub pencil: String,
}

#[derive(Debug, Args)]
pub struct AcceptArgs {
    /// Run a single criterion.
    #[arg(long)]
    pub criterion: Option<u32>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn compute(e: impl std::fmt::Display) -> CliError {
    CliError::Compute(e.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub anchor: String,
    pub pass: bool,
}

/// Top-level output record of every command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub checks: Vec<CheckJson>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.command);
        render(&mut s, "inputs", &self.inputs, 1);
        render(&mut s, "results", &self.results, 1);
        for c in &self.checks {
            s.push_str(&format!("[{}] {} ({})\n", if c.pass { "pass" } else { "FAIL" }, c.name, c.anchor));
        }
        s
    }
}

fn render(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth - 1);
    match v {
        Value::Object(m) if !m.is_empty() => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, x) in m {
                render(out, k, x, depth + 1);
            }
        }
        Value::String(s) => out.push_str(&format!("{pad}{key}: {s}\n")),
        other => out.push_str(&format!("{pad}{key}: {other}\n")),
    }
}

fn check(name: impl Into<String>, anchor: &str, pass: bool) -> CheckJson {
    CheckJson { name: name.into(), anchor: anchor.into(), pass }
}

fn field_of(cli: &Cli) -> Result<FieldSpec, CliError> {
    match &cli.field_poly {
        None => FieldSpec::smallest(cli.field_m).map_err(usage),
        Some(p) => FieldSpec::new(cli.field_m, parse_modulus(p).map_err(usage)?).map_err(usage),
    }
}

fn split(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).collect()
}

fn gf_elem(s: &str, f: FieldSpec) -> Result<GfElem, CliError> {
    parse_scalar(s, f).map_err(usage)?.as_constant().ok_or_else(|| usage(format!("{s} is not a constant of GF(2^{})", f.m())))
}

fn gf_list(p: &[GfElem]) -> Vec<String> {
    p.iter().map(|c| c.to_string()).collect()
}

fn family(f: FieldSpec, a: &FamilyArgs) -> Result<Report, CliError> {
    let tag: Tag = a.tag.parse().map_err(usage)?;
    let params = FamilyParams::parse(tag, f, &[&a.a, &a.b, &a.c, &a.d]).map_err(usage)?;
    let model = build_family(&params).map_err(compute)?;
    let strange = is_strange(&model.form).map_err(compute)?;
    let point = singular_point(&model).map_err(compute)?;
    let profile = residue_profile(&model).ok();
    let results = json!({
        "form": model.form.to_string(),
        "singular_point": point.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "invariant": invariant(&params).map(|i| i.to_string()),
        "strange": strange,
        "residue_profile": profile,
    });
    Ok(Report {
        command: "family".into(),
        inputs: serde_json::to_value(FamilyParamsJson::from(&params)).map_err(compute)?,
        results,
        checks: vec![
            check("strange", "tangent lines pass through (0:1:0)", strange),
            check("singular point", "F, F_x, F_y, F_z vanish at the point", true),
        ],
    })
}

fn tower(f: FieldSpec, a: &TowerArgs) -> Result<Report, CliError> {
    let kind: TowerKind = a.kind.parse().map_err(usage)?;
    let consts = split(&a.consts);
    let p = TowerPresentation::parse(kind, f, &consts).map_err(usage)?;
    let relations = validate_presentation(&p).map_err(compute)?;
    let nonhyp = is_nonhyperelliptic(&p);
    let mut results = json!({
        "relations": relations.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "nonhyperelliptic": nonhyp,
    });
    let mut checks = Vec::new();
    if kind != TowerKind::D {
        let (iota, aut) = tower_invariant_and_aut(&p).map_err(compute)?;
        results["invariant"] = json!(iota.map(|i| i.to_string()));
        results["automorphism"] = json!(aut.map(|s| format!("x -> x + {}", s.shift)));
        results["pseudocanonical_equals_F2"] = json!(pseudocanonical_E_equals_F2(&p).map_err(compute)?);
    }
    if nonhyp {
        let model = to_quartic_model(&p).map_err(compute)?;
        let breve = verify_breve_relation(&p);
        results["model"] = serde_json::to_value(FamilyParamsJson::from(&model)).map_err(compute)?;
        results["breve_relation"] = json!(breve);
        checks.push(check("model builds", "derived parameters satisfy the family constraints", build_family(&model).is_ok()));
        checks.push(check("breve relation", "relation satisfied by the breve generators", breve));
    }
    let mut inputs = p.to_json();
    inputs["field"] = serde_json::to_value(FieldJson::from_field(f)).map_err(compute)?;
    Ok(Report { command: "tower".into(), inputs, results, checks })
}

fn iso(f: FieldSpec, a: &IsoArgs) -> Result<Report, CliError> {
    let tag: Tag = a.tag.parse().map_err(usage)?;
    let params = FamilyParams::parse(tag, f, &split(&a.params)).map_err(usage)?;
    let w = IsoWitness::parse(tag, f, &split(&a.witness)).map_err(usage)?;
    let model = build_family(&params).map_err(compute)?;
    let target = apply_iso(&model, &w).map_err(compute)?;
    let maps = iso_maps(&w, &params).map_err(compute)?;
    let mut results = json!({
        "target": FamilyParamsJson::from(&target.params),
        "maps": {"z": maps.z_num.to_string(), "y": maps.y_num.to_string(), "den": maps.den.to_string()},
        "invariant": invariant(&target.params).map(|i| i.to_string()),
    });
    let mut checks = vec![check("invariant", "the invariant is preserved", invariant(&target.params) == invariant(&params))];
    if a.verify {
        let v = check_iso(&model, &target.params, &w);
        results["verified"] = json!(v.is_ok());
        match &v {
            Ok(c) => results["scalar"] = json!(c.scalar.to_string()),
            Err(e) => results["residual"] = json!(e.to_string()),
        }
        checks.push(check("substitution", "the maps carry the target quartic onto the source", v.is_ok()));
    }
    Ok(Report {
        command: "iso".into(),
        inputs: json!({"model": FamilyParamsJson::from(&params), "witness": WitnessJson::from(&w)}),
        results,
        checks,
    })
}

fn class_json(c: &FibreClass) -> Value {
    match c {
        FibreClass::IntegralQuartic { sing_point, multiplicity, delta, tangent_type, samples } => json!({
            "class": c.variant(),
            "singular_point": sing_point.to_string(),
            "point_degree": sing_point.degree(),
            "multiplicity": multiplicity,
            "delta": delta,
            "tangent_type": tangent_type,
            "tangent_samples": samples,
        }),
        FibreClass::ConicPlusDoubleLine { line, conic } => {
            json!({"class": c.variant(), "line": line.to_string(), "conic": conic.to_string()})
        }
        FibreClass::DoubleConic { conic } => json!({"class": c.variant(), "conic": conic.to_string()}),
        FibreClass::LinePlusTripleLine { line, triple_line } => {
            json!({"class": c.variant(), "line": line.to_string(), "triple_line": triple_line.to_string()})
        }
        FibreClass::Other { components } => json!({"class": c.variant(), "components": components}),
    }
}

fn fibre(f: FieldSpec, a: &FibreArgs) -> Result<Report, CliError> {
    let fib: Fibration = a.fibration.parse().map_err(usage)?;
    let pt = split(&a.params).into_iter().map(|s| gf_elem(s, f)).collect::<Result<Vec<_>, _>>()?;
    let curve: PlaneCurveFq = specialize_fibre(fib, f, &pt).map_err(|e| match e {
        crate::fibres::FibreError::Arity { .. } => usage(e),
        e => compute(e),
    })?;
    let mut results = json!({"form": curve.form.to_string(), "degree": curve.degree()});
    if curve.degree() == 4 {
        results["classification"] = class_json(&classify_fibre(&curve).map_err(compute)?);
    } else {
        let locus = singular_locus(&curve, 2).map_err(compute)?;
        let pts: Vec<Value> = locus
            .iter()
            .map(|p| {
                let d = crate::fibres::delta_invariant(&curve, p).ok().map(|r| r.delta);
                json!({"point": p.to_string(), "delta": d})
            })
            .collect();
        results["singular_points"] = json!(pts);
    }
    Ok(Report {
        command: "fibre".into(),
        inputs: json!({"fibration": fib, "params": gf_list(&pt), "field": FieldJson::from_field(f)}),
        results,
        checks: Vec::new(),
    })
}

fn scan_cmd(f: FieldSpec, seed: u64, a: &ScanArgs) -> Result<Report, CliError> {
    let fib: Fibration = a.fibration.parse().map_err(usage)?;
    if fib == Fibration::CubicPencil {
        return Err(usage("scan classifies quartic members only"));
    }
    let names = fib.param_names();
    let mut fixed = Vec::new();
    for s in &a.fix {
        let (k, v) = s.split_once('=').ok_or_else(|| usage(format!("expected name=value, got {s}")))?;
        let i = names.iter().position(|n| *n == k.trim()).ok_or_else(|| usage(format!("unknown parameter {k}")))?;
        fixed.push((i, gf_elem(v, f)?));
    }
    let base: Vec<Vec<GfElem>> = match a.sample {
        Some(n) => {
            let mut r = rng::stream(seed, "scan");
            (0..n).map(|_| (0..fib.arity()).map(|_| rng::gf(&mut r, f)).collect()).collect()
        }
        None => parameter_grid(fib, f),
    };
    let pts: Vec<Vec<GfElem>> = base.into_iter().filter(|p| fixed.iter().all(|(i, v)| p[*i] == *v)).collect();
    let entries = scan(fib, f, &pts, &Bounds::default());
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut errors = 0;
    let rows: Vec<Value> = entries
        .iter()
        .map(|e| match &e.class {
            Ok(c) => {
                let key = match c {
                    FibreClass::IntegralQuartic { multiplicity, .. } => format!("IntegralQuartic(multiplicity {multiplicity})"),
                    c => c.variant().to_string(),
                };
                *counts.entry(key).or_default() += 1;
                json!({"params": gf_list(&e.params), "fibre": class_json(c)})
            }
            Err(err) => {
                errors += 1;
                json!({"params": gf_list(&e.params), "error": err.to_string()})
            }
        })
        .collect();
    Ok(Report {
        command: "scan".into(),
        inputs: json!({"fibration": fib, "fix": a.fix, "sample": a.sample, "field": FieldJson::from_field(f)}),
        results: json!({"total": entries.len(), "counts": counts, "entries": rows}),
        checks: vec![check("classified", "every member was classified", errors == 0)],
    })
}

fn resolution_json(r: &ResolutionReport) -> Result<(Value, Vec<CheckJson>), CliError> {
    let names = r.names();
    let err = |e: crate::resolution::ResolutionError| compute(e);
    let self_int = |n: &str| r.self_intersection(n).map_err(err);
    let mut exceptional = Vec::new();
    for c in r.exceptional() {
        let x = c.exceptional.as_ref().expect("exceptional");
        exceptional.push(json!({
            "id": c.name,
            "base_point": r.base_points[r.centers[x.center].base_point].to_string(),
            "self_int": self_int(&c.name)?,
            "mult_f0": x.mult_f0,
            "mult_f1": x.mult_f1,
        }));
    }
    let mut named = Vec::new();
    for c in r.curves.iter().filter(|c| c.exceptional.is_none()) {
        named.push(json!({"id": c.name, "degree": c.degree, "self_int": self_int(&c.name)?}));
    }
    let f = FieldSpec::binary();
    let members = [("(1:0)", [f.one(), f.zero()]), ("(0:1)", [f.zero(), f.one()])];
    let mut divisors = serde_json::Map::new();
    let mut labels = serde_json::Map::new();
    let mut checks = Vec::new();
    for (label, t) in members {
        let d = r.fibre_divisor(t);
        let dots = r.divisor_dot_components(&d).map_err(err)?;
        checks.push(check(format!("{label} orthogonality"), "a fibre meets each of its components with intersection number zero", dots.iter().all(|(_, v)| *v == 0)));
        let mut minimal = true;
        for (n, _) in &d {
            minimal &= self_int(n)? != -1;
        }
        checks.push(check(format!("{label} minimality"), "no fibre component has self-intersection -1", minimal));
        let comps: Vec<&str> = d.iter().map(|(n, _)| n.as_str()).collect();
        let l = dynkin_type(r, &comps).map_err(err)?;
        if l != crate::resolution::DynkinLabel::Unrecognized {
            labels.insert(format!("fibre {label}"), json!({"label": l, "kodaira": l.kodaira()}));
        }
        divisors.insert(label.into(), json!(d.iter().map(|(n, m)| json!({"curve": n, "multiplicity": m})).collect::<Vec<_>>()));
    }
    for (k, bp) in r.base_points.iter().enumerate() {
        let chain: Vec<&str> = r
            .exceptional()
            .filter(|c| r.centers[c.exceptional.as_ref().expect("exceptional").center].base_point == k)
            .map(|c| c.name.as_str())
            .filter(|n| r.self_intersection(n).ok() == Some(-2))
            .collect();
        if !chain.is_empty() {
            labels.insert(format!("-2 curves over {bp}"), json!({"curves": chain, "label": dynkin_type(r, &chain).map_err(err)?}));
        }
    }
    checks.push(check("general member", "general members have self-intersection zero", self_int(crate::resolution::GENERIC)? == 0));
    let matrix = r.intersection_matrix(&names).map_err(err)?;
    let covering = covering_check().map_err(compute)?;
    Ok((
        json!({
            "base_points": r.base_points.iter().zip(&r.counts).map(|(p, n)| json!({"point": p.to_string(), "blowups": n})).collect::<Vec<_>>(),
            "counts": r.counts,
            "exceptional": exceptional,
            "named": named,
            "fibre_divisors": divisors,
            "intersection_matrix": {"curves": names, "matrix": matrix},
            "dynkin": labels,
            "covering": covering,
        }),
        checks,
    ))
}

fn resolve(a: &ResolveArgs) -> Result<Report, CliError> {
    let spec = match a.pencil.to_ascii_lowercase().as_str() {
        "quartic" | "quartic-pencil" => PencilSpec::quartic(),
        "cubic" | "cubic-pencil" => PencilSpec::cubic(),
        p => return Err(usage(format!("unknown pencil {p}"))),
    };
    let r = resolve_pencil(&spec).map_err(compute)?;
    let (results, checks) = resolution_json(&r)?;
    Ok(Report {
        command: "resolve".into(),
        inputs: json!({"pencil": spec.label, "f0": spec.f0.to_string(), "f1": spec.f1.to_string()}),
        results,
        checks,
    })
}

fn accept(seed: u64, a: &AcceptArgs) -> Result<Report, CliError> {
    let results = match a.criterion {
        Some(id) => vec![run_criterion(id, seed).ok_or_else(|| usage(format!("no criterion {id}")))?],
        None => run_all(seed),
    };
    let mut checks = Vec::new();
    let mut out = serde_json::Map::new();
    for r in &results {
        for c in &r.checks {
            checks.push(check(format!("{}: {}", r.id, c.name), &c.anchor, c.pass));
        }
        if let Some(b) = r.budget_ms {
            checks.push(check(format!("{}: runtime", r.id), "within the time budget", r.elapsed_ms < b));
        }
        out.insert(r.id.to_string(), json!({"title": r.title, "pass": r.pass(), "summary": r.summary()}));
    }
    Ok(Report { command: "accept".into(), inputs: json!({"seed": seed, "criterion": a.criterion}), results: Value::Object(out), checks })
}

/// Executes a parsed command.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let f = field_of(cli)?;
    match &cli.command {
        Command::Family(a) => family(f, a),
        Command::Tower(a) => tower(f, a),
        Command::Iso(a) => iso(f, a),
        Command::Fibre(a) => fibre(f, a),
        Command::Scan(a) => scan_cmd(f, cli.seed, a),
        Command::Resolve(a) => resolve(a),
        Command::Accept(a) => accept(cli.seed, a),
    }
}

/// Exit status and the text for each stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses arguments and runs. Reports go to stdout, errors to stderr.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if e.use_stderr() => return Outcome { code: 2, stdout: String::new(), stderr: e.to_string() },
        Err(e) => return Outcome { code: 0, stdout: e.to_string(), stderr: String::new() },
    };
    let (code, text, is_report) = match execute(&cli) {
        Ok(r) => {
            let text = if cli.json { serde_json::to_string_pretty(&r).expect("serializable") + "\n" } else { r.to_text() };
            (if r.pass() { 0 } else { 1 }, text, true)
        }
        Err(e) => {
            let text = if cli.json {
                let kind = if e.exit_code() == 2 { "usage" } else { "computation" };
                serde_json::to_string_pretty(&json!({"error": {"kind": kind, "message": e.to_string()}})).expect("serializable") + "\n"
            } else {
                format!("error: {e}\n")
            };
            (e.exit_code(), text, false)
        }
    };
    if !is_report {
        return Outcome { code, stdout: String::new(), stderr: text };
    }
    match &cli.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
            Err(e) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: cannot write {}: {e}\n", path.display()) },
        },
        None => Outcome { code, stdout: text, stderr: String::new() },
    }
}
