use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use pentawood::construct::five_c_structures;
use pentawood::drawing::{
    certify_planar, check_halfplane, check_rotational_symmetry, check_sectors, resolution, to_svg, DrawingJson,
};
use pentawood::generate::{generate_random_5c, rotation_automorphism};
use pentawood::io::{
    labeling_file, orientation_file, read_labeling, read_orientation, read_wood, to_pretty_json, wood_file,
    RotationSystem, StructureFile,
};
use pentawood::pipeline::{self, PipelineError};
use pentawood::regions::{check_acyclic_biorientations, WeightMode};
use pentawood::triangulation::{Completion, FiveTriangulation};

use crate::{Emit, Mode};

/// Above this size the quadratic half-plane check is skipped by `draw --check`.
const HALFPLANE_LIMIT: usize = 3000;

#[derive(Debug)]
pub enum CliError {
    /// Input is well-formed but not a valid 5c-triangulation or structure.
    Invalid(String),
    /// File could not be read, written or parsed.
    Io(String),
    /// A certification step failed.
    CheckFailed(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Io(_) => 2,
            CliError::CheckFailed(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(s) | CliError::Io(s) => f.write_str(s),
            CliError::CheckFailed(s) => write!(f, "check failed: {s}"),
        }
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::Region(r) if matches!(r, pentawood::regions::RegionError::NonPositiveWeight { .. }) => {
                CliError::Io(r.to_string())
            }
            e => CliError::Invalid(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn fixture_dir() -> PathBuf {
    std::env::var_os("PENTAWOOD_FIXTURES")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures")))
}

/// `@name` refers to `<fixture dir>/name.json`.
fn resolve(input: &str) -> PathBuf {
    match input.strip_prefix('@') {
        Some(name) => fixture_dir().join(format!("{name}.json")),
        None => PathBuf::from(input),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load(input: &str) -> Result<FiveTriangulation> {
    let path = resolve(input);
    let rs = RotationSystem::parse(&read(&path)?).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    rs.to_triangulation().map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension("tmp~");
    std::fs::write(&tmp, contents)
        .and_then(|_| std::fs::rename(&tmp, path))
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, contents: &str) -> Result<()> {
    match output {
        Some(p) => write_atomic(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

pub fn validate(input: &str, structure: Option<&Path>) -> Result<()> {
    let t = load(input)?;
    let verdict = t.is_5c();
    if !verdict.is_5c {
        let witness = verdict.witness.map(|w| w.to_string()).unwrap_or_default();
        println!("invalid: not a 5c-triangulation");
        println!("witness: {witness}");
        return Err(CliError::Invalid(format!("not a 5c-triangulation: {witness}")));
    }
    println!("valid: 5c-triangulation with {} vertices, {} inner faces", t.n(), t.n_inner_faces());
    let Some(path) = structure else { return Ok(()) };
    let parsed = StructureFile::parse(&read(path)?).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let bad = |e: pentawood::io::FormatError| CliError::Invalid(format!("{}: {e}", path.display()));
    let (kind, violations): (&str, Vec<String>) = match parsed {
        StructureFile::Orientation(f) => {
            let c = Completion::new(&t);
            let o = read_orientation(&t, &c, &f).map_err(bad)?;
            ("5c-orientation", o.validate(&t, &c).iter().map(|v| v.to_string()).collect())
        }
        StructureFile::Labeling(f) => {
            let l = read_labeling(&t, &f).map_err(bad)?;
            ("5c-labeling", l.validate(&t).iter().map(|v| v.to_string()).collect())
        }
        StructureFile::Wood(f) => {
            let w = read_wood(&t, &f).map_err(bad)?;
            ("5c-wood", w.validate(&t).iter().map(|v| v.to_string()).collect())
        }
    };
    if violations.is_empty() {
        println!("valid: {kind}");
        Ok(())
    } else {
        for v in &violations {
            println!("violation: {v}");
        }
        Err(CliError::Invalid(format!("{} violations of the {kind} conditions", violations.len())))
    }
}

pub fn construct(input: &str, minimize: bool, what: Emit, output: Option<&Path>) -> Result<()> {
    let t = load(input)?;
    let s = five_c_structures(&t, minimize).map_err(|e| CliError::Invalid(e.to_string()))?;
    let text = match what {
        Emit::Orientation => to_pretty_json(&orientation_file(&t, &s.completion, &s.orientation)),
        Emit::Labeling => to_pretty_json(&labeling_file(&t, &s.labeling)),
        Emit::Wood => to_pretty_json(&wood_file(&t, &s.wood)),
    };
    emit(output, &text)
}

fn parse_rational(v: &serde_json::Value) -> Option<BigRational> {
    match v {
        serde_json::Value::String(s) => s.trim().parse().ok(),
        serde_json::Value::Number(n) => n.as_i64().map(|k| BigRational::from_integer(BigInt::from(k))),
        _ => None,
    }
}

fn load_weights(t: &FiveTriangulation, path: &Path) -> Result<Vec<BigRational>> {
    let text = read(path)?;
    let io = |m: String| CliError::Io(format!("{}: {m}", path.display()));
    let obj: HashMap<String, serde_json::Value> = serde_json::from_str(&text).map_err(|e| io(e.to_string()))?;
    let g = t.map();
    let mut w = vec![BigRational::from_integer(BigInt::from(0)); g.n_faces()];
    for f in t.inner_faces() {
        let mut vs = g.face_vertices(f);
        vs.sort_unstable();
        let key = format!("f{}-{}-{}", vs[0], vs[1], vs[2]);
        let value = obj.get(&key).ok_or_else(|| io(format!("missing weight for face {key}")))?;
        w[f] = parse_rational(value).ok_or_else(|| io(format!("weight of {key} is not a rational")))?;
    }
    Ok(w)
}

pub struct DrawArgs {
    pub input: String,
    pub mode: Mode,
    pub weights: Option<PathBuf>,
    pub minimize: bool,
    pub svg: Option<PathBuf>,
    pub overlay: bool,
    pub json: Option<PathBuf>,
    pub scale: f64,
    pub check: bool,
}

fn weight_mode(t: &FiveTriangulation, mode: Mode, weights: Option<&Path>) -> Result<WeightMode> {
    Ok(match (mode, weights) {
        (Mode::Faces, _) => WeightMode::Faces,
        (Mode::Vertices, _) => WeightMode::Vertices,
        (Mode::Weighted, Some(p)) => WeightMode::Weighted(load_weights(t, p)?),
        (Mode::Weighted, None) => return Err(CliError::Io("--mode weighted requires --weights".into())),
    })
}

pub fn draw(a: &DrawArgs) -> Result<()> {
    let t = load(&a.input)?;
    let mode = weight_mode(&t, a.mode, a.weights.as_deref())?;
    let p = pipeline::run(&t, &mode, a.minimize)?;
    let json = to_pretty_json(&DrawingJson::from(&p.drawing));
    if let Some(path) = &a.svg {
        let wood = a.overlay.then_some(&p.structures.wood);
        write_atomic(path, &to_svg(&p.drawing, &t, wood, a.scale))?;
    }
    match &a.json {
        Some(path) => write_atomic(path, &json)?,
        None if a.svg.is_none() => print!("{json}"),
        None => {}
    }
    if !a.check {
        return Ok(());
    }
    let mut failures = Vec::new();
    let planar = certify_planar(&p.drawing, &t);
    match planar.failure {
        None => println!("planar: certified ({} inner faces)", planar.faces_checked),
        Some(f) => {
            println!("planar: FAILED at face {f}");
            failures.push("planarity");
        }
    }
    if t.n() <= HALFPLANE_LIMIT {
        let h = check_halfplane(&p.drawing, &t, &p.trees);
        println!("halfplane: {} ({} pairs, {} on boundary)", if h.ok() { "ok" } else { "FAILED" }, h.checked, h.boundary);
        if !h.ok() {
            failures.push("halfplane");
        }
    } else {
        println!("halfplane: skipped (n > {HALFPLANE_LIMIT})");
    }
    let s = check_sectors(&p.drawing, &t, &p.structures.wood);
    println!("sectors: {} ({} arcs, {} on boundary)", if s.ok() { "ok" } else { "FAILED" }, s.checked, s.boundary);
    if !s.ok() {
        failures.push("sectors");
    }
    let acyc = check_acyclic_biorientations(&t, &p.structures.wood);
    println!("acyclicity: {} ({} biorientations)", if acyc.ok() { "ok" } else { "FAILED" }, acyc.checked);
    if !acyc.ok() {
        failures.push("acyclicity");
    }
    let r = resolution(&p.drawing);
    match (r.normalized_min, r.bound, r.meets_bound) {
        (Some(m), Some(b), Some(ok)) => println!(
            "resolution: min distance {:.6e} between {} and {}, normalized {m:.6} vs bound {b:.6}: {}",
            r.min_distance,
            r.pair.0,
            r.pair.1,
            if ok { "ok" } else { "below" }
        ),
        _ => println!("resolution: min distance {:.6e} between {} and {}", r.min_distance, r.pair.0, r.pair.1),
    }
    match rotation_automorphism(&t) {
        None => println!("symmetry: no rotation automorphism"),
        Some(rho) if a.minimize => {
            let ok = check_rotational_symmetry(&p.drawing, Some(&rho)) == Ok(true);
            println!("symmetry: {}", if ok { "rotational symmetry present" } else { "BROKEN" });
            if !ok {
                failures.push("symmetry");
            }
        }
        Some(_) => println!("symmetry: rotation automorphism exists (use --minimize for a symmetric drawing)"),
    }
    if failures.is_empty() {
        println!("verdict: PASS");
        Ok(())
    } else {
        println!("verdict: FAIL");
        Err(CliError::CheckFailed(failures.join(", ")))
    }
}

pub fn gen(n: usize, seed: u64, count: usize, flips: usize, out: &Path) -> Result<()> {
    std::fs::create_dir_all(out).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
    for k in 0..count {
        let s = seed.wrapping_add(k as u64);
        let t = generate_random_5c(n, s, flips).map_err(|e| CliError::Invalid(e.to_string()))?;
        let path = out.join(format!("n{n}-s{s}.json"));
        write_atomic(&path, &RotationSystem::of(&t).to_json())?;
        println!("{}", path.display());
    }
    Ok(())
}

#[derive(Serialize)]
struct StatsRow {
    input: String,
    n: Option<usize>,
    inner_faces: Option<usize>,
    mode: String,
    min_distance: Option<f64>,
    normalized_min: Option<f64>,
    bound: Option<f64>,
    meets_bound: Option<bool>,
    construct_ms: Option<f64>,
    draw_ms: Option<f64>,
    status: String,
}

fn stats_row(input: &str, mode: Mode, minimize: bool) -> StatsRow {
    let mode_name = match mode {
        Mode::Faces => "faces",
        Mode::Vertices => "vertices",
        Mode::Weighted => "weighted",
    };
    let mut row = StatsRow {
        input: input.to_string(),
        n: None,
        inner_faces: None,
        mode: mode_name.into(),
        min_distance: None,
        normalized_min: None,
        bound: None,
        meets_bound: None,
        construct_ms: None,
        draw_ms: None,
        status: String::new(),
    };
    let t = match load(input) {
        Ok(t) => t,
        Err(e) => {
            row.status = format!("error: {e}");
            return row;
        }
    };
    row.n = Some(t.n());
    row.inner_faces = Some(t.n_inner_faces());
    if mode == Mode::Weighted {
        row.status = "error: weighted mode is not available in stats".into();
        return row;
    }
    let start = Instant::now();
    let s = match five_c_structures(&t, minimize) {
        Ok(s) => s,
        Err(e) => {
            row.status = format!("not5c: {e}");
            return row;
        }
    };
    row.construct_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    let start = Instant::now();
    let wm = if mode == Mode::Faces { WeightMode::Faces } else { WeightMode::Vertices };
    let drawn = pentawood::regions::WoodTrees::new(&t, &s.wood).map_err(PipelineError::from).and_then(|tr| {
        let rt = pentawood::regions::region_sizes_linear(&t, &tr);
        let w = pentawood::regions::weights(&t, &tr, &rt, &wm)?;
        Ok(pentawood::drawing::place(&w, &pentawood::drawing::PentagonFrame::standard(), wm.name()))
    });
    let d = match drawn {
        Ok(d) => d,
        Err(e) => {
            row.status = format!("error: {e}");
            return row;
        }
    };
    row.draw_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    let r = resolution(&d);
    row.min_distance = Some(r.min_distance);
    row.normalized_min = r.normalized_min;
    row.bound = r.bound;
    row.meets_bound = r.meets_bound;
    row.status = "ok".into();
    row
}

pub fn stats(inputs: &[String], mode: Mode, minimize: bool, csv_path: Option<&Path>) -> Result<()> {
    let rows: Vec<StatsRow> = inputs.iter().map(|i| stats_row(i, mode, minimize)).collect();
    let opt = |x: Option<f64>, p: usize| x.map(|v| format!("{v:.p$}")).unwrap_or_else(|| "-".into());
    println!(
        "{:<28} {:>7} {:>7} {:>12} {:>10} {:>8} {:>5} {:>10} {:>10}  status",
        "input", "n", "faces", "min dist", "normalized", "bound", "ok", "constr ms", "draw ms"
    );
    for r in &rows {
        println!(
            "{:<28} {:>7} {:>7} {:>12} {:>10} {:>8} {:>5} {:>10} {:>10}  {}",
            r.input,
            r.n.map(|x| x.to_string()).unwrap_or_else(|| "-".into()),
            r.inner_faces.map(|x| x.to_string()).unwrap_or_else(|| "-".into()),
            r.min_distance.map(|x| format!("{x:.4e}")).unwrap_or_else(|| "-".into()),
            opt(r.normalized_min, 4),
            opt(r.bound, 4),
            r.meets_bound.map(|b| if b { "yes" } else { "NO" }).unwrap_or("-"),
            opt(r.construct_ms, 2),
            opt(r.draw_ms, 2),
            r.status
        );
    }
    if let Some(path) = csv_path {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &rows {
            w.serialize(r).map_err(|e| CliError::Io(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        write_atomic(path, &String::from_utf8(bytes).expect("csv is utf-8"))?;
    }
    if rows.iter().any(|r| r.status != "ok") {
        return Err(CliError::Invalid(format!(
            "{} of {} inputs failed",
            rows.iter().filter(|r| r.status != "ok").count(),
            rows.len()
        )));
    }
    Ok(())
}
