//! Browser bindings: generate a 5c-triangulation, draw it, certify the drawing.

use wasm_bindgen::prelude::*;

use pentawood::drawing::{certify_planar, check_sectors, resolution, to_svg};
use pentawood::fixtures;
use pentawood::generate::generate_random_5c;
use pentawood::io::RotationSystem;
use pentawood::pipeline::{self, Pipeline};
use pentawood::regions::{check_acyclic_biorientations, WeightMode};
use pentawood::triangulation::FiveTriangulation;

fn parse(rotation_json: &str) -> Result<FiveTriangulation, String> {
    let rs = RotationSystem::parse(rotation_json).map_err(|e| e.to_string())?;
    rs.to_triangulation().map_err(|e| e.to_string())
}

fn run(rotation_json: &str, mode: &str, minimize: bool) -> Result<(FiveTriangulation, Pipeline), String> {
    let t = parse(rotation_json)?;
    let mode = match mode {
        "faces" => WeightMode::Faces,
        "vertices" => WeightMode::Vertices,
        other => return Err(format!("unknown mode {other:?}")),
    };
    let p = pipeline::run(&t, &mode, minimize).map_err(|e| e.to_string())?;
    Ok((t, p))
}

/// Rotation-system JSON of a random 5c-triangulation with `n` vertices, or of a named fixture (`w5`, `icosa11`).
pub fn generate_json(n: usize, seed: u64, fixture: &str) -> Result<String, String> {
    let t = match fixture {
        "" => generate_random_5c(n, seed, 2).map_err(|e| e.to_string())?,
        name => fixtures::by_name(name).ok_or_else(|| format!("unknown fixture {name:?}"))?,
    };
    Ok(RotationSystem::of(&t).to_json())
}

pub fn draw_svg(rotation_json: &str, mode: &str, minimize: bool, overlay: bool, scale: f64) -> Result<String, String> {
    let (t, p) = run(rotation_json, mode, minimize)?;
    Ok(to_svg(&p.drawing, &t, overlay.then_some(&p.structures.wood), scale))
}

/// One line per check.
pub fn certify_text(rotation_json: &str, mode: &str, minimize: bool) -> Result<String, String> {
    let (t, p) = run(rotation_json, mode, minimize)?;
    let planar = certify_planar(&p.drawing, &t);
    let sectors = check_sectors(&p.drawing, &t, &p.structures.wood);
    let acyc = check_acyclic_biorientations(&t, &p.structures.wood);
    let r = resolution(&p.drawing);
    let mut out = format!("vertices: {}, inner faces: {}\n", t.n(), t.n_inner_faces());
    out += &match planar.failure {
        None => format!("planar: certified ({} faces)\n", planar.faces_checked),
        Some(f) => format!("planar: FAILED at face {f}\n"),
    };
    out += &format!("sectors: {} ({} arcs)\n", if sectors.ok() { "ok" } else { "FAILED" }, sectors.checked);
    out += &format!("acyclicity: {} ({} biorientations)\n", if acyc.ok() { "ok" } else { "FAILED" }, acyc.checked);
    out += &format!("min distance: {:.4e}", r.min_distance);
    if let (Some(m), Some(b)) = (r.normalized_min, r.bound) {
        out += &format!(", normalized {m:.4} (bound {b:.4})");
    }
    out.push('\n');
    Ok(out)
}

#[wasm_bindgen]
pub fn generate(n: usize, seed: u32, fixture: &str) -> Result<String, JsError> {
    generate_json(n, seed as u64, fixture).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn draw(rotation_json: &str, mode: &str, minimize: bool, overlay: bool, scale: f64) -> Result<String, JsError> {
    draw_svg(rotation_json, mode, minimize, overlay, scale).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn certify(rotation_json: &str, mode: &str, minimize: bool) -> Result<String, JsError> {
    certify_text(rotation_json, mode, minimize).map_err(|e| JsError::new(&e))
}
