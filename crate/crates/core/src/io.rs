//! JSON formats: rotation systems, the three structures, region tables.
//!
//! Labels and colors are written 1-based.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::planar_map::{Dart, VertexId};
use crate::regions::RegionTable;
use crate::structures::{CornerLabeling, FiveCOrientation, WoodColoring};
use crate::triangulation::{Completion, FiveTriangulation, Role, TriangulationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Content(String),
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json(e.to_string())
    }
}

/// `{"vertices": N, "rot": [[clockwise neighbours]...], "outer": [v1..v5]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationSystem {
    pub vertices: usize,
    pub rot: Vec<Vec<VertexId>>,
    pub outer: Vec<VertexId>,
}

impl RotationSystem {
    pub fn of(t: &FiveTriangulation) -> Self {
        RotationSystem { vertices: t.n(), rot: t.rotation_system(), outer: t.outer().to_vec() }
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let rs: RotationSystem = serde_json::from_str(text)?;
        if rs.rot.len() != rs.vertices {
            return Err(FormatError::Content(format!(
                "\"vertices\" is {} but \"rot\" has {} entries",
                rs.vertices,
                rs.rot.len()
            )));
        }
        if let Some(&v) = rs.rot.iter().flatten().chain(&rs.outer).find(|&&v| v >= rs.vertices) {
            return Err(FormatError::Content(format!("vertex id {v} out of range")));
        }
        Ok(rs)
    }

    pub fn to_triangulation(&self) -> Result<FiveTriangulation, FormatError> {
        Ok(FiveTriangulation::from_rotation_system(&self.rot, &self.outer)?)
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<String> = self.rot.iter().map(|r| serde_json::to_string(r).unwrap()).collect();
        format!(
            "{{\n  \"vertices\": {},\n  \"rot\": [\n    {}\n  ],\n  \"outer\": {}\n}}\n",
            self.vertices,
            rows.join(",\n    "),
            serde_json::to_string(&self.outer).unwrap()
        )
    }
}

/// Names of `G+` vertices: `v7`, `e3-7` (edge, smaller end first), `f2-3-7` (face, sorted).
pub fn node_name(t: &FiveTriangulation, c: &Completion, x: VertexId) -> String {
    let g = t.map();
    match c.role(x) {
        Role::Primal(v) => format!("v{v}"),
        Role::Edge(e) => {
            let (a, b) = (g.origin(2 * e), g.target(2 * e));
            format!("e{}-{}", a.min(b), a.max(b))
        }
        Role::Dual(f) => {
            let mut vs = g.face_vertices(f);
            vs.sort_unstable();
            format!("f{}-{}-{}", vs[0], vs[1], vs[2])
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub from: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientationFile {
    pub format: String,
    /// Every inner edge of `G+`, directed.
    pub arcs: Vec<Arc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerEntry {
    pub vertex: VertexId,
    /// Neighbour before the corner in clockwise order.
    pub from: VertexId,
    /// Neighbour after the corner.
    pub to: VertexId,
    pub label: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelingFile {
    pub format: String,
    pub corners: Vec<CornerEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcColor {
    pub from: VertexId,
    pub to: VertexId,
    pub color: Option<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WoodFile {
    pub format: String,
    /// Both arcs of every inner edge; uncolored arcs carry `null`.
    pub arcs: Vec<ArcColor>,
}

/// Any of the three structure files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureFile {
    Orientation(OrientationFile),
    Labeling(LabelingFile),
    Wood(WoodFile),
}

impl StructureFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let v: serde_json::Value = serde_json::from_str(text)?;
        match v.get("format").and_then(|f| f.as_str()) {
            Some("orientation") => Ok(StructureFile::Orientation(serde_json::from_value(v)?)),
            Some("labeling") => Ok(StructureFile::Labeling(serde_json::from_value(v)?)),
            Some("wood") => Ok(StructureFile::Wood(serde_json::from_value(v)?)),
            other => Err(FormatError::Content(format!("unknown structure format {other:?}"))),
        }
    }
}

pub fn orientation_file(t: &FiveTriangulation, c: &Completion, o: &FiveCOrientation) -> OrientationFile {
    let m = c.map();
    let arcs = o
        .dart
        .iter()
        .flatten()
        .map(|&d| Arc { from: node_name(t, c, m.origin(d)), to: node_name(t, c, m.target(d)) })
        .collect();
    OrientationFile { format: "orientation".into(), arcs }
}

pub fn read_orientation(t: &FiveTriangulation, c: &Completion, f: &OrientationFile) -> Result<FiveCOrientation, FormatError> {
    let m = c.map();
    let names: HashMap<String, VertexId> = (0..m.n_vertices()).map(|x| (node_name(t, c, x), x)).collect();
    let lookup = |s: &str| names.get(s).copied().ok_or_else(|| FormatError::Content(format!("unknown node {s:?}")));
    let mut dart = vec![None; m.n_edges()];
    for a in &f.arcs {
        let (x, y) = (lookup(&a.from)?, lookup(&a.to)?);
        let d = m
            .darts_around(x)
            .find(|&d| m.target(d) == y)
            .ok_or_else(|| FormatError::Content(format!("{} and {} are not adjacent", a.from, a.to)))?;
        if dart[m.edge_of(d)].replace(d).is_some() {
            return Err(FormatError::Content(format!("edge {}-{} listed twice", a.from, a.to)));
        }
    }
    Ok(FiveCOrientation { dart })
}

pub fn labeling_file(t: &FiveTriangulation, l: &CornerLabeling) -> LabelingFile {
    let g = t.map();
    let corners = (0..g.n_darts())
        .filter_map(|c| {
            l.label[c].map(|k| CornerEntry { vertex: g.origin(c), from: g.target(c), to: g.target(g.sigma(c)), label: k + 1 })
        })
        .collect();
    LabelingFile { format: "labeling".into(), corners }
}

fn dart_between(t: &FiveTriangulation, u: VertexId, v: VertexId) -> Result<Dart, FormatError> {
    if u >= t.n() || v >= t.n() {
        return Err(FormatError::Content(format!("vertex out of range in {u}->{v}")));
    }
    t.dart_between(u, v).ok_or_else(|| FormatError::Content(format!("{u} and {v} are not adjacent")))
}

fn one_based(k: u8) -> Result<u8, FormatError> {
    if (1..=5).contains(&k) {
        Ok(k - 1)
    } else {
        Err(FormatError::Content(format!("value {k} outside 1..5")))
    }
}

pub fn read_labeling(t: &FiveTriangulation, f: &LabelingFile) -> Result<CornerLabeling, FormatError> {
    let g = t.map();
    let mut label = vec![None; g.n_darts()];
    for e in &f.corners {
        let c = dart_between(t, e.vertex, e.from)?;
        if g.target(g.sigma(c)) != e.to {
            return Err(FormatError::Content(format!("no corner at {} between {} and {}", e.vertex, e.from, e.to)));
        }
        label[c] = Some(one_based(e.label)?);
    }
    Ok(CornerLabeling { label })
}

pub fn wood_file(t: &FiveTriangulation, w: &WoodColoring) -> WoodFile {
    let g = t.map();
    let arcs = (0..g.n_darts())
        .filter(|&d| t.is_inner_edge(d))
        .map(|d| ArcColor { from: g.origin(d), to: g.target(d), color: w.color[d].map(|k| k + 1) })
        .collect();
    WoodFile { format: "wood".into(), arcs }
}

pub fn read_wood(t: &FiveTriangulation, f: &WoodFile) -> Result<WoodColoring, FormatError> {
    let mut color = vec![None; t.map().n_darts()];
    for a in &f.arcs {
        let d = dart_between(t, a.from, a.to)?;
        color[d] = a.color.map(one_based).transpose()?;
    }
    Ok(WoodColoring { color })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionRow {
    pub vertex: VertexId,
    pub size: [usize; 5],
    pub path_len: [usize; 5],
}

/// Per-vertex region sizes and path lengths.
pub fn region_rows(rt: &RegionTable) -> Vec<RegionRow> {
    (0..rt.n).map(|v| RegionRow { vertex: v, size: rt.size[v], path_len: rt.path_len[v] }).collect()
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
