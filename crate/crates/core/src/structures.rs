//! 5c-orientations, 5c-labelings and 5c-woods, their validators and the
//! bijections between them.
//!
//! Labels and colors are stored as `0..5` and rendered as `1..5`.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::planar_map::{Dart, VertexId};
use crate::triangulation::{Completion, CornerGraph, CornerStep, FiveTriangulation, Role};

#[inline]
fn jump(from: u8, to: u8) -> u8 {
    (to + 5 - from) % 5
}

/// An orientation of the inner edges of `G+`: for each `G+` edge, the dart
/// pointing along its direction (`None` on outer edges).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiveCOrientation {
    pub dart: Vec<Option<Dart>>,
}

/// Labels of the inner corners of `G` (corner `c` sits between `c` and `sigma(c)`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CornerLabeling {
    pub label: Vec<Option<u8>>,
}

/// Partial coloring of the inner arcs (darts) of `G`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WoodColoring {
    pub color: Vec<Option<u8>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrientationViolation {
    Unoriented { edge: usize },
    OuterEdgeOriented { edge: usize },
    WrongLength { expected: usize, found: usize },
    OutDegree { vertex: VertexId, role: Role, expected: usize, found: usize },
}

impl fmt::Display for OrientationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Unoriented { edge } => write!(f, "inner edge {edge} of G+ is not oriented"),
            Self::OuterEdgeOriented { edge } => write!(f, "outer edge {edge} of G+ is oriented"),
            Self::WrongLength { expected, found } => write!(f, "expected {expected} edges, found {found}"),
            Self::OutDegree { vertex, role, expected, found } => {
                write!(f, "vertex {vertex} ({role:?}) has outdegree {found}, expected {expected}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelingViolation {
    WrongLength { expected: usize, found: usize },
    MissingLabel { corner: Dart },
    OuterCornerLabeled { corner: Dart },
    LabelOutOfRange { corner: Dart, label: u8 },
    OuterVertexLabel { corner: Dart, vertex: VertexId, label: u8 },
    VertexIntervals { vertex: VertexId, jumps: Vec<u8> },
    FaceJumps { face: usize, jumps: Vec<u8> },
    EdgeJumpSum { edge: usize, sum: u32 },
}

impl fmt::Display for LabelingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::WrongLength { expected, found } => write!(f, "expected {expected} corners, found {found}"),
            Self::MissingLabel { corner } => write!(f, "inner corner {corner} has no label"),
            Self::OuterCornerLabeled { corner } => write!(f, "outer corner {corner} is labeled"),
            Self::LabelOutOfRange { corner, label } => write!(f, "corner {corner} has label {label} out of range"),
            Self::OuterVertexLabel { corner, vertex, label } => write!(
                f,
                "(L0) corner {corner} at outer vertex {vertex} has label {}",
                label + 1
            ),
            Self::VertexIntervals { vertex, jumps } => {
                write!(f, "(L1) clockwise jumps around vertex {vertex} are {jumps:?}")
            }
            Self::FaceJumps { face, jumps } => write!(f, "(L2) clockwise jumps around face {face} are {jumps:?}"),
            Self::EdgeJumpSum { edge, sum } => {
                write!(f, "counterclockwise jumps around edge {edge} sum to {sum}, expected 5")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WoodViolation {
    WrongLength { expected: usize, found: usize },
    ColorOutOfRange { arc: Dart, color: u8 },
    OuterArcColored { arc: Dart },
    StartsAtOuterVertex { arc: Dart },
    WrongColorIntoOuter { arc: Dart, expected: u8, found: u8 },
    MissingOutgoing { vertex: VertexId, color: u8 },
    DuplicateOutgoing { vertex: VertexId, color: u8 },
    OutgoingOrder { vertex: VertexId },
    IncomingSector { arc: Dart },
    UncoloredEdge { edge: usize },
}

impl fmt::Display for WoodViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::WrongLength { expected, found } => write!(f, "expected {expected} arcs, found {found}"),
            Self::ColorOutOfRange { arc, color } => write!(f, "arc {arc} has color {color} out of range"),
            Self::OuterArcColored { arc } => write!(f, "outer arc {arc} is colored"),
            Self::StartsAtOuterVertex { arc } => write!(f, "(W0) colored arc {arc} starts at an outer vertex"),
            Self::WrongColorIntoOuter { arc, expected, found } => write!(
                f,
                "(W0) arc {arc} into an outer vertex has color {}, expected {}",
                found + 1,
                expected + 1
            ),
            Self::MissingOutgoing { vertex, color } => {
                write!(f, "(W1) vertex {vertex} has no outgoing arc of color {}", color + 1)
            }
            Self::DuplicateOutgoing { vertex, color } => {
                write!(f, "(W1) vertex {vertex} has several outgoing arcs of color {}", color + 1)
            }
            Self::OutgoingOrder { vertex } => write!(f, "(W1) outgoing arcs at {vertex} are not in clockwise order"),
            Self::IncomingSector { arc } => write!(f, "(W2) arc {arc} enters outside its sector"),
            Self::UncoloredEdge { edge } => write!(f, "(W3) inner edge {edge} has no color"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("invalid labeling: {}", join(.0))]
    InvalidLabeling(Vec<LabelingViolation>),
    #[error("invalid orientation: {}", join(.0))]
    InvalidOrientation(Vec<OrientationViolation>),
    #[error("invalid wood: {}", join(.0))]
    InvalidWood(Vec<WoodViolation>),
    #[error("label propagation conflict at corner {corner}")]
    PropagationConflict { corner: Dart },
    #[error("straight path from arc {arc} does not reach an outer vertex")]
    NonterminatingPath { arc: Dart },
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    let shown: Vec<String> = items.iter().take(5).map(|v| v.to_string()).collect();
    let more = if items.len() > 5 { format!(" (+{} more)", items.len() - 5) } else { String::new() };
    format!("{}{more}", shown.join("; "))
}

fn expected_outdegree(t: &FiveTriangulation, role: Role) -> usize {
    match role {
        Role::Primal(v) if t.is_outer(v) => 0,
        Role::Primal(_) => 5,
        Role::Edge(_) => 1,
        Role::Dual(_) => 2,
    }
}

impl FiveCOrientation {
    /// Whether the half-edge of `G`-dart `d` points toward `origin(d)`.
    pub fn toward_primal(&self, d: Dart) -> bool {
        self.dart[d] == Some(2 * d + 1)
    }

    /// Whether the spoke of `G`-dart `d` points toward the dual vertex.
    pub fn toward_dual(&self, c: &Completion, d: Dart) -> bool {
        let s = c.spoke(d).expect("dart of an inner face");
        self.dart[s] == Some(2 * s)
    }

    pub fn outdegrees(&self, c: &Completion) -> Vec<usize> {
        let mut out = vec![0; c.n_vertices()];
        for d in self.dart.iter().flatten() {
            out[c.map().origin(*d)] += 1;
        }
        out
    }

    pub fn validate(&self, t: &FiveTriangulation, c: &Completion) -> Vec<OrientationViolation> {
        let mut v = Vec::new();
        if self.dart.len() != c.n_edges() {
            v.push(OrientationViolation::WrongLength { expected: c.n_edges(), found: self.dart.len() });
            return v;
        }
        for e in 0..c.n_edges() {
            match (c.is_inner_edge(e), self.dart[e]) {
                (true, None) => v.push(OrientationViolation::Unoriented { edge: e }),
                (false, Some(_)) => v.push(OrientationViolation::OuterEdgeOriented { edge: e }),
                (true, Some(d)) if d / 2 != e => v.push(OrientationViolation::Unoriented { edge: e }),
                _ => {}
            }
        }
        for (x, &found) in self.outdegrees(c).iter().enumerate() {
            let role = c.role(x);
            let expected = expected_outdegree(t, role);
            if found != expected {
                v.push(OrientationViolation::OutDegree { vertex: x, role, expected, found });
            }
        }
        v
    }

    /// Reverses the edges of a directed cycle given by its darts.
    pub fn reverse_darts(&mut self, darts: &[Dart]) {
        for &d in darts {
            self.dart[d / 2] = Some(d ^ 1);
        }
    }
}

impl CornerLabeling {
    pub fn get(&self, c: Dart) -> u8 {
        self.label[c].expect("inner corner")
    }

    pub fn validate(&self, t: &FiveTriangulation) -> Vec<LabelingViolation> {
        let g = t.map();
        let mut v = Vec::new();
        if self.label.len() != g.n_darts() {
            v.push(LabelingViolation::WrongLength { expected: g.n_darts(), found: self.label.len() });
            return v;
        }
        let mut ok = true;
        for c in 0..g.n_darts() {
            match (t.is_inner_corner(c), self.label[c]) {
                (true, None) => {
                    v.push(LabelingViolation::MissingLabel { corner: c });
                    ok = false;
                }
                (false, Some(_)) => v.push(LabelingViolation::OuterCornerLabeled { corner: c }),
                (true, Some(l)) if l >= 5 => {
                    v.push(LabelingViolation::LabelOutOfRange { corner: c, label: l });
                    ok = false;
                }
                _ => {}
            }
        }
        if !ok {
            return v;
        }
        for c in 0..g.n_darts() {
            if let (Some(i), Some(l)) = (t.outer_index(g.origin(c)), self.label[c]) {
                if l as usize != i {
                    v.push(LabelingViolation::OuterVertexLabel { corner: c, vertex: g.origin(c), label: l });
                }
            }
        }
        for u in t.inner_vertices() {
            let jumps: Vec<u8> = g.darts_around(u).map(|c| jump(self.get(c), self.get(g.sigma(c)))).collect();
            if jumps.iter().any(|&j| j > 1) || jumps.iter().map(|&j| j as u32).sum::<u32>() != 5 {
                v.push(LabelingViolation::VertexIntervals { vertex: u, jumps });
            }
        }
        for f in t.inner_faces() {
            let cs = t.face_corners_cw(f);
            let jumps: Vec<u8> = (0..3).map(|k| jump(self.get(cs[k]), self.get(cs[(k + 1) % 3]))).collect();
            let mut sorted = jumps.clone();
            sorted.sort_unstable();
            if sorted != [1, 2, 2] {
                v.push(LabelingViolation::FaceJumps { face: f, jumps });
            }
        }
        for e in 0..g.n_edges() {
            let d = 2 * e;
            if !t.is_inner_edge(d) {
                continue;
            }
            let tw = g.twin(d);
            let ring = [tw, g.sigma_inv(d), d, g.sigma_inv(tw)];
            let sum: u32 = (0..4).map(|k| jump(self.get(ring[k]), self.get(ring[(k + 1) % 4])) as u32).sum();
            if sum != 5 {
                v.push(LabelingViolation::EdgeJumpSum { edge: e, sum });
            }
        }
        v
    }
}

impl WoodColoring {
    /// Outgoing arcs of colors `0..5` at `v`, if unique.
    pub fn outgoing(&self, t: &FiveTriangulation, v: VertexId) -> Option<[Dart; 5]> {
        let mut out = [usize::MAX; 5];
        for d in t.map().darts_around(v) {
            if let Some(k) = self.color[d] {
                if out[k as usize] != usize::MAX {
                    return None;
                }
                out[k as usize] = d;
            }
        }
        out.iter().all(|&d| d != usize::MAX).then_some(out)
    }

    pub fn validate(&self, t: &FiveTriangulation) -> Vec<WoodViolation> {
        let g = t.map();
        let mut v = Vec::new();
        if self.color.len() != g.n_darts() {
            v.push(WoodViolation::WrongLength { expected: g.n_darts(), found: self.color.len() });
            return v;
        }
        for a in 0..g.n_darts() {
            let Some(k) = self.color[a] else { continue };
            if k >= 5 {
                v.push(WoodViolation::ColorOutOfRange { arc: a, color: k });
            } else if !t.is_inner_edge(a) {
                v.push(WoodViolation::OuterArcColored { arc: a });
            } else if t.is_outer(g.origin(a)) {
                v.push(WoodViolation::StartsAtOuterVertex { arc: a });
            } else if let Some(i) = t.outer_index(g.target(a)) {
                if k as usize != i {
                    v.push(WoodViolation::WrongColorIntoOuter { arc: a, expected: i as u8, found: k });
                }
            }
        }
        if !v.is_empty() {
            return v;
        }
        let mut position = vec![0usize; g.n_darts()];
        for u in t.inner_vertices() {
            let mut seen = [0usize; 5];
            let mut order = Vec::new();
            for (p, d) in g.darts_around(u).enumerate() {
                position[d] = p;
                if let Some(k) = self.color[d] {
                    seen[k as usize] += 1;
                    order.push(k);
                }
            }
            for k in 0..5u8 {
                match seen[k as usize] {
                    0 => v.push(WoodViolation::MissingOutgoing { vertex: u, color: k }),
                    1 => {}
                    _ => v.push(WoodViolation::DuplicateOutgoing { vertex: u, color: k }),
                }
            }
            if order.len() == 5 && (0..5).any(|j| order[(j + 1) % 5] != (order[j] + 1) % 5) {
                v.push(WoodViolation::OutgoingOrder { vertex: u });
            }
        }
        if !v.is_empty() {
            return v;
        }
        for a in 0..g.n_darts() {
            let Some(k) = self.color[a] else { continue };
            let u = g.target(a);
            if t.is_outer(u) {
                continue;
            }
            let out = self.outgoing(t, u).expect("checked above");
            let deg = g.degree(u);
            let lo = position[out[((k + 2) % 5) as usize]];
            let hi = position[out[((k + 3) % 5) as usize]];
            let p = position[g.twin(a)];
            if (p + deg - lo) % deg > (hi + deg - lo) % deg {
                v.push(WoodViolation::IncomingSector { arc: a });
            }
        }
        for e in 0..g.n_edges() {
            let d = 2 * e;
            if t.is_inner_edge(d) && self.color[d].is_none() && self.color[d + 1].is_none() {
                v.push(WoodViolation::UncoloredEdge { edge: e });
            }
        }
        v
    }

    /// Out-neighbour of inner vertex `v` in tree `W_k`.
    pub fn parent(&self, t: &FiveTriangulation, v: VertexId, k: u8) -> Option<VertexId> {
        t.map().darts_around(v).find(|&d| self.color[d] == Some(k)).map(|d| t.map().target(d))
    }
}

/// Orientation of `G+` determined by a labeling.
pub fn phi(t: &FiveTriangulation, c: &Completion, l: &CornerLabeling) -> Result<FiveCOrientation, StructureError> {
    let violations = l.validate(t);
    if !violations.is_empty() {
        return Err(StructureError::InvalidLabeling(violations));
    }
    Ok(phi_unchecked(t, c, l))
}

fn phi_unchecked(t: &FiveTriangulation, c: &Completion, l: &CornerLabeling) -> FiveCOrientation {
    let g = t.map();
    let mut dart = vec![None; c.n_edges()];
    for d in 0..g.n_darts() {
        let he = c.half_edge(d);
        if c.is_inner_edge(he) {
            let toward = l.get(g.sigma_inv(d)) == l.get(d);
            dart[he] = Some(if toward { 2 * he + 1 } else { 2 * he });
        }
        if let Some(s) = c.spoke(d) {
            let toward = jump(l.get(g.twin(d)), l.get(g.sigma_inv(d))) == 1;
            dart[s] = Some(if toward { 2 * s } else { 2 * s + 1 });
        }
    }
    FiveCOrientation { dart }
}

/// Label jump carried by a corner-graph arc under `o`.
pub fn arc_jump(c: &Completion, o: &FiveCOrientation, step: CornerStep) -> u8 {
    match step {
        CornerStep::AroundVertex(d) => {
            if o.toward_primal(d) {
                0
            } else {
                1
            }
        }
        CornerStep::AroundFace(d) => {
            if o.toward_dual(c, d) {
                1
            } else {
                2
            }
        }
    }
}

/// Labeling obtained by propagating the jumps dictated by `o` over the corner
/// graph, starting from the corners at outer vertices.
pub fn phi_inv(t: &FiveTriangulation, c: &Completion, o: &FiveCOrientation) -> Result<CornerLabeling, StructureError> {
    let g = t.map();
    let cg = CornerGraph::new(t);
    let nd = g.n_darts();
    let mut out_arcs: Vec<Vec<(Dart, u8)>> = vec![Vec::new(); nd];
    let mut in_arcs: Vec<Vec<(Dart, u8)>> = vec![Vec::new(); nd];
    for a in &cg.arcs {
        let w = arc_jump(c, o, a.step);
        out_arcs[a.from].push((a.to, w));
        in_arcs[a.to].push((a.from, w));
    }
    let mut label: Vec<Option<u8>> = vec![None; nd];
    let mut queue = VecDeque::new();
    for &corner in &cg.corners {
        if let Some(i) = t.outer_index(g.origin(corner)) {
            label[corner] = Some(i as u8);
            queue.push_back(corner);
        }
    }
    while let Some(x) = queue.pop_front() {
        let lx = label[x].unwrap();
        let forward = out_arcs[x].iter().map(|&(y, w)| (y, (lx + w) % 5));
        let backward = in_arcs[x].iter().map(|&(y, w)| (y, (lx + 5 - w) % 5));
        for (y, ly) in forward.chain(backward) {
            match label[y] {
                None => {
                    label[y] = Some(ly);
                    queue.push_back(y);
                }
                Some(old) if old != ly => return Err(StructureError::PropagationConflict { corner: y }),
                _ => {}
            }
        }
    }
    if let Some(&corner) = cg.corners.iter().find(|&&x| label[x].is_none()) {
        return Err(StructureError::PropagationConflict { corner });
    }
    Ok(CornerLabeling { label })
}

/// Wood of a labeling: an arc gets color `i` when the corners on its left and
/// right at its origin carry `i + 2` and `i + 3`.
pub fn theta(t: &FiveTriangulation, l: &CornerLabeling) -> Result<WoodColoring, StructureError> {
    let violations = l.validate(t);
    if !violations.is_empty() {
        return Err(StructureError::InvalidLabeling(violations));
    }
    let g = t.map();
    let mut color = vec![None; g.n_darts()];
    for (d, slot) in color.iter_mut().enumerate() {
        if !t.is_inner_edge(d) {
            continue;
        }
        let left = l.get(g.sigma_inv(d));
        let right = l.get(d);
        match jump(left, right) {
            0 => {}
            1 => *slot = Some((left + 3) % 5),
            _ => return Err(StructureError::InvalidLabeling(vec![LabelingViolation::VertexIntervals {
                vertex: g.origin(d),
                jumps: vec![jump(left, right)],
            }])),
        }
    }
    Ok(WoodColoring { color })
}

/// Labeling of a wood: a corner at an inner vertex gets `i` when it lies
/// clockwise between the outgoing arcs of colors `i + 2` and `i + 3`.
pub fn theta_inv(t: &FiveTriangulation, w: &WoodColoring) -> Result<CornerLabeling, StructureError> {
    let violations = w.validate(t);
    if !violations.is_empty() {
        return Err(StructureError::InvalidWood(violations));
    }
    let g = t.map();
    let mut label = vec![None; g.n_darts()];
    for c in 0..g.n_darts() {
        if !t.is_inner_corner(c) {
            continue;
        }
        let u = g.origin(c);
        label[c] = Some(match t.outer_index(u) {
            Some(i) => i as u8,
            None => {
                let mut d = c;
                loop {
                    if let Some(k) = w.color[d] {
                        break (k + 3) % 5;
                    }
                    d = g.sigma_inv(d);
                }
            }
        });
    }
    Ok(CornerLabeling { label })
}

/// Wood of an orientation by the straight-path rule.
pub fn psi(t: &FiveTriangulation, c: &Completion, o: &FiveCOrientation) -> Result<WoodColoring, StructureError> {
    let g = t.map();
    let budget = 2 * g.n_edges();
    let mut color = vec![None; g.n_darts()];
    for a in 0..g.n_darts() {
        if !t.is_inner_edge(a) || o.toward_primal(a) {
            continue;
        }
        let mut b = a;
        let mut steps = 0;
        let end = loop {
            let v = g.target(b);
            if let Some(j) = t.outer_index(v) {
                break j;
            }
            steps += 1;
            if steps > budget {
                return Err(StructureError::NonterminatingPath { arc: a });
            }
            let back = g.twin(b);
            let outgoing = |d: Dart| !o.toward_primal(d);
            b = if !outgoing(back) {
                nth_outgoing(t, o, back, 3, true)
            } else {
                let to_left = c.spoke(b).is_some_and(|s| o.dart[s] == Some(2 * s));
                nth_outgoing(t, o, back, 3, !to_left)
            };
        };
        color[a] = Some(end as u8);
    }
    Ok(WoodColoring { color })
}

/// The `k`-th outgoing half-edge after `d` around `origin(d)`, clockwise or
/// counterclockwise, returned as its `G`-dart.
fn nth_outgoing(t: &FiveTriangulation, o: &FiveCOrientation, d: Dart, k: usize, clockwise: bool) -> Dart {
    let g = t.map();
    let mut x = d;
    let mut seen = 0;
    loop {
        x = if clockwise { g.sigma(x) } else { g.sigma_inv(x) };
        if t.is_inner_edge(x) && !o.toward_primal(x) {
            seen += 1;
            if seen == k {
                return x;
            }
        }
        if x == d && seen == 0 {
            return d;
        }
    }
}

/// The 5c-orientation with no counterclockwise directed cycle in the same
/// class as `o`.
///
/// Faces of `G+` get the largest potential `p` with `p(outer) = 0` such that
/// every oriented edge has `0 <= p(left) - p(right) <= 1`; the edges with
/// difference 1 are reversed.
pub fn minimize(c: &Completion, o: &FiveCOrientation) -> FiveCOrientation {
    let m = c.map();
    let nf = m.n_faces();
    let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); nf];
    for (e, d) in o.dart.iter().enumerate() {
        match d {
            Some(d) => {
                let left = m.face_of(*d);
                let right = m.face_of(d ^ 1);
                adj[right].push((left, 1));
                adj[left].push((right, 0));
            }
            None => {
                let (a, b) = (m.face_of(2 * e), m.face_of(2 * e + 1));
                adj[a].push((b, 0));
                adj[b].push((a, 0));
            }
        }
    }
    let mut p = vec![u32::MAX; nf];
    let mut deque = VecDeque::new();
    p[m.outer_face()] = 0;
    deque.push_back(m.outer_face());
    while let Some(f) = deque.pop_front() {
        for &(g, w) in &adj[f] {
            if p[f] + w < p[g] {
                p[g] = p[f] + w;
                if w == 0 {
                    deque.push_front(g);
                } else {
                    deque.push_back(g);
                }
            }
        }
    }
    let dart = o
        .dart
        .iter()
        .map(|d| d.map(|d| if p[m.face_of(d)] > p[m.face_of(d ^ 1)] { d ^ 1 } else { d }))
        .collect();
    FiveCOrientation { dart }
}

/// Counterclockwise directed face boundaries of `G+` under `o`.
pub fn ccw_faces(c: &Completion, o: &FiveCOrientation) -> Vec<usize> {
    let m = c.map();
    (0..m.n_faces())
        .filter(|&f| f != m.outer_face())
        .filter(|&f| m.face_darts(f).iter().all(|&d| o.dart[d / 2] == Some(d)))
        .collect()
}
