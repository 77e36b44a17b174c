//! Triangulations of the pentagon, the 5c predicate, the primal-dual
//! completion `G+` and the corner graph.

use std::collections::HashSet;

use thiserror::Error;

use crate::planar_map::{Dart, FaceId, MapError, PlanarMap, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangulationError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("outer face is not a simple 5-cycle matching {0:?}")]
    BadOuterFace(Vec<VertexId>),
    #[error("inner face {face} has degree {degree}, expected 3")]
    NonTriangularInnerFace { face: FaceId, degree: usize },
    #[error("apex has degree {0}, expected 5")]
    ApexDegreeNot5(usize),
    #[error("removing the apex does not leave a 5c-triangulation: {0}")]
    ResultNot5c(ShortCycle),
}

/// A map whose inner faces are triangles and whose outer face is a simple
/// 5-cycle `v1..v5` in clockwise order.
#[derive(Debug, Clone)]
pub struct FiveTriangulation {
    map: PlanarMap,
    outer: [VertexId; 5],
    outer_index: Vec<Option<usize>>,
    outer_darts: [Dart; 5],
}

impl FiveTriangulation {
    /// Checks the face structure of `map` against the outer cycle `outer`.
    pub fn new(map: PlanarMap, outer: &[VertexId]) -> Result<Self, TriangulationError> {
        let bad = || TriangulationError::BadOuterFace(outer.to_vec());
        if outer.len() != 5 {
            return Err(bad());
        }
        let mut distinct = outer.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != 5 || outer.iter().any(|&v| v >= map.n_vertices()) {
            return Err(bad());
        }
        let d1 = map.find_face_dart(outer).ok_or_else(bad)?;
        if map.face_of(d1) != map.outer_face() {
            return Err(bad());
        }
        for f in 0..map.n_faces() {
            if f != map.outer_face() && map.face_degree(f) != 3 {
                return Err(TriangulationError::NonTriangularInnerFace { face: f, degree: map.face_degree(f) });
            }
        }
        let mut outer_index = vec![None; map.n_vertices()];
        let mut outer_darts = [0; 5];
        let mut d = d1;
        for i in 0..5 {
            outer_index[outer[i]] = Some(i);
            outer_darts[i] = d;
            d = map.phi(d);
        }
        let outer = [outer[0], outer[1], outer[2], outer[3], outer[4]];
        Ok(Self { map, outer, outer_index, outer_darts })
    }

    /// Builds and checks a 5-triangulation from clockwise neighbour lists.
    pub fn from_rotation_system(rot: &[Vec<VertexId>], outer: &[VertexId]) -> Result<Self, TriangulationError> {
        let map = PlanarMap::from_rotation_system(rot, outer)?;
        Self::new(map, outer)
    }

    pub fn map(&self) -> &PlanarMap {
        &self.map
    }

    pub fn n(&self) -> usize {
        self.map.n_vertices()
    }

    /// Outer vertices `v1..v5` (0-based array: `outer()[0]` is `v1`).
    pub fn outer(&self) -> [VertexId; 5] {
        self.outer
    }

    /// 0-based index `i` such that `v` is `v_{i+1}`.
    #[inline]
    pub fn outer_index(&self, v: VertexId) -> Option<usize> {
        self.outer_index[v]
    }

    #[inline]
    pub fn is_outer(&self, v: VertexId) -> bool {
        self.outer_index[v].is_some()
    }

    /// Dart `v_{i+1} -> v_{i+2}` along the outer face.
    pub fn outer_dart(&self, i: usize) -> Dart {
        self.outer_darts[i]
    }

    pub fn inner_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n()).filter(move |&v| !self.is_outer(v))
    }

    pub fn inner_faces(&self) -> impl Iterator<Item = FaceId> + '_ {
        let outer = self.map.outer_face();
        (0..self.map.n_faces()).filter(move |&f| f != outer)
    }

    pub fn n_inner_faces(&self) -> usize {
        self.map.n_faces() - 1
    }

    /// True when the corner `c` lies in an inner face.
    #[inline]
    pub fn is_inner_corner(&self, c: Dart) -> bool {
        self.map.corner_face(c) != self.map.outer_face()
    }

    /// True when the edge of `d` is not on the outer face.
    #[inline]
    pub fn is_inner_edge(&self, d: Dart) -> bool {
        let outer = self.map.outer_face();
        self.map.face_of(d) != outer && self.map.face_of(self.map.twin(d)) != outer
    }

    /// The dart `u -> v`, if the edge exists.
    pub fn dart_between(&self, u: VertexId, v: VertexId) -> Option<Dart> {
        self.map.darts_around(u).find(|&d| self.map.target(d) == v)
    }

    /// Clockwise successor of corner `c` around its inner face.
    #[inline]
    pub fn face_successor(&self, c: Dart) -> Dart {
        self.map.sigma_inv(self.map.twin(c))
    }

    /// Corners of an inner face in clockwise order.
    pub fn face_corners_cw(&self, f: FaceId) -> [Dart; 3] {
        let d = self.map.face_darts(f);
        // The corner at target(d) inside face(d) is twin(d); phi walks counterclockwise.
        [self.map.twin(d[2]), self.map.twin(d[1]), self.map.twin(d[0])]
    }

    /// Checks whether every cycle of length at most 4 has an empty interior.
    pub fn is_5c(&self) -> FiveCVerdict {
        match find_short_separating_cycle(self) {
            None => FiveCVerdict { is_5c: true, witness: None },
            Some(w) => FiveCVerdict { is_5c: false, witness: Some(w) },
        }
    }

    /// Deletes a degree-5 vertex of a triangulation of the sphere; its link
    /// becomes the outer pentagon.
    pub fn from_five_connected(map: &PlanarMap, apex: VertexId) -> Result<Self, TriangulationError> {
        let deg = map.degree(apex);
        if deg != 5 {
            return Err(TriangulationError::ApexDegreeNot5(deg));
        }
        let link: Vec<VertexId> = map.neighbors(apex).collect();
        let relabel = |v: VertexId| if v > apex { v - 1 } else { v };
        let rot: Vec<Vec<VertexId>> = (0..map.n_vertices())
            .filter(|&v| v != apex)
            .map(|v| map.neighbors(v).filter(|&w| w != apex).map(relabel).collect())
            .collect();
        // Seen from outside, the link appears counterclockwise around the apex.
        let outer: Vec<VertexId> = link.iter().rev().map(|&v| relabel(v)).collect();
        let t = Self::from_rotation_system(&rot, &outer)?.with_standard_labels();
        let verdict = t.is_5c();
        match verdict.witness {
            Some(w) => Err(TriangulationError::ResultNot5c(w)),
            None => Ok(t),
        }
    }

    /// Renumbers the vertices so that `v1..v5` are `0..5`, keeping the
    /// relative order of the inner vertices.
    pub fn with_standard_labels(self) -> Self {
        if self.outer == [0, 1, 2, 3, 4] {
            return self;
        }
        let n = self.n();
        let mut new_id = vec![0; n];
        for (i, &v) in self.outer.iter().enumerate() {
            new_id[v] = i;
        }
        let mut next = 5;
        for v in 0..n {
            if !self.is_outer(v) {
                new_id[v] = next;
                next += 1;
            }
        }
        let old = self.rotation_system();
        let mut rot = vec![Vec::new(); n];
        for v in 0..n {
            rot[new_id[v]] = old[v].iter().map(|&w| new_id[w]).collect();
        }
        Self::from_rotation_system(&rot, &[0, 1, 2, 3, 4]).expect("relabeling preserves validity")
    }

    /// Clockwise neighbour lists (for serialization).
    pub fn rotation_system(&self) -> Vec<Vec<VertexId>> {
        self.map.rotation_system()
    }
}

/// A cycle of length at most 4 with a vertex strictly inside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortCycle {
    pub cycle: Vec<VertexId>,
    pub enclosed: Option<VertexId>,
}

impl std::fmt::Display for ShortCycle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "cycle {:?}", self.cycle)?;
        if let Some(v) = self.enclosed {
            write!(f, " encloses vertex {v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiveCVerdict {
    pub is_5c: bool,
    pub witness: Option<ShortCycle>,
}

/// Faces strictly inside the closed walk given by `darts`: the faces that cannot
/// be reached from the outer face without crossing one of its edges.
pub fn faces_inside(map: &PlanarMap, darts: &[Dart]) -> Vec<bool> {
    let mut barrier = vec![false; map.n_edges()];
    for &d in darts {
        barrier[map.edge_of(d)] = true;
    }
    let mut reached = vec![false; map.n_faces()];
    let mut stack = vec![map.outer_face()];
    reached[map.outer_face()] = true;
    while let Some(f) = stack.pop() {
        for &d in map.face_darts(f) {
            if barrier[map.edge_of(d)] {
                continue;
            }
            let g = map.face_of(map.twin(d));
            if !reached[g] {
                reached[g] = true;
                stack.push(g);
            }
        }
    }
    reached.iter().map(|r| !r).collect()
}

/// Vertices strictly inside the closed walk `darts`.
pub fn vertices_inside(map: &PlanarMap, darts: &[Dart]) -> Vec<VertexId> {
    let inside = faces_inside(map, darts);
    let on_cycle: HashSet<VertexId> = darts.iter().map(|&d| map.origin(d)).collect();
    (0..map.n_vertices())
        .filter(|v| !on_cycle.contains(v))
        .filter(|&v| inside[map.face_of(map.vertex_dart(v))])
        .collect()
}

fn witness_from_darts(map: &PlanarMap, darts: &[Dart]) -> ShortCycle {
    ShortCycle {
        cycle: darts.iter().map(|&d| map.origin(d)).collect(),
        enclosed: vertices_inside(map, darts).first().copied(),
    }
}

fn pair_key(a: VertexId, b: VertexId) -> (u32, u32) {
    (a.min(b) as u32, a.max(b) as u32)
}

fn triple_key(a: VertexId, b: VertexId, c: VertexId) -> [u32; 3] {
    let mut k = [a as u32, b as u32, c as u32];
    k.sort_unstable();
    k
}

/// Local characterization of short separating cycles.
///
/// In a triangulated disk a 3-cycle has an empty interior exactly when it
/// bounds an inner face, and a 4-cycle exactly when it bounds the union of two
/// inner faces sharing a diagonal. Loops and parallel edges always enclose a
/// vertex because inner faces have degree 3.
fn find_short_separating_cycle(t: &FiveTriangulation) -> Option<ShortCycle> {
    let map = t.map();
    let n = map.n_vertices();
    // loops and multi-edges
    let mut mark = vec![usize::MAX; n];
    for u in 0..n {
        for d in map.darts_around(u) {
            let v = map.target(d);
            if v == u {
                return Some(witness_from_darts(map, &[d]));
            }
            if mark[v] == u {
                let first = map.darts_around(u).find(|&e| map.target(e) == v).unwrap();
                return Some(witness_from_darts(map, &[first, map.twin(d)]));
            }
            mark[v] = u;
        }
    }
    let faces: HashSet<[u32; 3]> = t
        .inner_faces()
        .map(|f| {
            let v = map.face_vertices(f);
            triple_key(v[0], v[1], v[2])
        })
        .collect();
    let edges: HashSet<(u32, u32)> = (0..map.n_edges())
        .map(|e| pair_key(map.origin(2 * e), map.origin(2 * e + 1)))
        .collect();
    let adjacent = |a: VertexId, b: VertexId| edges.contains(&pair_key(a, b));
    let is_face = |a, b, c| faces.contains(&triple_key(a, b, c));
    let cycle_witness = |cycle: &[VertexId]| {
        let darts: Vec<Dart> = (0..cycle.len())
            .map(|k| t.dart_between(cycle[k], cycle[(k + 1) % cycle.len()]).unwrap())
            .collect();
        witness_from_darts(map, &darts)
    };

    let mut mark = vec![usize::MAX; n];
    let mut common: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    let mut touched: Vec<VertexId> = Vec::new();
    for u in 0..n {
        for w in map.neighbors(u) {
            mark[w] = u;
        }
        // triangles u < v < w
        for v in map.neighbors(u).filter(|&v| v > u) {
            for w in map.neighbors(v).filter(|&w| w > v) {
                if mark[w] == u && !is_face(u, v, w) {
                    return Some(cycle_witness(&[u, v, w]));
                }
            }
        }
        // 4-cycles u-a-v-b with u < v opposite
        for a in map.neighbors(u) {
            for v in map.neighbors(a).filter(|&v| v > u) {
                if common[v].is_empty() {
                    touched.push(v);
                }
                common[v].push(a);
            }
        }
        for &v in &touched {
            let c = &common[v];
            for i in 0..c.len() {
                for j in i + 1..c.len() {
                    let (a, b) = (c[i], c[j]);
                    let empty = (mark[v] == u && is_face(u, v, a) && is_face(u, v, b))
                        || (adjacent(a, b) && is_face(a, b, u) && is_face(a, b, v));
                    if !empty {
                        return Some(cycle_witness(&[u, a, v, b]));
                    }
                }
            }
        }
        for v in touched.drain(..) {
            common[v].clear();
        }
    }
    None
}

/// Role of a vertex of the primal-dual completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    /// A vertex of `G`.
    Primal(VertexId),
    /// The edge-vertex on edge `e` of `G` (edge index, i.e. `dart / 2`).
    Edge(usize),
    /// The dual vertex of an inner face of `G`.
    Dual(FaceId),
}

/// The primal-dual completion `G+` of a 5-triangulation.
///
/// Vertex ids: primal `0..n`, edge-vertices `n..n+E`, dual vertices after.
/// Edge ids: the half-edge `origin(d) - x_e` of `G`-dart `d` is edge `d` (dart
/// `2d` leaves the primal vertex); the spoke between `x_e` and the face of `d`
/// is edge `2E + k` (dart `2(2E + k)` leaves the edge-vertex).
#[derive(Debug, Clone)]
pub struct Completion {
    map: PlanarMap,
    n_primal: usize,
    n_edges_g: usize,
    dual_of_face: Vec<Option<VertexId>>,
    face_of_dual: Vec<FaceId>,
    spoke: Vec<Option<usize>>,
    spoke_dart_g: Vec<Dart>,
    inner_edge: Vec<bool>,
}

impl Completion {
    pub fn new(t: &FiveTriangulation) -> Self {
        let g = t.map();
        let n = g.n_vertices();
        let ne = g.n_edges();
        let nd = g.n_darts();
        let mut dual_of_face = vec![None; g.n_faces()];
        let mut face_of_dual = Vec::new();
        for f in t.inner_faces() {
            dual_of_face[f] = Some(n + ne + face_of_dual.len());
            face_of_dual.push(f);
        }
        let mut spoke = vec![None; nd];
        let mut spoke_dart_g = Vec::new();
        for d in 0..nd {
            if g.face_of(d) != g.outer_face() {
                spoke[d] = Some(nd + spoke_dart_g.len());
                spoke_dart_g.push(d);
            }
        }
        let n_total = n + ne + face_of_dual.len();
        let mut rot: Vec<Vec<Dart>> = vec![Vec::new(); n_total];
        for (u, r) in rot.iter_mut().enumerate().take(n) {
            *r = g.darts_around(u).map(|d| 2 * d).collect();
        }
        for e in 0..ne {
            let (d, dp) = (2 * e, 2 * e + 1);
            let r = &mut rot[n + e];
            r.push(2 * d + 1);
            if let Some(s) = spoke[d] {
                r.push(2 * s);
            }
            r.push(2 * dp + 1);
            if let Some(s) = spoke[dp] {
                r.push(2 * s);
            }
        }
        for (k, &f) in face_of_dual.iter().enumerate() {
            let darts = g.face_darts(f);
            rot[n + ne + k] = darts.iter().rev().map(|&d| 2 * spoke[d].unwrap() + 1).collect();
        }
        let map = PlanarMap::from_dart_rotations(&rot, 2 * t.outer_dart(0))
            .expect("primal-dual completion of a valid map is a valid map");
        let mut inner_edge = vec![true; map.n_edges()];
        for d in 0..nd {
            if !t.is_inner_edge(d) {
                inner_edge[d] = false;
            }
        }
        Self { map, n_primal: n, n_edges_g: ne, dual_of_face, face_of_dual, spoke, spoke_dart_g, inner_edge }
    }

    pub fn map(&self) -> &PlanarMap {
        &self.map
    }

    pub fn n_vertices(&self) -> usize {
        self.map.n_vertices()
    }

    pub fn role(&self, v: VertexId) -> Role {
        if v < self.n_primal {
            Role::Primal(v)
        } else if v < self.n_primal + self.n_edges_g {
            Role::Edge(v - self.n_primal)
        } else {
            Role::Dual(self.face_of_dual[v - self.n_primal - self.n_edges_g])
        }
    }

    pub fn edge_vertex(&self, e: usize) -> VertexId {
        self.n_primal + e
    }

    pub fn dual_vertex(&self, f: FaceId) -> Option<VertexId> {
        self.dual_of_face[f]
    }

    /// `G+` edge joining `origin(d)` to the edge-vertex of `d`.
    #[inline]
    pub fn half_edge(&self, d: Dart) -> usize {
        d
    }

    /// `G+` edge joining the edge-vertex of `d` to the dual vertex of the face of `d`.
    #[inline]
    pub fn spoke(&self, d: Dart) -> Option<usize> {
        self.spoke[d]
    }

    /// The `G`-dart whose face the spoke `edge` points into.
    pub fn spoke_dart(&self, edge: usize) -> Option<Dart> {
        edge.checked_sub(2 * self.n_edges_g).map(|k| self.spoke_dart_g[k])
    }

    pub fn n_edges(&self) -> usize {
        self.map.n_edges()
    }

    /// Edges of `G+` not on the outer face.
    #[inline]
    pub fn is_inner_edge(&self, edge: usize) -> bool {
        self.inner_edge[edge]
    }

    /// Endpoints of `edge` as (dart `2 edge` origin, dart `2 edge + 1` origin).
    pub fn endpoints(&self, edge: usize) -> (VertexId, VertexId) {
        (self.map.origin(2 * edge), self.map.origin(2 * edge + 1))
    }
}

/// Step kind of a corner-graph arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CornerStep {
    /// Clockwise around the vertex; the crossed edge is the `G`-dart given.
    AroundVertex(Dart),
    /// Clockwise around the face; the crossed edge is the `G`-dart given
    /// (the dart of the face ending at the source corner's vertex).
    AroundFace(Dart),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CornerArc {
    pub from: Dart,
    pub to: Dart,
    pub step: CornerStep,
}

/// Directed graph on the inner corners of `G`.
#[derive(Debug, Clone)]
pub struct CornerGraph {
    pub corners: Vec<Dart>,
    pub arcs: Vec<CornerArc>,
}

impl CornerGraph {
    pub fn new(t: &FiveTriangulation) -> Self {
        let g = t.map();
        let corners: Vec<Dart> = (0..g.n_darts()).filter(|&c| t.is_inner_corner(c)).collect();
        let mut arcs = Vec::with_capacity(2 * corners.len());
        for &c in &corners {
            let next = g.sigma(c);
            if t.is_inner_corner(next) {
                arcs.push(CornerArc { from: c, to: next, step: CornerStep::AroundVertex(next) });
            }
            arcs.push(CornerArc {
                from: c,
                to: t.face_successor(c),
                step: CornerStep::AroundFace(g.twin(c)),
            });
        }
        Self { corners, arcs }
    }

    /// Boundary cycles of the inner faces of the corner graph, one per inner
    /// vertex, inner edge and inner face of `G`.
    pub fn inner_face_cycles(&self, t: &FiveTriangulation) -> Vec<Vec<Dart>> {
        let g = t.map();
        let mut out = Vec::new();
        for v in t.inner_vertices() {
            out.push(g.darts_around(v).collect());
        }
        for e in 0..g.n_edges() {
            let d = 2 * e;
            if t.is_inner_edge(d) {
                let dt = g.twin(d);
                out.push(vec![g.sigma_inv(d), d, g.sigma_inv(dt), dt]);
            }
        }
        for f in t.inner_faces() {
            out.push(t.face_corners_cw(f).to_vec());
        }
        out
    }
}
