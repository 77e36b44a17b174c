//! Existence pipeline: from a 5c-triangulation to a 5c-orientation through a
//! regular orientation of the augmented 4-gon triangulation.

use std::collections::VecDeque;

use thiserror::Error;

use crate::planar_map::{Dart, FaceId, PlanarMap, VertexId};
use crate::structures::{self, CornerLabeling, FiveCOrientation, WoodColoring};
use crate::triangulation::{Completion, FiveTriangulation, ShortCycle};

/// Stage of the pipeline at which a non-5c input was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureStage {
    /// No regular orientation of `H` exists.
    Infeasible,
    /// The number of edges of `G⋄` leaving an outer vertex is not one.
    NonUniqueStar { count: usize },
    /// Some vertex of `G⋄` is not reachable from `v*`.
    NotAccessible { reached: usize, total: usize },
    /// The assembled orientation violates an outdegree condition.
    InvalidResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("not a 5c-triangulation ({stage:?}){}", .witness.as_ref().map(|w| format!(": {w}")).unwrap_or_default())]
    Not5c { stage: FailureStage, witness: Option<ShortCycle> },
}

/// `H`, obtained by joining a new vertex `v0` (id `n`) to `v1..v4`, and the
/// face-vertex map `H⋄`.
///
/// Darts of `G` keep their ids in `H`; the edge `v_i v0` has dart
/// `2(E + i)` leaving `v_i`. Edge `k` of `H⋄` joins the origin of the `k`-th
/// inner corner of `H` (dart `2k`) to its face-vertex (dart `2k + 1`).
#[derive(Debug, Clone)]
pub struct QuadAugmentation {
    pub h: PlanarMap,
    pub h_diamond: PlanarMap,
    /// Inner corners of `H`, indexed by `H⋄` edge.
    pub corners: Vec<Dart>,
    /// `H⋄` edge of each `H` corner (`usize::MAX` for outer corners).
    pub edge_of_corner: Vec<usize>,
    /// `H⋄` vertex of each inner face of `H`.
    pub face_vertex: Vec<Option<VertexId>>,
}

impl QuadAugmentation {
    pub fn v0(&self) -> VertexId {
        self.h.n_vertices() - 1
    }

    pub fn n_face_vertices(&self) -> usize {
        self.h_diamond.n_vertices() - self.h.n_vertices()
    }
}

pub fn augment(t: &FiveTriangulation) -> QuadAugmentation {
    let g = t.map();
    let n = g.n_vertices();
    let ne = g.n_edges();
    let v = t.outer();
    let mut rot: Vec<Vec<Dart>> = g.dart_rotations();
    rot.push(Vec::new());
    for i in 0..4 {
        let before = t.outer_dart(i);
        let r = &mut rot[v[i]];
        let pos = r.iter().position(|&d| d == before).unwrap();
        r.insert(pos, 2 * (ne + i));
    }
    rot[n] = (0..4).rev().map(|i| 2 * (ne + i) + 1).collect();
    let h = PlanarMap::from_dart_rotations(&rot, t.outer_dart(3)).expect("augmentation of a valid map");

    let mut face_vertex = vec![None; h.n_faces()];
    let mut next = h.n_vertices();
    for (f, slot) in face_vertex.iter_mut().enumerate() {
        if f != h.outer_face() {
            *slot = Some(next);
            next += 1;
        }
    }
    let mut corners = Vec::new();
    let mut edge_of_corner = vec![usize::MAX; h.n_darts()];
    for c in 0..h.n_darts() {
        if h.corner_face(c) != h.outer_face() {
            edge_of_corner[c] = corners.len();
            corners.push(c);
        }
    }
    let mut drot: Vec<Vec<Dart>> = vec![Vec::new(); next];
    for (u, r) in drot.iter_mut().enumerate().take(h.n_vertices()) {
        *r = h.darts_around(u).filter(|&c| edge_of_corner[c] != usize::MAX).map(|c| 2 * edge_of_corner[c]).collect();
    }
    for f in 0..h.n_faces() {
        if let Some(x) = face_vertex[f] {
            // corners of f clockwise: reverse of the counterclockwise face walk
            drot[x] = h.face_darts(f).iter().rev().map(|&d| 2 * edge_of_corner[h.twin(d)] + 1).collect();
        }
    }
    let provisional = drot.iter().flatten().copied().next().unwrap();
    let hd = PlanarMap::from_dart_rotations(&drot, provisional).expect("face-vertex map of a valid map");
    let outer = (0..hd.n_faces()).max_by_key(|&f| hd.face_degree(f)).unwrap();
    let h_diamond = hd.clone().with_outer_dart(hd.face_darts(outer)[0]);
    QuadAugmentation { h, h_diamond, corners, edge_of_corner, face_vertex }
}

/// Unit-capacity Dinic on a bipartite assignment network.
struct Dinic {
    head: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<u32>,
    next: Vec<usize>,
    level: Vec<u32>,
    it: Vec<usize>,
}

impl Dinic {
    const NIL: usize = usize::MAX;

    fn new(n: usize) -> Self {
        Self { head: vec![Self::NIL; n], to: Vec::new(), cap: Vec::new(), next: Vec::new(), level: vec![0; n], it: vec![0; n] }
    }

    fn add(&mut self, a: usize, b: usize, c: u32) -> usize {
        let id = self.to.len();
        for (x, y, cc) in [(a, b, c), (b, a, 0)] {
            self.to.push(y);
            self.cap.push(cc);
            self.next.push(self.head[x]);
            self.head[x] = self.to.len() - 1;
        }
        id
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(u32::MAX);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            let mut e = self.head[x];
            while e != Self::NIL {
                let y = self.to[e];
                if self.cap[e] > 0 && self.level[y] == u32::MAX {
                    self.level[y] = self.level[x] + 1;
                    q.push_back(y);
                }
                e = self.next[e];
            }
        }
        self.level[t] != u32::MAX
    }

    fn dfs(&mut self, s: usize, t: usize) -> bool {
        // iterative augmenting path search along the level graph
        let mut path: Vec<usize> = Vec::new();
        let mut x = s;
        loop {
            if x == t {
                for &e in &path {
                    self.cap[e] -= 1;
                    self.cap[e ^ 1] += 1;
                }
                return true;
            }
            let mut advanced = false;
            while self.it[x] != Self::NIL {
                let e = self.it[x];
                let y = self.to[e];
                if self.cap[e] > 0 && self.level[y] == self.level[x] + 1 {
                    path.push(e);
                    x = y;
                    advanced = true;
                    break;
                }
                self.it[x] = self.next[e];
            }
            if !advanced {
                self.level[x] = u32::MAX;
                match path.pop() {
                    None => return false,
                    Some(e) => {
                        x = self.to[e ^ 1];
                        self.it[x] = self.next[self.it[x]];
                    }
                }
            }
        }
    }

    fn max_flow(&mut self, s: usize, t: usize) -> usize {
        let mut flow = 0;
        while self.bfs(s, t) {
            self.it.clone_from(&self.head);
            while self.dfs(s, t) {
                flow += 1;
            }
        }
        flow
    }
}

/// A regular orientation of `H⋄`, as the single outgoing corner chosen by each
/// face-vertex: `chosen[c]` is true when the `H⋄` edge of corner `c` points
/// from the face-vertex to the vertex.
///
/// Face-vertices get outdegree 1, inner vertices of `H` outdegree 4 and each
/// of the four outer vertices outdegree 1.
pub fn regular_orientation(q: &QuadAugmentation) -> Option<Vec<bool>> {
    let h = &q.h;
    let nv = h.n_vertices();
    let nf = q.n_face_vertices();
    let outer_h: Vec<bool> = {
        let mut o = vec![false; nv];
        for &d in h.face_darts(h.outer_face()) {
            o[h.origin(d)] = true;
        }
        o
    };
    let mut degree = vec![0i64; nv];
    for &c in &q.corners {
        degree[h.origin(c)] += 1;
    }
    // number of face-vertices that must point at each vertex
    let demand: Vec<i64> = (0..nv).map(|u| degree[u] - if outer_h[u] { 1 } else { 4 }).collect();
    if demand.iter().any(|&d| d < 0) || demand.iter().sum::<i64>() != nf as i64 {
        return None;
    }
    let face_index: Vec<usize> = {
        let mut idx = vec![usize::MAX; h.n_faces()];
        let mut k = 0;
        for f in 0..h.n_faces() {
            if q.face_vertex[f].is_some() {
                idx[f] = k;
                k += 1;
            }
        }
        idx
    };
    let source = nf + nv;
    let sink = source + 1;
    let mut net = Dinic::new(sink + 1);
    for k in 0..nf {
        net.add(source, k, 1);
    }
    let mut arc_of_corner = vec![0; q.corners.len()];
    for (e, &c) in q.corners.iter().enumerate() {
        let f = face_index[h.corner_face(c)];
        arc_of_corner[e] = net.add(f, nf + h.origin(c), 1);
    }
    for (u, &d) in demand.iter().enumerate() {
        if d > 0 {
            net.add(nf + u, sink, d as u32);
        }
    }
    if net.max_flow(source, sink) != nf {
        return None;
    }
    let mut chosen = vec![false; h.n_darts()];
    for (e, &c) in q.corners.iter().enumerate() {
        chosen[c] = net.cap[arc_of_corner[e]] == 0;
    }
    Some(chosen)
}

/// Orientation `B` of `G⋄`: `from_face[c]` for each inner corner `c` of `G`
/// tells whether its edge points from the face-vertex to the vertex.
#[derive(Debug, Clone)]
pub struct OrientationB {
    pub from_face: Vec<bool>,
    pub star: Dart,
}

impl OrientationB {
    pub fn v_star(&self, t: &FiveTriangulation) -> VertexId {
        t.map().origin(self.star)
    }
}

/// The inner face of `G` incident to the outer edge `v_{i+1} v_{i+2}`.
pub fn b_face(t: &FiveTriangulation, i: usize) -> FaceId {
    t.map().face_of(t.map().twin(t.outer_dart(i)))
}

/// Restricts a regular orientation to `G⋄` and gives each `b_i` a second
/// outgoing edge. Returns the star count on failure.
pub fn orientation_b(t: &FiveTriangulation, chosen: &[bool]) -> Result<OrientationB, usize> {
    let g = t.map();
    let mut from_face: Vec<bool> = (0..g.n_darts()).map(|c| t.is_inner_corner(c) && chosen[c]).collect();
    for i in 0..5 {
        let d = t.outer_dart(i);
        let at_vi = d;
        let at_next = g.sigma_inv(g.twin(d));
        if !from_face[at_vi] {
            from_face[at_vi] = true;
        } else {
            from_face[at_next] = true;
        }
    }
    let stars: Vec<Dart> = (0..g.n_darts())
        .filter(|&c| t.is_inner_corner(c) && t.is_outer(g.origin(c)) && !from_face[c])
        .collect();
    if stars.len() != 1 {
        return Err(stars.len());
    }
    Ok(OrientationB { from_face, star: stars[0] })
}

/// Node of `G⋄`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiamondNode {
    Vertex(VertexId),
    Face(FaceId),
}

/// Spanning tree of `G⋄` from `v*` and the pairing of its non-tree edges with
/// the inner faces of `G⋄` (one per inner edge of `G`).
#[derive(Debug, Clone)]
pub struct TreePairing {
    /// Whether the edge of each inner corner belongs to the tree.
    pub in_tree: Vec<bool>,
    /// For each inner edge `e` of `G`, the non-tree corner paired with its face.
    pub paired_corner: Vec<Option<Dart>>,
    /// For each inner edge `e` of `G`, the head of the paired edge.
    pub terminal: Vec<Option<DiamondNode>>,
}

fn corner_head(t: &FiveTriangulation, b: &OrientationB, c: Dart) -> DiamondNode {
    if b.from_face[c] {
        DiamondNode::Vertex(t.map().origin(c))
    } else {
        DiamondNode::Face(t.map().corner_face(c))
    }
}

pub fn spanning_tree(t: &FiveTriangulation, b: &OrientationB) -> Result<TreePairing, (usize, usize)> {
    let g = t.map();
    let n = g.n_vertices();
    let nf = g.n_faces();
    let index = |x: DiamondNode| match x {
        DiamondNode::Vertex(v) => v,
        DiamondNode::Face(f) => n + f,
    };
    let mut seen = vec![false; n + nf];
    let mut in_tree = vec![false; g.n_darts()];
    let v_star = b.v_star(t);
    seen[v_star] = true;
    let mut reached = 1;
    let mut queue = VecDeque::from([DiamondNode::Vertex(v_star)]);
    while let Some(x) = queue.pop_front() {
        let outgoing: Vec<Dart> = match x {
            DiamondNode::Vertex(u) => g.darts_around(u).filter(|&c| t.is_inner_corner(c) && !b.from_face[c]).collect(),
            DiamondNode::Face(f) => t.face_corners_cw(f).into_iter().filter(|&c| b.from_face[c]).collect(),
        };
        for c in outgoing {
            let y = corner_head(t, b, c);
            if !seen[index(y)] {
                seen[index(y)] = true;
                reached += 1;
                in_tree[c] = true;
                queue.push_back(y);
            }
        }
    }
    let total = n + t.n_inner_faces();
    if reached != total {
        return Err((reached, total));
    }
    // dual tree on the faces of G⋄ (inner edges of G, plus the outer face)
    let outer_node = g.n_edges();
    let node = |d: Dart| if t.is_inner_edge(d) { g.edge_of(d) } else { outer_node };
    let mut adj: Vec<Vec<Dart>> = vec![Vec::new(); outer_node + 1];
    for c in 0..g.n_darts() {
        if t.is_inner_corner(c) && !in_tree[c] {
            adj[node(c)].push(c);
            adj[node(g.sigma(c))].push(c);
        }
    }
    let mut paired_corner = vec![None; g.n_edges()];
    let mut terminal = vec![None; g.n_edges()];
    let mut visited = vec![false; outer_node + 1];
    visited[outer_node] = true;
    let mut queue = VecDeque::from([outer_node]);
    while let Some(s) = queue.pop_front() {
        for &c in &adj[s] {
            let other = if node(c) == s { node(g.sigma(c)) } else { node(c) };
            if !visited[other] {
                visited[other] = true;
                paired_corner[other] = Some(c);
                terminal[other] = Some(corner_head(t, b, c));
                queue.push_back(other);
            }
        }
    }
    Ok(TreePairing { in_tree, paired_corner, terminal })
}

/// Orients `G+` from the pairing: in each face `s` of `G⋄` the edge-vertex
/// points to `t_s` and receives its other three edges; `x_i` points to `b_i`.
pub fn assemble(t: &FiveTriangulation, c: &Completion, tp: &TreePairing) -> FiveCOrientation {
    let g = t.map();
    let mut dart = vec![None; c.n_edges()];
    for e in 0..g.n_edges() {
        let d = 2 * e;
        if !t.is_inner_edge(d) {
            continue;
        }
        let Some(ts) = tp.terminal[e] else { continue };
        for h in [d, d + 1] {
            let toward = ts == DiamondNode::Vertex(g.origin(h));
            dart[h] = Some(if toward { 2 * h + 1 } else { 2 * h });
            let s = c.spoke(h).expect("inner edge");
            let toward = ts == DiamondNode::Face(g.face_of(h));
            dart[s] = Some(if toward { 2 * s } else { 2 * s + 1 });
        }
    }
    for i in 0..5 {
        let s = c.spoke(g.twin(t.outer_dart(i))).expect("b_i is inner");
        dart[s] = Some(2 * s);
    }
    FiveCOrientation { dart }
}

/// Full pipeline; succeeds iff `t` is a 5c-triangulation.
pub fn construct_5c(t: &FiveTriangulation, c: &Completion) -> Result<FiveCOrientation, ConstructError> {
    let fail = |stage| ConstructError::Not5c { stage, witness: t.is_5c().witness };
    let q = augment(t);
    let chosen = regular_orientation(&q).ok_or_else(|| fail(FailureStage::Infeasible))?;
    let b = orientation_b(t, &chosen).map_err(|count| fail(FailureStage::NonUniqueStar { count }))?;
    let tp = spanning_tree(t, &b).map_err(|(reached, total)| fail(FailureStage::NotAccessible { reached, total }))?;
    let o = assemble(t, c, &tp);
    if !o.validate(t, c).is_empty() {
        return Err(fail(FailureStage::InvalidResult));
    }
    Ok(o)
}

/// The three 5c-structures of one instance, related by the bijections.
#[derive(Debug, Clone)]
pub struct FiveCStructures {
    pub completion: Completion,
    pub orientation: FiveCOrientation,
    pub labeling: CornerLabeling,
    pub wood: WoodColoring,
}

/// Runs [`construct_5c`], optionally moves to the minimal orientation, and
/// derives the labeling and the wood.
pub fn five_c_structures(t: &FiveTriangulation, minimal: bool) -> Result<FiveCStructures, ConstructError> {
    let completion = Completion::new(t);
    let mut orientation = construct_5c(t, &completion)?;
    if minimal {
        orientation = structures::minimize(&completion, &orientation);
    }
    let invalid = || ConstructError::Not5c { stage: FailureStage::InvalidResult, witness: None };
    let labeling = structures::phi_inv(t, &completion, &orientation).map_err(|_| invalid())?;
    let wood = structures::theta(t, &labeling).map_err(|_| invalid())?;
    Ok(FiveCStructures { completion, orientation, labeling, wood })
}
