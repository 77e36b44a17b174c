//! The five trees of a wood, their paths, regions `R_i(v)` and region sizes.
//!
//! Colors are `0..5`; `i - 2` and `i + 2` are taken modulo 5. The region
//! `R_i(v)` is bounded by `P_{i-2}(v)`, `P_{i+2}(v)` and the outer edge
//! `{v_{i+2}, v_{i-2}}`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::planar_map::{Dart, FaceId, VertexId};
use crate::structures::WoodColoring;
use crate::triangulation::{faces_inside, FiveTriangulation};

#[inline]
pub fn minus2(i: usize) -> usize {
    (i + 3) % 5
}

#[inline]
pub fn plus2(i: usize) -> usize {
    (i + 2) % 5
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegionError {
    #[error("tree W{} contains a cycle through vertex {vertex}", color + 1)]
    CycleDetected { color: u8, vertex: VertexId },
    #[error("vertex {vertex} has no outgoing arc of color {}", color + 1)]
    MissingParent { color: u8, vertex: VertexId },
    #[error("face {face} has non-positive weight")]
    NonPositiveWeight { face: FaceId },
    #[error("expected {expected} face weights, found {found}")]
    WeightCount { expected: usize, found: usize },
}

/// Parent pointers of the trees `W_0..W_4`, each rooted at its outer vertex.
#[derive(Debug, Clone)]
pub struct WoodTrees {
    n: usize,
    outer: [VertexId; 5],
    parent_dart: Vec<[Dart; 5]>,
    targets: Vec<[VertexId; 5]>,
    order: [Vec<VertexId>; 5],
    children: [Vec<Vec<VertexId>>; 5],
    colors: Vec<Option<u8>>,
}

impl WoodTrees {
    pub fn new(t: &FiveTriangulation, w: &WoodColoring) -> Result<Self, RegionError> {
        let g = t.map();
        let n = g.n_vertices();
        let mut parent_dart = vec![[usize::MAX; 5]; n];
        let mut targets = vec![[usize::MAX; 5]; n];
        for d in 0..g.n_darts() {
            if let Some(k) = w.color[d] {
                parent_dart[g.origin(d)][k as usize] = d;
                targets[g.origin(d)][k as usize] = g.target(d);
            }
        }
        let mut children: [Vec<Vec<VertexId>>; 5] = Default::default();
        let mut order: [Vec<VertexId>; 5] = Default::default();
        for k in 0..5 {
            children[k] = vec![Vec::new(); n];
            for v in t.inner_vertices() {
                let p = targets[v][k];
                if p == usize::MAX {
                    return Err(RegionError::MissingParent { color: k as u8, vertex: v });
                }
                children[k][p].push(v);
            }
            let root = t.outer()[k];
            let mut seen = vec![false; n];
            let mut queue = VecDeque::from([root]);
            seen[root] = true;
            while let Some(u) = queue.pop_front() {
                if u != root {
                    order[k].push(u);
                }
                for &c in &children[k][u] {
                    if !seen[c] {
                        seen[c] = true;
                        queue.push_back(c);
                    }
                }
            }
            if let Some(v) = t.inner_vertices().find(|&v| !seen[v]) {
                return Err(RegionError::CycleDetected { color: k as u8, vertex: v });
            }
        }
        Ok(WoodTrees { n, outer: t.outer(), parent_dart, targets, order, children, colors: w.color.clone() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_outer(&self, v: VertexId) -> bool {
        self.outer.contains(&v)
    }

    /// Out-neighbour of inner vertex `v` in `W_k`.
    pub fn parent(&self, v: VertexId, k: usize) -> VertexId {
        self.targets[v][k]
    }

    /// Arc of color `k` leaving inner vertex `v`.
    pub fn parent_dart(&self, v: VertexId, k: usize) -> Dart {
        self.parent_dart[v][k]
    }

    pub fn children(&self, v: VertexId, k: usize) -> &[VertexId] {
        &self.children[k][v]
    }

    /// Inner vertices of `W_k` ordered from the root towards the leaves.
    pub fn top_down(&self, k: usize) -> &[VertexId] {
        &self.order[k]
    }

    /// `P_k(v)` as a vertex list from `v` to `v_k`.
    pub fn path(&self, v: VertexId, k: usize) -> Vec<VertexId> {
        let mut p = vec![v];
        let mut u = v;
        while !self.is_outer(u) {
            u = self.targets[u][k];
            p.push(u);
        }
        p
    }

    /// Darts of `P_k(v)`.
    pub fn path_darts(&self, v: VertexId, k: usize) -> Vec<Dart> {
        let mut p = Vec::new();
        let mut u = v;
        while !self.is_outer(u) {
            p.push(self.parent_dart[u][k]);
            u = self.targets[u][k];
        }
        p
    }

    /// The five paths `P_0(v)..P_4(v)`.
    pub fn paths(&self, v: VertexId) -> [Vec<VertexId>; 5] {
        std::array::from_fn(|k| self.path(v, k))
    }

    /// Boundary of `R_i(v)`: `P_{i+2}(v)`, the outer edge, then `P_{i-2}(v)` backwards.
    pub fn region_boundary(&self, t: &FiveTriangulation, v: VertexId, i: usize) -> Vec<Dart> {
        let g = t.map();
        let mut cycle = self.path_darts(v, plus2(i));
        let o = t.outer();
        cycle.push(t.dart_between(o[plus2(i)], o[minus2(i)]).expect("outer edge"));
        cycle.extend(self.path_darts(v, minus2(i)).iter().rev().map(|&d| g.twin(d)));
        cycle
    }
}

/// A simple directed cycle found in a biorientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Biorientation {
    /// `W_i ∪ W_{i-1} ∪ W_{i+1} ∪ W_{i-2}^- ∪ W_{i+2}^-`.
    Mixed(u8),
    /// `W_j ∪ W_k^-`.
    Pair(u8, u8),
}

impl fmt::Display for Biorientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Biorientation::Mixed(i) => write!(f, "O{}", i + 1),
            Biorientation::Pair(j, k) => write!(f, "W{} + W{}^-", j + 1, k + 1),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct AcyclicityReport {
    pub checked: usize,
    pub cycles: Vec<(Biorientation, Vec<Dart>)>,
}

impl AcyclicityReport {
    pub fn ok(&self) -> bool {
        self.cycles.is_empty()
    }
}

/// Darts of the biorientation where color `k` is taken forward when
/// `forward[k]` and reversed when `backward[k]`.
fn biorientation_arcs(t: &FiveTriangulation, w: &WoodColoring, forward: [bool; 5], backward: [bool; 5]) -> Vec<Dart> {
    let g = t.map();
    let mut arcs = Vec::new();
    for d in 0..g.n_darts() {
        let Some(k) = w.color[d] else { continue };
        if forward[k as usize] {
            arcs.push(d);
        }
        if backward[k as usize] {
            arcs.push(g.twin(d));
        }
    }
    arcs.sort_unstable();
    arcs.dedup();
    arcs
}

/// A directed cycle of length at least 3 in the digraph formed by `arcs`, where
/// a pair of opposite arcs alone does not count as a cycle.
pub fn find_long_cycle(t: &FiveTriangulation, arcs: &[Dart]) -> Option<Vec<Dart>> {
    let g = t.map();
    let mut graph = DiGraph::<(), Dart>::new();
    let nodes: Vec<_> = (0..g.n_vertices()).map(|_| graph.add_node(())).collect();
    let present: HashSet<Dart> = arcs.iter().copied().collect();
    for &d in arcs {
        graph.add_edge(nodes[g.origin(d)], nodes[g.target(d)], d);
    }
    let mut comp = vec![usize::MAX; g.n_vertices()];
    let sccs = tarjan_scc(&graph);
    for (c, scc) in sccs.iter().enumerate() {
        for x in scc {
            comp[x.index()] = c;
        }
    }
    let inside = |d: Dart| comp[g.origin(d)] == comp[g.target(d)];
    if let Some(&d) = arcs.iter().find(|&&d| inside(d) && !present.contains(&g.twin(d))) {
        let mut path = directed_path(t, arcs, &comp, g.target(d), g.origin(d));
        path.insert(0, d);
        return Some(path);
    }
    let mut per_comp: HashMap<usize, (HashSet<VertexId>, Vec<Dart>)> = HashMap::new();
    for &d in arcs.iter().filter(|&&d| inside(d) && d % 2 == 0) {
        let e = per_comp.entry(comp[g.origin(d)]).or_default();
        e.0.insert(g.origin(d));
        e.0.insert(g.target(d));
        e.1.push(d);
    }
    let mut comps: Vec<_> = per_comp.into_values().collect();
    comps.sort_by_key(|c| c.1[0]);
    comps
        .into_iter()
        .find(|(vs, es)| es.len() >= vs.len())
        .map(|(_, es)| undirected_cycle(t, &es))
}

fn directed_path(t: &FiveTriangulation, arcs: &[Dart], comp: &[usize], from: VertexId, to: VertexId) -> Vec<Dart> {
    let g = t.map();
    let mut out: HashMap<VertexId, Vec<Dart>> = HashMap::new();
    for &d in arcs {
        out.entry(g.origin(d)).or_default().push(d);
    }
    let mut via: HashMap<VertexId, Dart> = HashMap::new();
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            break;
        }
        for &d in out.get(&u).into_iter().flatten() {
            let v = g.target(d);
            if comp[v] == comp[from] && v != from && !via.contains_key(&v) {
                via.insert(v, d);
                queue.push_back(v);
            }
        }
    }
    let mut path = Vec::new();
    let mut v = to;
    while v != from {
        let d = via[&v];
        path.push(d);
        v = g.origin(d);
    }
    path.reverse();
    path
}

fn undirected_cycle(t: &FiveTriangulation, edges: &[Dart]) -> Vec<Dart> {
    let g = t.map();
    let mut forest: HashMap<VertexId, Vec<Dart>> = HashMap::new();
    for &d in edges {
        let (a, b) = (g.origin(d), g.target(d));
        let mut via: HashMap<VertexId, Dart> = HashMap::new();
        let mut queue = VecDeque::from([b]);
        let mut seen = HashSet::from([b]);
        while let Some(u) = queue.pop_front() {
            if u == a {
                let mut cycle = vec![d];
                let mut x = a;
                while x != b {
                    let e = via[&x];
                    cycle.push(g.twin(e));
                    x = g.origin(e);
                }
                return cycle;
            }
            for &e in forest.get(&u).into_iter().flatten() {
                if seen.insert(g.target(e)) {
                    via.insert(g.target(e), e);
                    queue.push_back(g.target(e));
                }
            }
        }
        forest.entry(a).or_default().push(d);
        forest.entry(b).or_default().push(g.twin(d));
    }
    unreachable!("component with as many edges as vertices has a cycle")
}

/// Certifies the five mixed biorientations `O_i` and the 25 pairs `W_j ∪ W_k^-`.
pub fn check_acyclic_biorientations(t: &FiveTriangulation, w: &WoodColoring) -> AcyclicityReport {
    let mut report = AcyclicityReport::default();
    for i in 0..5 {
        let mut fwd = [false; 5];
        let mut bwd = [false; 5];
        fwd[i] = true;
        fwd[(i + 1) % 5] = true;
        fwd[(i + 4) % 5] = true;
        bwd[plus2(i)] = true;
        bwd[minus2(i)] = true;
        report.checked += 1;
        if let Some(c) = find_long_cycle(t, &biorientation_arcs(t, w, fwd, bwd)) {
            report.cycles.push((Biorientation::Mixed(i as u8), c));
        }
    }
    for j in 0..5 {
        for k in 0..5 {
            let mut fwd = [false; 5];
            let mut bwd = [false; 5];
            fwd[j] = true;
            bwd[k] = true;
            report.checked += 1;
            if let Some(c) = find_long_cycle(t, &biorientation_arcs(t, w, fwd, bwd)) {
                report.cycles.push((Biorientation::Pair(j as u8, k as u8), c));
            }
        }
    }
    report
}

/// Region sizes and the intermediate sweep tables, indexed by vertex then color.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionTable {
    pub n: usize,
    /// `|R_i(v)|`, counted in inner faces.
    pub size: Vec<[usize; 5]>,
    /// `length(P_i(v))` in edges (0 for outer vertices).
    pub path_len: Vec<[usize; 5]>,
    /// Vertices strictly inside `R_i(v)`.
    pub inside: Vec<[usize; 5]>,
    pub descendants: Vec<[usize; 5]>,
    pub desc_minus2: Vec<[usize; 5]>,
    pub desc_plus2: Vec<[usize; 5]>,
    pub left: Vec<[usize; 5]>,
    pub right: Vec<[usize; 5]>,
}

impl RegionTable {
    fn empty(n: usize) -> Self {
        let z = vec![[0usize; 5]; n];
        RegionTable {
            n,
            size: z.clone(),
            path_len: z.clone(),
            inside: z.clone(),
            descendants: z.clone(),
            desc_minus2: z.clone(),
            desc_plus2: z.clone(),
            left: z.clone(),
            right: z,
        }
    }

    fn set_outer(&mut self, t: &FiveTriangulation) {
        for (i, &v) in t.outer().iter().enumerate() {
            self.size[v] = [0; 5];
            self.size[v][i] = 2 * self.n - 7;
        }
    }

    /// Vertices of `R_i(v) \ P_{i-2}(v)`.
    pub fn vertex_count(&self, v: VertexId, i: usize) -> usize {
        self.inside[v][i] + self.path_len[v][plus2(i)]
    }
}

/// Region sizes by the leaf-to-root and root-to-leaf sweeps; linear per color.
pub fn region_sizes_linear(t: &FiveTriangulation, tr: &WoodTrees) -> RegionTable {
    let n = tr.n;
    let g = t.map();
    let none = u32::MAX;
    let inner: Vec<VertexId> = t.inner_vertices().collect();
    let parent: [Vec<u32>; 5] = std::array::from_fn(|k| {
        let mut p = vec![none; n];
        for &v in &inner {
            if !tr.is_outer(tr.parent(v, k)) {
                p[v] = tr.parent(v, k) as u32;
            }
        }
        p
    });
    let path_len: [Vec<u32>; 5] = std::array::from_fn(|k| {
        let mut len = vec![0u32; n];
        for &v in tr.top_down(k) {
            let p = parent[k][v];
            len[v] = if p == none { 1 } else { len[p as usize] + 1 };
        }
        len
    });
    let mut cols: [[Vec<u32>; 5]; 5] = Default::default();
    for i in 0..5 {
        let mut desc = vec![0u32; n];
        for &v in tr.top_down(i).iter().rev() {
            let p = parent[i][v];
            if p != none {
                desc[p as usize] += desc[v] + 1;
            }
        }
        let (mut dm, mut dp) = (vec![0u32; n], vec![0u32; n]);
        for &w in &inner {
            let p = parent[i][w];
            if p == none {
                continue;
            }
            match tr.colors[g.twin(tr.parent_dart(w, i))] {
                Some(j) if j as usize == minus2(i) => dm[p as usize] = desc[w] + 1,
                Some(j) if j as usize == plus2(i) => dp[p as usize] = desc[w] + 1,
                _ => {}
            }
        }
        let mut side = [vec![0u32; n], vec![0u32; n]];
        for (s, j, skip) in [(0, minus2(i), &dm), (1, plus2(i), &dp)] {
            for &v in tr.top_down(j) {
                let p = parent[j][v];
                side[s][v] = if p == none {
                    0
                } else {
                    let p = p as usize;
                    side[s][p] + desc[p] - skip[p]
                };
            }
        }
        let [left, right] = side;
        cols[i] = [desc, dm, dp, left, right];
    }
    let mut rt = RegionTable::empty(n);
    for &v in &inner {
        rt.path_len[v] = std::array::from_fn(|k| path_len[k][v] as usize);
        for (i, [desc, dm, dp, left, right]) in cols.iter().enumerate() {
            let inside = (desc[v] - dm[v] - dp[v] + left[v] + right[v]) as usize;
            rt.descendants[v][i] = desc[v] as usize;
            rt.desc_minus2[v][i] = dm[v] as usize;
            rt.desc_plus2[v][i] = dp[v] as usize;
            rt.left[v][i] = left[v] as usize;
            rt.right[v][i] = right[v] as usize;
            rt.inside[v][i] = inside;
            rt.size[v][i] = 2 * inside + path_len[minus2(i)][v] as usize + path_len[plus2(i)][v] as usize - 1;
        }
    }
    rt.set_outer(t);
    rt
}

/// Inner faces of `R_i(v)`, by flood fill from the outer face.
pub fn region_faces(t: &FiveTriangulation, tr: &WoodTrees, v: VertexId, i: usize) -> Vec<bool> {
    let mut inside = faces_inside(t.map(), &tr.region_boundary(t, v, i));
    inside[t.map().outer_face()] = false;
    inside
}

/// Vertices of the closed region `R_i(v)`.
pub fn region_vertices(t: &FiveTriangulation, tr: &WoodTrees, v: VertexId, i: usize) -> Vec<VertexId> {
    let g = t.map();
    if tr.is_outer(v) {
        let all = t.outer()[i] == v;
        return (0..g.n_vertices()).filter(|&u| all || u == v).collect();
    }
    let faces = region_faces(t, tr, v, i);
    let mut vs: Vec<VertexId> =
        (0..g.n_vertices()).filter(|&u| g.darts_around(u).any(|d| faces[g.face_of(d)])).collect();
    vs.sort_unstable();
    vs
}

/// Oracle: every region materialized as a cycle and flood-filled.
pub fn region_sizes_naive(t: &FiveTriangulation, tr: &WoodTrees) -> RegionTable {
    let g = t.map();
    let mut rt = RegionTable::empty(tr.n);
    for v in t.inner_vertices() {
        for k in 0..5 {
            rt.path_len[v][k] = tr.path(v, k).len() - 1;
        }
    }
    for v in t.inner_vertices() {
        for i in 0..5 {
            let boundary = tr.region_boundary(t, v, i);
            let faces = faces_inside(g, &boundary);
            rt.size[v][i] = t.inner_faces().filter(|&f| faces[f]).count();
            let on_cycle: HashSet<VertexId> = boundary.iter().map(|&d| g.origin(d)).collect();
            rt.inside[v][i] = (0..g.n_vertices())
                .filter(|u| !on_cycle.contains(u))
                .filter(|&u| g.darts_around(u).all(|d| faces[g.face_of(d)]))
                .count();
        }
    }
    rt.set_outer(t);
    rt
}

/// How the barycentric weights are derived from the regions.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightMode {
    /// Inner faces of `R_i(v)` over `2n - 7`.
    Faces,
    /// Vertices of `R_i(v) \ P_{i-2}(v)` over `n - 1`.
    Vertices,
    /// Total weight of the inner faces of `R_i(v)`, one weight per face id.
    Weighted(Vec<BigRational>),
}

impl WeightMode {
    pub fn name(&self) -> &'static str {
        match self {
            WeightMode::Faces => "faces",
            WeightMode::Vertices => "vertices",
            WeightMode::Weighted(_) => "weighted",
        }
    }
}

/// Per-vertex weights `alpha_i(v)` as integer numerators over a common denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weights {
    pub den: BigInt,
    pub num: Vec<[BigInt; 5]>,
}

impl Weights {
    pub fn alpha(&self, v: VertexId) -> [BigRational; 5] {
        std::array::from_fn(|i| BigRational::new(self.num[v][i].clone(), self.den.clone()))
    }
}

/// Barycentric weights of every vertex; outer vertex `v_i` gets the unit vector `e_i`.
pub fn weights(t: &FiveTriangulation, tr: &WoodTrees, rt: &RegionTable, mode: &WeightMode) -> Result<Weights, RegionError> {
    let n = rt.n;
    let mut num = vec![std::array::from_fn(|_| BigInt::zero()); n];
    let den = match mode {
        WeightMode::Faces => {
            for v in t.inner_vertices() {
                num[v] = std::array::from_fn(|i| BigInt::from(rt.size[v][i]));
            }
            BigInt::from(2 * n - 7)
        }
        WeightMode::Vertices => {
            for v in t.inner_vertices() {
                num[v] = std::array::from_fn(|i| BigInt::from(rt.vertex_count(v, i)));
            }
            BigInt::from(n - 1)
        }
        WeightMode::Weighted(w) => {
            let sums = weighted_region_sums(t, tr, w)?;
            let mut den = BigInt::one();
            for f in t.inner_faces() {
                den = num_integer::Integer::lcm(&den, w[f].denom());
            }
            let scale = |x: &BigRational| (x * BigRational::from_integer(den.clone())).to_integer();
            let total = scale(&t.inner_faces().map(|f| w[f].clone()).sum::<BigRational>());
            for v in t.inner_vertices() {
                num[v] = std::array::from_fn(|i| scale(&sums[v][i]));
            }
            total
        }
    };
    for (i, &v) in t.outer().iter().enumerate() {
        num[v][i] = den.clone();
    }
    Ok(Weights { den, num })
}

/// Weight of `R_i(v)` for every inner `v`, via a flux potential on the darts:
/// the weight enclosed by a simple cycle is the absolute sum of the flux along it,
/// so region weights follow from prefix sums along the tree paths.
pub fn weighted_region_sums(
    t: &FiveTriangulation,
    tr: &WoodTrees,
    w: &[BigRational],
) -> Result<Vec<[BigRational; 5]>, RegionError> {
    let g = t.map();
    if w.len() != g.n_faces() {
        return Err(RegionError::WeightCount { expected: g.n_faces(), found: w.len() });
    }
    if let Some(f) = t.inner_faces().find(|&f| !w[f].is_positive()) {
        return Err(RegionError::NonPositiveWeight { face: f });
    }
    let outer = g.outer_face();
    let mut via = vec![usize::MAX; g.n_faces()];
    let mut order = vec![outer];
    let mut seen = vec![false; g.n_faces()];
    seen[outer] = true;
    let mut head = 0;
    while head < order.len() {
        let f = order[head];
        head += 1;
        for &d in g.face_darts(f) {
            let h = g.face_of(g.twin(d));
            if !seen[h] {
                seen[h] = true;
                via[h] = g.twin(d);
                order.push(h);
            }
        }
    }
    let mut subtree: Vec<BigRational> =
        (0..g.n_faces()).map(|f| if f == outer { BigRational::zero() } else { w[f].clone() }).collect();
    let mut flux = vec![BigRational::zero(); g.n_darts()];
    for &f in order.iter().skip(1).rev() {
        let d = via[f];
        let parent = g.face_of(g.twin(d));
        let s = subtree[f].clone();
        subtree[parent] += &s;
        flux[g.twin(d)] = -s.clone();
        flux[d] = s;
    }
    let mut prefix = vec![std::array::from_fn::<BigRational, 5, _>(|_| BigRational::zero()); g.n_vertices()];
    for k in 0..5 {
        for &v in tr.top_down(k) {
            let d = tr.parent_dart(v, k);
            let p = tr.parent(v, k);
            prefix[v][k] = if tr.is_outer(p) { flux[d].clone() } else { &prefix[p][k] + &flux[d] };
        }
    }
    let o = t.outer();
    let mut sums = vec![std::array::from_fn(|_| BigRational::zero()); g.n_vertices()];
    for v in t.inner_vertices() {
        for i in 0..5 {
            let edge = t.dart_between(o[plus2(i)], o[minus2(i)]).expect("outer edge");
            let s = &prefix[v][plus2(i)] + &flux[edge] - &prefix[v][minus2(i)];
            sums[v][i] = s.abs();
        }
    }
    Ok(sums)
}
