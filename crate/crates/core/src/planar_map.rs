//! Permutation-encoded embedded planar multigraphs.
//!
//! A map is stored as a set of darts (directed half-edges). Every edge owns two
//! darts `2e` and `2e + 1`, exchanged by `twin`. `sigma(d)` is the next dart in
//! **clockwise** order around the origin of `d`. Faces are the orbits of
//! `phi(d) = sigma(twin(d))`; with this convention the face of a dart lies on its
//! left, inner faces are walked counterclockwise and the outer face clockwise.
//!
//! The corner `d` is the angular sector at `origin(d)` between `d` and
//! `sigma(d)`. It lies in the face of `twin(d)` (equivalently of `sigma(d)`).

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub type Dart = usize;
pub type VertexId = usize;
pub type FaceId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("inconsistent rotation system: {0}")]
    InconsistentRotation(String),
    #[error("outer face {0:?} not found in the embedding")]
    OuterFaceNotFound(Vec<VertexId>),
    #[error("map is disconnected")]
    Disconnected,
    #[error("embedding is not planar: V - E + F = {v} - {e} + {f} != 2")]
    NonPlanar { v: usize, e: usize, f: usize },
}

/// One violated structural invariant, as reported by [`PlanarMap::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapViolation {
    TwinFixedPoint(Dart),
    TwinNotInvolution(Dart),
    TwinNotPermutation,
    SigmaNotPermutation,
    OriginNotConstantOnVertex(Dart),
    Disconnected,
    Euler { v: usize, e: usize, f: usize },
}

impl fmt::Display for MapViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapViolation::TwinFixedPoint(d) => write!(f, "twin not fixed-point-free (dart {d})"),
            MapViolation::TwinNotInvolution(d) => write!(f, "twin not an involution at dart {d}"),
            MapViolation::TwinNotPermutation => write!(f, "twin is not a permutation"),
            MapViolation::SigmaNotPermutation => write!(f, "sigma is not a permutation"),
            MapViolation::OriginNotConstantOnVertex(d) => {
                write!(f, "origin differs along the sigma orbit of dart {d}")
            }
            MapViolation::Disconnected => write!(f, "map is disconnected"),
            MapViolation::Euler { v, e, f: faces } => {
                write!(f, "Euler relation fails: {v} - {e} + {faces} != 2")
            }
        }
    }
}

/// A face orbit, listed in `phi` order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Dart>,
    pub outer: bool,
}

#[derive(Debug, Clone)]
pub struct PlanarMap {
    twin: Vec<Dart>,
    sigma: Vec<Dart>,
    sigma_inv: Vec<Dart>,
    origin: Vec<VertexId>,
    n_vertices: usize,
    vertex_dart: Vec<Dart>,
    face_of: Vec<FaceId>,
    face_offsets: Vec<usize>,
    face_darts: Vec<Dart>,
    outer_face: FaceId,
}

impl PlanarMap {
    /// Builds a map from clockwise dart rotations. Dart `d` and `d ^ 1` form an
    /// edge; `rotations[v]` lists the darts leaving `v` in clockwise order.
    pub fn from_dart_rotations(rotations: &[Vec<Dart>], outer_dart: Dart) -> Result<Self, MapError> {
        let n_darts: usize = rotations.iter().map(Vec::len).sum();
        if n_darts % 2 != 0 {
            return Err(MapError::InconsistentRotation("odd number of darts".into()));
        }
        let mut origin = vec![usize::MAX; n_darts];
        let mut sigma = vec![usize::MAX; n_darts];
        let mut vertex_dart = vec![usize::MAX; rotations.len()];
        for (v, rot) in rotations.iter().enumerate() {
            if rot.is_empty() {
                return Err(MapError::Disconnected);
            }
            vertex_dart[v] = rot[0];
            for (k, &d) in rot.iter().enumerate() {
                if d >= n_darts || origin[d] != usize::MAX {
                    return Err(MapError::InconsistentRotation(format!(
                        "dart {d} listed twice or out of range"
                    )));
                }
                origin[d] = v;
                sigma[d] = rot[(k + 1) % rot.len()];
            }
        }
        if outer_dart >= n_darts {
            return Err(MapError::InconsistentRotation(format!(
                "outer dart {outer_dart} out of range"
            )));
        }
        let twin = (0..n_darts).map(|d| d ^ 1).collect();
        let map = Self::assemble(twin, sigma, origin, rotations.len(), vertex_dart, outer_dart);
        if !map.is_connected() {
            return Err(MapError::Disconnected);
        }
        let (v, e, f) = (map.n_vertices(), map.n_edges(), map.n_faces());
        if v + f != e + 2 {
            return Err(MapError::NonPlanar { v, e, f });
        }
        Ok(map)
    }

    /// Builds a map from per-vertex clockwise neighbour lists.
    ///
    /// Parallel edges are paired so that the `k`-th occurrence of `v` around `u`
    /// matches the `k`-th from last occurrence of `u` around `v`, which is the
    /// mirror pairing of a planar bundle. The outer face is the face walked
    /// `outer[0], outer[1], ...`; an empty `outer` leaves an arbitrary face as
    /// outer face (useful for triangulations of the sphere).
    pub fn from_rotation_system(rot: &[Vec<VertexId>], outer: &[VertexId]) -> Result<Self, MapError> {
        let n = rot.len();
        let mut occurrences: HashMap<(VertexId, VertexId), Vec<(VertexId, usize)>> = HashMap::new();
        for (u, list) in rot.iter().enumerate() {
            for (k, &v) in list.iter().enumerate() {
                if v >= n {
                    return Err(MapError::InconsistentRotation(format!(
                        "vertex {u} lists unknown neighbour {v}"
                    )));
                }
                occurrences.entry((u.min(v), u.max(v))).or_default().push((u, k));
            }
        }
        let mut dart_at: Vec<Vec<Dart>> = rot.iter().map(|l| vec![usize::MAX; l.len()]).collect();
        let mut keys: Vec<_> = occurrences.keys().copied().collect();
        keys.sort_unstable();
        let mut next_edge = 0;
        for key in keys {
            let occ = &occurrences[&key];
            let (a, b) = key;
            let (from_a, from_b): (Vec<_>, Vec<_>) = if a == b {
                if occ.len() % 2 != 0 {
                    return Err(MapError::InconsistentRotation(format!(
                        "loop at {a} listed an odd number of times"
                    )));
                }
                let half = occ.len() / 2;
                (occ[..half].to_vec(), occ[half..].iter().rev().copied().collect())
            } else {
                let from_a: Vec<_> = occ.iter().filter(|o| o.0 == a).copied().collect();
                let mut from_b: Vec<_> = occ.iter().filter(|o| o.0 == b).copied().collect();
                if from_a.len() != from_b.len() {
                    return Err(MapError::InconsistentRotation(format!(
                        "{a} lists {b} {} times but {b} lists {a} {} times",
                        from_a.len(),
                        from_b.len()
                    )));
                }
                from_b.reverse();
                (from_a, from_b)
            };
            for (pa, pb) in from_a.into_iter().zip(from_b) {
                dart_at[pa.0][pa.1] = 2 * next_edge;
                dart_at[pb.0][pb.1] = 2 * next_edge + 1;
                next_edge += 1;
            }
        }
        // Provisional outer dart; replaced once faces are known.
        let provisional = dart_at.iter().flatten().copied().next().unwrap_or(0);
        let map = Self::from_dart_rotations(&dart_at, provisional)?;
        if outer.is_empty() {
            return Ok(map);
        }
        let outer_dart = map
            .find_face_dart(outer)
            .ok_or_else(|| MapError::OuterFaceNotFound(outer.to_vec()))?;
        Ok(map.with_outer_dart(outer_dart))
    }

    /// Stores the given permutations without checking them; use
    /// [`PlanarMap::validate`] to inspect the result.
    pub fn from_raw_parts(twin: Vec<Dart>, sigma: Vec<Dart>, origin: Vec<VertexId>, outer_dart: Dart) -> Self {
        let n_vertices = origin.iter().copied().max().map_or(0, |m| m + 1);
        let mut vertex_dart = vec![usize::MAX; n_vertices];
        for (d, &v) in origin.iter().enumerate() {
            if vertex_dart[v] == usize::MAX {
                vertex_dart[v] = d;
            }
        }
        Self::assemble(twin, sigma, origin, n_vertices, vertex_dart, outer_dart)
    }

    fn assemble(
        twin: Vec<Dart>,
        sigma: Vec<Dart>,
        origin: Vec<VertexId>,
        n_vertices: usize,
        vertex_dart: Vec<Dart>,
        outer_dart: Dart,
    ) -> Self {
        let n = sigma.len();
        let mut sigma_inv = vec![usize::MAX; n];
        for (d, &s) in sigma.iter().enumerate() {
            if s < n {
                sigma_inv[s] = d;
            }
        }
        let mut map = PlanarMap {
            twin,
            sigma,
            sigma_inv,
            origin,
            n_vertices,
            vertex_dart,
            face_of: Vec::new(),
            face_offsets: vec![0],
            face_darts: Vec::new(),
            outer_face: 0,
        };
        if is_permutation(&map.sigma) && is_permutation(&map.twin) {
            map.compute_faces();
            if outer_dart < n {
                map.outer_face = map.face_of[outer_dart];
            }
        }
        map
    }

    fn compute_faces(&mut self) {
        let n = self.sigma.len();
        self.face_of = vec![usize::MAX; n];
        self.face_offsets = vec![0];
        self.face_darts = Vec::with_capacity(n);
        for start in 0..n {
            if self.face_of[start] != usize::MAX {
                continue;
            }
            let f = self.face_offsets.len() - 1;
            let mut d = start;
            loop {
                self.face_of[d] = f;
                self.face_darts.push(d);
                d = self.sigma[self.twin[d]];
                if d == start {
                    break;
                }
            }
            self.face_offsets.push(self.face_darts.len());
        }
    }

    /// Same map with the face of `d` as outer face.
    pub fn with_outer_dart(mut self, d: Dart) -> Self {
        self.outer_face = self.face_of[d];
        self
    }

    /// Returns a dart `d` from `cycle[0]` to `cycle[1]` whose face walk visits
    /// exactly the vertices of `cycle` in order.
    pub fn find_face_dart(&self, cycle: &[VertexId]) -> Option<Dart> {
        if cycle.len() < 2 || cycle.iter().any(|&v| v >= self.n_vertices) {
            return None;
        }
        self.darts_around(cycle[0])
            .filter(|&d| self.target(d) == cycle[1])
            .find(|&d| {
                let walk = self.face_darts(self.face_of[d]);
                if walk.len() != cycle.len() {
                    return false;
                }
                let pos = walk.iter().position(|&x| x == d).unwrap();
                (0..cycle.len()).all(|k| self.origin[walk[(pos + k) % walk.len()]] == cycle[k])
            })
    }

    /// Checks every structural invariant and lists the violations.
    pub fn validate(&self) -> Vec<MapViolation> {
        let mut report = Vec::new();
        let n = self.twin.len();
        if !is_permutation(&self.twin) {
            report.push(MapViolation::TwinNotPermutation);
        }
        for d in 0..n {
            let t = self.twin[d];
            if t == d {
                report.push(MapViolation::TwinFixedPoint(d));
            } else if t < n && self.twin[t] != d {
                report.push(MapViolation::TwinNotInvolution(d));
            }
        }
        let sigma_ok = is_permutation(&self.sigma) && self.sigma.len() == n;
        if !sigma_ok {
            report.push(MapViolation::SigmaNotPermutation);
        } else {
            for d in 0..n {
                if self.origin[self.sigma[d]] != self.origin[d] {
                    report.push(MapViolation::OriginNotConstantOnVertex(d));
                }
            }
        }
        if !report.is_empty() {
            return report;
        }
        if !self.is_connected() {
            report.push(MapViolation::Disconnected);
        }
        let (v, e, f) = (self.n_vertices(), self.n_edges(), self.n_faces());
        if v + f != e + 2 {
            report.push(MapViolation::Euler { v, e, f });
        }
        report
    }

    fn is_connected(&self) -> bool {
        if self.n_vertices == 0 {
            return true;
        }
        let mut seen = vec![false; self.n_vertices];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for d in self.darts_around(v) {
                let w = self.target(d);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n_vertices
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_darts(&self) -> usize {
        self.sigma.len()
    }

    pub fn n_edges(&self) -> usize {
        self.sigma.len() / 2
    }

    pub fn n_faces(&self) -> usize {
        self.face_offsets.len() - 1
    }

    #[inline]
    pub fn twin(&self, d: Dart) -> Dart {
        self.twin[d]
    }

    #[inline]
    pub fn sigma(&self, d: Dart) -> Dart {
        self.sigma[d]
    }

    #[inline]
    pub fn sigma_inv(&self, d: Dart) -> Dart {
        self.sigma_inv[d]
    }

    /// Next dart along the face on the left of `d`.
    #[inline]
    pub fn phi(&self, d: Dart) -> Dart {
        self.sigma[self.twin[d]]
    }

    /// Previous dart along the face on the left of `d`.
    #[inline]
    pub fn phi_inv(&self, d: Dart) -> Dart {
        self.twin[self.sigma_inv[d]]
    }

    #[inline]
    pub fn origin(&self, d: Dart) -> VertexId {
        self.origin[d]
    }

    #[inline]
    pub fn target(&self, d: Dart) -> VertexId {
        self.origin[self.twin[d]]
    }

    #[inline]
    pub fn edge_of(&self, d: Dart) -> usize {
        d / 2
    }

    #[inline]
    pub fn face_of(&self, d: Dart) -> FaceId {
        self.face_of[d]
    }

    /// Face containing the corner `c`.
    #[inline]
    pub fn corner_face(&self, c: Dart) -> FaceId {
        self.face_of[self.sigma[c]]
    }

    pub fn face_darts(&self, f: FaceId) -> &[Dart] {
        &self.face_darts[self.face_offsets[f]..self.face_offsets[f + 1]]
    }

    pub fn face_degree(&self, f: FaceId) -> usize {
        self.face_offsets[f + 1] - self.face_offsets[f]
    }

    pub fn outer_face(&self) -> FaceId {
        self.outer_face
    }

    pub fn vertex_dart(&self, v: VertexId) -> Dart {
        self.vertex_dart[v]
    }

    /// Darts leaving `v`, clockwise, starting at [`PlanarMap::vertex_dart`].
    pub fn darts_around(&self, v: VertexId) -> DartsAround<'_> {
        let start = self.vertex_dart[v];
        DartsAround { map: self, start, next: Some(start) }
    }

    /// Darts leaving `origin(d)`, clockwise, starting at `d`.
    pub fn darts_from(&self, d: Dart) -> DartsAround<'_> {
        DartsAround { map: self, start: d, next: Some(d) }
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.darts_around(v).count()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.darts_around(v).map(move |d| self.target(d))
    }

    /// All face orbits with the outer face flagged.
    pub fn faces(&self) -> Vec<Face> {
        (0..self.n_faces())
            .map(|f| Face { darts: self.face_darts(f).to_vec(), outer: f == self.outer_face })
            .collect()
    }

    /// Vertices along a face walk.
    pub fn face_vertices(&self, f: FaceId) -> Vec<VertexId> {
        self.face_darts(f).iter().map(|&d| self.origin[d]).collect()
    }

    /// Clockwise dart lists, one per vertex, suitable for
    /// [`PlanarMap::from_dart_rotations`].
    pub fn dart_rotations(&self) -> Vec<Vec<Dart>> {
        (0..self.n_vertices).map(|v| self.darts_around(v).collect()).collect()
    }

    /// A dart of the outer face.
    pub fn outer_dart(&self) -> Dart {
        self.face_darts(self.outer_face)[0]
    }

    /// Clockwise neighbour lists, one per vertex.
    pub fn rotation_system(&self) -> Vec<Vec<VertexId>> {
        (0..self.n_vertices).map(|v| self.neighbors(v).collect()).collect()
    }
}

pub struct DartsAround<'a> {
    map: &'a PlanarMap,
    start: Dart,
    next: Option<Dart>,
}

impl Iterator for DartsAround<'_> {
    type Item = Dart;

    fn next(&mut self) -> Option<Dart> {
        let d = self.next?;
        let s = self.map.sigma[d];
        self.next = if s == self.start { None } else { Some(s) };
        Some(d)
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pentagon() -> PlanarMap {
        let rot: Vec<Vec<usize>> = (0..5).map(|i| vec![(i + 4) % 5, (i + 1) % 5]).collect();
        PlanarMap::from_rotation_system(&rot, &[0, 1, 2, 3, 4]).unwrap()
    }

    fn wheel() -> PlanarMap {
        // hub 5; rim vertex i sees (hub, i-1, i+1) in clockwise order.
        let mut rot: Vec<Vec<usize>> = (0..5).map(|i| vec![5, (i + 4) % 5, (i + 1) % 5]).collect();
        rot.push(vec![0, 1, 2, 3, 4]);
        PlanarMap::from_rotation_system(&rot, &[0, 1, 2, 3, 4]).unwrap()
    }

    #[test]
    fn pentagon_counts() {
        let m = pentagon();
        assert_eq!((m.n_vertices(), m.n_edges(), m.n_faces()), (5, 5, 2));
        assert!(m.faces().iter().all(|f| f.darts.len() == 5));
        assert!(m.validate().is_empty());
    }

    #[test]
    fn wheel_counts_and_outer_walk() {
        let m = wheel();
        assert_eq!((m.n_vertices(), m.n_edges(), m.n_faces()), (6, 10, 6));
        let faces = m.faces();
        assert_eq!(faces.iter().filter(|f| f.outer).count(), 1);
        assert_eq!(faces.iter().filter(|f| f.darts.len() == 3).count(), 5);
        let mut walk = m.face_vertices(m.outer_face());
        let k = walk.iter().position(|&v| v == 0).unwrap();
        walk.rotate_left(k);
        assert_eq!(walk, vec![0, 1, 2, 3, 4]);
        assert!(m.validate().is_empty());
    }

    #[test]
    fn inconsistent_multiplicity_is_rejected() {
        let mut rot: Vec<Vec<usize>> = (0..5).map(|i| vec![(i + 4) % 5, (i + 1) % 5]).collect();
        rot[0].push(1);
        let err = PlanarMap::from_rotation_system(&rot, &[0, 1, 2, 3, 4]).unwrap_err();
        assert!(matches!(err, MapError::InconsistentRotation(_)));
    }

    #[test]
    fn missing_outer_face() {
        let rot: Vec<Vec<usize>> = (0..5).map(|i| vec![(i + 4) % 5, (i + 1) % 5]).collect();
        let err = PlanarMap::from_rotation_system(&rot, &[0, 2, 1, 3, 4]).unwrap_err();
        assert!(matches!(err, MapError::OuterFaceNotFound(_)));
    }

    #[test]
    fn disconnected_rotation() {
        // two disjoint triangles
        let rot = vec![vec![1, 2], vec![2, 0], vec![0, 1], vec![4, 5], vec![5, 3], vec![3, 4]];
        let err = PlanarMap::from_rotation_system(&rot, &[0, 1, 2]).unwrap_err();
        assert_eq!(err, MapError::Disconnected);
    }

    #[test]
    fn twin_fixed_point_reported() {
        let m = wheel();
        let mut twin: Vec<usize> = (0..m.n_darts()).map(|d| m.twin(d)).collect();
        twin[0] = 0;
        twin[1] = 1;
        let sigma = (0..m.n_darts()).map(|d| m.sigma(d)).collect();
        let origin = (0..m.n_darts()).map(|d| m.origin(d)).collect();
        let raw = PlanarMap::from_raw_parts(twin, sigma, origin, 0);
        let report = raw.validate();
        assert!(report.contains(&MapViolation::TwinFixedPoint(0)));
        assert_eq!(report[0].to_string(), "twin not fixed-point-free (dart 0)");
    }

    #[test]
    fn k5_is_never_planar() {
        // Every rotation of K5 yields too few faces; try a few orders.
        let orders = [[1, 2, 3, 4], [1, 3, 2, 4], [4, 3, 2, 1], [2, 4, 1, 3]];
        for ord in orders {
            let rot: Vec<Vec<usize>> =
                (0..5).map(|u| ord.iter().map(|&k| (u + k) % 5).collect()).collect();
            let err = PlanarMap::from_rotation_system(&rot, &[0, 1, 2]);
            match err {
                Err(MapError::NonPlanar { v, e, f }) => {
                    assert_eq!((v, e), (5, 10));
                    assert!(f <= 5);
                }
                Err(MapError::OuterFaceNotFound(_)) => unreachable!("Euler check comes first"),
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn rotation_system_round_trip() {
        let m = wheel();
        let rebuilt = m.rotation_system();
        let mut rot: Vec<Vec<usize>> = (0..5).map(|i| vec![5, (i + 4) % 5, (i + 1) % 5]).collect();
        rot.push(vec![0, 1, 2, 3, 4]);
        for (a, b) in rot.iter().zip(&rebuilt) {
            let k = b.iter().position(|&x| x == a[0]).unwrap();
            let mut b = b.clone();
            b.rotate_left(k);
            assert_eq!(a, &b);
        }
    }

    #[test]
    fn corners_lie_in_face_of_twin() {
        let m = wheel();
        for c in 0..m.n_darts() {
            assert_eq!(m.corner_face(c), m.face_of(m.twin(c)));
            assert_eq!(m.phi_inv(m.phi(c)), c);
        }
    }
}
