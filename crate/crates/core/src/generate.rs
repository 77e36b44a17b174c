//! Random and exhaustive sources of 5c-triangulations, and isomorphism tests.

use std::collections::{HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::fixtures;
use crate::planar_map::{Dart, PlanarMap, VertexId};
use crate::triangulation::FiveTriangulation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("generation failed: {0}")]
    GenerationFailed(String),
}

/// Rooted map code: vertices are numbered in breadth-first order starting at
/// the origin of `root`, each vertex listing its neighbours clockwise from the
/// dart it was discovered by. Two rooted maps are isomorphic iff codes match.
pub fn canonical_code(map: &PlanarMap, root: Dart) -> Vec<u32> {
    let n = map.n_vertices();
    let mut number = vec![u32::MAX; n];
    let mut entry = vec![0; n];
    let mut queue = VecDeque::new();
    number[map.origin(root)] = 0;
    entry[map.origin(root)] = root;
    queue.push_back(map.origin(root));
    let mut next = 1;
    let mut code = Vec::with_capacity(map.n_darts() + n);
    while let Some(v) = queue.pop_front() {
        for d in map.darts_from(entry[v]) {
            let w = map.target(d);
            if number[w] == u32::MAX {
                number[w] = next;
                next += 1;
                entry[w] = map.twin(d);
                queue.push_back(w);
            }
            code.push(number[w]);
        }
        code.push(u32::MAX);
    }
    code
}

/// Code of a 5-triangulation rooted at `v1 -> v2`.
pub fn labeled_code(t: &FiveTriangulation) -> Vec<u32> {
    canonical_code(t.map(), t.outer_dart(0))
}

/// Isomorphism preserving the outer labels.
pub fn isomorphic_labeled(a: &FiveTriangulation, b: &FiveTriangulation) -> bool {
    a.n() == b.n() && labeled_code(a) == labeled_code(b)
}

/// Isomorphism of 5-triangulations up to a rotation of the outer labels.
pub fn isomorphic(a: &FiveTriangulation, b: &FiveTriangulation) -> bool {
    if a.n() != b.n() || a.map().n_edges() != b.map().n_edges() {
        return false;
    }
    let ca = labeled_code(a);
    (0..5).any(|k| canonical_code(b.map(), b.outer_dart(k)) == ca)
}

/// Rotation of a map automorphism sending `v_i` to `v_{i+1}`, as a vertex
/// permutation, if one exists.
pub fn rotation_automorphism(t: &FiveTriangulation) -> Option<Vec<VertexId>> {
    let map = t.map();
    let from = t.outer_dart(0);
    let to = t.outer_dart(1);
    if canonical_code(map, from) != canonical_code(map, to) {
        return None;
    }
    let mut image = vec![usize::MAX; map.n_darts()];
    let mut stack = vec![(from, to)];
    image[from] = to;
    while let Some((d, e)) = stack.pop() {
        for (dd, ee) in [(map.twin(d), map.twin(e)), (map.sigma(d), map.sigma(e))] {
            if image[dd] == usize::MAX {
                image[dd] = ee;
                stack.push((dd, ee));
            } else if image[dd] != ee {
                return None;
            }
        }
    }
    let mut perm = vec![usize::MAX; t.n()];
    for d in 0..map.n_darts() {
        perm[map.origin(d)] = map.origin(image[d]);
    }
    Some(perm)
}

/// Mutable triangulation of the pentagon `0..5` as clockwise neighbour lists.
#[derive(Debug, Clone)]
pub struct MutableTriangulation {
    rot: Vec<Vec<VertexId>>,
}

type Undo = Vec<(VertexId, Vec<VertexId>)>;

impl MutableTriangulation {
    pub fn from_triangulation(t: &FiveTriangulation) -> Self {
        assert_eq!(t.outer(), [0, 1, 2, 3, 4], "outer cycle must be 0..5");
        Self { rot: t.rotation_system() }
    }

    pub fn n(&self) -> usize {
        self.rot.len()
    }

    pub fn rotations(&self) -> &[Vec<VertexId>] {
        &self.rot
    }

    pub fn to_triangulation(&self) -> FiveTriangulation {
        FiveTriangulation::from_rotation_system(&self.rot, &[0, 1, 2, 3, 4]).expect("maintained as a triangulation")
    }

    fn is_outer(v: VertexId) -> bool {
        v < 5
    }

    fn adjacent(&self, a: VertexId, b: VertexId) -> bool {
        let (x, y) = if self.rot[a].len() <= self.rot[b].len() { (a, b) } else { (b, a) };
        self.rot[x].contains(&y)
    }

    /// Whether the clockwise corner `(p, q)` at `u` is the outer one.
    fn outer_corner(u: VertexId, p: VertexId, q: VertexId) -> bool {
        u < 5 && p == (u + 4) % 5 && q == (u + 1) % 5
    }

    fn is_face(&self, u: VertexId, a: VertexId, b: VertexId) -> bool {
        let r = &self.rot[u];
        let k = r.len();
        (0..k).any(|i| {
            let (p, q) = (r[i], r[(i + 1) % k]);
            ((p == a && q == b) || (p == b && q == a)) && !Self::outer_corner(u, p, q)
        })
    }

    /// No separating cycle of length 3 or 4 passes through `s`.
    pub fn locally_5c(&self, s: VertexId) -> bool {
        let nb = &self.rot[s];
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                if self.adjacent(nb[i], nb[j]) && !self.is_face(s, nb[i], nb[j]) {
                    return false;
                }
            }
        }
        let mut common: Vec<(VertexId, VertexId)> = Vec::new();
        for &a in nb {
            for &v in &self.rot[a] {
                if v != s {
                    common.push((v, a));
                }
            }
        }
        common.sort_unstable();
        let mut i = 0;
        while i < common.len() {
            let mut j = i;
            while j < common.len() && common[j].0 == common[i].0 {
                j += 1;
            }
            let v = common[i].0;
            let sv = self.adjacent(s, v);
            for x in i..j {
                for y in x + 1..j {
                    let (a, b) = (common[x].1, common[y].1);
                    let empty = (sv && self.is_face(s, v, a) && self.is_face(s, v, b))
                        || (self.adjacent(a, b) && self.is_face(a, b, s) && self.is_face(a, b, v));
                    if !empty {
                        return false;
                    }
                }
            }
            i = j;
        }
        true
    }

    fn replace(&mut self, u: VertexId, old: VertexId, new: VertexId) {
        let pos = self.rot[u].iter().position(|&w| w == old).expect("neighbour present");
        self.rot[u][pos] = new;
    }

    fn insert_after(&mut self, u: VertexId, after: VertexId, new: VertexId) {
        let pos = self.rot[u].iter().position(|&w| w == after).expect("neighbour present");
        self.rot[u].insert(pos + 1, new);
    }

    fn save(&self, vs: &[VertexId]) -> Undo {
        vs.iter().map(|&v| (v, self.rot[v].clone())).collect()
    }

    fn restore(&mut self, undo: Undo, pop: bool) {
        if pop {
            self.rot.pop();
        }
        for (v, r) in undo {
            self.rot[v] = r;
        }
    }

    /// Splits `b`: a new inner vertex takes the neighbours `rot[b][start..=start+k]`
    /// (cyclically) and is joined to `b`. Returns false and leaves the map
    /// unchanged if the result is not a 5c-triangulation.
    pub fn try_split(&mut self, b: VertexId, start: usize, k: usize) -> bool {
        let deg = self.rot[b].len();
        if k < 3 || k + 1 > deg {
            return false;
        }
        let run: Vec<VertexId> = (0..=k).map(|j| self.rot[b][(start + j) % deg]).collect();
        for j in 0..k {
            if Self::outer_corner(b, run[j], run[j + 1]) {
                return false;
            }
        }
        let new_deg = deg - k + 2;
        if (!Self::is_outer(b) && new_deg < 5) || new_deg < 3 {
            return false;
        }
        let x = self.rot.len();
        let mut touched = run.clone();
        touched.push(b);
        let undo = self.save(&touched);
        let (c0, ck) = (run[0], run[k]);
        for &c in &run[1..k] {
            self.replace(c, b, x);
        }
        // at c0 the cyclic order ..., c1, b, ... becomes ..., c1, x, b, ...
        self.insert_after(c0, run[1], x);
        self.insert_after(ck, b, x);
        let kept: Vec<VertexId> = (k..=deg).map(|j| self.rot[b][(start + j) % deg]).collect();
        let mut rb = kept;
        rb.push(x);
        // rb is ck, ..., c0, x in clockwise order
        self.rot[b] = rb;
        let mut rx = run.clone();
        rx.push(b);
        self.rot.push(rx);
        let ok = [x, b, c0, ck].iter().all(|&s| self.locally_5c(s));
        if !ok {
            self.restore(undo, true);
        }
        ok
    }

    /// Flips the edge `u -> rot[u][i]` of an inner edge. Returns false and
    /// leaves the map unchanged if the result is not a 5c-triangulation.
    pub fn try_flip(&mut self, u: VertexId, i: usize) -> bool {
        let du = self.rot[u].len();
        let v = self.rot[u][i];
        if Self::is_outer(u) && Self::is_outer(v) && ((u + 1) % 5 == v || (v + 1) % 5 == u) {
            return false;
        }
        let a = self.rot[u][(i + 1) % du];
        let b = self.rot[u][(i + du - 1) % du];
        if Self::outer_corner(u, v, a) || Self::outer_corner(u, b, v) {
            return false;
        }
        let min_deg = |w: VertexId| if Self::is_outer(w) { 3 } else { 5 };
        if self.rot[u].len() <= min_deg(u) || self.rot[v].len() <= min_deg(v) {
            return false;
        }
        if a == b || self.adjacent(a, b) {
            return false;
        }
        let undo = self.save(&[u, v, a, b]);
        self.rot[u].retain(|&w| w != v);
        self.rot[v].retain(|&w| w != u);
        // faces (u, v, a) and (u, b, v) around the corners at a and b
        self.insert_after(a, u, b);
        self.insert_after(b, v, a);
        let ok = [a, b, u, v].iter().all(|&s| self.locally_5c(s));
        if !ok {
            self.restore(undo, false);
        }
        ok
    }

    fn random_split(&mut self, rng: &mut impl Rng) -> bool {
        let b = rng.gen_range(0..self.n());
        let deg = self.rot[b].len();
        if deg < 4 {
            return false;
        }
        let k = rng.gen_range(3..deg);
        let start = rng.gen_range(0..deg);
        self.try_split(b, start, k)
    }

    fn random_flip(&mut self, rng: &mut impl Rng) -> bool {
        let u = rng.gen_range(0..self.n());
        let i = rng.gen_range(0..self.rot[u].len());
        self.try_flip(u, i)
    }

    /// Inserts a degree-3 vertex in the face clockwise after `rot[u][i]` at
    /// `u`, without any 5c check.
    pub fn stack_vertex(&mut self, u: VertexId, i: usize) -> bool {
        let du = self.rot[u].len();
        let (p, q) = (self.rot[u][i], self.rot[u][(i + 1) % du]);
        if Self::outer_corner(u, p, q) {
            return false;
        }
        let x = self.rot.len();
        self.insert_after(u, p, x);
        self.insert_after(p, q, x);
        self.insert_after(q, u, x);
        self.rot.push(vec![u, p, q]);
        true
    }

    /// Flips an inner edge whenever the result stays a simple triangulation.
    pub fn raw_flip(&mut self, u: VertexId, i: usize) -> bool {
        let du = self.rot[u].len();
        let v = self.rot[u][i];
        let a = self.rot[u][(i + 1) % du];
        let b = self.rot[u][(i + du - 1) % du];
        if Self::outer_corner(u, v, a) || Self::outer_corner(u, b, v) {
            return false;
        }
        if Self::is_outer(u) && Self::is_outer(v) && ((u + 1) % 5 == v || (v + 1) % 5 == u) {
            return false;
        }
        if a == b || self.adjacent(a, b) || self.rot[u].len() <= 3 || self.rot[v].len() <= 3 {
            return false;
        }
        self.rot[u].retain(|&w| w != v);
        self.rot[v].retain(|&w| w != u);
        self.insert_after(a, u, b);
        self.insert_after(b, v, a);
        true
    }
}

/// A random 5c-triangulation with `n_target` vertices, deterministic in `seed`.
/// `flips` random flip attempts are interleaved per vertex added.
pub fn generate_random_5c(n_target: usize, seed: u64, flips: usize) -> Result<FiveTriangulation, GenerateError> {
    if n_target < 6 {
        return Err(GenerateError::GenerationFailed(format!("n = {n_target} is below 6")));
    }
    if n_target == 6 {
        return Ok(fixtures::w5());
    }
    if n_target < 11 {
        return Err(GenerateError::GenerationFailed(format!(
            "no 5c-triangulation has {n_target} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = MutableTriangulation::from_triangulation(&fixtures::icosa11());
    let budget = 400 * n_target + 10_000;
    let mut attempts = 0;
    while m.n() < n_target {
        attempts += 1;
        if attempts > budget {
            return Err(GenerateError::GenerationFailed(format!(
                "attempt budget exhausted at {} of {n_target} vertices",
                m.n()
            )));
        }
        if m.random_split(&mut rng) {
            for _ in 0..flips {
                m.random_flip(&mut rng);
            }
        } else if rng.gen_bool(0.5) {
            m.random_flip(&mut rng);
        }
    }
    Ok(relabel_bfs(&m.to_triangulation()))
}

/// The same triangulation with vertices renumbered in breadth-first order
/// from the outer cycle, so that neighbours get nearby ids.
pub fn relabel_bfs(t: &FiveTriangulation) -> FiveTriangulation {
    let g = t.map();
    let mut new = vec![usize::MAX; t.n()];
    let mut order: Vec<VertexId> = t.outer().to_vec();
    for (k, &v) in order.iter().enumerate() {
        new[v] = k;
    }
    let mut k = 0;
    while k < order.len() {
        let u = order[k];
        k += 1;
        for w in g.neighbors(u) {
            if new[w] == usize::MAX {
                new[w] = order.len();
                order.push(w);
            }
        }
    }
    let rot = t.rotation_system();
    let rot: Vec<Vec<VertexId>> = order.iter().map(|&v| rot[v].iter().map(|&w| new[w]).collect()).collect();
    let outer: Vec<VertexId> = t.outer().iter().map(|&v| new[v]).collect();
    FiveTriangulation::from_rotation_system(&rot, &outer).expect("relabeling preserves validity")
}

/// A triangulation obtained from `t` by random unchecked moves; it may or may
/// not be 5c.
pub fn damage(t: &FiveTriangulation, seed: u64, moves: usize) -> FiveTriangulation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = MutableTriangulation::from_triangulation(t);
    let mut done = 0;
    let mut tries = 0;
    while done < moves && tries < 100 * moves + 100 {
        tries += 1;
        let u = rng.gen_range(0..m.n());
        let i = rng.gen_range(0..m.rot[u].len());
        let ok = if rng.gen_bool(0.5) { m.stack_vertex(u, i) } else { m.raw_flip(u, i) };
        if ok {
            done += 1;
        }
    }
    m.to_triangulation()
}

fn fans() -> Vec<FiveTriangulation> {
    (0..5)
        .map(|c| {
            let mut rot: Vec<Vec<VertexId>> = (0..5).map(|v| vec![(v + 4) % 5, (v + 1) % 5]).collect();
            let (a, b) = ((c + 2) % 5, (c + 3) % 5);
            rot[c] = vec![(c + 4) % 5, (c + 1) % 5, a, b];
            rot[a].push(c);
            rot[b].push(c);
            FiveTriangulation::from_rotation_system(&rot, &[0, 1, 2, 3, 4]).expect("fan triangulation")
        })
        .collect()
}

/// Every simple triangulation of the labeled pentagon with at most `max_n`
/// vertices, one per isomorphism class fixing the outer labels.
pub fn all_triangulations(max_n: usize) -> Vec<FiveTriangulation> {
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut out = Vec::new();
    let mut queue: VecDeque<MutableTriangulation> = VecDeque::new();
    for t in fans() {
        if seen.insert(labeled_code(&t)) {
            queue.push_back(MutableTriangulation::from_triangulation(&t));
            out.push(t);
        }
    }
    while let Some(m) = queue.pop_front() {
        let mut neighbours = Vec::new();
        for u in 0..m.n() {
            for i in 0..m.rot[u].len() {
                let mut f = m.clone();
                if f.raw_flip(u, i) {
                    neighbours.push(f);
                }
                if m.n() < max_n {
                    let mut s = m.clone();
                    if s.stack_vertex(u, i) {
                        neighbours.push(s);
                    }
                }
            }
        }
        for nb in neighbours {
            let t = nb.to_triangulation();
            if seen.insert(labeled_code(&t)) {
                out.push(t);
                queue.push_back(nb);
            }
        }
    }
    out
}

/// Every 5c-triangulation with at most `max_n` vertices, up to isomorphism
/// fixing the outer labels.
pub fn all_5c(max_n: usize) -> Vec<FiveTriangulation> {
    all_triangulations(max_n).into_iter().filter(|t| t.n() >= 6 && t.is_5c().is_5c).collect()
}
