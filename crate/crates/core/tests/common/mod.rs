#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use pentawood::drawing::Drawing;
use pentawood::regions::WeightMode;
use pentawood::structures::{CornerLabeling, FiveCOrientation, WoodColoring};
use pentawood::triangulation::{vertices_inside, Completion, FiveTriangulation, Role};

/// Enumerates every simple cycle of length 3 or 4 and flood-fills its interior.
pub fn brute_is_5c(t: &FiveTriangulation) -> bool {
    let m = t.map();
    let n = m.n_vertices();
    let dart = |u: usize, v: usize| m.darts_around(u).filter(move |&d| m.target(d) == v);
    for u in 0..n {
        if m.darts_around(u).any(|d| m.target(d) == u) {
            return false;
        }
        let mut nb: Vec<usize> = m.neighbors(u).collect();
        nb.sort_unstable();
        if nb.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
    }
    let inside = |cycle: &[usize]| {
        let darts: Vec<usize> = (0..cycle.len())
            .map(|k| dart(cycle[k], cycle[(k + 1) % cycle.len()]).next().unwrap())
            .collect();
        !vertices_inside(m, &darts).is_empty()
    };
    let adj = |a: usize, b: usize| dart(a, b).next().is_some();
    for a in 0..n {
        for b in m.neighbors(a).filter(|&b| b > a) {
            for c in m.neighbors(b).filter(|&c| c > a && c != b) {
                if adj(c, a) && inside(&[a, b, c]) {
                    return false;
                }
                for e in m.neighbors(c).filter(|&e| e > a && e != b && e != c) {
                    if adj(e, a) && inside(&[a, b, c, e]) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Every orientation of the inner edges of `G+` meeting the outdegree
/// prescriptions, by backtracking.
pub fn all_orientations(t: &FiveTriangulation, c: &Completion) -> Vec<FiveCOrientation> {
    let m = c.map();
    let target: Vec<usize> = (0..c.n_vertices())
        .map(|x| match c.role(x) {
            Role::Primal(v) if t.is_outer(v) => 0,
            Role::Primal(_) => 5,
            Role::Edge(_) => 1,
            Role::Dual(_) => 2,
        })
        .collect();
    let edges: Vec<usize> = (0..c.n_edges()).filter(|&e| c.is_inner_edge(e)).collect();
    let mut free = vec![0usize; c.n_vertices()];
    for &e in &edges {
        let (a, b) = c.endpoints(e);
        free[a] += 1;
        free[b] += 1;
    }
    struct S<'a> {
        edges: &'a [usize],
        ends: Vec<(usize, usize)>,
        target: &'a [usize],
        out: Vec<usize>,
        free: Vec<usize>,
        cur: Vec<Option<usize>>,
        found: Vec<FiveCOrientation>,
    }
    fn rec(s: &mut S, k: usize) {
        if k == s.edges.len() {
            if s.out == s.target {
                s.found.push(FiveCOrientation { dart: s.cur.clone() });
            }
            return;
        }
        let e = s.edges[k];
        let (a, b) = s.ends[k];
        s.free[a] -= 1;
        s.free[b] -= 1;
        for (tail, head, d) in [(a, b, 2 * e), (b, a, 2 * e + 1)] {
            s.out[tail] += 1;
            let ok = s.out[tail] <= s.target[tail]
                && s.out[head] + s.free[head] >= s.target[head]
                && s.out[tail] + s.free[tail] >= s.target[tail];
            if ok {
                s.cur[e] = Some(d);
                rec(s, k + 1);
                s.cur[e] = None;
            }
            s.out[tail] -= 1;
        }
        s.free[a] += 1;
        s.free[b] += 1;
    }
    let ends = edges.iter().map(|&e| c.endpoints(e)).collect();
    let _ = m;
    let mut s = S {
        edges: &edges,
        ends,
        target: &target,
        out: vec![0; c.n_vertices()],
        free,
        cur: vec![None; c.n_edges()],
        found: Vec::new(),
    };
    rec(&mut s, 0);
    s.found
}

fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn product<T: Clone>(options: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut acc: Vec<Vec<T>> = vec![Vec::new()];
    for opts in options {
        let mut next = Vec::new();
        for a in &acc {
            for o in opts {
                let mut b = a.clone();
                b.push(o.clone());
                next.push(b);
            }
        }
        acc = next;
    }
    acc
}

/// Corner labelings with labels fixed at outer vertices and, around every
/// inner vertex, 5 cyclic intervals; the validator filters the rest.
pub fn candidate_labelings(t: &FiveTriangulation) -> Vec<CornerLabeling> {
    let g = t.map();
    let inner: Vec<usize> = t.inner_vertices().collect();
    let per_vertex: Vec<Vec<Vec<(usize, u8)>>> = inner
        .iter()
        .map(|&v| {
            let corners: Vec<usize> = g.darts_around(v).collect();
            let mut opts = Vec::new();
            for cuts in choose(corners.len(), 5) {
                for first in 0..5u8 {
                    // label increases by one right after each cut position
                    let mut assign = Vec::new();
                    for (p, &c) in corners.iter().enumerate() {
                        let steps = cuts.iter().filter(|&&q| q < p).count() as u8;
                        assign.push((c, (first + steps) % 5));
                    }
                    opts.push(assign);
                }
            }
            opts
        })
        .collect();
    let mut base = vec![None; g.n_darts()];
    for c in 0..g.n_darts() {
        if t.is_inner_corner(c) {
            if let Some(i) = t.outer_index(g.origin(c)) {
                base[c] = Some(i as u8);
            }
        }
    }
    product(&per_vertex)
        .into_iter()
        .map(|choice| {
            let mut label = base.clone();
            for assign in choice {
                for (c, l) in assign {
                    label[c] = Some(l);
                }
            }
            CornerLabeling { label }
        })
        .collect()
}

/// Arc colorings where every inner vertex has five outgoing colored arcs in
/// clockwise cyclic order; the validator filters the rest.
pub fn candidate_woods(t: &FiveTriangulation) -> Vec<WoodColoring> {
    let g = t.map();
    let inner: Vec<usize> = t.inner_vertices().collect();
    let per_vertex: Vec<Vec<Vec<(usize, u8)>>> = inner
        .iter()
        .map(|&v| {
            let darts: Vec<usize> = g.darts_around(v).collect();
            let mut opts = Vec::new();
            for pos in choose(darts.len(), 5) {
                for first in 0..5u8 {
                    opts.push(pos.iter().enumerate().map(|(j, &p)| (darts[p], (first + j as u8) % 5)).collect());
                }
            }
            opts
        })
        .collect();
    product(&per_vertex)
        .into_iter()
        .map(|choice| {
            let mut color = vec![None; g.n_darts()];
            for assign in choice {
                for (d, k) in assign {
                    color[d] = Some(k);
                }
            }
            WoodColoring { color }
        })
        .collect()
}

pub fn random_weights(t: &FiveTriangulation, seed: u64) -> WeightMode {
    WeightMode::Weighted(
        (0..t.map().n_faces() as u64)
            .map(|f| {
                let h = (f + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ seed;
                BigRational::new(BigInt::from(1 + h % 97), BigInt::from(1 + (h >> 20) % 13))
            })
            .collect(),
    )
}

/// Float segment-intersection test over all edge pairs, plus vertex-on-edge.
pub fn segments_cross(d: &Drawing, t: &FiveTriangulation) -> bool {
    let g = t.map();
    let xy: Vec<(f64, f64)> = d.points.iter().map(|p| p.xy).collect();
    let orient = |a: (f64, f64), b: (f64, f64), c: (f64, f64)| (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0);
    let eps = 1e-13;
    let edges: Vec<(usize, usize)> = (0..g.n_edges()).map(|e| (g.origin(2 * e), g.target(2 * e))).collect();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, e) in &edges[i + 1..] {
            if a == c || a == e || b == c || b == e {
                continue;
            }
            let sgn = |o: f64| if o.abs() < eps { 0.0 } else { o.signum() };
            let o1 = sgn(orient(xy[a], xy[b], xy[c]));
            let o2 = sgn(orient(xy[a], xy[b], xy[e]));
            let o3 = sgn(orient(xy[c], xy[e], xy[a]));
            let o4 = sgn(orient(xy[c], xy[e], xy[b]));
            if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
                return true;
            }
        }
    }
    for v in 0..g.n_vertices() {
        for &(a, b) in &edges {
            if v == a || v == b {
                continue;
            }
            let (p, q, r) = (xy[a], xy[b], xy[v]);
            let len = (q.0 - p.0).hypot(q.1 - p.1);
            let within = (r.0 - p.0) * (q.0 - p.0) + (r.1 - p.1) * (q.1 - p.1);
            if (orient(p, q, r) / len).abs() < eps && within > 0.0 && within < len * len {
                return true;
            }
        }
    }
    false
}
