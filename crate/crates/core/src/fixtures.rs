//! Small named instances.

use crate::planar_map::{PlanarMap, VertexId};
use crate::triangulation::FiveTriangulation;

/// The wheel `W5`: the pentagon `0..5` and a hub `5`.
pub fn w5() -> FiveTriangulation {
    let rot = vec![
        vec![5, 4, 1],
        vec![5, 0, 2],
        vec![5, 1, 3],
        vec![5, 2, 4],
        vec![5, 3, 0],
        vec![0, 1, 2, 3, 4],
    ];
    FiveTriangulation::from_rotation_system(&rot, &[0, 1, 2, 3, 4]).expect("W5")
}

/// `W5` with the face `{v1, v2, hub}` refined by a degree-3 vertex, which
/// creates a separating triangle.
pub fn non5c() -> FiveTriangulation {
    let rot = vec![
        vec![5, 4, 1, 6],
        vec![5, 6, 0, 2],
        vec![5, 1, 3],
        vec![5, 2, 4],
        vec![5, 3, 0],
        vec![0, 6, 1, 2, 3, 4],
        vec![5, 0, 1],
    ];
    FiveTriangulation::from_rotation_system(&rot, &[0, 1, 2, 3, 4]).expect("refined W5")
}

/// The icosahedron with one vertex removed.
pub fn icosa11() -> FiveTriangulation {
    let ico = icosahedron();
    FiveTriangulation::from_five_connected(&ico, 11).expect("icosahedron minus a vertex")
}

/// Clockwise rotations (seen from outside) of a convex polyhedron given by
/// vertex positions and adjacency.
pub fn rotation_from_sphere_points(points: &[[f64; 3]], adj: &[Vec<VertexId>]) -> Vec<Vec<VertexId>> {
    let centroid = points.iter().fold([0.0; 3], |acc, p| [acc[0] + p[0], acc[1] + p[1], acc[2] + p[2]]);
    let k = points.len() as f64;
    let c = [centroid[0] / k, centroid[1] / k, centroid[2] / k];
    let sub = |a: [f64; 3], b: [f64; 3]| [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let cross = |a: [f64; 3], b: [f64; 3]| {
        [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
    };
    adj.iter()
        .enumerate()
        .map(|(v, nb)| {
            let n = sub(points[v], c);
            let first = sub(points[nb[0]], points[v]);
            let e1 = sub(first, n.map(|x| x * dot(first, n) / dot(n, n)));
            let e2 = cross(n, e1);
            let mut with_angle: Vec<(f64, VertexId)> = nb
                .iter()
                .map(|&w| {
                    let r = sub(points[w], points[v]);
                    (dot(r, e2).atan2(dot(r, e1)), w)
                })
                .collect();
            with_angle.sort_by(|a, b| b.0.total_cmp(&a.0));
            with_angle.into_iter().map(|(_, w)| w).collect()
        })
        .collect()
}

fn sphere_map(points: &[[f64; 3]], adj: &[Vec<VertexId>]) -> PlanarMap {
    let rot = rotation_from_sphere_points(points, adj);
    PlanarMap::from_rotation_system(&rot, &[]).expect("convex polyhedron")
}

fn adjacency_by_min_distance(points: &[[f64; 3]]) -> Vec<Vec<VertexId>> {
    let d2 = |a: &[f64; 3], b: &[f64; 3]| (0..3).map(|i| (a[i] - b[i]).powi(2)).sum::<f64>();
    let mut min = f64::INFINITY;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            min = min.min(d2(&points[i], &points[j]));
        }
    }
    (0..points.len())
        .map(|i| {
            (0..points.len())
                .filter(|&j| j != i && d2(&points[i], &points[j]) < min * 1.001)
                .collect()
        })
        .collect()
}

/// The regular icosahedron (12 vertices, all of degree 5).
pub fn icosahedron() -> PlanarMap {
    let g = (1.0 + 5f64.sqrt()) / 2.0;
    let mut pts = Vec::new();
    for &a in &[-1.0, 1.0] {
        for &b in &[-g, g] {
            pts.push([0.0, a, b]);
            pts.push([a, b, 0.0]);
            pts.push([b, 0.0, a]);
        }
    }
    let adj = adjacency_by_min_distance(&pts);
    sphere_map(&pts, &adj)
}

/// The octahedron (all degrees 4).
pub fn octahedron() -> PlanarMap {
    let pts = [
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ];
    let adj = adjacency_by_min_distance(&pts);
    sphere_map(&pts, &adj)
}

/// The pentagonal bipyramid: rim `0..5`, apexes `5` and `6`.
pub fn double_pyramid() -> PlanarMap {
    let mut pts = Vec::new();
    let mut adj = Vec::new();
    for i in 0..5 {
        let a = std::f64::consts::TAU * i as f64 / 5.0;
        pts.push([a.cos(), a.sin(), 0.0]);
        adj.push(vec![(i + 4) % 5, (i + 1) % 5, 5, 6]);
    }
    pts.push([0.0, 0.0, 1.0]);
    pts.push([0.0, 0.0, -1.0]);
    adj.push((0..5).collect());
    adj.push((0..5).collect());
    sphere_map(&pts, &adj)
}

/// Looks up a built-in instance by name.
pub fn by_name(name: &str) -> Option<FiveTriangulation> {
    match name {
        "w5" => Some(w5()),
        "icosa11" => Some(icosa11()),
        "non5c" => Some(non5c()),
        _ => None,
    }
}
