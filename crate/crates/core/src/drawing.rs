//! Barycentric straight-line drawings in a regular pentagon, with exact
//! predicates over `Z[√5]`.
//!
//! Anchor `V_k` sits at angle `234° - 72°k`, so `v_1..v_5` run clockwise and
//! `{v_1, v_5}` is the bottom horizontal side. Every sign decision is made on
//! integer combinations of `1` and `√5`; floats are only used for output and
//! distance reporting.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::ops::{Add, AddAssign, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::planar_map::{FaceId, VertexId};
use crate::regions::{minus2, plus2, region_vertices, Weights, WoodTrees};
use crate::structures::WoodColoring;
use crate::triangulation::FiveTriangulation;

/// `a + b√5`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Quad5 {
    pub a: BigInt,
    pub b: BigInt,
}

impl Quad5 {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Quad5 { a: a.into(), b: b.into() }
    }

    pub fn signum(&self) -> i8 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sa == sb || sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2 = &self.b * &self.b * 5;
        match a2.cmp(&b2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * 5f64.sqrt()
    }
}

fn sign_of(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl Add for Quad5 {
    type Output = Quad5;
    fn add(self, o: Quad5) -> Quad5 {
        Quad5 { a: self.a + o.a, b: self.b + o.b }
    }
}

impl AddAssign<&Quad5> for Quad5 {
    fn add_assign(&mut self, o: &Quad5) {
        self.a += &o.a;
        self.b += &o.b;
    }
}

impl Mul<&BigInt> for &Quad5 {
    type Output = Quad5;
    fn mul(self, k: &BigInt) -> Quad5 {
        Quad5 { a: &self.a * k, b: &self.b * k }
    }
}

/// `2 sin(72° m) / sin 72°` for `m = 0..5`, as `(a, b)` in `a + b√5`.
const TWICE_SIN_RATIO: [(i64, i64); 5] = [(0, 0), (2, 0), (-1, 1), (1, -1), (-2, 0)];
/// `4 cos(72° m)` for `m = 0..5`.
const FOUR_COS: [(i64, i64); 5] = [(4, 0), (-1, 1), (-1, -1), (-1, -1), (-1, 1)];

/// The regular pentagon with circumradius 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PentagonFrame {
    pub anchors: [(f64, f64); 5],
}

impl PentagonFrame {
    pub fn standard() -> Self {
        PentagonFrame {
            anchors: std::array::from_fn(|k| {
                let theta = (234.0 - 72.0 * k as f64) * PI / 180.0;
                (theta.cos(), theta.sin())
            }),
        }
    }
}

impl Default for PentagonFrame {
    fn default() -> Self {
        Self::standard()
    }
}

/// A point given by five nonnegative weights `num_k / den` summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct BaryPoint {
    pub num: [BigInt; 5],
    pub den: BigInt,
    pub xy: (f64, f64),
}

impl BaryPoint {
    pub fn new(num: [BigInt; 5], den: BigInt, frame: &PentagonFrame) -> Self {
        let d = den.to_f64().unwrap_or(f64::NAN);
        let mut xy = (0.0, 0.0);
        for (k, c) in num.iter().enumerate() {
            let a = c.to_f64().unwrap_or(f64::NAN) / d;
            xy.0 += a * frame.anchors[k].0;
            xy.1 += a * frame.anchors[k].1;
        }
        BaryPoint { num, den, xy }
    }

    pub fn from_rationals(alpha: &[BigRational; 5], frame: &PentagonFrame) -> Self {
        let mut den = BigInt::from(1);
        for a in alpha {
            den = num_integer::Integer::lcm(&den, a.denom());
        }
        let num = std::array::from_fn(|k| (&alpha[k] * BigRational::from_integer(den.clone())).to_integer());
        BaryPoint::new(num, den, frame)
    }

    pub fn weights(&self) -> [BigRational; 5] {
        std::array::from_fn(|k| BigRational::new(self.num[k].clone(), self.den.clone()))
    }

    /// `self - other`, scaled by the positive factor `den_self * den_other`.
    fn diff(&self, other: &BaryPoint) -> [BigInt; 5] {
        std::array::from_fn(|k| &self.num[k] * &other.den - &other.num[k] * &self.den)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Drawing {
    pub frame: PentagonFrame,
    pub points: Vec<BaryPoint>,
    pub mode: String,
    pub n: usize,
}

/// Places every vertex at the barycenter of the anchors.
pub fn place(w: &Weights, frame: &PentagonFrame, mode: &str) -> Drawing {
    let points = w.num.iter().map(|num| BaryPoint::new(num.clone(), w.den.clone(), frame)).collect();
    Drawing { frame: *frame, points, mode: mode.to_string(), n: w.num.len() }
}

fn cross_value(x: &[BigInt; 5], y: &[BigInt; 5]) -> Quad5 {
    let mut s = Quad5::default();
    for a in 0..5 {
        if x[a].is_zero() {
            continue;
        }
        for b in 0..5 {
            let (ca, cb) = TWICE_SIN_RATIO[(b + 5 - a) % 5];
            if ca == 0 || y[b].is_zero() {
                continue;
            }
            let xy = &x[a] * &y[b];
            s.a += &xy * ca;
            s.b += &xy * cb;
        }
    }
    s
}

/// Exact sign of `cross(q - p, r - p)`: positive for counterclockwise.
pub fn orient3(p: &BaryPoint, q: &BaryPoint, r: &BaryPoint) -> i8 {
    // cross(V_a, V_b) = -sin(72°) * c_{b-a}
    -cross_value(&q.diff(p), &r.diff(p)).signum()
}

/// Exact sign of `V_i . (q - p)`.
pub fn dot_sign(i: usize, p: &BaryPoint, q: &BaryPoint) -> i8 {
    let delta = q.diff(p);
    let mut s = Quad5::default();
    for (k, dk) in delta.iter().enumerate() {
        let (ca, cb) = FOUR_COS[(k + 5 - i) % 5];
        s.a += dk * ca;
        s.b += dk * cb;
    }
    s.signum()
}

/// The frame's anchors as barycentric points.
pub fn anchor_points(frame: &PentagonFrame) -> [BaryPoint; 5] {
    std::array::from_fn(|k| {
        let mut num: [BigInt; 5] = Default::default();
        num[k] = BigInt::from(1);
        BaryPoint::new(num, BigInt::from(1), frame)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarityVerdict {
    pub faces_checked: usize,
    /// First inner face that is flipped or degenerate.
    pub failure: Option<FaceId>,
}

impl PlanarityVerdict {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks that every inner face, read clockwise, has the orientation of the
/// clockwise anchor triangle `(V_1, V_2, V_3)`.
pub fn certify_planar(d: &Drawing, t: &FiveTriangulation) -> PlanarityVerdict {
    let a = anchor_points(&d.frame);
    let reference = orient3(&a[0], &a[1], &a[2]);
    let g = t.map();
    let mut checked = 0;
    for f in t.inner_faces() {
        checked += 1;
        let [x, y, z] = t.face_corners_cw(f).map(|c| &d.points[g.origin(c)]);
        if orient3(x, y, z) != reference {
            return PlanarityVerdict { faces_checked: checked, failure: Some(f) };
        }
    }
    PlanarityVerdict { faces_checked: checked, failure: None }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub checked: usize,
    /// Tests that came out exactly zero where zero is admissible.
    pub boundary: usize,
    /// `(v, u, color)` for each failed test.
    pub violations: Vec<(VertexId, VertexId, u8)>,
}

impl ConditionReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every `u != v` in the closed region `R_i(v)`: `V_i . vu < 0`.
///
/// In vertices mode the points of `P_{i-2}(v)` are not counted in `R_i(v)` and
/// lie on the boundary line, so `V_i . vu = 0` is accepted there.
pub fn check_halfplane(d: &Drawing, t: &FiveTriangulation, tr: &WoodTrees) -> ConditionReport {
    let weak = d.mode == "vertices";
    let mut report = ConditionReport::default();
    for v in 0..t.n() {
        for i in 0..5 {
            let left: Vec<VertexId> = if weak && !tr.is_outer(v) { tr.path(v, minus2(i)) } else { Vec::new() };
            for u in region_vertices(t, tr, v, i) {
                if u == v {
                    continue;
                }
                report.checked += 1;
                match dot_sign(i, &d.points[v], &d.points[u]) {
                    s if s < 0 => {}
                    0 if left.contains(&u) => report.boundary += 1,
                    _ => report.violations.push((v, u, i as u8)),
                }
            }
        }
    }
    report
}

/// For every arc `(v, u)` of color `i`: `V_{i-2} . vu < 0` and `V_{i+2} . vu < 0`
/// (in vertices mode the second may be zero).
pub fn check_sectors(d: &Drawing, t: &FiveTriangulation, w: &WoodColoring) -> ConditionReport {
    let weak = d.mode == "vertices";
    let g = t.map();
    let mut report = ConditionReport::default();
    for a in 0..g.n_darts() {
        let Some(i) = w.color[a] else { continue };
        let (v, u) = (g.origin(a), g.target(a));
        report.checked += 1;
        let i = i as usize;
        let lo = dot_sign(minus2(i), &d.points[v], &d.points[u]);
        let hi = dot_sign(plus2(i), &d.points[v], &d.points[u]);
        if lo < 0 && hi < 0 {
            continue;
        }
        if weak && lo < 0 && hi == 0 {
            report.boundary += 1;
        } else {
            report.violations.push((v, u, i as u8));
        }
    }
    report
}

/// `|Σ δ_k ω^k|` with `ω = e^{2πi/5}`.
pub fn modulus(delta: [i64; 5]) -> f64 {
    let (mut x, mut y) = (0.0, 0.0);
    for (k, &dk) in delta.iter().enumerate() {
        let a = 2.0 * PI * (k + 1) as f64 / 5.0;
        x += dk as f64 * a.cos();
        y += dk as f64 * a.sin();
    }
    x.hypot(y)
}

/// Smallest modulus of a region-count difference in faces mode.
pub fn d5() -> f64 {
    modulus([-2, -1, 3, 1, -1])
}

/// Smallest modulus of a region-count difference in vertices mode.
pub fn d5_prime() -> f64 {
    modulus([-1, -1, 1, 1, 0])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Resolution {
    pub min_distance: f64,
    pub pair: (VertexId, VertexId),
    /// `min_distance * (2n - 7)` or `min_distance * (n - 1)`.
    pub normalized_min: Option<f64>,
    pub bound: Option<f64>,
    pub meets_bound: Option<bool>,
}

fn exact_distance(d: &Drawing, u: VertexId, v: VertexId) -> f64 {
    let (p, q) = (&d.points[u], &d.points[v]);
    let scale = (&p.den * &q.den).to_f64().unwrap_or(f64::NAN);
    let delta = q.diff(p);
    let (mut x, mut y) = (0.0, 0.0);
    for (k, dk) in delta.iter().enumerate() {
        let c = dk.to_f64().unwrap_or(f64::NAN) / scale;
        x += c * d.frame.anchors[k].0;
        y += c * d.frame.anchors[k].1;
    }
    x.hypot(y)
}

/// Closest pair of vertices, found by a sweep over x and re-evaluated from
/// the exact weight differences.
pub fn resolution(d: &Drawing) -> Resolution {
    let mut idx: Vec<usize> = (0..d.points.len()).collect();
    idx.sort_by(|&a, &b| d.points[a].xy.0.total_cmp(&d.points[b].xy.0));
    let mut best = f64::INFINITY;
    let mut pair = (0, 0);
    for (s, &a) in idx.iter().enumerate() {
        let (xa, ya) = d.points[a].xy;
        for &b in &idx[s + 1..] {
            let (xb, yb) = d.points[b].xy;
            if xb - xa > best + 1e-12 {
                break;
            }
            if (yb - ya).abs() > best + 1e-12 {
                continue;
            }
            let dist = exact_distance(d, a, b);
            if dist < best {
                best = dist;
                pair = (a.min(b), a.max(b));
            }
        }
    }
    let (factor, bound) = match d.mode.as_str() {
        "faces" => (Some((2 * d.n - 7) as f64), Some(d5())),
        "vertices" => (Some((d.n - 1) as f64), Some(d5_prime())),
        _ => (None, None),
    };
    let normalized_min = factor.map(|f| best * f);
    let meets_bound = normalized_min.zip(bound).map(|(m, b)| m >= b - 1e-9);
    Resolution { min_distance: best, pair, normalized_min, bound, meets_bound }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("no rotation automorphism was provided")]
    NoAutomorphismProvided,
}

/// With `rho` mapping `v_i` to `v_{i+1}`, checks `alpha_{k+1}(rho v) = alpha_k(v)` exactly.
pub fn check_rotational_symmetry(d: &Drawing, rho: Option<&[VertexId]>) -> Result<bool, SymmetryError> {
    let rho = rho.ok_or(SymmetryError::NoAutomorphismProvided)?;
    Ok((0..d.points.len()).all(|v| {
        let (p, q) = (&d.points[v], &d.points[rho[v]]);
        (0..5).all(|k| &q.num[(k + 1) % 5] * &p.den == &p.num[k] * &q.den)
    }))
}

const PALETTE: [&str; 5] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e"];

/// SVG rendering; with a wood, colored arcs are drawn as arrows in their color.
pub fn to_svg(d: &Drawing, t: &FiveTriangulation, wood: Option<&WoodColoring>, scale: f64) -> String {
    let g = t.map();
    let pad = 0.08 * scale;
    let size = 2.0 * scale + 2.0 * pad;
    let px = |p: (f64, f64)| (scale + pad + p.0 * scale, scale + pad - p.1 * scale);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size:.1}" height="{size:.1}" viewBox="0 0 {size:.1} {size:.1}">"#
    );
    if wood.is_some() {
        s.push_str("<defs>\n");
        for (k, c) in PALETTE.iter().enumerate() {
            let _ = writeln!(
                s,
                r#"<marker id="a{k}" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="5" markerHeight="5" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="{c}"/></marker>"#
            );
        }
        s.push_str("</defs>\n");
    }
    let r = (scale / (4.0 * (d.n as f64).sqrt())).clamp(0.6, 6.0);
    let stroke = (r / 3.0).max(0.3);
    s.push_str(r##"<g stroke="#444" fill="none">"##);
    s.push('\n');
    for e in 0..g.n_edges() {
        let dart = 2 * e;
        let (a, b) = (px(d.points[g.origin(dart)].xy), px(d.points[g.target(dart)].xy));
        let _ = writeln!(
            s,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke-width="{stroke:.2}"/>"#,
            a.0, a.1, b.0, b.1
        );
    }
    s.push_str("</g>\n");
    if let Some(w) = wood {
        s.push_str("<g fill=\"none\">\n");
        for dart in 0..g.n_darts() {
            let Some(k) = w.color[dart] else { continue };
            let (a, b) = (px(d.points[g.origin(dart)].xy), px(d.points[g.target(dart)].xy));
            let (mx, my) = (a.0 + 0.55 * (b.0 - a.0), a.1 + 0.55 * (b.1 - a.1));
            let _ = writeln!(
                s,
                r#"<line x1="{:.3}" y1="{:.3}" x2="{mx:.3}" y2="{my:.3}" stroke="{}" stroke-width="{:.2}" marker-end="url(#a{k})"/>"#,
                a.0,
                a.1,
                PALETTE[k as usize],
                stroke * 2.0
            );
        }
        s.push_str("</g>\n");
    }
    s.push_str("<g fill=\"#000\">\n");
    for (v, p) in d.points.iter().enumerate() {
        let (x, y) = px(p.xy);
        let _ = writeln!(s, r#"<circle id="v{v}" cx="{x:.3}" cy="{y:.3}" r="{r:.2}"/>"#);
    }
    s.push_str("</g>\n</svg>\n");
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: VertexId,
    /// Reduced fractions `"num/den"`.
    pub weights: [String; 5],
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DrawingJson {
    pub n: usize,
    pub mode: String,
    pub vertices: Vec<VertexJson>,
}

impl From<&Drawing> for DrawingJson {
    fn from(d: &Drawing) -> Self {
        let vertices = d
            .points
            .iter()
            .enumerate()
            .map(|(id, p)| VertexJson {
                id,
                weights: p.weights().map(|a| format!("{}/{}", a.numer(), a.denom())),
                x: p.xy.0,
                y: p.xy.1,
            })
            .collect();
        DrawingJson { n: d.n, mode: d.mode.clone(), vertices }
    }
}

impl DrawingJson {
    /// Rebuilds the exact drawing from the serialized weights.
    pub fn to_drawing(&self, frame: &PentagonFrame) -> Option<Drawing> {
        let points = self
            .vertices
            .iter()
            .map(|v| {
                let mut alpha: [BigRational; 5] = Default::default();
                for (k, s) in v.weights.iter().enumerate() {
                    alpha[k] = s.parse().ok()?;
                }
                Some(BaryPoint::from_rationals(&alpha, frame))
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Drawing { frame: *frame, points, mode: self.mode.clone(), n: self.n })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quad5_signs() {
        assert_eq!(Quad5::new(3, -1).signum(), 1);
        assert_eq!(Quad5::new(2, -1).signum(), -1);
        assert_eq!(Quad5::new(-3, 1).signum(), -1);
        assert_eq!(Quad5::new(0, 0).signum(), 0);
        assert_eq!(Quad5::new(0, -2).signum(), -1);
        assert_eq!(Quad5::new(5, 0).signum(), 1);
    }

    #[test]
    fn frame_is_clockwise_with_bottom_edge() {
        let f = PentagonFrame::standard();
        assert!((f.anchors[0].1 - f.anchors[4].1).abs() < 1e-12);
        assert!(f.anchors[0].1 < 0.0 && f.anchors[0].0 < f.anchors[4].0);
        let a = anchor_points(&f);
        assert_eq!(orient3(&a[0], &a[1], &a[2]), -1);
        assert_eq!(orient3(&a[0], &a[0], &a[2]), 0);
    }

    #[test]
    fn trig_tables_match_floats() {
        let s72 = (72f64).to_radians().sin();
        for m in 0..5 {
            let ang = (72.0 * m as f64).to_radians();
            let (a, b) = TWICE_SIN_RATIO[m];
            assert!((Quad5::new(a, b).to_f64() - 2.0 * ang.sin() / s72).abs() < 1e-12);
            let (a, b) = FOUR_COS[m];
            assert!((Quad5::new(a, b).to_f64() - 4.0 * ang.cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn constants() {
        assert!((d5() - 5.97).abs() < 0.005);
        assert!((d5_prime() - 3.08).abs() < 0.005);
    }
}
