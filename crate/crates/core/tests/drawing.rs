use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;

mod common;

use common::{random_weights, segments_cross};
use pentawood::drawing::{
    anchor_points, certify_planar, check_halfplane, check_rotational_symmetry, check_sectors, dot_sign, orient3,
    resolution, BaryPoint, DrawingJson, PentagonFrame, SymmetryError,
};
use pentawood::fixtures;
use pentawood::generate::{generate_random_5c, rotation_automorphism};
use pentawood::pipeline::run;
use pentawood::regions::WeightMode;

#[test]
fn w5_hub_at_center() {
    let t = fixtures::w5();
    for mode in [WeightMode::Faces, WeightMode::Vertices] {
        let p = run(&t, &mode, false).unwrap();
        let hub = &p.drawing.points[5];
        assert!(hub.num.iter().all(|x| x * 5 == hub.den));
        assert!(hub.xy.0.abs() < 1e-12 && hub.xy.1.abs() < 1e-12);
        let anchors = anchor_points(&p.drawing.frame);
        for (i, &v) in t.outer().iter().enumerate() {
            assert_eq!(p.drawing.points[v].weights(), anchors[i].weights());
        }
        assert!(certify_planar(&p.drawing, &t).ok());
        assert_eq!(check_rotational_symmetry(&p.drawing, rotation_automorphism(&t).as_deref()), Ok(true));
    }
}

#[test]
fn icosa11_minimal_drawing_is_symmetric() {
    let t = fixtures::icosa11();
    let rho = rotation_automorphism(&t).expect("rotation");
    let p = run(&t, &WeightMode::Faces, true).unwrap();
    let hub = t.inner_vertices().find(|&v| t.map().neighbors(v).all(|u| !t.is_outer(u))).unwrap();
    assert!(p.drawing.points[hub].xy.0.abs() < 1e-12 && p.drawing.points[hub].xy.1.abs() < 1e-12);
    let ring: Vec<(f64, f64)> = t.map().neighbors(hub).map(|u| p.drawing.points[u].xy).collect();
    let radius: Vec<f64> = ring.iter().map(|q| q.0.hypot(q.1)).collect();
    assert!(radius.iter().all(|r| (r - radius[0]).abs() < 1e-12 && *r > 0.0));
    assert_eq!(check_rotational_symmetry(&p.drawing, Some(&rho)), Ok(true));
    assert!(certify_planar(&p.drawing, &t).ok());
    let v = run(&t, &WeightMode::Vertices, true).unwrap();
    assert_eq!(check_rotational_symmetry(&v.drawing, Some(&rho)), Ok(true));
}

#[test]
fn asymmetric_instance_has_no_automorphism() {
    let t = generate_random_5c(30, 9, 2).unwrap();
    let rho = rotation_automorphism(&t);
    assert!(rho.is_none());
    let p = run(&t, &WeightMode::Faces, true).unwrap();
    assert_eq!(check_rotational_symmetry(&p.drawing, rho.as_deref()), Err(SymmetryError::NoAutomorphismProvided));
}

#[test]
fn drawings_are_planar_with_halfplanes_and_sectors() {
    for (k, n) in [11, 12, 14, 20, 35, 60, 100, 150, 200].into_iter().enumerate() {
        for seed in 0..2u64 {
            let t = generate_random_5c(n, 7 * seed + k as u64, 2).unwrap();
            for (m, mode) in [WeightMode::Faces, WeightMode::Vertices, random_weights(&t, seed)].into_iter().enumerate() {
                let p = run(&t, &mode, seed == 1).unwrap();
                assert!(certify_planar(&p.drawing, &t).ok());
                assert!(!segments_cross(&p.drawing, &t));
                if n <= 60 || m == 0 {
                    assert!(check_halfplane(&p.drawing, &t, &p.trees).ok(), "n={n} mode={}", mode.name());
                }
                assert!(check_sectors(&p.drawing, &t, &p.structures.wood).ok());
                let r = resolution(&p.drawing);
                if m < 2 {
                    assert_eq!(r.meets_bound, Some(true), "n={n} {:?}", r);
                }
            }
        }
    }
}

#[test]
fn perturbed_vertex_is_caught() {
    let t = generate_random_5c(40, 4, 2).unwrap();
    let p = run(&t, &WeightMode::Faces, false).unwrap();
    let g = t.map();
    let v = t.inner_vertices().next().unwrap();
    let u = g.neighbors(v).find(|&u| !t.is_outer(u)).unwrap();
    let mut d = p.drawing.clone();
    d.points.swap(u, v);
    let verdict = certify_planar(&d, &t);
    let f = verdict.failure.expect("flipped face");
    let corners = g.face_vertices(f);
    assert!(corners.contains(&u) || corners.contains(&v));
    assert!(segments_cross(&d, &t));
}

#[test]
fn sector_detector() {
    let t = generate_random_5c(25, 5, 2).unwrap();
    let p = run(&t, &WeightMode::Faces, false).unwrap();
    let g = t.map();
    let w = &p.structures.wood;
    let a = (0..g.n_darts()).find(|&a| w.color[a].is_some() && !t.is_outer(g.target(a))).unwrap();
    let i = w.color[a].unwrap() as usize;
    let (v, u) = (g.origin(a), g.target(a));
    let mut d = p.drawing.clone();
    let base = d.points[v].weights();
    let eps = BigRational::new(BigInt::one(), BigInt::from(1000));
    let toward: [BigRational; 5] = std::array::from_fn(|k| {
        let e = if k == (i + 2) % 5 { BigRational::one() } else { BigRational::from_integer(BigInt::from(0)) };
        &base[k] * (BigRational::one() - &eps) + e * &eps
    });
    d.points[u] = BaryPoint::from_rationals(&toward, &d.frame);
    let report = check_sectors(&d, &t, w);
    assert!(report.violations.contains(&(v, u, i as u8)));
}

#[test]
fn json_round_trip() {
    let t = fixtures::icosa11();
    let p = run(&t, &WeightMode::Vertices, false).unwrap();
    let j = DrawingJson::from(&p.drawing);
    let text = serde_json::to_string(&j).unwrap();
    let back: DrawingJson = serde_json::from_str(&text).unwrap();
    let d = back.to_drawing(&PentagonFrame::standard()).unwrap();
    for (a, b) in d.points.iter().zip(&p.drawing.points) {
        assert_eq!(a.weights(), b.weights());
    }
}

fn point(w: [u32; 5], frame: &PentagonFrame) -> BaryPoint {
    let total: u32 = w.iter().sum::<u32>().max(1);
    let mut num = w.map(BigInt::from);
    if w.iter().all(|&x| x == 0) {
        num[0] = BigInt::one();
    }
    BaryPoint::new(num, BigInt::from(total), frame)
}

proptest! {
    #[test]
    fn orient3_matches_floats(a in prop::array::uniform5(0u32..50), b in prop::array::uniform5(0u32..50), c in prop::array::uniform5(0u32..50)) {
        let f = PentagonFrame::standard();
        let (p, q, r) = (point(a, &f), point(b, &f), point(c, &f));
        let s = orient3(&p, &q, &r);
        prop_assert_eq!(s, -orient3(&q, &p, &r));
        prop_assert_eq!(s, orient3(&q, &r, &p));
        let fl = (q.xy.0 - p.xy.0) * (r.xy.1 - p.xy.1) - (q.xy.1 - p.xy.1) * (r.xy.0 - p.xy.0);
        if fl.abs() > 1e-9 {
            prop_assert_eq!(s as f64, fl.signum());
        }
        for i in 0..5 {
            let fd = f.anchors[i].0 * (q.xy.0 - p.xy.0) + f.anchors[i].1 * (q.xy.1 - p.xy.1);
            if fd.abs() > 1e-9 {
                prop_assert_eq!(dot_sign(i, &p, &q) as f64, fd.signum());
            }
        }
    }

    #[test]
    fn collinear_triples_are_degenerate(a in prop::array::uniform5(0u32..20), b in prop::array::uniform5(0u32..20), t in 0u32..=4) {
        let f = PentagonFrame::standard();
        let (p, q) = (point(a, &f), point(b, &f));
        let pw = p.weights();
        let qw = q.weights();
        let lam = BigRational::new(BigInt::from(t), BigInt::from(4));
        let mid: [BigRational; 5] = std::array::from_fn(|k| &pw[k] * (BigRational::one() - &lam) + &qw[k] * &lam);
        let r = BaryPoint::from_rationals(&mid, &f);
        prop_assert_eq!(orient3(&p, &q, &r), 0);
        prop_assert!(r.den.to_f64().unwrap() > 0.0);
    }
}
