mod common;

use std::collections::HashSet;

use pentawood::fixtures;
use pentawood::structures::{self, CornerLabeling, FiveCOrientation, LabelingViolation, WoodViolation};
use pentawood::triangulation::{Completion, FiveTriangulation, Role};

fn w5_labeling(t: &FiveTriangulation) -> CornerLabeling {
    let g = t.map();
    let mut label = vec![None; g.n_darts()];
    for c in 0..g.n_darts() {
        if !t.is_inner_corner(c) {
            continue;
        }
        let v = g.origin(c);
        label[c] = Some(match t.outer_index(v) {
            Some(i) => i as u8,
            // hub corner between the spokes to v_j and v_{j+1}
            None => (g.target(c) as u8 + 3) % 5,
        });
    }
    CornerLabeling { label }
}

fn valid_sets(t: &FiveTriangulation) -> (Vec<FiveCOrientation>, Vec<CornerLabeling>, usize) {
    let c = Completion::new(t);
    let orients = common::all_orientations(t, &c);
    let labels: Vec<CornerLabeling> =
        common::candidate_labelings(t).into_iter().filter(|l| l.validate(t).is_empty()).collect();
    let woods = common::candidate_woods(t).into_iter().filter(|w| w.validate(t).is_empty()).count();
    (orients, labels, woods)
}

#[test]
fn w5_has_exactly_one_structure() {
    let t = fixtures::w5();
    let (orients, labels, woods) = valid_sets(&t);
    assert_eq!(orients.len(), 1);
    assert_eq!(labels.len(), 1);
    assert_eq!(woods, 1);
    assert_eq!(labels[0], w5_labeling(&t));
}

#[test]
fn w5_labeling_maps() {
    let t = fixtures::w5();
    let c = Completion::new(&t);
    let l = w5_labeling(&t);
    assert!(l.validate(&t).is_empty());
    let o = structures::phi(&t, &c, &l).unwrap();
    assert!(o.validate(&t, &c).is_empty());
    let out = o.outdegrees(&c);
    assert_eq!(out[5], 5);
    for i in 0..5 {
        // x_i -> b_i
        let d = t.outer_dart(i);
        let s = c.spoke(t.map().twin(d)).unwrap();
        assert_eq!(o.dart[s], Some(2 * s));
    }
    assert_eq!(structures::phi_inv(&t, &c, &o).unwrap(), l);
    let w = structures::theta(&t, &l).unwrap();
    assert!(w.validate(&t).is_empty());
    for d in 0..t.map().n_darts() {
        let expected = (t.map().origin(d) == 5).then(|| t.map().target(d) as u8);
        assert_eq!(w.color[d], expected);
    }
    assert_eq!(structures::theta_inv(&t, &w).unwrap(), l);
    assert_eq!(structures::psi(&t, &c, &o).unwrap(), w);
}

#[test]
fn broken_labeling_is_reported() {
    let t = fixtures::w5();
    let mut l = w5_labeling(&t);
    let hub_corner = t.map().vertex_dart(5);
    l.label[hub_corner] = Some((l.get(hub_corner) + 1) % 5);
    let v = l.validate(&t);
    assert!(v.iter().any(|x| matches!(x, LabelingViolation::VertexIntervals { vertex: 5, .. })));
}

#[test]
fn broken_orientations_are_reported() {
    let t = fixtures::w5();
    let c = Completion::new(&t);
    let o = structures::phi(&t, &c, &w5_labeling(&t)).unwrap();
    // reverse the single outgoing edge of an inner edge-vertex
    let x = (0..c.n_vertices()).find(|&x| matches!(c.role(x), Role::Edge(e) if t.is_inner_edge(2 * e))).unwrap();
    let e = (0..c.n_edges()).find(|&e| o.dart[e].is_some_and(|d| c.map().origin(d) == x)).unwrap();
    let mut bad = o.clone();
    bad.dart[e] = Some(o.dart[e].unwrap() ^ 1);
    assert_eq!(bad.validate(&t, &c).len(), 2);
    // everything toward primal vertices
    let mut toward = o.clone();
    for e in 0..c.n_edges() {
        if o.dart[e].is_some() {
            let (a, b) = c.endpoints(e);
            let a_primal = matches!(c.role(a), Role::Primal(_));
            let b_primal = matches!(c.role(b), Role::Primal(_));
            if a_primal {
                toward.dart[e] = Some(2 * e + 1);
            } else if b_primal {
                toward.dart[e] = Some(2 * e);
            } else {
                // spokes: toward the edge-vertex
                let to_edge = matches!(c.role(b), Role::Edge(_));
                toward.dart[e] = Some(if to_edge { 2 * e } else { 2 * e + 1 });
            }
        }
    }
    let v = toward.validate(&t, &c);
    for x in 0..c.n_vertices() {
        if let Role::Dual(_) = c.role(x) {
            assert!(v.iter().any(|y| matches!(y, structures::OrientationViolation::OutDegree { vertex, .. } if *vertex == x)));
        }
    }
    assert!(structures::phi_inv(&t, &c, &bad).is_err() || !bad.validate(&t, &c).is_empty());
}

#[test]
fn w5_wood_rejects_extra_color() {
    let t = fixtures::w5();
    let mut w = structures::theta(&t, &w5_labeling(&t)).unwrap();
    let d = t.map().darts_around(0).find(|&d| t.map().target(d) == 5).unwrap();
    w.color[d] = Some(0);
    assert!(w.validate(&t).iter().any(|v| matches!(v, WoodViolation::StartsAtOuterVertex { .. })));
}

#[test]
fn icosa11_bijections_match_exhaustive_sets() {
    let t = fixtures::icosa11();
    let c = Completion::new(&t);
    let (orients, labels, woods) = valid_sets(&t);
    assert!(!orients.is_empty());
    assert_eq!(orients.len(), labels.len());
    assert_eq!(orients.len(), woods);
    let label_set: HashSet<CornerLabeling> = labels.iter().cloned().collect();
    let mut wood_set = HashSet::new();
    for o in &orients {
        let l = structures::phi_inv(&t, &c, o).unwrap();
        assert!(label_set.contains(&l));
        assert_eq!(&structures::phi(&t, &c, &l).unwrap(), o);
        let w = structures::theta(&t, &l).unwrap();
        assert!(w.validate(&t).is_empty());
        assert_eq!(structures::theta_inv(&t, &w).unwrap(), l);
        assert_eq!(structures::psi(&t, &c, o).unwrap(), w);
        wood_set.insert(w);
    }
    assert_eq!(wood_set.len(), woods);
    println!("icosa11 has {} 5c-orientations", orients.len());
}

#[test]
fn minimal_orientation_is_unique_sink() {
    let t = fixtures::icosa11();
    let c = Completion::new(&t);
    let orients = common::all_orientations(&t, &c);
    let minima: HashSet<FiveCOrientation> = orients.iter().map(|o| structures::minimize(&c, o)).collect();
    assert_eq!(minima.len(), 1);
    let m = minima.into_iter().next().unwrap();
    assert!(m.validate(&t, &c).is_empty());
    assert!(structures::ccw_faces(&c, &m).is_empty());
    assert_eq!(structures::minimize(&c, &m), m);
    let no_ccw: Vec<_> = orients.iter().filter(|o| structures::ccw_faces(&c, o).is_empty()).collect();
    assert!(no_ccw.contains(&&m));
}
