use pentawood::construct::five_c_structures;
use pentawood::fixtures;
use pentawood::generate::generate_random_5c;
use pentawood::io::{
    labeling_file, orientation_file, read_labeling, read_orientation, read_wood, wood_file, FormatError,
    RotationSystem, StructureFile,
};
use pentawood::structures::{phi, theta_inv};

#[test]
fn rotation_system_round_trip() {
    for t in [fixtures::w5(), fixtures::icosa11(), fixtures::non5c(), generate_random_5c(50, 1, 2).unwrap()] {
        let rs = RotationSystem::of(&t);
        let text = rs.to_json();
        let back = RotationSystem::parse(&text).unwrap();
        assert_eq!(back, rs);
        let t2 = back.to_triangulation().unwrap();
        assert_eq!(t2.rotation_system(), t.rotation_system());
        assert_eq!(t2.outer(), t.outer());
    }
}

#[test]
fn malformed_rotation_systems() {
    assert!(matches!(RotationSystem::parse("{\"vertices\": 3, \"rot\": ["), Err(FormatError::Json(_))));
    assert!(matches!(
        RotationSystem::parse("{\"vertices\": 2, \"rot\": [[1]], \"outer\": []}"),
        Err(FormatError::Content(_))
    ));
    assert!(matches!(
        RotationSystem::parse("{\"vertices\": 1, \"rot\": [[4]], \"outer\": []}"),
        Err(FormatError::Content(_))
    ));
    let mut rs = RotationSystem::of(&fixtures::w5());
    rs.outer = vec![0, 2, 1, 3, 4];
    assert!(matches!(rs.to_triangulation(), Err(FormatError::Triangulation(_))));
}

#[test]
fn structure_files_round_trip() {
    for t in [fixtures::w5(), fixtures::icosa11(), generate_random_5c(60, 2, 2).unwrap()] {
        let s = five_c_structures(&t, false).unwrap();
        let c = &s.completion;
        let of = serde_json::to_string(&orientation_file(&t, c, &s.orientation)).unwrap();
        let lf = serde_json::to_string(&labeling_file(&t, &s.labeling)).unwrap();
        let wf = serde_json::to_string(&wood_file(&t, &s.wood)).unwrap();
        let StructureFile::Orientation(o) = StructureFile::parse(&of).unwrap() else { panic!() };
        let StructureFile::Labeling(l) = StructureFile::parse(&lf).unwrap() else { panic!() };
        let StructureFile::Wood(w) = StructureFile::parse(&wf).unwrap() else { panic!() };
        let o = read_orientation(&t, c, &o).unwrap();
        let l = read_labeling(&t, &l).unwrap();
        let w = read_wood(&t, &w).unwrap();
        assert_eq!(o, s.orientation);
        assert_eq!(l, s.labeling);
        assert_eq!(w, s.wood);
        let from_wood = phi(&t, c, &theta_inv(&t, &w).unwrap()).unwrap();
        assert_eq!(serde_json::to_string(&orientation_file(&t, c, &from_wood)).unwrap(), of);
    }
}

#[test]
fn w5_wood_has_five_colored_arcs() {
    let t = fixtures::w5();
    let s = five_c_structures(&t, false).unwrap();
    let w = wood_file(&t, &s.wood);
    assert_eq!(w.arcs.len(), 10);
    assert_eq!(w.arcs.iter().filter(|a| a.color.is_some()).count(), 5);
    assert!(w.arcs.iter().filter_map(|a| a.color.map(|k| (a.from, a.to, k))).all(|(f, to, k)| f == 5 && to + 1 == k as usize));
}

#[test]
fn bad_structure_files() {
    let t = fixtures::w5();
    let s = five_c_structures(&t, false).unwrap();
    assert!(matches!(StructureFile::parse("{\"format\": \"tree\"}"), Err(FormatError::Content(_))));
    let mut w = wood_file(&t, &s.wood);
    w.arcs[0].color = Some(9);
    assert!(read_wood(&t, &w).is_err());
    let mut o = orientation_file(&t, &s.completion, &s.orientation);
    o.arcs[0].to = "v99".into();
    assert!(read_orientation(&t, &s.completion, &o).is_err());
    let mut l = labeling_file(&t, &s.labeling);
    l.corners[0].to = l.corners[0].from;
    assert!(read_labeling(&t, &l).is_err());
}
