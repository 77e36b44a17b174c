use pentawood_wasm::{certify_text, draw_svg, generate_json};

#[test]
fn generate_draw_certify() {
    let rs = generate_json(40, 5, "").unwrap();
    assert!(rs.contains("\"vertices\": 40"));
    for mode in ["faces", "vertices"] {
        for minimize in [false, true] {
            let svg = draw_svg(&rs, mode, minimize, true, 400.0).unwrap();
            assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
            let report = certify_text(&rs, mode, minimize).unwrap();
            assert!(report.contains("planar: certified") && report.contains("sectors: ok"), "{report}");
        }
    }
}

#[test]
fn fixtures_and_errors() {
    let w5 = generate_json(0, 0, "w5").unwrap();
    assert!(certify_text(&w5, "faces", false).unwrap().contains("inner faces: 5"));
    assert!(generate_json(0, 0, "nope").is_err());
    assert!(draw_svg(&w5, "weighted", false, false, 100.0).is_err());
    assert!(draw_svg("{", "faces", false, false, 100.0).is_err());
    let non5c = generate_json(0, 0, "non5c").unwrap();
    assert!(certify_text(&non5c, "faces", false).unwrap_err().contains("5c"));
    assert!(generate_json(9, 0, "").is_err());
}
