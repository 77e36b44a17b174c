use std::path::Path;
use std::process::{Command, Output};

fn pentawood(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pentawood"))
        .args(args)
        .env("PENTAWOOD_FIXTURES", concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures"))
        .output()
        .expect("run pentawood")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn validate_exit_codes() {
    assert_eq!(pentawood(&["validate", "@w5"]).status.code(), Some(0));
    let bad = pentawood(&["validate", "@non5c"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("witness: cycle"));
    let dir = tempfile::tempdir().unwrap();
    let truncated = dir.path().join("t.json");
    std::fs::write(&truncated, "{\"vertices\": 6, \"rot\": [[1,").unwrap();
    assert_eq!(pentawood(&["validate", p(&truncated)]).status.code(), Some(2));
    assert_eq!(pentawood(&["validate", p(&dir.path().join("missing.json"))]).status.code(), Some(2));
}

#[test]
fn construct_and_validate_structures() {
    let dir = tempfile::tempdir().unwrap();
    for emit in ["orientation", "labeling", "wood"] {
        let out = dir.path().join(format!("{emit}.json"));
        let o = pentawood(&["construct", "@icosa11", "--minimize", "--emit", emit, "-o", p(&out)]);
        assert!(o.status.success());
        let text = std::fs::read_to_string(&out).unwrap();
        assert!(text.contains(&format!("\"format\": \"{emit}\"")));
        let v = pentawood(&["validate", "@icosa11", "--structure", p(&out)]);
        assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    }
    let wood = dir.path().join("wood.json");
    let text = std::fs::read_to_string(&wood).unwrap();
    let broken = text.replacen("\"color\": 1", "\"color\": 2", 1);
    assert_ne!(broken, text);
    std::fs::write(&wood, broken).unwrap();
    let v = pentawood(&["validate", "@icosa11", "--structure", p(&wood)]);
    assert_eq!(v.status.code(), Some(1));
    assert!(stdout(&v).contains("violation"));
    assert_eq!(pentawood(&["construct", "@non5c"]).status.code(), Some(1));
}

#[test]
fn gen_is_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        assert!(pentawood(&["gen", "--n", "60", "--seed", "11", "--count", "3", "--out", p(d.path())]).status.success());
    }
    for s in 11..14 {
        let name = format!("n60-s{s}.json");
        let x = std::fs::read(a.path().join(&name)).unwrap();
        assert_eq!(x, std::fs::read(b.path().join(&name)).unwrap());
        assert_eq!(pentawood(&["validate", p(&a.path().join(&name))]).status.code(), Some(0));
    }
    assert!(pentawood(&["gen", "--n", "6", "--out", p(a.path())]).status.success());
    assert_eq!(pentawood(&["gen", "--n", "8", "--out", p(a.path())]).status.code(), Some(1));
}

#[test]
fn draw_check_passes() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("d.svg");
    let json = dir.path().join("d.json");
    let o = pentawood(&["draw", "@icosa11", "--minimize", "--check", "--overlay", "--svg", p(&svg), "--json", p(&json)]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    for line in ["planar: certified", "halfplane: ok", "sectors: ok", "acyclicity: ok", "rotational symmetry present", "verdict: PASS"] {
        assert!(out.contains(line), "missing {line:?} in {out}");
    }
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    let d: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(d["vertices"].as_array().unwrap().len(), 11);

    let o = pentawood(&["draw", "@icosa11", "--mode", "vertices", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"mode\": \"vertices\""));
}

#[test]
fn draw_weighted() {
    let dir = tempfile::tempdir().unwrap();
    let weights = dir.path().join("w.json");
    let names = ["f0-1-5", "f1-2-5", "f2-3-5", "f3-4-5", "f0-4-5"];
    let obj: serde_json::Map<String, serde_json::Value> =
        names.iter().enumerate().map(|(k, n)| (n.to_string(), format!("{}/3", k + 1).into())).collect();
    std::fs::write(&weights, serde_json::Value::Object(obj).to_string()).unwrap();
    let o = pentawood(&["draw", "@w5", "--mode", "weighted", "--weights", p(&weights), "--check"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(pentawood(&["draw", "@w5", "--mode", "weighted"]).status.code(), Some(2));
}

#[test]
fn stats_table_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let o = pentawood(&["stats", "@w5", "@icosa11", "--csv", p(&csv)]);
    assert!(o.status.success());
    let mut r = csv::Reader::from_path(&csv).unwrap();
    let headers = r.headers().unwrap().clone();
    let faces = headers.iter().position(|h| h == "inner_faces").unwrap();
    let got: Vec<String> = r.records().map(|x| x.unwrap()[faces].to_string()).collect();
    assert_eq!(got, ["5", "15"]);
    let o = pentawood(&["stats", "@icosa11", "@non5c"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not5c"));
}

#[test]
fn w5_wood_has_five_colored_arcs() {
    let o = pentawood(&["construct", "@w5", "--emit", "wood"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let colored = v["arcs"].as_array().unwrap().iter().filter(|a| !a["color"].is_null()).count();
    assert_eq!(colored, 5);
}

#[test]
fn outputs_are_bit_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.svg"), dir.path().join("b.svg"));
    for out in [&a, &b] {
        assert!(pentawood(&["draw", "@icosa11", "--overlay", "--svg", p(out)]).status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    for emit in ["orientation", "labeling", "wood"] {
        let x = pentawood(&["construct", "@icosa11", "--emit", emit]).stdout;
        assert_eq!(x, pentawood(&["construct", "@icosa11", "--emit", emit]).stdout);
    }
}

#[test]
fn generated_batch_validates_and_meets_bound() {
    let dir = tempfile::tempdir().unwrap();
    assert!(pentawood(&["gen", "--n", "100", "--count", "10", "--seed", "7", "--out", p(dir.path())]).status.success());
    let files: Vec<String> =
        std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path().to_str().unwrap().to_string()).collect();
    assert_eq!(files.len(), 10);
    for f in &files {
        assert_eq!(pentawood(&["validate", f]).status.code(), Some(0));
    }
    let big = tempfile::tempdir().unwrap();
    assert!(pentawood(&["gen", "--n", "500", "--count", "10", "--seed", "1", "--out", p(big.path())]).status.success());
    let csv = dir.path().join("stats.csv");
    let mut args = vec!["stats".to_string(), "--csv".into(), p(&csv).into()];
    args.extend(std::fs::read_dir(big.path()).unwrap().map(|e| e.unwrap().path().to_str().unwrap().to_string()));
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    assert!(pentawood(&args).status.success());
    let mut r = csv::Reader::from_path(&csv).unwrap();
    let col = r.headers().unwrap().iter().position(|h| h == "meets_bound").unwrap();
    let rows: Vec<String> = r.records().map(|x| x.unwrap()[col].to_string()).collect();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|x| x == "true"));
}
