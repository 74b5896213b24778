use std::path::PathBuf;
use std::process::{Command, Output};

fn wsa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wsa")).args(args).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn triangle_is_cluster_tilting() {
    let out = wsa(&["cluster-check", "preset:triangle", "--lambda", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "three-cluster-tilting");
    assert_eq!(v["summands"].as_array().unwrap().len(), 6);
}

#[test]
fn n_spherical_fails_as_expected() {
    let out = wsa(&["cluster-check", "preset:n-spherical", "--n", "3", "--json", "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "fails-with-witness");
    assert_eq!(v["witness"]["non_split"], true);
}

#[test]
fn mismatch_exits_one() {
    let out = wsa(&["cluster-check", "preset:triangular", "--k", "2", "--expect", "three-cluster-tilting"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn input_errors_exit_two() {
    for args in [
        &["ext", "preset:spherical", "--left", "U(1)", "--right", "S(1)", "--degree", "1"][..],
        &["ext", "preset:spherical", "--left", "U(1)"],
        &["ext", "preset:spherical", "--left", "S(9)", "--right", "S(1)", "--degree", "1"],
        &["cluster-check", "preset:torus"],
        &["algebra", "triangle", "--lambda", "1"],
        &["validate", "triangle", "--field", "gf:100"],
    ] {
        let out = wsa(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn ext_expressions() {
    let out = wsa(&[
        "ext",
        "preset:triangular",
        "--left",
        "U(2,1,2)",
        "--right",
        "U(2,3,2)",
        "--degree",
        "1",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["dim"], 1);
    let out = wsa(&["ext", "triangle", "--left", "Omega^2(S(1))", "--right", "S(2)", "--degree", "2"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "dim Ext^2(Omega^2(S(1)), S(2)) = 0");
}

#[test]
fn export_then_validate() {
    let path = std::env::temp_dir().join(format!("wsa-export-{}.toml", std::process::id()));
    let p = path.to_str().unwrap();
    let out = wsa(&["export", "preset:mixed", "--lambda", "3", "-o", p]);
    assert_eq!(out.status.code(), Some(0));
    let a = json(&wsa(&["validate", p, "--json"]));
    let b = json(&wsa(&["validate", "preset:mixed", "--lambda", "3", "--json"]));
    assert_eq!(a["g_cycles"], b["g_cycles"]);
    assert_eq!(a["vertex_dims"], b["vertex_dims"]);
    let c = json(&wsa(&["cluster-check", p, "--json"]));
    assert_eq!(c["verdict"], "fails-with-witness");
    assert!(c["expected"].is_null());
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn algebra_dump() {
    let out = wsa(&["algebra", "triangle", "--dump", "--json"]);
    let v = json(&out);
    assert_eq!(v["dim"], 20);
    assert_eq!(v["basis"].as_array().unwrap().len(), 20);
    assert_eq!(v["symmetric"]["symmetric"], true);
}

/// Reports for every preset, compared byte for byte with the files in
/// `tests/golden`. Run with `UPDATE_GOLDEN=1` to rewrite them.
#[test]
fn golden_reports() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let cases: [(&str, &[&str]); 6] = [
        ("triangle", &["preset:triangle"]),
        ("triangular-k2", &["preset:triangular", "--k", "2"]),
        ("spherical", &["preset:spherical"]),
        ("n-spherical-n3", &["preset:n-spherical", "--n", "3"]),
        ("n-spherical-n2", &["preset:n-spherical", "--n", "2"]),
        ("mixed-n1", &["preset:mixed", "--n", "1"]),
    ];
    for (name, target) in cases {
        let mut args = vec!["cluster-check", "--json", "--audit"];
        args.extend_from_slice(target);
        let out = wsa(&args);
        assert_eq!(out.status.code(), Some(0), "{name}");
        let file = dir.join(format!("{name}.json"));
        if std::env::var_os("UPDATE_GOLDEN").is_some() {
            std::fs::write(&file, &out.stdout).unwrap();
        }
        let golden = std::fs::read(&file).unwrap();
        assert!(golden == out.stdout, "{name} differs from {}", file.display());
    }
}

#[test]
fn reports_match_schema() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas/cluster-report.v1.json");
    let schema: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(root).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{}: {errors:?}", path.display());
    }
    let plain = json(&wsa(&["cluster-check", "triangle", "--json", "--field", "gf:101"]));
    assert!(validator.is_valid(&plain));
}
