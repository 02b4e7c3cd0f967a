use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn confblocks(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_confblocks"))
        .args(args)
        .env_remove("BLOCKS_BRUTE_CAP")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_kind(o: &Output) -> String {
    let v: serde_json::Value = serde_json::from_slice(&o.stderr).expect("stderr is JSON");
    assert!(v["message"].is_string());
    v["error"].as_str().unwrap().to_string()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn dim_closed_surfaces() {
    let (ising, fib) = (fixture("ising.json"), fixture("fibonacci.json"));
    assert_eq!(
        stdout(&confblocks(&[
            "dim",
            "--ring",
            &ising,
            "--surface",
            &fixture("genus2.json")
        ])),
        "10\n"
    );
    assert_eq!(
        stdout(&confblocks(&[
            "dim",
            "--ring",
            &fib,
            "--surface",
            &fixture("genus2.json")
        ])),
        "5\n"
    );
    assert_eq!(
        stdout(&confblocks(&[
            "dim",
            "--ring",
            &ising,
            "--surface",
            &fixture("genus3.json")
        ])),
        "36\n"
    );
    assert_eq!(
        stdout(&confblocks(&[
            "dim",
            "--ring",
            &fib,
            "--surface",
            &fixture("torus.json")
        ])),
        "2\n"
    );
    assert_eq!(
        stdout(&confblocks(&[
            "dim",
            "--ring",
            &ising,
            "--surface",
            &fixture("sphere.json")
        ])),
        "1\n"
    );
}

#[test]
fn dim_labels() {
    let ising = fixture("ising.json");
    let out = confblocks(&["dim", "--ring", &ising, "--surface", &fixture("sphere4_sigma.json")]);
    assert_eq!(stdout(&out), "2\n");
    let out = confblocks(&[
        "dim",
        "--ring",
        &ising,
        "--surface",
        &fixture("sphere4.json"),
        "--labels",
        "sigma,sigma,psi,1",
    ]);
    assert_eq!(stdout(&out), "1\n");
    let out = confblocks(&[
        "dim",
        "--ring",
        &ising,
        "--surface",
        &fixture("sphere4.json"),
        "--labels",
        "sigma,psi,1,1",
    ]);
    assert_eq!(stdout(&out), "0\n");
    let out = confblocks(&["dim", "--ring", &ising, "--surface", &fixture("sphere4.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "ValidationError");
    let out = confblocks(&[
        "dim",
        "--ring",
        &ising,
        "--surface",
        &fixture("pants.json"),
        "--labels",
        "sigma,tau,1",
    ]);
    assert_eq!(error_kind(&out), "UnknownLabel");
    let out = confblocks(&[
        "dim",
        "--ring",
        &ising,
        "--surface",
        &fixture("pants.json"),
        "--labels",
        "sigma",
    ]);
    assert_eq!(error_kind(&out), "LabelingLength");
}

#[test]
fn dim_all_prints_the_tensor() {
    let out = confblocks(&[
        "dim",
        "--ring",
        &fixture("ising.json"),
        "--surface",
        &fixture("cylinder.json"),
        "--all",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["boundary"], serde_json::json!(["+", "-"]));
    assert_eq!(v["entries"], serde_json::json!([1, 0, 0, 0, 1, 0, 0, 0, 1]));
}

#[test]
fn brute_force_respects_the_cap() {
    let args = [
        "dim",
        "--ring",
        &fixture("ising.json"),
        "--surface",
        &fixture("genus3.json"),
        "--brute-force",
    ];
    let args: Vec<&str> = args.iter().map(|s| s.as_ref()).collect();
    assert_eq!(stdout(&confblocks(&args)), "36\n");
    let capped = Command::new(env!("CARGO_BIN_EXE_confblocks"))
        .args(&args)
        .env("BLOCKS_BRUTE_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert_eq!(error_kind(&capped), "CapExceeded");
}

#[test]
fn malformed_input_exits_2() {
    let bad = scratch("malformed.json", "{\"name\": ");
    let out = confblocks(&[
        "dim",
        "--ring",
        bad.to_str().unwrap(),
        "--surface",
        &fixture("genus2.json"),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "ParseError");
    assert!(out.stdout.is_empty());

    let out = confblocks(&[
        "dim",
        "--ring",
        "/nonexistent/ring.json",
        "--surface",
        &fixture("genus2.json"),
    ]);
    assert_eq!(error_kind(&out), "IoError");

    let out = confblocks(&["dim", "--ring", &fixture("ising.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "UsageError");

    let out = confblocks(&[
        "dim",
        "--ring",
        &fixture("genus2.json"),
        "--surface",
        &fixture("genus2.json"),
    ]);
    assert_eq!(error_kind(&out), "ParseError");
}

#[test]
fn invalid_decomposition_exits_2() {
    let doc = r#"{"genus": 0, "boundary": [{"orientation": "+"}, {"orientation": "-"}],
        "decomposition": {"atoms": [{"kind": "cylinder", "legs": [{"sign": 1}, {"sign": 1}]}],
        "internal_edges": [], "external": ["0.0", "0.1"]}}"#;
    let path = scratch("flag_mismatch.json", doc);
    let out = confblocks(&[
        "dim",
        "--ring",
        &fixture("ising.json"),
        "--surface",
        path.to_str().unwrap(),
        "--all",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "InvalidDecomposition");
}

#[test]
fn glue_outputs_a_surface_document() {
    let ising = fixture("ising.json");
    let out = confblocks(&[
        "glue",
        "--ring",
        &ising,
        "--a",
        &fixture("pants.json"),
        "--b",
        &fixture("pants_mixed.json"),
        "--match",
        "2:1",
    ]);
    assert!(out.status.success());
    let glued = scratch("glued.json", &stdout(&out));
    let dim = confblocks(&[
        "dim",
        "--ring",
        &ising,
        "--surface",
        glued.to_str().unwrap(),
        "--labels",
        "sigma,sigma,sigma,sigma",
    ]);
    assert_eq!(stdout(&dim), "2\n");

    let out = confblocks(&[
        "glue",
        "--ring",
        &ising,
        "--a",
        &fixture("torus1.json"),
        "--b",
        &fixture("pants_mixed.json"),
        "--match",
        "0:1",
        "--verify",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["surface"]["genus"], 1);
    assert_eq!(v["factorization"]["equal"], true);
    assert_eq!(v["factorization"]["labelings"], 9);

    let out = confblocks(&[
        "glue",
        "--ring",
        &ising,
        "--a",
        &fixture("pants.json"),
        "--b",
        &fixture("pants.json"),
        "--match",
        "0:0",
    ]);
    assert_eq!(error_kind(&out), "OrientationMismatch");
    let out = confblocks(&[
        "glue",
        "--ring",
        &ising,
        "--a",
        &fixture("pants.json"),
        "--b",
        &fixture("pants.json"),
        "--match",
        "0-0",
    ]);
    assert_eq!(error_kind(&out), "UsageError");
}

#[test]
fn verify_moves_is_seeded() {
    let args = |seed: &'static str| {
        confblocks(&[
            "verify-moves",
            "--ring",
            &fixture("su2_3.json"),
            "--surface",
            &fixture("genus2.json"),
            "--flips",
            "10",
            "--seed",
            seed,
        ])
    };
    let (a, b, c) = (args("5"), args("5"), args("6"));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["steps"].as_array().unwrap().len(), 10);
    assert_eq!(v["equal"], true);
}

#[test]
fn modularity_reports() {
    let out = confblocks(&["modularity", "--ring", &fixture("z2_boson.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["is_modular"], false);
    assert_eq!(v["transparent_labels"], serde_json::json!(["1", "b"]));
    assert!(v.get("cross_check").is_none());

    let out = confblocks(&["modularity", "--ring", &fixture("ising.json"), "--genus-max", "4"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["is_modular"], true);
    let sums: Vec<u64> = v["cross_check"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["state_sum"].as_u64().unwrap())
        .collect();
    assert_eq!(sums, [1, 3, 10, 36, 136]);

    let out = confblocks(&["modularity", "--ring", &fixture("ising.json"), "--genus-max", "5"]);
    assert_eq!(error_kind(&out), "GenusTooLarge");
}

#[test]
fn modularity_needs_an_s_matrix() {
    let text = std::fs::read_to_string(fixture("fibonacci.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v.as_object_mut().unwrap().remove("s_matrix");
    let path = scratch("fib_plain.json", &v.to_string());
    let out = confblocks(&["modularity", "--ring", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "ValidationError");
    let out = confblocks(&[
        "dim",
        "--ring",
        path.to_str().unwrap(),
        "--surface",
        &fixture("genus2.json"),
    ]);
    assert_eq!(stdout(&out), "5\n");
}

#[test]
fn catalog_commands() {
    let out = confblocks(&["catalog", "--list"]);
    let names: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert!(names.contains(&"ising".to_string()) && names.contains(&"z2_boson".to_string()));
    let out = confblocks(&["catalog", "--emit", "su2_7"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"7\""));
    let out = confblocks(&["catalog", "--emit", "nope"]);
    assert_eq!(error_kind(&out), "UnknownCatalogName");
    assert_eq!(confblocks(&["catalog"]).status.code(), Some(2));
}
