use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hive-forge"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../schemas")
        .join(format!("{name}.json"));
    let text = std::fs::read_to_string(&path).expect("schema file");
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).expect("valid schema")
}

fn assert_schema(name: &str, v: &Value) {
    let errors: Vec<String> = schema(name).iter_errors(v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
}

#[test]
fn mgs_examples() {
    let out = run(&["mgs", "--n", "4", "--verify"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["length"], 4);
    assert_eq!(v["certificate"]["all_red"], true);
    assert_schema("mgs", &v);

    let out = run(&["mgs", "--n", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["sequence"], serde_json::json!([]));

    assert_eq!(code(&run(&["mgs", "--n", "0"])), 2);
    assert_eq!(code(&run(&["mgs"])), 2);
}

#[test]
fn potential_examples() {
    let v = json(&run(&["potential", "--n", "4"]));
    assert_eq!(v["terms"], 18);
    assert_schema("potential", &v);
    let v = json(&run(&["potential", "--n", "4", "--frozen", "1,3,0"]));
    assert_eq!(v["terms"], 3);
    assert_schema("potential", &v);
    let v = json(&run(&["potential", "--n", "4", "--variant", "U"]));
    assert_eq!(v["terms"], 6);
    assert_eq!(
        code(&run(&["potential", "--n", "4", "--frozen", "2,1,1"])),
        2
    );
    assert_eq!(code(&run(&["potential", "--n", "4", "--frozen", "2,1"])), 2);
}

#[test]
fn cone_examples() {
    let v = json(&run(&["cone", "--n", "4", "--which", "hive"]));
    assert_eq!(v["inequalities"].as_array().unwrap().len(), 18);
    assert_eq!(v["ambient"], "top_normalized");
    assert_schema("cone", &v);

    let out = run(&["cone", "--n", "3", "--which", "xi", "--rays"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let rays = v["rays"]["rays"].as_array().unwrap();
    assert!(!rays.is_empty());
    assert!(rays.iter().all(|r| r["kind"] != "unclassified"));
    assert_schema("cone", &v);

    for which in ["xi-a", "xi-u", "gt"] {
        let v = json(&run(&["cone", "--n", "3", "--which", which, "--rays"]));
        assert_schema("cone", &v);
    }

    let out = run(&["cone", "--n", "9", "--which", "xi", "--rays"]);
    assert_eq!(code(&out), 3);
    assert!(out.stdout.is_empty());
    assert_eq!(code(&run(&["cone", "--n", "3", "--which", "bogus"])), 2);
}

#[test]
fn count_examples() {
    let v = json(&run(&[
        "count", "--n", "3", "--alpha", "2,1,0", "--beta", "2,1,0", "--gamma", "-1,-2,-3",
    ]));
    for key in ["hive_count", "lr_oracle", "fiber_count"] {
        assert_eq!(v[key], 2, "{key}");
    }
    assert_eq!(v["agree"], true);
    assert_schema("count", &v);

    let v = json(&run(&[
        "count", "--n", "2", "--alpha", "0,0", "--beta", "0,0", "--gamma", "0,0",
    ]));
    assert_eq!(v["hive_count"], 1);

    let v = json(&run(&[
        "count", "--n", "2", "--alpha", "1,0", "--beta", "0,0", "--gamma", "0,0",
    ]));
    assert_eq!(
        (v["hive_count"].clone(), v["agree"].clone()),
        (0.into(), true.into())
    );

    let v = json(&run(&["count", "--n", "3", "--gt", "2,1,0"]));
    assert_eq!(v["gt_count"], 8);
    assert_schema("count", &v);

    let v = json(&run(&["count", "--n", "3", "--lr", "2,1", "2,1", "3,2,1"]));
    assert_eq!(v["lr_coefficient"], 2);
    assert_schema("count", &v);

    assert_eq!(
        code(&run(&[
            "count", "--n", "3", "--alpha", "1,0", "--beta", "0,0,0", "--gamma", "0,0,0"
        ])),
        2
    );
    assert_eq!(
        code(&run(&[
            "count", "--n", "2", "--alpha", "0,1", "--beta", "0,0", "--gamma", "-1,0"
        ])),
        2
    );
    assert_eq!(
        code(&run(&[
            "count", "--n", "2", "--alpha", "x,0", "--beta", "0,0", "--gamma", "0,0"
        ])),
        2
    );
    assert_eq!(code(&run(&["count", "--n", "2"])), 2);
}

#[test]
fn verify_all_passes() {
    for n_max in ["2", "4"] {
        let out = run(&["verify-all", "--n-max", n_max]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        let v = json(&out);
        assert_eq!(v["status"], "pass");
        assert_eq!(v["categories"].as_array().unwrap().len(), 10);
        assert_schema("verify_all", &v);
    }
    assert_eq!(code(&run(&["verify-all", "--n-max", "7"])), 3);
    assert_eq!(code(&run(&["verify-all", "--n-max", "1"])), 2);
}

#[test]
fn injected_sign_flip_fails_at_wgs() {
    let out = run(&["verify-all", "--n-max", "3", "--inject-sign-flip"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    let failed: Vec<&str> = v["categories"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["wgs"]);
    assert_schema("verify_all", &v);
}

#[test]
fn output_is_deterministic() {
    let args = ["cone", "--n", "4", "--which", "xi", "--rays"];
    let a = run(&args);
    let b = bin()
        .args(args)
        .env("HIVE_FORGE_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["verify-all", "--n-max", "3"]);
    let d = bin()
        .args(["verify-all", "--n-max", "3"])
        .env("HIVE_FORGE_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mgs.json");
    let out = run(&[
        "mgs",
        "--n",
        "3",
        "--verify",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read(&path).unwrap(), out.stdout);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}
