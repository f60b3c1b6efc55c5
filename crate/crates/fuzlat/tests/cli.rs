//! End-to-end runs of the `fuzlat` binary against the shipped fixtures.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn fuzlat(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fuzlat"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&output.stdout)
        )
    })
}

#[test]
fn check_passes_on_the_worked_lattices() {
    let tmp = tempdir();
    for (name, bottom, top) in [("chain4.json", "w1", "z1"), ("diamond4.json", "w2", "z2")] {
        let out = fuzlat(&["check", fixture(name).to_str().unwrap()], &tmp);
        assert_eq!(out.status.code(), Some(0), "{name}");
        let json = stdout_json(&out);
        assert_eq!(json["lattice"]["certified"], true);
        assert_eq!(json["lattice"]["bottom"], bottom);
        assert_eq!(json["lattice"]["top"], top);
    }
}

#[test]
fn check_loads_csv_fixtures_too() {
    let tmp = tempdir();
    let out = fuzlat(&["check", fixture("chain4.csv").to_str().unwrap()], &tmp);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn check_fails_with_witnesses_on_the_lukasiewicz_product() {
    let tmp = tempdir();
    let out = fuzlat(
        &[
            "check",
            fixture("chain4_diamond4_lukasiewicz.json")
                .to_str()
                .unwrap(),
        ],
        &tmp,
    );
    assert_eq!(out.status.code(), Some(1));
    let json = stdout_json(&out);
    assert_eq!(json["lattice"]["certified"], false);
    assert_eq!(json["lattice"]["error"]["kind"], "NotPoset");
    let items = json["poset"]["items"].as_array().unwrap();
    let transitive = items.iter().find(|i| i["name"] == "transitive").unwrap();
    assert_eq!(transitive["holds"], false);
    assert!(!transitive["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn product_reproduces_the_shipped_minimum_fixture() {
    let tmp = tempdir();
    let out_path = tmp.join("built.json");
    let out = fuzlat(
        &[
            "product",
            fixture("chain4.json").to_str().unwrap(),
            fixture("diamond4.json").to_str().unwrap(),
            "--tnorm",
            "minimum",
            "-o",
            out_path.to_str().unwrap(),
        ],
        &tmp,
    );
    assert_eq!(out.status.code(), Some(0));
    let built: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let shipped: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(fixture("chain4_diamond4_min.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(built["elements"], shipped["elements"]);
    assert_eq!(built["mu"], shipped["mu"]);
}

#[test]
fn product_rejects_unknown_tnorm_as_usage_error() {
    let tmp = tempdir();
    let out = fuzlat(
        &[
            "product",
            fixture("chain4.json").to_str().unwrap(),
            "--tnorm",
            "drastic",
        ],
        &tmp,
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn witness_intransitivity_reports_the_documented_triple() {
    let tmp = tempdir();
    let out = fuzlat(
        &[
            "witness-intransitivity",
            fixture("chain4_diamond4_lukasiewicz.json")
                .to_str()
                .unwrap(),
        ],
        &tmp,
    );
    // a found witness is a failed transitivity check
    assert_eq!(out.status.code(), Some(1));
    let json = stdout_json(&out);
    assert_eq!(
        json["witness"]["labels"],
        serde_json::json!(["w1w2", "x1w2", "x1x2"])
    );

    let out = fuzlat(
        &[
            "witness-intransitivity",
            fixture("chain4_diamond4_min.json").to_str().unwrap(),
        ],
        &tmp,
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["witness"], serde_json::Value::Null);
}

#[test]
fn meet_and_join_answer_by_label() {
    let tmp = tempdir();
    let out = fuzlat(
        &[
            "meet",
            fixture("diamond4.json").to_str().unwrap(),
            "x2",
            "y2",
        ],
        &tmp,
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["meet"], "w2");

    let out = fuzlat(
        &[
            "join",
            fixture("diamond4.json").to_str().unwrap(),
            "x2",
            "y2",
        ],
        &tmp,
    );
    assert_eq!(stdout_json(&out)["join"], "z2");

    let out = fuzlat(
        &[
            "meet",
            fixture("diamond4.json").to_str().unwrap(),
            "x2",
            "nope",
        ],
        &tmp,
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes_product_closure_and_fails_lukasiewicz_closure() {
    let tmp = tempdir();
    let out = fuzlat(
        &[
            "verify",
            "--theorem",
            "Thm4_8",
            "--trials",
            "200",
            "--seed",
            "42",
        ],
        &tmp,
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let json = stdout_json(&out);
    assert_eq!(json["pass"], true);
    assert_eq!(json["failures"], 0);

    // forcing the lukasiewicz realization produces bundled counterexamples
    let out = fuzlat(
        &[
            "verify",
            "--theorem",
            "product-closure",
            "--trials",
            "6",
            "--seed",
            "9",
            "--tnorm",
            "lukasiewicz",
            "--out-dir",
            "bundles",
        ],
        &tmp,
    );
    assert_eq!(out.status.code(), Some(1));
    let json = stdout_json(&out);
    assert_eq!(json["pass"], false);
    let bundles = json["bundles"].as_array().unwrap();
    assert!(!bundles.is_empty());
    for path in bundles {
        let text = std::fs::read_to_string(tmp.join(path.as_str().unwrap())).unwrap();
        let bundle: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(bundle["factors"].as_array().unwrap().len() >= 2);
        assert_eq!(bundle["tnorm"], "lukasiewicz");
    }
}

#[test]
fn verify_thm4_4_finds_counterexamples() {
    let tmp = tempdir();
    let out = fuzlat(
        &[
            "verify",
            "--theorem",
            "Thm4_4",
            "--trials",
            "5",
            "--seed",
            "3",
        ],
        &tmp,
    );
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    let notes = json["notes"].as_array().unwrap();
    assert!(notes[0]
        .as_str()
        .unwrap()
        .starts_with("transitivity failed in"));
}

#[test]
fn gen_emits_a_certifiable_fixture_reproducibly() {
    let tmp = tempdir();
    let out = fuzlat(&["gen", "--seed", "11", "-o", "a.json"], &tmp);
    assert_eq!(out.status.code(), Some(0));
    let out = fuzlat(&["gen", "--seed", "11", "-o", "b.json"], &tmp);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        std::fs::read_to_string(tmp.join("a.json")).unwrap(),
        std::fs::read_to_string(tmp.join("b.json")).unwrap()
    );
    let out = fuzlat(&["check", "a.json"], &tmp);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn hom_checks_a_label_map() {
    let tmp = tempdir();
    std::fs::write(
        tmp.join("map.json"),
        r#"{"w1": "w2", "x1": "w2", "y1": "w2", "z1": "z2"}"#,
    )
    .unwrap();
    let out = fuzlat(
        &[
            "hom",
            fixture("chain4.json").to_str().unwrap(),
            fixture("diamond4.json").to_str().unwrap(),
            "--map",
            "map.json",
        ],
        &tmp,
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(stdout_json(&out)["pass"], true);

    std::fs::write(
        tmp.join("bad.json"),
        r#"{"w1": "z2", "x1": "x2", "y1": "y2", "z1": "w2"}"#,
    )
    .unwrap();
    let out = fuzlat(
        &[
            "hom",
            fixture("chain4.json").to_str().unwrap(),
            fixture("diamond4.json").to_str().unwrap(),
            "--map",
            "bad.json",
        ],
        &tmp,
    );
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["pass"], false);
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!(
        "fuzlat-cli-test-{}-{:?}",
        std::process::id(),
        std::thread::current().id()
    ));
    std::fs::create_dir_all(&dir).expect("tempdir");
    dir
}
