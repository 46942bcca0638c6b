//! End-to-end tests of the binary: argument handling, output shapes,
//! file round-trips, and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn thetakit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thetakit"))
        .args(args)
        .env_remove("THETAKIT_FORMAT")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn tmpfile(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("thetakit-test-{}-{name}", std::process::id()));
    path
}

#[test]
fn objects_listing_matches_the_canonical_enumeration() {
    let out = thetakit(&["objects", "--level", "2", "--max-degree", "2"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "[0]()\n[1]([0]())\n[1]([1](*))\n[2]([0](),[0]())\n"
    );
}

#[test]
fn hom_accepts_bare_monotone_maps_at_level_one() {
    let out = thetakit(&["hom", "--level", "1", "--from", "[1](*)", "--to", "[1](*)"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 3);

    let out = thetakit(&[
        "compose", "--level", "1", "--dom", "[2](*,*)", "--mid", "[1](*)", "--cod", "[1](*)",
        "--f", "[0,0,1]", "--g", "[0,1]",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "[0,0,1](;1)\n");
}

#[test]
fn factorize_reports_the_unique_factorization() {
    let out = thetakit(&[
        "factorize",
        "--level",
        "1",
        "--domain",
        "[2](*,*)",
        "--cod",
        "[2](*,*)",
        "--component",
        "[0,0,2]",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("minus: [0,0,1]"));
    assert!(text.contains("mid: [1](*)"));
    assert!(text.contains("plus[1]: [0,2]"));
}

#[test]
fn sections_of_a_collapse() {
    let out = thetakit(&[
        "sections", "--level", "1", "--dom", "[2](*,*)", "--cod", "[1](*)", "--f", "[0,0,1]",
        "--format", "json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["count"], 2);
}

#[test]
fn verify_exit_codes_and_json_shape() {
    let out = thetakit(&[
        "verify",
        "multireedy",
        "--level",
        "1",
        "--max-degree",
        "2",
        "--valence",
        "2",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["passed"], true);
    assert_eq!(value["check"], "multireedy");
    assert!(value["items"].as_array().unwrap().len() >= 10);

    // usage errors exit 2
    let out = thetakit(&["verify", "multireedy", "--level", "0", "--inner", "delta"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_is_byte_identical_across_runs_and_jobs() {
    let run = |jobs: &str| {
        stdout(&thetakit(&[
            "verify",
            "multireedy",
            "--level",
            "2",
            "--max-degree",
            "3",
            "--valence",
            "2",
            "--jobs",
            jobs,
        ]))
    };
    let once = run("1");
    assert_eq!(once, run("1"));
    assert_eq!(once, run("4"));
}

#[test]
fn sample_flag_reports_but_does_not_affect_verdict() {
    let out = thetakit(&[
        "verify",
        "ez",
        "--level",
        "1",
        "--inner",
        "delta",
        "--max-degree",
        "3",
        "--sample",
        "42",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("verdict: PASS"));
    assert!(text.contains("sample[ez] seed=42 bound=5: 200/200 ok"));
}

#[test]
fn presheaf_files_roundtrip_bit_exactly() {
    let square = tmpfile("sq.json");
    let out = thetakit(&[
        "presheaf",
        "product",
        "--level",
        "1",
        "--max-degree",
        "2",
        "--objects",
        "[1](*)",
        "[1](*)",
        "--out",
        square.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let first = std::fs::read_to_string(&square).unwrap();

    // classify on the reloaded file: the counts of the square
    let out = thetakit(&["presheaf", "classify", "--file", square.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "[0](): points=4 nondegenerate=4\n[1](*): points=9 nondegenerate=5\n[2](*,*): points=16 nondegenerate=2\n"
    );

    // writing the same presheaf again reproduces the bytes
    let out = thetakit(&[
        "presheaf",
        "product",
        "--level",
        "1",
        "--max-degree",
        "2",
        "--objects",
        "[1](*)",
        "[1](*)",
        "--out",
        square.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(first, std::fs::read_to_string(&square).unwrap());
    std::fs::remove_file(&square).ok();
}

#[test]
fn checke_rejects_corrupted_action_tables() {
    let file = tmpfile("f1.json");
    let out = thetakit(&[
        "presheaf",
        "yoneda",
        "--level",
        "1",
        "--max-degree",
        "2",
        "--object",
        "[1](*)",
        "--out",
        file.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    // corrupt one action entry: swap two distinct images of a
    // non-identity map
    let text = std::fs::read_to_string(&file).unwrap();
    let mut value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let entries = value["action"].as_array_mut().unwrap();
    let mut corrupted = false;
    for entry in entries.iter_mut() {
        if entry["dom"] == "[0]()" && entry["cod"] == "[1](*)" {
            let map = entry["map"].as_object_mut().unwrap();
            let keys: Vec<String> = map.keys().cloned().collect();
            let first = map[&keys[0]].clone();
            let last = map[keys.last().unwrap()].clone();
            assert_ne!(first, last);
            map.insert(keys[0].clone(), last);
            map.insert(keys.last().unwrap().clone(), first);
            corrupted = true;
            break;
        }
    }
    assert!(corrupted);
    std::fs::write(&file, serde_json::to_string_pretty(&value).unwrap()).unwrap();

    let out = thetakit(&["presheaf", "check-e", "--file", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2)); // functor laws fail on load
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("functor laws"), "{err}");
    std::fs::remove_file(&file).ok();
}

#[test]
fn relmono_on_a_hand_cut_boundary() {
    let interval = tmpfile("interval.json");
    let out = thetakit(&[
        "presheaf",
        "yoneda",
        "--level",
        "1",
        "--max-degree",
        "2",
        "--object",
        "[1](*)",
        "--out",
        interval.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    // cut the boundary sub-presheaf by keeping the constant cells only;
    // a cell name renders its alpha values first: "[0,0,1](;1)"
    let keep = |name: &str| {
        let inner = &name[1..name.find(']').unwrap()];
        let mut parts = inner.split(',');
        let first = parts.next().unwrap();
        parts.all(|p| p == first)
    };
    let text = std::fs::read_to_string(&interval).unwrap();
    let mut value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let mut kept: std::collections::BTreeSet<String> = std::collections::BTreeSet::new();
    for (_, points) in value["elements"].as_object_mut().unwrap().iter_mut() {
        let filtered: Vec<serde_json::Value> = points
            .as_array()
            .unwrap()
            .iter()
            .filter(|p| keep(p.as_str().unwrap()))
            .cloned()
            .collect();
        for p in &filtered {
            kept.insert(p.as_str().unwrap().to_string());
        }
        *points = serde_json::Value::Array(filtered);
    }
    for entry in value["action"].as_array_mut().unwrap() {
        let map = entry["map"].as_object().unwrap().clone();
        let filtered: serde_json::Map<String, serde_json::Value> =
            map.into_iter().filter(|(k, _)| kept.contains(k)).collect();
        entry["map"] = serde_json::Value::Object(filtered);
    }
    let boundary = tmpfile("boundary.json");
    std::fs::write(&boundary, serde_json::to_string_pretty(&value).unwrap()).unwrap();

    let out = thetakit(&[
        "presheaf",
        "relmono",
        "--from",
        boundary.to_str().unwrap(),
        "--to",
        interval.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.lines().all(|l| l.contains("mono=true")), "{text}");
    std::fs::remove_file(&interval).ok();
    std::fs::remove_file(&boundary).ok();
}

#[test]
fn equiv_delta_passes() {
    let out = thetakit(&["equiv-delta", "--max-degree", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("verdict: PASS"));
}

#[test]
fn env_variable_sets_the_default_format() {
    let out = Command::new(env!("CARGO_BIN_EXE_thetakit"))
        .args(["objects", "--level", "1", "--max-degree", "1"])
        .env("THETAKIT_FORMAT", "json")
        .output()
        .unwrap();
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["objects"].as_array().unwrap().len(), 2);
}
