use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn workspace() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn burnkh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_burnkh")).args(args).current_dir(workspace()).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn shipped_cube() -> PathBuf {
    workspace().join("fixtures/corpus/cubes/trefoil-right.json")
}

/// Table rows as whitespace-separated cells, header and title dropped.
fn rows(table: &str) -> Vec<Vec<String>> {
    table.lines().skip(2).map(|l| l.split_whitespace().map(String::from).collect()).collect()
}

#[test]
fn trefoil_homology_table() {
    let o = burnkh(&["homology", "--theory", "classical", "--strands", "2", "s1 s1 s1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let expected = [["-3", "7", "Z/2"], ["-3", "9", "Z"], ["-2", "5", "Z"], ["0", "1", "Z"], ["0", "3", "Z"]];
    let got = rows(&stdout(&o));
    assert_eq!(got, expected.map(|r| r.map(String::from).to_vec()).to_vec());
}

#[test]
fn homology_over_a_field_drops_torsion() {
    let o = burnkh(&["homology", "--field", "2", "--strands", "2", "s1 s1 s1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let ranks: usize = rows(&stdout(&o)).iter().map(|r| if r[2].contains('^') { r[2].rsplit('^').next().unwrap().parse::<usize>().unwrap() } else { 1 }).sum();
    // Z/2 torsion contributes to two adjacent degrees over F_2.
    assert_eq!(ranks, 6);
}

#[test]
fn unknot_euler_matches_bracket() {
    let o = burnkh(&["euler", "--theory", "classical", "--strands", "2", "s1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("euler characteristic: q^-1 + q"), "{out}");
    assert!(out.contains("kauffman bracket:     q^-1 + q"), "{out}");
    let j: Value = serde_json::from_str(&stdout(&burnkh(&["euler", "--strands", "2", "s1", "--format", "json"]))).unwrap();
    assert_eq!(j["agrees"], Value::Bool(true));
    assert_eq!(j["schemaVersion"], Value::from(1));
}

#[test]
fn shipped_cubes_validate() {
    for entry in fs::read_dir(workspace().join("fixtures/corpus/cubes")).unwrap() {
        let path = entry.unwrap().path();
        let o = burnkh(&["validate", "--file", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}: {}", path.display(), stderr(&o));
        assert!(stdout(&o).starts_with("valid "));
    }
}

#[test]
fn emitted_cube_round_trips() {
    let emitted = burnkh(&["validate", "--emit-cube", "--strands", "2", "s1 s1 s1"]);
    assert_eq!(emitted.status.code(), Some(0));
    let shipped: Value = serde_json::from_str(&fs::read_to_string(shipped_cube()).unwrap()).unwrap();
    assert_eq!(serde_json::from_slice::<Value>(&emitted.stdout).unwrap(), shipped);
}

#[test]
fn cube_homology_is_the_dual_of_the_diagram_homology() {
    let o = burnkh(&["homology", "--file", shipped_cube().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let mut from_cube: Vec<(i64, i64, String)> =
        rows(&stdout(&o)).into_iter().map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap(), r[2].clone())).collect();
    from_cube.sort();
    // The cube is the Burnside lift of the dual cube, so its homology is the
    // cohomology of the diagram complex: free summands move from (i, j) to
    // (-i, -j), torsion from (i, j) to (-i - 1, -j).
    let diagram = burnkh(&["homology", "--strands", "2", "s1 s1 s1"]);
    let mut expected: Vec<(i64, i64, String)> = rows(&stdout(&diagram))
        .into_iter()
        .map(|r| {
            let (i, j): (i64, i64) = (r[0].parse().unwrap(), r[1].parse().unwrap());
            let shift = if r[2].starts_with("Z/") { 1 } else { 0 };
            (-i - shift, -j, r[2].clone())
        })
        .collect();
    expected.sort();
    assert_eq!(from_cube, expected);
}

#[test]
fn fresh_corpus_passes_with_json_summary() {
    let o = burnkh(&["corpus", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let j: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["failed"], Value::from(0));
    assert_eq!(j["schemaVersion"], Value::from(1));
    let checks = j["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["subject"] == "family trefoil-right" && c["passed"] == true));
    assert!(checks.iter().any(|c| c["subject"] == "cube trefoil-right.json"));
}

fn corpus_copy() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(workspace().join("fixtures/corpus/diagrams.json"), dir.path().join("diagrams.json")).unwrap();
    fs::create_dir(dir.path().join("cubes")).unwrap();
    dir
}

#[test]
fn corrupted_face_bijection_is_reported() {
    let dir = corpus_copy();
    let mut cube: Value = serde_json::from_str(&fs::read_to_string(shipped_cube()).unwrap()).unwrap();
    let mapping = cube["faces"][0]["mapping"].as_array_mut().unwrap();
    mapping.swap(0, 1);
    fs::write(dir.path().join("cubes/broken.json"), serde_json::to_string(&cube).unwrap()).unwrap();

    let o = burnkh(&["corpus", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let failures: Vec<&str> = std::str::from_utf8(&o.stdout).unwrap().lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(failures.len(), 1, "{failures:?}");
    assert!(failures[0].contains("cube broken.json"), "{}", failures[0]);
    assert!(failures[0].contains("face at 110 in coordinates (1, 2)"), "{}", failures[0]);

    let o = burnkh(&["corpus", dir.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    let j: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["failed"], Value::from(1));
}

#[test]
fn corrupted_cube_fails_validate() {
    let dir = tempfile::tempdir().unwrap();
    let mut cube: Value = serde_json::from_str(&fs::read_to_string(shipped_cube()).unwrap()).unwrap();
    cube["faces"][3]["mapping"].as_array_mut().unwrap().swap(0, 1);
    let path = dir.path().join("c.json");
    fs::write(&path, serde_json::to_string(&cube).unwrap()).unwrap();
    let o = burnkh(&["validate", "-f", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("face at 111"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn empty_or_missing_corpus_directory() {
    let dir = tempfile::tempdir().unwrap();
    let o = burnkh(&["corpus", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("is empty"), "{}", stderr(&o));

    let o = burnkh(&["corpus", dir.path().join("nowhere").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not found"));

    fs::write(dir.path().join("README"), "").unwrap();
    let o = burnkh(&["corpus", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("no diagrams.json"));
}

#[test]
fn parse_errors_carry_positions() {
    let o = burnkh(&["homology", "--strands", "2", "s1 s1\ns1 s3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2, column 4"), "{}", stderr(&o));

    let o = burnkh(&["homology", "--pd", "PD[X[1,2,3]"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 1, column 11"), "{}", stderr(&o));

    let o = burnkh(&["validate", "{\n  \"dimension\": ]"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2, column"), "{}", stderr(&o));
}

#[test]
fn flag_errors_exit_one() {
    let cases: [&[&str]; 6] = [
        &["homology", "--quotient", "2", "--strands", "2", "s1"],
        &["homology", "--theory", "quantum-annular", "--quotient", "0", "--strands", "2", "s1"],
        &["homology", "--theory", "quantum-annular", "--strands", "2", "s1"],
        &["homology", "--bogus"],
        &["homology"],
        &["homology", "--theory", "annular", "--pd", "PD[X[4,2,5,1],X[6,4,1,3],X[2,6,3,5]]"],
    ];
    for args in cases {
        let o = burnkh(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", stderr(&o));
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!stderr(&o).is_empty(), "{args:?}");
    }
}

#[test]
fn crossing_limit_needs_force() {
    let word = vec!["s1"; 15].join(" ");
    let o = burnkh(&["euler", "--strands", "2", &word]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--force"));
}

#[test]
fn quantum_annular_quotients() {
    let o = burnkh(&["homology", "--theory", "quantum-annular", "--quotient", "1", "--strands", "2", "s1 s1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let annular = burnkh(&["homology", "--theory", "annular", "--strands", "2", "s1 s1"]);
    assert_eq!(stdout(&o), stdout(&annular));

    let o = burnkh(&["totalize", "--theory", "quantum-annular", "--strands", "2", "s1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let j: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["schemaVersion"], Value::from(1));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["homology", "--format", "json", "--strands", "3", "s1 s2^-1 s1 s2^-1"][..],
        &["totalize", "--theory", "annular", "--strands", "2", "s1 s1 s1"][..],
        &["corpus", "--format", "json"][..],
    ] {
        let a = burnkh(args);
        let b = burnkh(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn thread_count_from_environment() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_burnkh"))
            .args(["homology", "--strands", "2", "s1 s1 s1"])
            .env("BURNKH_THREADS", v)
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(run("zero").status.code(), Some(1));
}
