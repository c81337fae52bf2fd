use std::path::Path;
use std::process::{Command, Output};

use qsym_core::catalog;
use serde_json::Value;

fn qsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is json")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn hyper() -> catalog::CatalogObject {
    catalog::resolve("segments/hyper?d=2&N=2").unwrap()
}

#[test]
fn validate_catalog_segments() {
    let o = qsym(&["validate", "catalog:segments?d=2&N=2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["valid"], Value::Bool(true));
}

#[test]
fn malformed_json_is_exit_2_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "bad.json", "{\n  \"algebra\": [1,\n");
    let o = qsym(&["validate", &path, "--format", "json"]);
    assert_eq!(code(&o), 2);
    let err = json(&o)["error"].as_str().unwrap().to_string();
    assert!(err.contains("line"), "{err}");
}

#[test]
fn missing_file_is_exit_2() {
    assert_eq!(code(&qsym(&["validate", "/nonexistent/spec.json"])), 2);
}

#[test]
fn broken_orthogonality_names_the_pair() {
    let obj = catalog::resolve("free-orthogonal?P=1,0;0,1").unwrap();
    let mut spec = obj.spec().unwrap().clone();
    spec.blocks = vec![vec![0], vec![1]];
    spec.inner_tensor[0][1] = vec![qsym_core::Scalar::from_ratio(1, 2)];
    spec.inner_tensor[1][0] = vec![qsym_core::Scalar::from_ratio(1, 2)];
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "spec.json", &spec.to_json());
    let o = qsym(&["validate", &path, "--format", "json"]);
    assert_eq!(code(&o), 1);
    let r = json(&o);
    let check = &r["report"]["checks"]["module.cross_block_orthogonal"];
    assert_eq!(check["passed"], Value::Bool(false));
    let w = check["witness"].as_str().unwrap();
    assert!(w.contains('0') && w.contains('1'), "{w}");
}

#[test]
fn verify_segments_hyper() {
    let o = qsym(&[
        "verify",
        "catalog:segments?d=2&N=2",
        "catalog:segments/hyper?d=2&N=2",
        "--degree",
        "6",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["overall"], "Proven");
    let single = qsym(&["verify", "catalog:segments/hyper?d=2&N=2"]);
    assert_eq!(code(&single), 0);
}

#[test]
fn deleted_relation_is_exit_3() {
    let mut cert = hyper().certificate().unwrap().clone();
    cert.target.relations.remove(0);
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "cert.json", &cert.to_json());
    let o = qsym(&[
        "verify",
        "catalog:segments?d=2&N=2",
        &path,
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 3);
    assert_eq!(json(&o)["overall"], "Inconclusive");
}

#[test]
fn bad_beta_shape_is_exit_2() {
    let mut cert = hyper().certificate().unwrap().clone();
    cert.beta_blocks[0].pop();
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "cert.json", &cert.to_json());
    let o = qsym(&["verify", "catalog:segments?d=2&N=2", &path]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("shape"));
}

#[test]
fn refuted_certificate_is_exit_1() {
    let obj = catalog::resolve("two-point/permutation").unwrap();
    let mut cert = obj.certificate().unwrap().clone();
    cert.alpha_matrix[1][1] = &cert.alpha_matrix[1][1] + &qsym_core::NcPoly::one();
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "cert.json", &cert.to_json());
    let o = qsym(&["verify", "catalog:two-point", &path]);
    assert_eq!(code(&o), 1);
}

#[test]
fn degree_below_two_is_rejected() {
    let o = qsym(&["verify", "catalog:segments/hyper?d=2&N=2", "--degree", "1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn present_segments_shape() {
    let o = qsym(&["present", "catalog:segments?d=2&N=1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let families = json(&o)["families"].as_array().unwrap().clone();
    assert_eq!(families.len(), 3);
    let blocks: Vec<i64> = families
        .iter()
        .map(|f| f["block"].as_i64().unwrap())
        .collect();
    assert_eq!(blocks, [-1, 0, 1]);
    assert!(families.iter().all(|f| f["rows"] == 2 && f["cols"] == 2));
}

#[test]
fn present_free_orthogonal_identity() {
    let o = qsym(&["present", "catalog:free-orthogonal?P=1,0;0,1"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        assert!(
            text.contains(&format!("v*[0;{i},{j}] - v[0;{i},{j}] = 0")),
            "{text}"
        );
    }
}

#[test]
fn present_rejects_empty_block() {
    let mut spec = catalog::resolve("two-point")
        .unwrap()
        .spec()
        .unwrap()
        .clone();
    spec.blocks.push(Vec::new());
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "spec.json", &spec.to_json());
    assert_eq!(code(&qsym(&["present", &path])), 1);
}

#[test]
fn present_output_is_loadable_by_falsify() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("u.json");
    let o = qsym(&[
        "present",
        "catalog:two-point",
        "--format",
        "json",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let f = qsym(&["falsify", report.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&f), 0, "{}", String::from_utf8_lossy(&f.stdout));
    assert!(json(&f)["points"].as_u64().unwrap() > 0);
}

#[test]
fn falsify_column_sums() {
    let o = qsym(&[
        "falsify",
        "catalog:A_h?d=2",
        "u[0;1,1] + u[0;2,1] - u[0;1,2] - u[0;2,2]",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 1);
    let w = json(&o)["witness"]["description"]
        .as_str()
        .unwrap()
        .to_string();
    assert!(w.contains("u[0]="), "{w}");

    let dir = tempfile::tempdir().unwrap();
    let rel = write(
        dir.path(),
        "rels.txt",
        "# squares sum to one\nu[0;1,1] u[0;1,1] + u[0;1,2] u[0;1,2] - 1\n",
    );
    assert_eq!(
        code(&qsym(&["falsify", "catalog:A_h?d=2", "--relations", &rel])),
        0
    );
    assert_eq!(code(&qsym(&["falsify", "catalog:A_h?d=2", "u[0;1,"])), 2);
    assert_eq!(
        code(&qsym(&["falsify", "catalog:A_h?d=2", "v[0;1,1] + 1"])),
        2
    );
}

#[test]
fn reports_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = qsym(&[
            "verify",
            "catalog:segments/quotient?d=2&N=2",
            "--format",
            "json",
            "--report",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
    }
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn catalog_list_and_export() {
    let o = qsym(&["catalog", "list", "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o).as_array().unwrap().len(), catalog::list().len());
    let e = qsym(&["catalog", "export", "A_h?d=2"]);
    assert_eq!(code(&e), 0);
    let text = String::from_utf8(e.stdout).unwrap();
    assert_eq!(
        text.trim_end(),
        catalog::resolve("A_h?d=2").unwrap().to_json()
    );
    assert_eq!(code(&qsym(&["catalog", "export", "nothing"])), 2);
}
