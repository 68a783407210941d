//! End-to-end tests of the binary: subcommands, exit codes, and byte-level
//! determinism of emitted reports.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wfano"))
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("wfano-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn enumerate_small_bound_and_determinism() {
    let out1 = tmp("enum1.json");
    let out2 = tmp("enum2.json");
    for out in [&out1, &out2] {
        let st = bin()
            .args(["enumerate", "--bound", "9", "--out"])
            .arg(out)
            .status()
            .unwrap();
        assert!(st.success());
    }
    let a = std::fs::read(&out1).unwrap();
    let b = std::fs::read(&out2).unwrap();
    assert_eq!(a, b, "identical inputs must give byte-identical reports");
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert!(v["count"].as_u64().unwrap() >= 20);
    assert!(v["digest"].as_str().unwrap().len() == 64);
    let recs = v["records"].as_array().unwrap();
    assert!(recs
        .iter()
        .any(|r| r["degree"] == 18 && r["weights"] == serde_json::json!([1, 2, 3, 5, 9])));
    let _ = std::fs::remove_file(out1);
    let _ = std::fs::remove_file(out2);
}

#[test]
fn family_record_output() {
    let out = bin()
        .args(["family", "--degree", "21", "--weights", "1,3,5,7,8"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["record"]["A3"], "1/40");
    assert_eq!(v["record"]["index"], 3);
}

#[test]
fn link_family_102_passes() {
    let out = bin().args(["link", "--family", "102"]).output().unwrap();
    assert!(out.status.success(), "exit code 0 expected");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["target"]["minus_k3"], "1/4");
    assert_eq!(v["pass"], true);
}

#[test]
fn link_exit_code_on_verification_failure() {
    // A member with both structure constants removed degenerates the germ.
    let file = tmp("degenerate101.txt");
    let f = wfano::links::sample_member(101, 0).unwrap();
    let vars: Vec<&str> = f.vars().iter().map(|s| s.as_str()).collect();
    let tz5 = wfano::qpoly::parse_poly(&vars, "t*z^5").unwrap();
    let z7x = wfano::qpoly::parse_poly(&vars, "z^7*x").unwrap();
    let c1 = f.coeff_of("t*z^5").unwrap();
    let c2 = f.coeff_of("z^7*x").unwrap();
    let g = f.sub(&tz5.scale(&c1)).sub(&z7x.scale(&c2));
    std::fs::write(&file, format!("{g}\n")).unwrap();
    let st = bin()
        .args(["link", "--family", "101", "--equation"])
        .arg(&file)
        .arg("--out")
        .arg(tmp("degenerate101.json"))
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(1), "verification mismatch must exit 1");
    let _ = std::fs::remove_file(file);
    let _ = std::fs::remove_file(tmp("degenerate101.json"));
}

#[test]
fn input_errors_exit_2() {
    let st = bin()
        .args(["family", "--degree", "6", "--weights", "1,1,2,3,6"])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(2));
    let file = tmp("badpoly.txt");
    std::fs::write(&file, "w^2*z + q^3\n").unwrap();
    let out = bin()
        .args(["link", "--family", "110", "--equation"])
        .arg(&file)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("line") && msg.contains("column"), "{msg}");
    let _ = std::fs::remove_file(file);
}

#[test]
fn germ_subcommands() {
    let file = tmp("germ.txt");
    std::fs::write(&file, "vars: z u\nf: 0\ng: z^3\nh: z^4*u\n").unwrap();
    let out = bin()
        .args(["germ", "classify", "--file"])
        .arg(&file)
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["type"], "cE7");

    let out = bin()
        .args(["germ", "disc1", "--file"])
        .arg(&file)
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["candidates"].as_array().unwrap().len() == 12);

    let out = bin()
        .args(["germ", "cd2", "--lambda", "1", "--a", "3", "--g", "z^3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["invariants"]["l"], 3);
    assert_eq!(v["invariants"]["e3"], "2/3");
    assert_eq!(v["uniqueness_hypotheses"], true);
    let _ = std::fs::remove_file(file);
}

#[test]
fn blowup_product_subcommand() {
    let out = bin()
        .args([
            "blowup",
            "product",
            "--classes",
            "2,1/3;2,1/3;1,2/3",
            "--atop",
            "1/21",
            "--etop",
            "9/2",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["value"], "-1/7");
    assert_eq!(v["sign"], "negative");
}

#[test]
fn game_subcommand_reads_matrix_json() {
    let file = tmp("matrix.json");
    std::fs::write(
        &file,
        r#"{"rows": [[0,5,9,2,3,1],[-5,0,2,1,4,3]], "split": 2,
            "labels": ["u","t","w","y","z","x"]}"#,
    )
    .unwrap();
    let out = bin().args(["game", "--matrix"]).arg(&file).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["trace"]["walls"].as_array().unwrap().len(), 3);
    assert_eq!(
        v["trace"]["end"]["DivisorialContraction"]["target_weights"],
        serde_json::json!([1, 3, 5, 1, 1])
    );
    // A degenerate grading is an input error.
    std::fs::write(
        &file,
        r#"{"rows": [[1,1,1],[2,2,2]], "split": 1, "labels": ["a","b","c"]}"#,
    )
    .unwrap();
    let st = bin().args(["game", "--matrix"]).arg(&file).status().unwrap();
    assert_eq!(st.code(), Some(2));
    let _ = std::fs::remove_file(file);
}
