//! End-to-end CLI tests: exit codes, report schema stability, and
//! build-output round trips.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bikernel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bikernel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("bikernel-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn gen(spec: &str, name: &str) -> PathBuf {
    let path = tmp(name);
    let out = bikernel(&["build", "gen", spec, "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn check_passes_on_terminal_with_exit_0() {
    let p = gen("terminal", "one.json");
    let out = bikernel(&["check", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["violations"], serde_json::json!([]));
}

#[test]
fn univalence_failure_names_global_witness_with_exit_1() {
    let p = gen("delooping:zmod2", "z2.json");
    let out = bikernel(&["univalence", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["overall"], "fail");
    assert_eq!(v["local"]["status"], "pass");
    assert_eq!(v["global"]["witnesses"][0]["count"], 2);
    assert_eq!(v["global"]["witnesses"][0]["cells"], serde_json::json!(["*", "*"]));
}

#[test]
fn invalid_input_file_exits_2() {
    let path = tmp("broken.json");
    std::fs::write(&path, "{\"objects\": [\"a\"]}").unwrap();
    let out = bikernel(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_3() {
    let p = gen("chaotic:2", "c2.json");
    let out = bikernel(&["--budget", "1", "univalence", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn build_outputs_reparse_and_revalidate() {
    let p = gen("delooping:bool", "bool.json");
    let one = gen("terminal", "one2.json");
    let ps = tmp("pseudo.json");
    let out = bikernel(&[
        "build",
        "pseudo",
        "--src",
        one.to_str().unwrap(),
        "--tgt",
        p.to_str().unwrap(),
        "--out",
        ps.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = bikernel(&["check", ps.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = bikernel(&["univalence", ps.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn report_schema_is_stable_on_fixed_input() {
    // Golden shape for the law report of a mutated presentation: the
    // violation carries law, cells, lhs, rhs.
    let p = gen("delta2", "d2.json");
    let text = std::fs::read_to_string(&p).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["lunitor"]["1"] = serde_json::json!("g_z1");
    let mutated = tmp("d2-mutated.json");
    std::fs::write(&mutated, v.to_string()).unwrap();
    let out = bikernel(&["check", mutated.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    assert_eq!(report["status"], "fail");
    let first = &report["violations"][0];
    for key in ["law", "cells", "lhs", "rhs"] {
        assert!(first.get(key).is_some(), "violation misses `{key}`");
    }
    assert!(report["violations"]
        .as_array()
        .unwrap()
        .iter()
        .any(|w| w["law"].as_str().unwrap().starts_with("law20")));
}

#[test]
fn fragment_kleisli_and_bundle_round_trip() {
    let frag = tmp("frag.json");
    std::fs::write(
        &frag,
        serde_json::json!({
            "categories": {
                "P": {
                    "objects": ["0", "1"],
                    "morphisms": {
                        "id0": {"src": "0", "tgt": "0"},
                        "id1": {"src": "1", "tgt": "1"},
                        "le": {"src": "0", "tgt": "1"}
                    },
                    "id": {"0": "id0", "1": "id1"},
                    "comp": {"id0;id0": "id0", "id1;id1": "id1", "id0;le": "le", "le;id1": "le"}
                }
            }
        })
        .to_string(),
    )
    .unwrap();
    let fragp = tmp("fragp.json");
    let out = bikernel(&[
        "build",
        "fragment",
        frag.to_str().unwrap(),
        "--out",
        fragp.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(bikernel(&["check", fragp.to_str().unwrap()]).status.code(), Some(0));

    let kb = tmp("kleisli.json");
    let out = bikernel(&[
        "build",
        "kleisli",
        frag.to_str().unwrap(),
        "--out",
        kb.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(bikernel(&["check", kb.to_str().unwrap()]).status.code(), Some(0));

    let bundle = tmp("bundle.json");
    let out = bikernel(&[
        "build",
        "monad-kleisli",
        frag.to_str().unwrap(),
        "--out",
        bundle.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = bikernel(&["check", "--disp-biequiv", bundle.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn yoneda_command_reports_pstrans_count() {
    let p = gen("delooping:bool", "bool-y.json");
    let out = bikernel(&["yoneda", p.to_str().unwrap(), "--object", "*"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["pstrans_count"], 2);
    assert_eq!(v["passed"], true);
}

#[test]
fn fuzz_summary_is_seed_deterministic() {
    let a = bikernel(&["fuzz", "--seed", "3", "--count", "12"]);
    let b = bikernel(&["fuzz", "--seed", "3", "--count", "12"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout_json(&a), stdout_json(&b));
}

#[test]
fn displayed_check_via_files() {
    let p = gen("discrete:2", "d2base.json");
    let q = gen("delta2", "d2fiber.json");
    let d = tmp("trivial.json");
    let out = bikernel(&[
        "build",
        "trivial",
        p.to_str().unwrap(),
        q.to_str().unwrap(),
        "--out",
        d.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(
        bikernel(&["check", "--displayed", d.to_str().unwrap()]).status.code(),
        Some(0)
    );
    // Fiberwise univalence fails locally because Δ₂ is not locally
    // univalent.
    let out = bikernel(&["univalence", "--displayed", d.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["local"]["status"], "fail");
}

#[test]
fn find_commands_emit_lists() {
    let p = gen("delta2", "d2find.json");
    let out = bikernel(&["find", "inv2cells", p.to_str().unwrap(), "--src", "1", "--tgt", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v.as_array().unwrap().len(), 2);

    let out = bikernel(&["find", "strict", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["one_strict"], true);

    let w = gen("weakunit", "wu.json");
    let out = bikernel(&["find", "strict", w.to_str().unwrap()]);
    assert_eq!(stdout_json(&out)["one_strict"], false);
}

#[test]
fn cwf_check_command() {
    let path = tmp("cwf.json");
    std::fs::write(
        &path,
        serde_json::json!({
            "category": {
                "objects": ["*"],
                "morphisms": {"id*": {"src": "*", "tgt": "*"}},
                "id": {"*": "id*"},
                "comp": {"id*;id*": "id*"}
            },
            "ty": {"on_ob": {"*": ["A"]}, "on_mor": {"id*": {"A": "A"}}},
            "tm": {"on_ob": {"*": ["t"]}, "on_mor": {"id*": {"t": "t"}}},
            "p": {"*": {"t": "A"}}
        })
        .to_string(),
    )
    .unwrap();
    let out = bikernel(&["check", "--cwf", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["witnesses"][0]["ext"], "*");
}

#[test]
fn monads_build_with_tower() {
    let p = gen("delooping:bool", "bool-m.json");
    let m = tmp("monads.json");
    let tower_dir = tmp("tower-dir");
    let out = bikernel(&[
        "build",
        "monads",
        p.to_str().unwrap(),
        "--out",
        m.to_str().unwrap(),
        "--expose-tower",
        tower_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(bikernel(&["check", m.to_str().unwrap()]).status.code(), Some(0));
    let tower = tower_dir.join("tower.json");
    assert!(Path::new(&tower).exists());
    assert_eq!(
        bikernel(&["check", "--displayed", tower.to_str().unwrap()]).status.code(),
        Some(0)
    );
}
