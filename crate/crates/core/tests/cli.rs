use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
  PathBuf::from(env!("CARGO_MANIFEST_DIR"))
    .join("tests/fixtures")
    .join(name)
    .display()
    .to_string()
}

fn spheres(args: &[&str]) -> Output {
  Command::new(env!("CARGO_BIN_EXE_spheres"))
    .args(args)
    .output()
    .expect("binary runs")
}

fn json(out: &Output) -> Value {
  assert!(
    out.status.success(),
    "stderr: {}",
    String::from_utf8_lossy(&out.stderr)
  );
  serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn pair(cmd: &str, extra: &[&str]) -> Output {
  let (g, a, b) = (
    fixture("theta.json"),
    fixture("a0.json"),
    fixture("sigma_mid.json"),
  );
  let mut args = vec![cmd, "--graph", &g, "--sphere-a", &a, "--sphere-b", &b];
  args.extend_from_slice(extra);
  spheres(&args)
}

#[test]
fn a0_crosses_middle_system_sphere() {
  let v = json(&pair("cross", &[]));
  assert_eq!(v["crosses"], true);
  let corners = v["corners"].as_array().unwrap();
  assert_eq!(corners.len(), 4);
  assert!(corners.iter().all(|c| !c["witness"].is_null()));
}

#[test]
fn a0_misses_a_far_translate() {
  let v = json(&pair("cross", &["--translate", "v0a,v1b"]));
  assert_eq!(v["crosses"], false);
}

#[test]
fn a0_intersects_middle_sphere_once() {
  let v = json(&pair("intersect", &[]));
  assert_eq!(v["count"], 1);
  assert_eq!(v["witnesses"].as_array().unwrap().len(), 1);
}

#[test]
fn self_cross_with_identity_is_false() {
  let (g, a) = (fixture("theta.json"), fixture("a0.json"));
  let v = json(&spheres(&[
    "cross",
    "--graph",
    &g,
    "--sphere-a",
    &a,
    "--sphere-b",
    &a,
    "--translate",
    "",
  ]));
  assert_eq!(v["crosses"], false);
}

#[test]
fn theorem_check_holds_for_a0() {
  let (g, a) = (fixture("theta.json"), fixture("a0.json"));
  let v = json(&spheres(&["theorem-check", "--graph", &g, "--sphere-a", &a]));
  assert_eq!(v["all_equal"], true);
  assert_eq!(v["rows"].as_array().unwrap().len(), 3);
  let one = json(&spheres(&[
    "theorem-check",
    "--graph",
    &g,
    "--sphere-a",
    &a,
    "--edge",
    "v1b",
  ]));
  assert_eq!(one["rows"][0]["circles"], 1);
}

#[test]
fn sphere_check_reports_pieces() {
  let (g, a) = (fixture("theta.json"), fixture("a0.json"));
  let v = json(&spheres(&["sphere-check", "--graph", &g, "--sphere-a", &a]));
  assert_eq!(v["circles"], 1);
  assert_eq!(v["disks"], 2);
  assert_eq!(v["pants"], 0);
  assert_eq!(v["embedded"], true);
}

#[test]
fn graph_round_trip_through_files() {
  let dir = std::env::temp_dir().join(format!("spheres-cli-{}", std::process::id()));
  std::fs::create_dir_all(&dir).unwrap();
  let path = dir.join("g.json");
  let p = path.display().to_string();
  let out = spheres(&[
    "graph-gen",
    "--rank",
    "3",
    "--style",
    "dumbbell-chain",
    "--out",
    &p,
  ]);
  assert!(out.status.success());
  let v = json(&spheres(&["graph-check", "--graph", &p]));
  assert_eq!(v["rank"], 3);
  assert_eq!(v["pants"], 4);
  assert_eq!(v["loops"], 2);
  std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn outputs_are_byte_stable() {
  let g = fixture("theta.json");
  let args = ["complex", "--graph", &g, "--max-circles", "1"];
  let first = spheres(&args);
  assert!(first.status.success());
  assert_eq!(first.stdout, spheres(&args).stdout);
  let dot = spheres(&["complex", "--graph", &g, "--max-circles", "0", "--format", "dot"]);
  assert!(String::from_utf8(dot.stdout)
    .unwrap()
    .starts_with("graph sphere_complex {"));
  let e = json(&spheres(&["enumerate", "--graph", &g, "--max-circles", "1"]));
  assert_eq!(e["count"], 9);
}

#[test]
fn domain_errors_exit_one_with_report() {
  let (g, a) = (fixture("theta.json"), fixture("a0.json"));
  let out = spheres(&[
    "cross",
    "--graph",
    &g,
    "--sphere-a",
    &a,
    "--sphere-b",
    &a,
    "--translate",
    "v0a",
  ]);
  assert_eq!(out.status.code(), Some(1));
  let v: Value = serde_json::from_slice(&out.stderr).unwrap();
  assert!(v["error"].is_string());
  assert!(v["message"].is_string());

  let out = spheres(&["enumerate", "--graph", &g, "--max-circles", "99"]);
  assert_eq!(out.status.code(), Some(1));
  let v: Value = serde_json::from_slice(&out.stderr).unwrap();
  assert_eq!(v["error"], "BoundTooLarge");

  // A sphere document is not a graph.
  let out = spheres(&["graph-check", "--graph", &a]);
  assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
  assert_eq!(spheres(&["cross"]).status.code(), Some(2));
  assert_eq!(
    spheres(&["graph-check", "--graph", "/no/such/file.json"])
      .status
      .code(),
    Some(2)
  );
  assert_eq!(spheres(&["frobnicate"]).status.code(), Some(2));
}
