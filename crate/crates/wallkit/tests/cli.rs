//! End-to-end runs of the `wallkit` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use wallkit::format::wall_to_json;
use wallkit::verify::example_colouring_wall;
use wallkit_core::colouring::build_complex;
use wallkit_core::Budget;

fn wallkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wallkit")).args(args).env_remove("WALLKIT_CACHE_DIR").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wallkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn enum_counts_connected_two_brick_walls() {
    let out = wallkit(&["enum", "--ground", "2", "--bricks", "2", "--connected"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], 5);
    assert_eq!(v["walls"].as_array().unwrap().len(), 5);

    let csv = wallkit(&["enum", "--ground", "2", "--bricks", "2", "--connected", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("index,ground,bricks,relations\n"));
    assert_eq!(text.lines().count(), 6);
    assert!(!text.contains('\r'));
}

#[test]
fn enum_over_budget_exits_3() {
    let out = wallkit(&["enum", "--ground", "9", "--bricks", "9"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    let raised = wallkit(&["--budget-ground", "2", "--budget-bricks", "1", "enum", "--ground", "2", "--bricks", "2"]);
    assert_eq!(raised.status.code(), Some(3));
}

#[test]
fn free_dims_on_a_binary_generator() {
    let out = wallkit(&["free-dims", "--gens", "0,1", "--max-weight", "2", "--max-arity", "4", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out)["rows"].as_array().unwrap().clone();
    let weight2: Vec<u64> = rows.iter().filter(|r| r["weight"] == 2).skip(1).map(|r| r["dim"].as_u64().unwrap()).collect();
    // two 2-bricks sharing one point: 3 choices of the point, 2 orders
    assert_eq!(weight2, vec![1, 6, 0]);
    for r in &rows {
        assert_eq!(r["dim"], r["oracle"]);
    }
}

#[test]
fn free_dims_rejects_bad_generators() {
    assert_eq!(wallkit(&["free-dims", "--gens", "0,x", "--max-weight", "1", "--max-arity", "2"]).status.code(), Some(2));
    assert_eq!(wallkit(&["free-dims", "--gens", "0,1", "--max-weight", "99", "--max-arity", "2"]).status.code(), Some(3));
}

#[test]
fn colouring_report_for_the_example_wall() {
    let path = scratch("example.json");
    std::fs::write(&path, wall_to_json(&example_colouring_wall())).unwrap();
    let out = wallkit(&["colouring", path.to_str().unwrap(), "--betti", "--check-d2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["d_squared_zero"], true);
    assert_eq!(v["euler"], 0);
    let counts: Vec<u64> = v["graded_counts"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    let cx = build_complex(&example_colouring_wall(), &Budget::default()).unwrap();
    assert_eq!(counts, cx.graded_counts().iter().map(|&c| c as u64).collect::<Vec<_>>());
    assert_eq!(counts.len(), 4);
    assert!(v["betti"].as_array().unwrap().iter().all(|b| b == 0));
}

#[test]
fn colouring_rejects_malformed_walls() {
    let cycle = scratch("cycle.json");
    std::fs::write(&cycle, r#"{"ground":1,"bricks":[[1],[1]],"relations":[[1,2],[2,1]]}"#).unwrap();
    assert_eq!(wallkit(&["colouring", cycle.to_str().unwrap()]).status.code(), Some(2));
    let extra = scratch("extra.json");
    std::fs::write(&extra, r#"{"ground":1,"bricks":[[1]],"colour":3}"#).unwrap();
    assert_eq!(wallkit(&["colouring", extra.to_str().unwrap()]).status.code(), Some(2));
    let missing = scratch("missing.json");
    assert_eq!(wallkit(&["colouring", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_passes_and_detects_corrupted_signs() {
    let out = wallkit(&["verify", "--max-ground", "2", "--max-bricks", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)["passed"], true);
    let bad = wallkit(&["verify", "--max-ground", "2", "--max-bricks", "3", "--corrupt-signs"]);
    assert_eq!(bad.status.code(), Some(4));
    assert_eq!(json(&bad)["passed"], false);
}

#[test]
fn ind_check_agrees() {
    let out = wallkit(&["ind-check", "--v", "1,1", "--w", "0,1", "--max-arity", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out)["rows"].as_array().unwrap().clone();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r["equal"] == true));
}

#[test]
fn usage_errors_exit_2_and_help_exits_0() {
    assert_eq!(wallkit(&["bogus"]).status.code(), Some(2));
    assert_eq!(wallkit(&["enum", "--ground", "0", "--bricks", "1"]).status.code(), Some(2));
    assert_eq!(wallkit(&["--help"]).status.code(), Some(0));
}

#[test]
fn cached_output_is_byte_identical() {
    let dir = scratch("cache");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_wallkit"))
            .args(["free-dims", "--gens", "0,1,1", "--max-weight", "3", "--max-arity", "5"])
            .env("WALLKIT_CACHE_DIR", &dir)
            .output()
            .unwrap()
    };
    let first = run();
    let second = run();
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, wallkit(&["free-dims", "--gens", "0,1,1", "--max-weight", "3", "--max-arity", "5"]).stdout);
    assert!(std::fs::read_dir(&dir).unwrap().count() >= 1);
}

#[test]
fn out_flag_writes_the_file() {
    let path = scratch("out.csv");
    let out = wallkit(&["enum", "--ground", "1", "--bricks", "2", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "index,ground,bricks,relations\n1,1,1|1,1<2\n");
}
