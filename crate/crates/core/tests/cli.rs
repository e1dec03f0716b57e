use std::process::{Command, Output};

fn ncgrass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncgrass"))
        .args(args)
        .env_remove("NCGRASS_SEED")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn verify_passes_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = ncgrass(&["verify", "--m", "2,3", "--seed", "42", "--out", path.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    }
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["config"]["seed"], 42);
    assert_eq!(v["summary"]["failed"], 0);
    assert!(v["summary"]["total"].as_u64().unwrap() > 100);
}

#[test]
fn seed_is_read_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_ncgrass"))
        .args(["verify", "--m", "2"])
        .env("NCGRASS_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["config"]["seed"], 9);
}

#[test]
fn impossible_tolerance_fails() {
    let out = ncgrass(&["verify", "--m", "2", "--tol-resid", "1e-20"]);
    assert_eq!(code(&out), 1);
    assert!(json(&out)["summary"]["failed"].as_u64().unwrap() > 0);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "--m", "1"][..],
        &["horosphere", "--t", "1.0"],
        &["tube", "--model", "sp", "--m", "3"],
        &["tube", "--r", "-1"],
        &["roots", "--format", "yaml"],
        &["nonsense"],
        &["verify", "--tol-resid", "0"],
    ] {
        let out = ncgrass(args);
        assert_eq!(code(&out), 2, "{args:?}");
    }
}

#[test]
fn horosphere_json_groups() {
    let out = ncgrass(&["horosphere", "--m", "3", "--t", "0"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let groups: Vec<(f64, u64)> = v["groups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| (g["value"].as_f64().unwrap(), g["mult"].as_u64().unwrap()))
        .collect();
    assert_eq!(groups.len(), 3);
    for ((value, mult), (ev, em)) in groups.iter().zip([(0.0, 4), (1.0, 6), (2.0, 1)]) {
        assert!((value - ev).abs() < 1e-12);
        assert_eq!(*mult, em);
    }
}

#[test]
fn jacobi_csv_rows_descend() {
    let out = ncgrass(&["jacobi", "--m", "2", "--type", "perp", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<(f64, usize)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let mut f = l.split(',');
            (f.next().unwrap().parse().unwrap(), f.next().unwrap().parse().unwrap())
        })
        .collect();
    assert_eq!(rows, vec![(0.0, 4), (-0.5, 0), (-2.0, 4)]);
}

#[test]
fn roots_markdown_lists_empty_spaces() {
    let out = ncgrass(&["roots", "--m", "2", "--format", "markdown"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| e1 | 0 | 0 |"));
    assert!(text.contains("| 2e2 | 1 | 1 |"));
}

#[test]
fn table_commands_pass() {
    for args in [
        &["tube", "--model", "su", "--m", "4", "--r", "0.5"][..],
        &["tube", "--model", "sp", "--n", "2", "--r", "2"],
        &["horosphere", "--m", "4", "--t", "0.3"],
        &["identities", "--model", "sp", "--n", "3", "--r", "0.7"],
        &["identities", "--m", "3", "--t", "0"],
        &["jacobi", "--m", "4"],
    ] {
        let out = ncgrass(args);
        assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["pass"], true);
    }
}
