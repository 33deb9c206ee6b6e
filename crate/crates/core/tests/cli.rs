use std::process::Command;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_stabforge"));
    c.env_remove("STABFORGE_SEED");
    c
}

fn stdout(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn qgvb_table_has_one_row_per_grid_point() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let status = bin()
        .args(["qgvb-table", "--q", "2", "--r-grid", "0:1:0.1", "--seed", "1", "--output"])
        .arg(&path)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# config: {"));
    assert_eq!(lines[1], "q,R,qgvb,thm2_bound,prob_bound,vacuous");
    let rows = &lines[2..];
    assert_eq!(rows.len(), 11);
    assert!(rows[0].starts_with("2,0,0.1892896249152"));
    assert_eq!(rows[10], "2,1,0,,,true");
}

#[test]
fn lemma2_suite_exits_zero_and_echoes_seed() {
    let (code, out) = stdout(&["verify", "lemma2", "--q", "2", "--n", "2", "--seed", "7"]);
    assert_eq!(code, 0);
    let lines: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines[0]["config"]["seed"], 7);
    assert_eq!(lines[0]["config"]["subcommand"], "verify lemma2");
    assert_eq!(lines[1]["verdict"], "holds");
    assert_eq!(lines[1]["seed"], 7);
}

#[test]
fn usage_errors_exit_two_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("never.txt");
    for args in [
        vec!["qgvb-table", "--q", "2", "--bogus"],
        vec!["verify", "lemma3", "--q", "2", "--n", "2", "--ell", "3"],
        vec!["thm2-bound", "--q", "2", "--n", "1", "--R", "0.5"],
        vec!["qgvb-table", "--q", "2", "--r-grid", "1:0:0.1"],
        vec!["sample-code", "--q", "6", "--n", "2", "--k", "1"],
    ] {
        let status = bin().args(&args).arg("--output").arg(&path).status().unwrap();
        assert_eq!(status.code(), Some(2), "{args:?}");
        assert!(!path.exists(), "{args:?}");
    }
}

#[test]
fn seed_falls_back_to_environment() {
    let out = bin()
        .args(["verify", "lemma5", "--q", "2", "--n", "1", "--trials", "2000"])
        .env("STABFORGE_SEED", "1234")
        .output()
        .unwrap();
    let first: serde_json::Value = serde_json::from_str(String::from_utf8_lossy(&out.stdout).lines().next().unwrap()).unwrap();
    assert_eq!(first["config"]["seed"], 1234);
    let again = stdout(&["verify", "lemma5", "--q", "2", "--n", "1", "--trials", "2000", "--seed", "1234"]).1;
    assert_eq!(String::from_utf8(out.stdout).unwrap(), again);
}

#[test]
fn sampled_code_round_trips_through_quantum_distance() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.json");
    let status = bin().args(["sample-code", "--q", "3", "--n", "2", "--k", "1", "--seed", "3", "-o"]).arg(&path).status().unwrap();
    assert_eq!(status.code(), Some(0));
    let (code, out) = stdout(&["quantum-distance", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let d = v["result"]["d"].as_u64().unwrap();
    assert!(d >= v["result"]["d_normalizer"].as_u64().unwrap());
    assert!((1..=2).contains(&d));
}

#[test]
fn concatenated_code_distance_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cc.json");
    let status = bin()
        .args(["sample-concat", "--q", "2", "--n", "1", "--N", "4", "--K", "2", "--seed", "5", "-o"])
        .arg(&path)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let (code, out) = stdout(&["min-distance", "--input", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(code, 0);
    let row = out.lines().nth(2).unwrap();
    let d: usize = row.rsplit(',').next().unwrap().parse().unwrap();
    assert!(d >= 2, "{out}");
}

#[test]
fn grs_weight_distribution() {
    let (code, out) = stdout(&["weight-dist", "--q", "5", "--N", "4", "--K", "2", "--seed", "0"]);
    assert_eq!(code, 0);
    let body: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(body, ["w,count", "0,1", "1,0", "2,0", "3,16", "4,8"]);
}

#[test]
fn pretty_output_echoes_seed() {
    let (code, out) = stdout(&["thm2-bound", "--q", "2", "--n", "4", "--R", "0.25", "--seed", "42", "--format", "pretty"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("# thm2-bound (seed 42)"));
}
