use std::process::{Command, Output};

fn bisetkit(args: &[&str], cache: Option<&std::path::Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bisetkit"));
    cmd.args(args).env_remove("BISETKIT_CACHE");
    if let Some(dir) = cache {
        cmd.arg("--cache-dir").arg(dir);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn basis_json_has_five_labels() {
    let o = bisetkit(&["basis", "C2", "C2", "--json"], None);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["labels"].as_array().unwrap().len(), 5);
    assert_eq!(v["dim"], 5);
}

#[test]
fn nv_of_a5_names_the_offender() {
    let o = bisetkit(&["nv", "A5"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("false; offenders: (C3, sgn)"), "{text}");
    assert!(text.contains("with Δ(G) ≠ 0: (C3, sgn))"), "{text}");
}

#[test]
fn usage_errors_exit_with_two() {
    let o = bisetkit(&["basis", "X9", "C2"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("C<n>"));
    assert_eq!(bisetkit(&["subgroups", "S6"], None).status.code(), Some(2));
    assert_eq!(bisetkit(&["pim", "A4", "C9", "triv"], None).status.code(), Some(2));
    assert_eq!(bisetkit(&["frobnicate"], None).status.code(), Some(2));
}

#[test]
fn json_is_deterministic_across_jobs() {
    let a = bisetkit(&["qh", "C2xC2", "--json", "--jobs", "1"], None);
    let b = bisetkit(&["qh", "C2xC2", "--json", "--jobs", "4"], None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["qh"]["verdict"], true);
    assert_eq!(v["cartan_matrix"]["determinant"], serde_json::json!({"num": 1, "den": 1}));
}

#[test]
fn cache_round_trip_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let first = bisetkit(&["table", "S3", "--json"], Some(dir.path()));
    assert!(first.status.success());
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let second = bisetkit(&["table", "S3", "--json"], Some(dir.path()));
    assert_eq!(first.stdout, second.stdout);
    std::fs::write(&files[0], "{ not json").unwrap();
    let third = bisetkit(&["table", "S3", "--json"], Some(dir.path()));
    assert!(third.status.success());
    assert!(String::from_utf8_lossy(&third.stderr).contains("warning"));
    assert_eq!(first.stdout, third.stdout);
    let entry: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&files[0]).unwrap()).unwrap();
    assert_eq!(entry["command"], "table");
}

#[test]
fn no_cache_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let o = bisetkit(&["table", "C3", "--no-cache"], Some(dir.path()));
    assert!(o.status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn a5_report_passes() {
    let o = bisetkit(&["a5-report"], None);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("not quasi-hereditary, self-extension found"));
}

#[test]
fn pim_and_ext1_commands() {
    let o = bisetkit(&["pim", "A5", "A4", "sgn", "--json"], None);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dim"], 2);
    assert_eq!(v["loewy_dims"], serde_json::json!([1, 1]));
    let o = bisetkit(&["ext1", "A5", "A4", "sgn", "A4", "sgn"], None);
    assert!(stdout(&o).ends_with("= 1\n"));
}
