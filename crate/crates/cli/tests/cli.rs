use std::process::{Command, Output};

use serde_json::Value;

fn galdef(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galdef")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn screen_example_end_to_end() {
    let o = galdef(&["screen", "--curve", "0,0,1,-1,0", "--cm-disc", "-4", "--sigma", "2,37", "--N", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["results"]["excluded"], serde_json::json!([2, 3, 5, 19, 37]));
    assert_eq!(v["ok"], true);
}

#[test]
fn screen_missing_bad_prime_is_usage_error() {
    let o = galdef(&["screen", "--curve", "0,0,1,-1,0", "--cm-disc", "-4", "--sigma", "2", "--N", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("37"));
}

#[test]
fn numerology_example() {
    let o = galdef(&["numerology", "--b", "5", "--N", "2", "--degF", "1", "--mu-parity", "same", "--T-ell", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["results"]["g"], 4);
}

#[test]
fn opposite_parity_still_reports() {
    let o = galdef(&["numerology", "--b", "5", "--N", "2", "--degF", "1", "--mu-parity", "opposite", "--T-ell", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["results"]["parity_ok"], false);
}

#[test]
fn unknown_subcommand_and_bad_values_exit_1() {
    assert_eq!(galdef(&["bogus"]).status.code(), Some(1));
    assert_eq!(galdef(&["satake", "--ell", "17", "--alpha", "2"]).status.code(), Some(1));
    assert_eq!(galdef(&["tame", "--N", "2", "--q", "2", "--ell", "7", "--partition", "1"]).status.code(), Some(1));
}

#[test]
fn help_exits_0() {
    assert_eq!(galdef(&["--help"]).status.code(), Some(0));
}

#[test]
fn same_seed_same_bytes() {
    let args = ["--seed", "11", "fl", "--ell", "5", "--N", "3"];
    let a = galdef(&args);
    let b = galdef(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_file_supplies_flags() {
    let path = std::env::temp_dir().join(format!("galdef-cli-test-{}.conf", std::process::id()));
    std::fs::write(&path, "# example run\nsubcommand = numerology\nb = 5\nN = 2\ndegF = 1\nmu-parity = same\nT-ell = 1\n").unwrap();
    let o = galdef(&["--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["results"]["g"], 4);
    // command line overrides the file
    let o = galdef(&["--config", path.to_str().unwrap(), "--b", "7"]);
    assert_eq!(json(&o)["inputs"]["b"], 7);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("galdef-cli-out-{}.json", std::process::id()));
    let o = galdef(&["--out", path.to_str().unwrap(), "tame", "--N", "2", "--q", "2", "--ell", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "tame");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn level_raising_and_satake_verdicts_pass() {
    for args in [
        &["tame", "--N", "3", "--q", "5", "--ell", "7", "--level-raising"][..],
        &["satake", "--ell", "13", "--kind", "split", "--alpha", "2,3", "--alpha2", "7,9", "--cochar", "1,0"][..],
        &["fl", "--ell", "7", "--N", "2", "--place", "split", "--fplus", "2"][..],
    ] {
        let o = galdef(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn selftest_subset() {
    let o = galdef(&["selftest", "--only", "7,8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["verdicts"].as_array().unwrap().len(), 2);
}
