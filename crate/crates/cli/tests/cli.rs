use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cf-lab")).args(args).env_remove("CF_LAB_DIGITS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn list_rows_and_filters() {
    let all = run(&["list"]);
    assert_eq!(all.status.code(), Some(0));
    assert_eq!(stdout(&all).lines().count(), 26);
    let thm = run(&["list", "--filter", "thm*"]);
    let rows: Vec<String> = stdout(&thm).lines().map(str::to_string).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("thm3_family") && rows[1].starts_with("thm4_family"));
    let json = run(&["list", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 26);
    assert_eq!(run(&["list", "--filter", "zzz*"]).status.code(), Some(1));
}

#[test]
fn eval_values_and_errors() {
    let lange = run(&["eval", "lange", "--digits", "15"]);
    assert_eq!(lange.status.code(), Some(0));
    assert!(stdout(&lange).starts_with("lange = 7.06251330593105\n"), "{}", stdout(&lange));
    let bowman = run(&["eval", "bowman", "--digits", "12"]);
    assert!(stdout(&bowman).starts_with("bowman = 0.915965594177\n"));
    let thm3 = run(&["eval", "thm3_family", "--params", "f=3", "--digits", "10"]);
    assert!(stdout(&thm3).contains("thm3_family(f=3) = "));
    let missing = run(&["eval", "nosuch"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("nosuch"));
    assert!(missing.stdout.is_empty());
    assert_eq!(run(&["eval", "thm3_family", "--params", "f=0"]).status.code(), Some(1));
    assert_eq!(run(&["eval", "brouncker", "--digits", "30", "--terms", "50"]).status.code(), Some(2));
}

#[test]
fn verify_subsets() {
    let sec5 = run(&["verify", "--filter", "sec5_*"]);
    assert_eq!(sec5.status.code(), Some(0));
    assert!(stdout(&sec5).ends_with("3 entries, 3 instantiations, 0 failures\n"));
    let quick = run(&["verify", "--digits", "5", "--filter", "brouncker"]);
    assert_eq!(quick.status.code(), Some(0));
    let perturbed = run(&["verify", "--filter", "thm4_family", "--perturb-catalan", "1e-6"]);
    assert_eq!(perturbed.status.code(), Some(2));
    // only even k (odd number of squares) involves G
    assert!(stdout(&perturbed).contains("6 instantiations, 3 failures"));
}

#[test]
fn verify_machine_formats() {
    let csv = run(&["verify", "--filter", "glaisher*", "--format", "csv"]);
    assert_eq!(csv.status.code(), Some(0));
    let mut rd = csv::Reader::from_reader(csv.stdout.as_slice());
    assert_eq!(rd.records().count(), 2);
    assert!(String::from_utf8_lossy(&csv.stderr).contains("2 instantiations"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let json = run(&["verify", "--filter", "gamma_quotient", "--format", "json", "-o", path.to_str().unwrap()]);
    assert_eq!(json.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 6);

    let md = run(&["verify", "--filter", "lange", "--format", "md"]);
    assert!(stdout(&md).starts_with("| id |"));
}

#[test]
fn transform_output() {
    let two = run(&["transform", "twofactor", "--theorem", "II", "--check", "25"]);
    assert_eq!(two.status.code(), Some(0));
    let text = stdout(&two);
    assert!(text.contains("b0 = 3; a_n = 4n^2 - 1, b_n = 4"), "{text}");
    assert!(text.contains("holds for n = 1..=25"));
    let leib = run(&["transform", "leibnitz", "--theorem", "I", "--check", "25"]);
    assert!(stdout(&leib).contains("b0 = 1; a_n = 4n^2 - 4n + 1, b_n = 2"));
    let wrong = run(&["transform", "leibnitz", "--theorem", "II"]);
    assert_eq!(wrong.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&wrong.stderr).contains("kind"));
    assert_eq!(run(&["transform", "nosuch"]).status.code(), Some(1));
}

#[test]
fn bench_profiles() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let o = run(&["bench", "--filter", "thm3*", "--terms", "200", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let mut rd = csv::Reader::from_path(&path).unwrap();
    assert_eq!(rd.headers().unwrap().iter().collect::<Vec<_>>(), ["id", "params", "n", "digits"]);
    assert_eq!(rd.records().count(), 200);

    let single = run(&["bench", "--filter", "bowman", "--terms", "50"]);
    let text = stdout(&single);
    assert_eq!(text.lines().count(), 51);
    assert!(text.lines().skip(1).all(|l| l.starts_with("bowman,")));
}

#[test]
fn constants_lines() {
    let o = run(&["constants", "--digits", "12"]);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("G     = 0.915965594177 ") && l.contains("verified: dual-method")));
    assert!(text.lines().any(|l| l.starts_with("pi    = 3.14159265358 ") && l.contains("verified: dual-method")));
    assert_eq!(run(&["constants", "--digits", "0"]).status.code(), Some(1));
    assert_eq!(run(&["constants", "--digits", "5000"]).status.code(), Some(1));
}

#[test]
fn flags_beat_environment() {
    let env = Command::new(env!("CARGO_BIN_EXE_cf-lab"))
        .args(["constants"])
        .env("CF_LAB_DIGITS", "5")
        .output()
        .unwrap();
    assert!(stdout(&env).contains("G     = 0.91596 "));
    let flag = Command::new(env!("CARGO_BIN_EXE_cf-lab"))
        .args(["constants", "--digits", "8"])
        .env("CF_LAB_DIGITS", "5")
        .output()
        .unwrap();
    assert!(stdout(&flag).contains("G     = 0.91596559 "));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["verify"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
