use std::process::{Command, Output};

fn hnnkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hnnkit")).args(args).env_remove("HNNKIT_MEM_CAP").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn body(o: &Output) -> String {
    stdout(o).lines().filter(|l| !l.starts_with('#')).collect::<Vec<_>>().join("\n")
}

fn report(o: &Output) -> serde_json::Value {
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    v["report"].clone()
}

#[test]
fn normalize_examples() {
    let o = hnnkit(&["normalize", "--preset", "wise", "s'as"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("d"));
    assert!(stdout(&o).contains("signature: []"));

    let o = hnnkit(&["normalize", "--preset", "wise", ""]);
    assert_eq!(stdout(&o).lines().next(), Some("identity"));

    let o = hnnkit(&["normalize", "--preset", "g2", "s'bbbs"]);
    assert_eq!(stdout(&o).lines().next(), Some("aba"));

    let o = hnnkit(&["normalize", "--preset", "wise", "ast'b"]);
    assert!(stdout(&o).contains("signature: [s, t']"));

    let o = hnnkit(&["normalize", "--preset", "z2_abcd", "cc", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["normal_form"], "d");
}

#[test]
fn exit_codes() {
    assert_eq!(hnnkit(&["verify-isometric", "--preset", "g2"]).status.code(), Some(0));
    // unknown preset, bad word, missing source
    let o = hnnkit(&["normalize", "--preset", "wize", "a"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("wise, g2, z2_abcd, z2_ab, f2"));
    assert_eq!(hnnkit(&["normalize", "--preset", "wise", "axq"]).status.code(), Some(2));
    assert_eq!(hnnkit(&["ball", "-N", "2"]).status.code(), Some(2));
    assert_eq!(hnnkit(&["ball", "--preset", "wise", "-N", "6", "--mem-cap", "1000"]).status.code(), Some(2));
    assert_eq!(hnnkit(&["signatures", "--preset", "f2"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("bs.hnn");
    std::fs::write(&spec, "base { kind = abelian generators = [a] relators = [] }\nstable s { u = [aa] v = [a] }\n")
        .unwrap();
    let spec = spec.to_str().unwrap();
    let o = hnnkit(&["verify-isometric", "--spec", spec, "--max-len", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).trim_end().ends_with("FAIL"));
    assert_eq!(hnnkit(&["signatures", "--spec", spec, "-N", "5"]).status.code(), Some(1));

    let broken = dir.path().join("broken.hnn");
    std::fs::write(&broken, "base { kind = free generators = [a] relators = [\"aa\"] }\n").unwrap();
    assert_eq!(hnnkit(&["ball", "--spec", broken.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn ball_csv_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ball.csv");
    let o = hnnkit(&["ball", "--preset", "z2_ab", "-N", "1", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("# command: ball"));
    let csv = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "key,distance,geodesic,count");
    assert_eq!(lines.len(), 6);

    let o = hnnkit(&["ball", "--preset", "wise", "-N", "2"]);
    let b = body(&o);
    assert!(b.contains("1  12      13"), "{b}");
}

#[test]
fn reports_end_with_verdict() {
    let o = hnnkit(&["ac", "--preset", "wise", "-N", "3", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("# hnnkit "));
    assert!(out.contains("max{6k+2, 4max|u|}"));
    assert!(out.trim_end().ends_with("PASS"));

    let o = hnnkit(&["fftp", "--preset", "z2_ab", "--max-len", "5", "--k-cap", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(report(&o)["k_min"], 2);

    let o = hnnkit(&["signatures", "--preset", "wise", "-N", "4", "--format", "json"]);
    assert_eq!(report(&o)["violation_count"], 0);
}

#[test]
fn output_independent_of_jobs() {
    let runs: &[&[&str]] = &[
        &["ball", "--preset", "wise", "-N", "4", "--format", "dot"],
        &["ball", "--preset", "g2", "-N", "4", "--format", "json"],
        &["ac", "--preset", "g2", "-N", "4", "--k", "2", "--format", "json"],
        &["ac", "--preset", "z2_abcd", "-N", "4", "--max-len", "5", "--k-cap", "4"],
        &["fftp", "--preset", "wise", "--max-len", "3", "--k-cap", "2", "--pairs", "--format", "json"],
        &["fftp", "--preset", "f2", "--max-len", "6", "--mode", "sampled:500:3", "--format", "json"],
        &["verify-isometric", "--preset", "wise", "--format", "json"],
        &["signatures", "--preset", "g2", "-N", "4"],
    ];
    for args in runs {
        let one = hnnkit(&[args, &["--jobs", "1"][..]].concat());
        let eight = hnnkit(&[args, &["--jobs", "8"][..]].concat());
        assert!(one.status.success(), "{args:?}");
        if args.contains(&"json") && args[0] != "ball" {
            assert_eq!(report(&one), report(&eight), "{args:?}");
        } else {
            assert_eq!(body(&one), body(&eight), "{args:?}");
        }
    }
}
