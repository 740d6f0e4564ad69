//! End-to-end tests of the command-line interface: exit codes, deterministic
//! output, and the JSON report round-trip.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_motivic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn compute_outputs_are_exact_and_deterministic() {
    let out = run(&["compute", "qs-class", "--gset", "regular"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "L^4 - [K]*L^3 + (3*[K] - [E1] - [E2] - [E12])*L^2 - [K]*L + (-1 - [K] + [E1] + [E2] + [E12])\n"
    );
    let again = run(&["compute", "qs-class", "--gset", "regular"]);
    assert_eq!(out.stdout, again.stdout);

    let marks = run(&["compute", "marks", "--elem", "2+[K]-[E1]-[E2]-[E12]"]);
    assert_eq!(code(&marks), 0);
    assert_eq!(String::from_utf8_lossy(&marks.stdout), "(0,0,0,0,2)\n");

    let p1 = run(&["compute", "p1-class", "--gset", "coset:E12"]);
    assert_eq!(String::from_utf8_lossy(&p1.stdout), "L^2 + [E12]*L + 1\n");

    let mul = run(&["compute", "burnside-mul", "--a", "[E1]", "--b", "[E2]"]);
    assert_eq!(String::from_utf8_lossy(&mul.stdout), "[K]\n");
}

#[test]
fn check_exit_codes() {
    // all assertions pass (discrepancies allowed without --strict)
    assert_eq!(code(&run(&["check", "thm15"])), 0);
    assert_eq!(code(&run(&["check", "thm16", "--m", "2"])), 0);
    assert_eq!(code(&run(&["check", "lemma-t"])), 0);
    // discrepancies flip to failures under --strict
    assert_eq!(code(&run(&["check", "lemma-t", "--strict"])), 1);
    // input errors are exit 2 with no assertion output
    let missing = run(&["check", "thm15", "--context", "missing.json"]);
    assert_eq!(code(&missing), 2);
    assert!(missing.stdout.is_empty());
    assert_eq!(code(&run(&["check", "unknown-scenario"])), 2);
    assert_eq!(code(&run(&["frobnicate", "x"])), 2);
    assert_eq!(code(&run(&["check", "thm16", "--m", "0"])), 2);
}

#[test]
fn json_report_roundtrips_byte_identically() {
    let out = run(&["check", "thm16", "--json", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let parsed: motivic::scenario::ScenarioReport = serde_json::from_str(&text).unwrap();
    let reserialized = parsed.to_json() + "\n";
    assert_eq!(text, reserialized);
    // witness marks of the inequality are visible in the report
    assert!(text.contains("(0,0,0,0,2)"));
}

#[test]
fn report_to_file() {
    let dir = std::env::temp_dir().join(format!("motivic-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&["check", "basics", "--json", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.contains("\"scenario\": \"basics\""));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn json_gset_and_lattice_inputs() {
    let dir = std::env::temp_dir().join(format!("motivic-cli-io-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let gset_path = dir.join("eset.json");
    std::fs::write(
        &gset_path,
        r#"{"gset":{"transitive":[{"stabilizer":["s1"]},{"stabilizer":["s2"]}]}}"#,
    )
    .unwrap();
    let by_file = run(&[
        "compute",
        "qs-class",
        "--gset",
        &format!("@{}", gset_path.display()),
    ]);
    assert_eq!(code(&by_file), 0);
    let by_name = run(&["compute", "qs-class", "--gset", "coset:E1+coset:E2"]);
    assert_eq!(by_file.stdout, by_name.stdout);

    let lat_path = dir.join("sign.json");
    std::fs::write(
        &lat_path,
        r#"{"rank":1,"action":{"s1":[[-1]],"s2":[[-1]]}}"#,
    )
    .unwrap();
    let out = run(&[
        "compute",
        "torus-class",
        "--lattice",
        &format!("@{}", lat_path.display()),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "L + (1 - [E12])\n");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn custom_context_file() {
    let dir = std::env::temp_dir().join(format!("motivic-cli-ctx-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("context.json");
    std::fs::write(
        &path,
        r#"{"group":{"degree":4,"generators":[[1,0,2,3],[0,1,3,2]]},
            "fields":[{"subgroup":[],"name":"K"},
                      {"subgroup":["s1"],"name":"E1"},
                      {"subgroup":["s2"],"name":"E2"},
                      {"subgroup":["s1*s2"],"name":"E12"},
                      {"subgroup":["s1","s2"],"name":"F"}]}"#,
    )
    .unwrap();
    let out = run(&["check", "thm15", "--context", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    // malformed JSON is an input error with a message on stderr
    std::fs::write(&path, "{not json").unwrap();
    let bad = run(&["check", "thm15", "--context", path.to_str().unwrap()]);
    assert_eq!(code(&bad), 2);
    assert!(bad.stdout.is_empty());
    assert!(!bad.stderr.is_empty());
    std::fs::remove_dir_all(&dir).ok();
}
