use std::io::Write;
use std::process::{Command, Output, Stdio};

fn acl(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_acl"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn a_proof_printed_as_json_checks_when_fed_back() {
    let o = acl(&["--format", "json-lines", "prove", "a, a |- 2 a"], "");
    assert_eq!(o.status.code(), Some(0));
    let record: serde_json::Value =
        serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(record["status"], "proved");
    let proof = record["proof"].as_str().unwrap();
    let checked = acl(&["check-proof", "-"], proof);
    assert_eq!(checked.status.code(), Some(0), "{}", stdout(&checked));
}

#[test]
fn exit_codes_separate_outcomes_from_usage_errors() {
    assert_eq!(acl(&["prove", "a |- b"], "").status.code(), Some(1));
    assert_eq!(
        acl(&["valid", "a |- b", "--lattice", "nope:3"], "")
            .status
            .code(),
        Some(2)
    );
    assert_eq!(acl(&["prove", "a |-"], "").status.code(), Some(2));
    assert_eq!(
        acl(&["eval", "v", "--lattice", "luk:1"], "").status.code(),
        Some(3)
    );
}

#[test]
fn countermodel_output_does_not_depend_on_thread_count() {
    let one = acl(
        &[
            "--jobs",
            "1",
            "countermodel",
            "a |- a + a",
            "--lattice",
            "luk:4",
        ],
        "",
    );
    let four = acl(
        &[
            "--jobs",
            "4",
            "countermodel",
            "a |- a + a",
            "--lattice",
            "luk:4",
        ],
        "",
    );
    // A countermodel means the sequent is refuted, the negative outcome.
    assert_eq!(one.status.code(), Some(1));
    assert_eq!(stdout(&one), stdout(&four));
    assert!(stdout(&one).starts_with("countermodel over luk:4"));
}

#[test]
fn evaluation_doubles_a_step_function() {
    let o = acl(
        &[
            "eval",
            "2 v",
            "--lattice",
            "luk:3",
            "--bind",
            "v=step(1/2=1/2,1=1)",
        ],
        "",
    );
    assert_eq!(stdout(&o).trim(), "step(1=1/2)");
}

#[test]
fn the_two_antichain_completes_to_four_elements() {
    let o = acl(&["complete-poset", "-"], "elements x y\n");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("completion has 4 elements"));
}

#[test]
fn contraction_readings_agree_over_a_non_locale() {
    let o = acl(&["rule", "contraction", "--lattice", "luk:3"], "");
    let text = stdout(&o);
    assert!(text.contains("holds in luk:3: false"), "{text}");
    assert!(text.contains("readings agree"), "{text}");
}
