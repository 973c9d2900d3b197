use std::fs;
use std::process::{Command, Output};

fn bvloop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bvloop"))
        .args(args)
        .output()
        .expect("bvloop runs")
}

fn stdout(args: &[&str]) -> String {
    let out = bvloop(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn stderr_line(args: &[&str]) -> (i32, String) {
    let out = bvloop(args);
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn eval_examples() {
    assert_eq!(
        stdout(&["eval", "--model", "s3", "bracket(a1,u1)"]),
        "-1 : degree 0 (loop-homology)\n"
    );
    assert_eq!(
        stdout(&["eval", "--model", "s3", "cap(Delta(alpha1), u1^2)"]),
        "2*u1 : degree 2 (loop-homology)\n"
    );
    assert_eq!(
        stdout(&["eval", "--model", "s3", "product(s(a1), u1)"]),
        "a1*u1 : degree -1 (loop-homology)\n"
    );
    assert_eq!(
        stdout(&["eval", "--model", "su3", "--json", "Delta(a1*a2*u2)"]),
        "{\"degree\":-3,\"model\":\"su3\",\"ring\":\"loop-homology\",\"value\":\"-a1\"}\n"
    );
    assert_eq!(
        stdout(&["eval", "--model", "su3", "--unicode", "a1*u2^3 - 1/2"]),
        "a₁u₂³ - 1/2 : inhomogeneous (loop-homology)\n"
    );
}

#[test]
fn intersect_examples() {
    assert_eq!(
        stdout(&[
            "intersect",
            "--model",
            "s3",
            "--free",
            "alpha1",
            "--family",
            "u1^2"
        ]),
        "2*u1\n"
    );
    assert_eq!(
        stdout(&[
            "intersect",
            "--model",
            "s3",
            "--free",
            "alpha1,alpha1",
            "--family",
            "u1^3"
        ]),
        "-6*u1\n"
    );
    assert_eq!(
        stdout(&[
            "intersect",
            "--model",
            "s3",
            "--at",
            "alpha1",
            "--family",
            "u1^2"
        ]),
        "a1*u1^2\n"
    );
}

#[test]
fn diagnostics_are_one_line_with_nonzero_exit() {
    for (args, needle) in [
        (vec!["eval", "--model", "s4", "a1"], "is even"),
        (vec!["eval", "--model", "nonsense", "a1"], "unknown model"),
        (
            vec!["eval", "--model", "/no/such/file.json", "a1"],
            "unknown model",
        ),
        (
            vec!["eval", "--model", "s3", "a1 ** u1"],
            "1:5: expected an operand",
        ),
        (
            vec!["eval", "--model", "s3", "a2"],
            "unknown identifier `a2`",
        ),
        (
            vec!["eval", "--model", "s3", "a1 * alpha1"],
            "product within one ring",
        ),
        (
            vec!["check", "--model", "s3", "--only", "nope"],
            "unknown identity `nope`",
        ),
    ] {
        let (code, err) = stderr_line(&args);
        assert_eq!(code, 2, "{args:?}");
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(err.contains(needle), "{args:?}: {err}");
    }
    let (code, _) = stderr_line(&["check", "--model", "s3", "--trials", "0"]);
    assert_ne!(code, 0);
}

#[test]
fn model_files_are_accepted() {
    let dir = std::env::temp_dir().join(format!("bvloop-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("model.json");
    fs::write(&path, r#"{"name": "s3xs5", "generator_degrees": [3, 5]}"#).unwrap();
    let out = stdout(&["eval", "--model", path.to_str().unwrap(), "bracket(a2, u2)"]);
    assert_eq!(out, "-1 : degree 0 (loop-homology)\n");
    fs::write(&path, "{ not json").unwrap();
    let (code, err) = stderr_line(&["eval", "--model", path.to_str().unwrap(), "a1"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error: invalid model"), "{err}");
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn check_exit_status_and_replay() {
    let pass = bvloop(&[
        "check", "--model", "s3", "--trials", "20", "--seed", "3", "--json",
    ]);
    assert!(pass.status.success());
    let text = String::from_utf8(pass.stdout).unwrap();
    assert!(text.lines().all(|l| l.contains(r#""status":"pass""#)));

    let fail = bvloop(&[
        "check",
        "--model",
        "su3",
        "--trials",
        "50",
        "--seed",
        "3",
        "--json",
        "--mutation",
        "unsigned-odd-derivative",
        "--only",
        "delta-squared,loop-unit",
    ]);
    assert_eq!(fail.status.code(), Some(1));
    let reports = String::from_utf8(fail.stdout).unwrap();
    assert!(reports
        .lines()
        .next()
        .unwrap()
        .contains(r#""status":"fail""#));
    assert!(reports
        .lines()
        .nth(1)
        .unwrap()
        .contains(r#""status":"pass""#));

    let dir = std::env::temp_dir().join(format!("bvloop-replay-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("reports.jsonl");
    fs::write(&path, &reports).unwrap();
    let path = path.to_str().unwrap();
    let again = bvloop(&[
        "check",
        "--model",
        "su3",
        "--json",
        "--mutation",
        "unsigned-odd-derivative",
        "--replay",
        path,
    ]);
    assert_eq!(again.status.code(), Some(1));
    assert_eq!(String::from_utf8(again.stdout).unwrap(), reports);
    // Without the defect the replay no longer matches the recorded failure.
    let (code, err) = stderr_line(&["check", "--model", "su3", "--json", "--replay", path]);
    assert_eq!(code, 1);
    assert!(err.contains("replay differs for `delta-squared`"), "{err}");
    let (code, err) = stderr_line(&["check", "--model", "s3", "--replay", path]);
    assert_eq!(code, 2);
    assert!(err.contains("replay mismatch"), "{err}");
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn table_and_models() {
    let table = stdout(&[
        "table",
        "--model",
        "s3",
        "--op",
        "bracket",
        "--max-degree",
        "2",
    ]);
    assert!(table.contains("bracket(a1, u1) = -1\n"), "{table}");
    let table = stdout(&["table", "--model", "s3", "--op", "cap", "--max-degree", "4"]);
    assert!(table.contains("cap(v1^2, u1^2) = 2\n"), "{table}");
    assert!(table.contains("cap(alpha1, u1) = a1*u1\n"), "{table}");
    let product = stdout(&[
        "table",
        "--model",
        "su3",
        "--op",
        "product",
        "--max-degree",
        "0",
        "--json",
    ]);
    assert_eq!(
        product,
        stdout(&[
            "table",
            "--model",
            "su3",
            "--op",
            "product",
            "--max-degree",
            "0",
            "--json"
        ])
    );
    let models = stdout(&["models"]);
    for name in [
        "s<n>",
        "su<n>",
        "exterior:",
        "su3",
        "degrees [3, 5], dimension 8",
    ] {
        assert!(models.contains(name), "{models}");
    }
}
