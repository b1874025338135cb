use std::io::Write;
use std::process::{Command, Output};

use hyperverify::verify::from_json;

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn passing_identity_exits_zero() {
    let o = verify(&["--id", "sun-a", "--digits", "40"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("PASS  sun-a"), "{text}");
    assert!(text.contains("1 reports: 1 pass, 0 fail, 0 skip"));
}

#[test]
fn failing_identity_exits_one() {
    let o = verify(&["--id", "gosper-pi", "--digits", "20"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&verify(&["--id", "nonexistent"])), 2);
    assert_eq!(code(&verify(&[])), 2);
    assert_eq!(code(&verify(&["--all", "--id", "sun-a"])), 2);
    assert_eq!(code(&verify(&["--id", "sun-a", "--digits", "many"])), 2);
    assert_eq!(
        code(&verify(&["--id", "wei-aa", "--grid", "/nonexistent/grid"])),
        2
    );
}

#[test]
fn list_shows_every_id_with_its_role() {
    let o = verify(&["--list"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    for spec in hyperverify::catalog::registry() {
        let line = text
            .lines()
            .find(|l| l.split_whitespace().next() == Some(spec.id))
            .unwrap_or_else(|| panic!("{} missing", spec.id));
        assert!(line.contains(spec.anchor), "{line}");
    }
}

#[test]
fn json_is_byte_stable_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let o = verify(&[
            "--id",
            "wei-aa",
            "--no-timing",
            "--json",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let reports = from_json(&text).unwrap();
    assert_eq!(reports.len(), 65);
    assert!(reports.iter().all(|r| r.is_pass()));
    assert_eq!(hyperverify::verify::to_json(&reports), text);
}

#[test]
fn numeric_json_uses_requested_significant_figures() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = verify(&[
        "--id",
        "ramanujan-pi",
        "--digits",
        "20",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let reports = from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let mantissa = reports[0].claimed.split('e').next().unwrap();
    let figures = mantissa.chars().filter(char::is_ascii_digit).count();
    assert_eq!(figures, 25, "{}", reports[0].claimed);
}

#[test]
fn grid_file_selects_points() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# two records").unwrap();
    writeln!(f, "wei-aa 2/7 3").unwrap();
    writeln!(f, "wei-aa -1/3 2").unwrap();
    let o = verify(&["--id", "wei-aa", "--grid", f.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("7 reports: 7 pass"), "{text}");
}

#[test]
fn malformed_grid_file_exits_two() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "wei-aa 0.25 3").unwrap();
    let o = verify(&["--id", "wei-aa", "--grid", f.path().to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn precision_override_is_accepted() {
    let o = verify(&["--id", "sun-a", "--digits", "30", "--precision-bits", "256"]);
    assert_eq!(code(&o), 0);
}
