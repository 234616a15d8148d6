mod common;

use std::process::Command;

use orbcone::cli::{EXIT_INVALID, EXIT_OK, EXIT_USAGE};
use orbcone::fixtures::FIXTURE_FILES;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_orbcone"))
}

fn names() -> Vec<&'static str> {
    FIXTURE_FILES.iter().map(|(n, _)| *n).collect()
}

#[test]
fn golden_files_match() {
    let bless = std::env::var_os("ORBCONE_BLESS").is_some();
    for name in names() {
        for json in [false, true] {
            let got = common::render_all(name, json);
            let path = common::golden_path(name, json);
            if bless {
                std::fs::create_dir_all(path.parent().unwrap()).unwrap();
                std::fs::write(&path, &got).unwrap();
            }
            let want = std::fs::read_to_string(&path)
                .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            assert_eq!(got, want, "{}", path.display());
        }
    }
}

#[test]
fn repeated_binary_runs_are_identical() {
    for name in names() {
        let file = common::fixture_path(name);
        for cmd in common::COMMANDS {
            let run = || bin().arg(cmd).arg(&file).arg("--json").output().unwrap();
            let (a, b) = (run(), run());
            assert_eq!(a.stdout, b.stdout, "{name} {cmd}");
            assert_eq!(a.status.code(), b.status.code());
        }
    }
}

#[test]
fn football_verify_text() {
    let out = bin()
        .arg("verify")
        .arg(common::fixture_path("football"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("(0,1), (1,-1)"), "{text}");
    assert!(text.contains("verdict: equal"), "{text}");
}

#[test]
fn class_of_one_ps_accepts_negative_b() {
    let out = bin()
        .args(["class-of-1ps"])
        .arg(common::fixture_path("football"))
        .args(["--b", "-3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Ξ[Y0] + 1·Ξ[ρ1]"), "{text}");
}

fn write_temp(name: &str, body: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("orbcone-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn incomplete_fan_exits_with_validation_code() {
    let p = write_temp(
        "half-line.json",
        r#"{"name":"half-line","rank":1,"rays":[{"beta_free":[1]}],"max_cones":[[0]]}"#,
    );
    for cmd in ["validate", "verify", "box"] {
        let out = bin().arg(cmd).arg(&p).output().unwrap();
        assert_eq!(out.status.code(), Some(EXIT_INVALID), "{cmd}");
    }
}

#[test]
fn usage_errors_exit_64() {
    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    let out = bin()
        .arg("verify")
        .arg("/nonexistent/fan.json")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    let p = write_temp("garbage.json", "{ not json");
    let out = bin().arg("rays").arg(&p).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    let out = bin()
        .arg("class-of-1ps")
        .arg(common::fixture_path("football"))
        .args(["--b", "1,2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
}

#[test]
fn help_exits_zero() {
    let out = bin().arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("class-of-1ps"));
}
