//! End-to-end checks of the installed binary: exit codes and output shape.

use std::io::Write;
use std::process::Command;

fn solvknot(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_solvknot"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn query_examples() {
    let out = solvknot(&["order", "j"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "order 6");

    let out = solvknot(&["orbit", "g+", "x^2y^2z^-2"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("n = 3"));

    let out = solvknot(&["doubly-slice", "pi(0,-1)"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("doubly slice"));
}

#[test]
fn usage_errors_exit_2() {
    // parse error in an expression
    let out = solvknot(&["order", "qq"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown identifier"));

    // invalid config file
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "gammaParams = (1,1)").unwrap();
    let out = solvknot(&["verify", "--config", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // clap usage errors also exit 2
    let out = solvknot(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_small_config_is_deterministic_and_green() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "gammaParams = (0,-1)\nsearchRadius = 3").unwrap();
    let path = f.path().to_str().unwrap();
    let a = solvknot(&["verify", "--config", path]);
    assert_eq!(a.status.code(), Some(0));
    let b = solvknot(&["verify", "--config", path]);
    assert_eq!(a.stdout, b.stdout, "byte-identical JSON across runs");
    let text = String::from_utf8_lossy(&a.stdout);
    assert!(text.contains("\"claimId\": \"S6.out-order\""));
    assert!(text.contains("bounded(3)"));

    let md = solvknot(&["verify", "--config", path, "--format", "md"]);
    assert_eq!(md.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&md.stdout).starts_with("# Verification report"));
}
