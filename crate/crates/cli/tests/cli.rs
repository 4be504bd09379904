use std::process::{Command, Output};

fn k3cm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3cm")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn bad_primes() {
    let o = k3cm(&["bad-primes", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("X1: [2, 3]"));
    let o = k3cm(&["bad-primes", "4"]);
    assert!(stdout(&o).contains("X4: no surface known"));
}

#[test]
fn count_curve() {
    let o = k3cm(&["count-curve", "1", "--p", "17", "--m", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("#C = 12 t = 6"), "{}", stdout(&o));
}

#[test]
fn count_surface_json() {
    let o = k3cm(&["--json", "count-surface", "1", "--p", "17"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["s"], 6);
}

#[test]
fn match_curve_succeeds() {
    let o = k3cm(&["match", "curve", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("A1 proved-match"));
    assert!(s.contains("conductor norm  4096"));
}

#[test]
fn tiny_prime_bound_is_inconclusive() {
    let o = k3cm(&["--prime-bound", "2", "match", "curve", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("inconclusive"));
}

#[test]
fn bad_reduction_is_an_error() {
    let o = k3cm(&["count-surface", "1", "--p", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}
