use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dimerlab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(text) = stdin {
        child.stdin.as_mut().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args, None);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn count_prints_value_and_factorization() {
    assert_eq!(stdout(&["count", "aztec_diamond(4)"]), "1024\n2^10\n");
}

#[test]
fn count_reads_vax_from_stdin() {
    let out = run(&["count", "--vax", "-"], Some("XX\nXX\n"));
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().next(), Some("2"));
}

#[test]
fn verify_hexagonal_dungeons() {
    let text = stdout(&["verify", "hex_dungeon", "a=1..2", "b=2a..2a+2"]);
    assert!(text.ends_with("hex_dungeon: 6 points, 0 mismatches\n"), "{text}");
}

#[test]
fn verify_mismatch_exits_one() {
    let out = run(&["verify", "aztec_dungeon", "n=3"], None);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn parse_errors_exit_two() {
    assert_eq!(run(&["count", "nope(1)"], None).status.code(), Some(2));
    assert_eq!(run(&["count", "--vax", "-"], Some("XQ\n")).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(run(&["verify", "aztec", "n=1..x"], None).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_three() {
    assert_eq!(run(&["probs", "rectangle(3,3)"], None).status.code(), Some(3));
    assert_eq!(run(&["count", "hypercube(6)"], None).status.code(), Some(3));
    assert_eq!(run(&["invsum", "0"], None).status.code(), Some(3));
}

#[test]
fn json_errors_are_structured() {
    let out = run(&["--json", "count", "nope(1)"], None);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["code"], 2);
    assert_eq!(v["error"]["kind"], "parse");
}

#[test]
fn soft_limits_and_force() {
    let out = run(&["tableaux", "8", "8"], None);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("use force"));
    assert_eq!(run(&["count", "rectangle(36,36)"], None).status.code(), Some(3));
    assert_eq!(stdout(&["--force", "count", "hypercube(4)"]).lines().next(), Some("272"));
}

#[test]
fn sample_is_reproducible() {
    let a = stdout(&["sample", "aztec_diamond(3)", "--seed", "42"]);
    assert_eq!(a, stdout(&["sample", "aztec_diamond(3)", "--seed", "42"]));
    assert_eq!(a.lines().count(), 12);
}

#[test]
fn assorted_subcommands() {
    assert_eq!(stdout(&["factor", "5187"]).lines().next(), Some("5187 = 3 * 7 * 13 * 19"));
    assert_eq!(stdout(&["cokernel", "carlitz(2,2,2)"]).lines().nth(1), Some("2 10"));
    assert_eq!(stdout(&["invsum", "2"]), "5/2 (formula 5/2, match)\n");
    assert_eq!(stdout(&["moments", "3"]), "Ix = 12\nIy = 93\n");
    assert!(stdout(&["recurrence", "1", "2", "3", "5", "8", "13", "21", "34", "55", "89"]).starts_with("degree 2"));
    assert!(stdout(&["recurrence", "--strip", "2", "--count", "12"]).starts_with("degree 2"));
    assert_eq!(stdout(&["tableaux", "2", "6"]).lines().last(), Some("equal"));
    assert!(stdout(&["rewrite", "aztec_diamond(2)"]).contains("total factor 8"));
    assert_eq!(stdout(&["generate", "aztec_diamond(2)"]), " XX\nXXXX\nXXXX\n XX\n");
    assert!(stdout(&["kkstar", "hexagon(1,1,1)"]).contains("sqrt = 2"));
    assert!(stdout(&["probs", "hexagon(1,2,1)"]).contains("central edge"));
}

#[test]
fn svg_to_file() {
    let dir = std::env::temp_dir().join(format!("dimerlab-svg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.svg");
    let out = run(&["svg", "hexagon(2,2,2)", "--overlay", "sample", "--seed", "1", "-o", path.to_str().unwrap()], None);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<?xml") && svg.contains("class=\"tile\""));
    std::fs::remove_dir_all(&dir).unwrap();
}
