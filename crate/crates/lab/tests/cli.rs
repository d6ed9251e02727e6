use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_alcove-lab"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn admissible_prime_exits_zero() {
    let (code, out) = run(&["--builtin", "hilb:3:0", "validate-p", "--p", "23"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("\"passed\": true"));
}

#[test]
fn inadmissible_prime_exits_one() {
    let (code, _) = run(&["--builtin", "hilb:3:0", "validate-p", "--p", "13"]);
    assert_eq!(code, 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["alcove", "--point", "0"]).0, 2);
    assert_eq!(run(&["--builtin", "hilb:3:0", "order", "--point", "2", "--p", "23", "--window", "3"]).0, 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["--builtin", "hilb:3:0", "compatible", "--point=-7/12"];
    let (c1, a) = run(&args);
    let (c2, b) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
}

#[test]
fn export_round_trips_through_a_file() {
    let (code, json) = run(&["--builtin", "hilb:2:0", "order", "--point", "2", "--p", "5", "--window", "0:2"]);
    assert_eq!(code, 0);
    let path = std::env::temp_dir().join(format!("alcove-lab-export-{}.json", std::process::id()));
    std::fs::write(&path, &json).unwrap();
    let (code, dot) = run(&["export", "--input", path.to_str().unwrap(), "--format", "dot"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    assert!(dot.starts_with("digraph poset"));
    assert_eq!(dot.matches("[label=").count(), 4);
}

#[test]
fn wallcross_marks_unsupported_entries() {
    let (code, out) = run(&["wallcross", "--n", "4", "--b", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("EXTERNAL").count(), 3);
}
