use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn lcaf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcaf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, content).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn plain_solvers_on_small_files() {
    let dir = TempDir::new().unwrap();
    let s = write(dir.path(), "s.txt", "aabb\n");
    let t = write(dir.path(), "t.txt", "abab\n");
    let o = lcaf(&["lcaf", p(&s), p(&t), "--algo", "oracle"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "4\n".to_string()));

    let o = lcaf(&["lcaf", p(&s), p(&t), "--algo", "bucketed", "--json", "--no-timing"]);
    assert_eq!(
        stdout(&o),
        "{\"length\":4,\"parikh\":[2,2],\"algorithm\":\"bucketed\",\"time_ns\":null}\n"
    );

    let o = lcaf(&["lcaf", p(&s), p(&t), "--json", "--witness"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["occurrences"], serde_json::json!([[0, 4], [0, 4]]));
    assert_eq!(v["algorithm"], "bucketed");
    assert!(v["time_ns"].is_u64());
}

#[test]
fn bucketed_refuses_seven_symbols() {
    let dir = TempDir::new().unwrap();
    let s = write(dir.path(), "s.txt", "abcdefg");
    let o = lcaf(&["lcaf", p(&s), p(&s), "--algo", "bucketed"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("word budget exceeded; use oracle"));
    let o = lcaf(&["lcaf", p(&s), p(&s)]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "7\n".to_string()));
}

#[test]
fn rle_solvers_agree() {
    let dir = TempDir::new().unwrap();
    let s = write(dir.path(), "s.rle", "a 5\nb 3\n");
    let t = write(dir.path(), "t.rle", "# comment\nb 2\n\na 4\n");
    for algo in ["cubic", "binary", "geometric", "auto"] {
        let o = lcaf(&["rle-lcaf", p(&s), p(&t), "--algo", algo]);
        assert_eq!((o.status.code(), stdout(&o)), (Some(0), "6\n".to_string()), "{algo}");
    }
    let o = lcaf(&["rle-lcaf", p(&s), p(&t), "--witness"]);
    assert_eq!(stdout(&o), "6\nparikh (4,2)\ns 1..7\nt 0..6\n");
}

#[test]
fn rle_input_errors() {
    let dir = TempDir::new().unwrap();
    let four = write(dir.path(), "four.rle", "a 1\nb 1\nc 1\nd 1\n");
    let o = lcaf(&["rle-lcaf", p(&four), p(&four), "--algo", "geometric"]);
    assert_eq!(o.status.code(), Some(2));
    let bad = write(dir.path(), "bad.rle", "a 1\na 2\n");
    assert_eq!(lcaf(&["rle-lcaf", p(&bad), p(&four)]).status.code(), Some(2));
    let zero = write(dir.path(), "zero.rle", "a 0\n");
    assert_eq!(lcaf(&["rle-lcaf", p(&zero), p(&four)]).status.code(), Some(2));
    let missing = dir.path().join("nope");
    assert_eq!(lcaf(&["rle-lcaf", p(&missing), p(&four)]).status.code(), Some(2));
}

#[test]
fn gen_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for out in [&a, &b] {
        let o = lcaf(&["gen", "--n", "10", "--sigma", "2", "--seed", "1", "--out", p(out)]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let o = lcaf(&["gen", "--m-runs", "5", "--sigma", "3", "--seed", "7"]);
    assert_eq!(stdout(&o).lines().count(), 5);
    assert_eq!(lcaf(&["gen", "--n", "4", "--sigma", "0"]).status.code(), Some(2));
    assert_eq!(lcaf(&["gen", "--sigma", "2"]).status.code(), Some(2));
}

#[test]
fn verify_and_bench() {
    let o = lcaf(&["verify", "--trials", "200", "--n-max", "30", "--algos", "bucketed,oracle"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = lcaf(&["verify", "--trials", "100", "--algos", "cubic,geometric,binary", "--parallel"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let o = lcaf(&["bench", "--algo", "cubic", "--sizes", "10,20", "--reps", "2"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "algo,n,m,sigma,seed,rep,time_ns,answer");
    assert_eq!(lines.len(), 5);
    assert_eq!(lcaf(&["bench", "--algo", "cubic", "--sizes", "5", "--reps", "0"]).status.code(), Some(2));
}

#[test]
fn help_exits_cleanly() {
    let o = lcaf(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rle-lcaf"));
    assert_eq!(lcaf(&["frobnicate"]).status.code(), Some(2));
}
