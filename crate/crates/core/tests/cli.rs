use std::io::Write;
use std::process::{Command, Stdio};

fn dspl(args: &[&str]) -> (bool, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dspl")).args(args).output().unwrap();
    (out.status.success(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn temp(name: &str) -> String {
    std::env::temp_dir().join(format!("dspl_cli_{}_{name}", std::process::id())).to_string_lossy().into_owned()
}

#[test]
fn gen_then_entropy_and_build() {
    let f = temp("g.sub");
    let (ok, _, err) = dspl(&["gen", "--n", "400", "--kind", "convex", "--weights", "zipf:1.5", "--seed", "4", "--out", &f]);
    assert!(ok, "{err}");
    let (ok, out, _) = dspl(&["entropy", &f]);
    assert!(ok);
    let h: f64 = out.trim().parse().unwrap();
    assert!(h > 0.0);
    let (ok, out, err) = dspl(&["build", &f, "--structure", "quadtree"]);
    assert!(ok, "{err}");
    assert!(out.contains("d_max "), "{out}");
    std::fs::remove_file(f).ok();
}

#[test]
fn query_echo_format() {
    let f = temp("q.sub");
    assert!(dspl(&["gen", "--n", "200", "--seed", "1", "--out", &f]).0);
    let mut child = Command::new(env!("CARGO_BIN_EXE_dspl"))
        .args(["query", &f, "--rotate-gp"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"0.5 0.5\n# comment\n0.25 0.75\n").unwrap();
    let out = String::from_utf8(child.wait_with_output().unwrap().stdout).unwrap();
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    for (qid, l) in lines.iter().enumerate() {
        let t: Vec<&str> = l.split_whitespace().collect();
        assert_eq!(t.len(), 4, "{l}");
        assert_eq!(t[0], qid.to_string());
        t[1].parse::<i64>().unwrap();
        t[2].parse::<usize>().unwrap();
        t[3].parse::<f64>().unwrap();
    }
    std::fs::remove_file(f).ok();
}

#[test]
fn bench_kv_is_reproducible() {
    let f = temp("b.sub");
    assert!(dspl(&["gen", "--n", "300", "--kind", "general", "--seed", "2", "--out", &f]).0);
    let run = || dspl(&["bench", &f, "--rotate-gp", "--queries", "3000", "--kv"]).1;
    let strip = |s: String| s.lines().filter(|l| !l.contains("_ms=")).collect::<Vec<_>>().join("\n");
    let a = strip(run());
    assert!(a.contains("entropy_bits="), "{a}");
    assert_eq!(a, strip(run()));
    std::fs::remove_file(f).ok();
}

#[test]
fn svg_and_errors() {
    let f = temp("s.sub");
    let svg = temp("s.svg");
    assert!(dspl(&["gen", "--n", "100", "--seed", "3", "--out", &f]).0);
    let (ok, _, err) = dspl(&["svg", &f, "--what", "decomposition", "--alpha-check", "--rotate-gp", "--out", &svg]);
    assert!(ok, "{err}");
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<svg"));
    let (ok, _, err) = dspl(&["entropy", "/nonexistent/x.sub"]);
    assert!(!ok);
    assert!(err.starts_with("dspl: "), "{err}");
    std::fs::remove_file(f).ok();
    std::fs::remove_file(svg).ok();
}
