use std::path::{Path, PathBuf};
use std::process::Command;

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_ydcheck"))
        .args(args)
        .current_dir(golden_dir())
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

/// (golden file, arguments, exit status)
const GOLDEN: &[(&str, &[&str], i32)] = &[
    ("ybe.json", &["check", "ybe"], 0),
    ("unitarity.json", &["check", "unitarity"], 0),
    ("weight.json", &["check", "weight"], 0),
    ("rll-eval.json", &["check", "rll-eval"], 0),
    ("bad-file.json", &["check", "file", "bad.rel", "--window", "4"], 1),
    ("good-file.json", &["check", "file", "good.rel", "--window", "4"], 0),
    ("ideal.json", &["check", "ideal", "--modes", "2", "--degree", "2"], 0),
    (
        "ideal-candidates.json",
        &["check", "ideal", "--family", "plus-plus", "--candidate", "squares.cand"],
        0,
    ),
    ("derivation.json", &["check", "relations", "--suite", "derivation", "--window", "4"], 1),
];

#[test]
fn json_reports_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (file, args, code) in GOLDEN {
        let mut full = args.to_vec();
        full.extend(["--format", "json", "--deterministic"]);
        let (out, err, status) = run(&full);
        assert_eq!(status, *code, "{file}: {err}");
        let path = golden_dir().join(file);
        if update {
            std::fs::write(&path, &out).unwrap();
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {file}"));
        assert_eq!(out, want, "{file}");
    }
}

#[test]
fn deterministic_output_is_byte_identical_across_runs_and_jobs() {
    let base = ["check", "relations", "--suite", "summary", "--window", "3", "--format", "json", "--deterministic"];
    let (a, _, _) = run(&[&base[..], &["--jobs", "1"]].concat());
    let (b, _, _) = run(&[&base[..], &["--jobs", "4"]].concat());
    let (c, _, _) = run(&base);
    assert_eq!(a, b);
    assert_eq!(a, c);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    let ids: Vec<&str> = v["results"].as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert_eq!(v["millis"], 0);
}

#[test]
fn report_schema() {
    let (out, _, _) = run(&["check", "file", "bad.rel", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for key in ["config", "results", "summary", "millis"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let r = &v["results"][0];
    assert_eq!(r["id"], "bad.rel:2");
    assert_eq!(r["verdict"], "fail");
    for key in ["location", "lhs", "rhs"] {
        assert!(r["witness"][key].is_string(), "{key}");
    }
    assert!(r["millis"].is_u64());
    assert_eq!(v["summary"]["pass"], 0);
    assert_eq!(v["summary"]["fail"], 1);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["check", "bogus"][..],
        &["check", "ybe", "--window", "1"],
        &["check", "ybe", "--window", "x"],
        &["check", "ybe", "--format", "yaml"],
        &["check", "file"],
        &["check", "file", "missing.rel"],
        &["check", "ybe", "extra.rel"],
        &["check", "ybe", "--candidate", "squares.cand"],
        &["check", "ideal", "--degree", "0"],
        &["show", "currents", "--at", "u"],
        &[],
    ] {
        let (_, err, status) = run(args);
        assert_eq!(status, 2, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("broken.rel");
    std::fs::write(&p, "[k1+(u), k1+(v)] = 0\nk1+(u) = k3+(v)\n").unwrap();
    let (_, err, status) = run(&["check", "file", p.to_str().unwrap()]);
    assert_eq!(status, 2);
    assert!(err.contains("broken.rel:2:10"), "{err}");
    let q = dir.path().join("broken.cand");
    std::fs::write(&q, "l11^0\nl13^0\n").unwrap();
    let (_, err, status) = run(&["check", "ideal", "--candidate", q.to_str().unwrap()]);
    assert_eq!(status, 2);
    assert!(err.contains("broken.cand:2:1"), "{err}");
}

#[test]
fn text_format_is_a_table() {
    let (out, _, status) = run(&["check", "rll-eval", "--deterministic"]);
    assert_eq!(status, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].starts_with("id "));
    assert_eq!(lines.len(), 5);
    let col = lines[0].find("verdict").unwrap();
    for l in &lines[1..4] {
        assert_eq!(&l[col..col + 4], "pass");
    }
    assert_eq!(lines[4], "3 pass, 0 fail, 0 window-exhausted (0 ms)");
}

#[test]
fn show_currents_renders_all_eight() {
    let (out, _, status) = run(&["show", "currents", "--at", "w"]);
    assert_eq!(status, 0);
    for name in ["k1(u)", "k2(u)", "e(u)", "f(u)", "K(u)", "H(u)", "E(u)", "F(u)"] {
        assert!(out.contains(&format!("{name} =")), "{name}");
    }
}

#[test]
fn help_exits_cleanly() {
    let (out, _, status) = run(&["--help"]);
    assert_eq!(status, 0);
    assert!(out.contains("check"));
}
