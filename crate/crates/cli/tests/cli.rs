use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exit-path")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn exit_codes_distinguish_outcomes() {
    assert_eq!(run(&["verify-qcat", "--span", "point-cone", "--max-dim", "3"]).status.code(), Some(0));
    assert_eq!(run(&["verify-qcat", "--span", "broken", "--max-dim", "2"]).status.code(), Some(1));
    assert_eq!(run(&["verify-qcat", "--span", "no-such-span"]).status.code(), Some(2));
    assert_eq!(run(&["shuffle-table", "--k", "0"]).status.code(), Some(2));
    let tight = run(&["verify-qcat", "--span", "boundary-collar", "--max-dim", "3", "--budget", "2"]);
    assert_eq!(tight.status.code(), Some(3), "{}", stdout(&tight));
    assert!(stdout(&tight).contains("inconclusive"));
}

#[test]
fn broken_span_reports_its_witnesses() {
    let qcat = run(&["verify-qcat", "--span", "broken", "--max-dim", "2"]);
    let text = stdout(&qcat);
    assert!(text.contains("[FAIL] inner horns Λ^2_1"), "{text}");
    assert!(text.contains("d_0 = exit1.s0.0"), "{text}");
    let fib = run(&["check-fibration", "--span", "broken", "--max-dim", "2"]);
    assert_eq!(fib.status.code(), Some(1));
    assert!(stdout(&fib).contains("[FAIL] lifts against Λ^1_1"));
}

#[test]
fn flat_sharp_rows() {
    let out = stdout(&run(&["flat-sharp-table", "--k", "5"]));
    let flat_row = out.lines().find(|l| l.starts_with("j=2")).unwrap();
    let values: Vec<&str> = flat_row.split_whitespace().skip(1).collect();
    assert_eq!(values, ["1", "1", "2", "2", "2", "2"]);
    let last = out.lines().find(|l| l.starts_with("j=5")).unwrap();
    assert!(last.trim_end().ends_with('-'), "(k, k) undefined: {last}");
}

#[test]
fn point_cone_counts() {
    let out = run(&["stats", "--span", "point-cone", "--max-dim", "6", "--format", "machine"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let totals: Vec<u64> = v["degrees"].as_array().unwrap().iter().map(|d| d["simplices"].as_u64().unwrap()).collect();
    assert_eq!(totals, [2, 3, 4, 5, 6, 7, 8]);
}

#[test]
fn output_is_reproducible() {
    for args in [
        &["verify-qcat", "--span", "s0-defect", "--max-dim", "3"][..],
        &["build-exit", "--span", "boundary-collar", "--max-dim", "3"][..],
        &["verify-identities", "--span", "trivial-inclusion", "--format", "machine"][..],
    ] {
        let first = run(args);
        assert!(!first.stdout.is_empty(), "{args:?}");
        assert_eq!(first.stdout, run(args).stdout, "{args:?}");
        for workers in ["1", "4"] {
            let pinned: Vec<&str> = args.iter().copied().chain(["--workers", workers]).collect();
            assert_eq!(first.stdout, run(&pinned).stdout, "{args:?} on {workers} workers");
        }
    }
}

#[test]
fn emitted_documents_are_accepted_back() {
    for name in ["point-cone", "s0-defect", "broken"] {
        let emitted = run(&["examples", "emit", name]);
        assert_eq!(emitted.status.code(), Some(0));
        let path = scratch(&format!("{name}.span"));
        std::fs::write(&path, &emitted.stdout).unwrap();
        let file = path.to_str().unwrap();
        let from_file = run(&["build-exit", "--span", file, "--max-dim", "3"]);
        let from_gallery = run(&["build-exit", "--span", name, "--max-dim", "3"]);
        assert_eq!(from_file.status.code(), Some(0), "{}", String::from_utf8_lossy(&from_file.stderr));
        assert_eq!(stdout(&from_file), stdout(&from_gallery));

        let ex_path = scratch(&format!("{name}.ex"));
        std::fs::write(&ex_path, &from_file.stdout).unwrap();
        let identities = run(&["verify-identities", "--set", ex_path.to_str().unwrap(), "--max-dim", "3"]);
        assert_eq!(identities.status.code(), Some(0), "{}", stdout(&identities));
    }
}

#[test]
fn malformed_input_is_an_input_error() {
    let path = scratch("bad.span");
    std::fs::write(&path, "simplicial-set X\nmax-dim 0\ndim 0\n  a : (, b)\nend\n").unwrap();
    let out = run(&["build-exit", "--span", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
}

#[test]
fn examples_list_names_the_gallery() {
    let out = stdout(&run(&["examples", "list"]));
    for name in ["trivial-inclusion", "point-cone", "empty-cone", "s0-defect", "boundary-collar", "broken"] {
        assert!(out.contains(name), "{name}");
    }
}
