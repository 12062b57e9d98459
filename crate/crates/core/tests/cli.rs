//! Exit-code contract of the `brauer-forge` binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brauer-forge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn passing_commands_exit_zero() {
    for args in [
        &["structure", "sd16"][..],
        &["structure", "sd32"],
        &["scott", "gl23", "sylow"],
        &["brauer", "sd16", "sylow"],
        &["brauer", "gl23", "sylow"],
        &["thm1", "gl23", "sylow"],
        &["thm1", "sd16xc3", "sylow"],
        &["thm1", "sd32", "sylow"],
        &["thm2", "gl23", "gl23"],
        &["ik1", "gl23xgl23", "delta", "z"],
        &["ik1", "gl23", "sylow", "y"],
        &["lemma31", "gl23"],
        &["lemma31", "sd16"],
        &["lemma31", "m11", "--extended"],
        &["fusion-eq", "gl23", "gl23"],
        &["fusion-eq", "sd16", "sd16xc3"],
    ] {
        assert_eq!(code(args), 0, "{args:?}");
    }
}

#[test]
fn failing_verdicts_exit_one() {
    // GL(2,3) fuses more than SD16 alone
    assert_eq!(code(&["fusion-eq", "sd16", "gl23"]), 1);
    // <xy> is not fully normalized in the product, and the local Scott
    // module then differs from the Brauer quotient
    assert_eq!(code(&["ik1", "gl23xgl23", "delta", "c4b"]), 1);
}

#[test]
fn usage_and_resource_errors_exit_two() {
    for args in [
        &["brauer", "badname", "x"][..],
        &[],
        &["frobnicate"],
        &["structure", "gl23"],
        &["thm2", "gl23"],
        &["thm1", "a4", "sylow"],
        &["brauer", "gl23", "sylow", "--field", "9"],
        &["brauer", "gl23", "sylow", "--field", "0"],
        &["brauer", "gl23", "nonsense"],
        &["lemma31", "m11"],
        &["ik1", "gl23xgl23", "delta", "sylow"],
        &["thm2", "gl23", "sd32"],
    ] {
        assert_eq!(code(args), 2, "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["thm2", "--help"]), 0);
}

#[test]
fn structure_lists_three_maximal_subgroups() {
    let out = run(&["structure", "sd16"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.to_lowercase().contains("maximal"), "{text}");
    assert!(text.contains("pass"));
}

#[test]
fn group_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("s4.txt");
    std::fs::write(&good, "# S4\ndegree 4\n(0 1 2 3)\n(0 1)\n").unwrap();
    let good = good.to_str().unwrap();
    assert_eq!(code(&["brauer", good, "sylow"]), 0);
    assert_eq!(code(&["scott", good, "1"]), 0);

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "degree 4\n(0 1 2 3)\n(0 9)\n").unwrap();
    let out = run(&["brauer", bad.to_str().unwrap(), "sylow"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");

    assert_eq!(code(&["brauer", "/nonexistent/group.txt", "sylow"]), 2);
}

#[test]
fn json_report_and_seed_independence() {
    let dir = tempfile::tempdir().unwrap();
    let mut verdicts = Vec::new();
    for seed in ["0", "1", "12345"] {
        let path = dir.path().join(format!("r{seed}.json"));
        let c = code(&["thm2", "gl23", "gl23", "--quiet", "--seed", seed, "--json", path.to_str().unwrap()]);
        assert_eq!(c, 0);
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        for key in ["instance", "hypotheses", "subgroup_results", "verdict", "seed", "timings"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        let outcomes: Vec<(String, String)> = v["subgroup_results"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| (r["subgroup"].to_string(), r["verdict"].to_string()))
            .collect();
        verdicts.push((v["verdict"].clone(), outcomes));
    }
    assert!(verdicts.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn quiet_suppresses_summary() {
    let out = run(&["brauer", "sd16", "sylow", "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn thread_count_does_not_change_reports() {
    let dir = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for threads in ["1", "4"] {
        let path = dir.path().join(format!("t{threads}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_brauer-forge"))
            .args(["thm2", "gl23", "gl23", "--quiet", "--json", path.to_str().unwrap()])
            .env("BRAUER_FORGE_THREADS", threads)
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        v["timings"] = serde_json::Value::Null;
        reports.push(v);
    }
    assert_eq!(reports[0], reports[1]);
}
