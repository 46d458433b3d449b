//! Golden outputs for the command line. Set `UPDATE_GOLDEN=1` to rewrite
//! the files under `tests/golden` after an intended change.

mod common;

use common::{cases, golden_path, resolve, run};

fn schema() -> jsonschema::JSONSchema {
    let text = std::fs::read_to_string("../../docs/report.schema.json").unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    jsonschema::JSONSchema::compile(&value).expect("schema compiles")
}

#[test]
fn golden_outputs_are_byte_stable() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let schema = schema();
    let mut failures = Vec::new();
    for case in cases() {
        let args = resolve(case.args);
        let (code, out, err) = run(&args);
        assert!(err.is_empty(), "{}: unexpected stderr {err}", case.name);
        assert_eq!(code, case.exit, "{}: exit code\n{out}", case.name);
        let (again, out2, _) = run(&args);
        assert_eq!(
            (code, &out),
            (again, &out2),
            "{}: output differs between runs",
            case.name
        );

        if args.iter().any(|a| a == "--json") {
            let v: serde_json::Value = serde_json::from_str(&out).unwrap();
            if let Err(errors) = schema.validate(&v) {
                let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
                panic!("{}: schema violations {msgs:?}", case.name);
            }
            assert_eq!(v["exit_code"], code, "{}", case.name);
        } else {
            let status = out
                .lines()
                .find_map(|l| l.strip_prefix("status: "))
                .unwrap();
            let expected = match code {
                0 => ["ok", "true", "found"].as_slice(),
                1 => &["false", "infeasible", "rejected"],
                _ => &["unknown"],
            };
            assert!(expected.contains(&status), "{}: status {status}", case.name);
        }

        let path = golden_path(case.name);
        if update {
            std::fs::write(&path, &out).unwrap();
        } else {
            match std::fs::read_to_string(&path) {
                Ok(g) if g == out => {}
                Ok(_) => failures.push(format!("{} differs from {}", case.name, path.display())),
                Err(_) => failures.push(format!("{} has no golden file", case.name)),
            }
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn usage_and_parse_errors() {
    let (code, _, err) = run(&resolve(&["analyze", "bad-self-loop.crn"]));
    assert_eq!(code, 65);
    assert!(
        err.contains("line 2, column 1") && err.contains("self-loop"),
        "{err}"
    );

    let (code, _, _) = run(&resolve(&["frobnicate"]));
    assert_eq!(code, 64);
    let (code, _, err) = run(&resolve(&["analyze", "missing.crn"]));
    assert_eq!(code, 64, "{err}");
    let (code, _, err) = run(&resolve(&["realize-cb", "lotka.crn"]));
    assert_eq!(code, 64);
    assert!(err.contains("--at"), "{err}");
    let (code, _, _) = run(&resolve(&["realize-wr", "square-sources.crn"]));
    assert_eq!(code, 64);
    let (code, _, _) = run(&resolve(&["check", "lotka.crn", "cb-flux.crn"]));
    assert_eq!(code, 64);
    let (code, _, _) = run(&resolve(&["analyze", "cb-rates.crn", "--at", "1,0"]));
    assert_eq!(code, 64);
    let (code, _, _) = run(&resolve(&["analyze", "cb-rates.crn", "--at", "1"]));
    assert_eq!(code, 64);
    let (code, out, _) = run(&["--help".to_string()]);
    assert_eq!(code, 0);
    assert!(out.contains("realize-cb"));
}

#[test]
fn out_and_dot_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("witness.crn");
    let dot = dir.path().join("witness.dot");
    let mut args = resolve(&["realize-cb", "cb-flux.crn"]);
    args.extend([
        "--out".into(),
        out.display().to_string(),
        "--dot".into(),
        dot.display().to_string(),
    ]);
    let (code, stdout, _) = run(&args);
    assert_eq!(code, 0);

    // The file written is the canonical witness shown in the report.
    let written = std::fs::read_to_string(&out).unwrap();
    let shown: String = stdout
        .split("witness:\n")
        .nth(1)
        .unwrap()
        .lines()
        .map(|l| format!("{}\n", l.trim_start()))
        .collect();
    assert_eq!(written, shown);
    let (code, _, _) = run(&["analyze".into(), out.display().to_string()]);
    assert_eq!(code, 0);

    let dot_text = std::fs::read_to_string(&dot).unwrap();
    assert!(dot_text.starts_with("digraph crn {"));
    assert_eq!(
        dot_text.matches(" -> ").count(),
        written.matches(" -> ").count()
    );
}

#[test]
fn search_is_independent_of_thread_cap() {
    // Run the binary so the environment change stays in the child.
    let crn = env!("CARGO_BIN_EXE_crn");
    let args = resolve(&[
        "realize-cb",
        "square-rates-25111.crn",
        "--search",
        "--multistarts",
        "30",
    ]);
    let with = |threads: Option<&str>| {
        let mut cmd = std::process::Command::new(crn);
        cmd.args(&args).env_remove(crn_cli::THREADS_ENV);
        if let Some(t) = threads {
            cmd.env(crn_cli::THREADS_ENV, t);
        }
        cmd.output().unwrap()
    };
    let a = with(None);
    let b = with(Some("1"));
    let c = with(Some("3"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert_eq!(with(Some("0")).status.code(), Some(64));
}
