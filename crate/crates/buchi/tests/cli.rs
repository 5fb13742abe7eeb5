use std::path::PathBuf;
use std::process::Command;

use buchi::output;
use serde::de::DeserializeOwned;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("buchi").chain(args.iter().copied());
    let code = buchi::dispatch(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn run_json<T: DeserializeOwned>(args: &[&str]) -> T {
    let mut full = args.to_vec();
    full.push("--json");
    let (code, out, err) = run(&full);
    assert_eq!(code, 0, "{err}");
    assert_no_floats(&serde_json::from_str(&out).unwrap());
    serde_json::from_str(&out).unwrap()
}

fn assert_no_floats(v: &Value) {
    match v {
        Value::Number(n) => assert!(!n.to_string().contains(['.', 'e', 'E']), "float literal {n}"),
        Value::Array(xs) => xs.iter().for_each(assert_no_floats),
        Value::Object(m) => m.values().for_each(assert_no_floats),
        _ => {}
    }
}

fn source_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("buchi-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn seq_examples() {
    let (code, out, _) = run(&["seq", "verify", "6,23,32,39"]);
    assert_eq!((code, out.as_str()), (0, "buchi: yes, nontrivial\n"));
    let (_, out, _) = run(&["seq", "verify", "-3,-2,-1,0"]);
    assert_eq!(out, "buchi: yes, trivial (nu = -4)\n");
    let (code, _, err) = run(&["seq", "verify", "1,2"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("buchi: "));

    let (_, out, _) = run(&["seq", "search", "--length", "5", "--bound", "1000", "--json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["nontrivial"], serde_json::json!([]));
    let r: output::SeqSearch = run_json(&["seq", "search", "--length", "4", "--bound", "100"]);
    let first: Vec<String> = r.nontrivial[0].iter().map(|n| n.to_string()).collect();
    assert_eq!(first, ["6", "23", "32", "39"]);
}

#[test]
fn usage_and_domain_errors() {
    let (code, _, err) = run(&["bogus"]);
    assert_eq!(code, 2);
    assert!(err.contains("unrecognized subcommand"));
    assert_eq!(run(&["seq", "search", "--length", "4"]).0, 2);
    assert_eq!(run(&["surface", "check", "--deltas", "1,x", "--point", "1,2,3"]).0, 2);
    assert_eq!(run(&["formulas", "--mode", "F", "--deltas", "1,2"]).0, 2);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    for sub in ["seq", "surface", "padic", "compile", "check", "formulas"] {
        assert!(out.contains(sub), "{sub} missing from help");
    }
    let (code, _, err) = run(&["compile", "--in", "missing.dioph"]);
    assert_eq!(code, 1);
    assert!(err.contains("missing.dioph"));
    assert_eq!(run(&["padic", "norm", "--p", "4", "--poly", "z", "--rho", "0"]).0, 1);
}

#[test]
fn surface_json_round_trips() {
    let r: output::SurfaceCheck =
        run_json(&["surface", "check", "--deltas", "1,2,3", "--point", "1,6,23,32,39"]);
    assert!(r.on_surface);
    assert_eq!(r.jacobian_rank, Some(2));
    assert!(r.trivial_line.is_none());

    let r: output::SurfaceCheck = run_json(&["surface", "line", "--deltas", "1,2,3", "--nu", "1/2"]);
    assert_eq!(r.point, ["1", "1/2", "3/2", "5/2", "7/2"]);
    assert_eq!(r.trivial_line.unwrap().nu.as_deref(), Some("1/2"));

    let r: output::Scan = run_json(&[
        "surface", "scan", "--nodes", "1,2,3,4", "--height", "500", "--integers-only",
    ]);
    assert_eq!(r.candidates.len(), 1);
    assert_eq!((r.candidates[0].u.as_str(), r.candidates[0].v.as_str()), ("490", "-455"));

    let r: output::Family = run_json(&["surface", "family", "--N", "3"]);
    assert_eq!(r.nodes.len(), 3);
    assert_eq!(run(&["surface", "family", "--N", "0"]).0, 2);
}

#[test]
fn padic_json_round_trips() {
    let r: output::Norm = run_json(&["padic", "norm", "--p", "2", "--poly", "1+2*z", "--rho", "3"]);
    assert_eq!(r.log_norm, "2");
    let r: output::Zeros = run_json(&["padic", "zeros", "--p", "2", "--poly", "(z-2)*(z-1/4)", "--rho", "-1"]);
    assert_eq!(r.zeros, 1);
    assert_eq!(r.segments.len(), 2);
    let r: output::Pjf = run_json(&[
        "padic", "pjf", "--p", "5", "--num", "z^2-25", "--den", "z+1/5", "--rhos", "-2,0,1,4",
    ]);
    assert_eq!(r.rows.len(), 4);
    let r: output::Ldl = run_json(&["padic", "ldl", "--p", "3", "--f", "z^3+1", "--n", "2", "--rho", "1"]);
    assert!(r.holds);
    let r: output::Fmt = run_json(&[
        "padic", "fmt", "--p", "2", "--f", "z^2+z", "--a", "1", "--rhos", "-2,0,2",
    ]);
    assert_eq!(r.defects.len(), 3);
    let r: output::Smt = run_json(&[
        "padic", "smt", "--p", "2", "--f", "1/(z-1)", "--targets", "0,1,3", "--rhos", "-2,0,2",
    ]);
    assert_eq!(r.values.len(), 3);
    let r: output::Delta = run_json(&["padic", "delta", "--f", "z^2", "--u", "z+1", "--a", "3", "--b", "-1/2"]);
    assert!(r.delta_identity);
    assert_eq!(r.difference_identity, Some(true));
}

#[test]
fn compile_and_check() {
    let path = source_file("square.dioph", "# x is 2 or -2\nx*x = 4\n");
    let p = path.to_str().unwrap();
    let (code, text, _) = run(&["compile", "--in", p, "--m", "5", "--emit", "text"]);
    assert_eq!(code, 0);
    assert!(text.contains("conditional: BP(Z,5)"));
    assert_eq!(run(&["compile", "--in", p, "--emit", "text"]).1, text);

    let t: output::Target = run_json(&["compile", "--in", p]);
    assert_eq!(t.meta.m, 5);
    assert_eq!(t.meta.conditional, "BP(Z,5)");
    assert_eq!(t.squares.len(), 5);
    assert_eq!(t.vars.len(), t.meta.target_vars);
    assert!(t.meta.target_vars <= t.meta.size_bound);
    let (_, emitted, _) = run(&["compile", "--in", p, "--emit", "json"]);
    let v: Value = serde_json::from_str(&emitted).unwrap();
    assert!(v["linear"][0]["const"].is_number());

    let r: output::Check = run_json(&["check", "--in", p, "--box", "10"]);
    assert!(r.pass);
    assert_eq!((r.solutions.len(), r.lifted), (2, 2));

    let pair = source_file("pair.dioph", "x*y = 6; x + y = 5");
    let r: output::Check = run_json(&["check", "--in", pair.to_str().unwrap(), "--box", "10"]);
    assert!(r.pass);
    let sols: Vec<(String, String)> = r
        .solutions
        .iter()
        .map(|w| (w["x"].to_string(), w["y"].to_string()))
        .collect();
    assert_eq!(sols, [("2".into(), "3".into()), ("3".into(), "2".into())]);

    let zero = source_file("zero.dioph", "x*x = 0");
    let (code, out, _) = run(&["check", "--in", zero.to_str().unwrap(), "--box", "24", "--m", "3"]);
    assert_eq!(code, 1);
    assert!(out.contains("result: FAIL"));

    let bad = source_file("bad.dioph", "x + = 3");
    let (code, _, err) = run(&["compile", "--in", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line 1, column 5"), "{err}");
    assert_eq!(run(&["compile", "--in", p, "--m", "2"]).0, 1);
}

#[test]
fn formulas() {
    let (code, out, _) = run(&["formulas", "--mode", "H"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "∃u∃v (G[x+y,u] ∧ G[x−y,v] ∧ u = v+4w)"));
    let f: output::Formula = run_json(&["formulas", "--mode", "F", "--m", "35"]);
    assert_eq!((f.bound_vars, f.recurrence_conjuncts), (35, 33));
    let f: output::Formula = run_json(&["formulas", "--mode", "Psi", "--deltas", "1,2,3"]);
    assert_eq!(f.bound_vars, 4);
}

/// Worker count must not change a single output byte.
#[test]
fn thread_count_does_not_change_output() {
    let pair = source_file("threads.dioph", "x*y - 2*z = 4; z + x = y");
    let cases: [&[&str]; 3] = [
        &["seq", "search", "--length", "4", "--bound", "300", "--json"],
        &["surface", "scan", "--nodes", "0,1,2", "--height", "6"],
        &["check", "--in", pair.to_str().unwrap(), "--box", "5", "--json"],
    ];
    for args in cases {
        let outputs: Vec<Vec<u8>> = ["1", "3", "8"]
            .iter()
            .map(|n| {
                let o = Command::new(env!("CARGO_BIN_EXE_buchi"))
                    .args(args)
                    .env("BUCHI_THREADS", n)
                    .output()
                    .unwrap();
                assert!(o.status.success());
                o.stdout
            })
            .collect();
        assert!(outputs.windows(2).all(|w| w[0] == w[1]), "{args:?}");
    }
}
