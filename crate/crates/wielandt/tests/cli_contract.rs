//! End-to-end contract tests for the command-line binary: exit codes per
//! failure class, report schema stability, determinism, and round-trips
//! between the construction and measurement commands.

use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wielandt"))
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    let mut cmd = bin();
    cmd.args(args);
    cmd.output().expect("binary spawns")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn exit_codes_match_failure_taxonomy() {
    let cases: Vec<(Vec<String>, i32, &str)> = vec![
        (vec!["analyze".into(), fixture("fix_a.json")], 0, "clean analyze"),
        (vec!["analyze".into(), fixture("corrupt.json")], 2, "malformed JSON"),
        (vec!["analyze".into(), fixture("missing.json")], 2, "unreadable file"),
        (vec!["analyze".into(), fixture("not_pd.json")], 3, "indefinite matrix"),
        (
            vec![
                "bounds".into(),
                fixture("fix_a.json"),
                "--u".into(),
                "0,0".into(),
                "--v".into(),
                "1,1".into(),
            ],
            4,
            "zero vector",
        ),
        (
            vec![
                "bounds".into(),
                fixture("fix_a.json"),
                "--u".into(),
                "1,1".into(),
                "--v".into(),
                "2,2".into(),
            ],
            4,
            "dependent vectors",
        ),
        (
            vec!["extremal".into(), fixture("identity.json"), "--angle".into(), "1.0".into()],
            5,
            "proportional products admit no extremal pair",
        ),
        (
            vec![
                "extremal".into(),
                fixture("identity.json"),
                "--kolotilina".into(),
                "--cos-phi".into(),
                "0.5".into(),
            ],
            5,
            "proportional products admit no sharp modulus pair",
        ),
        (vec!["bounds".into(), fixture("fix_a.json")], 2, "bounds needs vectors or an angle"),
        (
            vec!["bounds".into(), fixture("fix_a.json"), "--u".into(), "1,1".into()],
            2,
            "--u without --v",
        ),
        (
            vec![
                "bounds".into(),
                fixture("fix_a.json"),
                "--u".into(),
                "1:2,0".into(),
                "--v".into(),
                "1,1".into(),
            ],
            2,
            "complex entry in real mode",
        ),
        (
            vec![
                "analyze".into(),
                fixture("fix_a.json"),
                "--tol-member".into(),
                "1.5".into(),
            ],
            2,
            "membership tolerance outside [0, 1)",
        ),
        (
            vec![
                "verify".into(),
                fixture("fix_a.json"),
                "--inject-fault".into(),
                "-1".into(),
            ],
            2,
            "fault factor must be positive",
        ),
        (
            vec!["verify".into(), fixture("fix_a.json"), "--threads".into(), "0".into()],
            2,
            "zero worker threads",
        ),
        (vec!["frobnicate".into()], 2, "unknown subcommand"),
        (vec!["--help".into()], 0, "help"),
    ];
    for (args, want, what) in cases {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = run(&argv);
        assert_eq!(
            out.status.code(),
            Some(want),
            "{what}: expected exit {want}, got {:?}\nstderr: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn analyze_reports_exact_constants() {
    let out = run(&["analyze", &fixture("fix_a.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["tool"], "wielandt");
    assert_eq!(doc["command"], "analyze");
    assert!(doc["seed"].is_null());
    let spec = &doc["spectrum"];
    assert_eq!(spec["m"].as_f64(), Some(1.0));
    assert_eq!(spec["M"].as_f64(), Some(2.0));
    assert_eq!(spec["kappa"].as_f64(), Some(2.0));
    assert_eq!(spec["chi"].as_f64(), Some(0.6));
    assert_eq!(spec["mu"].as_f64(), Some(1.0 / 3.0));
    assert_eq!(spec["proportional"].as_bool(), Some(false));
    let evals: Vec<f64> =
        spec["pencil_eigenvalues"].as_array().expect("array").iter().map(|x| x.as_f64().unwrap()).collect();
    assert_eq!(evals, vec![1.0, 4.0]);
}

#[test]
fn source_matrix_mode_matches_gram_mode() {
    let grams = json_of(&run(&["analyze", &fixture("fix_a.json")]));
    let source = json_of(&run(&["analyze", &fixture("fix_a_source.json")]));
    // A = diag(1, 2) induces exactly G2 = diag(1, 4): identical spectra.
    assert_eq!(grams["spectrum"], source["spectrum"]);
    assert!(source["input"]["A"].is_array());
    assert!(grams["input"]["G1"].is_array());
}

#[test]
fn report_schema_is_stable_across_commands() {
    let runs = [
        run(&["analyze", &fixture("fix_a.json")]),
        run(&["bounds", &fixture("fix_a.json"), "--phi", "0.7"]),
        run(&["bounds", &fixture("fix_a.json"), "--u", "1,1", "--v", "1,-1"]),
        run(&["extremal", &fixture("fix_b.json"), "--angle", "1.1"]),
        run(&["extremal", &fixture("fix_a.json"), "--kolotilina", "--cos-phi", "0.3"]),
        run(&["verify", &fixture("fix_a.json"), "--seed", "42", "--trials", "100"]),
    ];
    for out in &runs {
        assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
        let doc = json_of(out);
        let obj = doc.as_object().expect("top-level object");
        let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(
            keys,
            vec!["command", "input", "payload", "seed", "spectrum", "tool", "version"]
        );
        assert!(doc["payload"]["kind"].is_string());
        // The echoed input always reparses as JSON with the original mode/n.
        assert!(doc["input"]["mode"].is_string());
        assert!(doc["input"]["n"].is_u64());
    }
}

#[test]
fn bounds_flags_equality_pair() {
    let out = run(&["bounds", &fixture("fix_a.json"), "--u", "1,1", "--v", "1,-1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["payload"]["kind"], "bounds_pair");
    let cls = &doc["payload"]["classification"];
    assert_eq!(cls["main_right"].as_bool(), Some(true));
    assert_eq!(cls["lines_left"].as_bool(), Some(true));
    assert_eq!(cls["phase_condition"], "inner_product1_zero");
    let bounds = doc["payload"]["bounds"].as_array().expect("bound reports");
    for rep in bounds {
        assert_eq!(rep["holds"].as_bool(), Some(true), "violated: {rep}");
    }
    let tan = bounds.iter().find(|r| r["name"] == "TAN").expect("tangent report");
    assert!((tan["observed"].as_f64().unwrap() - 2.0).abs() <= 1e-10);
    assert!((tan["upper"].as_f64().unwrap() - 2.0).abs() <= 1e-10);
    let orth = bounds.iter().find(|r| r["name"] == "OrthIP").expect("orthogonal report");
    assert!((orth["observed"].as_f64().unwrap() - 0.6).abs() <= 1e-10);
    assert!((orth["upper"].as_f64().unwrap() - 0.6).abs() <= 1e-12);
}

#[test]
fn extremal_roundtrip_through_bounds() {
    let out = run(&[
        "extremal",
        &fixture("fix_b.json"),
        "--angle",
        "1.5707963267948966",
        "--side",
        "right",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["payload"]["kind"], "extremal");
    let kappa = doc["spectrum"]["kappa"].as_f64().expect("kappa");
    let achieved = doc["payload"]["pair"]["achieved_ratio"].as_f64().expect("ratio");
    assert!((achieved - kappa).abs() <= 1e-9 * kappa);

    // Feed the emitted vectors back through the measurement command.
    let as_arg = |key: &str| -> String {
        doc["payload"]["pair"][key]
            .as_array()
            .expect("vector")
            .iter()
            .map(|entry| {
                let re = entry[0].as_f64().expect("re");
                let im = entry[1].as_f64().expect("im");
                assert_eq!(im, 0.0, "real-mode construction stays real");
                format!("{re:?}")
            })
            .collect::<Vec<_>>()
            .join(",")
    };
    let (u, v) = (as_arg("u"), as_arg("v"));
    let back = run(&["bounds", &fixture("fix_b.json"), "--u", &u, "--v", &v]);
    assert_eq!(back.status.code(), Some(0));
    let bdoc = json_of(&back);
    assert_eq!(bdoc["payload"]["classification"]["main_right"].as_bool(), Some(true));
    let bounds = bdoc["payload"]["bounds"].as_array().expect("bound reports");
    let tan = bounds.iter().find(|r| r["name"] == "TAN").expect("tangent report");
    let observed = tan["observed"].as_f64().unwrap();
    let upper = tan["upper"].as_f64().unwrap();
    assert!(
        (observed - upper).abs() <= 1e-9 * upper,
        "round-trip pair no longer saturates: observed {observed}, upper {upper}"
    );
}

#[test]
fn kolotilina_equality_over_cli() {
    let out = run(&["extremal", &fixture("fix_a.json"), "--kolotilina", "--cos-phi", "0.6"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["payload"]["kind"], "kolotilina");
    let lhs = doc["payload"]["equality_lhs"].as_f64().expect("lhs");
    let rhs = doc["payload"]["equality_rhs"].as_f64().expect("rhs");
    assert!((lhs - 3.0).abs() <= 1e-12);
    assert!((lhs - rhs).abs() <= 1e-9 * rhs);
    assert_eq!(doc["payload"]["cos_phi"].as_f64(), Some(0.6));
}

#[test]
fn verify_is_thread_count_independent_and_seed_sensitive() {
    let base = run(&["verify", &fixture("fix_a.json"), "--seed", "7"]);
    let threaded = run(&["verify", &fixture("fix_a.json"), "--seed", "7", "--threads", "2"]);
    let reseeded = run(&["verify", &fixture("fix_a.json"), "--seed", "8"]);
    assert_eq!(base.status.code(), Some(0));
    assert_eq!(threaded.status.code(), Some(0));
    assert_eq!(reseeded.status.code(), Some(0));
    assert_eq!(base.stdout, threaded.stdout, "worker count changed the report");
    assert_ne!(base.stdout, reseeded.stdout, "seed is not threaded through");
    let doc = json_of(&base);
    assert_eq!(doc["seed"].as_u64(), Some(7));
    assert_eq!(doc["payload"]["suite"]["passed"].as_bool(), Some(true));
}

#[test]
fn fault_injection_fails_with_bounded_witness_list() {
    let out = run(&[
        "verify",
        &fixture("fix_a.json"),
        "--seed",
        "42",
        "--inject-fault",
        "1.1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json_of(&out);
    assert_eq!(doc["payload"]["fault_factor"].as_f64(), Some(1.1));
    let suite = &doc["payload"]["suite"];
    assert_eq!(suite["passed"].as_bool(), Some(false));
    let ratio = &suite["ratio"];
    let count = ratio["violation_count"].as_u64().expect("count") as usize;
    let recorded = ratio["violations"].as_array().expect("witnesses").len();
    assert!(count > 0, "fault produced no violations");
    assert!(recorded <= 32, "witness list unbounded: {recorded}");
    assert!(count >= recorded, "count {count} below recorded {recorded}");
}
