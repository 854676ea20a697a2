//! End-to-end tests of the `stabwalls` binary: golden outputs, the exit-code
//! contract (0 success / 1 usage / 2 domain / 3 failed check), JSON
//! round-trips, SVG determinism, and config-file precedence.

use std::io::Write as _;
use std::process::{Command, Output};

use serde_json::Value;

/// A fresh command for the compiled binary, isolated from any ambient config.
fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_stabwalls"));
    cmd.env_remove("STABWALLS_CONFIG");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary spawns")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

/// Asserts stdout (with trailing newline trimmed) and exit code.
fn assert_line(args: &[&str], expected: &str, code: i32) {
    let out = run(args);
    assert_eq!(
        (stdout_of(&out).trim_end(), code_of(&out)),
        (expected, code),
        "args: {args:?}, stderr: {}",
        stderr_of(&out)
    );
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

const V_CUBIC: &str = r#"["1","0","-3","5"]"#;

#[test]
fn chern_golden_values() {
    assert_line(
        &["chern", "--object", r#"{"kind":"ideal_twisted_cubic"}"#],
        r#"["1","0","-3","5"]"#,
        0,
    );
    assert_line(
        &["chern", "--object", r#"{"kind":"line_bundle","n":-2}"#],
        r#"["1","-2","2","-4/3"]"#,
        0,
    );
    assert_line(&["chern", "--object", V_CUBIC, "--coords"], r#"["1","0","-3","2"]"#, 0);
}

#[test]
fn chern_coords_rejects_non_lattice_class() {
    let out = run(&["chern", "--object", r#"["1","1","0","0"]"#, "--coords"]);
    assert_eq!(code_of(&out), 2);
    assert!(
        stderr_of(&out).contains("c = 1/2"),
        "stderr should name the failing coordinate: {}",
        stderr_of(&out)
    );
}

#[test]
fn chi_golden_values() {
    assert_line(
        &[
            "chi",
            "--left",
            r#"{"kind":"plane_sheaf","d":-3}"#,
            "--right",
            r#"{"kind":"ideal_point","d":-1}"#,
        ],
        "-10",
        0,
    );
    assert_line(&["chi", "--left", V_CUBIC, "--right", V_CUBIC], "-11", 0);
}

#[test]
fn hilb_prints_polynomial_and_values() {
    assert_line(&["hilb", "--object", V_CUBIC], "(1/6)*m^3 + (1)*m^2 + (-7/6)*m", 0);
    assert_line(&["hilb", "--object", V_CUBIC, "--at", "3"], "10", 0);
    assert_line(&["hilb", "--object", V_CUBIC, "--at", "0"], "0", 0);
}

#[test]
fn charge_slope_and_bound_goldens() {
    let point = ["--beta", "-5/2", "--alpha-sq", "1/4"];
    assert_line(
        &[&["z", "--object", V_CUBIC], &point[..]].concat(),
        r#"{"re":"0","im":"5/2"}"#,
        0,
    );
    assert_line(
        &[&["z", "--object", V_CUBIC, "--kind", "lambda"], &point[..]].concat(),
        r#"{"re":"5/24","im":"0"}"#,
        0,
    );
    assert_line(&[&["nu", "--object", V_CUBIC], &point[..]].concat(), "0", 0);
    // A rank-0, degree-0 class has an infinite tilt slope everywhere.
    assert_line(
        &[&["nu", "--object", r#"["0","0","1","-1"]"#], &point[..]].concat(),
        "inf",
        0,
    );
    // On the vanishing locus of Im Z' the second-tilt slope is infinite.
    assert_line(&[&["lambda", "--object", V_CUBIC], &point[..]].concat(), "inf", 0);
    assert_line(
        &["lambda", "--object", V_CUBIC, "--beta", "-5/2", "--alpha-sq", "1"],
        "55/18",
        0,
    );
    assert_line(
        &["z", "--object", V_CUBIC, "--kind", "lambda", "--beta", "-5/2", "--alpha-sq", "1"],
        r#"{"re":"55/48","im":"-3/8"}"#,
        0,
    );
}

#[test]
fn gbg_enforce_flags_violations() {
    let sheaf = r#"{"kind":"plane_sheaf","d":-3}"#;
    assert_line(&["gbg", "--object", sheaf, "--beta", "-7/2", "--alpha-sq", "1"], "1/8", 0);
    // Without --enforce a negative residual is reported but not an error.
    assert_line(&["gbg", "--object", sheaf, "--beta", "-7/2", "--alpha-sq", "1/8"], "-1/48", 0);
    let out = run(&["gbg", "--object", sheaf, "--beta", "-7/2", "--alpha-sq", "1/8", "--enforce"]);
    assert_eq!((stdout_of(&out).trim_end(), code_of(&out)), ("-1/48", 3));
    assert!(stderr_of(&out).contains("bound violated"));
}

#[test]
fn wall_golden_values() {
    assert_line(
        &["wall", "--v", V_CUBIC, "--w", r#"["3","-6","6","-4"]"#],
        r#"{"kind":"semicircle","center":"-5/2","radius_sq":"1/4"}"#,
        0,
    );
    assert_line(
        &["wall", "--v", V_CUBIC, "--w", r#"["0","0","1","-1"]"#],
        r#"{"kind":"vertical","beta0":"0"}"#,
        0,
    );
    assert_line(
        &["wall", "--v", V_CUBIC, "--w", r#"["2","0","-6","10"]"#],
        r#"{"kind":"degenerate_equal"}"#,
        0,
    );
}

#[test]
fn destab_matches_golden_list() {
    let expected = concat!(
        r#"[["-2","6","-9"],["-1","3","-9/2"],["-1","4","-7"],["0","1","-5/2"],"#,
        r#"["0","2","-5"],["1","-2","2"],["1","-1","-1/2"],["2","-4","4"],"#,
        r#"["2","-3","3/2"],["3","-6","6"]]"#,
    );
    assert_line(&["destab", "--v", V_CUBIC, "--beta", "-5/2", "--alpha-sq", "1/4"], expected, 0);
    // A tighter rank bound drops exactly the |ch0| = 3 entry.
    let out = run(&[
        "destab",
        "--v",
        V_CUBIC,
        "--beta",
        "-5/2",
        "--alpha-sq",
        "1/4",
        "--rank-bound",
        "2",
    ]);
    let list: Vec<Value> = serde_json::from_str(stdout_of(&out).trim_end()).unwrap();
    assert_eq!(list.len(), 9);
    assert!(!stdout_of(&out).contains(r#"["3","-6","6"]"#));
}

#[test]
fn destab_output_round_trips_through_the_library_types() {
    let out = run(&["destab", "--v", V_CUBIC, "--beta", "-5/2", "--alpha-sq", "1/4"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    let classes: Vec<stabwalls::walls::TruncatedClass> =
        serde_json::from_str(text.trim_end()).expect("emitted JSON re-parses");
    assert_eq!(serde_json::to_string(&classes).unwrap(), text.trim_end());
}

#[test]
fn scan_brackets_the_first_wall() {
    let path = r#"{"segments":[{"from":{"beta":"-5/2","alpha_sq":"1","s":"1/3"},"to":{"beta":"-5/2","alpha_sq":"1/16","s":"1/3"}}]}"#;
    let out = run(&[
        "scan",
        "--v",
        r#"["1","-2","2","-4/3"]"#,
        "--path",
        path,
        "--candidates",
        r#"[["-1","3","-9/2","9/2"]]"#,
        "--kind",
        "tilt",
    ]);
    assert_eq!(code_of(&out), 0, "stderr: {}", stderr_of(&out));
    let crossings: Vec<stabwalls::walls::Crossing> =
        serde_json::from_str(stdout_of(&out).trim_end()).expect("crossings re-parse");
    assert_eq!(crossings.len(), 1);
    let c = &crossings[0];
    assert_eq!((c.segment, c.candidate_index), (0, 0));
    assert_eq!((c.sign_before, c.sign_after), (1, -1));
    let value: Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value[0]["t0"], "819/1024");
    assert_eq!(value[0]["t1"], "205/256");
}

#[test]
fn chambers_default_report_shape() {
    let out = run(&["chambers"]);
    assert_eq!(code_of(&out), 0, "stderr: {}", stderr_of(&out));
    let report: Value = serde_json::from_str(stdout_of(&out).trim_end()).unwrap();
    assert_eq!(report["chambers"].as_array().unwrap().len(), 4);
    assert_eq!(report["walls"].as_array().unwrap().len(), 3);
    assert_eq!(report["chambers"][0]["label"], "chamber 1");
    assert_eq!(report["chambers"][3]["label"], "chamber 4");
    assert_eq!(report["walls"][0]["crossing"]["t0"], "85/512");
    assert_eq!(report["walls"][2]["crossing"]["t0"], "449/512");
}

#[test]
fn quiver_check_zero_rep_is_unstable() {
    let out = run(&["quiver", "check", "--rep", &fixture("rep_zero.json")]);
    assert_eq!(code_of(&out), 3);
    let verdict: Value = serde_json::from_str(stdout_of(&out).trim_end()).unwrap();
    assert_eq!(verdict["stable"], Value::Bool(false));
    assert_eq!(verdict["witness"]["subdim"], serde_json::json!([1, 0]));
}

#[test]
fn quiver_check_reference_rep_is_stable() {
    assert_line(
        &["quiver", "check", "--rep", &fixture("rep_stable.json")],
        r#"{"stable":true}"#,
        0,
    );
}

#[test]
fn quiver_check_classifies_input_errors() {
    // Valid JSON with the wrong shape: domain error.
    let out = run(&["quiver", "check", "--rep", &fixture("rep_bad_shape.json")]);
    assert_eq!(code_of(&out), 2, "stderr: {}", stderr_of(&out));
    // Unreadable file or broken JSON: usage error.
    let out = run(&["quiver", "check", "--rep", "/nonexistent/rep.json"]);
    assert_eq!(code_of(&out), 1);
    let mut broken = tempfile::NamedTempFile::new().unwrap();
    write!(broken, "{{not json").unwrap();
    let out = run(&["quiver", "check", "--rep", broken.path().to_str().unwrap()]);
    assert_eq!(code_of(&out), 1);
}

#[test]
fn quiver_info_golden() {
    assert_line(
        &["quiver", "info"],
        concat!(
            r#"{"dim_vector":[2,3],"theta":0,"self_euler_form":-11,"expected_dim":12,"#,
            r#""destabilizing_subdims":[[1,0],[1,1],[2,0],[2,1],[2,2]]}"#,
        ),
        0,
    );
}

#[test]
fn les_builtin_grids_and_exit_codes() {
    let out = run(&["les", "--list"]);
    assert_eq!(code_of(&out), 0);
    let listing = stdout_of(&out);
    let names: Vec<&str> = listing.lines().collect();
    assert_eq!(names.len(), 7);
    assert!(names.contains(&"grid_flip_locus"));

    let out = run(&["les", "--grid", "grid_flip_locus"]);
    assert_eq!(code_of(&out), 0, "stderr: {}", stderr_of(&out));
    let report: stabwalls::audit::GridReport =
        serde_json::from_str(stdout_of(&out).trim_end()).expect("report re-parses");
    assert!(report.all_feasible());

    let out = run(&["les", "--grid", "grid_extension_middle_counterfactual"]);
    assert_eq!(code_of(&out), 3);
    let report: stabwalls::audit::GridReport =
        serde_json::from_str(stdout_of(&out).trim_end()).unwrap();
    assert!(!report.all_feasible());
}

#[test]
fn les_reads_grid_files() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(
        file,
        r#"{{"rows":[{{"label":"triangle","dims":[2,3,1],"r_in":0,"r_out":0}}]}}"#
    )
    .unwrap();
    let out = run(&["les", "--grid", file.path().to_str().unwrap()]);
    assert_eq!(code_of(&out), 0, "stderr: {}", stderr_of(&out));
    let report: Value = serde_json::from_str(stdout_of(&out).trim_end()).unwrap();
    assert_eq!(report["rows"][0]["verdict"]["status"], "feasible");
    assert_eq!(report["rows"][0]["verdict"]["ranks"], serde_json::json!([2, 1, 0]));

    let out = run(&["les", "--grid", "/nonexistent/grid.json"]);
    assert_eq!(code_of(&out), 1);
}

#[test]
fn ledger_is_consistent_in_both_formats() {
    let out = run(&["ledger"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert_eq!(text.lines().filter(|l| l.ends_with("[ok]")).count(), 8);
    assert!(!text.contains("MISMATCH"));

    let out = run(&["ledger", "--json"]);
    assert_eq!(code_of(&out), 0);
    let entries: Vec<Value> = serde_json::from_str(stdout_of(&out).trim_end()).unwrap();
    let values: Vec<u64> =
        entries.iter().map(|e| e["value"].as_u64().expect("integer value")).collect();
    assert_eq!(values, [10, 9, 15, 12, 11, 16, 14, 5]);
}

#[test]
fn plot_is_byte_deterministic_with_exact_arcs() {
    let first = run(&["plot"]);
    let second = run(&["plot"]);
    assert_eq!(code_of(&first), 0);
    assert_eq!(first.stdout, second.stdout, "SVG output must be byte-identical");
    let svg = stdout_of(&first);
    // Default window: β ∈ [−5, 0], α ≤ 3, 640×480, 48 px margins, so one
    // β-unit is 108.8 px and one α-unit is 128 px.
    assert!(svg.contains("M 265.600000 432.000000 A 54.400000 64.000000 0 0 1 374.400000 432.000000"));
    assert!(svg.contains("A 272.000000 320.000000 0 0 1 483.200000 432.000000"));
    assert_eq!(svg.matches("<path").count(), 2);
}

#[test]
fn plot_writes_files_and_accepts_explicit_walls() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("walls.svg");
    let out = run(&[
        "plot",
        "--walls-json",
        r#"[{"kind":"semicircle","center":"-5/2","radius_sq":"1/4"}]"#,
        "--marker",
        "start@-5/2,1/2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code_of(&out), 0, "stderr: {}", stderr_of(&out));
    assert!(stdout_of(&out).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.contains("<svg"));
    assert!(written.contains("start"));
    assert_eq!(written.matches("<path").count(), 1);
}

#[test]
fn plot_with_empty_window_draws_axes_only() {
    let out = run(&["plot", "--beta-min", "5", "--beta-max", "6"]);
    assert_eq!(code_of(&out), 0);
    assert!(stderr_of(&out).contains("axes only"));
    assert!(!stdout_of(&out).contains("<path"));
    assert!(stdout_of(&out).contains("<line"));
}

#[test]
fn config_file_sets_defaults_and_flags_override() {
    let mut config = tempfile::NamedTempFile::new().unwrap();
    write!(config, "rank_bound = 2\ns = \"1/4\"\n").unwrap();
    let config_path = config.path().to_str().unwrap();

    let destab_args =
        ["destab", "--v", V_CUBIC, "--beta", "-5/2", "--alpha-sq", "1/4"];
    let out = bin().env("STABWALLS_CONFIG", config_path).args(destab_args).output().unwrap();
    let list: Vec<Value> = serde_json::from_str(stdout_of(&out).trim_end()).unwrap();
    assert_eq!(list.len(), 9, "config rank_bound = 2 drops the rank-3 entry");

    let out = bin()
        .env("STABWALLS_CONFIG", config_path)
        .args(destab_args)
        .args(["--rank-bound", "3"])
        .output()
        .unwrap();
    let list: Vec<Value> = serde_json::from_str(stdout_of(&out).trim_end()).unwrap();
    assert_eq!(list.len(), 10, "the flag overrides the config file");

    // The configured s feeds the second-tilt charge: at (−5/2, 1) with
    // s = 1/4 the real part is 15/16 instead of the s = 1/3 value 55/48.
    let z_args =
        ["z", "--object", V_CUBIC, "--kind", "lambda", "--beta", "-5/2", "--alpha-sq", "1"];
    let out = bin().env("STABWALLS_CONFIG", config_path).args(z_args).output().unwrap();
    assert_eq!(stdout_of(&out).trim_end(), r#"{"re":"15/16","im":"-3/8"}"#);
    let out = bin()
        .env("STABWALLS_CONFIG", config_path)
        .args(z_args)
        .args(["--s", "1/3"])
        .output()
        .unwrap();
    assert_eq!(stdout_of(&out).trim_end(), r#"{"re":"55/48","im":"-3/8"}"#);
}

#[test]
fn config_errors_are_usage_errors() {
    let out = bin()
        .env("STABWALLS_CONFIG", "/nonexistent/config.toml")
        .args(["ledger"])
        .output()
        .unwrap();
    assert_eq!(code_of(&out), 1);
    assert!(stderr_of(&out).contains("cannot read config"));

    let mut config = tempfile::NamedTempFile::new().unwrap();
    write!(config, "rank_bound = \"many\"").unwrap();
    let out = bin()
        .env("STABWALLS_CONFIG", config.path())
        .args(["ledger"])
        .output()
        .unwrap();
    assert_eq!(code_of(&out), 1);
    assert!(stderr_of(&out).contains("invalid config file"));
}

#[test]
fn usage_and_domain_exit_codes() {
    assert_eq!(code_of(&run(&[])), 1, "no subcommand");
    assert_eq!(code_of(&run(&["no-such-command"])), 1);
    assert_eq!(code_of(&run(&["chi", "--left", V_CUBIC])), 1, "missing --right");
    assert_eq!(code_of(&run(&["nu", "--object", V_CUBIC, "--beta", "x", "--alpha-sq", "1"])), 1);
    assert_eq!(code_of(&run(&["chern", "--object", "not json"])), 1);
    // A well-formed request outside the domain: α² must be positive.
    let out = run(&["nu", "--object", V_CUBIC, "--beta", "0", "--alpha-sq", "0"]);
    assert_eq!(code_of(&out), 2, "stderr: {}", stderr_of(&out));
    let out = run(&["nu", "--object", V_CUBIC, "--beta", "0", "--alpha-sq", "-1"]);
    assert_eq!(code_of(&out), 2);
}

#[test]
fn help_and_version_exit_zero() {
    let out = run(&["--help"]);
    assert_eq!(code_of(&out), 0);
    assert!(stdout_of(&out).contains("stabwalls"));
    assert_eq!(code_of(&run(&["--version"])), 0);
    assert_eq!(code_of(&run(&["quiver", "--help"])), 0);
}
